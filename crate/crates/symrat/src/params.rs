//! Admissible black-hole parameter sets.

use crate::coeff::GaussQ;
use crate::error::SymError;
use crate::var::Var;
use crate::Rat;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Mass `M`, specific angular momentum `a`, and charge `Q`, restricted to
/// the subextremal range `M > 0`, `a² + Q² < M²` (so both horizons exist
/// and are distinct).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    mass: Rat,
    spin: Rat,
    charge: Rat,
}

impl ParamSet {
    /// Validates subextremality on construction.
    pub fn new(mass: Rat, spin: Rat, charge: Rat) -> Result<ParamSet, SymError> {
        if !mass.is_positive() {
            return Err(SymError::InvalidParameters("mass must be positive".into()));
        }
        if &spin * &spin + &charge * &charge >= &mass * &mass {
            return Err(SymError::InvalidParameters(
                "subextremality requires a² + Q² < M²".into(),
            ));
        }
        Ok(ParamSet { mass, spin, charge })
    }

    pub fn mass(&self) -> &Rat {
        &self.mass
    }

    pub fn spin(&self) -> &Rat {
        &self.spin
    }

    pub fn charge(&self) -> &Rat {
        &self.charge
    }

    pub fn is_static(&self) -> bool {
        self.spin.is_zero()
    }

    /// Outer horizon radius `r₊ = M + √(M² − a² − Q²)` (double precision).
    pub fn outer_horizon_f64(&self) -> f64 {
        let m = self.mass.to_f64().unwrap();
        let a = self.spin.to_f64().unwrap();
        let q = self.charge.to_f64().unwrap();
        m + (m * m - a * a - q * q).sqrt()
    }

    /// Inner horizon radius `r₋ = M − √(M² − a² − Q²)` (double precision).
    pub fn inner_horizon_f64(&self) -> f64 {
        let m = self.mass.to_f64().unwrap();
        let a = self.spin.to_f64().unwrap();
        let q = self.charge.to_f64().unwrap();
        m - (m * m - a * a - q * q).sqrt()
    }

    /// Exact evaluation assignment at the point `(r, x = cos θ)`; `s` and
    /// `|q|` are handled by the evaluator as radicals over this data.
    pub fn assignment(&self, r: Rat, x: Rat) -> HashMap<Var, GaussQ> {
        let mut map = HashMap::new();
        map.insert(Var::M, GaussQ::from_real(self.mass.clone()));
        map.insert(Var::A, GaussQ::from_real(self.spin.clone()));
        map.insert(Var::Q, GaussQ::from_real(self.charge.clone()));
        map.insert(Var::R, GaussQ::from_real(r));
        map.insert(Var::X, GaussQ::from_real(x));
        map
    }
}
