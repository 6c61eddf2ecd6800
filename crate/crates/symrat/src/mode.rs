//! Mode-decomposed scalars: an exact amplitude with bookkeeping weights.

use crate::error::SymError;
use crate::expr::SymExpr;
use crate::var::Coord;

/// A scalar of definite spin weight and conformal type whose `(t, φ)`
/// dependence has been separated off as `e^{i(mφ − ωt)}`; only the exact
/// `(r, θ)` amplitude is stored. Under this convention `∂_t → −iω` and
/// `∂_φ → i·m` act as multiplications on the amplitude.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeScalar {
    pub amp: SymExpr,
    /// Spin weight (eigenvalue under frame rotations of the horizontal pair).
    pub spin_weight: i32,
    /// Conformal type (scaling weight along the outgoing null direction).
    pub conf_type: i32,
}

impl ModeScalar {
    pub fn new(amp: SymExpr, spin_weight: i32, conf_type: i32) -> ModeScalar {
        ModeScalar {
            amp,
            spin_weight,
            conf_type,
        }
    }

    pub fn zero(spin_weight: i32, conf_type: i32) -> ModeScalar {
        ModeScalar::new(SymExpr::zero(), spin_weight, conf_type)
    }

    /// Complex conjugation: negates the spin weight, keeps the conformal
    /// type. (The conjugate mode carries `e^{-i(mφ − ωt)}`; callers track
    /// the sign of `(ω, m)` themselves.)
    pub fn conj(&self) -> ModeScalar {
        ModeScalar::new(self.amp.conj(), -self.spin_weight, self.conf_type)
    }

    /// Sum of two scalars of identical weights.
    pub fn add(&self, other: &ModeScalar) -> Result<ModeScalar, SymError> {
        if self.spin_weight != other.spin_weight || self.conf_type != other.conf_type {
            return Err(SymError::MalformedExpression(format!(
                "weight mismatch in sum: ({}, {}) vs ({}, {})",
                self.spin_weight, self.conf_type, other.spin_weight, other.conf_type
            )));
        }
        Ok(ModeScalar::new(
            self.amp.clone() + other.amp.clone(),
            self.spin_weight,
            self.conf_type,
        ))
    }

    /// Product; weights add.
    pub fn mul(&self, other: &ModeScalar) -> ModeScalar {
        ModeScalar::new(
            self.amp.clone() * other.amp.clone(),
            self.spin_weight + other.spin_weight,
            self.conf_type + other.conf_type,
        )
    }

    /// Scale by a weightless exact factor.
    pub fn scale(&self, f: &SymExpr) -> ModeScalar {
        ModeScalar::new(self.amp.clone() * f.clone(), self.spin_weight, self.conf_type)
    }

    /// Coordinate derivative of the amplitude (weights unchanged; covariant
    /// derivatives that shift weights live in the geometry layer).
    pub fn diff(&self, c: Coord) -> Result<ModeScalar, SymError> {
        Ok(ModeScalar::new(
            self.amp.diff(c)?,
            self.spin_weight,
            self.conf_type,
        ))
    }
}
