//! The evolved field state.
//!
//! Both fields are stored as complex multipole coefficients, node-major:
//! entry `j·n + l_index` is the coefficient of multipole `lmin + l_index`
//! at radial node `j`.  The state carries the fields and their time
//! derivatives (first-order-in-time form).

use num_complex::Complex64;

use crate::operators::ModeOperators;

/// Evolved variables of one `m`-mode.
#[derive(Clone, Debug)]
pub struct FieldState {
    /// Evolution time.
    pub t: f64,
    /// Spin-1 field coefficients (`n_r × n_p`).
    pub p: Vec<Complex64>,
    /// Spin-2 field coefficients (`n_r × n_u`), in the `√2`-scaled
    /// normalization of [`crate::operators`].
    pub u: Vec<Complex64>,
    /// `∂_t` of the spin-1 field.
    pub vp: Vec<Complex64>,
    /// `∂_t` of the spin-2 field.
    pub vu: Vec<Complex64>,
}

impl FieldState {
    /// The zero state on the given operators' grid.
    pub fn zero(ops: &ModeOperators) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            t: 0.0,
            p: vec![zero; ops.grid.n_r * ops.p.n],
            u: vec![zero; ops.grid.n_r * ops.u.n],
            vp: vec![zero; ops.grid.n_r * ops.p.n],
            vu: vec![zero; ops.grid.n_r * ops.u.n],
        }
    }

    /// True when every stored value is finite.
    pub fn is_finite(&self) -> bool {
        self.p
            .iter()
            .chain(&self.u)
            .chain(&self.vp)
            .chain(&self.vu)
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Name of the first non-finite array, if any.
    pub fn first_non_finite(&self) -> Option<&'static str> {
        let bad = |v: &[Complex64]| v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite()));
        if bad(&self.p) {
            Some("p")
        } else if bad(&self.u) {
            Some("u")
        } else if bad(&self.vp) {
            Some("vp")
        } else if bad(&self.vu) {
            Some("vu")
        } else {
            None
        }
    }

    /// Largest modulus over all stored values.
    pub fn max_abs(&self) -> f64 {
        self.p
            .iter()
            .chain(&self.u)
            .chain(&self.vp)
            .chain(&self.vu)
            .fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// Largest imaginary part over the fields (diagnostic for the
    /// real-data invariant of axisymmetric static backgrounds).
    pub fn max_imag(&self) -> f64 {
        self.p
            .iter()
            .chain(&self.u)
            .chain(&self.vp)
            .chain(&self.vu)
            .fold(0.0f64, |m, z| m.max(z.im.abs()))
    }

    /// In-place `self += c · other` over all arrays.
    pub fn axpy(&mut self, c: f64, other: &FieldState) {
        for (dst, src) in [
            (&mut self.p, &other.p),
            (&mut self.u, &other.u),
            (&mut self.vp, &other.vp),
            (&mut self.vu, &other.vu),
        ] {
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d += c * s;
            }
        }
        self.t += c * other.t;
    }
}
