//! Exact arithmetic and calculus for complex rational functions of
//! `(r, x = cos θ, s = sin θ)` with symbolic parameters.
//!
//! Every value is a quotient of multivariate polynomials with exact Gaussian
//! rational coefficients, reduced modulo the defining relations
//!
//! ```text
//! s²  = 1 − x²            (so the s-degree of any reduced form is ≤ 1)
//! qa² = r² + a²·x²        (qa is a formal marker for |q| = |r + i·a·x|)
//! ```
//!
//! The design goals, in order:
//!
//! 1. **Exactness** — no floating point anywhere; coefficients are
//!    arbitrary-precision rationals, and equality of expressions is decided
//!    by cross-multiplied subtraction to a literal zero polynomial.
//! 2. **Canonical forms** — [`SymExpr::normalize`] cancels every registry
//!    factor out of the numerator and scales the denominator monic in
//!    graded-lexicographic order, so equal expressions built from the same
//!    factor vocabulary have identical representations.
//! 3. **Closure under the calculus actually needed** — partial derivatives
//!    in `r` and `θ` (chain rule through `x`, `s`, and `qa`), complex
//!    conjugation (`i → −i` on coefficients only), and logarithmic
//!    derivatives of fractional powers `q^{ν₁} q̄^{ν₂}`.
//!
//! Generic (unknown) functions enter through a small jet vocabulary: a single
//! amplitude `ψ` carried to second order (`psi`, `psi_r`, `psi_t`, `psi_rr`,
//! `psi_rt`, `psi_tt`, where `_t` denotes `∂_θ`) and a single scalar weight
//! `C` carried to first order. Differentiating past the stored jet order is
//! an error rather than a silent truncation.

mod coeff;
mod error;
mod expr;
mod mode;
mod params;
mod poly;
mod text;
mod var;

pub use coeff::GaussQ;
pub use error::SymError;
pub use expr::{log_power_derivatives, AlgVal, LogDerivatives, SymExpr};
pub use mode::ModeScalar;
pub use params::ParamSet;
pub use poly::Poly;
pub use text::parse as parse_expr;
pub use var::{Coord, Var, NUM_VARS};

/// Convenience alias: exact rational scalar.
pub type Rat = num_rational::BigRational;

/// Builds an exact rational from a numerator/denominator pair of machine ints.
pub fn rat(n: i64, d: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(n), BigInt::from(d))
}
