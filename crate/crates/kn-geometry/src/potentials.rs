//! Closed-form potentials of the coupled wave system.
//!
//! Both potentials share the same base profile; the identity suite verifies
//! that these closed forms agree exactly with the potentials assembled from
//! the first-order reduction of the wave operators, and that they are real
//! and positive outside the horizon.

use symrat::{SymExpr, Var};

/// The common base profile
/// `(r⁴ − 2Mr³ + (2 − 3cos²θ)a²r² + Q²r² − 2a⁴cos²θ) / |q|⁶`.
pub fn potential_base() -> SymExpr {
    let r = SymExpr::var(Var::R);
    let x = SymExpr::var(Var::X);
    let m = SymExpr::var(Var::M);
    let a = SymExpr::var(Var::A);
    let qc = SymExpr::var(Var::Q);
    let q2 = SymExpr::q_mod_sq();
    let r2 = r.clone() * r.clone();
    let a2 = a.clone() * a.clone();
    let x2 = x.clone() * x.clone();
    let num = r2.clone() * r2.clone()
        - SymExpr::int(2) * m * r2.clone() * r.clone()
        + (SymExpr::int(2) - SymExpr::int(3) * x2.clone()) * a2.clone() * r2.clone()
        + qc.clone() * qc * r2
        - SymExpr::int(2) * a2.clone() * a2 * x2;
    num / (q2.clone() * q2.clone() * q2)
}

/// The spin-1 potential: `base + 5Q²/|q|⁴`.
pub fn potential_v1() -> SymExpr {
    let qc = SymExpr::var(Var::Q);
    let q2 = SymExpr::q_mod_sq();
    potential_base() + SymExpr::int(5) * qc.clone() * qc / (q2.clone() * q2)
}

/// The spin-2 potential: `4·base + 2Q²/|q|⁴`.
pub fn potential_v2() -> SymExpr {
    let qc = SymExpr::var(Var::Q);
    let q2 = SymExpr::q_mod_sq();
    SymExpr::int(4) * potential_base() + SymExpr::int(2) * qc.clone() * qc / (q2.clone() * q2)
}
