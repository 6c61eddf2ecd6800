//! Coordinate wave operators on mode-decomposed scalars.

use crate::metric::{Metric, DIM};
use symrat::{Coord, SymError, SymExpr, Var};

/// Mode partial derivative in coordinate direction `μ`
/// (`∂_t → −iω`, `∂_φ → i·m`).
fn mode_partial(mu: usize, f: &SymExpr) -> Result<SymExpr, SymError> {
    Ok(match mu {
        0 => -SymExpr::i() * SymExpr::var(Var::Om) * f.clone(),
        1 => f.diff(Coord::R)?,
        2 => f.diff(Coord::Theta)?,
        3 => SymExpr::i() * SymExpr::var(Var::Mm) * f.clone(),
        _ => unreachable!(),
    })
}

/// `□_g ψ = (−g)^{-1/2} ∂_μ((−g)^{1/2} g^{μν} ∂_ν ψ)` on a mode amplitude;
/// `(−g)^{1/2} = |q|² sinθ` exactly.
pub fn box_scalar(metric: &Metric, psi: &SymExpr) -> Result<SymExpr, SymError> {
    let sqrtg = SymExpr::q_mod_sq() * SymExpr::sin_theta();
    let mut acc = SymExpr::zero();
    for mu in 0..DIM {
        for nu in 0..DIM {
            if metric.ginv[mu][nu].is_zero() {
                continue;
            }
            let inner = sqrtg.clone() * metric.ginv[mu][nu].clone() * mode_partial(nu, psi)?;
            if inner.is_zero() {
                continue;
            }
            acc = acc + mode_partial(mu, &inner)?;
        }
    }
    Ok(acc / sqrtg)
}

/// The scalar wave operator of spin weight `s` and conformal type `c`,
///
/// ```text
/// 𝒯^[s,c](ψ) = □_g ψ + (2c/|q|²)(r−M) ∂_r ψ
///            + (2/|q|²)(c·a(r−M)/Δ + s·i·cosθ/sin²θ) ∂_φ ψ
///            + (2/|q|²)(c((M(r²−a²) − Q²r)/Δ − r) − s·i·a·cosθ) ∂_t ψ
///            + (1/|q|²)(s − s²cot²θ) ψ
/// ```
///
/// acting on mode amplitudes.
pub fn scalar_teukolsky(
    metric: &Metric,
    spin: i64,
    conf: i64,
    psi: &SymExpr,
) -> Result<SymExpr, SymError> {
    let q2 = SymExpr::q_mod_sq();
    let r = SymExpr::var(Var::R);
    let m = SymExpr::var(Var::M);
    let a = SymExpr::var(Var::A);
    let qc = SymExpr::var(Var::Q);
    let x = SymExpr::cos_theta();
    let sn = SymExpr::sin_theta();
    let delta = SymExpr::delta();
    let s = SymExpr::int(spin);
    let c = SymExpr::int(conf);
    let i = SymExpr::i();

    let dpsi_r = mode_partial(1, psi)?;
    let dpsi_t = mode_partial(0, psi)?;
    let dpsi_phi = mode_partial(3, psi)?;

    let mut out = box_scalar(metric, psi)?;
    out = out + SymExpr::int(2) * c.clone() * (r.clone() - m.clone()) / q2.clone() * dpsi_r;
    out = out
        + SymExpr::int(2) / q2.clone()
            * (c.clone() * a.clone() * (r.clone() - m.clone()) / delta.clone()
                + s.clone() * i.clone() * x.clone() / (sn.clone() * sn.clone()))
            * dpsi_phi;
    out = out
        + SymExpr::int(2) / q2.clone()
            * (c * ((m * (r.clone() * r.clone() - a.clone() * a.clone())
                - qc.clone() * qc * r.clone())
                / delta
                - r)
                - s.clone() * i * a * x.clone())
            * dpsi_t;
    out = out
        + (s.clone() - s.clone() * s * x.clone() * x / (sn.clone() * sn)) / q2
            * psi.clone();
    Ok(out)
}
