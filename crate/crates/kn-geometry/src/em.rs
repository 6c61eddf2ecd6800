//! The background electromagnetic field and the field-equation residual.

use crate::metric::{coord_diff, Mat4, Metric, DIM};
use symrat::{SymError, SymExpr, Var};

/// Gauge potential `A = (Qr/|q|²)(dt − a sin²θ dφ)` in covariant
/// coordinate components (signed so that the complexified field scalar
/// comes out as `Q/q̄²`).
pub fn potential() -> [SymExpr; 4] {
    let q2 = SymExpr::q_mod_sq();
    let qc = SymExpr::var(Var::Q);
    let r = SymExpr::var(Var::R);
    let a = SymExpr::var(Var::A);
    let s = SymExpr::sin_theta();
    let pref = qc * r / q2;
    [
        pref.clone(),
        SymExpr::zero(),
        SymExpr::zero(),
        -pref * a * s.clone() * s,
    ]
}

/// Field strength `F_{μν} = ∂_μ A_ν − ∂_ν A_μ`.
pub fn field_strength(a: &[SymExpr; 4]) -> Result<Mat4, SymError> {
    let mut f: Mat4 = core::array::from_fn(|_| core::array::from_fn(|_| SymExpr::zero()));
    for mu in 0..DIM {
        for nu in (mu + 1)..DIM {
            let v = coord_diff(&a[nu], mu)? - coord_diff(&a[mu], nu)?;
            f[mu][nu] = v.clone();
            f[nu][mu] = -v;
        }
    }
    Ok(f)
}

/// The stress residual `Ric_{μν} − 2F_{μλ}F_ν{}^λ + ½ g_{μν} F_{αβ}F^{αβ}`;
/// it vanishes identically on the background.
pub fn einstein_maxwell_residual(metric: &Metric, ricci: &Mat4, f: &Mat4) -> Mat4 {
    // `fmix[λ][ν] = g^{λσ} F_{νσ} = F_ν{}^λ`, so the quadratic term below
    // is `F_{μλ} F_ν{}^λ`.
    let mut fmix: Mat4 = core::array::from_fn(|_| core::array::from_fn(|_| SymExpr::zero()));
    for la in 0..DIM {
        for nu in 0..DIM {
            let mut acc = SymExpr::zero();
            for si in 0..DIM {
                if metric.ginv[la][si].is_zero() || f[nu][si].is_zero() {
                    continue;
                }
                acc = acc + metric.ginv[la][si].clone() * f[nu][si].clone();
            }
            fmix[la][nu] = acc;
        }
    }
    // Invariant F_{αβ}F^{αβ} with F^{αβ} = g^{αμ} g^{βν} F_{μν}.
    let mut fsq = SymExpr::zero();
    for al in 0..DIM {
        for be in 0..DIM {
            if f[al][be].is_zero() {
                continue;
            }
            let mut up = SymExpr::zero();
            for mu in 0..DIM {
                if metric.ginv[al][mu].is_zero() {
                    continue;
                }
                for nu in 0..DIM {
                    if metric.ginv[be][nu].is_zero() || f[mu][nu].is_zero() {
                        continue;
                    }
                    up = up
                        + metric.ginv[al][mu].clone()
                            * metric.ginv[be][nu].clone()
                            * f[mu][nu].clone();
                }
            }
            if !up.is_zero() {
                fsq = fsq + f[al][be].clone() * up;
            }
        }
    }

    let mut res: Mat4 = core::array::from_fn(|_| core::array::from_fn(|_| SymExpr::zero()));
    for mu in 0..DIM {
        for nu in 0..DIM {
            let mut ff = SymExpr::zero();
            for la in 0..DIM {
                if f[mu][la].is_zero() || fmix[la][nu].is_zero() {
                    continue;
                }
                ff = ff + f[mu][la].clone() * fmix[la][nu].clone();
            }
            res[mu][nu] = ricci[mu][nu].clone() - SymExpr::int(2) * ff
                + SymExpr::rat(1, 2) * metric.g[mu][nu].clone() * fsq.clone();
        }
    }
    res
}
