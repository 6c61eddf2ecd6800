//! The principal null/horizontal frame and its rotation coefficients.

use crate::metric::{coord_diff, Mat4, Metric, DIM};
use symrat::{SymError, SymExpr, Var};

/// Frame vectors in coordinate components. Index convention for frame
/// labels throughout the crate: `0 → e₁, 1 → e₂, 2 → e₃, 3 → e₄`
/// (horizontal pair first, then incoming and outgoing null directions).
#[derive(Clone, Debug)]
pub struct Tetrad {
    /// `vecs[a][μ]` is the `μ`-th coordinate component of the frame vector.
    pub vecs: [[SymExpr; 4]; 4],
}

/// Frame-label indices.
pub const E1: usize = 0;
pub const E2: usize = 1;
pub const E3: usize = 2;
pub const E4: usize = 3;

impl Tetrad {
    /// The frame adapted to the principal null directions:
    ///
    /// ```text
    /// e₄ = ((r²+a²)/Δ) ∂t + ∂r + (a/Δ) ∂φ
    /// e₃ = ((r²+a²)/|q|²) ∂t − (Δ/|q|²) ∂r + (a/|q|²) ∂φ
    /// e₁ = |q|⁻¹ ∂θ
    /// e₂ = (a sinθ/|q|) ∂t + (|q| sinθ)⁻¹ ∂φ
    /// ```
    pub fn kerr_newman() -> Tetrad {
        let delta = SymExpr::delta();
        let q2 = SymExpr::q_mod_sq();
        let qa = SymExpr::qa();
        let a = SymExpr::var(Var::A);
        let s = SymExpr::sin_theta();
        let r = SymExpr::var(Var::R);
        let r2a2 = r.clone() * r + a.clone() * a.clone();
        let e4 = [
            r2a2.clone() / delta.clone(),
            SymExpr::one(),
            SymExpr::zero(),
            a.clone() / delta,
        ];
        let e3 = [
            r2a2 / q2.clone(),
            -SymExpr::delta() / q2.clone(),
            SymExpr::zero(),
            a.clone() / q2,
        ];
        let e1 = [
            SymExpr::zero(),
            SymExpr::zero(),
            SymExpr::one() / qa.clone(),
            SymExpr::zero(),
        ];
        let e2 = [
            a * s.clone() / qa.clone(),
            SymExpr::zero(),
            SymExpr::zero(),
            SymExpr::one() / (qa * s),
        ];
        Tetrad {
            vecs: [e1, e2, e3, e4],
        }
    }

    /// `g(e_a, e_b)` for all frame pairs; the normalization is
    /// `g(e₁,e₁) = g(e₂,e₂) = 1`, `g(e₃,e₄) = −2`, all others zero.
    pub fn gram(&self, metric: &Metric) -> Mat4 {
        core::array::from_fn(|a| {
            core::array::from_fn(|b| {
                let mut acc = SymExpr::zero();
                for mu in 0..DIM {
                    for nu in 0..DIM {
                        if self.vecs[a][mu].is_zero()
                            || self.vecs[b][nu].is_zero()
                            || metric.g[mu][nu].is_zero()
                        {
                            continue;
                        }
                        acc = acc
                            + self.vecs[a][mu].clone()
                                * self.vecs[b][nu].clone()
                                * metric.g[mu][nu].clone();
                    }
                }
                acc
            })
        })
    }

    /// Rotation coefficients `γ_{abc} = g(D_{e_a} e_b, e_c)` over frame
    /// labels, computed from the Christoffel symbols.
    pub fn rotation_coefficients(
        &self,
        metric: &Metric,
        gamma: &[Mat4; 4],
    ) -> Result<[Mat4; 4], SymError> {
        // Covariant components of the frame vectors: (e_c)_ν = g_{νμ} e_c^μ.
        let lower: [[SymExpr; 4]; 4] = core::array::from_fn(|c| {
            core::array::from_fn(|nu| {
                let mut acc = SymExpr::zero();
                for mu in 0..DIM {
                    if metric.g[nu][mu].is_zero() || self.vecs[c][mu].is_zero() {
                        continue;
                    }
                    acc = acc + metric.g[nu][mu].clone() * self.vecs[c][mu].clone();
                }
                acc
            })
        });
        let mut out: [Mat4; 4] = core::array::from_fn(|_| {
            core::array::from_fn(|_| core::array::from_fn(|_| SymExpr::zero()))
        });
        for a in 0..4 {
            // (D_{e_a} e_b)^ν = e_a^μ (∂_μ e_b^ν + Γ^ν_{μλ} e_b^λ)
            for b in 0..4 {
                let mut dvec: [SymExpr; 4] = core::array::from_fn(|_| SymExpr::zero());
                for nu in 0..DIM {
                    let mut acc = SymExpr::zero();
                    for mu in 0..DIM {
                        if self.vecs[a][mu].is_zero() {
                            continue;
                        }
                        let mut inner = coord_diff(&self.vecs[b][nu], mu)?;
                        for la in 0..DIM {
                            if gamma[nu][mu][la].is_zero() || self.vecs[b][la].is_zero() {
                                continue;
                            }
                            inner = inner + gamma[nu][mu][la].clone() * self.vecs[b][la].clone();
                        }
                        if inner.is_zero() {
                            continue;
                        }
                        acc = acc + self.vecs[a][mu].clone() * inner;
                    }
                    dvec[nu] = acc;
                }
                for c in 0..4 {
                    let mut acc = SymExpr::zero();
                    for nu in 0..DIM {
                        if dvec[nu].is_zero() || lower[c][nu].is_zero() {
                            continue;
                        }
                        acc = acc + dvec[nu].clone() * lower[c][nu].clone();
                    }
                    out[a][b][c] = acc;
                }
            }
        }
        Ok(out)
    }

    /// Contract a fully covariant rank-4 coordinate tensor with four frame
    /// vectors.
    pub fn contract4(
        &self,
        t: &[[Mat4; 4]; 4],
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    ) -> SymExpr {
        let mut acc = SymExpr::zero();
        for mu in 0..DIM {
            if self.vecs[a][mu].is_zero() {
                continue;
            }
            for nu in 0..DIM {
                if self.vecs[b][nu].is_zero() {
                    continue;
                }
                for rho in 0..DIM {
                    if self.vecs[c][rho].is_zero() {
                        continue;
                    }
                    for si in 0..DIM {
                        if self.vecs[d][si].is_zero() || t[mu][nu][rho][si].is_zero() {
                            continue;
                        }
                        acc = acc
                            + self.vecs[a][mu].clone()
                                * self.vecs[b][nu].clone()
                                * self.vecs[c][rho].clone()
                                * self.vecs[d][si].clone()
                                * t[mu][nu][rho][si].clone();
                    }
                }
            }
        }
        acc
    }

    /// Contract a covariant 2-tensor with two frame vectors.
    pub fn contract2(&self, t: &Mat4, a: usize, b: usize) -> SymExpr {
        let mut acc = SymExpr::zero();
        for mu in 0..DIM {
            if self.vecs[a][mu].is_zero() {
                continue;
            }
            for nu in 0..DIM {
                if self.vecs[b][nu].is_zero() || t[mu][nu].is_zero() {
                    continue;
                }
                acc = acc + self.vecs[a][mu].clone() * self.vecs[b][nu].clone() * t[mu][nu].clone();
            }
        }
        acc
    }
}
