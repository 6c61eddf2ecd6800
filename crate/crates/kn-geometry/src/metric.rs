//! The exact metric in Boyer-Lindquist-type coordinates `(t, r, θ, φ)` and
//! its curvature.

use symrat::{Coord, SymError, SymExpr, Var};

/// Coordinate index order used throughout: `t = 0, r = 1, θ = 2, φ = 3`.
pub const DIM: usize = 4;

pub type Mat4 = [[SymExpr; 4]; 4];

fn zeros4() -> [SymExpr; 4] {
    core::array::from_fn(|_| SymExpr::zero())
}

fn zeros44() -> Mat4 {
    core::array::from_fn(|_| zeros4())
}

/// Coordinate partial derivative of a stationary axisymmetric component:
/// nonzero only along `r` and `θ`.
pub fn coord_diff(e: &SymExpr, mu: usize) -> Result<SymExpr, SymError> {
    match mu {
        1 => e.diff(Coord::R),
        2 => e.diff(Coord::Theta),
        _ => Ok(SymExpr::zero()),
    }
}

/// The charged rotating black-hole metric with exact covariant and
/// contravariant components.
#[derive(Clone, Debug)]
pub struct Metric {
    pub g: Mat4,
    pub ginv: Mat4,
    /// `det g` (an exact expression; equals `−|q|⁴ sin²θ`).
    pub det: SymExpr,
}

impl Metric {
    /// Builds the metric from its line element,
    ///
    /// ```text
    /// ds² = −(Δ/|q|²)(dt − a sin²θ dφ)² + (|q|²/Δ) dr² + |q|² dθ²
    ///       + (sin²θ/|q|²)(a dt − (r² + a²) dφ)²
    /// ```
    ///
    /// with `Δ = r² − 2Mr + a² + Q²` and `|q|² = r² + a²cos²θ`.
    pub fn kerr_newman() -> Metric {
        let delta = SymExpr::delta();
        let q2 = SymExpr::q_mod_sq();
        let a = SymExpr::var(Var::A);
        let s = SymExpr::sin_theta();
        let s2 = s.clone() * s;
        let r = SymExpr::var(Var::R);
        let r2a2 = r.clone() * r + a.clone() * a.clone();

        // Covariant one-forms (components along dt, dr, dθ, dφ) and their
        // squared weights in the line element.
        let forms: [([SymExpr; 4], SymExpr); 4] = [
            (
                [
                    SymExpr::one(),
                    SymExpr::zero(),
                    SymExpr::zero(),
                    -a.clone() * s2.clone(),
                ],
                -delta.clone() / q2.clone(),
            ),
            (
                [SymExpr::zero(), SymExpr::one(), SymExpr::zero(), SymExpr::zero()],
                q2.clone() / delta,
            ),
            (
                [SymExpr::zero(), SymExpr::zero(), SymExpr::one(), SymExpr::zero()],
                q2.clone(),
            ),
            (
                [a, SymExpr::zero(), SymExpr::zero(), -r2a2],
                s2 / q2,
            ),
        ];

        let mut g = zeros44();
        for (w, weight) in &forms {
            for mu in 0..DIM {
                for nu in 0..DIM {
                    if w[mu].is_zero() || w[nu].is_zero() {
                        continue;
                    }
                    g[mu][nu] = g[mu][nu].clone()
                        + weight.clone() * w[mu].clone() * w[nu].clone();
                }
            }
        }
        let (ginv, det) = invert_sym4(&g);
        Metric { g, ginv, det }
    }

    /// Christoffel symbols `Γ^μ_{νλ} = ½ g^{μσ}(∂_ν g_{σλ} + ∂_λ g_{σν} − ∂_σ g_{νλ})`.
    pub fn christoffel(&self) -> Result<[Mat4; 4], SymError> {
        // Precompute ∂_ρ g_{μν}.
        let mut dg: [Mat4; 4] = core::array::from_fn(|_| zeros44());
        for rho in 0..DIM {
            for mu in 0..DIM {
                for nu in mu..DIM {
                    let d = coord_diff(&self.g[mu][nu], rho)?;
                    dg[rho][mu][nu] = d.clone();
                    dg[rho][nu][mu] = d;
                }
            }
        }
        let half = SymExpr::rat(1, 2);
        let mut gamma: [Mat4; 4] = core::array::from_fn(|_| zeros44());
        for mu in 0..DIM {
            for nu in 0..DIM {
                for la in nu..DIM {
                    let mut acc = SymExpr::zero();
                    for si in 0..DIM {
                        if self.ginv[mu][si].is_zero() {
                            continue;
                        }
                        let term = dg[nu][si][la].clone() + dg[la][si][nu].clone()
                            - dg[si][nu][la].clone();
                        if term.is_zero() {
                            continue;
                        }
                        acc = acc + self.ginv[mu][si].clone() * term;
                    }
                    let v = half.clone() * acc;
                    gamma[mu][nu][la] = v.clone();
                    gamma[mu][la][nu] = v;
                }
            }
        }
        Ok(gamma)
    }

    /// Fully covariant curvature tensor `R_{ρσμν}` from the Christoffel
    /// symbols (`R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}`).
    pub fn riemann(&self, gamma: &[Mat4; 4]) -> Result<[[Mat4; 4]; 4], SymError> {
        let mut up: [[Mat4; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| zeros44()));
        for rho in 0..DIM {
            for si in 0..DIM {
                for mu in 0..DIM {
                    for nu in (mu + 1)..DIM {
                        let mut acc = coord_diff(&gamma[rho][nu][si], mu)?
                            - coord_diff(&gamma[rho][mu][si], nu)?;
                        for la in 0..DIM {
                            if !gamma[rho][mu][la].is_zero() && !gamma[la][nu][si].is_zero() {
                                acc = acc
                                    + gamma[rho][mu][la].clone() * gamma[la][nu][si].clone();
                            }
                            if !gamma[rho][nu][la].is_zero() && !gamma[la][mu][si].is_zero() {
                                acc = acc
                                    - gamma[rho][nu][la].clone() * gamma[la][mu][si].clone();
                            }
                        }
                        up[rho][si][mu][nu] = acc.clone();
                        up[rho][si][nu][mu] = -acc;
                    }
                }
            }
        }
        // Lower the first index.
        let mut down: [[Mat4; 4]; 4] =
            core::array::from_fn(|_| core::array::from_fn(|_| zeros44()));
        for rho in 0..DIM {
            for si in 0..DIM {
                for mu in 0..DIM {
                    for nu in 0..DIM {
                        let mut acc = SymExpr::zero();
                        for la in 0..DIM {
                            if self.g[rho][la].is_zero() || up[la][si][mu][nu].is_zero() {
                                continue;
                            }
                            acc = acc + self.g[rho][la].clone() * up[la][si][mu][nu].clone();
                        }
                        down[rho][si][mu][nu] = acc;
                    }
                }
            }
        }
        Ok(down)
    }

    /// Ricci tensor `Ric_{σν} = g^{ρμ} R_{ρσμν}`.
    pub fn ricci(&self, riemann: &[[Mat4; 4]; 4]) -> Mat4 {
        let mut ric = zeros44();
        for si in 0..DIM {
            for nu in si..DIM {
                let mut acc = SymExpr::zero();
                for rho in 0..DIM {
                    for mu in 0..DIM {
                        if self.ginv[rho][mu].is_zero() || riemann[rho][si][mu][nu].is_zero() {
                            continue;
                        }
                        acc = acc + self.ginv[rho][mu].clone() * riemann[rho][si][mu][nu].clone();
                    }
                }
                ric[si][nu] = acc.clone();
                ric[nu][si] = acc;
            }
        }
        ric
    }

    /// Scalar curvature `g^{μν} Ric_{μν}`.
    pub fn scalar_curvature(&self, ricci: &Mat4) -> SymExpr {
        let mut acc = SymExpr::zero();
        for mu in 0..DIM {
            for nu in 0..DIM {
                if self.ginv[mu][nu].is_zero() || ricci[mu][nu].is_zero() {
                    continue;
                }
                acc = acc + self.ginv[mu][nu].clone() * ricci[mu][nu].clone();
            }
        }
        acc
    }

    /// Conformal curvature `W_{ρσμν} = R_{ρσμν} − ½(g ∧ Ric)_{ρσμν} + (R_s/12)(g ∧ g)_{ρσμν}`
    /// where `(A ∧ B)_{ρσμν} = A_{ρμ}B_{σν} − A_{ρν}B_{σμ} + B_{ρμ}A_{σν} − B_{ρν}A_{σμ}`.
    pub fn weyl(
        &self,
        riemann: &[[Mat4; 4]; 4],
        ricci: &Mat4,
        scalar: &SymExpr,
    ) -> [[Mat4; 4]; 4] {
        let half = SymExpr::rat(1, 2);
        let s12 = scalar.clone() * SymExpr::rat(1, 12);
        let mut w: [[Mat4; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| zeros44()));
        let kn = |a: &Mat4, b: &Mat4, r: usize, s: usize, m: usize, n: usize| {
            a[r][m].clone() * b[s][n].clone() - a[r][n].clone() * b[s][m].clone()
                + b[r][m].clone() * a[s][n].clone()
                - b[r][n].clone() * a[s][m].clone()
        };
        for rho in 0..DIM {
            for si in 0..DIM {
                for mu in 0..DIM {
                    for nu in 0..DIM {
                        w[rho][si][mu][nu] = riemann[rho][si][mu][nu].clone()
                            - half.clone() * kn(&self.g, ricci, rho, si, mu, nu)
                            + s12.clone() * kn(&self.g, &self.g, rho, si, mu, nu);
                    }
                }
            }
        }
        w
    }
}

/// Inverse and determinant of a symmetric 4×4 matrix of exact expressions,
/// by cofactor expansion (cheap here thanks to the block sparsity).
pub fn invert_sym4(g: &Mat4) -> (Mat4, SymExpr) {
    let det = det4(g);
    let det_inv = SymExpr::one() / det.clone();
    let mut inv = zeros44();
    for i in 0..DIM {
        for j in i..DIM {
            let c = cofactor(g, j, i);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let v = SymExpr::int(sign) * c * det_inv.clone();
            inv[i][j] = v.clone();
            inv[j][i] = v;
        }
    }
    (inv, det)
}

fn det3(m: &[[SymExpr; 3]; 3]) -> SymExpr {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone()
            * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone()
            * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

fn minor(g: &Mat4, row: usize, col: usize) -> [[SymExpr; 3]; 3] {
    let rows: Vec<usize> = (0..DIM).filter(|&r| r != row).collect();
    let cols: Vec<usize> = (0..DIM).filter(|&c| c != col).collect();
    core::array::from_fn(|i| core::array::from_fn(|j| g[rows[i]][cols[j]].clone()))
}

fn cofactor(g: &Mat4, row: usize, col: usize) -> SymExpr {
    det3(&minor(g, row, col))
}

fn det4(g: &Mat4) -> SymExpr {
    let mut acc = SymExpr::zero();
    for col in 0..DIM {
        if g[0][col].is_zero() {
            continue;
        }
        let sign = if col % 2 == 0 { 1 } else { -1 };
        acc = acc + SymExpr::int(sign) * g[0][col].clone() * cofactor(g, 0, col);
    }
    acc
}
