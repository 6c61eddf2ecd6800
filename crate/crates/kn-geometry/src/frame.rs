//! Horizontal frame tensors of rank ≤ 2 and the derivative operators
//! acting on their mode-decomposed components.
//!
//! Components are stored fully (`[F₁, F₂]` for one-forms, row-major
//! `[U₁₁, U₁₂, U₂₁, U₂₂]` for 2-tensors); anti-self-duality of the
//! complexified quantities is a property of the inputs, never an assumption
//! of the operators, so it survives as a cross-check.

use crate::catalog::{horizontal_connection, Background, BackgroundCatalog};
use crate::tetrad::{Tetrad, E3, E4};
use symrat::{Coord, SymError, SymExpr, Var};

/// A horizontal tensor of rank 0, 1, or 2 with a conformal scaling type.
#[derive(Clone, Debug)]
pub struct FrameTensor {
    pub rank: usize,
    /// Conformal type: the power of the outgoing scaling the quantity
    /// carries; the weighted incoming derivative lowers it by one.
    pub conf_type: i32,
    /// 1, 2, or 4 components (row-major for rank 2).
    pub comps: Vec<SymExpr>,
}

impl FrameTensor {
    pub fn scalar(v: SymExpr, conf_type: i32) -> FrameTensor {
        FrameTensor {
            rank: 0,
            conf_type,
            comps: vec![v],
        }
    }

    pub fn one_form(c1: SymExpr, c2: SymExpr, conf_type: i32) -> FrameTensor {
        FrameTensor {
            rank: 1,
            conf_type,
            comps: vec![c1, c2],
        }
    }

    pub fn two_tensor(c: [SymExpr; 4], conf_type: i32) -> FrameTensor {
        FrameTensor {
            rank: 2,
            conf_type,
            comps: c.to_vec(),
        }
    }

    /// Anti-self-dual one-form with first component `psi`: `F₂ = −i F₁`.
    pub fn asd_one_form(psi: SymExpr, conf_type: i32) -> FrameTensor {
        let f2 = -SymExpr::i() * psi.clone();
        FrameTensor::one_form(psi, f2, conf_type)
    }

    /// Anti-self-dual symmetric traceless 2-tensor with `U₁₁ = psi`:
    /// `U₁₂ = U₂₁ = −i U₁₁`, `U₂₂ = −U₁₁`.
    pub fn asd_two_tensor(psi: SymExpr, conf_type: i32) -> FrameTensor {
        let off = -SymExpr::i() * psi.clone();
        FrameTensor::two_tensor([psi.clone(), off.clone(), off, -psi], conf_type)
    }

    /// The generic mode amplitude `ψ` as an anti-self-dual tensor of the
    /// given rank (rank 0 is the bare scalar).
    pub fn generic(rank: usize, conf_type: i32) -> FrameTensor {
        let psi = SymExpr::var(Var::P00);
        match rank {
            0 => FrameTensor::scalar(psi, conf_type),
            1 => FrameTensor::asd_one_form(psi, conf_type),
            2 => FrameTensor::asd_two_tensor(psi, conf_type),
            _ => panic!("rank must be ≤ 2"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn map(&self, f: impl Fn(&SymExpr) -> SymExpr) -> FrameTensor {
        FrameTensor {
            rank: self.rank,
            conf_type: self.conf_type,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &SymExpr) -> FrameTensor {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn neg(&self) -> FrameTensor {
        self.map(|c| -c.clone())
    }

    /// Componentwise sum; ranks must agree (conformal types are taken from
    /// `self`, callers only add like-typed quantities).
    pub fn add(&self, o: &FrameTensor) -> FrameTensor {
        assert_eq!(self.rank, o.rank, "rank mismatch in frame-tensor sum");
        FrameTensor {
            rank: self.rank,
            conf_type: self.conf_type,
            comps: self
                .comps
                .iter()
                .zip(&o.comps)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, o: &FrameTensor) -> FrameTensor {
        self.add(&o.neg())
    }

    /// Left Hodge dual: `(*F)₁ = F₂, (*F)₂ = −F₁`; `(*U)_{ab} = ∈_a{}^c U_{cb}`.
    pub fn hodge(&self) -> FrameTensor {
        let c = &self.comps;
        let comps = match self.rank {
            1 => vec![c[1].clone(), -c[0].clone()],
            2 => vec![c[2].clone(), c[3].clone(), -c[0].clone(), -c[1].clone()],
            _ => panic!("hodge needs rank 1 or 2"),
        };
        FrameTensor {
            rank: self.rank,
            conf_type: self.conf_type,
            comps,
        }
    }
}

/// `F·G = F₁G₁ + F₂G₂` for one-forms.
pub fn dot(f: &FrameTensor, g: &FrameTensor) -> SymExpr {
    assert!(f.rank == 1 && g.rank == 1);
    f.comps[0].clone() * g.comps[0].clone() + f.comps[1].clone() * g.comps[1].clone()
}

/// `F∧G = F₁G₂ − F₂G₁` for one-forms.
pub fn wedge(f: &FrameTensor, g: &FrameTensor) -> SymExpr {
    assert!(f.rank == 1 && g.rank == 1);
    f.comps[0].clone() * g.comps[1].clone() - f.comps[1].clone() * g.comps[0].clone()
}

/// `(H·U)_b = H^a U_{ab}` for a one-form against a 2-tensor.
pub fn dot_into(h: &FrameTensor, u: &FrameTensor) -> FrameTensor {
    assert!(h.rank == 1 && u.rank == 2);
    let c = |a: usize, b: usize| u.comps[2 * a + b].clone();
    FrameTensor::one_form(
        h.comps[0].clone() * c(0, 0) + h.comps[1].clone() * c(1, 0),
        h.comps[0].clone() * c(0, 1) + h.comps[1].clone() * c(1, 1),
        u.conf_type + h.conf_type,
    )
}

/// Symmetric traceless product `(F⊗G)_{ab} = F_aG_b + F_bG_a − δ_{ab} F·G`.
pub fn otimes(f: &FrameTensor, g: &FrameTensor) -> FrameTensor {
    assert!(f.rank == 1 && g.rank == 1);
    let t11 = f.comps[0].clone() * g.comps[0].clone() - f.comps[1].clone() * g.comps[1].clone();
    let t12 = f.comps[0].clone() * g.comps[1].clone() + f.comps[1].clone() * g.comps[0].clone();
    FrameTensor::two_tensor(
        [t11.clone(), t12.clone(), t12, -t11],
        f.conf_type + g.conf_type,
    )
}

/// All frame-derivative machinery bound to one background.
pub struct FrameOps {
    pub cat: BackgroundCatalog,
    /// Rotation one-form `Λ_μ = g(D_{e_μ}e₁, e₂)` over frame directions.
    pub lam: [SymExpr; 4],
    tetrad: Tetrad,
    /// With `true`, amplitudes are treated as `t, φ`-independent background
    /// functions: the `∂_t`/`∂_φ` legs of the frame vectors are dropped
    /// instead of producing `−iω`/`i·m` factors.
    static_background: bool,
}

impl FrameOps {
    pub fn new(bg: &Background) -> FrameOps {
        FrameOps {
            cat: BackgroundCatalog::closed_form(),
            lam: horizontal_connection(bg),
            tetrad: bg.tetrad.clone(),
            static_background: false,
        }
    }

    /// Operator bundle acting on stationary axisymmetric (background)
    /// functions rather than mode amplitudes.
    pub fn new_static(bg: &Background) -> FrameOps {
        FrameOps {
            static_background: true,
            ..FrameOps::new(bg)
        }
    }

    /// The frame vector as a derivation on a mode amplitude
    /// (`∂_t → −iω`, `∂_φ → i·m`), or on a background function in the
    /// static variant.
    pub fn mode_derive(&self, dir: usize, f: &SymExpr) -> Result<SymExpr, SymError> {
        let v = &self.tetrad.vecs[dir];
        let mut acc = SymExpr::zero();
        if !self.static_background && !v[0].is_zero() {
            acc = acc
                + v[0].clone() * (-SymExpr::i() * SymExpr::var(Var::Om) * f.clone());
        }
        if !v[1].is_zero() {
            acc = acc + v[1].clone() * f.diff(Coord::R)?;
        }
        if !v[2].is_zero() {
            acc = acc + v[2].clone() * f.diff(Coord::Theta)?;
        }
        if !self.static_background && !v[3].is_zero() {
            acc = acc + v[3].clone() * (SymExpr::i() * SymExpr::var(Var::Mm) * f.clone());
        }
        Ok(acc)
    }

    /// Projected covariant derivative along a frame direction, including the
    /// rotation of the horizontal pair (no conformal weight and no `η/ξ`
    /// completion terms: this is the horizontal part only).
    pub fn nabla(&self, dir: usize, f: &FrameTensor) -> Result<FrameTensor, SymError> {
        let lam = &self.lam[dir];
        let d = |c: &SymExpr| self.mode_derive(dir, c);
        let comps = match f.rank {
            0 => vec![d(&f.comps[0])?],
            1 => vec![
                d(&f.comps[0])? - lam.clone() * f.comps[1].clone(),
                d(&f.comps[1])? + lam.clone() * f.comps[0].clone(),
            ],
            2 => {
                let c = |a: usize, b: usize| f.comps[2 * a + b].clone();
                vec![
                    d(&f.comps[0])? - lam.clone() * (c(1, 0) + c(0, 1)),
                    d(&f.comps[1])? + lam.clone() * (c(0, 0) - c(1, 1)),
                    d(&f.comps[2])? + lam.clone() * (c(0, 0) - c(1, 1)),
                    d(&f.comps[3])? + lam.clone() * (c(0, 1) + c(1, 0)),
                ]
            }
            _ => panic!("rank must be ≤ 2"),
        };
        Ok(FrameTensor {
            rank: f.rank,
            conf_type: f.conf_type,
            comps,
        })
    }

    /// Weighted incoming derivative `∇₃^{(c)} = ∇₃ − 2c·ω̱` (type `c → c−1`).
    pub fn nabla3c(&self, f: &FrameTensor) -> Result<FrameTensor, SymError> {
        let w = SymExpr::int(-2 * f.conf_type as i64) * self.cat.omega_bar.clone();
        let mut out = self.nabla(E3, f)?.add(&f.scale(&w));
        out.conf_type = f.conf_type - 1;
        Ok(out)
    }

    /// Weighted outgoing derivative `∇₄^{(c)} = ∇₄ + 2c·ω = ∇₄` here
    /// (`ω = 0`); type `c → c+1`.
    pub fn nabla4c(&self, f: &FrameTensor) -> Result<FrameTensor, SymError> {
        let mut out = self.nabla(E4, f)?;
        out.conf_type = f.conf_type + 1;
        Ok(out)
    }

    /// Weighted horizontal derivative `∇_a^{(c)} = ∇_a + c·ζ_a` for
    /// `a ∈ {0, 1}` (type unchanged). With `conformal = false` this is the
    /// plain `∇_a`.
    pub fn nabla_hor(
        &self,
        a: usize,
        f: &FrameTensor,
        conformal: bool,
    ) -> Result<FrameTensor, SymError> {
        let mut out = self.nabla(a, f)?;
        if conformal && f.conf_type != 0 {
            let w = SymExpr::int(f.conf_type as i64) * self.cat.zeta[a].clone();
            out = out.add(&f.scale(&w));
        }
        Ok(out)
    }

    /// Both weighted horizontal derivatives at once.
    fn hor_pair(
        &self,
        f: &FrameTensor,
        conformal: bool,
    ) -> Result<(FrameTensor, FrameTensor), SymError> {
        Ok((
            self.nabla_hor(0, f, conformal)?,
            self.nabla_hor(1, f, conformal)?,
        ))
    }

    /// `𝒟ψ` on a scalar: the one-form with `𝒟₁ = ∇₁ + i∇₂`, `𝒟₂ = ∇₂ − i∇₁`.
    pub fn d_scalar(&self, f: &FrameTensor, conformal: bool) -> Result<FrameTensor, SymError> {
        assert_eq!(f.rank, 0);
        let (n1, n2) = self.hor_pair(f, conformal)?;
        Ok(FrameTensor::one_form(
            n1.comps[0].clone() + SymExpr::i() * n2.comps[0].clone(),
            n2.comps[0].clone() - SymExpr::i() * n1.comps[0].clone(),
            f.conf_type,
        ))
    }

    /// `𝒟̄ψ` on a scalar: the one-form with `𝒟̄₁ = ∇₁ − i∇₂`,
    /// `𝒟̄₂ = ∇₂ + i∇₁`.
    pub fn dbar_scalar(&self, f: &FrameTensor, conformal: bool) -> Result<FrameTensor, SymError> {
        assert_eq!(f.rank, 0);
        let (n1, n2) = self.hor_pair(f, conformal)?;
        Ok(FrameTensor::one_form(
            n1.comps[0].clone() - SymExpr::i() * n2.comps[0].clone(),
            n2.comps[0].clone() + SymExpr::i() * n1.comps[0].clone(),
            f.conf_type,
        ))
    }

    /// `𝒟·F = 𝒟^aF_a` on a one-form.
    pub fn d_dot(&self, f: &FrameTensor, conformal: bool) -> Result<FrameTensor, SymError> {
        assert_eq!(f.rank, 1);
        let (n1, n2) = self.hor_pair(f, conformal)?;
        let d1 = |b: usize| n1.comps[b].clone() + SymExpr::i() * n2.comps[b].clone();
        let d2 = |b: usize| n2.comps[b].clone() - SymExpr::i() * n1.comps[b].clone();
        Ok(FrameTensor::scalar(d1(0) + d2(1), f.conf_type))
    }

    /// `𝒟̄·F` on a one-form (scalar) or a 2-tensor (one-form), with
    /// `𝒟̄₁ = ∇₁ − i∇₂`, `𝒟̄₂ = ∇₂ + i∇₁`.
    pub fn dbar_dot(&self, f: &FrameTensor, conformal: bool) -> Result<FrameTensor, SymError> {
        let (n1, n2) = self.hor_pair(f, conformal)?;
        let db1 = |b: usize| n1.comps[b].clone() - SymExpr::i() * n2.comps[b].clone();
        let db2 = |b: usize| n2.comps[b].clone() + SymExpr::i() * n1.comps[b].clone();
        match f.rank {
            1 => Ok(FrameTensor::scalar(db1(0) + db2(1), f.conf_type)),
            2 => Ok(FrameTensor::one_form(
                db1(0) + db2(2),
                db1(1) + db2(3),
                f.conf_type,
            )),
            _ => panic!("contraction needs rank 1 or 2"),
        }
    }

    /// `𝒟⊗F` on a one-form: `(𝒟⊗F)_{ab} = 𝒟_aF_b + 𝒟_bF_a − δ_{ab} 𝒟·F`.
    pub fn d_otimes(&self, f: &FrameTensor, conformal: bool) -> Result<FrameTensor, SymError> {
        assert_eq!(f.rank, 1);
        let (n1, n2) = self.hor_pair(f, conformal)?;
        let d = |a: usize, b: usize| -> SymExpr {
            match a {
                0 => n1.comps[b].clone() + SymExpr::i() * n2.comps[b].clone(),
                _ => n2.comps[b].clone() - SymExpr::i() * n1.comps[b].clone(),
            }
        };
        let tr = d(0, 0) + d(1, 1);
        let t = |a: usize, b: usize| -> SymExpr {
            let mut v = d(a, b) + d(b, a);
            if a == b {
                v = v - tr.clone();
            }
            v
        };
        Ok(FrameTensor::two_tensor(
            [t(0, 0), t(0, 1), t(1, 0), t(1, 1)],
            f.conf_type,
        ))
    }

    /// Directional horizontal derivative `H·∇F = H^a ∇_a F` for a one-form
    /// `H` of background coefficients.
    pub fn dir_nabla(
        &self,
        h: &FrameTensor,
        f: &FrameTensor,
        conformal: bool,
    ) -> Result<FrameTensor, SymError> {
        assert_eq!(h.rank, 1);
        let (n1, n2) = self.hor_pair(f, conformal)?;
        Ok(n1.scale(&h.comps[0]).add(&n2.scale(&h.comps[1])))
    }

    /// Background one-form helpers as frame tensors.
    pub fn h_form(&self) -> FrameTensor {
        let c = self.cat.h();
        FrameTensor::one_form(c[0].clone(), c[1].clone(), 0)
    }

    pub fn hb_form(&self) -> FrameTensor {
        let c = self.cat.hb();
        FrameTensor::one_form(c[0].clone(), c[1].clone(), 0)
    }

    pub fn z_form(&self) -> FrameTensor {
        let c = self.cat.z();
        FrameTensor::one_form(c[0].clone(), c[1].clone(), 0)
    }

    pub fn eta_form(&self) -> FrameTensor {
        FrameTensor::one_form(self.cat.eta[0].clone(), self.cat.eta[1].clone(), 0)
    }

    pub fn etab_form(&self) -> FrameTensor {
        FrameTensor::one_form(self.cat.etab[0].clone(), self.cat.etab[1].clone(), 0)
    }
}
