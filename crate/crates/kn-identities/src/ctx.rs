//! Shared context for the checks: the exact background plus the mode and
//! static operator bundles, and a few scalar helpers.

use kn_geometry::{Background, FrameOps, FrameTensor, E1, E2, E4};
use symrat::{log_power_derivatives, SymError, SymExpr};

/// One background build shared by all identities of a check.
pub struct Ctx {
    pub bg: Background,
    /// Operators acting on mode amplitudes (`∂_t → −iω`, `∂_φ → i·m`).
    pub ops: FrameOps,
    /// Operators acting on stationary axisymmetric background functions.
    pub sops: FrameOps,
}

impl Ctx {
    pub fn new() -> Result<Ctx, SymError> {
        let bg = Background::new()?;
        let ops = FrameOps::new(&bg);
        let sops = FrameOps::new_static(&bg);
        Ok(Ctx { bg, ops, sops })
    }

    /// Real part of an expression whose variables are all real.
    pub fn re(e: &SymExpr) -> SymExpr {
        SymExpr::rat(1, 2) * (e.clone() + e.conj())
    }

    /// Imaginary part of an expression whose variables are all real.
    pub fn im(e: &SymExpr) -> SymExpr {
        SymExpr::rat(-1, 2) * SymExpr::i() * (e.clone() - e.conj())
    }

    /// Horizontal divergence `∇·F = (∇₁F)₁ + (∇₂F)₂` of a background
    /// one-form (plain derivative, static legs).
    pub fn div_static(&self, f: &FrameTensor) -> Result<SymExpr, SymError> {
        let n1 = self.sops.nabla(E1, f)?;
        let n2 = self.sops.nabla(E2, f)?;
        Ok(n1.comps[0].clone() + n2.comps[1].clone())
    }

    /// Horizontal curl `∈^{ab}∇_aF_b = (∇₁F)₂ − (∇₂F)₁` of a background
    /// one-form.
    pub fn curl_static(&self, f: &FrameTensor) -> Result<SymExpr, SymError> {
        let n1 = self.sops.nabla(E1, f)?;
        let n2 = self.sops.nabla(E2, f)?;
        Ok(n1.comps[1].clone() - n2.comps[0].clone())
    }

    /// Exact logarithmic wave operator `f⁻¹ □ f` for `f = q^{ν₁} q̄^{ν₂}`
    /// with arbitrary (symbolic, possibly fractional) exponents.
    ///
    /// The frame reduction used here is
    /// `□ψ = −e₄(e₃ψ) − ½trχ̱·e₄ψ − ½trχ·e₃ψ
    ///      + ∇₁∇₁ψ + ∇₂∇₂ψ + 2η̱·∇ψ`,
    /// which for `ψ = f` divides through by `f` into a rational expression
    /// in the logarithmic derivatives `L_μ = f⁻¹ e_μ f`.
    pub fn box_log(&self, nu1: &SymExpr, nu2: &SymExpr) -> Result<SymExpr, SymError> {
        let ld = log_power_derivatives(nu1, nu2);
        let vecs = &self.bg.tetrad.vecs;
        // f is stationary and axisymmetric, so only the (r, θ) legs of the
        // frame vectors act on it.
        let l = |mu: usize| -> SymExpr {
            vecs[mu][1].clone() * ld.d_r.clone() + vecs[mu][2].clone() * ld.d_theta.clone()
        };
        let (l1, l2, l3, l4) = (l(0), l(1), l(2), l(3));
        let d = |mu: usize, f: &SymExpr| self.sops.mode_derive(mu, f);
        let cat = &self.sops.cat;
        let half = SymExpr::rat(1, 2);

        let mut out = -(d(E4, &l3)? + l4 * l3.clone());
        out = out - half.clone() * cat.trchib.clone() * l(3);
        out = out - half * cat.trchi.clone() * l3;
        out = out + d(E1, &l1)? + l1.clone() * l1.clone() - self.sops.lam[E1].clone() * l2.clone();
        out = out + d(E2, &l2)? + l2.clone() * l2.clone() + self.sops.lam[E2].clone() * l1.clone();
        out = out
            + SymExpr::int(2) * (cat.etab[0].clone() * l1 + cat.etab[1].clone() * l2);
        Ok(out)
    }
}
