//! The logarithmic wave operator on powers `f = q^{ν₁} q̄^{ν₂}`:
//! `f⁻¹□f` splits into closed real and imaginary parts polynomial in the
//! exponents, with frozen specializations for the two weights used by the
//! first-order reduction.

use symrat::{GaussQ, SymError, SymExpr, Var};

use crate::ctx::Ctx;
use crate::report::{CheckReport, Checker};

pub fn check_wave_power_lemma() -> Result<CheckReport, SymError> {
    imp(false)
}

/// Fault-injection twin: flips the sign of the dual curvature scalar in
/// the imaginary-part target; must fail.
pub fn check_wave_power_lemma_faulted() -> Result<CheckReport, SymError> {
    imp(true)
}

fn imp(fault: bool) -> Result<CheckReport, SymError> {
    let mut ck = Checker::new(
        "wave_power_lemma",
        "f⁻¹□f for f = q^{ν₁}q̄^{ν₂} equals its closed form, polynomially \
         in the exponents, including the two frozen weights of the \
         first-order reduction",
    );

    let ctx = Ctx::new()?;
    let cat = &ctx.sops.cat;
    let n = SymExpr::var(Var::Nu1);
    let m = SymExpr::var(Var::Nu2);

    let lhs = ctx.box_log(&n, &m)?;
    let re = Ctx::re(&lhs);
    let im = Ctx::im(&lhs);

    // Closed-form targets (n = ν₁, m = ν₂).
    let eta = ctx.sops.eta_form();
    let etab = ctx.sops.etab_form();
    let ee = kn_geometry::dot(&eta, &etab);
    let ebeb = kn_geometry::dot(&etab, &etab);
    let ew = kn_geometry::wedge(&eta, &etab);
    let quarter = SymExpr::rat(1, 4);
    let star_rho = if fault {
        -cat.star_rho.clone()
    } else {
        cat.star_rho.clone()
    };

    let re_target = -quarter.clone()
        * (m.clone() + n.clone())
        * (m.clone() + n.clone() + SymExpr::one())
        * cat.trchi.clone()
        * cat.trchib.clone()
        - quarter
            * ((n.clone() - m.clone()) * (n.clone() - m.clone()) + m.clone() + n.clone())
            * cat.atrchi.clone()
            * cat.atrchib.clone()
        - (n.clone() + m.clone()) * cat.rho.clone()
        + SymExpr::int(2) * n.clone() * m.clone() * ebeb.clone()
        + (m.clone() * m.clone() + n.clone() * n.clone() + m.clone() + n.clone()) * ee.clone();
    let im_target = (m.clone() - n.clone())
        * (-SymExpr::rat(1, 2)
            * (n.clone() + m.clone() + SymExpr::one())
            * cat.trchib.clone()
            * cat.atrchi.clone()
            + star_rho.clone()
            - (m.clone() + n.clone() + SymExpr::one()) * ew.clone());

    ck.eq("real part, symbolic exponents", &re, &re_target);
    ck.eq("imaginary part, symbolic exponents", &im, &im_target);

    // Frozen specialization at the spin-1 weight (ν₁, ν₂) = (1/2, 9/2).
    let at = |e: &SymExpr, n: (i64, i64), m: (i64, i64)| -> Result<SymExpr, SymError> {
        e.subst_const(Var::Nu1, GaussQ::from_rat(n.0, n.1))?
            .subst_const(Var::Nu2, GaussQ::from_rat(m.0, m.1))
    };
    let re1 = -SymExpr::rat(15, 2) * cat.trchi.clone() * cat.trchib.clone()
        - SymExpr::rat(21, 4) * cat.atrchi.clone() * cat.atrchib.clone()
        - SymExpr::int(5) * cat.rho.clone()
        + SymExpr::rat(9, 2) * ebeb.clone()
        + SymExpr::rat(51, 2) * ee.clone();
    let im1 = -SymExpr::int(12) * cat.trchib.clone() * cat.atrchi.clone()
        + SymExpr::int(4) * star_rho.clone()
        - SymExpr::int(24) * ew.clone();
    ck.eq("real part at the spin-1 weight", &at(&re, (1, 2), (9, 2))?, &re1);
    ck.eq(
        "imaginary part at the spin-1 weight",
        &at(&im, (1, 2), (9, 2))?,
        &im1,
    );

    // Frozen specialization at the spin-2 weight (ν₁, ν₂) = (1, 2).
    let re2 = -SymExpr::int(3) * cat.trchi.clone() * cat.trchib.clone()
        - cat.atrchi.clone() * cat.atrchib.clone()
        - SymExpr::int(3) * cat.rho.clone()
        + SymExpr::int(4) * ebeb
        + SymExpr::int(8) * ee;
    let im2 = -SymExpr::int(2) * cat.trchib.clone() * cat.atrchi.clone() + star_rho
        - SymExpr::int(4) * ew;
    ck.eq("real part at the spin-2 weight", &at(&re, (1, 1), (2, 1))?, &re2);
    ck.eq(
        "imaginary part at the spin-2 weight",
        &at(&im, (1, 1), (2, 1))?,
        &im2,
    );

    // Degenerate exponents.
    ck.zero("vanishes at ν₁ = ν₂ = 0", &at(&lhs, (0, 1), (0, 1))?);
    let im_equal = im.subst_var(Var::Nu2, &n)?;
    ck.zero("imaginary part vanishes for equal exponents", &im_equal);

    Ok(ck.finish())
}
