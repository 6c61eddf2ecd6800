//! The closed system of first-order background equations satisfied by the
//! complexified expansions, torsion one-forms, and curvature scalars, with
//! all derivatives taken by the weighted (conformal) operators.

use kn_geometry::{dot, otimes, FrameTensor};
use symrat::{SymError, SymExpr};

use crate::ctx::Ctx;
use crate::report::{CheckReport, Checker};

pub fn check_reduced_equations() -> Result<CheckReport, SymError> {
    imp(false)
}

/// Fault-injection twin: flips the second component of the outgoing
/// torsion combination `H`; must fail.
pub fn check_reduced_equations_faulted() -> Result<CheckReport, SymError> {
    imp(true)
}

fn imp(fault: bool) -> Result<CheckReport, SymError> {
    let mut ck = Checker::new(
        "reduced_equations",
        "the complexified expansions, torsion one-forms, and curvature \
         scalars satisfy their closed first-order system under the weighted \
         frame derivatives (18 identities)",
    );

    let ctx = Ctx::new()?;
    let sops = &ctx.sops;
    let cat = &sops.cat;
    let half = SymExpr::rat(1, 2);
    let two = SymExpr::int(2);

    // Scalars as typed frame tensors: the outgoing expansion scales with
    // type +1, the incoming with type −1, curvature scalars with type 0.
    let trx = cat.tr_x();
    let trxb = cat.tr_xb();
    let trx_c = trx.conj();
    let trxb_c = trxb.conj();
    let pf = cat.p_f();
    let pf_c = pf.conj();
    let p = cat.p();
    let p_c = p.conj();

    let mut h = sops.h_form();
    if fault {
        h.comps[1] = -h.comps[1].clone();
    }
    let hb = sops.hb_form();
    let h_c = h.map(|c| c.conj());
    let hb_c = hb.map(|c| c.conj());

    let sc = |e: &SymExpr, t: i32| FrameTensor::scalar(e.clone(), t);

    // Transport of the field scalar.
    let d4_pf = sops.nabla4c(&sc(&pf, 0))?.comps[0].clone();
    ck.zero(
        "outgoing transport of the field scalar",
        &(d4_pf + trx_c.clone() * pf.clone()),
    );
    let d3_pf = sops.nabla3c(&sc(&pf, 0))?.comps[0].clone();
    ck.zero(
        "incoming transport of the field scalar",
        &(d3_pf + trxb.clone() * pf.clone()),
    );
    let d_pf = sops.d_scalar(&sc(&pf, 0), true)?;
    ck.zero_tensor(
        "angular gradient of the field scalar",
        &d_pf.add(&h.scale(&(two.clone() * pf.clone()))),
    );
    let d_pfc = sops.d_scalar(&sc(&pf_c, 0), true)?;
    ck.zero_tensor(
        "angular gradient of the conjugate field scalar",
        &d_pfc.add(&hb.scale(&(two.clone() * pf_c.clone()))),
    );

    // Focusing of the expansions.
    let d3_trxb = sops.nabla3c(&sc(&trxb, -1))?.comps[0].clone();
    ck.zero(
        "incoming focusing",
        &(d3_trxb + half.clone() * trxb.clone() * trxb.clone()),
    );
    let d4_trx = sops.nabla4c(&sc(&trx, 1))?.comps[0].clone();
    ck.zero(
        "outgoing focusing",
        &(d4_trx + half.clone() * trx.clone() * trx.clone()),
    );

    // Cross transport of the expansions.
    let d3_trx = sops.nabla3c(&sc(&trx, 1))?.comps[0].clone();
    let div_hc = sops.d_dot(&h_c, true)?.comps[0].clone();
    ck.zero(
        "incoming transport of the outgoing expansion",
        &(d3_trx + half.clone() * trxb.clone() * trx.clone()
            - div_hc
            - dot(&h, &h_c)
            - two.clone() * p.clone()),
    );
    let d4_trxb = sops.nabla4c(&sc(&trxb, -1))?.comps[0].clone();
    let div_hbc = sops.d_dot(&hb_c, true)?.comps[0].clone();
    ck.zero(
        "outgoing transport of the incoming expansion",
        &(d4_trxb + half.clone() * trx.clone() * trxb.clone()
            - div_hbc
            - dot(&hb, &hb_c)
            - two.clone() * p_c.clone()),
    );

    // The torsion combinations are shear-free.
    ck.zero_tensor(
        "symmetrized gradient of the outgoing torsion",
        &sops.d_otimes(&h, true)?.add(&otimes(&h, &h)),
    );
    ck.zero_tensor(
        "symmetrized gradient of the incoming torsion",
        &sops.d_otimes(&hb, true)?.add(&otimes(&hb, &hb)),
    );

    // Transport of the torsion one-forms.
    let d3_hb = sops.nabla3c(&hb)?;
    ck.zero_tensor(
        "incoming transport of the incoming torsion",
        &d3_hb.add(&hb.sub(&h).scale(&(half.clone() * trxb_c.clone()))),
    );
    let d4_h = sops.nabla4c(&h)?;
    ck.zero_tensor(
        "outgoing transport of the outgoing torsion",
        &d4_h.add(&h.sub(&hb).scale(&(half.clone() * trx_c.clone()))),
    );

    // Angular gradients of the conjugate expansions.
    let d_trxc = sops.d_scalar(&sc(&trx_c, 1), true)?;
    ck.zero_tensor(
        "angular gradient of the conjugate outgoing expansion",
        &d_trxc.sub(&h.scale(&(trx.clone() - trx_c.clone()))),
    );
    let d_trxbc = sops.d_scalar(&sc(&trxb_c, -1), true)?;
    ck.zero_tensor(
        "angular gradient of the conjugate incoming expansion",
        &d_trxbc.sub(&hb.scale(&(trxb.clone() - trxb_c.clone()))),
    );

    // Angular gradients of the curvature scalar.
    let d_pc = sops.d_scalar(&sc(&p_c, 0), true)?;
    ck.zero_tensor(
        "angular gradient of the conjugate curvature scalar",
        &d_pc.add(&h.scale(&(SymExpr::int(3) * p_c.clone()
            - two.clone() * pf.clone() * pf_c.clone()))),
    );
    let d_p = sops.d_scalar(&sc(&p, 0), true)?;
    ck.zero_tensor(
        "angular gradient of the curvature scalar",
        &d_p.add(&hb.scale(&(SymExpr::int(3) * p.clone()
            - two.clone() * pf.clone() * pf_c.clone()))),
    );

    // Transport of the curvature scalar.
    let d4_p = sops.nabla4c(&sc(&p, 0))?.comps[0].clone();
    ck.zero(
        "outgoing transport of the curvature scalar",
        &(d4_p
            + SymExpr::rat(3, 2) * trx.clone() * p.clone()
            + trx.clone() * pf.clone() * pf_c.clone()),
    );
    let d3_p = sops.nabla3c(&sc(&p, 0))?.comps[0].clone();
    ck.zero(
        "incoming transport of the curvature scalar",
        &(d3_p
            + SymExpr::rat(3, 2) * trxb_c.clone() * p.clone()
            + trxb_c.clone() * pf * pf_c),
    );

    Ok(ck.finish())
}
