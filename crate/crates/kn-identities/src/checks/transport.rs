//! Frame derivatives of the complex radius `q = r + i·a·cosθ` and the
//! induced power rule for `q^n q̄^m`.

use kn_geometry::{FrameTensor, E3, E4};
use symrat::{GaussQ, SymError, SymExpr, Var};

use crate::ctx::Ctx;
use crate::report::{CheckReport, Checker};

pub fn check_q_transport() -> Result<CheckReport, SymError> {
    imp(false)
}

/// Fault-injection twin: flips the sign of the outgoing-expansion
/// coefficient in the outgoing transport law; must fail.
pub fn check_q_transport_faulted() -> Result<CheckReport, SymError> {
    imp(true)
}

fn imp(fault: bool) -> Result<CheckReport, SymError> {
    let mut ck = Checker::new(
        "q_transport",
        "all four frame derivatives of the complex radius close on the \
         expansions and torsions, and powers of q, q̄ obey the induced \
         logarithmic rule",
    );

    let ctx = Ctx::new()?;
    let sops = &ctx.sops;
    let cat = &sops.cat;
    let half = SymExpr::rat(1, 2);

    let q = SymExpr::q();
    let qb = SymExpr::qbar();
    let qt = FrameTensor::scalar(q.clone(), 0);
    let qbt = FrameTensor::scalar(qb.clone(), 0);

    let trx = cat.tr_x();
    let trxb = cat.tr_xb();
    let h = sops.h_form();
    let hb = sops.hb_form();
    let h_c = h.map(|c| c.conj());
    let hb_c = hb.map(|c| c.conj());

    let trx_out = if fault { -trx.clone() } else { trx.clone() };

    // Null transport.
    let e3q = sops.nabla(E3, &qt)?.comps[0].clone();
    ck.zero(
        "incoming derivative of q",
        &(e3q - half.clone() * trxb.conj() * q.clone()),
    );
    let e4q = sops.nabla(E4, &qt)?.comps[0].clone();
    ck.zero(
        "outgoing derivative of q",
        &(e4q - half.clone() * trx_out.clone() * q.clone()),
    );
    let e3qb = sops.nabla(E3, &qbt)?.comps[0].clone();
    ck.zero(
        "incoming derivative of q̄",
        &(e3qb - half.clone() * trxb.clone() * qb.clone()),
    );
    let e4qb = sops.nabla(E4, &qbt)?.comps[0].clone();
    ck.zero(
        "outgoing derivative of q̄",
        &(e4qb - half.clone() * trx.conj() * qb.clone()),
    );

    // Angular gradients.
    let dq = sops.d_scalar(&qt, false)?;
    ck.zero_tensor("angular gradient of q", &dq.sub(&hb.scale(&q)));
    let dbq = sops.dbar_scalar(&qt, false)?;
    ck.zero_tensor("conjugate angular gradient of q", &dbq.sub(&h_c.scale(&q)));
    let dqb = sops.d_scalar(&qbt, false)?;
    ck.zero_tensor("angular gradient of q̄", &dqb.sub(&h.scale(&qb)));
    let dbqb = sops.dbar_scalar(&qbt, false)?;
    ck.zero_tensor(
        "conjugate angular gradient of q̄",
        &dbqb.sub(&hb_c.scale(&qb)),
    );

    // Power rule on the rational monomial q²/q̄ (n = 2, m = −1).
    let f = (q.clone() * q.clone()).checked_div(&qb)?;
    let ft = FrameTensor::scalar(f.clone(), 0);
    let two = SymExpr::int(2);
    let df = sops.d_scalar(&ft, false)?;
    let target = hb.scale(&two).sub(&h).scale(&f);
    ck.zero_tensor("power rule, angular gradient of q²/q̄", &df.sub(&target));
    let dbf = sops.dbar_scalar(&ft, false)?;
    let target_b = h_c.scale(&two).sub(&hb_c).scale(&f);
    ck.zero_tensor(
        "power rule, conjugate angular gradient of q²/q̄",
        &dbf.sub(&target_b),
    );
    let e3f = sops.nabla(E3, &ft)?.comps[0].clone();
    ck.zero(
        "power rule, incoming derivative of q²/q̄",
        &(e3f - (trxb.conj() - half.clone() * trxb.clone()) * f.clone()),
    );
    let e4f = sops.nabla(E4, &ft)?.comps[0].clone();
    ck.zero(
        "power rule, outgoing derivative of q²/q̄",
        &(e4f - (trx.clone() - half * trx.conj()) * f),
    );

    // Non-rotating limit: the angular gradient of q degenerates.
    let dq0 = [
        dq.comps[0].subst_const(Var::A, GaussQ::zero())?,
        dq.comps[1].subst_const(Var::A, GaussQ::zero())?,
    ];
    ck.zero("angular gradient of q vanishes at a = 0 [component 1]", &dq0[0]);
    ck.zero("angular gradient of q vanishes at a = 0 [component 2]", &dq0[1]);

    Ok(ck.finish())
}
