//! Commutators of the shifted incoming derivative `Ψ ↦ ∇₃^{(c)}Ψ + CΨ`
//! (with a generic background shift `C` of type −1) against every other
//! derivative operator of the system, on generic mode inputs of rank 1
//! and 2 and conformal types 1 and 2.

use kn_geometry::{dot, dot_into, otimes, FrameOps, FrameTensor};
use symrat::{SymError, SymExpr, Var};

use crate::ctx::Ctx;
use crate::report::{CheckReport, Checker};

pub fn check_commutators() -> Result<CheckReport, SymError> {
    imp(false)
}

/// Fault-injection twin: flips the sign of the outgoing torsion in the
/// first-order coefficient of the null-pair commutator target; must fail.
pub fn check_commutators_faulted() -> Result<CheckReport, SymError> {
    imp(true)
}

/// `𝒫_C F = ∇₃^{(c)}F + C·F` (type drops by one; `C` has type −1).
fn p_c(ops: &FrameOps, c: &SymExpr, f: &FrameTensor) -> Result<FrameTensor, SymError> {
    Ok(ops.nabla3c(f)?.add(&f.scale(c)))
}

fn imp(fault: bool) -> Result<CheckReport, SymError> {
    let mut ck = Checker::new(
        "commutators",
        "commutators of the shifted incoming derivative with the null, \
         horizontal, and elliptic-pair derivatives close on first-order \
         terms with background coefficients, for generic shift and inputs \
         of both ranks and types",
    );

    let ctx = Ctx::new()?;
    let ops = &ctx.ops;
    let sops = &ctx.sops;
    let cat = ops.cat.clone();
    let half = SymExpr::rat(1, 2);
    let two = SymExpr::int(2);

    let trxb = cat.tr_xb();
    let trxb_c = trxb.conj();
    let h = ops.h_form();
    let h_c = h.map(|e| e.conj());
    let eta = ops.eta_form();
    let etab = ops.etab_form();
    let eta_sign = if fault { -SymExpr::one() } else { SymExpr::one() };

    // Generic background shift with its own derivative jets, type −1.
    let c = SymExpr::var(Var::C00);
    let ct = FrameTensor::scalar(c.clone(), -1);
    let d3_c = sops.nabla3c(&ct)?.comps[0].clone();
    let d4_c = sops.nabla4c(&ct)?.comps[0].clone();
    let dd_c = sops.d_scalar(&ct, true)?;
    let ddbar_c = sops.dbar_scalar(&ct, true)?;

    for (rank, s) in [(1usize, 1i64), (1, 2), (2, 1), (2, 2)] {
        let f = FrameTensor::generic(rank, s as i32);
        let tag = format!("rank {rank}, type {s}");

        // Incoming–incoming.
        let lhs = p_c(ops, &c, &ops.nabla3c(&f)?)?
            .sub(&ops.nabla3c(&p_c(ops, &c, &f)?)?);
        let rhs = f.scale(&-d3_c.clone());
        ck.eq_tensor(&format!("incoming commutator, {tag}"), &lhs, &rhs);

        // Incoming–outgoing.
        let lhs = p_c(ops, &c, &ops.nabla4c(&f)?)?
            .sub(&ops.nabla4c(&p_c(ops, &c, &f)?)?);
        let i_coeff = if rank == 1 {
            SymExpr::int(2)
        } else {
            SymExpr::int(4)
        };
        let zer = two.clone()
            * SymExpr::int(s)
            * (cat.rho.clone()
                + cat.rho_f.clone() * cat.rho_f.clone()
                + cat.star_rho_f.clone() * cat.star_rho_f.clone()
                - dot(&eta, &etab))
            + i_coeff
                * SymExpr::i()
                * (-cat.star_rho.clone() + kn_geometry::wedge(&eta, &etab))
            - d4_c.clone();
        let rhs = ops
            .dir_nabla(&eta.scale(&eta_sign).sub(&etab).scale(&two), &f, true)?
            .add(&f.scale(&zer));
        ck.eq_tensor(&format!("null-pair commutator, {tag}"), &lhs, &rhs);

        // Elliptic-pair commutators: symmetrized gradient on one-forms,
        // divergence on 2-tensors.
        if rank == 1 {
            let lhs = p_c(ops, &c, &ops.d_otimes(&f, true)?)?
                .sub(&ops.d_otimes(&p_c(ops, &c, &f)?, true)?);
            let coeff_form = dd_c
                .neg()
                .add(&h.scale(&(-half.clone() * SymExpr::int(s + 1) * trxb.clone())));
            let rhs = ops
                .d_otimes(&f, true)?
                .scale(&(-half.clone() * trxb.clone()))
                .add(&otimes(&h, &ops.nabla3c(&f)?))
                .add(&otimes(&coeff_form, &f));
            ck.eq_tensor(&format!("symmetrized-gradient commutator, {tag}"), &lhs, &rhs);
        } else {
            let lhs = p_c(ops, &c, &ops.dbar_dot(&f, true)?)?
                .sub(&ops.dbar_dot(&p_c(ops, &c, &f)?, true)?);
            let coeff_form = ddbar_c
                .neg()
                .add(&h_c.scale(&(-half.clone() * SymExpr::int(s - 2) * trxb_c.clone())));
            let rhs = ops
                .dbar_dot(&f, true)?
                .scale(&(-half.clone() * trxb_c.clone()))
                .add(&dot_into(&h_c, &ops.nabla3c(&f)?))
                .add(&dot_into(&coeff_form, &f));
            ck.eq_tensor(&format!("divergence commutator, {tag}"), &lhs, &rhs);
        }
    }

    Ok(ck.finish())
}
