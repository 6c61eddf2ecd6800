//! Structure of the lower-order coupling coefficients of the final system:
//! the claimed reality properties, the two exact evaluations, and the
//! vanishing of every coefficient in the non-rotating limit.

use kn_geometry::{dot, FrameTensor};
use symrat::{GaussQ, SymError, SymExpr, Var};

use crate::ctx::Ctx;
use crate::report::{CheckReport, Checker};

pub fn check_lot_structure() -> Result<CheckReport, SymError> {
    imp(false)
}

/// Fault-injection twin: flips the sign of the imaginary part of the
/// spin-2 zeroth-order shift; must fail.
pub fn check_lot_structure_faulted() -> Result<CheckReport, SymError> {
    imp(true)
}

fn imp(fault: bool) -> Result<CheckReport, SymError> {
    let mut ck = Checker::new(
        "lot_structure",
        "the lower-order coupling coefficients of the final system have \
         the claimed reality properties, take their exact closed forms, \
         and all vanish in the non-rotating limit",
    );

    let ctx = Ctx::new()?;
    let sops = &ctx.sops;
    let cat = sops.cat.clone();
    let half = SymExpr::rat(1, 2);
    let two = SymExpr::int(2);
    let i = SymExpr::i();

    let trxb = cat.tr_xb();
    let trxb_c = trxb.conj();
    let trx = cat.tr_x();
    let trx_c = trx.conj();
    let h = sops.h_form();
    let hb = sops.hb_form();
    let h_c = h.map(|e| e.conj());
    let hb_c = hb.map(|e| e.conj());
    let eta = sops.eta_form();
    let etab = sops.etab_form();

    // Zeroth-order shifts at their final weights.
    let c1 = two.clone() * cat.trchib.clone() - SymExpr::rat(5, 2) * i.clone() * cat.atrchib.clone();
    let c2_im = if fault {
        SymExpr::int(3) * i.clone()
    } else {
        -SymExpr::int(3) * i.clone()
    };
    let c2 = cat.trchib.clone() + c2_im * cat.atrchib.clone();

    let sc = |e: &SymExpr| FrameTensor::scalar(e.clone(), -1);
    let d3h = sops.nabla3c(&h)?;
    let d3d3h = sops.nabla3c(&d3h)?;
    let d3hbb = sops.nabla3c(&hb_c)?;

    // ---- coefficients feeding the spin-1 equation ---------------------
    let y_f_a = two.clone() * c1.clone() - two.clone() * c2.clone() + trxb.clone()
        - SymExpr::int(3) * trxb_c.clone();
    let y_f_0 = sops
        .dbar_scalar(&sc(&c2), true)?
        .scale(&SymExpr::int(-2))
        .add(&d3hbb.scale(&SymExpr::int(4)))
        .add(&hb_c.scale(
            &(SymExpr::int(4) * c1.clone() - SymExpr::int(4) * c2.clone()
                - SymExpr::int(4) * trxb.clone()
                - two.clone() * trxb_c.clone()),
        ))
        .add(&h_c.scale(&(SymExpr::int(4) * trxb.clone() - two.clone() * c2.clone())));
    let y_x_0 = two.clone() * trxb.clone() * trxb.clone()
        - SymExpr::rat(3, 2) * trxb_c.clone() * trxb_c.clone()
        + SymExpr::rat(3, 2) * trxb.clone() * trxb_c.clone()
        - (two.clone() * trxb.clone() - trxb_c.clone()) * c1.clone();

    // The transported torsion difference block.
    let diff = eta.sub(&etab);
    let i_a = sops
        .nabla3c(&diff)?
        .scale(&SymExpr::int(-2))
        .add(&diff.scale(&cat.trchib))
        .sub(&diff.hodge().scale(&cat.atrchib));
    let grad_c = |cexpr: &SymExpr| -> Result<FrameTensor, SymError> {
        Ok(FrameTensor::one_form(
            sops.nabla_hor(0, &sc(cexpr), true)?.comps[0].clone(),
            sops.nabla_hor(1, &sc(cexpr), true)?.comps[0].clone(),
            -1,
        ))
    };

    // Spin-1 first-order coefficient.
    let combo1 = h
        .scale(&SymExpr::int(6))
        .add(&h_c)
        .add(&hb_c.scale(&SymExpr::int(3)));
    let jt_b = grad_c(&c1)?
        .scale(&SymExpr::int(-2))
        .sub(&h.scale(&trxb))
        .sub(&hb_c.scale(&(half.clone() * (trxb_c.clone() - trxb.clone()))))
        .add(&h_c.scale(&(half.clone() * (trxb_c.clone() - trxb.clone()))));
    let j_b = diff
        .scale(&two)
        .sub(&combo1)
        .scale(&(-half.clone() * (trxb.clone() + trxb_c.clone())))
        .add(&jt_b);
    let l_b = diff.scale(&-(SymExpr::int(3) * trxb.clone() + trxb_c.clone()));
    let m_b = sops
        .nabla3c(&combo1)?
        .sub(&combo1.scale(&(half.clone() * cat.trchib.clone())))
        .add(&combo1.hodge().scale(&(half.clone() * cat.atrchib.clone())));
    let z_b_a = i_a
        .add(&j_b)
        .add(&l_b)
        .add(&m_b)
        .sub(&etab.scale(&(two.clone() * c1.clone())));

    // ---- coefficients feeding the spin-2 equation ---------------------
    let w4_f = -SymExpr::rat(3, 2) * trxb.clone() * trxb.clone()
        + trxb_c.clone() * trxb.clone()
        + half.clone() * (two.clone() * trxb.clone() - trxb_c.clone()) * c2.clone();
    let w_a_f = d3h.scale(&-SymExpr::int(3));
    let w0_f = w4_f.clone() * (SymExpr::rat(3, 2) * trx_c.clone() + half.clone() * trx.clone())
        - SymExpr::rat(3, 2) * dot(&d3h, &h_c);
    let w_a_b = half.clone() * (c1.clone() - c2.clone() - trxb.clone());
    let w0_b = d3h
        .scale(&-SymExpr::int(3))
        .add(&grad_c(&c1)?.scale(&half))
        .add(&h.scale(
            &(SymExpr::rat(7, 2) * c1.clone() - SymExpr::int(3) * c2.clone()
                - SymExpr::int(4) * trxb.clone()),
        ))
        .sub(&sops.nabla3c(&h.add(&hb))?)
        .add(
            &h.scale(&two)
                .sub(&hb)
                .scale(&(c2.clone() - c1.clone()
                    + half.clone() * (trxb.clone() + trxb_c.clone()))),
        );
    let w_a_x = half.clone() * w4_f.clone();
    let w0_x = h
        .scale(&SymExpr::int(3))
        .add(&hb)
        .scale(&(half.clone() * w4_f.clone()))
        .add(&d3d3h.scale(&SymExpr::rat(3, 2)))
        .add(&d3h.scale(&(SymExpr::rat(3, 2) * (c2.clone() + half.clone() * trxb.clone()))));

    let combo2 = h.scale(&SymExpr::int(4)).add(&h_c).add(&hb);
    let jt_f = grad_c(&c2)?
        .scale(&SymExpr::int(-2))
        .add(&h_c.scale(&(half.clone() * trxb_c.clone())))
        .sub(&hb.scale(&(half.clone() * (trxb.clone() - trxb_c.clone()))))
        .sub(&h.scale(&(half.clone() * (two.clone() * trxb.clone() + trxb_c.clone()))));
    let j_f = diff
        .scale(&two)
        .sub(&combo2)
        .scale(&(-half.clone() * (trxb.clone() + trxb_c.clone())))
        .add(&jt_f);
    let l_f = diff.scale(&-(trxb.clone() + trxb_c.clone()));
    let m_f = sops
        .nabla3c(&combo2)?
        .sub(&combo2.scale(&(half.clone() * cat.trchib.clone())))
        .add(&combo2.hodge().scale(&(half.clone() * cat.atrchib.clone())));
    let z_f_a = i_a
        .add(&j_f)
        .add(&l_f)
        .add(&m_f)
        .sub(&etab.scale(&(two.clone() * c2.clone())));

    // ---- reality claims ----------------------------------------------
    ck.zero("outgoing-derivative coefficient is real", &Ctx::im(&w4_f));
    ck.zero("gradient-pair coefficient is real", &Ctx::im(&w_a_x));
    ck.zero_tensor(
        "spin-1 first-order coefficient is real",
        &z_b_a.map(|e| Ctx::im(e)),
    );
    let w_minus_z = w_a_f.sub(&z_f_a);
    ck.zero_tensor(
        "spin-2 first-order coefficient difference is real",
        &w_minus_z.map(|e| Ctx::im(e)),
    );

    // ---- exact closed forms ------------------------------------------
    ck.zero(
        "divergence-coupling coefficient = −3i·(incoming twist)",
        &(y_f_a.clone() + SymExpr::int(3) * i.clone() * cat.atrchib.clone()),
    );
    ck.zero(
        "gradient-coupling coefficient = (3i/4)·(incoming twist)",
        &(w_a_b.clone() - SymExpr::rat(3, 4) * i.clone() * cat.atrchib.clone()),
    );

    // ---- non-rotating limit ------------------------------------------
    let static_zero = |name: &str, e: &SymExpr, ck: &mut Checker| -> Result<(), SymError> {
        ck.zero(
            &format!("{name} vanishes at a = 0"),
            &e.subst_const(Var::A, GaussQ::zero())?,
        );
        Ok(())
    };
    static_zero("divergence-coupling coefficient", &y_f_a, &mut ck)?;
    static_zero("zeroth-order spin-2 coupling", &y_x_0, &mut ck)?;
    static_zero("outgoing-derivative coefficient", &w4_f, &mut ck)?;
    static_zero("gradient-pair coefficient", &w_a_x, &mut ck)?;
    static_zero("gradient-coupling coefficient", &w_a_b, &mut ck)?;
    static_zero("spin-2 zeroth-order scalar coefficient", &w0_f, &mut ck)?;
    for (name, t) in [
        ("zeroth-order one-form coupling", &y_f_0),
        ("spin-1 first-order coefficient", &z_b_a),
        ("spin-2 first-order coefficient", &z_f_a),
        ("spin-2 first-order gradient coefficient", &w_a_f),
        ("spin-1 zeroth-order one-form coefficient", &w0_b),
        ("second-transport one-form coefficient", &w0_x),
    ] {
        let at0 = FrameTensor::one_form(
            t.comps[0].subst_const(Var::A, GaussQ::zero())?,
            t.comps[1].subst_const(Var::A, GaussQ::zero())?,
            t.conf_type,
        );
        ck.zero_tensor(&format!("{name} vanishes at a = 0"), &at0);
    }

    Ok(ck.finish())
}
