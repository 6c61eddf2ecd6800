//! Background master check: the full catalog of connection and curvature
//! scalars computed from the metric agrees with the closed-form catalog,
//! the electromagnetic field equations hold exactly, and the complexified
//! combinations take their closed forms in `q = r + i·a·cosθ`.

use kn_geometry::{em, Background, BackgroundCatalog};
use symrat::{SymError, SymExpr, Var};

use crate::report::{CheckReport, Checker};

pub fn check_background() -> Result<CheckReport, SymError> {
    imp(false)
}

/// Fault-injection twin: flips the sign of one closed-form component
/// (`ζ₂`) before comparing; must fail.
pub fn check_background_faulted() -> Result<CheckReport, SymError> {
    imp(true)
}

fn imp(fault: bool) -> Result<CheckReport, SymError> {
    let mut ck = Checker::new(
        "background",
        "catalog of connection/curvature scalars computed from the metric \
         matches its closed forms entry by entry; the field equations hold \
         exactly; complexified combinations are rational in q = r + i·a·cosθ",
    );

    let bg = Background::new()?;
    let computed = BackgroundCatalog::computed(&bg)?;
    let mut closed = BackgroundCatalog::closed_form();
    if fault {
        closed.zeta[1] = -closed.zeta[1].clone();
    }

    // Entry-by-entry comparison of the two independent builds.
    let left = computed.entries();
    let right = closed.entries();
    assert_eq!(left.len(), right.len());
    let mut seen = std::collections::HashMap::new();
    for ((name, lv), (_, rv)) in left.iter().zip(right.iter()) {
        let k = seen.entry(*name).or_insert(0usize);
        ck.eq(&format!("catalog entry {name}[{k}]"), lv, rv);
        *k += 1;
    }

    // Field equations: the stress-tensor residual of the background field
    // vanishes identically.
    let riemann = bg.metric.riemann(&bg.gamma)?;
    let ricci = bg.metric.ricci(&riemann);
    let f = em::field_strength(&em::potential())?;
    let res = em::einstein_maxwell_residual(&bg.metric, &ricci, &f);
    for mu in 0..4 {
        for nu in 0..4 {
            ck.zero(&format!("field-equation residual [{mu}{nu}]"), &res[mu][nu]);
        }
    }

    // Complexified closed forms.
    let q = SymExpr::q();
    let qb = SymExpr::qbar();
    let q3 = || SymExpr::q_mod_sq() * SymExpr::qa();
    let m = SymExpr::var(Var::M);
    let a = SymExpr::var(Var::A);
    let s = SymExpr::sin_theta();
    let qc = SymExpr::var(Var::Q);
    let two = SymExpr::int(2);

    ck.eq(
        "outgoing complex expansion = 2/q",
        &computed.tr_x(),
        &two.clone().checked_div(&q)?,
    );
    ck.eq(
        "incoming complex expansion = −2Δ/(q·q̄²)",
        &computed.tr_xb(),
        &(-two.clone() * SymExpr::delta()).checked_div(&(q.clone() * qb.clone() * qb.clone()))?,
    );
    ck.eq(
        "complex field scalar = Q/q̄²",
        &computed.p_f(),
        &qc.clone().checked_div(&(qb.clone() * qb.clone()))?,
    );
    let p_closed = (-two.clone() * m).checked_div(&(q.clone() * q.clone() * q.clone()))?
        + (two * qc.clone() * qc).checked_div(&(q.clone() * q.clone() * q.clone() * qb))?;
    ck.eq("complex curvature scalar = −2M/q³ + 2Q²/(q³q̄)", &computed.p(), &p_closed);

    // Anti-self-dual one-form combinations.
    let h = computed.h();
    let hb = computed.hb();
    let ias_q = (SymExpr::i() * a.clone() * s.clone() * q.clone()).checked_div(&q3())?;
    let as_q = (a.clone() * s.clone() * q).checked_div(&q3())?;
    ck.eq("H₁ = i·a·sinθ·q/|q|³", &h[0], &ias_q);
    ck.eq("H₂ = a·sinθ·q/|q|³", &h[1], &as_q);
    let ias_qb = (-SymExpr::i() * a.clone() * s.clone() * SymExpr::qbar()).checked_div(&q3())?;
    let as_qb = (-a * s * SymExpr::qbar()).checked_div(&q3())?;
    ck.eq("H̱₁ = −i·a·sinθ·q̄/|q|³", &hb[0], &ias_qb);
    ck.eq("H̱₂ = −a·sinθ·q̄/|q|³", &hb[1], &as_qb);
    // H̱ is minus the complexified torsion.
    let z = computed.z();
    ck.zero("H̱ + Z = 0 [component 1]", &(hb[0].clone() + z[0].clone()));
    ck.zero("H̱ + Z = 0 [component 2]", &(hb[1].clone() + z[1].clone()));

    Ok(ck.finish())
}
