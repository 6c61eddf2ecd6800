//! Pinned exact values and identities for the expression kernel.

use std::collections::HashMap;
use symrat::{parse_expr, rat, Coord, GaussQ, ParamSet, SymError, SymExpr, Var};

fn point() -> HashMap<Var, GaussQ> {
    // r = 3, a = 1/2, x = 1/2 (M, Q irrelevant unless present).
    let ps = ParamSet::new(rat(1, 1), rat(1, 2), rat(0, 1)).unwrap();
    ps.assignment(rat(3, 1), rat(1, 2))
}

#[test]
fn q_mod_sq_at_point() {
    let e = parse_expr("r^2 + a^2*x^2").unwrap();
    let v = e.eval_exact(&point()).unwrap();
    assert_eq!(v.as_rational().unwrap(), GaussQ::from_rat(145, 16));
}

#[test]
fn expansion_scalar_at_point() {
    let e = parse_expr("2*r/(r^2 + a^2*x^2)").unwrap();
    let v = e.eval_exact(&point()).unwrap();
    assert_eq!(v.as_rational().unwrap(), GaussQ::from_rat(96, 145));
}

#[test]
fn weyl_em_combination_is_linear() {
    // (−2M/q³ + 2Q²/(q³q̄)) · q³q̄ = −2M(r − i a x) + 2Q².
    let q = SymExpr::q();
    let qb = SymExpr::qbar();
    let m = SymExpr::var(Var::M);
    let qc = SymExpr::var(Var::Q);
    let p = -SymExpr::int(2) * m.clone() / q.pow(3)
        + SymExpr::int(2) * qc.clone() * qc.clone() / (q.pow(3) * qb.clone());
    let lhs = p * q.pow(3) * qb.clone();
    let rhs = -SymExpr::int(2) * m * qb + SymExpr::int(2) * qc.clone() * qc;
    assert!(lhs.equal(&rhs));
}

#[test]
fn sin_cos_relation_reduces_to_zero() {
    let e = parse_expr("s^2 + x^2 - 1").unwrap();
    assert!(e.is_zero());
}

#[test]
fn q_times_qbar_is_modulus_squared() {
    let lhs = SymExpr::q() * SymExpr::qbar();
    assert!(lhs.equal(&SymExpr::q_mod_sq()));
    assert!(SymExpr::qa().pow(2).equal(&SymExpr::q_mod_sq()));
}

#[test]
fn theta_derivative_of_modulus_squared() {
    let d = SymExpr::q_mod_sq().diff(Coord::Theta).unwrap();
    let expected = parse_expr("-2*a^2*x*s").unwrap();
    assert!(d.equal(&expected));
}

#[test]
fn radial_derivative_of_modulus_marker() {
    let d = SymExpr::qa().diff(Coord::R).unwrap();
    let expected = parse_expr("r/qa").unwrap();
    assert!(d.equal(&expected));
}

#[test]
fn log_derivatives_of_power_family() {
    let nu1 = SymExpr::var(Var::Nu1);
    let nu2 = SymExpr::var(Var::Nu2);
    let ld = symrat::log_power_derivatives(&nu1, &nu2);
    let dr = parse_expr("nu1/(r + I*a*x) + nu2/(r - I*a*x)").unwrap();
    let dt = parse_expr("(-I*a*nu1*s)/(r + I*a*x) + (I*a*nu2*s)/(r - I*a*x)").unwrap();
    assert!(ld.d_r.equal(&dr));
    assert!(ld.d_theta.equal(&dt));
}

#[test]
fn conjugation_swaps_q_and_qbar() {
    assert!(SymExpr::q().conj().equal(&SymExpr::qbar()));
    let e = SymExpr::i() * SymExpr::var(Var::A) / SymExpr::q();
    let c = -SymExpr::i() * SymExpr::var(Var::A) / SymExpr::qbar();
    assert!(e.conj().equal(&c));
}

#[test]
fn evaluation_handles_radicals() {
    // s² = 1 − x² = 3/4 at x = 1/2.
    let e = parse_expr("s^2").unwrap();
    let v = e.eval_exact(&point()).unwrap();
    assert_eq!(v.as_rational().unwrap(), GaussQ::from_rat(3, 4));
    // s itself is irrational there.
    let s = parse_expr("s").unwrap();
    let v = s.eval_exact(&point()).unwrap();
    assert!(v.as_rational().is_none());
    let (re, im) = v.to_complex_f64();
    assert!((re - (0.75f64).sqrt()).abs() < 1e-15);
    assert_eq!(im, 0.0);
}

#[test]
fn evaluation_reports_poles() {
    let e = parse_expr("1/(r - 2*M)").unwrap();
    let ps = ParamSet::new(rat(1, 1), rat(0, 1), rat(0, 1)).unwrap();
    let assign = ps.assignment(rat(2, 1), rat(0, 1));
    match e.eval_exact(&assign) {
        Err(SymError::EvaluationPole { .. }) => {}
        other => panic!("expected pole, got {other:?}"),
    }
}

#[test]
fn jet_derivatives() {
    let psi = SymExpr::var(Var::P00);
    let d = psi.diff(Coord::R).unwrap();
    assert!(d.equal(&SymExpr::var(Var::P10)));
    let mixed = d.diff(Coord::Theta).unwrap();
    assert!(mixed.equal(&SymExpr::var(Var::P11)));
    // Third derivatives are not stored.
    match mixed.diff(Coord::R) {
        Err(SymError::JetOrderExceeded { .. }) => {}
        other => panic!("expected jet overflow, got {other:?}"),
    }
}

#[test]
fn subextremality_is_enforced() {
    assert!(ParamSet::new(rat(1, 1), rat(1, 2), rat(1, 2)).is_ok());
    assert!(ParamSet::new(rat(1, 1), rat(1, 1), rat(0, 1)).is_err());
    assert!(ParamSet::new(rat(0, 1), rat(0, 1), rat(0, 1)).is_err());
    assert!(ParamSet::new(rat(-1, 1), rat(0, 1), rat(0, 1)).is_err());
}

#[test]
fn text_round_trip() {
    for src in [
        "2*r/(r^2 + a^2*x^2)",
        "(r - 2*M)/(r + I*a*x)^2",
        "1 - x^2 - s^2 + M*Q*a",
        "qa^3/(r - I*a*x)",
        "-(omega^2 - m^2)/r",
    ] {
        let e = parse_expr(src).unwrap();
        let printed = e.to_string();
        let back = parse_expr(&printed).unwrap();
        assert!(e.equal(&back), "round trip failed for `{src}` -> `{printed}`");
    }
}

#[test]
fn division_cancels_structural_factors() {
    // (q·Δ) / q leaves Δ with an empty denominator.
    let e = (SymExpr::q() * SymExpr::delta()) / SymExpr::q();
    assert!(e.denominator_factors().is_empty());
    assert!(e.equal(&SymExpr::delta()));
    // qa³/qa² = qa.
    let e = SymExpr::qa().pow(3) / SymExpr::qa().pow(2);
    assert!(e.equal(&SymExpr::qa()));
}
