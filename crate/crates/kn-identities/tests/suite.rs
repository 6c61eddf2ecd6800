//! Every check passes, every fault-injected twin fails, and the internal
//! frame reduction of the wave operator agrees with the coordinate one.

use kn_identities::ctx::Ctx;
use kn_identities::{all_checks, all_faulted_checks, positivity_violations, run_all};
use symrat::{GaussQ, ParamSet, SymExpr, Var};

#[test]
fn all_checks_pass() {
    for (name, f) in all_checks() {
        let report = f().expect("check construction");
        assert!(
            report.passed(),
            "check {name} failed: {:?}",
            report.residuals
        );
        assert!(report.residuals.is_empty());
        assert!(report.identities_checked > 0);
    }
}

#[test]
fn all_faulted_checks_fail() {
    for (name, f) in all_faulted_checks() {
        let report = f().expect("check construction");
        assert!(
            !report.passed(),
            "fault-injected twin of {name} unexpectedly passed"
        );
        assert!(!report.residuals.is_empty());
    }
}

#[test]
fn run_all_is_sorted_and_equal_in_both_modes() {
    let seq = run_all(false).unwrap();
    let par = run_all(true).unwrap();
    assert_eq!(seq.len(), par.len());
    for (a, b) in seq.iter().zip(par.iter()) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.status, b.status);
        assert_eq!(a.identities_checked, b.identities_checked);
    }
    let names: Vec<_> = seq.iter().map(|r| r.name.clone()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn frame_wave_reduction_matches_coordinate_operator() {
    // For the rational weight q·q̄² the logarithmic frame reduction must
    // agree with f⁻¹□f computed by the coordinate wave operator on the
    // static amplitude f.
    let ctx = Ctx::new().unwrap();
    let f = SymExpr::q() * SymExpr::qbar() * SymExpr::qbar();
    let boxed = kn_geometry::box_scalar(&ctx.bg.metric, &f)
        .unwrap()
        .subst_const(Var::Om, GaussQ::zero())
        .unwrap()
        .subst_const(Var::Mm, GaussQ::zero())
        .unwrap();
    let direct = boxed.checked_div(&f).unwrap();
    let reduced = ctx
        .box_log(&SymExpr::one(), &SymExpr::int(2))
        .unwrap();
    assert!(direct.equal(&reduced));
}

#[test]
fn positivity_sampler_is_deterministic_and_clean() {
    let params = ParamSet::new(symrat::rat(1, 1), symrat::rat(3, 10), symrat::rat(3, 10)).unwrap();
    let a = positivity_violations(&params, 100, 42, false).unwrap();
    let b = positivity_violations(&params, 100, 42, true).unwrap();
    assert_eq!(a.violations, 0);
    assert_eq!(b.violations, 0);
    assert_eq!(a.min_value, b.min_value);
    assert!(a.min_value > 0.0);
    assert!(a.max_imag == 0.0);
}
