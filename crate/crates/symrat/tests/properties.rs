//! Property tests: ring axioms, conjugation, mixed partials, and the
//! evaluation/normalization compatibility, each over ≥ 1000 random
//! expressions drawn from a fixed-seed generator for reproducibility.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use std::collections::HashMap;
use symrat::{rat, Coord, GaussQ, SymExpr, Var};

const CASES: u32 = 1000;
const SEED: [u8; 32] = [42; 32];

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: CASES,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &SEED),
    )
}

/// Leaf symbols safe for double differentiation (only the base jet symbol).
fn leaf() -> impl Strategy<Value = SymExpr> {
    prop_oneof![
        Just(SymExpr::var(Var::R)),
        Just(SymExpr::var(Var::X)),
        Just(SymExpr::var(Var::S)),
        Just(SymExpr::var(Var::Qa)),
        Just(SymExpr::var(Var::M)),
        Just(SymExpr::var(Var::A)),
        Just(SymExpr::var(Var::Q)),
        Just(SymExpr::var(Var::P00)),
        Just(SymExpr::i()),
        (-3i64..=3).prop_map(SymExpr::int),
    ]
}

/// Nonvanishing structural divisors (nonzero at the test point below).
fn divisor() -> impl Strategy<Value = SymExpr> {
    prop_oneof![
        Just(SymExpr::q()),
        Just(SymExpr::qbar()),
        Just(SymExpr::qa()),
        Just(SymExpr::delta()),
    ]
}

fn expr() -> impl Strategy<Value = SymExpr> {
    leaf().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), divisor()).prop_map(|(a, d)| a / d),
        ]
    })
}

/// Total assignment at a generic rational point (r=7/3, x=1/3, a=1/2, ...).
fn assignment() -> HashMap<Var, GaussQ> {
    let mut map = HashMap::new();
    map.insert(Var::R, GaussQ::from_real(rat(7, 3)));
    map.insert(Var::X, GaussQ::from_real(rat(1, 3)));
    map.insert(Var::M, GaussQ::from_real(rat(5, 7)));
    map.insert(Var::A, GaussQ::from_real(rat(1, 2)));
    map.insert(Var::Q, GaussQ::from_real(rat(1, 5)));
    map.insert(Var::P00, GaussQ::from_real(rat(11, 13)));
    map
}

#[test]
fn addition_and_multiplication_axioms() {
    let mut r = runner();
    r.run(&(expr(), expr(), expr()), |(a, b, c)| {
        // Associativity and commutativity.
        let lhs = (a.clone() + b.clone()) + c.clone();
        let rhs = a.clone() + (b.clone() + c.clone());
        prop_assert!(lhs.equal(&rhs));
        prop_assert!((a.clone() * b.clone()).equal(&(b.clone() * a.clone())));
        prop_assert!((a.clone() + b.clone()).equal(&(b.clone() + a.clone())));
        // Distributivity.
        let lhs = a.clone() * (b.clone() + c.clone());
        let rhs = a.clone() * b.clone() + a.clone() * c.clone();
        prop_assert!(lhs.equal(&rhs));
        // Units and inverses.
        prop_assert!((a.clone() + SymExpr::zero()).equal(&a));
        prop_assert!((a.clone() * SymExpr::one()).equal(&a));
        prop_assert!((a.clone() - a.clone()).is_zero());
        Ok(())
    })
    .unwrap();
}

#[test]
fn conjugation_is_a_ring_homomorphism() {
    let mut r = runner();
    r.run(&(expr(), expr()), |(a, b)| {
        let sum = (a.clone() + b.clone()).conj();
        prop_assert!(sum.equal(&(a.conj() + b.conj())));
        let prod = (a.clone() * b.clone()).conj();
        prop_assert!(prod.equal(&(a.conj() * b.conj())));
        // Involution.
        prop_assert!(a.conj().conj().equal(&a));
        Ok(())
    })
    .unwrap();
}

#[test]
fn mixed_partials_commute() {
    let mut r = runner();
    r.run(&expr(), |e| {
        let rt = e.diff(Coord::R).unwrap().diff(Coord::Theta).unwrap();
        let tr = e.diff(Coord::Theta).unwrap().diff(Coord::R).unwrap();
        prop_assert!(rt.equal(&tr));
        Ok(())
    })
    .unwrap();
}

#[test]
fn evaluation_commutes_with_normalization() {
    let assign = assignment();
    let mut r = runner();
    r.run(&expr(), |e| {
        let v1 = e.eval_exact(&assign).unwrap();
        let v2 = e.normalize().eval_exact(&assign).unwrap();
        prop_assert_eq!(v1, v2);
        Ok(())
    })
    .unwrap();
}
