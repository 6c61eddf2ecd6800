//! Structural checks of the exact background geometry.

use kn_geometry::{scalar_teukolsky, Background, Metric, Tetrad};
use symrat::{parse_expr, GaussQ, SymExpr, Var};

#[test]
fn determinant_is_minus_modulus_fourth_sin_squared() {
    let metric = Metric::kerr_newman();
    let q2 = SymExpr::q_mod_sq();
    let s = SymExpr::sin_theta();
    let expected = -q2.clone() * q2 * s.clone() * s;
    assert!(metric.det.equal(&expected));
}

#[test]
fn metric_inverse_is_exact() {
    let metric = Metric::kerr_newman();
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = SymExpr::zero();
            for la in 0..4 {
                if metric.g[mu][la].is_zero() || metric.ginv[la][nu].is_zero() {
                    continue;
                }
                acc = acc + metric.g[mu][la].clone() * metric.ginv[la][nu].clone();
            }
            let expect = if mu == nu {
                SymExpr::one()
            } else {
                SymExpr::zero()
            };
            assert!(acc.equal(&expect), "g·g⁻¹ fails at ({mu},{nu})");
        }
    }
}

#[test]
fn tetrad_normalization() {
    let metric = Metric::kerr_newman();
    let tetrad = Tetrad::kerr_newman();
    let gram = tetrad.gram(&metric);
    for a in 0..4 {
        for b in 0..4 {
            let expect = match (a, b) {
                (0, 0) | (1, 1) => SymExpr::one(),
                (2, 3) | (3, 2) => SymExpr::int(-2),
                _ => SymExpr::zero(),
            };
            assert!(gram[a][b].equal(&expect), "gram fails at ({a},{b})");
        }
    }
}

#[test]
fn static_uncharged_radial_christoffel() {
    // With a = Q = 0 the `Γ^r_{tt}` symbol is `M(r − 2M)/r³`.
    let metric = Metric::kerr_newman();
    let gamma = metric.christoffel().unwrap();
    let g_rtt = gamma[1][0][0]
        .subst_const(Var::A, GaussQ::zero())
        .unwrap()
        .subst_const(Var::Q, GaussQ::zero())
        .unwrap();
    let expected = parse_expr("M*(r - 2*M)/r^3").unwrap();
    assert!(g_rtt.equal(&expected));
}

#[test]
fn weighted_scalar_operator_on_constants() {
    // At ω = m = 0 the spin/type (1,1) operator applied to 1 is
    // `(1 − cot²θ)/|q|²`.
    let metric = Metric::kerr_newman();
    let out = scalar_teukolsky(&metric, 1, 1, &SymExpr::one()).unwrap();
    let out = out
        .subst_const(Var::Om, GaussQ::zero())
        .unwrap()
        .subst_const(Var::Mm, GaussQ::zero())
        .unwrap();
    let expected = parse_expr("(1 - x^2/s^2)/(r^2 + a^2*x^2)").unwrap();
    assert!(out.equal(&expected));
}

#[test]
fn background_builds() {
    // The full connection build succeeds and the incoming expansion matches
    // its closed form (full catalog comparison lives in the identity suite).
    let bg = Background::new().unwrap();
    let cat = kn_geometry::BackgroundCatalog::computed(&bg).unwrap();
    let closed = kn_geometry::BackgroundCatalog::closed_form();
    assert!(cat.trchi.equal(&closed.trchi), "outgoing expansion");
    assert!(cat.zeta[0].equal(&closed.zeta[0]), "ζ₁");
    assert!(cat.zeta[1].equal(&closed.zeta[1]), "ζ₂");
}
