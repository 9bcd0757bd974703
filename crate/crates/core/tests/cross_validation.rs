//! Independent computation paths checked against each other.

mod common;

use common::{field_strategy, metric_strategy, point_strategy, poly_strategy};
use proptest::prelude::*;
use walker_curvature::closed_form::{ClosedFormPack, DefiningPartials};
use walker_curvature::jets::{finite_difference_jet, Monomial, ScalarField2};
use walker_curvature::oracle::{nabla_r_finite_difference, MetricJetField, OracleCurvature, FD_STEP};
use walker_curvature::tensors::{max_abs_diff_matrix, max_abs_matrix};
use walker_curvature::walker_metric::{identity_defect, inverse_metric, walker_matrix, WalkerMetric};

fn product(p: &ScalarField2, q: &ScalarField2) -> ScalarField2 {
    let (ScalarField2::Polynomial(x), ScalarField2::Polynomial(y)) = (p, q) else { unreachable!("polynomials only") };
    let mut terms = Vec::new();
    for s in x {
        for t in y {
            terms.push(Monomial { pow_u1: s.pow_u1 + t.pow_u1, pow_u2: s.pow_u2 + t.pow_u2, coeff: s.coeff * t.coeff });
        }
    }
    ScalarField2::Polynomial(terms)
}

/// Closed-form minus oracle, per object, scaled by the size of the oracle value.
fn gaps(m: &WalkerMetric, point: [f64; 4]) -> (ClosedFormPack, OracleCurvature, f64) {
    let mp = m.at(point);
    let closed = ClosedFormPack::at(&mp);
    let oracle = OracleCurvature::compute(&MetricJetField::new(&mp));
    let scale = 1.0 + oracle.riemann.max_abs() + max_abs_matrix(&mp.g);
    (closed, oracle, scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jets_match_finite_differences(f in field_strategy(), u1 in -1.0..=1.0f64, u2 in -1.0..=1.0f64) {
        let exact = f.eval(u1, u2);
        let fd = finite_difference_jet(&f, u1, u2, 1e-3);
        let scale = 1.0 + exact.entries().map(|(_, _, v)| v.abs()).fold(0.0, f64::max);
        prop_assert!(exact.max_abs_diff(&fd) < 1e-4 * scale, "{} vs fd", exact.max_abs_diff(&fd));
    }

    #[test]
    fn jet_product_is_leibniz(p in poly_strategy(2), q in poly_strategy(2), u1 in -1.0..=1.0f64, u2 in -1.0..=1.0f64) {
        let lhs = p.eval(u1, u2) * q.eval(u1, u2);
        let rhs = product(&p, &q).eval(u1, u2);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn inverse_metric_is_exact(a in -5.0..=5.0f64, b in -5.0..=5.0f64, c in -5.0..=5.0f64) {
        let m = WalkerMetric::new(
            walker_curvature::jets::poly_field(&[(0, 0, a)]),
            walker_curvature::jets::poly_field(&[(0, 0, b)]),
            walker_curvature::jets::poly_field(&[(0, 0, c)]),
        );
        let mp = m.at([0.0; 4]);
        prop_assert_eq!(identity_defect(&walker_matrix(a, b, c), &inverse_metric(&mp)), 0.0);
        let general = nalgebra::Matrix4::from_fn(|i, j| mp.g[i][j]).try_inverse().unwrap();
        let ours = inverse_metric(&mp);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((general[(i, j)] - ours[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_matches_oracle(m in metric_strategy(), point in point_strategy()) {
        let (closed, oracle, scale) = gaps(&m, point);
        let tol = 1e-10 * scale * scale;
        prop_assert!(closed.connection.max_abs_diff(&oracle.christoffel) < tol);
        prop_assert!(closed.curvature.max_abs_diff(&oracle.riemann) < tol);
        prop_assert!(max_abs_diff_matrix(&closed.ricci.ricci, &oracle.ricci.ricci) < tol);
        prop_assert!((closed.ricci.scalar - oracle.ricci.scalar).abs() < tol);
        prop_assert!(max_abs_diff_matrix(&closed.ricci.einstein, &oracle.ricci.einstein) < tol);
        prop_assert!(closed.weyl_definition.max_abs_diff(&oracle.weyl) < tol);
    }

    /// Every listed Weyl entry but one agrees; the odd one out is off by
    /// exactly `-c c22 / 2`, a sign slip in its last term.
    #[test]
    fn listed_weyl_differs_only_in_2334(m in metric_strategy(), point in point_strategy()) {
        let (closed, oracle, scale) = gaps(&m, point);
        let tol = 1e-10 * scale * scale;
        for (i, j, k, l, v) in closed.weyl.independent() {
            let o = oracle.weyl.get(i, j, k, l);
            if [i, j, k, l] == [1, 2, 2, 3] {
                let p = DefiningPartials::at(&m.at(point));
                prop_assert!((v - o - (-0.5 * p.c * p.c22)).abs() < tol);
            } else {
                prop_assert!((v - o).abs() < tol, "W_{}{}{}{}", i + 1, j + 1, k + 1, l + 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nabla_r_matches_finite_differences(m in metric_strategy(), point in point_strategy()) {
        let oracle = OracleCurvature::at(&m, point);
        let fd = nabla_r_finite_difference(&m, point, FD_STEP);
        let scale = 1.0 + oracle.nabla_r.max_abs();
        prop_assert!(oracle.nabla_r.max_abs_diff(&fd) < 1e-5 * scale);
    }
}
