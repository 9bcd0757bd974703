//! Closed-form component lists for the restricted Walker metric.
//!
//! Every formula here is written out term by term, with no simplification. Components that the lists omit
//! but that the cyclic identity determines are derived from the listed ones
//! and reported through [`unlisted_components`]. The first-principles path in
//! [`crate::oracle`] is the independent check on all of it.
//!
//! Index convention: `R_{ijkl} = g(R(∂_i, ∂_j)∂_k, ∂_l)` with
//! `R(X, Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_{[X,Y]}`, and `ρ_{jk} = g^{il} R_{ijkl}`.

use crate::tensors::{AlgebraicCurvature, ConnectionCoefficients, CurvatureComponents, RicciData, WeylComponents};
use crate::walker_metric::{MetricAtPoint, DIM};

/// Values and partials of the defining functions at a point, named the way
/// the formulas read: `a1 = ∂a/∂u1`, `c12 = ∂²c/∂u1∂u2`, and so on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DefiningPartials {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub b11: f64,
    pub b12: f64,
    pub b22: f64,
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
}

impl DefiningPartials {
    pub fn at(mp: &MetricAtPoint) -> Self {
        let (a, b, c) = (&mp.a, &mp.b, &mp.c);
        Self {
            a: a.value(),
            b: b.value(),
            c: c.value(),
            a1: a.d(1, 0),
            a2: a.d(0, 1),
            b1: b.d(1, 0),
            b2: b.d(0, 1),
            c1: c.d(1, 0),
            c2: c.d(0, 1),
            a11: a.d(2, 0),
            a12: a.d(1, 1),
            a22: a.d(0, 2),
            b11: b.d(2, 0),
            b12: b.d(1, 1),
            b22: b.d(0, 2),
            c11: c.d(2, 0),
            c12: c.d(1, 1),
            c22: c.d(0, 2),
        }
    }
}

/// Levi-Civita connection from the listed covariant derivatives
/// `∇_{∂i}∂j`. Everything not listed is zero.
pub fn connection_at(mp: &MetricAtPoint) -> ConnectionCoefficients {
    let p = DefiningPartials::at(mp);
    let mut gamma = ConnectionCoefficients::default();
    let mut put = |i: usize, j: usize, coeffs: [f64; DIM]| {
        for (k, v) in coeffs.into_iter().enumerate() {
            gamma.set_symmetric(k, i - 1, j - 1, v);
        }
    };
    put(1, 3, [0.5 * p.a1, 0.5 * p.c1, 0.0, 0.0]);
    put(1, 4, [0.5 * p.c1, 0.5 * p.b1, 0.0, 0.0]);
    put(2, 3, [0.5 * p.a2, 0.5 * p.c2, 0.0, 0.0]);
    put(2, 4, [0.5 * p.c2, 0.5 * p.b2, 0.0, 0.0]);
    put(3, 3, [0.5 * (p.a * p.a1 + p.c * p.a2), 0.5 * (p.b * p.a2 + p.c * p.a1), -0.5 * p.a1, -0.5 * p.a2]);
    put(3, 4, [0.5 * (p.a * p.c1 + p.c * p.c2), 0.5 * (p.b * p.c2 + p.c * p.c1), -0.5 * p.c1, -0.5 * p.c2]);
    put(4, 4, [0.5 * (p.a * p.b1 + p.c * p.b2), 0.5 * (p.b * p.b2 + p.c * p.b1), -0.5 * p.b1, -0.5 * p.b2]);
    gamma
}

/// The fifteen listed curvature generators, one-based labels.
pub fn curvature_generators(p: &DefiningPartials) -> [([usize; 4], f64); 15] {
    [
        ([1, 3, 1, 3], 0.5 * p.a11),
        ([1, 3, 1, 4], 0.5 * p.c11),
        ([1, 3, 2, 3], 0.5 * p.a12),
        ([1, 3, 2, 4], 0.5 * p.c12),
        ([1, 3, 3, 4], 0.25 * (p.a2 * p.b1 - p.c1 * p.c2)),
        ([1, 4, 1, 4], 0.5 * p.b11),
        ([1, 4, 2, 3], 0.5 * p.c12),
        ([1, 4, 2, 4], 0.5 * p.b12),
        ([1, 4, 3, 4], 0.25 * (p.c1 * p.c1 - p.a1 * p.b1 + p.b1 * p.c2 - p.b2 * p.c1)),
        ([2, 3, 2, 3], 0.5 * p.a22),
        ([2, 3, 2, 4], 0.5 * p.c22),
        ([2, 3, 3, 4], 0.25 * (-p.c2 * p.c2 + p.a2 * p.b2 + p.a1 * p.c2 - p.a2 * p.c1)),
        ([2, 4, 2, 4], 0.5 * p.b22),
        ([2, 4, 3, 4], 0.25 * (-p.a2 * p.b1 + p.c1 * p.c2)),
        (
            [3, 4, 3, 4],
            0.25 * (p.a * p.c1 * p.c1 + p.b * p.c2 * p.c2
                - p.a * p.a1 * p.b1
                - p.c * p.a1 * p.b2
                - p.c * p.a2 * p.b1
                - p.b * p.a2 * p.b2
                + 2.0 * p.c * p.c1 * p.c2),
        ),
    ]
}

/// `T_1234` from the cyclic identity `T_1234 + T_1342 + T_1423 = 0`.
fn complete_by_bianchi(t: &mut AlgebraicCurvature) -> f64 {
    let v = t.get_label([1, 3, 2, 4]) - t.get_label([1, 4, 2, 3]);
    t.set_label([1, 2, 3, 4], v);
    v
}

/// Curvature from the listed generators; `R_1234` is filled in from the
/// cyclic identity.
pub fn curvature_at(mp: &MetricAtPoint) -> CurvatureComponents {
    let p = DefiningPartials::at(mp);
    let mut r = AlgebraicCurvature::zero();
    for (idx, v) in curvature_generators(&p) {
        r.set_label(idx, v);
    }
    complete_by_bianchi(&mut r);
    r
}

/// Ricci tensor, scalar curvature and Einstein tensor from their listed
/// component formulas.
pub fn ricci_at(mp: &MetricAtPoint) -> RicciData {
    let p = DefiningPartials::at(mp);
    let mut ricci = [[0.0; DIM]; DIM];
    let sym = |m: &mut [[f64; DIM]; DIM], i: usize, j: usize, v: f64| {
        m[i - 1][j - 1] = v;
        m[j - 1][i - 1] = v;
    };
    sym(&mut ricci, 1, 3, 0.5 * (p.a11 + p.c12));
    sym(&mut ricci, 1, 4, 0.5 * (p.b12 + p.c11));
    sym(&mut ricci, 2, 3, 0.5 * (p.a12 + p.c22));
    sym(&mut ricci, 2, 4, 0.5 * (p.b22 + p.c12));
    sym(
        &mut ricci,
        3,
        3,
        0.5 * (-p.c2 * p.c2 + p.a1 * p.c2 + p.a2 * p.b2 - p.a2 * p.c1 + p.a * p.a11 + 2.0 * p.c * p.a12 + p.b * p.a22),
    );
    sym(&mut ricci, 3, 4, 0.5 * (-p.a2 * p.b1 + p.c1 * p.c2 + p.a * p.c11 + 2.0 * p.c * p.c12 + p.b * p.c22));
    sym(
        &mut ricci,
        4,
        4,
        0.5 * (-p.c1 * p.c1 + p.a1 * p.b1 - p.b1 * p.c2 + p.b2 * p.c1 + p.a * p.b11 + 2.0 * p.c * p.b12 + p.b * p.b22),
    );

    let scalar = p.a11 + p.b22 + 2.0 * p.c12;

    let mut einstein = [[0.0; DIM]; DIM];
    sym(&mut einstein, 1, 3, 0.25 * p.a11 - 0.25 * p.b22);
    sym(&mut einstein, 1, 4, 0.5 * p.c11 + 0.5 * p.b12);
    sym(&mut einstein, 2, 3, 0.5 * p.a12 + 0.5 * p.c22);
    sym(&mut einstein, 2, 4, 0.25 * p.b22 - 0.25 * p.a11);
    sym(
        &mut einstein,
        3,
        3,
        0.25 * p.a * p.a11 + p.c * p.a12 + 0.5 * p.b * p.a22 - 0.5 * p.a2 * p.c1
            + 0.5 * p.a1 * p.c2
            + 0.5 * p.a2 * p.b2
            - 0.5 * p.c2 * p.c2
            - 0.5 * p.a * p.c12
            - 0.25 * p.a * p.b22,
    );
    sym(
        &mut einstein,
        3,
        4,
        0.5 * p.a * p.c11 + 0.5 * p.c * p.c12 - 0.5 * p.a2 * p.b1 + 0.5 * p.c1 * p.c2 + 0.5 * p.b * p.c22
            - 0.25 * p.c * p.a11
            - 0.25 * p.c * p.b22,
    );
    sym(
        &mut einstein,
        4,
        4,
        0.5 * p.a * p.b11 + p.c * p.b12 - 0.5 * p.c1 * p.c1 + 0.5 * p.a1 * p.b1 - 0.5 * p.b1 * p.c2
            + 0.5 * p.b2 * p.c1
            + 0.25 * p.b * p.b22
            - 0.25 * p.b * p.a11
            - 0.5 * p.b * p.c12,
    );

    RicciData { ricci, scalar, einstein, lambda: scalar / 4.0 }
}

/// The fifteen listed Weyl components, verbatim.
///
/// `W_2334` is listed with `−c·c22/4`; the trace-free Weyl tensor has
/// `+c·c22/4` there. It is kept as listed and the discrepancy shows up in
/// the audit.
pub fn weyl_listed(p: &DefiningPartials) -> [([usize; 4], f64); 15] {
    let DefiningPartials { a, b, c, a1, a2, b1, b2, c1, c2, a11, a12, a22, b11, b12, b22, c11, c12, c22 } = *p;
    [
        ([1, 3, 1, 3], a11 / 6.0 + b22 / 6.0 - c12 / 6.0),
        ([1, 3, 1, 4], -b12 / 4.0 + c11 / 4.0),
        ([1, 3, 2, 3], a12 / 4.0 - c22 / 4.0),
        ([1, 3, 2, 4], c12 / 2.0),
        ([1, 3, 3, 4], c * a11 / 12.0 - a * b12 / 4.0 - c * b22 / 6.0 + 5.0 * c * c12 / 12.0 + b * c22 / 4.0),
        ([1, 4, 1, 4], b11 / 2.0),
        ([1, 4, 2, 3], -a11 / 12.0 - b22 / 12.0 + c12 / 3.0),
        ([1, 4, 2, 4], b12 / 4.0 - c11 / 4.0),
        (
            [1, 4, 3, 4],
            b * a11 / 12.0 + a * b11 / 4.0 + c * b12 / 4.0 + b * b22 / 12.0 - c * c11 / 4.0 - b * c12 / 12.0,
        ),
        ([2, 3, 2, 3], a22 / 2.0),
        ([2, 3, 2, 4], -a12 / 4.0 + c22 / 4.0),
        (
            [2, 3, 3, 4],
            -a * a11 / 12.0 - c * a12 / 4.0 - b * a22 / 4.0 - a * b22 / 12.0 + a * c12 / 12.0 - c * c22 / 4.0,
        ),
        ([2, 4, 2, 4], a11 / 6.0 + b22 / 6.0 - c12 / 6.0),
        ([2, 4, 3, 4], c * a11 / 6.0 + b * a12 / 4.0 - c * b22 / 12.0 - a * c11 / 4.0 - 5.0 * c * c12 / 12.0),
        (
            [3, 4, 3, 4],
            c * c * a11 / 6.0
                + a * b * a11 / 12.0
                + b * c * a12 / 2.0
                + b * b * a22 / 4.0
                + a * a * b11 / 4.0
                + a * c * b12 / 2.0
                + c * c * b22 / 6.0
                + a * b * b22 / 12.0
                - a * c * c11 / 2.0
                - 2.0 * c * c * c12 / 3.0
                - a * b * c12 / 3.0
                - b * c * c22 / 2.0
                + b * a1 * c2 / 4.0
                - c * a1 * b2 / 4.0
                + c * a2 * b1 / 4.0
                - b * a2 * c1 / 4.0
                - a * b1 * c2 / 4.0
                + a * b2 * c1 / 4.0,
        ),
    ]
}

/// Weyl tensor from the listed components; `W_1234` is filled in from the
/// cyclic identity.
pub fn weyl_at(mp: &MetricAtPoint) -> WeylComponents {
    let p = DefiningPartials::at(mp);
    let mut w = AlgebraicCurvature::zero();
    for (idx, v) in weyl_listed(&p) {
        w.set_label(idx, v);
    }
    complete_by_bianchi(&mut w);
    w
}

/// A component the lists leave out, with the value the cyclic
/// identity assigns it at this point.
#[derive(Clone, Debug, PartialEq)]
pub struct UnlistedComponent {
    pub tensor: &'static str,
    pub label: [usize; 4],
    pub value: f64,
}

/// `R_1234` and `W_1234` as derived from the listed entries.
pub fn unlisted_components(mp: &MetricAtPoint) -> Vec<UnlistedComponent> {
    vec![
        UnlistedComponent { tensor: "R", label: [1, 2, 3, 4], value: curvature_at(mp).get_label([1, 2, 3, 4]) },
        UnlistedComponent { tensor: "W", label: [1, 2, 3, 4], value: weyl_at(mp).get_label([1, 2, 3, 4]) },
    ]
}

/// Weyl tensor assembled as
///
/// ```text
/// W(X,Y,Z,T) = R(X,Y,Z,T)
///            + Sc/((n−1)(n−2)) {g(Y,Z)g(X,T) − g(X,Z)g(Y,T)}
///            + k {ρ(Y,Z)g(X,T) − ρ(X,Z)g(Y,T) − ρ(Y,T)g(X,Z) + ρ(X,T)g(Y,Z)}
/// ```
///
/// with `ricci_coeff = k`. Only `k = −1/(n−2)` gives a trace-free result under
/// this crate's curvature convention.
pub fn weyl_assembly(
    r: &CurvatureComponents,
    ricci: &RicciData,
    mp: &MetricAtPoint,
    ricci_coeff: f64,
) -> WeylComponents {
    let n = DIM as f64;
    let g = &mp.g;
    let rho = &ricci.ricci;
    let sc_coeff = ricci.scalar / ((n - 1.0) * (n - 2.0));
    let mut w = AlgebraicCurvature::zero();
    for (x, y, z, t, rv) in r.independent() {
        let v = rv
            + sc_coeff * (g[y][z] * g[x][t] - g[x][z] * g[y][t])
            + ricci_coeff * (rho[y][z] * g[x][t] - rho[x][z] * g[y][t] - rho[y][t] * g[x][z] + rho[x][t] * g[y][z]);
        w.set(x, y, z, t, v);
    }
    w
}

/// Trace-free Weyl tensor from curvature, Ricci data and the metric.
pub fn weyl_from_definition(r: &CurvatureComponents, ricci: &RicciData, mp: &MetricAtPoint) -> WeylComponents {
    weyl_assembly(r, ricci, mp, -1.0 / (DIM as f64 - 2.0))
}

/// Every closed-form quantity at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormPack {
    pub partials: DefiningPartials,
    pub connection: ConnectionCoefficients,
    pub curvature: CurvatureComponents,
    pub ricci: RicciData,
    pub weyl: WeylComponents,
    pub weyl_definition: WeylComponents,
}

impl ClosedFormPack {
    pub fn at(mp: &MetricAtPoint) -> Self {
        let curvature = curvature_at(mp);
        let ricci = ricci_at(mp);
        Self {
            partials: DefiningPartials::at(mp),
            connection: connection_at(mp),
            curvature,
            ricci,
            weyl: weyl_at(mp),
            weyl_definition: weyl_from_definition(&curvature, &ricci, mp),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{exp_field, poly_field, ScalarField2};
    use crate::tensors::{metric_trace, trace_defect};
    use crate::walker_metric::{inverse_metric, WalkerMetric};

    fn quad_a() -> WalkerMetric {
        WalkerMetric::new(poly_field(&[(2, 0, 1.0)]), ScalarField2::zero(), ScalarField2::zero())
    }

    fn quadratic_4k(k: f64) -> WalkerMetric {
        WalkerMetric::new(poly_field(&[(2, 0, k)]), poly_field(&[(0, 2, k)]), ScalarField2::zero())
    }

    #[test]
    fn flat_everything_zero() {
        let mp = WalkerMetric::flat().at([0.4, -0.3, 1.0, 2.0]);
        assert_eq!(connection_at(&mp), ConnectionCoefficients::default());
        assert_eq!(curvature_at(&mp).max_abs(), 0.0);
        let rd = ricci_at(&mp);
        assert_eq!((rd.max_abs_ricci(), rd.scalar, rd.max_abs_einstein()), (0.0, 0.0, 0.0));
        assert_eq!(weyl_at(&mp).max_abs(), 0.0);
        let w = weyl_from_definition(&curvature_at(&mp), &rd, &mp);
        assert_eq!(w.max_abs(), 0.0);
    }

    #[test]
    fn connection_substitution() {
        let mp = quad_a().at([1.0, 0.0, 0.0, 0.0]);
        let gamma = connection_at(&mp);
        assert_eq!(gamma.get(0, 0, 2), 1.0);
        assert_eq!(gamma.get(0, 2, 0), 1.0);
        assert_eq!(gamma.get(0, 2, 2), 1.0);
        assert_eq!(gamma.get(2, 2, 2), -1.0);
        assert_eq!(gamma.get(0, 0, 0), 0.0);
        assert_eq!(gamma.lower_symmetry_defect(), 0.0);
    }

    #[test]
    fn curvature_substitution() {
        let r = curvature_at(&quad_a().at([0.7, -0.1, 0.0, 0.0]));
        assert_eq!(r.get_label([1, 3, 1, 3]), 1.0);
        let others = r.independent().filter(|&(i, j, k, l, _)| [i, j, k, l] != [0, 2, 0, 2]).all(|(.., v)| v == 0.0);
        assert!(others);
    }

    #[test]
    fn four_k_scalar_curvature() {
        for k in [1.0, -2.0, 0.5] {
            let rd = ricci_at(&quadratic_4k(k).at([0.3, 0.8, 0.0, 0.0]));
            assert_eq!(rd.scalar, 4.0 * k);
            assert_eq!(rd.lambda, k);
            assert_eq!(rd.max_abs_einstein(), 0.0);
        }
    }

    #[test]
    fn exponential_example_is_ricci_flat_at_origin() {
        let m = WalkerMetric::new(exp_field(-1.0, 1.0, 1.0), exp_field(-1.0, 1.0, 1.0), exp_field(1.0, 1.0, 1.0));
        assert_eq!(ricci_at(&m.at([0.0; 4])).max_abs_ricci(), 0.0);
    }

    #[test]
    fn weyl_substitution() {
        let w = weyl_at(&quad_a().at([0.2, 0.2, 0.0, 0.0]));
        assert!((w.get_label([1, 3, 1, 3]) - 1.0 / 3.0).abs() < 1e-15);
        assert!((w.get_label([1, 4, 2, 3]) + 1.0 / 6.0).abs() < 1e-15);
        assert!((w.get_label([2, 4, 2, 4]) - 1.0 / 3.0).abs() < 1e-15);
        // cyclic completion: W_1234 = W_1324 − W_1423 = 0 − (−1/6)
        assert!((w.get_label([1, 2, 3, 4]) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn conformally_flat_instance_has_zero_weyl() {
        // I = 2: a = u1² + J u1 + K, b = −u2² + L u2 + R, c = 0
        let (j, k, l, r) = (0.7, -1.3, 2.1, 0.4);
        let m = WalkerMetric::new(
            poly_field(&[(2, 0, 1.0), (1, 0, j), (0, 0, k)]),
            poly_field(&[(0, 2, -1.0), (0, 1, l), (0, 0, r)]),
            ScalarField2::zero(),
        );
        for p in [[0.0; 4], [0.5, -0.9, 0.0, 0.0], [-1.0, 1.0, 3.0, 3.0]] {
            let mp = m.at(p);
            assert!(weyl_at(&mp).max_abs() < 1e-12);
            let rd = ricci_at(&mp);
            assert!(weyl_from_definition(&curvature_at(&mp), &rd, &mp).max_abs() < 1e-12);
        }
    }

    #[test]
    fn einstein_metric_definition_reduces() {
        // ρ = (Sc/4) g, so the Ricci and scalar terms collapse to −(Sc/12)(g∧g)
        let mp = quadratic_4k(1.0).at([0.3, -0.6, 0.0, 0.0]);
        let r = curvature_at(&mp);
        let rd = ricci_at(&mp);
        let w = weyl_from_definition(&r, &rd, &mp);
        let g = mp.g;
        for (x, y, z, t, rv) in r.independent() {
            let gg = g[y][z] * g[x][t] - g[x][z] * g[y][t];
            let expected = rv + rd.scalar / 6.0 * gg - 0.5 * (rd.scalar / 4.0) * 2.0 * gg;
            assert!((w.get(x, y, z, t) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn einstein_tensor_is_trace_free() {
        let m = WalkerMetric::new(
            poly_field(&[(3, 0, 0.5), (1, 1, -1.0), (0, 2, 2.0)]),
            poly_field(&[(2, 1, 1.5), (0, 1, 0.3)]),
            poly_field(&[(1, 2, -0.8), (2, 0, 1.1)]),
        );
        let mp = m.at([0.4, -0.7, 0.0, 0.0]);
        let rd = ricci_at(&mp);
        assert!(metric_trace(&inverse_metric(&mp), &rd.einstein).abs() < 1e-12);
        let w = weyl_from_definition(&curvature_at(&mp), &rd, &mp);
        assert!(trace_defect(&w.to_full(), &inverse_metric(&mp)) < 1e-12);
    }

    #[test]
    fn plus_ricci_sign_leaves_scalar_trace() {
        let mp = quadratic_4k(1.0).at([0.1, 0.2, 0.0, 0.0]);
        let rd = ricci_at(&mp);
        let w = weyl_assembly(&curvature_at(&mp), &rd, &mp, 0.5);
        // under the + sign, g^{il} W_{ijkl} = 2ρ_jk + Sc·g_jk
        let ginv = inverse_metric(&mp);
        let full = w.to_full();
        let mut tr = 0.0;
        for i in 0..4 {
            for l in 0..4 {
                tr += ginv[i][l] * full[i][0][2][l];
            }
        }
        let expected = 2.0 * rd.ricci[0][2] + rd.scalar * mp.g[0][2];
        assert!(expected.abs() > 1.0);
        assert!((tr - expected).abs() < 1e-12);
    }
}
