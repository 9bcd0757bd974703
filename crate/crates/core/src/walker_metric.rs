//! The canonical Walker metric `g_{a,b,c}` in coordinates `(u1, u2, u3, u4)`.
//!
//! ```text
//!        | 0  0  1  0 |
//!   g =  | 0  0  0  1 |        a, b, c functions of (u1, u2) only
//!        | 1  0  a  c |
//!        | 0  1  c  b |
//! ```
//!
//! Coordinate `u_k` maps to array index `k - 1` everywhere in the crate.

use crate::jets::{Jet3, ScalarField2};

/// Dimension of the manifold.
pub const DIM: usize = 4;

pub type Matrix4 = [[f64; DIM]; DIM];

/// A Walker metric given by its three defining functions.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkerMetric {
    pub a: ScalarField2,
    pub b: ScalarField2,
    pub c: ScalarField2,
    pub name: Option<String>,
}

impl WalkerMetric {
    pub fn new(a: ScalarField2, b: ScalarField2, c: ScalarField2) -> Self {
        Self { a, b, c, name: None }
    }

    pub fn flat() -> Self {
        Self::new(ScalarField2::zero(), ScalarField2::zero(), ScalarField2::zero()).with_name("flat")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }

    pub fn at(&self, point: [f64; DIM]) -> MetricAtPoint {
        evaluate_metric(self, point)
    }
}

/// The metric and the jets of its defining functions at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricAtPoint {
    pub point: [f64; DIM],
    pub g: Matrix4,
    pub a: Jet3,
    pub b: Jet3,
    pub c: Jet3,
}

/// Block matrix `[[0, I], [I, B]]` with `B = [[a, c], [c, b]]`.
pub fn walker_matrix(a: f64, b: f64, c: f64) -> Matrix4 {
    [[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0], [1.0, 0.0, a, c], [0.0, 1.0, c, b]]
}

pub fn evaluate_metric(m: &WalkerMetric, point: [f64; DIM]) -> MetricAtPoint {
    let (u1, u2) = (point[0], point[1]);
    let a = m.a.eval(u1, u2);
    let b = m.b.eval(u1, u2);
    let c = m.c.eval(u1, u2);
    MetricAtPoint { point, g: walker_matrix(a.value(), b.value(), c.value()), a, b, c }
}

/// Exact inverse `[[-B, I], [I, 0]]`.
pub fn inverse_metric(mp: &MetricAtPoint) -> Matrix4 {
    let (a, b, c) = (mp.a.value(), mp.b.value(), mp.c.value());
    let inv = [[-a, -c, 1.0, 0.0], [-c, -b, 0.0, 1.0], [1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]];
    debug_assert!(
        identity_defect(&mp.g, &inv) <= 1e-12 * (1.0 + a.abs() + b.abs() + c.abs()),
        "closed-form inverse failed g·g⁻¹ = I"
    );
    inv
}

pub fn mat_mul(x: &Matrix4, y: &Matrix4) -> Matrix4 {
    let mut out = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] = (0..DIM).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

/// `max |x·y − I|` entrywise.
pub fn identity_defect(x: &Matrix4, y: &Matrix4) -> f64 {
    let p = mat_mul(x, y);
    let mut worst = 0.0f64;
    for (i, row) in p.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{exp_field, poly_field};
    use nalgebra::Matrix4 as NaMatrix4;

    fn to_na(m: &Matrix4) -> NaMatrix4<f64> {
        NaMatrix4::from_fn(|i, j| m[i][j])
    }

    #[test]
    fn flat_metric_is_block_identity() {
        let mp = WalkerMetric::flat().at([0.3, -0.2, 5.0, 7.0]);
        assert_eq!(mp.g, walker_matrix(0.0, 0.0, 0.0));
        assert_eq!(inverse_metric(&mp), mp.g);
    }

    #[test]
    fn substitution_example() {
        let m = WalkerMetric::new(poly_field(&[(2, 0, 1.0)]), poly_field(&[(0, 2, 1.0)]), ScalarField2::zero());
        let mp = m.at([1.0, 2.0, 0.0, 0.0]);
        assert_eq!((mp.g[2][2], mp.g[3][3], mp.g[2][3]), (1.0, 4.0, 0.0));
    }

    #[test]
    fn exponential_example_at_origin() {
        // r1 = r2 = 1: a = -e^{u1+u2}, b = -e^{u1+u2}, c = e^{u1+u2}
        let m = WalkerMetric::new(exp_field(-1.0, 1.0, 1.0), exp_field(-1.0, 1.0, 1.0), exp_field(1.0, 1.0, 1.0));
        let mp = m.at([0.0; 4]);
        assert_eq!((mp.g[2][2], mp.g[3][3], mp.g[2][3]), (-1.0, -1.0, 1.0));
    }

    #[test]
    fn constant_inverse_components() {
        let m =
            WalkerMetric::new(ScalarField2::Constant(2.0), ScalarField2::Constant(3.0), ScalarField2::Constant(1.0));
        let inv = inverse_metric(&m.at([0.0; 4]));
        assert_eq!((inv[0][0], inv[1][1], inv[0][1]), (-2.0, -3.0, -1.0));
        assert_eq!((inv[0][2], inv[1][3]), (1.0, 1.0));
        assert_eq!((inv[2][2], inv[3][3], inv[2][3]), (0.0, 0.0, 0.0));
    }

    #[test]
    fn metric_ignores_u3_u4() {
        let m = WalkerMetric::new(poly_field(&[(1, 2, 0.7)]), exp_field(0.5, -1.0, 0.25), poly_field(&[(3, 0, -1.1)]));
        let p = m.at([0.2, 0.9, -4.0, 3.0]);
        let q = m.at([0.2, 0.9, 8.0, -2.0]);
        assert_eq!((p.g, p.a, p.b, p.c), (q.g, q.a, q.b, q.c));
    }

    #[test]
    fn neutral_signature() {
        for (a, b, c) in [(0.0, 0.0, 0.0), (3.0, -1.0, 0.5), (-7.0, -7.0, 2.0), (100.0, 0.1, -20.0)] {
            let eig = to_na(&walker_matrix(a, b, c)).symmetric_eigen().eigenvalues;
            let pos = eig.iter().filter(|&&l| l > 0.0).count();
            let neg = eig.iter().filter(|&&l| l < 0.0).count();
            assert_eq!((pos, neg), (2, 2), "a={a} b={b} c={c}: {eig}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn closed_inverse_matches_general_inversion(
                a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0,
            ) {
                let m = WalkerMetric::new(
                    ScalarField2::Constant(a),
                    ScalarField2::Constant(b),
                    ScalarField2::Constant(c),
                );
                let mp = m.at([0.0; 4]);
                let general = to_na(&mp.g).try_inverse().expect("invertible");
                let closed = inverse_metric(&mp);
                for i in 0..4 {
                    for j in 0..4 {
                        prop_assert!((general[(i, j)] - closed[i][j]).abs() < 1e-10);
                    }
                }
                prop_assert!((to_na(&mp.g).determinant() - 1.0).abs() < 1e-12);
                prop_assert!(identity_defect(&mp.g, &closed) < 1e-12);
            }

            #[test]
            fn random_polynomial_metric_inverse(
                coeffs in proptest::collection::vec(-2.0f64..2.0, 9),
                p in proptest::array::uniform4(-1.0f64..1.0),
            ) {
                let field = |k: usize| poly_field(&[
                    (1, 0, coeffs[3 * k]), (1, 1, coeffs[3 * k + 1]), (0, 3, coeffs[3 * k + 2]),
                ]);
                let mp = WalkerMetric::new(field(0), field(1), field(2)).at(p);
                let inv = inverse_metric(&mp);
                prop_assert!(identity_defect(&mp.g, &inv) < 1e-12);
                prop_assert!(identity_defect(&inv, &mp.g) < 1e-12);
            }
        }
    }
}
