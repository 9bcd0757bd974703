//! First-principles curvature engine.
//!
//! Everything is computed from the metric entries alone: Christoffel symbols
//! from `∂g`, the curvature operator from `∂Γ` and `ΓΓ`, then lowered,
//! contracted and differentiated. Derivatives are carried as [`Jet3`] values,
//! so `∂Γ` and `∂R` come out analytically. The only shared ingredient with
//! [`crate::closed_form`] is the exact inverse metric value at the base point;
//! its jet is rebuilt here by Newton iteration.

use crate::jets::{Coord, Jet3};
use crate::tensors::{
    zero_tensor4, AlgebraicCurvature, ConnectionCoefficients, CovariantDerivativeR, CurvatureComponents, RicciData,
    Tensor4, WeylComponents,
};
use crate::walker_metric::{inverse_metric, Matrix4, MetricAtPoint, WalkerMetric, DIM};

/// Slots of `R_{ijkl}` contracted to form the Ricci tensor: `ρ_{jk} = g^{il} R_{ijkl}`.
pub const RICCI_CONTRACTED_SLOTS: (usize, usize) = (0, 3);

type JetMatrix = [[Jet3; DIM]; DIM];

fn zero_jets(order: usize) -> JetMatrix {
    [[Jet3::zero(order); DIM]; DIM]
}

/// Partial derivative along coordinate index `m` (zero-based). The metric
/// does not depend on `u3`, `u4`, so those directions give the zero jet.
fn partial(j: &Jet3, m: usize) -> Jet3 {
    match m {
        0 => j.partial(Coord::U1),
        1 => j.partial(Coord::U2),
        _ => Jet3::zero(j.order() - 1),
    }
}

/// Metric components as jets in `(u1, u2)` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricJetField {
    pub point: [f64; DIM],
    pub g: JetMatrix,
}

impl MetricJetField {
    pub fn new(mp: &MetricAtPoint) -> Self {
        let one = Jet3::constant(1.0);
        let zero = Jet3::zero(mp.a.order());
        let mut g = [[zero; DIM]; DIM];
        g[0][2] = one;
        g[2][0] = one;
        g[1][3] = one;
        g[3][1] = one;
        g[2][2] = mp.a;
        g[3][3] = mp.b;
        g[2][3] = mp.c;
        g[3][2] = mp.c;
        Self { point: mp.point, g }
    }

    pub fn from_metric(m: &WalkerMetric, point: [f64; DIM]) -> Self {
        Self::new(&m.at(point))
    }

    pub fn values(&self) -> Matrix4 {
        let mut out = [[0.0; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                out[i][j] = self.g[i][j].value();
            }
        }
        out
    }

    /// `max |g_ij − g_ji|` over all jet entries.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..DIM {
            for j in 0..DIM {
                worst = worst.max(self.g[i][j].max_abs_diff(&self.g[j][i]));
            }
        }
        worst
    }

    /// Jet of the inverse metric, starting from the exact inverse value and
    /// refining with `X ← X(2I − gX)`. Each step doubles the number of
    /// correct derivative orders, so two steps cover order 3.
    pub fn inverse(&self) -> JetMatrix {
        let ginv_val = inverse_from_values(&self.values());
        let order = self.g[0][0].order();
        let mut x = zero_jets(order);
        for i in 0..DIM {
            for j in 0..DIM {
                x[i][j] = Jet3::constant(ginv_val[i][j]).truncate(order);
            }
        }
        for _ in 0..2 {
            let gx = jet_mat_mul(&self.g, &x);
            let mut corr = zero_jets(order);
            for i in 0..DIM {
                for j in 0..DIM {
                    let delta = if i == j { 2.0 } else { 0.0 };
                    corr[i][j] = Jet3::constant(delta).truncate(order) - gx[i][j];
                }
            }
            x = jet_mat_mul(&x, &corr);
        }
        x
    }
}

fn inverse_from_values(g: &Matrix4) -> Matrix4 {
    // the block form gives the inverse directly; rebuild a MetricAtPoint-free
    // copy so the jet inverse only depends on the numeric entries
    let (a, b, c) = (g[2][2], g[3][3], g[2][3]);
    let mp =
        MetricAtPoint { point: [0.0; DIM], g: *g, a: Jet3::constant(a), b: Jet3::constant(b), c: Jet3::constant(c) };
    inverse_metric(&mp)
}

fn jet_mat_mul(x: &JetMatrix, y: &JetMatrix) -> JetMatrix {
    let order = x[0][0].order().min(y[0][0].order());
    let mut out = zero_jets(order);
    for i in 0..DIM {
        for j in 0..DIM {
            let mut acc = Jet3::zero(order);
            for k in 0..DIM {
                acc += x[i][k] * y[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// `Γ^k_{ij}` as jets one order below the metric.
fn christoffel_jets(mjf: &MetricJetField) -> [[[Jet3; DIM]; DIM]; DIM] {
    let ginv = mjf.inverse();
    let order = mjf.g[0][0].order() - 1;
    // dg[m][i][j] = ∂_m g_ij
    let mut dg = [zero_jets(order); DIM];
    for (m, dgm) in dg.iter_mut().enumerate() {
        for i in 0..DIM {
            for j in 0..DIM {
                dgm[i][j] = partial(&mjf.g[i][j], m);
            }
        }
    }
    let mut gamma = [zero_jets(order); DIM];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..DIM {
            for j in 0..DIM {
                let mut acc = Jet3::zero(order);
                for l in 0..DIM {
                    let first_kind = dg[i][j][l] + dg[j][i][l] - dg[l][i][j];
                    acc += ginv[k][l] * first_kind;
                }
                gk[i][j] = acc * 0.5;
            }
        }
    }
    gamma
}

/// `R_{ijkl}` as jets two orders below the metric.
fn riemann_jets(mjf: &MetricJetField, gamma: &[[[Jet3; DIM]; DIM]; DIM]) -> Vec<Jet3> {
    let order = gamma[0][0][0].order() - 1;
    // R^m_{ijk}
    let mut up = vec![Jet3::zero(order); DIM * DIM * DIM * DIM];
    let idx = |m: usize, i: usize, j: usize, k: usize| ((m * DIM + i) * DIM + j) * DIM + k;
    for m in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let mut acc = partial(&gamma[m][j][k], i) - partial(&gamma[m][i][k], j);
                    for p in 0..DIM {
                        acc += gamma[m][i][p] * gamma[p][j][k] - gamma[m][j][p] * gamma[p][i][k];
                    }
                    up[idx(m, i, j, k)] = acc;
                }
            }
        }
    }
    // R_{ijkl} = R^m_{ijk} g_{ml}
    let mut low = vec![Jet3::zero(order); DIM * DIM * DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    let mut acc = Jet3::zero(order);
                    for m in 0..DIM {
                        acc += up[idx(m, i, j, k)] * mjf.g[m][l];
                    }
                    low[idx(i, j, k, l)] = acc;
                }
            }
        }
    }
    low
}

fn jet_values(gamma: &[[[Jet3; DIM]; DIM]; DIM]) -> ConnectionCoefficients {
    let mut out = ConnectionCoefficients::default();
    for k in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                out.gamma[k][i][j] = gamma[k][i][j].value();
            }
        }
    }
    out
}

fn tensor_values(r: &[Jet3]) -> Tensor4 {
    let mut t = zero_tensor4();
    for (n, jet) in r.iter().enumerate() {
        let (i, j, k, l) = (n / 64, (n / 16) % 4, (n / 4) % 4, n % 4);
        t[i][j][k][l] = jet.value();
    }
    t
}

pub fn oracle_christoffels(mjf: &MetricJetField) -> ConnectionCoefficients {
    jet_values(&christoffel_jets(mjf))
}

/// All 256 components of `R_{ijkl}`, with no symmetry assumed.
pub fn oracle_riemann_full(mjf: &MetricJetField) -> Tensor4 {
    tensor_values(&riemann_jets(mjf, &christoffel_jets(mjf)))
}

pub fn oracle_riemann(mjf: &MetricJetField) -> CurvatureComponents {
    AlgebraicCurvature::from_full(&oracle_riemann_full(mjf))
}

/// Ricci tensor, scalar curvature, Einstein tensor and trace-free Weyl tensor
/// from a full curvature array.
pub fn contractions(r: &Tensor4, g: &Matrix4, ginv: &Matrix4) -> (RicciData, Tensor4) {
    let (s1, s2) = RICCI_CONTRACTED_SLOTS;
    let mut ricci = [[0.0; DIM]; DIM];
    for (x, row) in ricci.iter_mut().enumerate() {
        for (y, v) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for p in 0..DIM {
                for q in 0..DIM {
                    let mut idx = [0usize; 4];
                    idx[s1] = p;
                    idx[s2] = q;
                    let free: Vec<usize> = (0..4).filter(|s| *s != s1 && *s != s2).collect();
                    idx[free[0]] = x;
                    idx[free[1]] = y;
                    acc += ginv[p][q] * r[idx[0]][idx[1]][idx[2]][idx[3]];
                }
            }
            *v = acc;
        }
    }
    let mut scalar = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            scalar += ginv[i][j] * ricci[i][j];
        }
    }
    let n = DIM as f64;
    let mut einstein = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            einstein[i][j] = ricci[i][j] - scalar / n * g[i][j];
        }
    }

    // W = R − (ρ ∧ g)/(n−2) + Sc/((n−1)(n−2)) (g ∧ g)/2, written out
    let mut w = zero_tensor4();
    let kr = 1.0 / (n - 2.0);
    let ks = scalar / ((n - 1.0) * (n - 2.0));
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    let gg = g[j][k] * g[i][l] - g[i][k] * g[j][l];
                    let rg =
                        ricci[j][k] * g[i][l] - ricci[i][k] * g[j][l] - ricci[j][l] * g[i][k] + ricci[i][l] * g[j][k];
                    w[i][j][k][l] = r[i][j][k][l] + ks * gg - kr * rg;
                }
            }
        }
    }
    (RicciData { ricci, scalar, einstein, lambda: scalar / n }, w)
}

pub fn oracle_ricci_scalar_einstein_weyl(mjf: &MetricJetField) -> (RicciData, WeylComponents) {
    let r = oracle_riemann_full(mjf);
    let g = mjf.values();
    let ginv = inverse_from_values(&g);
    let (rd, w) = contractions(&r, &g, &ginv);
    (rd, AlgebraicCurvature::from_full(&w))
}

fn nabla_from_partials(dr: &[Tensor4; DIM], r: &Tensor4, gamma: &ConnectionCoefficients) -> CovariantDerivativeR {
    let gm = &gamma.gamma;
    let mut out = CovariantDerivativeR::zero();
    for m in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        let mut v = dr[m][i][j][k][l];
                        for p in 0..DIM {
                            v -= gm[p][m][i] * r[p][j][k][l]
                                + gm[p][m][j] * r[i][p][k][l]
                                + gm[p][m][k] * r[i][j][p][l]
                                + gm[p][m][l] * r[i][j][k][p];
                        }
                        out.d[m][i][j][k][l] = v;
                    }
                }
            }
        }
    }
    out
}

/// `(∇_m R)_{ijkl}` with `∂_m R` taken analytically from the curvature jets.
pub fn oracle_nabla_r(mjf: &MetricJetField) -> CovariantDerivativeR {
    OracleCurvature::compute(mjf).nabla_r
}

/// Every oracle quantity at one point, from a single pass over the jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleCurvature {
    pub christoffel: ConnectionCoefficients,
    pub riemann_full: Tensor4,
    pub riemann: CurvatureComponents,
    pub ricci: RicciData,
    pub weyl_full: Tensor4,
    pub weyl: WeylComponents,
    pub nabla_r: CovariantDerivativeR,
}

impl OracleCurvature {
    pub fn compute(mjf: &MetricJetField) -> Self {
        let gamma_j = christoffel_jets(mjf);
        let r_j = riemann_jets(mjf, &gamma_j);
        let christoffel = jet_values(&gamma_j);
        let riemann_full = tensor_values(&r_j);

        let mut dr = [zero_tensor4(); DIM];
        for (m, drm) in dr.iter_mut().enumerate() {
            for (n, jet) in r_j.iter().enumerate() {
                let (i, j, k, l) = (n / 64, (n / 16) % 4, (n / 4) % 4, n % 4);
                drm[i][j][k][l] = partial(jet, m).value();
            }
        }
        let nabla_r = nabla_from_partials(&dr, &riemann_full, &christoffel);

        let g = mjf.values();
        let ginv = inverse_from_values(&g);
        let (ricci, weyl_full) = contractions(&riemann_full, &g, &ginv);
        Self {
            christoffel,
            riemann_full,
            riemann: AlgebraicCurvature::from_full(&riemann_full),
            ricci,
            weyl_full,
            weyl: AlgebraicCurvature::from_full(&weyl_full),
            nabla_r,
        }
    }

    pub fn at(m: &WalkerMetric, point: [f64; DIM]) -> Self {
        Self::compute(&MetricJetField::from_metric(m, point))
    }
}

/// Default step for [`nabla_r_finite_difference`].
pub const FD_STEP: f64 = 1e-4;

/// `∇R` with `∂_m R` replaced by central differences of the oracle curvature
/// in `u1`, `u2`. An independent check on the jet-level derivative.
pub fn nabla_r_finite_difference(m: &WalkerMetric, point: [f64; DIM], h: f64) -> CovariantDerivativeR {
    let r_at = |p: [f64; DIM]| oracle_riemann_full(&MetricJetField::from_metric(m, p));
    let mut dr = [zero_tensor4(); DIM];
    for (dir, drm) in dr.iter_mut().enumerate().take(2) {
        let mut plus = point;
        let mut minus = point;
        plus[dir] += h;
        minus[dir] -= h;
        let (rp, rm) = (r_at(plus), r_at(minus));
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        drm[i][j][k][l] = (rp[i][j][k][l] - rm[i][j][k][l]) / (2.0 * h);
                    }
                }
            }
        }
    }
    let mjf = MetricJetField::from_metric(m, point);
    nabla_from_partials(&dr, &oracle_riemann_full(&mjf), &oracle_christoffels(&mjf))
}
