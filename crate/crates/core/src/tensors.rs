//! Component containers shared by the closed-form and first-principles paths.

use serde::{Deserialize, Serialize};

use crate::walker_metric::{Matrix4, DIM};

/// Full `4×4×4×4` array, indexed `[i][j][k][l]`.
pub type Tensor4 = [[[[f64; DIM]; DIM]; DIM]; DIM];

pub fn zero_tensor4() -> Tensor4 {
    [[[[0.0; DIM]; DIM]; DIM]; DIM]
}

/// Antisymmetric index pairs `(i, j)`, `i < j`, in bivector order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_slot(i: usize, j: usize) -> Option<(usize, f64)> {
    if i == j {
        return None;
    }
    let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    PAIRS.iter().position(|&p| p == (lo, hi)).map(|n| (n, sign))
}

fn packed(p: usize, q: usize) -> usize {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    // row-major upper triangle of a 6×6 matrix
    p * 6 - p * (p + 1) / 2 + q
}

/// Four-index label with one-based coordinates, e.g. `"1313"`.
pub fn label(i: usize, j: usize, k: usize, l: usize) -> String {
    format!("{}{}{}{}", i + 1, j + 1, k + 1, l + 1)
}

/// Storage for a tensor with the algebraic symmetries of curvature:
/// antisymmetric in `(i, j)` and in `(k, l)`, symmetric under pair exchange.
///
/// Only the 21 slots of the upper triangle of the 6×6 bivector matrix are
/// kept; every 4-index read resolves the signs. The cyclic identity is not
/// imposed by the storage.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicCurvature {
    slots: [f64; 21],
}

pub type CurvatureComponents = AlgebraicCurvature;
pub type WeylComponents = AlgebraicCurvature;

impl Default for AlgebraicCurvature {
    fn default() -> Self {
        Self { slots: [0.0; 21] }
    }
}

impl AlgebraicCurvature {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Zero-based component `T_{ijkl}`.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        match (pair_slot(i, j), pair_slot(k, l)) {
            (Some((p, s1)), Some((q, s2))) => s1 * s2 * self.slots[packed(p, q)],
            _ => 0.0,
        }
    }

    /// Sets `T_{ijkl}` and, through the storage, all its symmetric images.
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let (p, s1) = pair_slot(i, j).expect("antisymmetric pair needs distinct indices");
        let (q, s2) = pair_slot(k, l).expect("antisymmetric pair needs distinct indices");
        self.slots[packed(p, q)] = s1 * s2 * v;
    }

    /// One-based convenience setter: `set_label([1, 3, 1, 3], v)`.
    pub fn set_label(&mut self, idx: [usize; 4], v: f64) {
        self.set(idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1, v);
    }

    pub fn get_label(&self, idx: [usize; 4]) -> f64 {
        self.get(idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1)
    }

    /// Reads the upper pair triangle of a full array; the rest is ignored.
    pub fn from_full(t: &Tensor4) -> Self {
        let mut out = Self::zero();
        for p in 0..6 {
            for q in p..6 {
                let (i, j) = PAIRS[p];
                let (k, l) = PAIRS[q];
                out.slots[packed(p, q)] = t[i][j][k][l];
            }
        }
        out
    }

    pub fn to_full(&self) -> Tensor4 {
        let mut t = zero_tensor4();
        for (i, a) in t.iter_mut().enumerate() {
            for (j, b) in a.iter_mut().enumerate() {
                for (k, c) in b.iter_mut().enumerate() {
                    for (l, v) in c.iter_mut().enumerate() {
                        *v = self.get(i, j, k, l);
                    }
                }
            }
        }
        t
    }

    /// The 6×6 bivector matrix `T[(ij), (kl)]`.
    pub fn pair_matrix(&self) -> [[f64; 6]; 6] {
        let mut m = [[0.0; 6]; 6];
        for p in 0..6 {
            for q in 0..6 {
                m[p][q] = self.slots[packed(p, q)];
            }
        }
        m
    }

    /// `(i, j, k, l, value)` for the 21 stored slots, zero-based.
    pub fn independent(&self) -> impl Iterator<Item = (usize, usize, usize, usize, f64)> + '_ {
        (0..6).flat_map(move |p| {
            (p..6).map(move |q| {
                let (i, j) = PAIRS[p];
                let (k, l) = PAIRS[q];
                (i, j, k, l, self.slots[packed(p, q)])
            })
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.slots.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.slots.iter().zip(other.slots.iter()).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    /// `max |T_{ijkl} + T_{iklj} + T_{iljk}|` over all indices.
    pub fn first_bianchi_defect(&self) -> f64 {
        first_bianchi_defect(&self.to_full())
    }

    /// Largest single metric contraction over any two slots.
    pub fn trace_defect(&self, ginv: &Matrix4) -> f64 {
        trace_defect(&self.to_full(), ginv)
    }
}

/// `max |T_{ijkl} + T_{jikl}|` and `max |T_{ijkl} + T_{ijlk}|`.
pub fn antisymmetry_defect(t: &Tensor4) -> f64 {
    let mut worst = 0.0f64;
    for_all(|i, j, k, l| {
        worst = worst.max((t[i][j][k][l] + t[j][i][k][l]).abs()).max((t[i][j][k][l] + t[i][j][l][k]).abs());
    });
    worst
}

pub fn pair_symmetry_defect(t: &Tensor4) -> f64 {
    let mut worst = 0.0f64;
    for_all(|i, j, k, l| worst = worst.max((t[i][j][k][l] - t[k][l][i][j]).abs()));
    worst
}

pub fn first_bianchi_defect(t: &Tensor4) -> f64 {
    let mut worst = 0.0f64;
    for_all(|i, j, k, l| {
        worst = worst.max((t[i][j][k][l] + t[i][k][l][j] + t[i][l][j][k]).abs());
    });
    worst
}

/// Largest entry of `Σ g^{ab} T` contracted over any pair of slots.
pub fn trace_defect(t: &Tensor4, ginv: &Matrix4) -> f64 {
    let mut worst = 0.0f64;
    let slots = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for &(s1, s2) in &slots {
        for x in 0..DIM {
            for y in 0..DIM {
                let mut acc = 0.0;
                for a in 0..DIM {
                    for b in 0..DIM {
                        let mut idx = [0usize; 4];
                        idx[s1] = a;
                        idx[s2] = b;
                        let free: Vec<usize> = (0..4).filter(|s| *s != s1 && *s != s2).collect();
                        idx[free[0]] = x;
                        idx[free[1]] = y;
                        acc += ginv[a][b] * t[idx[0]][idx[1]][idx[2]][idx[3]];
                    }
                }
                worst = worst.max(acc.abs());
            }
        }
    }
    worst
}

fn for_all(mut f: impl FnMut(usize, usize, usize, usize)) {
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    f(i, j, k, l);
                }
            }
        }
    }
}

/// Christoffel symbols of the second kind, `gamma[k][i][j] = Γ^k_{ij}`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ConnectionCoefficients {
    pub gamma: [[[f64; DIM]; DIM]; DIM],
}

impl ConnectionCoefficients {
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[k][i][j]
    }

    /// Sets `Γ^k_{ij}` and `Γ^k_{ji}`.
    pub fn set_symmetric(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.gamma[k][i][j] = v;
        self.gamma[k][j][i] = v;
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    worst = worst.max((self.gamma[k][i][j] - other.gamma[k][i][j]).abs());
                }
            }
        }
        worst
    }

    pub fn lower_symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    worst = worst.max((self.gamma[k][i][j] - self.gamma[k][j][i]).abs());
                }
            }
        }
        worst
    }

    /// `(k, i, j, value)` for nonzero entries with `i <= j`, zero-based.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for k in 0..DIM {
            for i in 0..DIM {
                for j in i..DIM {
                    let v = self.gamma[k][i][j];
                    if v != 0.0 {
                        out.push((k, i, j, v));
                    }
                }
            }
        }
        out
    }
}

/// Ricci tensor, scalar curvature and trace-free Einstein tensor at a point.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct RicciData {
    pub ricci: Matrix4,
    pub scalar: f64,
    /// `G = ρ − (Sc/4) g`.
    pub einstein: Matrix4,
    /// `Sc / 4`, the would-be Einstein constant.
    pub lambda: f64,
}

impl RicciData {
    pub fn max_abs_ricci(&self) -> f64 {
        max_abs_matrix(&self.ricci)
    }

    pub fn max_abs_einstein(&self) -> f64 {
        max_abs_matrix(&self.einstein)
    }
}

pub fn max_abs_matrix(m: &Matrix4) -> f64 {
    m.iter().flatten().fold(0.0, |w, v| w.max(v.abs()))
}

pub fn max_abs_diff_matrix(x: &Matrix4, y: &Matrix4) -> f64 {
    x.iter().flatten().zip(y.iter().flatten()).fold(0.0, |w, (a, b)| w.max((a - b).abs()))
}

/// `Σ g^{ij} m_ij`.
pub fn metric_trace(ginv: &Matrix4, m: &Matrix4) -> f64 {
    let mut acc = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            acc += ginv[i][j] * m[i][j];
        }
    }
    acc
}

/// Components `(∇_m R)_{ijkl}`, stored as `d[m][i][j][k][l]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovariantDerivativeR {
    pub d: [Tensor4; DIM],
}

impl CovariantDerivativeR {
    pub fn zero() -> Self {
        Self { d: [zero_tensor4(); DIM] }
    }

    pub fn get(&self, m: usize, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.d[m][i][j][k][l]
    }

    pub fn max_abs(&self) -> f64 {
        self.d.iter().flatten().flatten().flatten().flatten().fold(0.0, |w, v| w.max(v.abs()))
    }

    /// Largest entry and its zero-based `(m, i, j, k, l)`.
    pub fn argmax(&self) -> (f64, [usize; 5]) {
        let mut best = (0.0, [0; 5]);
        for m in 0..DIM {
            for_all(|i, j, k, l| {
                let v = self.d[m][i][j][k][l].abs();
                if v > best.0 {
                    best = (v, [m, i, j, k, l]);
                }
            });
        }
        best
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.d
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .flatten()
            .zip(other.d.iter().flatten().flatten().flatten().flatten())
            .fold(0.0, |w, (a, b)| w.max((a - b).abs()))
    }

    /// `max |∇_m R_{ijkl} + ∇_k R_{ijlm} + ∇_l R_{ijmk}|`.
    pub fn second_bianchi_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..DIM {
            for_all(|i, j, k, l| {
                let s = self.d[m][i][j][k][l] + self.d[k][i][j][l][m] + self.d[l][i][j][m][k];
                worst = worst.max(s.abs());
            });
        }
        worst
    }
}
