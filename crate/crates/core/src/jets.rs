//! Truncated Taylor jets in the two coordinates `(u1, u2)`.
//!
//! A [`Jet3`] holds a function value together with every partial derivative
//! `∂^{i+j} f / ∂u1^i ∂u2^j` for `i + j <= order`, where `order <= 3`. The
//! entries are derivatives, not Taylor coefficients, so `d(2, 0)` of `u1²` is
//! `2` regardless of the base point. Products follow the Leibniz rule and are
//! truncated to the smaller order of the two operands; [`Jet3::partial`]
//! shifts the table by one and lowers the order.
//!
//! Third order is the smallest order that closes everything built on top:
//! curvature needs second derivatives of the defining functions and the
//! covariant derivative of curvature needs one more.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Highest derivative order carried by a jet.
pub const MAX_ORDER: usize = 3;

const BINOM: [[f64; 4]; 4] = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];

/// One of the two coordinates the defining functions depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    U1,
    U2,
}

/// Value and partial derivatives through `order` of a function of `(u1, u2)`.
///
/// Mixed partials are stored once per multi-index, so their symmetry holds by
/// construction. Entries above `order` are kept at zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3 {
    order: usize,
    d: [[f64; 4]; 4],
}

impl Jet3 {
    /// The zero jet at the given order.
    pub fn zero(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        Self { order, d: [[0.0; 4]; 4] }
    }

    /// A constant function at full order.
    pub fn constant(value: f64) -> Self {
        let mut jet = Self::zero(MAX_ORDER);
        jet.d[0][0] = value;
        jet
    }

    /// The coordinate function `u1` or `u2` evaluated at `at`.
    pub fn coordinate(coord: Coord, at: f64) -> Self {
        let mut jet = Self::constant(at);
        match coord {
            Coord::U1 => jet.d[1][0] = 1.0,
            Coord::U2 => jet.d[0][1] = 1.0,
        }
        jet
    }

    /// Builds a jet from a full derivative table; entries with `i + j > order`
    /// are discarded.
    pub fn from_table(order: usize, table: [[f64; 4]; 4]) -> Self {
        let mut jet = Self::zero(order);
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i + j <= order {
                    jet.d[i][j] = v;
                }
            }
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.d[0][0]
    }

    /// `∂^{i+j} f / ∂u1^i ∂u2^j`; zero beyond the jet's order.
    pub fn d(&self, i: usize, j: usize) -> f64 {
        if i + j <= self.order {
            self.d[i][j]
        } else {
            0.0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i + j <= self.order, "entry ({i},{j}) outside order {}", self.order);
        self.d[i][j] = v;
    }

    /// Iterates `(i, j, derivative)` over every stored multi-index.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.order).flat_map(move |n| (0..=n).map(move |i| (i, n - i, self.d[i][n - i])))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_table(order.min(self.order), self.d)
    }

    /// The jet of `∂f/∂coord`, one order lower.
    ///
    /// # Panics
    /// If the jet has order 0: there is nothing left to differentiate.
    pub fn partial(&self, coord: Coord) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        let mut out = Self::zero(self.order - 1);
        for n in 0..self.order {
            for i in 0..=n {
                let j = n - i;
                out.d[i][j] = match coord {
                    Coord::U1 => self.d[i + 1][j],
                    Coord::U2 => self.d[i][j + 1],
                };
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        for row in out.d.iter_mut() {
            for v in row.iter_mut() {
                *v *= factor;
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|(_, _, v)| v.is_finite())
    }

    /// Largest absolute difference over the multi-indices both jets carry.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let order = self.order.min(other.order);
        self.truncate(order).entries().map(|(i, j, v)| (v - other.d[i][j]).abs()).fold(0.0, f64::max)
    }
}

impl Add for Jet3 {
    type Output = Jet3;

    fn add(self, rhs: Jet3) -> Jet3 {
        let mut out = Jet3::zero(self.order.min(rhs.order));
        for n in 0..=out.order {
            for i in 0..=n {
                out.d[i][n - i] = self.d[i][n - i] + rhs.d[i][n - i];
            }
        }
        out
    }
}

impl AddAssign for Jet3 {
    fn add_assign(&mut self, rhs: Jet3) {
        *self = *self + rhs;
    }
}

impl Sub for Jet3 {
    type Output = Jet3;

    fn sub(self, rhs: Jet3) -> Jet3 {
        self + (-rhs)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;

    fn neg(self) -> Jet3 {
        self.scale(-1.0)
    }
}

/// Leibniz product: `d[α] = Σ_{β≤α} C(α,β) x[β] y[α−β]`.
impl Mul for Jet3 {
    type Output = Jet3;

    fn mul(self, rhs: Jet3) -> Jet3 {
        let mut out = Jet3::zero(self.order.min(rhs.order));
        for n in 0..=out.order {
            for a1 in 0..=n {
                let a2 = n - a1;
                let mut acc = 0.0;
                for b1 in 0..=a1 {
                    for b2 in 0..=a2 {
                        acc += BINOM[a1][b1] * BINOM[a2][b2] * self.d[b1][b2] * rhs.d[a1 - b1][a2 - b2];
                    }
                }
                out.d[a1][a2] = acc;
            }
        }
        out
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;

    fn mul(self, rhs: f64) -> Jet3 {
        self.scale(rhs)
    }
}

/// A single term `coeff · u1^pow_u1 · u2^pow_u2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Monomial {
    pub pow_u1: u32,
    pub pow_u2: u32,
    pub coeff: f64,
}

/// Coarse classification of a [`ScalarField2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Constant,
    Polynomial,
    SeparableExponential,
    Sum,
}

/// A smooth function of `(u1, u2)` whose jets are available in closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarField2 {
    Constant(f64),
    Polynomial(Vec<Monomial>),
    /// `scale · exp(rate_u1 · u1 + rate_u2 · u2)`.
    Exponential {
        scale: f64,
        rate_u1: f64,
        rate_u2: f64,
    },
    Sum(Vec<ScalarField2>),
}

/// Polynomial field from `(pow_u1, pow_u2, coeff)` triples.
pub fn poly_field(terms: &[(u32, u32, f64)]) -> ScalarField2 {
    ScalarField2::Polynomial(terms.iter().map(|&(pow_u1, pow_u2, coeff)| Monomial { pow_u1, pow_u2, coeff }).collect())
}

/// `s · e^{p·u1 + q·u2}`.
pub fn exp_field(s: f64, p: f64, q: f64) -> ScalarField2 {
    ScalarField2::Exponential { scale: s, rate_u1: p, rate_u2: q }
}

fn falling(n: u32, k: usize) -> f64 {
    (0..k as u32).map(|t| n as f64 - t as f64).product()
}

fn monomial_jet(m: &Monomial, u1: f64, u2: f64) -> Jet3 {
    let mut jet = Jet3::zero(MAX_ORDER);
    for n in 0..=MAX_ORDER {
        for p in 0..=n {
            let q = n - p;
            if p as u32 > m.pow_u1 || q as u32 > m.pow_u2 {
                continue;
            }
            let c1 = falling(m.pow_u1, p) * u1.powi((m.pow_u1 - p as u32) as i32);
            let c2 = falling(m.pow_u2, q) * u2.powi((m.pow_u2 - q as u32) as i32);
            jet.d[p][q] = m.coeff * c1 * c2;
        }
    }
    jet
}

impl ScalarField2 {
    pub fn zero() -> Self {
        ScalarField2::Constant(0.0)
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            ScalarField2::Constant(_) => FieldKind::Constant,
            ScalarField2::Polynomial(_) => FieldKind::Polynomial,
            ScalarField2::Exponential { .. } => FieldKind::SeparableExponential,
            ScalarField2::Sum(_) => FieldKind::Sum,
        }
    }

    /// Exact third-order jet at `(u1, u2)`.
    pub fn eval(&self, u1: f64, u2: f64) -> Jet3 {
        match self {
            ScalarField2::Constant(v) => Jet3::constant(*v),
            ScalarField2::Polynomial(terms) => {
                terms.iter().fold(Jet3::zero(MAX_ORDER), |acc, m| acc + monomial_jet(m, u1, u2))
            }
            ScalarField2::Exponential { scale, rate_u1, rate_u2 } => {
                let base = scale * (rate_u1 * u1 + rate_u2 * u2).exp();
                let mut jet = Jet3::zero(MAX_ORDER);
                for n in 0..=MAX_ORDER {
                    for i in 0..=n {
                        let j = n - i;
                        jet.d[i][j] = base * rate_u1.powi(i as i32) * rate_u2.powi(j as i32);
                    }
                }
                jet
            }
            ScalarField2::Sum(parts) => parts.iter().fold(Jet3::zero(MAX_ORDER), |acc, f| acc + f.eval(u1, u2)),
        }
    }

    pub fn value(&self, u1: f64, u2: f64) -> f64 {
        self.eval(u1, u2).value()
    }

    /// Sum of two fields; polynomial and constant parts are merged.
    pub fn plus(self, other: ScalarField2) -> ScalarField2 {
        let mut parts = Vec::new();
        let mut monomials = Vec::new();
        for f in [self, other] {
            f.flatten_into(&mut parts, &mut monomials);
        }
        if !monomials.is_empty() {
            parts.insert(0, ScalarField2::Polynomial(monomials));
        }
        match parts.len() {
            0 => ScalarField2::zero(),
            1 => parts.pop().unwrap(),
            _ => ScalarField2::Sum(parts),
        }
    }

    fn flatten_into(self, parts: &mut Vec<ScalarField2>, monomials: &mut Vec<Monomial>) {
        match self {
            ScalarField2::Constant(v) => {
                if v != 0.0 {
                    monomials.push(Monomial { pow_u1: 0, pow_u2: 0, coeff: v });
                }
            }
            ScalarField2::Polynomial(terms) => monomials.extend(terms),
            ScalarField2::Sum(inner) => {
                for f in inner {
                    f.flatten_into(parts, monomials);
                }
            }
            exp @ ScalarField2::Exponential { .. } => parts.push(exp),
        }
    }
}

impl fmt::Display for ScalarField2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField2::Constant(v) => write!(f, "{v}"),
            ScalarField2::Polynomial(terms) if terms.is_empty() => write!(f, "0"),
            ScalarField2::Polynomial(terms) => {
                for (n, m) in terms.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}", m.coeff)?;
                    match m.pow_u1 {
                        0 => {}
                        1 => write!(f, "·u1")?,
                        p => write!(f, "·u1^{p}")?,
                    }
                    match m.pow_u2 {
                        0 => {}
                        1 => write!(f, "·u2")?,
                        p => write!(f, "·u2^{p}")?,
                    }
                }
                Ok(())
            }
            ScalarField2::Exponential { scale, rate_u1, rate_u2 } => {
                write!(f, "{scale}·exp({rate_u1}·u1 + {rate_u2}·u2)")
            }
            ScalarField2::Sum(parts) => {
                for (n, p) in parts.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({p})")?;
                }
                Ok(())
            }
        }
    }
}

/// Central-difference estimate of every partial through order 3, using only
/// point values of `field`. Independent of the closed-form jets.
pub fn finite_difference_jet(field: &ScalarField2, u1: f64, u2: f64, h: f64) -> Jet3 {
    assert!(h > 0.0, "finite-difference step must be positive");
    let f = |s: f64, t: f64| field.value(u1 + s * h, u2 + t * h);
    let mut jet = Jet3::zero(MAX_ORDER);
    let h2 = h * h;
    let h3 = h2 * h;

    jet.d[0][0] = f(0.0, 0.0);
    jet.d[1][0] = (f(1.0, 0.0) - f(-1.0, 0.0)) / (2.0 * h);
    jet.d[0][1] = (f(0.0, 1.0) - f(0.0, -1.0)) / (2.0 * h);

    jet.d[2][0] = (f(1.0, 0.0) - 2.0 * f(0.0, 0.0) + f(-1.0, 0.0)) / h2;
    jet.d[0][2] = (f(0.0, 1.0) - 2.0 * f(0.0, 0.0) + f(0.0, -1.0)) / h2;
    jet.d[1][1] = (f(1.0, 1.0) - f(1.0, -1.0) - f(-1.0, 1.0) + f(-1.0, -1.0)) / (4.0 * h2);

    jet.d[3][0] = (f(2.0, 0.0) - 2.0 * f(1.0, 0.0) + 2.0 * f(-1.0, 0.0) - f(-2.0, 0.0)) / (2.0 * h3);
    jet.d[0][3] = (f(0.0, 2.0) - 2.0 * f(0.0, 1.0) + 2.0 * f(0.0, -1.0) - f(0.0, -2.0)) / (2.0 * h3);
    // second difference in one direction of a first difference in the other
    jet.d[2][1] = ((f(1.0, 1.0) - 2.0 * f(0.0, 1.0) + f(-1.0, 1.0))
        - (f(1.0, -1.0) - 2.0 * f(0.0, -1.0) + f(-1.0, -1.0)))
        / (2.0 * h3);
    jet.d[1][2] = ((f(1.0, 1.0) - 2.0 * f(1.0, 0.0) + f(1.0, -1.0))
        - (f(-1.0, 1.0) - 2.0 * f(-1.0, 0.0) + f(-1.0, -1.0)))
        / (2.0 * h3);
    jet
}
