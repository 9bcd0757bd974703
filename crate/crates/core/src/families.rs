//! Constructors for the explicit solution families and examples.
//!
//! Constructors validate their parameters before building anything. The
//! functional constraints of the Einstein family are checked by sampling, in
//! the same spirit as [`crate::classify`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jets::{exp_field, poly_field, Coord, Jet3, ScalarField2};
use crate::walker_metric::WalkerMetric;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("constraint `{constraint}` violated at (u1, u2) = ({}, {}): residual {residual}", witness[0], witness[1])]
    ConstraintViolation { constraint: String, witness: [f64; 2], residual: f64 },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
}

/// Number of `(u1, u2)` points used to validate functional constraints.
pub const VALIDATION_POINTS: usize = 16;
/// Absolute tolerance for the sampled functional constraints.
pub const EINSTEIN_CONSTRAINT_TOL: f64 = 1e-9;
/// Tolerance for the algebraic relations between conformally flat constants,
/// relative to the size of the constants involved.
pub const CONFORMAL_RELATION_TOL: f64 = 1e-12;

fn validation_points() -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..VALIDATION_POINTS).map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]).collect()
}

/// Parameters of the Einstein family with `c = 0`:
/// `a = K u1² + A u1 + B(u2)`, `b = K u2² + C u2 + D(u1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinFamilyParams {
    pub k: f64,
    pub a_coeff: f64,
    pub c_coeff: f64,
    /// `B`, a function of `u2` only.
    pub b_fn: ScalarField2,
    /// `D`, a function of `u1` only.
    pub d_fn: ScalarField2,
}

impl EinsteinFamilyParams {
    fn a_field(&self) -> ScalarField2 {
        poly_field(&[(2, 0, self.k), (1, 0, self.a_coeff)]).plus(self.b_fn.clone())
    }

    fn b_field(&self) -> ScalarField2 {
        poly_field(&[(0, 2, self.k), (0, 1, self.c_coeff)]).plus(self.d_fn.clone())
    }

    /// Residuals `[B₂D₁, (D₁ a)₁, (B₂ b)₂]` at one point.
    pub fn constraint_residuals(&self, u1: f64, u2: f64) -> [f64; 3] {
        let bj = self.b_fn.eval(u1, u2);
        let dj = self.d_fn.eval(u1, u2);
        let b2 = bj.partial(Coord::U2);
        let d1 = dj.partial(Coord::U1);
        let a = self.a_field().eval(u1, u2);
        let b = self.b_field().eval(u1, u2);
        [b2.value() * d1.value(), (d1 * a).partial(Coord::U1).value(), (b2 * b).partial(Coord::U2).value()]
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        for (name, v) in [("K", self.k), ("A", self.a_coeff), ("C", self.c_coeff)] {
            if !v.is_finite() {
                return Err(FamilyError::InvalidParameter { name: name.into(), reason: "not finite".into() });
            }
        }
        let points = validation_points();
        // dependence on the wrong variable shows up in any jet entry with that variable
        let off_axis = |jet: &Jet3, coord: Coord| -> f64 {
            jet.entries()
                .filter(|&(i, j, _)| match coord {
                    Coord::U1 => i > 0,
                    Coord::U2 => j > 0,
                })
                .map(|(_, _, v)| v.abs())
                .fold(0.0, f64::max)
        };
        for &[u1, u2] in &points {
            let r = off_axis(&self.b_fn.eval(u1, u2), Coord::U1);
            if r > EINSTEIN_CONSTRAINT_TOL {
                return Err(FamilyError::ConstraintViolation {
                    constraint: "B depends on u2 only".into(),
                    witness: [u1, u2],
                    residual: r,
                });
            }
            let r = off_axis(&self.d_fn.eval(u1, u2), Coord::U2);
            if r > EINSTEIN_CONSTRAINT_TOL {
                return Err(FamilyError::ConstraintViolation {
                    constraint: "D depends on u1 only".into(),
                    witness: [u1, u2],
                    residual: r,
                });
            }
        }
        const NAMES: [&str; 3] = ["B2 D1 = 0", "(D1 (K u1^2 + A u1 + B))_1 = 0", "(B2 (K u2^2 + C u2 + D))_2 = 0"];
        for (n, name) in NAMES.iter().enumerate() {
            for &[u1, u2] in &points {
                let r = self.constraint_residuals(u1, u2)[n];
                if r.is_nan() || r.abs() > EINSTEIN_CONSTRAINT_TOL {
                    return Err(FamilyError::ConstraintViolation {
                        constraint: (*name).into(),
                        witness: [u1, u2],
                        residual: r,
                    });
                }
            }
        }
        Ok(())
    }
}

/// The Einstein family metric, after validating the constraints.
pub fn make_einstein_family(p: &EinsteinFamilyParams) -> Result<WalkerMetric, FamilyError> {
    p.validate()?;
    Ok(einstein_family_unchecked(p))
}

/// The same metric without validation, for probing constraint violations.
pub fn einstein_family_unchecked(p: &EinsteinFamilyParams) -> WalkerMetric {
    WalkerMetric::new(p.a_field(), p.b_field(), ScalarField2::zero()).with_name("einstein_family")
}

/// Constants of the conformally flat family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConformallyFlatFamilyParams {
    #[serde(rename = "E", default)]
    pub e: f64,
    #[serde(rename = "F", default)]
    pub f: f64,
    #[serde(rename = "G", default)]
    pub g: f64,
    #[serde(rename = "H", default)]
    pub h: f64,
    #[serde(rename = "I", default)]
    pub i: f64,
    #[serde(rename = "J", default)]
    pub j: f64,
    #[serde(rename = "K", default)]
    pub k: f64,
    #[serde(rename = "L", default)]
    pub l: f64,
    #[serde(rename = "M", default)]
    pub m: f64,
    #[serde(rename = "N", default)]
    pub n: f64,
    #[serde(rename = "P", default)]
    pub p: f64,
    #[serde(rename = "Q", default)]
    pub q: f64,
    #[serde(rename = "R", default)]
    pub r: f64,
}

pub const CONFORMAL_RELATION_NAMES: [&str; 4] =
    ["EN - JM + IP = 0", "EL - FM + IG = 0", "ER - KM + I(H+Q) = 0", "K(LP - NG) + R(JG - FP) + (Q+H)(FN - JL) = 0"];

impl ConformallyFlatFamilyParams {
    fn values(&self) -> [f64; 13] {
        [self.e, self.f, self.g, self.h, self.i, self.j, self.k, self.l, self.m, self.n, self.p, self.q, self.r]
    }

    /// The four relations, in the listed order.
    pub fn relations(&self) -> [f64; 4] {
        let Self { e, f, g, h, i, j, k, l, m, n, p, q, r } = *self;
        [
            e * n - j * m + i * p,
            e * l - f * m + i * g,
            e * r - k * m + i * (h + q),
            k * (l * p - n * g) + r * (j * g - f * p) + (q + h) * (f * n - j * l),
        ]
    }

    /// Tolerance applied to relation `n`: [`CONFORMAL_RELATION_TOL`] times the
    /// natural size of its terms (quadratic for the first three, cubic for
    /// the last).
    pub fn relation_tolerance(&self, n: usize) -> f64 {
        let s = self.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        CONFORMAL_RELATION_TOL * if n < 3 { s * s } else { s * s * s }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        const LETTERS: [&str; 13] = ["E", "F", "G", "H", "I", "J", "K", "L", "M", "N", "P", "Q", "R"];
        for (name, v) in LETTERS.iter().zip(self.values()) {
            if !v.is_finite() {
                return Err(FamilyError::InvalidParameter { name: (*name).into(), reason: "not finite".into() });
            }
        }
        for (n, r) in self.relations().into_iter().enumerate() {
            if r.abs() > self.relation_tolerance(n) {
                return Err(FamilyError::ConstraintViolation {
                    constraint: CONFORMAL_RELATION_NAMES[n].into(),
                    witness: [0.0, 0.0],
                    residual: r,
                });
            }
        }
        Ok(())
    }
}

/// The conformally flat family metric, after checking the four relations.
pub fn make_conformally_flat_family(p: &ConformallyFlatFamilyParams) -> Result<WalkerMetric, FamilyError> {
    p.validate()?;
    Ok(conformally_flat_family_unchecked(p))
}

pub fn conformally_flat_family_unchecked(p: &ConformallyFlatFamilyParams) -> WalkerMetric {
    let a = poly_field(&[(2, 0, p.i / 2.0), (1, 0, p.j), (1, 1, p.e), (0, 1, p.f), (0, 0, p.k)]);
    let b = poly_field(&[(0, 2, -p.i / 2.0), (0, 1, p.l), (1, 1, p.m), (1, 0, p.n), (0, 0, p.r)]);
    let c = poly_field(&[(2, 0, p.m / 2.0), (1, 0, p.p), (0, 2, p.e / 2.0), (0, 1, p.g), (0, 0, p.q + p.h)]);
    WalkerMetric::new(a, b, c).with_name("conformally_flat_family")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentialExampleParams {
    pub r1: f64,
    pub r2: f64,
}

/// `a = −(r1/r2) e^{r1 u1 + u2}`, `b = −r1 r2 e^{r1 u1 + u2}`, `c = r2 e^{r1 u1 + u2}`.
pub fn make_exponential_example(p: &ExponentialExampleParams) -> Result<WalkerMetric, FamilyError> {
    if p.r2 == 0.0 {
        return Err(FamilyError::InvalidParameter { name: "r2".into(), reason: "must be nonzero".into() });
    }
    if !p.r1.is_finite() || !p.r2.is_finite() {
        return Err(FamilyError::InvalidParameter { name: "r1, r2".into(), reason: "not finite".into() });
    }
    let (r1, r2) = (p.r1, p.r2);
    Ok(WalkerMetric::new(exp_field(-r1 / r2, r1, 1.0), exp_field(-r1 * r2, r1, 1.0), exp_field(r2, r1, 1.0))
        .with_name("exponential"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleExample {
    /// `b = c = 0`, `a = K u1 + A`.
    ZeroB,
    /// `a = c = 0`, `b = K u2 + B`.
    ZeroA,
    /// `a = K u1²`, `b = K u2²`, `c = 0`.
    Quadratic4K,
}

/// `constant` is `A` for [`SimpleExample::ZeroB`], `B` for
/// [`SimpleExample::ZeroA`], and ignored for the quadratic example.
pub fn make_simple_example(which: SimpleExample, k: f64, constant: f64) -> WalkerMetric {
    let zero = ScalarField2::zero;
    match which {
        SimpleExample::ZeroB => {
            WalkerMetric::new(poly_field(&[(1, 0, k), (0, 0, constant)]), zero(), zero()).with_name("zero_b")
        }
        SimpleExample::ZeroA => {
            WalkerMetric::new(zero(), poly_field(&[(0, 1, k), (0, 0, constant)]), zero()).with_name("zero_a")
        }
        SimpleExample::Quadratic4K => {
            WalkerMetric::new(poly_field(&[(2, 0, k)]), poly_field(&[(0, 2, k)]), zero()).with_name("quadratic_4k")
        }
    }
}

/// Any of the named families, ready to build.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams {
    Einstein(EinsteinFamilyParams),
    ConformallyFlat(ConformallyFlatFamilyParams),
    Exponential(ExponentialExampleParams),
    Simple { which: SimpleExample, k: f64, constant: f64 },
}

impl FamilyParams {
    pub fn build(&self) -> Result<WalkerMetric, FamilyError> {
        match self {
            FamilyParams::Einstein(p) => make_einstein_family(p),
            FamilyParams::ConformallyFlat(p) => make_conformally_flat_family(p),
            FamilyParams::Exponential(p) => make_exponential_example(p),
            FamilyParams::Simple { which, k, constant } => Ok(make_simple_example(*which, *k, *constant)),
        }
    }
}
