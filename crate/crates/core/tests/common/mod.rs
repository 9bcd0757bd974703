//! Generators shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use walker_curvature::families::{ConformallyFlatFamilyParams, EinsteinFamilyParams};
use walker_curvature::jets::{poly_field, Monomial, ScalarField2};
use walker_curvature::walker_metric::{WalkerMetric, DIM};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coeff(rng: &mut impl Rng) -> f64 {
    rng.random_range(-2.0..=2.0)
}

/// Uniform in `±[0.5, 2]`, so never close to zero.
fn nonzero(rng: &mut impl Rng) -> f64 {
    let v: f64 = rng.random_range(0.5..=2.0);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

fn poly_in_u1(rng: &mut impl Rng, degree: u32) -> ScalarField2 {
    let terms: Vec<_> = (0..=degree).map(|i| (i, 0, coeff(rng))).collect();
    poly_field(&terms)
}

fn poly_in_u2(rng: &mut impl Rng, degree: u32) -> ScalarField2 {
    let terms: Vec<_> = (0..=degree).map(|j| (0, j, coeff(rng))).collect();
    poly_field(&terms)
}

fn constant(rng: &mut impl Rng) -> ScalarField2 {
    poly_field(&[(0, 0, coeff(rng))])
}

/// A parameter set meeting all three constraints. `variant` cycles through
/// the ways of meeting them: constant `B`, `D`; `K = C = 0` with linear `B`;
/// `K = C = 0`, `D = 0` with cubic `B`; and the two mirror images.
pub fn valid_einstein_params(rng: &mut impl Rng, variant: usize) -> EinsteinFamilyParams {
    let zero = ScalarField2::zero;
    match variant % 5 {
        0 => EinsteinFamilyParams {
            k: coeff(rng),
            a_coeff: coeff(rng),
            c_coeff: coeff(rng),
            b_fn: constant(rng),
            d_fn: constant(rng),
        },
        1 => EinsteinFamilyParams {
            k: 0.0,
            a_coeff: coeff(rng),
            c_coeff: 0.0,
            b_fn: poly_in_u2(rng, 1),
            d_fn: constant(rng),
        },
        2 => EinsteinFamilyParams { k: 0.0, a_coeff: coeff(rng), c_coeff: 0.0, b_fn: poly_in_u2(rng, 3), d_fn: zero() },
        3 => EinsteinFamilyParams {
            k: 0.0,
            a_coeff: 0.0,
            c_coeff: coeff(rng),
            b_fn: constant(rng),
            d_fn: poly_in_u1(rng, 1),
        },
        _ => EinsteinFamilyParams { k: 0.0, a_coeff: 0.0, c_coeff: coeff(rng), b_fn: zero(), d_fn: poly_in_u1(rng, 3) },
    }
}

/// `B = β u2`, `D = δ u1` with `β δ ≠ 0`.
pub fn violating_einstein_params(rng: &mut impl Rng) -> EinsteinFamilyParams {
    EinsteinFamilyParams {
        k: coeff(rng),
        a_coeff: coeff(rng),
        c_coeff: coeff(rng),
        b_fn: poly_field(&[(0, 1, nonzero(rng))]),
        d_fn: poly_field(&[(1, 0, nonzero(rng))]),
    }
}

/// Free constants drawn at random; `P`, `G` and `H + Q` solved from the
/// first three relations (which forces the fourth when `I ≠ 0`).
pub fn valid_conformal_params(rng: &mut impl Rng) -> ConformallyFlatFamilyParams {
    let mut p = ConformallyFlatFamilyParams {
        e: coeff(rng),
        f: coeff(rng),
        h: coeff(rng),
        i: nonzero(rng),
        j: coeff(rng),
        k: coeff(rng),
        l: coeff(rng),
        m: coeff(rng),
        n: coeff(rng),
        r: coeff(rng),
        ..Default::default()
    };
    solve_dependent(&mut p);
    p
}

fn solve_dependent(p: &mut ConformallyFlatFamilyParams) {
    p.p = (p.j * p.m - p.e * p.n) / p.i;
    p.g = (p.f * p.m - p.e * p.l) / p.i;
    p.q = (p.k * p.m - p.e * p.r) / p.i - p.h;
}

/// A set violating relation `which` (0-based) and no other.
pub fn conformal_params_violating(rng: &mut impl Rng, which: usize) -> ConformallyFlatFamilyParams {
    let mut p = valid_conformal_params(rng);
    let bump = nonzero(rng);
    match which {
        0 => {
            // P enters the last relation through KL - RF.
            p.f = nonzero(rng);
            p.r = p.k * p.l / p.f;
            solve_dependent(&mut p);
            p.p += bump;
        }
        1 => {
            p.j = nonzero(rng);
            p.r = p.k * p.n / p.j;
            solve_dependent(&mut p);
            p.g += bump;
        }
        2 => {
            p.j = nonzero(rng);
            p.l = p.f * p.n / p.j;
            solve_dependent(&mut p);
            p.h += bump;
        }
        _ => {
            // With I = E = M = 0 the first three hold identically; K is then
            // solved so the fourth equals `bump`.
            p = ConformallyFlatFamilyParams {
                f: coeff(rng),
                g: coeff(rng),
                h: coeff(rng),
                j: coeff(rng),
                l: nonzero(rng),
                p: nonzero(rng),
                q: coeff(rng),
                r: coeff(rng),
                ..Default::default()
            };
            let rest = p.r * (p.j * p.g - p.f * p.p) + (p.q + p.h) * (p.f * p.n - p.j * p.l);
            p.k = (bump - rest) / (p.l * p.p - p.n * p.g);
        }
    }
    p
}

/// A polynomial metric of total degree `degree` with coefficients in `[−2, 2]`.
pub fn random_polynomial_metric(rng: &mut impl Rng, degree: u32) -> WalkerMetric {
    let mut field = || {
        let mut terms = Vec::new();
        for n in 0..=degree {
            for i in 0..=n {
                terms.push((i, n - i, coeff(rng)));
            }
        }
        poly_field(&terms)
    };
    let (a, b, c) = (field(), field(), field());
    WalkerMetric::new(a, b, c)
}

pub fn random_point(rng: &mut impl Rng) -> [f64; DIM] {
    std::array::from_fn(|_| rng.random_range(-1.0..=1.0))
}

pub fn poly_strategy(degree: u32) -> impl Strategy<Value = ScalarField2> {
    let n = ((degree + 1) * (degree + 2) / 2) as usize;
    prop::collection::vec(-2.0..=2.0f64, n).prop_map(move |cs| {
        let mut terms = Vec::with_capacity(cs.len());
        let mut it = cs.into_iter();
        for total in 0..=degree {
            for i in 0..=total {
                terms.push(Monomial { pow_u1: i, pow_u2: total - i, coeff: it.next().unwrap() });
            }
        }
        ScalarField2::Polynomial(terms)
    })
}

/// Separable exponentials with moderate rates, to keep values O(1) on the box.
pub fn exp_strategy() -> impl Strategy<Value = ScalarField2> {
    (-1.0..=1.0f64, -1.0..=1.0f64, -1.0..=1.0f64).prop_map(|(s, p, q)| ScalarField2::Exponential {
        scale: s,
        rate_u1: p,
        rate_u2: q,
    })
}

pub fn field_strategy() -> impl Strategy<Value = ScalarField2> {
    prop_oneof![
        3 => poly_strategy(3),
        1 => exp_strategy(),
        1 => (poly_strategy(2), exp_strategy()).prop_map(|(p, e)| p.plus(e)),
    ]
}

pub fn metric_strategy() -> impl Strategy<Value = WalkerMetric> {
    (field_strategy(), field_strategy(), field_strategy()).prop_map(|(a, b, c)| WalkerMetric::new(a, b, c))
}

pub fn point_strategy() -> impl Strategy<Value = [f64; DIM]> {
    prop::array::uniform4(-1.0..=1.0f64)
}
