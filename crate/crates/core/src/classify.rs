//! Sampling-based classification of Walker metrics.
//!
//! A condition "holds" when its residual vanishes (within tolerance) at every
//! point of a deterministic pseudo-random sample, nothing more. Verdicts use
//! the first-principles oracle; the closed-form values are reported next to
//! them and any disagreement is surfaced as a warning.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_form::{ClosedFormPack, DefiningPartials};
use crate::oracle::{MetricJetField, OracleCurvature};
use crate::tensors::{max_abs_diff_matrix, max_abs_matrix};
use crate::walker_metric::{WalkerMetric, DIM};

/// Where and how densely a metric is sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub count: usize,
    /// `[lo, hi]` per coordinate.
    pub bounds: [[f64; 2]; DIM],
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self { count: 32, bounds: [[-1.0, 1.0]; DIM], seed: 1, tolerance: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("sample count must be at least 1")]
    EmptySample,
    #[error("bounds for u{coord} must be finite with lo <= hi, got [{lo}, {hi}]")]
    BadBounds { coord: usize, lo: f64, hi: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}

impl SamplePlan {
    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        if self.count == 0 {
            return Err(PlanError::EmptySample);
        }
        for (k, &[lo, hi]) in self.bounds.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(PlanError::BadBounds { coord: k + 1, lo, hi });
            }
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(PlanError::BadTolerance(self.tolerance));
        }
        Ok(())
    }

    /// The sample points, identical for identical plans.
    pub fn points(&self) -> Vec<[f64; DIM]> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.count)
            .map(|_| {
                std::array::from_fn(|k| {
                    let [lo, hi] = self.bounds[k];
                    if lo == hi {
                        lo
                    } else {
                        rng.random_range(lo..hi)
                    }
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    /// `holds` iff `residual <= tol`, `fails` iff `residual > 10·tol`.
    pub fn from_residual(residual: f64, tol: f64) -> Self {
        if residual <= tol {
            Verdict::Holds
        } else if residual > 10.0 * tol {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub condition: String,
    pub max_residual: f64,
    pub verdict: Verdict,
    /// Sample point with the largest residual, set unless the verdict is `holds`.
    pub witness: Option<[f64; DIM]>,
    /// Which component or expression attains the largest residual.
    pub witness_component: Option<String>,
    pub details: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub metric: String,
    pub plan: SamplePlan,
    pub entries: Vec<ConditionEntry>,
    pub warnings: Vec<String>,
}

impl ClassificationReport {
    pub fn entry(&self, condition: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.condition == condition)
    }
}

pub const EINSTEIN: &str = "einstein";
pub const EINSTEIN_PDE: &str = "einstein_pde";
pub const RICCI_FLAT: &str = "ricci_flat";
pub const LOCALLY_SYMMETRIC: &str = "locally_symmetric";
pub const LOCALLY_SYMMETRIC_PDE: &str = "locally_symmetric_pde";
pub const LOCALLY_SYMMETRIC_EINSTEIN: &str = "locally_symmetric_einstein";
pub const CONFORMALLY_FLAT: &str = "conformally_flat";

/// The six displayed Einstein PDE expressions, verbatim, in display order.
pub fn einstein_pde_expressions(p: &DefiningPartials) -> [f64; 6] {
    let DefiningPartials { a, b, c, a1, a2, b1, b2, c1, c2, a11, a12, a22, b11, b12, b22, c11, c12, c22 } = *p;
    [
        a11 - b22,
        b12 + c11,
        a12 + c22,
        a1 * c2 + a2 * b2 - a2 * c1 - c2 * c2 + 2.0 * c * a12 + b * a22 - a * c12,
        a2 * b1 - c1 * c2 + c * a11 - a * c11 - c * c12 + b * c22,
        a1 * b1 - b1 * c2 + b2 * c1 - c1 * c1 + a * b11 + 2.0 * c * b12 - b * c12,
    ]
}

/// The ten displayed local-symmetry PDE expressions, verbatim.
pub fn locally_symmetric_pde_expressions(p: &DefiningPartials) -> [f64; 10] {
    let DefiningPartials { a, b, a1, a2, b1, b2, a11, a22, b11, b22, .. } = *p;
    [a1 * a2 * b2, a1 * b1 * b2, a1 * a22, a1 * b11, a2 * b11, b1 * a22, b2 * a22, b2 * b11, a * a11 * b1, b * a2 * b22]
}

const EINSTEIN_PDE_NAMES: [&str; 6] = [
    "a11 - b22",
    "b12 + c11",
    "a12 + c22",
    "a1c2 + a2b2 - a2c1 - c2^2 + 2ca12 + ba22 - ac12",
    "a2b1 - c1c2 + ca11 - ac11 - cc12 + bc22",
    "a1b1 - b1c2 + b2c1 - c1^2 + ab11 + 2cb12 - bc12",
];

const LOCALLY_SYMMETRIC_PDE_NAMES: [&str; 10] =
    ["a1a2b2", "a1b1b2", "a1a22", "a1b11", "a2b11", "b1a22", "b2a22", "b2b11", "aa11b1", "ba2b22"];

/// Closed-form and oracle quantities at one sample point.
#[derive(Clone, Debug)]
pub struct PointEvaluation {
    pub point: [f64; DIM],
    pub closed: ClosedFormPack,
    pub oracle: OracleCurvature,
}

impl PointEvaluation {
    pub fn at(m: &WalkerMetric, point: [f64; DIM]) -> Self {
        let mp = m.at(point);
        Self { point, closed: ClosedFormPack::at(&mp), oracle: OracleCurvature::compute(&MetricJetField::new(&mp)) }
    }

    fn closed_metric(&self) -> [[f64; DIM]; DIM] {
        let p = &self.closed.partials;
        crate::walker_metric::walker_matrix(p.a, p.b, p.c)
    }
}

/// Evaluates the metric at every plan point, in plan order.
pub fn evaluate_samples(m: &WalkerMetric, plan: &SamplePlan) -> Result<Vec<PointEvaluation>, PlanError> {
    plan.validate()?;
    Ok(plan.points().into_par_iter().map(|p| PointEvaluation::at(m, p)).collect())
}

fn nan_as_inf(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Running maximum that remembers where it was attained.
#[derive(Default)]
struct Worst {
    value: f64,
    point: Option<[f64; DIM]>,
    component: Option<String>,
}

impl Worst {
    fn offer(&mut self, v: f64, point: [f64; DIM], component: impl FnOnce() -> String) {
        let v = nan_as_inf(v.abs());
        if self.point.is_none() || v > self.value {
            self.value = v;
            self.point = Some(point);
            self.component = Some(component());
        }
    }

    fn entry(self, condition: &str, tol: f64) -> ConditionEntry {
        let verdict = Verdict::from_residual(self.value, tol);
        let failing = verdict != Verdict::Holds;
        ConditionEntry {
            condition: condition.to_string(),
            max_residual: self.value,
            verdict,
            witness: if failing { self.point } else { None },
            witness_component: if failing { self.component } else { None },
            details: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }
}

fn matrix_argmax(m: &[[f64; DIM]; DIM]) -> (f64, usize, usize) {
    let mut best = (f64::NEG_INFINITY, 0, 0);
    for i in 0..DIM {
        for j in 0..DIM {
            let v = nan_as_inf(m[i][j].abs());
            if v > best.0 {
                best = (v, i, j);
            }
        }
    }
    best
}

fn matrix_entry(m: &[[f64; DIM]; DIM], name: &str, worst: &mut Worst, point: [f64; DIM]) {
    let (v, i, j) = matrix_argmax(m);
    worst.offer(v, point, || format!("{name}_{}{}", i + 1, j + 1));
}

fn disagreement_warning(condition: &str, oracle: Verdict, closed: Verdict) -> Option<String> {
    (oracle != closed).then(|| {
        format!(
            "{condition}: closed-form components give '{closed}' but the first-principles residual gives '{oracle}'"
        )
    })
}

pub fn einstein_entry(evals: &[PointEvaluation], plan: &SamplePlan) -> ConditionEntry {
    let mut oracle = Worst::default();
    let mut closed = Worst::default();
    let mut lambda_min = f64::INFINITY;
    let mut lambda_max = f64::NEG_INFINITY;
    let mut gap = 0.0f64;
    for e in evals {
        matrix_entry(&e.oracle.ricci.einstein, "G", &mut oracle, e.point);
        matrix_entry(&e.closed.ricci.einstein, "G", &mut closed, e.point);
        lambda_min = lambda_min.min(e.oracle.ricci.lambda);
        lambda_max = lambda_max.max(e.oracle.ricci.lambda);
        gap = gap.max(max_abs_diff_matrix(&e.oracle.ricci.einstein, &e.closed.ricci.einstein));
    }
    let closed_residual = closed.value;
    let closed_verdict = Verdict::from_residual(closed_residual, plan.tolerance);
    let mut entry = oracle.entry(EINSTEIN, plan.tolerance);
    entry.details.insert("closed_form_residual".into(), closed_residual);
    entry.details.insert("closed_form_oracle_gap".into(), gap);
    entry.details.insert("lambda_min".into(), lambda_min);
    entry.details.insert("lambda_max".into(), lambda_max);
    entry.warnings.extend(disagreement_warning(EINSTEIN, entry.verdict, closed_verdict));
    if entry.verdict == Verdict::Holds && lambda_max - lambda_min > plan.tolerance {
        entry.warnings.push(format!(
            "{EINSTEIN}: trace-free Ricci vanishes but Sc/4 varies over the sample ({lambda_min} to {lambda_max})"
        ));
    }
    entry
}

pub fn einstein_pde_entry(evals: &[PointEvaluation], plan: &SamplePlan, einstein: Verdict) -> ConditionEntry {
    let mut worst = Worst::default();
    let mut per_line = [0.0f64; 6];
    for e in evals {
        let r = einstein_pde_expressions(&e.closed.partials);
        for (n, v) in r.iter().enumerate() {
            per_line[n] = per_line[n].max(nan_as_inf(v.abs()));
            worst.offer(*v, e.point, || EINSTEIN_PDE_NAMES[n].to_string());
        }
    }
    let mut entry = worst.entry(EINSTEIN_PDE, plan.tolerance);
    for (n, v) in per_line.iter().enumerate() {
        entry.details.insert(format!("line_{}", n + 1), *v);
    }
    if entry.verdict != einstein {
        entry.warnings.push(format!(
            "{EINSTEIN_PDE}: the PDE system gives '{}' but the Einstein tensor gives '{einstein}'",
            entry.verdict
        ));
    }
    entry
}

pub fn ricci_flat_entry(evals: &[PointEvaluation], plan: &SamplePlan) -> ConditionEntry {
    let mut oracle = Worst::default();
    let mut closed = Worst::default();
    let mut sc = 0.0f64;
    for e in evals {
        matrix_entry(&e.oracle.ricci.ricci, "rho", &mut oracle, e.point);
        matrix_entry(&e.closed.ricci.ricci, "rho", &mut closed, e.point);
        sc = sc.max(nan_as_inf(e.oracle.ricci.scalar.abs()));
    }
    let closed_verdict = Verdict::from_residual(closed.value, plan.tolerance);
    let closed_residual = closed.value;
    let mut entry = oracle.entry(RICCI_FLAT, plan.tolerance);
    entry.details.insert("closed_form_residual".into(), closed_residual);
    entry.details.insert("max_abs_scalar_curvature".into(), sc);
    entry.warnings.extend(disagreement_warning(RICCI_FLAT, entry.verdict, closed_verdict));
    entry
}

pub fn locally_symmetric_entry(evals: &[PointEvaluation], plan: &SamplePlan) -> ConditionEntry {
    let mut worst = Worst::default();
    for e in evals {
        let (v, [m, i, j, k, l]) = e.oracle.nabla_r.argmax();
        worst.offer(v, e.point, || format!("nabla_{} R_{}{}{}{}", m + 1, i + 1, j + 1, k + 1, l + 1));
    }
    worst.entry(LOCALLY_SYMMETRIC, plan.tolerance)
}

pub fn locally_symmetric_pde_entry(evals: &[PointEvaluation], plan: &SamplePlan) -> ConditionEntry {
    let mut worst = Worst::default();
    let mut per_expr = [0.0f64; 10];
    for e in evals {
        let r = locally_symmetric_pde_expressions(&e.closed.partials);
        for (n, v) in r.iter().enumerate() {
            per_expr[n] = per_expr[n].max(nan_as_inf(v.abs()));
            worst.offer(*v, e.point, || LOCALLY_SYMMETRIC_PDE_NAMES[n].to_string());
        }
    }
    let mut entry = worst.entry(LOCALLY_SYMMETRIC_PDE, plan.tolerance);
    for (n, v) in per_expr.iter().enumerate() {
        entry.details.insert(LOCALLY_SYMMETRIC_PDE_NAMES[n].to_string(), *v);
    }
    entry
}

pub fn locally_symmetric_einstein_entry(
    einstein: &ConditionEntry,
    symmetric: &ConditionEntry,
    plan: &SamplePlan,
) -> ConditionEntry {
    let worse = if einstein.max_residual >= symmetric.max_residual { einstein } else { symmetric };
    let verdict = Verdict::from_residual(worse.max_residual, plan.tolerance);
    let mut details = BTreeMap::new();
    details.insert("einstein_residual".into(), einstein.max_residual);
    details.insert("locally_symmetric_residual".into(), symmetric.max_residual);
    ConditionEntry {
        condition: LOCALLY_SYMMETRIC_EINSTEIN.into(),
        max_residual: worse.max_residual,
        verdict,
        witness: if verdict == Verdict::Holds { None } else { worse.witness },
        witness_component: if verdict == Verdict::Holds { None } else { worse.witness_component.clone() },
        details,
        warnings: Vec::new(),
    }
}

fn weyl_argmax(w: &crate::tensors::WeylComponents) -> (f64, String) {
    let mut best = (f64::NEG_INFINITY, String::new());
    for (i, j, k, l, v) in w.independent() {
        let v = nan_as_inf(v.abs());
        if v > best.0 {
            best = (v, format!("W_{}", crate::tensors::label(i, j, k, l)));
        }
    }
    best
}

pub fn conformally_flat_entry(evals: &[PointEvaluation], plan: &SamplePlan) -> ConditionEntry {
    let mut worst = Worst::default();
    let mut closed = 0.0f64;
    let mut definition = 0.0f64;
    let mut sc = 0.0f64;
    for e in evals {
        let (v, name) = weyl_argmax(&e.oracle.weyl);
        worst.offer(v, e.point, || name);
        closed = closed.max(nan_as_inf(e.closed.weyl.max_abs()));
        definition = definition.max(nan_as_inf(e.closed.weyl_definition.max_abs()));
        sc = sc.max(nan_as_inf(e.oracle.ricci.scalar.abs()));
    }
    let mut entry = worst.entry(CONFORMALLY_FLAT, plan.tolerance);
    entry.details.insert("closed_form_residual".into(), closed);
    entry.details.insert("definition_residual".into(), definition);
    entry.details.insert("max_abs_scalar_curvature".into(), sc);
    let closed_verdict = Verdict::from_residual(closed, plan.tolerance);
    entry.warnings.extend(disagreement_warning(CONFORMALLY_FLAT, entry.verdict, closed_verdict));
    if entry.verdict == Verdict::Holds && sc > plan.tolerance {
        entry.warnings.push(format!("{CONFORMALLY_FLAT}: Weyl vanishes but |Sc| reaches {sc}"));
    }
    entry
}

fn run<F>(m: &WalkerMetric, plan: &SamplePlan, f: F) -> Result<ConditionEntry, PlanError>
where
    F: FnOnce(&[PointEvaluation], &SamplePlan) -> ConditionEntry,
{
    let evals = evaluate_samples(m, plan)?;
    Ok(f(&evals, plan))
}

/// Residual `max |G_ij|` with `G = ρ − (Sc/4) g`.
pub fn check_einstein(m: &WalkerMetric, plan: &SamplePlan) -> Result<ConditionEntry, PlanError> {
    run(m, plan, einstein_entry)
}

/// The displayed Einstein PDE system, evaluated verbatim.
pub fn einstein_pde_residuals(m: &WalkerMetric, plan: &SamplePlan) -> Result<ConditionEntry, PlanError> {
    run(m, plan, |evals, plan| {
        let einstein = einstein_entry(evals, plan).verdict;
        einstein_pde_entry(evals, plan, einstein)
    })
}

/// Residual `max |ρ_ij|`.
pub fn check_ricci_flat(m: &WalkerMetric, plan: &SamplePlan) -> Result<ConditionEntry, PlanError> {
    run(m, plan, ricci_flat_entry)
}

/// Residual `max |(∇_m R)_ijkl|`.
pub fn check_locally_symmetric(m: &WalkerMetric, plan: &SamplePlan) -> Result<ConditionEntry, PlanError> {
    run(m, plan, locally_symmetric_entry)
}

/// The displayed local-symmetry PDE list, evaluated verbatim.
pub fn locally_symmetric_pde_residuals(m: &WalkerMetric, plan: &SamplePlan) -> Result<ConditionEntry, PlanError> {
    run(m, plan, locally_symmetric_pde_entry)
}

/// Residual `max |W_ijkl|`.
pub fn check_conformally_flat(m: &WalkerMetric, plan: &SamplePlan) -> Result<ConditionEntry, PlanError> {
    run(m, plan, conformally_flat_entry)
}

/// Runs every check on one shared set of sample evaluations.
pub fn classify(m: &WalkerMetric, plan: &SamplePlan) -> Result<ClassificationReport, PlanError> {
    let evals = evaluate_samples(m, plan)?;
    let einstein = einstein_entry(&evals, plan);
    let pde = einstein_pde_entry(&evals, plan, einstein.verdict);
    let ricci_flat = ricci_flat_entry(&evals, plan);
    let symmetric = locally_symmetric_entry(&evals, plan);
    let symmetric_pde = locally_symmetric_pde_entry(&evals, plan);
    let symmetric_einstein = locally_symmetric_einstein_entry(&einstein, &symmetric, plan);
    let conformal = conformally_flat_entry(&evals, plan);
    let entries = vec![einstein, pde, ricci_flat, symmetric, symmetric_pde, symmetric_einstein, conformal];
    let warnings = entries.iter().flat_map(|e| e.warnings.iter().cloned()).collect();
    Ok(ClassificationReport { metric: describe_metric(m), plan: plan.clone(), entries, warnings })
}

pub fn describe_metric(m: &WalkerMetric) -> String {
    format!("{}: a = {}, b = {}, c = {}", m.label(), m.a, m.b, m.c)
}

/// Largest `|ρ − (Sc/4) g|` over the sample, recomputed from `ρ` and `Sc`
/// rather than read from the stored Einstein tensor.
pub fn trace_free_ricci_residual(evals: &[PointEvaluation]) -> f64 {
    evals
        .iter()
        .map(|e| {
            let rd = &e.oracle.ricci;
            let g = e.closed_metric();
            let mut m = [[0.0; DIM]; DIM];
            for i in 0..DIM {
                for j in 0..DIM {
                    m[i][j] = rd.ricci[i][j] - rd.scalar / 4.0 * g[i][j];
                }
            }
            max_abs_matrix(&m)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{poly_field, ScalarField2};

    fn quad(k: f64) -> WalkerMetric {
        WalkerMetric::new(poly_field(&[(2, 0, k)]), poly_field(&[(0, 2, k)]), ScalarField2::zero())
    }

    fn plan() -> SamplePlan {
        SamplePlan::default().with_count(8)
    }

    #[test]
    fn verdict_bands() {
        assert_eq!(Verdict::from_residual(0.0, 1e-8), Verdict::Holds);
        assert_eq!(Verdict::from_residual(1e-8, 1e-8), Verdict::Holds);
        assert_eq!(Verdict::from_residual(5e-8, 1e-8), Verdict::Inconclusive);
        assert_eq!(Verdict::from_residual(1e-7, 1e-8), Verdict::Inconclusive);
        assert_eq!(Verdict::from_residual(1.1e-7, 1e-8), Verdict::Fails);
        assert_eq!(Verdict::from_residual(f64::INFINITY, 1e-8), Verdict::Fails);
    }

    #[test]
    fn plan_validation() {
        assert_eq!(SamplePlan::default().validate(), Ok(()));
        assert_eq!(plan().with_count(0).validate(), Err(PlanError::EmptySample));
        assert!(matches!(plan().with_tolerance(0.0).validate(), Err(PlanError::BadTolerance(_))));
        let mut p = plan();
        p.bounds[2] = [1.0, -1.0];
        assert!(matches!(p.validate(), Err(PlanError::BadBounds { coord: 3, .. })));
    }

    #[test]
    fn points_are_deterministic_and_in_box() {
        let p = SamplePlan::default();
        let pts = p.points();
        assert_eq!(pts, p.points());
        assert_eq!(pts.len(), 32);
        assert!(pts.iter().flatten().all(|v| (-1.0..1.0).contains(v)));
        assert_ne!(pts, p.clone().with_seed(2).points());
    }

    #[test]
    fn quadratic_family_is_einstein_with_lambda_k() {
        let e = check_einstein(&quad(1.0), &plan()).unwrap();
        assert_eq!(e.verdict, Verdict::Holds);
        assert!((e.details["lambda_min"] - 1.0).abs() < 1e-12);
        assert!((e.details["lambda_max"] - 1.0).abs() < 1e-12);
        assert!(e.witness.is_none());
    }

    #[test]
    fn bilinear_a_is_not_einstein() {
        let m = WalkerMetric::new(poly_field(&[(1, 1, 1.0)]), ScalarField2::zero(), ScalarField2::zero());
        let e = check_einstein(&m, &plan()).unwrap();
        assert_eq!(e.verdict, Verdict::Fails);
        assert!((e.max_residual - 0.5).abs() < 1e-12);
        assert!(e.witness.is_some());
        assert!(matches!(e.witness_component.as_deref(), Some("G_23") | Some("G_32")));
    }

    #[test]
    fn einstein_pde_first_line() {
        let m = WalkerMetric::new(poly_field(&[(2, 0, 1.0)]), ScalarField2::zero(), ScalarField2::zero());
        let e = einstein_pde_residuals(&m, &plan()).unwrap();
        assert_eq!(e.verdict, Verdict::Fails);
        assert_eq!(e.details["line_1"], 2.0);
    }

    #[test]
    fn ricci_flat_examples() {
        let zero_b =
            WalkerMetric::new(poly_field(&[(1, 0, 2.0), (0, 0, 3.0)]), ScalarField2::zero(), ScalarField2::zero());
        assert_eq!(check_ricci_flat(&zero_b, &plan()).unwrap().verdict, Verdict::Holds);
        assert_eq!(check_ricci_flat(&quad(1.0), &plan()).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn flat_metric_holds_everywhere() {
        let report = classify(&WalkerMetric::flat(), &plan()).unwrap();
        assert_eq!(report.entries.len(), 7);
        for e in &report.entries {
            assert_eq!(e.verdict, Verdict::Holds, "{}", e.condition);
            assert_eq!(e.max_residual, 0.0);
        }
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn quadratic_weyl_fails() {
        let m = WalkerMetric::new(poly_field(&[(2, 0, 1.0)]), ScalarField2::zero(), ScalarField2::zero());
        let e = check_conformally_flat(&m, &plan()).unwrap();
        assert_eq!(e.verdict, Verdict::Fails);
        assert!((e.max_residual - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn trace_free_ricci_matches_einstein_entry() {
        let evals = evaluate_samples(&quad(-2.0), &plan()).unwrap();
        assert!(trace_free_ricci_residual(&evals) < 1e-12);
    }
}
