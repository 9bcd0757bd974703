//! Reports produced by the command-line front end.
//!
//! The structured form is TOML and round-trips exactly; the text form is for
//! reading. Both are deterministic for a fixed input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::audit::AuditReport;
use crate::classify::ClassificationReport;
use crate::closed_form::{unlisted_components, ClosedFormPack};
use crate::oracle::{MetricJetField, OracleCurvature};
use crate::tensors::{label, max_abs_diff_matrix, AlgebraicCurvature, PAIRS};
use crate::walker_metric::{inverse_metric, Matrix4, WalkerMetric, DIM};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricEcho {
    pub name: String,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl MetricEcho {
    pub fn of(m: &WalkerMetric) -> Self {
        Self { name: m.label().to_string(), a: m.a.to_string(), b: m.b.to_string(), c: m.c.to_string() }
    }
}

/// Every tensor at one point, from the closed-form lists, with the largest
/// gap to the oracle for each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointTables {
    pub point: [f64; DIM],
    pub metric: Matrix4,
    pub inverse_metric: Matrix4,
    /// Nonzero `Γ^k_ij`, `i <= j`, keyed like `"G^1_13"`.
    pub christoffel: BTreeMap<String, f64>,
    /// The 21 stored `R_ijkl` slots, keyed like `"1313"`.
    pub curvature: BTreeMap<String, f64>,
    pub ricci: Matrix4,
    pub scalar_curvature: f64,
    pub einstein: Matrix4,
    pub lambda: f64,
    /// The 21 stored `W_ijkl` slots.
    pub weyl: BTreeMap<String, f64>,
    pub nabla_r_max: f64,
    pub nabla_r_argmax: String,
    /// Closed-form minus oracle, largest absolute entry per object.
    pub oracle_gap: BTreeMap<String, f64>,
    /// Components absent from the closed-form lists, as filled in by the cyclic identity.
    pub derived: BTreeMap<String, f64>,
}

impl PointTables {
    pub fn at(m: &WalkerMetric, point: [f64; DIM]) -> Self {
        let mp = m.at(point);
        let closed = ClosedFormPack::at(&mp);
        let oracle = OracleCurvature::compute(&MetricJetField::new(&mp));
        let christoffel = closed
            .connection
            .nonzero()
            .into_iter()
            .map(|(k, i, j, v)| (format!("G^{}_{}{}", k + 1, i + 1, j + 1), v))
            .collect();
        let (nmax, [mm, i, j, k, l]) = oracle.nabla_r.argmax();
        let mut oracle_gap = BTreeMap::new();
        oracle_gap.insert("christoffel".into(), closed.connection.max_abs_diff(&oracle.christoffel));
        oracle_gap.insert("curvature".into(), closed.curvature.max_abs_diff(&oracle.riemann));
        oracle_gap.insert("ricci".into(), max_abs_diff_matrix(&closed.ricci.ricci, &oracle.ricci.ricci));
        oracle_gap.insert("scalar_curvature".into(), (closed.ricci.scalar - oracle.ricci.scalar).abs());
        oracle_gap.insert("einstein".into(), max_abs_diff_matrix(&closed.ricci.einstein, &oracle.ricci.einstein));
        oracle_gap.insert("weyl".into(), closed.weyl.max_abs_diff(&oracle.weyl));
        oracle_gap.insert("weyl_definition".into(), closed.weyl_definition.max_abs_diff(&oracle.weyl));
        let derived = unlisted_components(&mp)
            .into_iter()
            .map(|u| (format!("{}_{}{}{}{}", u.tensor, u.label[0], u.label[1], u.label[2], u.label[3]), u.value))
            .collect();
        Self {
            point,
            metric: mp.g,
            inverse_metric: inverse_metric(&mp),
            christoffel,
            curvature: slot_map(&closed.curvature),
            ricci: closed.ricci.ricci,
            scalar_curvature: closed.ricci.scalar,
            einstein: closed.ricci.einstein,
            lambda: closed.ricci.lambda,
            weyl: slot_map(&closed.weyl),
            nabla_r_max: nmax,
            nabla_r_argmax: if nmax == 0.0 {
                "none".into()
            } else {
                format!("nabla_{} R_{}", mm + 1, label(i, j, k, l))
            },
            oracle_gap,
            derived,
        }
    }
}

fn slot_map(t: &AlgebraicCurvature) -> BTreeMap<String, f64> {
    t.independent().map(|(i, j, k, l, v)| (label(i, j, k, l), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub metric: Option<MetricEcho>,
    pub points: Vec<PointTables>,
    pub classification: Option<ClassificationReport>,
    pub audit: Option<AuditReport>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_structured(&self) -> String {
        toml::to_string(self).expect("report fields are all representable in TOML")
    }

    pub fn from_structured(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(m) = &self.metric {
            let _ = writeln!(out, "metric {}\n  a = {}\n  b = {}\n  c = {}", m.name, m.a, m.b, m.c);
        }
        for p in &self.points {
            render_point(&mut out, p);
        }
        if let Some(c) = &self.classification {
            render_classification(&mut out, c);
        }
        if let Some(a) = &self.audit {
            render_audit(&mut out, a);
        }
        if !self.warnings.is_empty() {
            let _ = writeln!(out, "\nwarnings");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        out
    }
}

fn num(v: f64) -> String {
    // Drop the sign of negative zero.
    format!("{:.6e}", v + 0.0)
}

fn render_matrix(out: &mut String, title: &str, m: &Matrix4) {
    let _ = writeln!(out, "  {title}");
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>14}", num(*v))).collect();
        let _ = writeln!(out, "    {}", cells.join(""));
    }
}

fn render_pair_matrix(out: &mut String, title: &str, slots: &BTreeMap<String, f64>) {
    let _ = writeln!(out, "  {title} as a 6x6 pair matrix (rows/cols 12 13 14 23 24 34)");
    for &(i, j) in &PAIRS {
        let mut cells = String::new();
        for &(k, l) in &PAIRS {
            let key = if (i, j) <= (k, l) { label(i, j, k, l) } else { label(k, l, i, j) };
            let _ = write!(cells, "{:>14}", num(slots[&key]));
        }
        let _ = writeln!(out, "    {}{}  {cells}", i + 1, j + 1);
    }
}

fn render_list(out: &mut String, title: &str, prefix: &str, entries: &BTreeMap<String, f64>) {
    let _ = writeln!(out, "  {title}");
    let nonzero: Vec<_> = entries.iter().filter(|(_, v)| **v != 0.0).collect();
    if nonzero.is_empty() {
        let _ = writeln!(out, "    (all zero)");
    }
    for (k, v) in nonzero {
        let _ = writeln!(out, "    {prefix}{k} = {}", num(*v));
    }
}

fn render_point(out: &mut String, p: &PointTables) {
    let _ = writeln!(out, "\npoint ({}, {}, {}, {})", p.point[0], p.point[1], p.point[2], p.point[3]);
    render_matrix(out, "g", &p.metric);
    render_matrix(out, "g^-1", &p.inverse_metric);
    render_list(out, "Christoffel symbols (nonzero, i <= j)", "", &p.christoffel);
    render_list(out, "curvature R_ijkl (nonzero stored slots)", "R_", &p.curvature);
    render_pair_matrix(out, "curvature", &p.curvature);
    render_matrix(out, "Ricci rho_ij", &p.ricci);
    let _ = writeln!(out, "  scalar curvature Sc = {}", num(p.scalar_curvature));
    let _ = writeln!(out, "  Sc/4 = {}", num(p.lambda));
    render_matrix(out, "Einstein G_ij = rho - (Sc/4) g", &p.einstein);
    render_list(out, "Weyl W_ijkl (nonzero stored slots)", "W_", &p.weyl);
    render_pair_matrix(out, "Weyl", &p.weyl);
    let _ = writeln!(out, "  max |nabla R| = {} at {}", num(p.nabla_r_max), p.nabla_r_argmax);
    let _ = writeln!(out, "  derived by the cyclic identity");
    for (k, v) in &p.derived {
        let _ = writeln!(out, "    {k} = {}", num(*v));
    }
    let _ = writeln!(out, "  closed form vs first principles (max abs difference)");
    for (k, v) in &p.oracle_gap {
        let _ = writeln!(out, "    {k:<18} {}", num(*v));
    }
}

fn render_classification(out: &mut String, c: &ClassificationReport) {
    let _ = writeln!(out, "\nclassification of {}", c.metric);
    let _ = writeln!(out, "  {} points, seed {}, tolerance {:e}", c.plan.count, c.plan.seed, c.plan.tolerance);
    for e in &c.entries {
        let _ = write!(out, "  {:<28} {:<13} max residual {}", e.condition, e.verdict.to_string(), num(e.max_residual));
        if let Some(w) = e.witness {
            let _ = write!(out, "  witness ({}, {}, {}, {})", w[0], w[1], w[2], w[3]);
        }
        if let Some(c) = &e.witness_component {
            let _ = write!(out, " [{c}]");
        }
        let _ = writeln!(out);
        for (k, v) in &e.details {
            let _ = writeln!(out, "      {k} = {}", num(*v));
        }
    }
}

fn render_audit(out: &mut String, a: &AuditReport) {
    let _ = writeln!(
        out,
        "\nformula audit: {} trials x {} points, degree {}, seed {}",
        a.config.trials, a.config.points_per_trial, a.config.degree, a.config.seed
    );
    for r in &a.rows {
        let status = match r.status {
            crate::audit::RowStatus::Ok => "ok",
            crate::audit::RowStatus::Deviates => "DEVIATES",
            crate::audit::RowStatus::Flagged => "flagged",
        };
        let _ = write!(out, "  {:<28} {:>12}  {status}", r.name, num(r.max_deviation));
        if let Some(e) = &r.explanation {
            let _ = write!(out, "  ({e})");
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(out, "  result: {}", if a.passed { "pass" } else { "deviation found" });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, SamplePlan};
    use crate::jets::{exp_field, poly_field, ScalarField2};

    fn sample_report() -> Report {
        let m = WalkerMetric::new(
            poly_field(&[(2, 0, 1.0), (1, 1, -0.5)]),
            exp_field(0.3, 1.0, -1.0),
            poly_field(&[(0, 3, 0.25)]),
        )
        .with_name("sample");
        let plan = SamplePlan::default().with_count(3);
        Report {
            command: "report".into(),
            metric: Some(MetricEcho::of(&m)),
            points: vec![PointTables::at(&m, [0.1, -0.2, 0.0, 0.0])],
            classification: Some(classify(&m, &plan).unwrap()),
            audit: None,
            warnings: vec!["example warning".into()],
        }
    }

    #[test]
    fn structured_round_trip() {
        let r = sample_report();
        let text = r.to_structured();
        let back = Report::from_structured(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_structured(), text);
    }

    #[test]
    fn text_has_both_layouts() {
        let text = sample_report().to_text();
        assert!(text.contains("R_1313"));
        assert!(text.contains("6x6 pair matrix"));
        assert!(text.contains("scalar curvature Sc"));
        assert!(text.contains("classification of sample"));
    }

    #[test]
    fn flat_point_is_zero() {
        let p = PointTables::at(&WalkerMetric::flat(), [0.0; 4]);
        assert!(p.christoffel.is_empty());
        assert!(p.curvature.values().all(|v| *v == 0.0));
        assert_eq!(p.scalar_curvature, 0.0);
        assert!(p.weyl.values().all(|v| *v == 0.0));
        let _ = ScalarField2::zero();
    }
}
