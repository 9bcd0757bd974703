//! Metric configuration files.
//!
//! A config is a TOML document that either names a family with its constants
//! or spells out `a`, `b`, `c` as sums of constants, polynomial terms and
//! exponentials. See `docs/FORMATS.md` for the grammar.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::classify::SamplePlan;
use crate::families::{EinsteinFamilyParams, ExponentialExampleParams, FamilyParams, SimpleExample};
use crate::jets::{exp_field, poly_field, ScalarField2};
use crate::walker_metric::WalkerMetric;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}field `{field}`: {message}", line.map(|l| format!("line {l}, ")).unwrap_or_default())]
pub struct ConfigError {
    pub field: String,
    pub message: String,
    pub line: Option<usize>,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into(), line: None }
    }
}

/// Where a metric comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricSource {
    Family(FamilyParams),
    Explicit { a: ScalarField2, b: ScalarField2, c: ScalarField2 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricConfig {
    pub name: Option<String>,
    pub source: MetricSource,
    /// Defaults with any `[sample]` overrides applied.
    pub sample: SamplePlan,
}

/// Accepts TOML integers where reals are expected.
#[derive(Deserialize, Clone, Copy)]
#[serde(untagged)]
enum Real {
    Int(i64),
    Float(f64),
}

impl From<Real> for f64 {
    fn from(r: Real) -> f64 {
        match r {
            Real::Int(i) => i as f64,
            Real::Float(f) => f,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    constant: Option<Real>,
    poly: Option<Vec<(u32, u32, Real)>>,
    exp: Option<Vec<(Real, Real, Real)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSample {
    count: Option<usize>,
    seed: Option<u64>,
    tolerance: Option<Real>,
    #[serde(rename = "box")]
    bounds: Option<[[Real; 2]; 4]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: Option<String>,
    family: Option<toml::Table>,
    a: Option<RawField>,
    b: Option<RawField>,
    c: Option<RawField>,
    sample: Option<RawSample>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEinstein {
    #[serde(rename = "K", default = "zero")]
    k: Real,
    #[serde(rename = "A", default = "zero")]
    a: Real,
    #[serde(rename = "C", default = "zero")]
    c: Real,
    #[serde(rename = "B")]
    b_fn: Option<RawField>,
    #[serde(rename = "D")]
    d_fn: Option<RawField>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimple {
    #[serde(rename = "K", default = "zero")]
    k: Real,
    #[serde(rename = "A")]
    a: Option<Real>,
    #[serde(rename = "B")]
    b: Option<Real>,
}

fn zero() -> Real {
    Real::Float(0.0)
}

fn finite(field: &str, v: Real) -> Result<f64, ConfigError> {
    let x = f64::from(v);
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::new(field, format!("{x} is not a finite real")))
    }
}

fn build_field(field: &str, raw: &RawField) -> Result<ScalarField2, ConfigError> {
    let mut out = ScalarField2::zero();
    if let Some(c) = raw.constant {
        out = out.plus(ScalarField2::Constant(finite(&format!("{field}.constant"), c)?));
    }
    if let Some(terms) = &raw.poly {
        let mut t = Vec::with_capacity(terms.len());
        for (n, &(i, j, coeff)) in terms.iter().enumerate() {
            t.push((i, j, finite(&format!("{field}.poly[{n}]"), coeff)?));
        }
        out = out.plus(poly_field(&t));
    }
    if let Some(exps) = &raw.exp {
        for (n, &(s, p, q)) in exps.iter().enumerate() {
            let name = format!("{field}.exp[{n}]");
            out = out.plus(exp_field(finite(&name, s)?, finite(&name, p)?, finite(&name, q)?));
        }
    }
    Ok(out)
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Names the innermost key mentioned in a toml error message, if any.
fn field_from_message(msg: &str) -> Option<String> {
    let start = msg.find('`')?;
    let rest = &msg[start + 1..];
    let end = rest.find('`')?;
    Some(rest[..end].to_string())
}

/// Top-level integers become floats so `K = 1` reads as a real constant.
fn floatify(value: toml::Value) -> toml::Value {
    match value {
        toml::Value::Table(t) => toml::Value::Table(
            t.into_iter()
                .map(|(k, v)| match v {
                    toml::Value::Integer(i) => (k, toml::Value::Float(i as f64)),
                    other => (k, other),
                })
                .collect(),
        ),
        other => other,
    }
}

fn family_from_table(table: &toml::Table) -> Result<FamilyParams, ConfigError> {
    let name = match table.get("name") {
        Some(toml::Value::String(s)) => s.clone(),
        Some(_) => return Err(ConfigError::new("family.name", "must be a string")),
        None => return Err(ConfigError::new("family.name", "missing family name")),
    };
    let mut rest = table.clone();
    rest.remove("name");
    let value = toml::Value::Table(rest);
    let bad = |e: toml::de::Error| {
        let msg = e.message().to_string();
        let field = field_from_message(&msg).map(|f| format!("family.{f}")).unwrap_or_else(|| "family".into());
        ConfigError::new(field, msg)
    };
    let simple = |which: SimpleExample, value: toml::Value| -> Result<FamilyParams, ConfigError> {
        let raw: RawSimple = value.try_into().map_err(bad)?;
        let constant = match which {
            SimpleExample::ZeroB => raw.a,
            SimpleExample::ZeroA => raw.b,
            SimpleExample::Quadratic4K => None,
        };
        Ok(FamilyParams::Simple {
            which,
            k: finite("family.K", raw.k)?,
            constant: constant.map(|c| finite("family", c)).transpose()?.unwrap_or(0.0),
        })
    };
    match name.as_str() {
        "einstein" => {
            let raw: RawEinstein = value.try_into().map_err(bad)?;
            let field = |f: &Option<RawField>, n: &str| match f {
                Some(r) => build_field(n, r),
                None => Ok(ScalarField2::zero()),
            };
            Ok(FamilyParams::Einstein(EinsteinFamilyParams {
                k: finite("family.K", raw.k)?,
                a_coeff: finite("family.A", raw.a)?,
                c_coeff: finite("family.C", raw.c)?,
                b_fn: field(&raw.b_fn, "family.B")?,
                d_fn: field(&raw.d_fn, "family.D")?,
            }))
        }
        "conformally_flat" => Ok(FamilyParams::ConformallyFlat(floatify(value).try_into().map_err(bad)?)),
        "exponential" => {
            let p: ExponentialExampleParams = floatify(value).try_into().map_err(bad)?;
            Ok(FamilyParams::Exponential(p))
        }
        "zero_b" => simple(SimpleExample::ZeroB, value),
        "zero_a" => simple(SimpleExample::ZeroA, value),
        "quadratic_4k" => simple(SimpleExample::Quadratic4K, value),
        other => Err(ConfigError::new(
            "family.name",
            format!(
                "unknown family `{other}` (expected einstein, conformally_flat, exponential, zero_b, zero_a or quadratic_4k)"
            ),
        )),
    }
}

impl MetricConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            ConfigError {
                field: field_from_message(&msg).unwrap_or_else(|| "<document>".into()),
                message: msg,
                line: e.span().map(|s| line_of(text, s.start)),
            }
        })?;
        let explicit = raw.a.is_some() || raw.b.is_some() || raw.c.is_some();
        let source = match (raw.family, explicit) {
            (Some(_), true) => {
                return Err(ConfigError::new("family", "give either [family] or [a]/[b]/[c], not both"));
            }
            (Some(table), false) => MetricSource::Family(family_from_table(&table)?),
            (None, _) => {
                let get = |f: &Option<RawField>, n: &str| match f {
                    Some(r) => build_field(n, r),
                    None => Err(ConfigError::new(n, format!("missing table [{n}]"))),
                };
                MetricSource::Explicit { a: get(&raw.a, "a")?, b: get(&raw.b, "b")?, c: get(&raw.c, "c")? }
            }
        };
        let mut sample = SamplePlan::default();
        if let Some(s) = raw.sample {
            if let Some(c) = s.count {
                sample.count = c;
            }
            if let Some(seed) = s.seed {
                sample.seed = seed;
            }
            if let Some(t) = s.tolerance {
                sample.tolerance = finite("sample.tolerance", t)?;
            }
            if let Some(b) = s.bounds {
                for (k, [lo, hi]) in b.into_iter().enumerate() {
                    sample.bounds[k] = [finite("sample.box", lo)?, finite("sample.box", hi)?];
                }
            }
            sample.validate().map_err(|e| ConfigError::new("sample", e.to_string()))?;
        }
        Ok(Self { name: raw.name, source, sample })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("<file>", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds the metric, running the family's parameter validation.
    pub fn metric(&self) -> Result<WalkerMetric, ConfigError> {
        let m = match &self.source {
            MetricSource::Family(p) => p.build().map_err(|e| ConfigError::new("family", e.to_string()))?,
            MetricSource::Explicit { a, b, c } => WalkerMetric::new(a.clone(), b.clone(), c.clone()),
        };
        Ok(match &self.name {
            Some(n) => m.with_name(n.clone()),
            None => m,
        })
    }
}
