//! Loads a metric config and prints the full tensor report at a point.
//!
//!     cargo run --example report_config -- examples/configs/mixed.toml

use std::path::PathBuf;

use walker_curvature::config::MetricConfig;
use walker_curvature::report::{MetricEcho, PointTables, Report};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/quadratic_4k.toml"));
    let cfg = match MetricConfig::load(&path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let m = cfg.metric().unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(1);
    });
    let report = Report {
        command: "report".into(),
        metric: Some(MetricEcho::of(&m)),
        points: vec![PointTables::at(&m, [0.25, -0.5, 0.0, 0.0])],
        classification: None,
        audit: None,
        warnings: Vec::new(),
    };
    print!("{}", report.to_text());
}
