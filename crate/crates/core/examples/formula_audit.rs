//! Compares every closed-form component list with the first-principles
//! computation on random cubic metrics and prints the worst deviation per row.
//!
//!     cargo run --example formula_audit -- [trials] [seed]

use walker_curvature::audit::{run_audit, AuditConfig, RowStatus};

fn main() {
    let mut args = std::env::args().skip(1);
    let mut cfg = AuditConfig::default();
    if let Some(t) = args.next() {
        cfg.trials = t.parse().expect("trials must be a positive integer");
    }
    if let Some(s) = args.next() {
        cfg.seed = s.parse().expect("seed must be an integer");
    }
    let start = std::time::Instant::now();
    let report = run_audit(&cfg);
    println!("{} metrics x {} points, seed {}", cfg.trials, cfg.points_per_trial, cfg.seed);
    for row in &report.rows {
        let mark = match row.status {
            RowStatus::Ok => "",
            RowStatus::Deviates => "  <- deviates",
            RowStatus::Flagged => "  (flagged)",
        };
        print!("{:30} {:>10.2e}{mark}", row.name, row.max_deviation);
        if let Some(e) = &row.explanation {
            print!("  {e}");
        }
        println!();
    }
    println!("passed: {} ({:.2} s)", report.passed, start.elapsed().as_secs_f64());
}
