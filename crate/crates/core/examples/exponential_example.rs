//! a = -(r1/r2) e^(r1 u1 + u2), b = -r1 r2 e^(r1 u1 + u2), c = r2 e^(r1 u1 + u2).
//! Prints the Ricci residual and the six Einstein PDE lines for a few rate pairs.

use walker_curvature::classify::{check_ricci_flat, einstein_pde_residuals, SamplePlan};
use walker_curvature::families::{make_exponential_example, ExponentialExampleParams};

fn main() {
    let plan = SamplePlan::default();
    for (r1, r2) in [(1.0, 1.0), (1.0, -1.0), (2.0, 1.0), (1.0, -3.0)] {
        let m = make_exponential_example(&ExponentialExampleParams { r1, r2 }).unwrap();
        let rf = check_ricci_flat(&m, &plan).unwrap();
        let pde = einstein_pde_residuals(&m, &plan).unwrap();
        println!("r1 = {r1}, r2 = {r2}: ricci_flat {} ({:.2e})", rf.verdict, rf.max_residual);
        for (line, v) in &pde.details {
            println!("    {line}: {v:.2e}");
        }
    }
}
