//! Parallel curvature. Constant a, b are flat; a = K u1^2, b = K u2^2 is
//! curved yet still has nabla R = 0; a small u2 term in a breaks it.

use walker_curvature::classify::{check_locally_symmetric, locally_symmetric_pde_residuals, SamplePlan};
use walker_curvature::jets::{poly_field, ScalarField2};
use walker_curvature::oracle::{nabla_r_finite_difference, OracleCurvature, FD_STEP};
use walker_curvature::walker_metric::WalkerMetric;

fn main() {
    let plan = SamplePlan::default();
    let cases = [
        ("constant", WalkerMetric::new(poly_field(&[(0, 0, 2.0)]), poly_field(&[(0, 0, 1.0)]), ScalarField2::zero())),
        ("u1^2, u2^2", WalkerMetric::new(poly_field(&[(2, 0, 1.0)]), poly_field(&[(0, 2, 1.0)]), ScalarField2::zero())),
        (
            "u1^2 + u2, u2^2",
            WalkerMetric::new(
                poly_field(&[(2, 0, 1.0), (0, 1, 1.0)]),
                poly_field(&[(0, 2, 1.0)]),
                ScalarField2::zero(),
            ),
        ),
    ];
    for (name, m) in &cases {
        let e = check_locally_symmetric(m, &plan).unwrap();
        let pde = locally_symmetric_pde_residuals(m, &plan).unwrap();
        let point = [0.3, -0.2, 0.0, 0.0];
        let jets = OracleCurvature::at(m, point).nabla_r;
        let fd = nabla_r_finite_difference(m, point, FD_STEP);
        println!(
            "{name:16} {} |nabla R| {:.2e}, PDE list {:.2e}, jet vs differences {:.1e}",
            e.verdict,
            e.max_residual,
            pde.max_residual,
            jets.max_abs_diff(&fd)
        );
    }
}
