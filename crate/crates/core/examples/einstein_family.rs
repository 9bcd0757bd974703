//! The Einstein family with c = 0: a = K u1^2 + A u1 + B(u2),
//! b = K u2^2 + C u2 + D(u1). Valid parameters give rho = K g; a clash
//! between B and D is rejected before any curvature is computed.

use walker_curvature::classify::{check_einstein, SamplePlan};
use walker_curvature::families::{einstein_family_unchecked, make_einstein_family, EinsteinFamilyParams};
use walker_curvature::jets::poly_field;

fn main() {
    let plan = SamplePlan::default();
    let valid = EinsteinFamilyParams {
        k: -0.75,
        a_coeff: 1.0,
        c_coeff: 2.0,
        b_fn: poly_field(&[(0, 0, 3.0)]),
        d_fn: poly_field(&[(0, 0, -1.0)]),
    };
    let m = make_einstein_family(&valid).expect("constraints hold");
    let e = check_einstein(&m, &plan).unwrap();
    println!("a = {}\nb = {}", m.a, m.b);
    println!(
        "einstein: {} (residual {:.1e}), Sc/4 in [{}, {}]",
        e.verdict, e.max_residual, e.details["lambda_min"], e.details["lambda_max"]
    );

    let clash = EinsteinFamilyParams { b_fn: poly_field(&[(0, 1, 1.0)]), d_fn: poly_field(&[(1, 0, 1.0)]), ..valid };
    match make_einstein_family(&clash) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(err) => println!("B = u2, D = u1 rejected: {err}"),
    }
    let forced = check_einstein(&einstein_family_unchecked(&clash), &plan).unwrap();
    println!(
        "forced through anyway: {} at {:?} [{}]",
        forced.verdict,
        forced.witness.unwrap(),
        forced.witness_component.unwrap_or_default()
    );
}
