//! The quadratic conformally flat family. Thirteen constants tied by four
//! relations; breaking any one of them leaves a nonzero Weyl tensor.

use walker_curvature::classify::{check_conformally_flat, SamplePlan};
use walker_curvature::families::{
    conformally_flat_family_unchecked, make_conformally_flat_family, ConformallyFlatFamilyParams,
    CONFORMAL_RELATION_NAMES,
};

fn main() {
    let plan = SamplePlan::default();
    let p = ConformallyFlatFamilyParams {
        e: 1.0,
        f: 1.0,
        g: 0.5,
        h: 0.5,
        i: 2.0,
        j: 1.0,
        k: 1.0,
        l: 1.0,
        m: 2.0,
        n: 0.0,
        p: 1.0,
        q: 0.0,
        r: 1.0,
    };
    for (name, v) in CONFORMAL_RELATION_NAMES.iter().zip(p.relations()) {
        println!("{name:48} {v:+.3e}");
    }
    let m = make_conformally_flat_family(&p).unwrap();
    let e = check_conformally_flat(&m, &plan).unwrap();
    println!(
        "W residual {:.2e}, max |Sc| {:.2e}: {}",
        e.max_residual, e.details["max_abs_scalar_curvature"], e.verdict
    );

    let broken = ConformallyFlatFamilyParams { p: 1.5, ..p };
    let e = check_conformally_flat(&conformally_flat_family_unchecked(&broken), &plan).unwrap();
    println!(
        "with P = 1.5: {} (W residual {:.2e} at {})",
        e.verdict,
        e.max_residual,
        e.witness_component.unwrap_or_default()
    );
}
