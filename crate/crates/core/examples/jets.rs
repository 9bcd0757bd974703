//! Exact derivative jets of the defining functions, checked against central
//! differences.

use walker_curvature::jets::{exp_field, finite_difference_jet, poly_field, Jet3};

fn main() {
    let f = poly_field(&[(3, 0, 1.0), (1, 2, -2.0), (0, 1, 0.5)]).plus(exp_field(0.25, 1.0, -0.5));
    let (u1, u2) = (0.4, -0.3);
    let exact = f.eval(u1, u2);
    let fd = finite_difference_jet(&f, u1, u2, 1e-3);
    println!("f = {f}");
    println!("at ({u1}, {u2}):");
    for (i, j, v) in exact.entries() {
        println!("  d1^{i} d2^{j} f = {v:>12.8}   (differences: {:>12.8})", fd.d(i, j));
    }
    println!("max gap to differences: {:.2e}", exact.max_abs_diff(&fd));

    // Products carry derivatives by the Leibniz rule.
    let g = f.eval(u1, u2);
    let sq: Jet3 = g * g;
    println!("d1 d2 (f^2) = {:.8}", sq.d(1, 1));
    println!("2 (f f12 + f1 f2) = {:.8}", 2.0 * (g.value() * g.d(1, 1) + g.d(1, 0) * g.d(0, 1)));
}
