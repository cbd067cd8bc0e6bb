//! The digamma function and Gauss's finite closed form at rationals.
//!
//! Psi(p/q) for 0 < p < q is an elementary expression: gamma, log(2q), a
//! cotangent, and fewer than q/2 cosine-weighted log-sine terms. This is
//! what lets block-series limits be written without any infinite sum.

use blockseries::special::{digamma, gauss_digamma, PositiveReal};

fn main() {
    println!("x      Psi(x)");
    for (p, q) in [(1u64, 2u64), (1, 3), (2, 3), (1, 4), (3, 4), (5, 6)] {
        let x = PositiveReal::new(p as f64 / q as f64).unwrap();
        println!("{p}/{q}    {:+.15}", digamma(x));
    }

    // The asymptotic evaluation and the finite Gauss sum are two routes to
    // the same number; here they agree to near machine precision.
    println!("\nGauss form of Psi(2/5):");
    let g = gauss_digamma(2, 5).unwrap();
    for term in &g.terms {
        println!("  {:+.15}", term.value());
    }
    println!("  total  {:+.15}", g.value);
    let direct = digamma(PositiveReal::new(0.4).unwrap());
    println!("  direct {direct:+.15}");
    println!("  |diff| {:.1e}", (g.value - direct).abs());

    // Larger arguments reduce by the recurrence Psi(x+1) = Psi(x) + 1/x,
    // so Psi(1) = -gamma anchors the integer values.
    let psi_one = digamma(PositiveReal::new(1.0).unwrap());
    println!("\nPsi(1) = {psi_one:.15} (this is -gamma)");
}
