//! Shifted kernels and the telescoping expansion they come from.
//!
//! The defect A_n = 1/n - log((n+1)/n) satisfies
//! A_n = 1/(2n(2n+1)) + A_{2n} + A_{2n+1}. Unfolding that identity K levels
//! deep writes A_n as a finite double sum plus a remainder below 2^-K; the
//! shifted kernels Q^(k) arise from running the same telescoping against
//! A^(k)_n = A_n - k/(n(n+k)).

use blockseries::closedform::block_series;
use blockseries::series::{a_expansion_check, partial_sum, Kernel, SumMode};
use blockseries::Word;

fn main() {
    println!("expanding A_5 through K levels:");
    println!("{:>3}  {:>13}  {:>10}  {:>10}", "K", "partial", "remainder", "bound");
    for levels in [1u32, 2, 4, 8, 12, 16, 20] {
        let chk = a_expansion_check(5, levels).unwrap();
        println!(
            "{levels:>3}  {:.11}  {:>10.3e}  {:>10.3e}",
            chk.partial, chk.remainder, chk.remainder_bound
        );
    }

    // k = 0 recovers the plain degree-2 kernel; higher k change the kernel
    // but not the telescoping, so every k has its own closed form.
    let w: Word = "1@2".parse().unwrap();
    println!("\nword 1 under shifted kernels:");
    for k in 0u32..=3 {
        let kernel = Kernel::Qk { k };
        let limit = block_series(&w, kernel).unwrap();
        let r = partial_sum(&w, kernel, 100_000, SumMode::Sequential).unwrap();
        println!(
            "  k={k}: limit {} = {:.12}   (1e5 terms: {:.12})",
            limit.render(),
            limit.eval(),
            r.value
        );
    }
}
