//! Base-B block series: the kernel Q(n, B) and the digit-total identity.
//!
//! Q(n, B) = sum_{j=1}^{B-1} j / (Bn(Bn+j)) plays the role in base B that
//! 1/(2n(2n+1)) plays in base 2. Summing the closed forms of all B single
//! digits telescopes the whole construction down to sum_m A_m, which is
//! Euler's gamma, in every base at once.

use blockseries::closedform::block_series_base;
use blockseries::series::{partial_sum, q_base, Kernel, SumMode};
use blockseries::special::EULER_GAMMA;
use blockseries::Word;

fn main() {
    println!("Q(n, 3) for small n:");
    for n in 1u64..=5 {
        println!("  Q({n}, 3) = {:.15}", q_base(n, 3));
    }

    let w: Word = "12@3".parse().unwrap();
    let limit = block_series_base(&w, 3).unwrap();
    let r = partial_sum(&w, Kernel::QBase { base: 3 }, 1_000_000, SumMode::Sequential).unwrap();
    println!("\nword 12 (base 3): limit = {}", limit.render());
    println!("  closed form  {:.15}", limit.eval());
    println!("  1e6 terms    {:.15} (+ tail <= {:.1e})", r.value, r.tail_bound);

    for base in [2u32, 3, 10] {
        let mut total = 0.0;
        for d in 0..base {
            let w: Word = format!("{d}@{base}").parse().unwrap();
            total += block_series_base(&w, base).unwrap().eval();
        }
        println!(
            "\nbase {base:>2}: sum of all single-digit limits = {total:.15}\n         gamma                           = {EULER_GAMMA:.15}"
        );
    }
}
