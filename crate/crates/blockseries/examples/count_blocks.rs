//! Counting digit blocks: how often a word occurs in the base-B expansion
//! of n, occurrences allowed to overlap.
//!
//! Words with a leading zero are matched against the expansion padded with
//! |w| - 1 zeros on the left, so "01" occurs once in 1 = "1" (read as "01").
//! The all-zeros word is the exception: its occurrences must lie entirely
//! inside the written digits.

use blockseries::{count_block, Word};

fn main() {
    let ones: Word = "11@2".parse().unwrap();
    let zero_one: Word = "01@2".parse().unwrap();
    let zeros: Word = "00@2".parse().unwrap();

    println!("n   binary  N_11  N_01  N_00");
    for n in 1u64..=16 {
        println!(
            "{n:<3} {:>6}  {:>4}  {:>4}  {:>4}",
            format!("{n:b}"),
            count_block(n, &ones),
            count_block(n, &zero_one),
            count_block(n, &zeros),
        );
    }

    // Same machinery in any base from 2 to 16.
    let word12: Word = "12@3".parse().unwrap();
    println!();
    for n in [5u64, 14, 50, 140] {
        let ternary: String = to_base(n, 3);
        println!(
            "N_12(base 3) of {n:>4} = {}  (ternary {ternary})",
            count_block(n, &word12)
        );
    }

    // Single-digit counts partition the expansion: across all digits of the
    // base they add up to exactly the number of digits written.
    let n = 2025u64;
    let total: u64 = (0..10)
        .map(|d| {
            let w: Word = format!("{d}@10").parse().unwrap();
            count_block(n, &w)
        })
        .sum();
    println!("\ndigit counts of {n} across 0..9 sum to {total} digits");
}

fn to_base(mut n: u64, base: u64) -> String {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(char::from_digit((n % base) as u32, 16).unwrap());
        n /= base;
    }
    digits.iter().rev().collect()
}
