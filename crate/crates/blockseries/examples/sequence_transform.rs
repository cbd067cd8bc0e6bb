//! The index-doubling transform: R_i = sum over the halving orbit of i.
//!
//! Forward: R_i = r_i + r_{i/2} + r_{i/4} + ... (integer halving until 1).
//! The inverse subtracts r_{i/2} back out, and both directions are exact on
//! rational sequences. Each word's count increments follow an eventually
//! periodic rule r, which the detector recovers; weighting the defects A_i
//! by R then reproduces the word's series limit.

use num_bigint::BigInt;
use num_rational::BigRational;

use blockseries::special::{EULER_GAMMA, LN_2, LN_PI};
use blockseries::transform::{
    forward_transform, inverse_transform, periodic_r_for_word, weighted_sum_checkpoints,
    Detection, SequenceRule,
};
use blockseries::Word;

fn rat(p: i64) -> BigRational {
    BigRational::from(BigInt::from(p))
}

fn main() {
    let r: Vec<BigRational> = [1, 0, 2, -1, 0, 3].iter().map(|&p| rat(p)).collect();
    let big_r = forward_transform(&r);
    let back = inverse_transform(&big_r);
    println!("r       = {:?}", r.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("R       = {:?}", big_r.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("inverse = {:?}", back.iter().map(ToString::to_string).collect::<Vec<_>>());
    assert_eq!(back, r);

    // Count increments N_w(2i) + N_w(2i+1) - 2 N_w(i) are periodic in i;
    // the detector finds the period from a finite window.
    for word in ["1", "0", "11"] {
        let w: Word = format!("{word}@2").parse().unwrap();
        match periodic_r_for_word(&w, 512).unwrap() {
            Detection::Found(rule) => {
                let period: Vec<String> = rule.period().iter().map(ToString::to_string).collect();
                println!("\nword {word}: period {period:?}");
            }
            Detection::NotDetected => println!("\nword {word}: no periodic rule in window"),
        }
    }

    // Weighted defect sums converge to classical constants: the all-ones
    // rule gives gamma, the alternating rule gives log(4/pi).
    println!("\nsum R_i A_i for the all-ones rule:");
    let ones = SequenceRule::constant_one();
    for c in weighted_sum_checkpoints(&ones, &[1_000, 10_000, 100_000, 1_000_000]).unwrap() {
        println!("  {:>9} terms: {:.12}  (gamma - sum = {:.2e})", c.terms, c.lhs, EULER_GAMMA - c.lhs);
    }

    let alternating = SequenceRule::alternating();
    let log_4_over_pi = 2.0 * LN_2 - LN_PI;
    for c in weighted_sum_checkpoints(&alternating, &[1_000_000]).unwrap() {
        println!(
            "alternating rule, {} terms: {:.12} vs log(4/pi) = {:.12}",
            c.terms, c.lhs, log_4_over_pi
        );
    }
}
