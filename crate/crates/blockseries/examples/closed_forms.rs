//! Exact closed forms for block-weighted series.
//!
//! Each sum over n of N_w(n) / (2n(2n+1)) has a limit expressible in
//! gamma, logs of primes, log pi, log Gamma at rationals, and Psi at
//! rationals. The symbolic layer keeps those coefficients as exact
//! rationals, so identities between series can be checked by equality
//! instead of by floating-point proximity.

use blockseries::closedform::{block_series, gamma_pm, delta_pm};
use blockseries::series::Kernel;
use blockseries::Word;

fn main() {
    println!("word   limit of sum N_w(n)/(2n(2n+1))");
    for w in ["0", "1", "00", "01", "10", "11", "101"] {
        let word: Word = format!("{w}@2").parse().unwrap();
        let c = block_series(&word, Kernel::Deg2).unwrap();
        println!("{w:<5}  {} = {:.15}", c.render(), c.eval());
    }

    // The single-digit sums combine into classical constants, and the
    // symbolic forms prove it: the atoms cancel exactly.
    let (sum, diff) = gamma_pm();
    println!("\nS0 + S1 = {}", sum.render());
    println!("S1 - S0 = {}", diff.render());

    let (dsum, ddiff) = delta_pm();
    println!("T0 + T1 = {}", dsum.render());
    println!("T1 - T0 = {}", ddiff.render());

    // Kernel identity: deg2 - (1/4) nn1 = deg3 index by index, so the same
    // relation binds the three closed forms of any word.
    let w: Word = "101@2".parse().unwrap();
    let deg2 = block_series(&w, Kernel::Deg2).unwrap();
    let deg3 = block_series(&w, Kernel::Deg3).unwrap();
    let nn1 = block_series(&w, Kernel::Nn1).unwrap();
    let quarter = num_rational::BigRational::new(1.into(), 4.into());
    let combined = deg2.sub(&nn1.scale(&quarter));
    println!("\ndeg2 - (1/4) nn1 for 101: {}", combined.render());
    println!("deg3 directly:            {}", deg3.render());
    assert_eq!(combined, deg3);
    println!("symbolically equal");
}
