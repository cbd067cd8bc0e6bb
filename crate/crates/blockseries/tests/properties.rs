//! Cross-cutting mathematical invariants, checked against independent
//! oracles and by randomized property tests.
//!
//! The headline identity: summing the closed forms of all single-digit
//! words in a base recovers sum_m A_m, which this file evaluates with a
//! gamma-free Euler-Maclaurin oracle rather than a stored constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use blockseries::closedform::{block_series, block_series_base};
use blockseries::digits::expand;
use blockseries::series::{partial_sum, q_base, Kernel, SumMode};
use blockseries::special::{
    a_tail_sum, reciprocal_diff_sum, weierstrass_sum, PositiveReal,
};
use blockseries::transform::{forward_transform, inverse_transform};
use blockseries::{count_block, Word};

fn pos(x: f64) -> PositiveReal {
    PositiveReal::new(x).unwrap()
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

/// A_x = 1/x - log((x+1)/x) for real x.
fn a_real(x: f64) -> f64 {
    1.0 / x - (1.0 / x).ln_1p()
}

/// sum_{m > N} A_m by Euler-Maclaurin at a = N+1:
/// integral + A(a)/2 - A'(a)/12, accurate to O(a^-5).
fn a_tail_oracle(n: u64) -> f64 {
    let a = (n + 1) as f64;
    let integral = (a + 1.0) * (1.0 / a).ln_1p() - 1.0;
    let a_deriv = -1.0 / (a * a) + 1.0 / (a * (a + 1.0));
    integral + a_real(a) / 2.0 - a_deriv / 12.0
}

/// sum_{m >= 1} A_m evaluated with no reference to gamma: a direct partial
/// sum (small terms first) plus the Euler-Maclaurin tail.
fn a_series_oracle() -> f64 {
    let n = 10_000u64;
    let mut acc = 0.0;
    for m in (1..=n).rev() {
        acc += a_real(m as f64);
    }
    acc + a_tail_oracle(n)
}

#[test]
fn digit_closed_forms_total_the_defect_series() {
    let oracle = a_series_oracle();
    for base in [2u32, 3, 10] {
        let mut total = 0.0;
        for d in 0..base {
            let w: Word = format!("{d}@{base}").parse().unwrap();
            total += block_series_base(&w, base).unwrap().eval();
        }
        let gap = (total - oracle).abs();
        assert!(
            gap <= 1e-10,
            "base {base}: digit total {total} vs oracle {oracle}, gap {gap:e}"
        );
    }
}

#[test]
fn reciprocal_diff_sum_matches_direct_summation() {
    let n = 1_000_000u64;
    for a in 1..=4u64 {
        for b in 1..=3u64 {
            let (af, bf) = (a as f64, b as f64);
            let mut acc = 0.0;
            for m in (1..=n).rev() {
                let an = af * m as f64;
                acc += 1.0 / an - 1.0 / (an + bf);
            }
            // Leading tail: sum_{m > N} b/(a m (a m + b)) ~ (b/a^2)/N.
            let direct = acc + bf / (af * af * n as f64);
            let closed = reciprocal_diff_sum(pos(af), pos(bf));
            let gap = (direct - closed).abs();
            assert!(gap <= 1e-6, "a={a} b={b}: gap {gap:e}");
        }
    }
}

#[test]
fn weierstrass_sum_matches_direct_summation() {
    let n = 1_000_000u64;
    for x in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let mut acc = 0.0;
        for r in (1..=n).rev() {
            let q = x / r as f64;
            acc += q - q.ln_1p();
        }
        // Leading tail: sum_{r > N} (x^2/2) r^-2 ~ (x^2/2)/N.
        let direct = acc + x * x / 2.0 / n as f64;
        let closed = weierstrass_sum(pos(x));
        let gap = (direct - closed).abs();
        assert!(gap <= 1e-6, "x={x}: gap {gap:e}");
    }
}

#[test]
fn a_tail_sum_matches_direct_summation() {
    let n = 1_000_000u64;
    for a in 1..=4u64 {
        for b in 0..=3u64 {
            let (af, bf) = (a as f64, b as f64);
            let start = if b == 0 { 1 } else { 0 };
            let mut acc = 0.0;
            for m in (start..=n).rev() {
                acc += a_real(af * m as f64 + bf);
            }
            // Midpoint integral of the 1/(2 m^2) leading term.
            let tail = 1.0 / (2.0 * af * (af * (n as f64 + 0.5) + bf));
            let direct = acc + tail;
            let closed = a_tail_sum(pos(af), bf).unwrap();
            let gap = (direct - closed).abs();
            assert!(gap <= 1e-6, "a={a} b={b}: gap {gap:e}");
        }
    }
}

#[test]
fn partial_sums_converge_at_every_decade() {
    let cases: [(&str, Kernel); 4] = [
        ("1@2", Kernel::Deg2),
        ("11@2", Kernel::Deg3),
        ("1@2", Kernel::Nn1),
        ("2@3", Kernel::QBase { base: 3 }),
    ];
    for (w, kernel) in cases {
        let w = word(w);
        let closed = block_series(&w, kernel).unwrap().eval();
        let mut last_error = f64::INFINITY;
        for terms in [1_000u64, 10_000, 100_000, 1_000_000] {
            let r = partial_sum(&w, kernel, terms, SumMode::Sequential).unwrap();
            let error = closed - r.value;
            assert!(error >= -1e-13, "{w} {kernel:?} at {terms}: overshoot {error:e}");
            assert!(
                error < last_error,
                "{w} {kernel:?} at {terms}: error {error:e} did not shrink from {last_error:e}"
            );
            assert!(error <= r.tail_bound + 1e-13);
            last_error = error;
        }
    }
}

#[test]
fn parallel_mode_agrees_with_sequential() {
    for (w, kernel) in [
        ("1@2", Kernel::Deg2),
        ("011@2", Kernel::Deg3),
        ("12@3", Kernel::QBase { base: 3 }),
        ("10@2", Kernel::Qk { k: 2 }),
    ] {
        let w = word(w);
        let seq = partial_sum(&w, kernel, 100_000, SumMode::Sequential).unwrap();
        let par = partial_sum(&w, kernel, 100_000, SumMode::Parallel).unwrap();
        assert!(
            (seq.value - par.value).abs() <= 1e-12,
            "{w} {kernel:?}: sequential {} vs parallel {}",
            seq.value,
            par.value
        );
        assert_eq!(seq.tail_bound, par.tail_bound);
    }
}

fn digits_to_word(digits: &[u32], base: u32) -> Word {
    let s: String = digits
        .iter()
        .map(|&d| char::from_digit(d, 16).unwrap())
        .collect();
    format!("{s}@{base}").parse().unwrap()
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Occurrences never exceed the digit count of n.
    #[test]
    fn count_bounded_by_digit_length(
        n in 0u64..=u64::MAX,
        base in 2u32..=10,
        digits in proptest::collection::vec(0u32..10, 1..=3),
    ) {
        let digits: Vec<u32> = digits.into_iter().map(|d| d % base).collect();
        let w = digits_to_word(&digits, base);
        let count = count_block(n, &w);
        let len = expand(n, base).unwrap().len() as u64;
        prop_assert!(count <= len, "count {count} exceeds digit count {len}");
    }

    /// Single-digit counts partition the expansion: summing over all digits
    /// of the base gives exactly the number of digits.
    #[test]
    fn single_digit_counts_partition_the_expansion(
        n in 0u64..=u64::MAX,
        base in 2u32..=10,
    ) {
        let total: u64 = (0..base)
            .map(|d| count_block(n, &digits_to_word(&[d], base)))
            .sum();
        prop_assert_eq!(total, expand(n, base).unwrap().len() as u64);
    }

    /// deg2(n) - (1/4) nn1(n) = deg3(n) exactly, in rational arithmetic.
    #[test]
    fn kernel_identity_is_exact(n in 1i64..=1_000_000_000) {
        let deg2 = rat(1, 2 * n * (2 * n + 1));
        let nn1 = rat(1, n * (n + 1));
        let deg3 = rat(1, 2 * n) * rat(1, 2 * n + 1) * rat(1, 2 * n + 2);
        prop_assert_eq!(deg2 - rat(1, 4) * nn1, deg3);
    }

    /// The floating-point kernels track their exact rational values.
    #[test]
    fn float_kernels_track_exact_values(n in 1u64..=1_000_000_000) {
        for kernel in [Kernel::Deg2, Kernel::Deg3, Kernel::Nn1] {
            let ni = n as i64;
            let exact = match kernel {
                Kernel::Deg2 => rat(1, 2 * ni) * rat(1, 2 * ni + 1),
                Kernel::Deg3 => rat(1, 2 * ni) * rat(1, 2 * ni + 1) * rat(1, 2 * ni + 2),
                Kernel::Nn1 => rat(1, ni) * rat(1, ni + 1),
                _ => unreachable!(),
            };
            let exact_f = exact.numer().to_string().parse::<f64>().unwrap()
                / exact.denom().to_string().parse::<f64>().unwrap();
            let got = kernel.eval(n);
            prop_assert!(
                (got - exact_f).abs() <= 4.0 * f64::EPSILON * exact_f,
                "{kernel:?}({n}) = {got:e}, exact {exact_f:e}"
            );
        }
    }

    /// Per-index base kernel: Q(n, B) = sum_{j=1}^{B-1} j / (B n (B n + j)).
    #[test]
    fn q_base_matches_its_definition(n in 1u64..=1_000_000, base in 2u32..=10) {
        let bn = base as f64 * n as f64;
        let direct: f64 = (1..base)
            .map(|j| j as f64 / (bn * (bn + j as f64)))
            .sum();
        let got = q_base(n, base);
        prop_assert!((got - direct).abs() <= 1e-15 * direct.max(1e-300));
    }

    /// Nonnegative kernels give enclosures: partial sums approach the closed
    /// form from below, and the remaining mass stays under the tail bound.
    #[test]
    fn closed_forms_enclose_partial_sums(
        digits in proptest::collection::vec(0u32..2, 1..=3),
        kernel_pick in 0usize..3,
        terms in 1_000u64..=10_000,
    ) {
        let w = digits_to_word(&digits, 2);
        let kernel = [Kernel::Deg2, Kernel::Deg3, Kernel::Nn1][kernel_pick];
        let closed = block_series(&w, kernel).unwrap().eval();
        let r = partial_sum(&w, kernel, terms, SumMode::Sequential).unwrap();
        let gap = closed - r.value;
        prop_assert!(gap >= -1e-13, "{w} {kernel:?} at {terms}: overshoot {gap:e}");
        prop_assert!(
            gap <= r.tail_bound + 1e-13,
            "{w} {kernel:?} at {terms}: gap {gap:e} above bound {:e}",
            r.tail_bound
        );
    }

    /// Shifted kernels take both signs, so their guarantee is two-sided:
    /// the distance to the closed form stays under the absolute tail bound.
    #[test]
    fn shifted_kernel_partial_sums_stay_within_tail_bound(
        digits in proptest::collection::vec(0u32..2, 1..=2),
        k in 0u32..=3,
        terms in 1_000u64..=10_000,
    ) {
        let w = digits_to_word(&digits, 2);
        let kernel = Kernel::Qk { k };
        let closed = block_series(&w, kernel).unwrap().eval();
        let r = partial_sum(&w, kernel, terms, SumMode::Sequential).unwrap();
        let gap = (closed - r.value).abs();
        prop_assert!(
            gap <= r.tail_bound + 1e-13,
            "{w} qk:{k} at {terms}: gap {gap:e} above bound {:e}",
            r.tail_bound
        );
    }

    /// Base-B enclosure for the per-index base kernel.
    #[test]
    fn base_kernel_closed_forms_enclose_partial_sums(
        base in 2u32..=10,
        digits in proptest::collection::vec(0u32..10, 1..=2),
        terms in 1_000u64..=10_000,
    ) {
        let digits: Vec<u32> = digits.into_iter().map(|d| d % base).collect();
        let w = digits_to_word(&digits, base);
        let kernel = Kernel::QBase { base };
        let closed = block_series(&w, kernel).unwrap().eval();
        let r = partial_sum(&w, kernel, terms, SumMode::Sequential).unwrap();
        let gap = closed - r.value;
        prop_assert!(gap >= -1e-13);
        prop_assert!(gap <= r.tail_bound + 1e-13);
    }

    /// The index-doubling transform and its inverse are mutually inverse,
    /// exactly, on arbitrary rational sequences.
    #[test]
    fn transform_round_trips_exactly(
        seq in proptest::collection::vec((-50i64..=50, 1i64..=20), 0..=40),
    ) {
        let r: Vec<BigRational> = seq.iter().map(|&(p, q)| rat(p, q)).collect();
        let there = forward_transform(&r);
        prop_assert_eq!(inverse_transform(&there), r.clone());
        let back = inverse_transform(&r);
        prop_assert_eq!(forward_transform(&back), r);
    }
}
