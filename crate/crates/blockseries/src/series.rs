//! Numeric partial sums of block-count weighted series.
//!
//! Every series here has the shape `sum over n >= 1 of N_w(n) * kernel(n)`
//! where `N_w` is an overlapping block count and the kernel is one of a
//! small family of rational functions that telescope against the
//! logarithmic defect `A_n = 1/n - log((n+1)/n)`. The closed forms these
//! sums converge to live in the `closedform` module; this module produces
//! the finite partial sums together with a rigorous tail bound, so a
//! comparison `|closed - partial| <= tail_bound` is a machine-checkable
//! statement.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digits::{self, Word};

/// Chunk length for parallel summation. Fixed so the chunk boundaries, and
/// with them the floating-point result, do not depend on thread count.
const PARALLEL_CHUNK: u64 = 65_536;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("series index must be at least 1")]
    IndexOutOfRange,
    #[error("partial sum needs at least one term")]
    ZeroTerms,
    #[error("kernel expects base {expected}, word has base {got}")]
    KernelBaseMismatch { expected: u32, got: u32 },
    #[error("kernel base {0} out of range {min}..={max}", min = digits::MIN_BASE, max = digits::MAX_BASE)]
    KernelBaseOutOfRange(u32),
    #[error("unknown kernel {0:?}, expected deg2, deg3, nn1, qbase:B, or qk:K")]
    UnknownKernel(String),
    #[error("intermediate index overflows 64 bits")]
    Overflow,
}

/// The summation kernels. Each carries the base its block counts must use:
/// `QBase { base }` pairs with that base, everything else with base 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Kernel {
    /// 1 / (2n (2n+1)); the weighted sums telescope once against A_n.
    Deg2,
    /// 1 / (2n (2n+1) (2n+2)); one more telescoping level, quadratic tail.
    Deg3,
    /// 1 / (n (n+1)).
    Nn1,
    /// Q(n, B) = sum_{j=1}^{B-1} j / (Bn (Bn+j)), the base-B analogue of Deg2.
    QBase { base: u32 },
    /// The k-shifted kernel; k = 0 coincides with Deg2.
    Qk { k: u32 },
}

impl Kernel {
    /// Base the paired word must have.
    pub fn expected_base(&self) -> u32 {
        match *self {
            Kernel::QBase { base } => base,
            _ => 2,
        }
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        if let Kernel::QBase { base } = *self {
            if !(digits::MIN_BASE..=digits::MAX_BASE).contains(&base) {
                return Err(SeriesError::KernelBaseOutOfRange(base));
            }
        }
        Ok(())
    }

    /// Kernel value at index n >= 1.
    pub fn eval(&self, n: u64) -> f64 {
        let nf = n as f64;
        match *self {
            Kernel::Deg2 => 1.0 / (2.0 * nf * (2.0 * nf + 1.0)),
            Kernel::Deg3 => 1.0 / (2.0 * nf * (2.0 * nf + 1.0) * (2.0 * nf + 2.0)),
            Kernel::Nn1 => 1.0 / (nf * (nf + 1.0)),
            Kernel::QBase { base } => q_base(n, base),
            Kernel::Qk { k } => {
                // Grouped form of A^(k)_n - A^(k)_{2n} - A^(k)_{2n+1}; the
                // defect parts cancel exactly, leaving four rational terms
                // that are safe to evaluate without cancellation.
                let kf = f64::from(k);
                1.0 / (2.0 * nf * (2.0 * nf + 1.0)) - kf / (nf * (nf + kf))
                    + kf / (2.0 * nf * (2.0 * nf + kf))
                    + kf / ((2.0 * nf + 1.0) * (2.0 * nf + 1.0 + kf))
            }
        }
    }

    /// Per-index tail factor K(N) with `sum_{n > N} |kernel(n)| <= K(N)`.
    pub fn tail_factor(&self, n_terms: u64) -> f64 {
        let nf = n_terms as f64;
        match *self {
            Kernel::Deg2 => 1.0 / (4.0 * nf),
            Kernel::Deg3 => 1.0 / (16.0 * nf * nf),
            Kernel::Nn1 => 1.0 / nf,
            Kernel::QBase { base } => {
                let bf = f64::from(base);
                (bf - 1.0) * (bf - 1.0) / (2.0 * bf * nf)
            }
            Kernel::Qk { k } => (f64::from(k) + 1.0) / nf,
        }
    }
}

impl std::fmt::Display for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Kernel::Deg2 => write!(f, "deg2"),
            Kernel::Deg3 => write!(f, "deg3"),
            Kernel::Nn1 => write!(f, "nn1"),
            Kernel::QBase { base } => write!(f, "qbase:{base}"),
            Kernel::Qk { k } => write!(f, "qk:{k}"),
        }
    }
}

impl std::str::FromStr for Kernel {
    type Err = SeriesError;

    /// Textual kernel names: `deg2`, `deg3`, `nn1`, `qbase:B`, `qk:K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kernel = match s {
            "deg2" => Kernel::Deg2,
            "deg3" => Kernel::Deg3,
            "nn1" => Kernel::Nn1,
            _ => {
                let parse_arg =
                    |arg: &str| arg.parse::<u32>().map_err(|_| SeriesError::UnknownKernel(s.to_string()));
                if let Some(arg) = s.strip_prefix("qbase:") {
                    Kernel::QBase { base: parse_arg(arg)? }
                } else if let Some(arg) = s.strip_prefix("qk:") {
                    Kernel::Qk { k: parse_arg(arg)? }
                } else {
                    return Err(SeriesError::UnknownKernel(s.to_string()));
                }
            }
        };
        kernel.validate()?;
        Ok(kernel)
    }
}

/// Logarithmic defect A_n = 1/n - log((n+1)/n) for n >= 1.
///
/// For n >= 4 the direct formula loses all but a few significant digits to
/// cancellation, so the Mercator remainder t^2 (1/2 - t/3 + t^2/4 - ...)
/// with t = 1/n is summed instead; it converges geometrically.
pub fn a_term(n: u64) -> Result<f64, SeriesError> {
    if n == 0 {
        return Err(SeriesError::IndexOutOfRange);
    }
    let t = 1.0 / n as f64;
    if n <= 3 {
        return Ok(t - t.ln_1p());
    }
    let mut term = t * t;
    let mut sum = 0.0;
    let mut k = 2u32;
    loop {
        let contribution = term / f64::from(k);
        sum += if k % 2 == 0 { contribution } else { -contribution };
        term *= t;
        k += 1;
        if contribution < sum * 1e-18 {
            break;
        }
    }
    Ok(sum)
}

/// Shifted defect A^(k)_n = A_n - k/(n(n+k)); the k-shifted series
/// telescope against this the way the plain ones do against A_n.
pub fn ak_term(n: u64, k: u32) -> Result<f64, SeriesError> {
    let nf = n as f64;
    let kf = f64::from(k);
    Ok(a_term(n)? - kf / (nf * (nf + kf)))
}

/// Q(n, B) = sum_{j=1}^{B-1} j / (Bn (Bn+j)).
pub fn q_base(n: u64, base: u32) -> f64 {
    let bn = f64::from(base) * n as f64;
    let mut sum = 0.0;
    for j in 1..base {
        let jf = f64::from(j);
        sum += jf / (bn * (bn + jf));
    }
    sum
}

/// Kahan compensated accumulator: running error of the additions is carried
/// separately, keeping long sums accurate to a few ulps.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    err: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        CompensatedSum::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// How a partial sum walks its index range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumMode {
    Sequential,
    Parallel,
}

/// A finite partial sum with its tail bound: the limit lies within
/// `tail_bound` of `value`, on the side the kernel's sign dictates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialSumResult {
    pub value: f64,
    pub terms: u64,
    pub tail_bound: f64,
    pub word: Word,
    pub kernel: Kernel,
    pub mode: SumMode,
}

fn range_sum(lo: u64, hi: u64, w: &Word, kernel: Kernel) -> f64 {
    let mut acc = CompensatedSum::new();
    for n in lo..=hi {
        let c = digits::count_block(n, w);
        if c > 0 {
            acc.add(c as f64 * kernel.eval(n));
        }
    }
    acc.value()
}

/// sum_{n=1}^{n_terms} N_w(n) * kernel(n), with a tail bound for the limit.
///
/// The bound multiplies the kernel tail by `floor(log_B N) + 2`, a cap on
/// the count density: N_w(n) stays at most one above the digit length of n
/// for every admissible word (see `docs/derivations.md`).
///
/// Parallel mode splits the range into fixed chunks, sums each with its own
/// compensated accumulator, and combines the chunk totals in index order,
/// so its result is deterministic and within a few ulps of sequential mode.
pub fn partial_sum(
    w: &Word,
    kernel: Kernel,
    n_terms: u64,
    mode: SumMode,
) -> Result<PartialSumResult, SeriesError> {
    kernel.validate()?;
    let expected = kernel.expected_base();
    if w.base() != expected {
        return Err(SeriesError::KernelBaseMismatch {
            expected,
            got: w.base(),
        });
    }
    if n_terms == 0 {
        return Err(SeriesError::ZeroTerms);
    }
    let value = match mode {
        SumMode::Sequential => range_sum(1, n_terms, w, kernel),
        SumMode::Parallel => {
            let chunks: Vec<(u64, u64)> = (1..=n_terms)
                .step_by(PARALLEL_CHUNK as usize)
                .map(|lo| (lo, n_terms.min(lo + PARALLEL_CHUNK - 1)))
                .collect();
            let partials: Vec<f64> = chunks
                .par_iter()
                .map(|&(lo, hi)| range_sum(lo, hi, w, kernel))
                .collect();
            let mut acc = CompensatedSum::new();
            for p in partials {
                acc.add(p);
            }
            acc.value()
        }
    };
    let levels = digits::floor_log(n_terms, w.base()).expect("n_terms >= 1");
    let tail_bound = f64::from(levels + 2) * kernel.tail_factor(n_terms);
    Ok(PartialSumResult {
        value,
        terms: n_terms,
        tail_bound,
        word: w.clone(),
        kernel,
        mode,
    })
}

/// The defect A_n expanded K levels deep through the telescoping identity
/// A_n = 1/(2n(2n+1)) + A_{2n} + A_{2n+1}.
///
/// Unfolding K times over the doubling tree rooted at n gives
///
/// A_n = sum_{k=1}^{K} sum_{i in [2^{k-1} n, 2^{k-1} (n+1))} 1/(2i(2i+1))
///       + sum_{i in [2^K n, 2^K (n+1))} A_i,
///
/// where level k holds the 2^{k-1} descendants of n at depth k-1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionCheck {
    pub n: u64,
    pub levels: u32,
    /// The double sum through level K.
    pub partial: f64,
    /// A_n minus the partial; equals the sum of A_i over the cut row.
    pub remainder: f64,
    /// 2^-K. The cut row has 2^K defects, each below 1/(2 (2^K n)^2), so
    /// the remainder is under 2^{-K-1} / n^2.
    pub remainder_bound: f64,
}

/// Expands A_n through K levels of the telescoping identity and reports the
/// remainder against the a-priori bound 2^-K. Requires 1 <= K <= 30.
pub fn a_expansion_check(n: u64, levels: u32) -> Result<ExpansionCheck, SeriesError> {
    if n == 0 || !(1..=30).contains(&levels) {
        return Err(SeriesError::IndexOutOfRange);
    }
    // Overflow guard for the largest index touched, 2^K (n+1) - 1.
    1u64.checked_shl(levels)
        .and_then(|p| p.checked_mul(n + 1))
        .ok_or(SeriesError::Overflow)?;
    let mut acc = CompensatedSum::new();
    for depth in 0..levels {
        for i in (n << depth)..((n + 1) << depth) {
            acc.add(Kernel::Deg2.eval(i));
        }
    }
    let partial = acc.value();
    let remainder = a_term(n)? - partial;
    Ok(ExpansionCheck {
        n,
        levels,
        partial,
        remainder,
        remainder_bound: 0.5f64.powi(levels as i32),
    })
}
