//! Digit-block counting functions, the slowly converging series they
//! weight, and exact closed forms for those series.
//!
//! The central object is the counting function N_w(n): how many times the
//! digit block `w` occurs in the base-B expansion of n, with a fixed
//! convention for blocks that start with zero. Weighted by rational
//! kernels like 1/(2n(2n+1)) and summed over n, these counts produce
//! constants built from Euler's gamma, logarithms of primes and pi, and
//! log-gamma / digamma values at rationals. This crate computes all three
//! layers and checks them against each other:
//!
//! - [`digits`]: words, expansions, and the counting function itself.
//! - [`series`]: kernels, compensated partial sums, and tail bounds.
//! - [`closedform`]: the exact constant each series converges to.
//! - [`symbolic`]: exact arithmetic on those constants as rational
//!   combinations of gamma, log p, log pi, log Gamma, and digamma atoms.
//! - [`special`]: log-gamma and digamma evaluators, including the finite
//!   Gauss form at rationals.
//! - [`transform`]: the index-doubling transform linking arbitrary
//!   weight sequences to block counts, with rule detection.
//! - [`verify`]: the self-verification suites behind `blockseries verify`.
//!
//! ```
//! use blockseries::{count_block, Word};
//!
//! let ones: Word = "11@2".parse().unwrap();
//! assert_eq!(count_block(7, &ones), 2); // 7 = 111 in binary
//! ```
//!
//! ```
//! use blockseries::closedform::block_series_deg2;
//! use blockseries::series::{partial_sum, Kernel, SumMode};
//!
//! let word = "1@2".parse().unwrap();
//! let sum = partial_sum(&word, Kernel::Deg2, 100_000, SumMode::Sequential).unwrap();
//! let exact = block_series_deg2(&word).unwrap();
//! assert_eq!(exact.render(), "1/2·gamma + log 2 - 1/2·log pi");
//! let gap = exact.eval() - sum.value;
//! assert!(gap >= 0.0 && gap <= sum.tail_bound);
//! ```

pub mod cli;
pub mod closedform;
pub mod digits;
pub mod series;
pub mod special;
pub mod symbolic;
pub mod transform;
pub mod verify;

pub use digits::{count_block, Word};
pub use series::{partial_sum, Kernel, PartialSumResult, SumMode};
pub use symbolic::SymbolicConstant;
pub use transform::SequenceRule;
