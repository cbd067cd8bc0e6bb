//! The doubling transform R_i = sum_k r_{floor(i / 2^k)} and the weighted
//! sums it connects.
//!
//! For bounded r the rearrangement
//!
//!   sum_{n >= 1} r_n A_n  =  sum_{i >= 1} R_i / (2i (2i+1))
//!
//! holds with A_n the logarithmic defect, because A_n telescopes into the
//! degree-2 kernel along the binary tree under n. Block counts arise as the
//! special case r_n = N_w(n) - N_w(floor(n/2)), which is eventually
//! periodic in n; detecting that period recovers the closed forms of the
//! `closedform` module through nothing but the transform.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::digits::{self, Word};
use crate::series::{a_term, CompensatedSum, Kernel};
use crate::symbolic::{parse_rational, rational_string};

#[derive(Debug, Error, PartialEq)]
pub enum TransformError {
    #[error("sequence detection requires base 2, got {0}")]
    DetectionBase(u32),
    #[error("detection limit {limit} too small for word length {len}, need at least {min}")]
    LimitTooSmall { limit: u64, len: usize, min: u64 },
    #[error("rule table ends at index {table_len} and has no period, cannot supply index {index}")]
    RuleExhausted { index: u64, table_len: u64 },
    #[error("weighted sum needs at least one term")]
    ZeroTerms,
    #[error("checkpoints must be nonempty and strictly increasing")]
    BadCheckpoints,
}

/// An eventually periodic rational sequence r_1, r_2, ...: the preperiod
/// lists r_1 .. r_p explicitly, then the period repeats forever. An empty
/// period makes the rule a finite table instead; indices past the table are
/// errors, never silently zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRule {
    preperiod: Vec<BigRational>,
    period: Vec<BigRational>,
}

impl SequenceRule {
    pub fn new(preperiod: Vec<BigRational>, period: Vec<BigRational>) -> Self {
        SequenceRule { preperiod, period }
    }

    /// r_n = 1 for every n.
    pub fn constant_one() -> Self {
        SequenceRule::new(Vec::new(), vec![BigRational::one()])
    }

    /// r_n = (-1)^(n+1): 1, -1, 1, -1, ...
    pub fn alternating() -> Self {
        SequenceRule::new(Vec::new(), vec![BigRational::one(), -BigRational::one()])
    }

    pub fn preperiod(&self) -> &[BigRational] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigRational] {
        &self.period
    }

    /// True when the rule is a finite table (no period to repeat).
    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// r_n for n >= 1; `None` past the end of a finite table.
    pub fn value_at(&self, n: u64) -> Option<&BigRational> {
        if n == 0 {
            return None;
        }
        let idx = n - 1;
        if let Some(v) = self.preperiod.get(idx as usize) {
            return Some(v);
        }
        if self.period.is_empty() {
            return None;
        }
        let offset = (idx - self.preperiod.len() as u64) % self.period.len() as u64;
        Some(&self.period[offset as usize])
    }

    /// The f64 images of the table, for the numeric summation loops.
    fn to_f64_tables(&self) -> (Vec<f64>, Vec<f64>) {
        let conv = |v: &BigRational| v.to_f64().expect("rule entry fits f64");
        (
            self.preperiod.iter().map(conv).collect(),
            self.period.iter().map(conv).collect(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct RuleRepr {
    preperiod: Vec<String>,
    period: Vec<String>,
}

impl Serialize for SequenceRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RuleRepr {
            preperiod: self.preperiod.iter().map(rational_string).collect(),
            period: self.period.iter().map(rational_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SequenceRule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RuleRepr::deserialize(d)?;
        let parse_all = |items: Vec<String>| -> Result<Vec<BigRational>, D::Error> {
            items
                .iter()
                .map(|s| parse_rational(s).map_err(D::Error::custom))
                .collect()
        };
        Ok(SequenceRule {
            preperiod: parse_all(repr.preperiod)?,
            period: parse_all(repr.period)?,
        })
    }
}

/// R_1 .. R_L from r_1 .. r_L via R_i = r_i + R_{floor(i/2)}, R_0 = 0.
pub fn forward_transform(r: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(r.len());
    for i in 1..=r.len() {
        let mut v = r[i - 1].clone();
        if i >= 2 {
            v += &out[i / 2 - 1];
        }
        out.push(v);
    }
    out
}

/// r_1 .. r_L back from R_1 .. R_L via r_i = R_i - R_{floor(i/2)}.
pub fn inverse_transform(big_r: &[BigRational]) -> Vec<BigRational> {
    (1..=big_r.len())
        .map(|i| {
            if i >= 2 {
                &big_r[i - 1] - &big_r[i / 2 - 1]
            } else {
                big_r[i - 1].clone()
            }
        })
        .collect()
}

fn rule_value(pre: &[f64], per: &[f64], rule: &SequenceRule, n: u64) -> Result<f64, TransformError> {
    let idx = (n - 1) as usize;
    if let Some(&v) = pre.get(idx) {
        return Ok(v);
    }
    if per.is_empty() {
        return Err(TransformError::RuleExhausted {
            index: n,
            table_len: rule.preperiod.len() as u64,
        });
    }
    Ok(per[(idx - pre.len()) % per.len()])
}

/// sum_{n=1}^{N} r_n A_n.
pub fn weighted_sum_lhs(rule: &SequenceRule, n_terms: u64) -> Result<f64, TransformError> {
    if n_terms == 0 {
        return Err(TransformError::ZeroTerms);
    }
    let (pre, per) = rule.to_f64_tables();
    let mut acc = CompensatedSum::new();
    for n in 1..=n_terms {
        let r = rule_value(&pre, &per, rule, n)?;
        if r != 0.0 {
            acc.add(r * a_term(n).expect("n >= 1"));
        }
    }
    Ok(acc.value())
}

/// sum_{i=1}^{N} R_i / (2i (2i+1)), with R built incrementally from the rule.
pub fn weighted_sum_rhs(rule: &SequenceRule, n_terms: u64) -> Result<f64, TransformError> {
    if n_terms == 0 {
        return Err(TransformError::ZeroTerms);
    }
    let (pre, per) = rule.to_f64_tables();
    let mut table = vec![0.0f64; n_terms as usize + 1];
    let mut acc = CompensatedSum::new();
    for i in 1..=n_terms {
        let big_r = rule_value(&pre, &per, rule, i)? + table[(i / 2) as usize];
        table[i as usize] = big_r;
        if big_r != 0.0 {
            acc.add(big_r * Kernel::Deg2.eval(i));
        }
    }
    Ok(acc.value())
}

/// Both weighted sums recorded at a run of checkpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedSumCheckpoint {
    pub terms: u64,
    pub lhs: f64,
    pub rhs: f64,
}

/// One pass to the last checkpoint, recording both sums at each stop; the
/// decade-by-decade convergence checks need this to avoid re-summing the
/// shared prefixes.
pub fn weighted_sum_checkpoints(
    rule: &SequenceRule,
    checkpoints: &[u64],
) -> Result<Vec<WeightedSumCheckpoint>, TransformError> {
    if checkpoints.is_empty()
        || checkpoints[0] == 0
        || checkpoints.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(TransformError::BadCheckpoints);
    }
    let last = *checkpoints.last().expect("nonempty");
    let (pre, per) = rule.to_f64_tables();
    let mut table = vec![0.0f64; last as usize + 1];
    let mut lhs = CompensatedSum::new();
    let mut rhs = CompensatedSum::new();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = 0;
    for i in 1..=last {
        let r = rule_value(&pre, &per, rule, i)?;
        if r != 0.0 {
            lhs.add(r * a_term(i).expect("i >= 1"));
        }
        let big_r = r + table[(i / 2) as usize];
        table[i as usize] = big_r;
        if big_r != 0.0 {
            rhs.add(big_r * Kernel::Deg2.eval(i));
        }
        if i == checkpoints[next] {
            out.push(WeightedSumCheckpoint {
                terms: i,
                lhs: lhs.value(),
                rhs: rhs.value(),
            });
            next += 1;
        }
    }
    Ok(out)
}

/// Outcome of a periodicity search on a concrete sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum Detection {
    Found(SequenceRule),
    NotDetected,
}

/// Detects an eventually periodic rule for the count increments
/// r_n = N_w(n) - N_w(floor(n/2)) of a base-2 word, by scanning
/// r_1 .. r_limit for the least preperiod, then the least period length up
/// to 2^(L+1). A candidate must be confirmed by at least two full periods
/// inside the scanned range, so `limit` must be at least 4 * 2^L.
pub fn periodic_r_for_word(w: &Word, limit: u64) -> Result<Detection, TransformError> {
    if w.base() != 2 {
        return Err(TransformError::DetectionBase(w.base()));
    }
    let min = 4u64
        .checked_shl(w.len() as u32)
        .unwrap_or(u64::MAX);
    if limit < min {
        return Err(TransformError::LimitTooSmall {
            limit,
            len: w.len(),
            min,
        });
    }
    let r: Vec<i64> = (1..=limit)
        .map(|n| digits::count_block(n, w) as i64 - digits::count_block(n / 2, w) as i64)
        .collect();
    let max_period = 2u64 << w.len();
    for p in 0..limit {
        for q in 1..=max_period {
            if p + 2 * q > limit {
                break;
            }
            // r must repeat with period q everywhere past the preperiod.
            let consistent = ((p + 1)..=(limit - q))
                .all(|n| r[(n - 1) as usize] == r[(n + q - 1) as usize]);
            if consistent {
                let to_rational = |n: u64| BigRational::from_integer(r[(n - 1) as usize].into());
                let preperiod = (1..=p).map(to_rational).collect();
                let period = ((p + 1)..=(p + q)).map(to_rational).collect();
                return Ok(Detection::Found(SequenceRule::new(preperiod, period)));
            }
        }
    }
    Ok(Detection::NotDetected)
}
