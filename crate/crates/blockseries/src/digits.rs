//! Base-B digit expansions and overlapping block counting.
//!
//! The central object is [`count_block`], the number of (possibly
//! overlapping) occurrences of a digit word `w` in the base-B expansion of
//! `n`. Words with a leading zero but nonzero value are counted against the
//! expansion prefixed with exactly `|w| - 1` zeros; a longer prefix can only
//! add windows that lie entirely inside the zeros, which a word with a
//! nonzero digit never matches, so `|w| - 1` already captures every
//! occurrence an arbitrarily long prefix would (see `docs/derivations.md`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Smallest supported base.
pub const MIN_BASE: u32 = 2;
/// Largest supported base; digits above 9 are written `a`..`f`.
pub const MAX_BASE: u32 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigitsError {
    #[error("base {0} out of range {MIN_BASE}..={MAX_BASE}")]
    BaseOutOfRange(u32),
    #[error("word must have at least one digit")]
    EmptyWord,
    #[error("digit {digit} invalid for base {base}")]
    DigitOutOfRange { digit: u8, base: u32 },
    #[error("malformed word literal {0:?}, expected <digits>@<base> like 011@2")]
    MalformedLiteral(String),
}

/// A nonempty digit word over a base in `2..=16`, most significant digit
/// first. Leading zeros are meaningful and preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    base: u32,
    digits: Vec<u8>,
}

impl Word {
    pub fn new(base: u32, digits: Vec<u8>) -> Result<Self, DigitsError> {
        check_base(base)?;
        if digits.is_empty() {
            return Err(DigitsError::EmptyWord);
        }
        for &d in &digits {
            if u32::from(d) >= base {
                return Err(DigitsError::DigitOutOfRange { digit: d, base });
            }
        }
        Ok(Word { base, digits })
    }

    /// Parses the digit string of a `<digits>@<base>` literal, e.g. `"011"`
    /// with base 2.
    pub fn from_digit_str(digit_str: &str, base: u32) -> Result<Self, DigitsError> {
        check_base(base)?;
        if digit_str.is_empty() {
            return Err(DigitsError::EmptyWord);
        }
        let mut digits = Vec::with_capacity(digit_str.len());
        for ch in digit_str.chars() {
            let d = ch
                .to_digit(16)
                .ok_or_else(|| DigitsError::MalformedLiteral(digit_str.to_string()))?;
            digits.push(d as u8);
        }
        Word::new(base, digits)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: a Word always has at least one digit
    }

    /// Numeric value of the word read as a base-B numeral.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::from(0u32);
        for &d in &self.digits {
            v = v * self.base + d;
        }
        v
    }

    /// Word value when it fits in a machine word; `None` for very long words.
    pub fn value_u64(&self) -> Option<u64> {
        let mut v: u64 = 0;
        for &d in &self.digits {
            v = v.checked_mul(u64::from(self.base))?.checked_add(u64::from(d))?;
        }
        Some(v)
    }

    /// True for the all-zeros word `0^j`.
    pub fn is_zero_word(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn has_leading_zero(&self) -> bool {
        self.digits[0] == 0
    }

    fn digit_string(&self) -> String {
        self.digits
            .iter()
            .map(|&d| char::from_digit(u32::from(d), 16).unwrap())
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.digit_string(), self.base)
    }
}

impl FromStr for Word {
    type Err = DigitsError;

    /// Parses the textual form `<digits>@<base>`, e.g. `011@2` or `9f@16`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (digit_str, base_str) = s
            .split_once('@')
            .ok_or_else(|| DigitsError::MalformedLiteral(s.to_string()))?;
        let base: u32 = base_str
            .parse()
            .map_err(|_| DigitsError::MalformedLiteral(s.to_string()))?;
        Word::from_digit_str(digit_str, base)
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    base: u32,
    digits: String,
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WordRepr {
            base: self.base,
            digits: self.digit_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = WordRepr::deserialize(d)?;
        Word::from_digit_str(&repr.digits, repr.base).map_err(D::Error::custom)
    }
}

fn check_base(base: u32) -> Result<(), DigitsError> {
    if !(MIN_BASE..=MAX_BASE).contains(&base) {
        return Err(DigitsError::BaseOutOfRange(base));
    }
    Ok(())
}

/// Base-B expansion of `n`, most significant digit first. `expand(0, B)` is
/// empty: zero has the empty expansion here.
pub fn expand(n: u64, base: u32) -> Result<Vec<u8>, DigitsError> {
    check_base(base)?;
    let b = u64::from(base);
    let mut digits = Vec::new();
    let mut x = n;
    while x > 0 {
        digits.push((x % b) as u8);
        x /= b;
    }
    digits.reverse();
    Ok(digits)
}

/// Number of occurrences of `w` in the expansion of `n`, counted with
/// overlaps. `count_block(0, w) = 0` for every word.
///
/// Counting walks the suffix chain n, n/B, n/B^2, ...: each quotient
/// contributes 1 exactly when its last `|w|` digits (zero-padded on the
/// left for words with leading zeros) spell `w`. That window test is
/// `x mod B^|w| = v(w)` for nonzero words, and `x mod B^|w| = 0` together
/// with `x >= B^|w|` for the all-zeros word, which must sit strictly below
/// the leading digit. The walk visits each window of the (prefixed)
/// expansion exactly once, so it agrees with a direct string scan.
pub fn count_block(n: u64, w: &Word) -> u64 {
    if n == 0 {
        return 0;
    }
    let b = u64::from(w.base());
    let modulus = match b.checked_pow(w.len() as u32) {
        Some(m) => m,
        // B^|w| exceeds u64: every expansion of a u64 is shorter than w, and
        // the zero prefix never completes a word with a nonzero digit, so
        // only the value-equality window could match.
        None => {
            return match w.value_u64() {
                Some(v) if !w.is_zero_word() && v == n => 1,
                _ => 0,
            };
        }
    };
    if w.is_zero_word() {
        let mut count = 0;
        let mut x = n;
        while x > 0 {
            if x % modulus == 0 && x >= modulus {
                count += 1;
            }
            x /= b;
        }
        count
    } else {
        // v < modulus <= u64::MAX, so the unwrap cannot fail.
        let v = w.value_u64().expect("word value fits when B^|w| does");
        let mut count = 0;
        let mut x = n;
        while x > 0 {
            if x % modulus == v {
                count += 1;
            }
            x /= b;
        }
        count
    }
}

/// Sum of the base-B digits of `n`.
pub fn digit_sum(n: u64, base: u32) -> Result<u64, DigitsError> {
    check_base(base)?;
    let b = u64::from(base);
    let mut s = 0;
    let mut x = n;
    while x > 0 {
        s += x % b;
        x /= b;
    }
    Ok(s)
}

/// `floor(log_B n)` for `n >= 1`; the expansion of `n` has
/// `floor_log(n, B) + 1` digits.
pub fn floor_log(n: u64, base: u32) -> Result<u32, DigitsError> {
    check_base(base)?;
    if n == 0 {
        return Err(DigitsError::EmptyWord);
    }
    let b = u64::from(base);
    let mut l = 0;
    let mut x = n;
    while x >= b {
        x /= b;
        l += 1;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Independent oracle: build the (possibly zero-prefixed) digit string
    /// and scan every window.
    fn scan_oracle(n: u64, word: &Word) -> u64 {
        if n == 0 {
            return 0;
        }
        let mut digits = expand(n, word.base()).unwrap();
        if word.has_leading_zero() && !word.is_zero_word() {
            let mut prefixed = vec![0u8; word.len() - 1];
            prefixed.append(&mut digits);
            digits = prefixed;
        }
        if digits.len() < word.len() {
            return 0;
        }
        digits
            .windows(word.len())
            .filter(|win| *win == word.digits())
            .count() as u64
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand(0, 2).unwrap(), Vec::<u8>::new());
        assert_eq!(expand(6, 2).unwrap(), vec![1, 1, 0]);
        assert_eq!(expand(255, 16).unwrap(), vec![15, 15]);
        assert_eq!(expand(10, 10).unwrap(), vec![1, 0]);
        assert_eq!(expand(1, 17), Err(DigitsError::BaseOutOfRange(17)));
        assert_eq!(expand(1, 1), Err(DigitsError::BaseOutOfRange(1)));
    }

    #[test]
    fn counting_conventions() {
        // 7 = 111_2 contains "11" twice, with overlap.
        assert_eq!(count_block(7, &w("11@2")), 2);
        // 3 = 11_2; "011" has a leading zero and nonzero value, so the
        // expansion is prefixed with |w|-1 = 2 zeros: 0011 contains 011 once.
        assert_eq!(count_block(3, &w("011@2")), 1);
        // 2 = 10_2; the zero word is counted in the plain expansion.
        assert_eq!(count_block(2, &w("0@2")), 1);
        assert_eq!(count_block(0, &w("0@2")), 0);
        assert_eq!(count_block(0, &w("11@2")), 0);
        // 4 = 100_2: one "00" window.
        assert_eq!(count_block(4, &w("00@2")), 1);
        assert_eq!(count_block(8, &w("00@2")), 2);
        // 5 = 101_2 against "01" (prefixed form 0101): two occurrences.
        assert_eq!(count_block(5, &w("01@2")), 2);
        // Base 10: 100 contains "00" once, "0" twice.
        assert_eq!(count_block(100, &w("00@10")), 1);
        assert_eq!(count_block(100, &w("0@10")), 2);
    }

    #[test]
    fn word_validation() {
        assert_eq!(Word::new(1, vec![0]), Err(DigitsError::BaseOutOfRange(1)));
        assert_eq!(Word::new(17, vec![0]), Err(DigitsError::BaseOutOfRange(17)));
        assert_eq!(Word::new(2, vec![]), Err(DigitsError::EmptyWord));
        assert_eq!(
            Word::new(2, vec![2]),
            Err(DigitsError::DigitOutOfRange { digit: 2, base: 2 })
        );
        assert!("9f@16".parse::<Word>().is_ok());
        assert!("9f@10".parse::<Word>().is_err());
        assert!("@2".parse::<Word>().is_err());
        assert!("11".parse::<Word>().is_err());
    }

    #[test]
    fn word_value_and_round_trip() {
        let word = w("011@2");
        assert_eq!(word.value_u64(), Some(3));
        assert_eq!(word.value(), BigUint::from(3u32));
        assert!(word.has_leading_zero());
        assert!(!word.is_zero_word());
        assert_eq!(word.to_string(), "011@2");
        assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
    }

    #[test]
    fn long_word_matches_scan() {
        // 70 binary digits: B^|w| overflows u64, the scan fallback branch.
        let digits: Vec<u8> = (0..70).map(|i| (i % 2) as u8).collect();
        let word = Word::new(2, digits).unwrap();
        assert_eq!(word.value_u64(), None);
        for n in [0u64, 1, u64::MAX, 0xAAAA_AAAA_AAAA_AAAA] {
            assert_eq!(count_block(n, &word), scan_oracle(n, &word));
        }
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(0, 2).unwrap(), 0);
        assert_eq!(digit_sum(7, 2).unwrap(), 3);
        assert_eq!(digit_sum(255, 10).unwrap(), 12);
        assert_eq!(digit_sum(255, 16).unwrap(), 30);
    }

    #[test]
    fn floor_log_matches_digit_count() {
        for n in 1..200u64 {
            for base in [2, 3, 10, 16] {
                let digits = expand(n, base).unwrap().len() as u32;
                assert_eq!(floor_log(n, base).unwrap() + 1, digits);
            }
        }
    }

    proptest! {
        #[test]
        fn counting_agrees_with_scan(n in 0u64..1_000_000, len in 1usize..5, base in 2u32..=16, seed: u64) {
            let digits: Vec<u8> = (0..len)
                .map(|i| ((seed >> (4 * i)) % u64::from(base)) as u8)
                .collect();
            let word = Word::new(base, digits).unwrap();
            prop_assert_eq!(count_block(n, &word), scan_oracle(n, &word));
        }

        #[test]
        fn count_bounded_by_digit_count(n in 1u64..u64::MAX, len in 1usize..4) {
            let word = Word::new(2, vec![1u8; len]).unwrap();
            let bound = u64::from(floor_log(n, 2).unwrap()) + 1;
            prop_assert!(count_block(n, &word) <= bound);
        }

        #[test]
        fn single_digit_counts_partition_digit_sum(n in 0u64..10_000_000, base in 2u32..=16) {
            // digit_sum = sum over d of d * N_d, and the counts of all single
            // digits add up to the digit count of n.
            let mut weighted = 0u64;
            let mut total = 0u64;
            for d in 0..base {
                let word = Word::new(base, vec![d as u8]).unwrap();
                let c = count_block(n, &word);
                weighted += u64::from(d) * c;
                total += c;
            }
            prop_assert_eq!(weighted, digit_sum(n, base).unwrap());
            if n > 0 {
                prop_assert_eq!(total, u64::from(floor_log(n, base).unwrap()) + 1);
            } else {
                prop_assert_eq!(total, 0);
            }
        }

        #[test]
        fn legendre_digit_sum(n in 0u64..1_000_000_000, base in 2u32..=16) {
            // s_B(n) = n - (B-1) * sum_{k>=1} floor(n / B^k)
            let b = u64::from(base);
            let mut carry = 0u64;
            let mut p = b;
            loop {
                carry += n / p;
                match p.checked_mul(b) {
                    Some(next) if n / p > 0 => p = next,
                    _ => break,
                }
            }
            prop_assert_eq!(digit_sum(n, base).unwrap(), n - (b - 1) * carry);
        }
    }
}
