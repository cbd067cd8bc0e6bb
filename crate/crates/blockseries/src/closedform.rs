//! Exact limits of the block-count weighted series, as symbolic constants.
//!
//! For a word w of length L over base B, write a = B^L and v for the value
//! of w read as a numeral. Summing the telescoping kernels against the
//! count N_w collapses every series here to gamma-function data at the
//! rational v/a; the zero word needs its own branch because its count
//! convention (no occurrences inside the leading-zero prefix) shifts the
//! telescoping by the digit length. All derivations are in
//! `docs/derivations.md`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::digits::Word;
use crate::series::Kernel;
use crate::symbolic::{SymbolicConstant, SymbolicError};

#[derive(Debug, Error, PartialEq)]
pub enum ClosedFormError {
    #[error("closed form expects base {expected}, word has base {got}")]
    BaseMismatch { expected: u32, got: u32 },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

fn require_base(w: &Word, expected: u32) -> Result<(), ClosedFormError> {
    if w.base() != expected {
        return Err(ClosedFormError::BaseMismatch {
            expected,
            got: w.base(),
        });
    }
    Ok(())
}

/// a = B^L and v for a word, as exact integers.
fn word_params(w: &Word) -> (BigInt, BigInt) {
    let a = num_traits::pow(BigInt::from(w.base()), w.len());
    let v = BigInt::from(w.value());
    (a, v)
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Shared shape of the degree-2 family:
///
///   v = 0:  log Gamma(1/a) + gamma/a - log a
///   v > 0:  log Gamma((v+1)/a) - log Gamma(v/a) - Psi(v/a)/a
fn defect_tail_form(a: &BigInt, v: &BigInt) -> Result<SymbolicConstant, SymbolicError> {
    let inv_a = ratio(BigInt::one(), a.clone());
    if v.is_zero() {
        Ok(SymbolicConstant::log_gamma_rat(&inv_a)?
            .add(&SymbolicConstant::euler_gamma().scale(&inv_a))
            .sub(&SymbolicConstant::log_rational(&BigRational::from(a.clone()))?))
    } else {
        let rho = ratio(v.clone(), a.clone());
        let rho_next = ratio(v + BigInt::one(), a.clone());
        Ok(SymbolicConstant::log_gamma_rat(&rho_next)?
            .sub(&SymbolicConstant::log_gamma_rat(&rho)?)
            .sub(&SymbolicConstant::digamma_rat(&rho)?.scale(&inv_a)))
    }
}

/// Limit of sum_n N_w(n) / (2n(2n+1)) for a base-2 word.
pub fn block_series_deg2(w: &Word) -> Result<SymbolicConstant, ClosedFormError> {
    require_base(w, 2)?;
    let (a, v) = word_params(w);
    Ok(defect_tail_form(&a, &v)?)
}

/// Limit of sum_n N_w(n) / (2n(2n+1)(2n+2)) for a base-2 word:
///
///   v = 0:  log Gamma(1/a) + gamma/(2a) - log a - Psi(1/a)/(2a) - 1/2
///   v > 0:  log Gamma((v+1)/a) - log Gamma(v/a)
///           - (Psi(v/a) + Psi((v+1)/a)) / (2a)
pub fn block_series_deg3(w: &Word) -> Result<SymbolicConstant, ClosedFormError> {
    require_base(w, 2)?;
    let (a, v) = word_params(w);
    let half_inv_a = ratio(BigInt::one(), BigInt::from(2) * &a);
    if v.is_zero() {
        let inv_a = ratio(BigInt::one(), a.clone());
        Ok(SymbolicConstant::log_gamma_rat(&inv_a)?
            .add(&SymbolicConstant::euler_gamma().scale(&half_inv_a))
            .sub(&SymbolicConstant::log_rational(&BigRational::from(a.clone()))?)
            .sub(&SymbolicConstant::digamma_rat(&inv_a)?.scale(&half_inv_a))
            .sub(&SymbolicConstant::rational(ratio(BigInt::one(), BigInt::from(2)))))
    } else {
        let rho = ratio(v.clone(), a.clone());
        let rho_next = ratio(&v + BigInt::one(), a.clone());
        Ok(SymbolicConstant::log_gamma_rat(&rho_next)?
            .sub(&SymbolicConstant::log_gamma_rat(&rho)?)
            .sub(
                &SymbolicConstant::digamma_rat(&rho)?
                    .add(&SymbolicConstant::digamma_rat(&rho_next)?)
                    .scale(&half_inv_a),
            ))
    }
}

/// Limit of sum_n N_w(n) / (n(n+1)) for a base-2 word:
///
///   v = 0:  (2/a) (Psi(1/a) + gamma + a)
///   v > 0:  (2/a) (Psi((v+1)/a) - Psi(v/a))
pub fn block_series_nn1(w: &Word) -> Result<SymbolicConstant, ClosedFormError> {
    require_base(w, 2)?;
    let (a, v) = word_params(w);
    let two_inv_a = ratio(BigInt::from(2), a.clone());
    if v.is_zero() {
        let inv_a = ratio(BigInt::one(), a.clone());
        Ok(SymbolicConstant::digamma_rat(&inv_a)?
            .add(&SymbolicConstant::euler_gamma())
            .add(&SymbolicConstant::rational(BigRational::from(a.clone())))
            .scale(&two_inv_a))
    } else {
        let rho = ratio(v.clone(), a.clone());
        let rho_next = ratio(&v + BigInt::one(), a.clone());
        Ok(SymbolicConstant::digamma_rat(&rho_next)?
            .sub(&SymbolicConstant::digamma_rat(&rho)?)
            .scale(&two_inv_a))
    }
}

/// Limit of sum_n N_w(n) Q(n, B) for a word over base B; structurally the
/// degree-2 form with a = B^L, so base 2 reproduces [`block_series_deg2`].
pub fn block_series_base(w: &Word, base: u32) -> Result<SymbolicConstant, ClosedFormError> {
    require_base(w, base)?;
    let (a, v) = word_params(w);
    Ok(defect_tail_form(&a, &v)?)
}

/// Limit of sum_n N_w(n) Q^(k)(n) for a base-2 word:
///
///   k = 0:  the degree-2 form
///   v > 0:  log Gamma((v+1)/a) - log Gamma(v/a) - Psi((v+k)/a)/a
///   v = 0:  log Gamma(1/a) - log a - 1/k - Psi(k/a)/a
pub fn block_series_qk(w: &Word, k: u32) -> Result<SymbolicConstant, ClosedFormError> {
    require_base(w, 2)?;
    let (a, v) = word_params(w);
    if k == 0 {
        return Ok(defect_tail_form(&a, &v)?);
    }
    let inv_a = ratio(BigInt::one(), a.clone());
    let kb = BigInt::from(k);
    if v.is_zero() {
        Ok(SymbolicConstant::log_gamma_rat(&inv_a)?
            .sub(&SymbolicConstant::log_rational(&BigRational::from(a.clone()))?)
            .sub(&SymbolicConstant::rational(ratio(BigInt::one(), kb.clone())))
            .sub(&SymbolicConstant::digamma_rat(&ratio(kb, a.clone()))?.scale(&inv_a)))
    } else {
        let rho = ratio(v.clone(), a.clone());
        let rho_next = ratio(&v + BigInt::one(), a.clone());
        let rho_shift = ratio(&v + &kb, a.clone());
        Ok(SymbolicConstant::log_gamma_rat(&rho_next)?
            .sub(&SymbolicConstant::log_gamma_rat(&rho)?)
            .sub(&SymbolicConstant::digamma_rat(&rho_shift)?.scale(&inv_a)))
    }
}

/// Closed form for any kernel/word pairing accepted by
/// [`crate::series::partial_sum`].
pub fn block_series(w: &Word, kernel: Kernel) -> Result<SymbolicConstant, ClosedFormError> {
    match kernel {
        Kernel::Deg2 => block_series_deg2(w),
        Kernel::Deg3 => block_series_deg3(w),
        Kernel::Nn1 => block_series_nn1(w),
        Kernel::QBase { base } => block_series_base(w, base),
        Kernel::Qk { k } => block_series_qk(w, k),
    }
}

/// The single-digit degree-2 sums combined: their sum is Euler's gamma,
/// their difference is 2 log 2 - log pi.
pub fn gamma_pm() -> (SymbolicConstant, SymbolicConstant) {
    let one: Word = "1@2".parse().expect("static word");
    let zero: Word = "0@2".parse().expect("static word");
    let s1 = block_series_deg2(&one).expect("base-2 word");
    let s0 = block_series_deg2(&zero).expect("base-2 word");
    (s1.add(&s0), s1.sub(&s0))
}

/// The single-digit degree-3 sums combined: sum gamma - 1/2, difference
/// log 2 - log pi + 1/2.
pub fn delta_pm() -> (SymbolicConstant, SymbolicConstant) {
    let one: Word = "1@2".parse().expect("static word");
    let zero: Word = "0@2".parse().expect("static word");
    let s1 = block_series_deg3(&one).expect("base-2 word");
    let s0 = block_series_deg3(&zero).expect("base-2 word");
    (s1.add(&s0), s1.sub(&s0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{EULER_GAMMA, LN_2, LN_PI};
    use approx::assert_abs_diff_eq;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn words_up_to(base: u32, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            let count = (base as u64).pow(len as u32);
            for v in 0..count {
                let mut digits = vec![0u8; len];
                let mut x = v;
                for d in digits.iter_mut().rev() {
                    *d = (x % u64::from(base)) as u8;
                    x /= u64::from(base);
                }
                out.push(Word::new(base, digits).unwrap());
            }
        }
        out
    }

    #[test]
    fn deg2_single_digits_render() {
        assert_eq!(
            block_series_deg2(&w("1@2")).unwrap().render(),
            "1/2·gamma + log 2 - 1/2·log pi"
        );
        assert_eq!(
            block_series_deg2(&w("0@2")).unwrap().render(),
            "1/2·gamma - log 2 + 1/2·log pi"
        );
    }

    #[test]
    fn deg2_evaluations() {
        // Reference decimals computed independently in 50-digit arithmetic.
        let cases = [
            ("0@2", 0.167825594815521),
            ("1@2", 0.409390070086012),
            ("00@2", 0.0460320798036),
            ("01@2", 0.341205801571),
            ("10@2", 0.121793515012),
            ("11@2", 0.06818426851532267),
            ("101@2", 0.0240400515144),
        ];
        for (word, expected) in cases {
            let got = block_series_deg2(&w(word)).unwrap().eval();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-11);
        }
    }

    #[test]
    fn deg3_evaluations() {
        let cases = [
            ("0@2", 0.0143991850955),
            ("1@2", 0.062816479806),
            ("00@2", 0.00231181336291),
            ("01@2", 0.0582128631513),
            ("10@2", 0.0120873717326),
            ("11@2", 0.00460361665471),
            ("101@2", 0.00111205871505),
        ];
        for (word, expected) in cases {
            let got = block_series_deg3(&w(word)).unwrap().eval();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-11);
        }
    }

    #[test]
    fn gamma_pm_identities() {
        let (plus, minus) = gamma_pm();
        assert_eq!(plus, SymbolicConstant::euler_gamma());
        assert_eq!(plus.render(), "gamma");
        let expected = SymbolicConstant::log_u64(2)
            .unwrap()
            .scale(&BigRational::from(BigInt::from(2)))
            .sub(&SymbolicConstant::log_pi());
        assert_eq!(minus, expected);
        assert_eq!(minus.render(), "2·log 2 - log pi");
        assert_abs_diff_eq!(plus.eval(), EULER_GAMMA, epsilon = 1e-13);
        assert_abs_diff_eq!(minus.eval(), 2.0 * LN_2 - LN_PI, epsilon = 1e-13);
    }

    #[test]
    fn delta_pm_identities() {
        let (plus, minus) = delta_pm();
        assert_eq!(plus.render(), "gamma - 1/2");
        assert_abs_diff_eq!(plus.eval(), EULER_GAMMA - 0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(minus.eval(), LN_2 - LN_PI + 0.5, epsilon = 1e-13);
    }

    #[test]
    fn kernel_identity_deg2_nn1_deg3() {
        // deg2(w) - (1/4) nn1(w) = deg3(w), exactly, for every short word.
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        for word in words_up_to(2, 3) {
            let lhs = block_series_deg2(&word)
                .unwrap()
                .sub(&block_series_nn1(&word).unwrap().scale(&quarter));
            let rhs = block_series_deg3(&word).unwrap();
            assert_eq!(lhs, rhs, "word {word}");
        }
    }

    #[test]
    fn nn1_putnam_value() {
        // The ones-count series over 1/(n(n+1)) sums to log 4.
        let c = block_series_nn1(&w("1@2")).unwrap();
        let expected = SymbolicConstant::log_u64(2)
            .unwrap()
            .scale(&BigRational::from(BigInt::from(2)));
        assert_eq!(c, expected);
        assert_abs_diff_eq!(c.eval().exp(), 4.0, epsilon = 1e-13);
    }

    #[test]
    fn base_two_reduces_to_deg2() {
        for word in words_up_to(2, 2) {
            assert_eq!(
                block_series_base(&word, 2).unwrap(),
                block_series_deg2(&word).unwrap()
            );
        }
    }

    #[test]
    fn base_three_evaluations() {
        let cases = [
            ("0@3", 0.07921357989350166),
            ("1@3", 0.3617408882266919),
            ("2@3", 0.136261196781),
            ("12@3", 0.0230121320621),
        ];
        for (word, expected) in cases {
            let got = block_series_base(&w(word), 3).unwrap().eval();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-11);
        }
    }

    #[test]
    fn qk_evaluations() {
        let cases = [
            ("0@2", 1, -0.1390272246245335),
            ("0@2", 2, -0.3321744051844788),
            ("1@2", 1, -0.2837571104739337),
            ("1@2", 2, -0.5906099299139883),
        ];
        for (word, k, expected) in cases {
            let got = block_series_qk(&w(word), k).unwrap().eval();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-11);
        }
    }

    #[test]
    fn qk_zero_shift_is_deg2() {
        for word in words_up_to(2, 2) {
            assert_eq!(
                block_series_qk(&word, 0).unwrap(),
                block_series_deg2(&word).unwrap()
            );
        }
    }

    #[test]
    fn base_mismatch_is_rejected() {
        assert_eq!(
            block_series_deg2(&w("1@3")),
            Err(ClosedFormError::BaseMismatch { expected: 2, got: 3 })
        );
        assert_eq!(
            block_series_base(&w("1@2"), 3),
            Err(ClosedFormError::BaseMismatch { expected: 3, got: 2 })
        );
        assert!(block_series_nn1(&w("2@3")).is_err());
        assert!(block_series_qk(&w("2@3"), 1).is_err());
    }

    #[test]
    fn dispatch_matches_direct_constructors() {
        let word = w("10@2");
        assert_eq!(
            block_series(&word, Kernel::Deg2).unwrap(),
            block_series_deg2(&word).unwrap()
        );
        assert_eq!(
            block_series(&word, Kernel::Qk { k: 2 }).unwrap(),
            block_series_qk(&word, 2).unwrap()
        );
        let w3 = w("12@3");
        assert_eq!(
            block_series(&w3, Kernel::QBase { base: 3 }).unwrap(),
            block_series_base(&w3, 3).unwrap()
        );
    }
}
