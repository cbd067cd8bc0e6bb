//! Exact symbolic constants: rational linear combinations of a small atom
//! set (Euler's gamma, logs of primes, log pi, and log-gamma / digamma
//! values at rationals in (0, 1]).
//!
//! Every constructor canonicalizes, so two expressions describe the same
//! real number exactly when their term maps are equal:
//!
//! * gamma-function arguments are reduced into (0, 1] by the recurrences
//!   log Gamma(x) = log Gamma(x-1) + log(x-1) and Psi(x) = Psi(x-1) + 1/(x-1);
//! * log Gamma(1) and log Gamma(2) vanish, log Gamma(1/2) becomes (1/2) log pi,
//!   Psi(1) becomes -gamma, Psi(1/2) becomes -gamma - 2 log 2;
//! * logs of positive rationals split into prime atoms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::special::{self, PositiveReal};

/// Cap on the argument-reduction distance, so hostile serialized input
/// cannot make canonicalization loop for astronomically large arguments.
const MAX_REDUCTION_STEPS: u32 = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum SymbolicError {
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(BigRational),
    #[error("cannot take the log of {0}, argument must be positive")]
    LogOfNonPositive(BigRational),
    #[error("argument {0} too large to canonicalize")]
    ArgumentTooLarge(BigRational),
    #[error("cannot factor {0}, integer too large")]
    TooLargeToFactor(BigInt),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed rational literal {0:?}")]
    MalformedRational(String),
    #[error("unknown atom kind {0:?}")]
    UnknownAtom(String),
    #[error("atom {atom:?} missing field {field:?}")]
    MissingField { atom: String, field: String },
}

/// An irreducible building block. The variant order is the display order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    /// Euler's constant gamma.
    EulerGamma,
    /// log p for a prime p, ascending.
    LogPrime(u64),
    /// log pi.
    LogPi,
    /// log Gamma(rho) with rho in (0, 1], not 1, not 1/2.
    LogGammaRat(BigRational),
    /// Psi(rho) with rho in (0, 1], not 1, not 1/2.
    DigammaRat(BigRational),
    /// The rational unit.
    One,
}

impl Atom {
    fn render(&self) -> String {
        match self {
            Atom::EulerGamma => "gamma".to_string(),
            Atom::LogPrime(p) => format!("log {p}"),
            Atom::LogPi => "log pi".to_string(),
            Atom::LogGammaRat(rho) => format!("log Gamma({rho})"),
            Atom::DigammaRat(rho) => format!("Psi({rho})"),
            Atom::One => String::new(),
        }
    }

    fn eval(&self) -> f64 {
        match self {
            Atom::EulerGamma => special::EULER_GAMMA,
            Atom::LogPrime(2) => special::LN_2,
            Atom::LogPrime(p) => (*p as f64).ln(),
            Atom::LogPi => special::LN_PI,
            Atom::LogGammaRat(rho) => special::log_gamma(positive(rho)),
            Atom::DigammaRat(rho) => special::digamma(positive(rho)),
            Atom::One => 1.0,
        }
    }
}

fn positive(rho: &BigRational) -> PositiveReal {
    // Canonicalized rho lies in (0, 1]; the conversion cannot fail.
    PositiveReal::new(rho.to_f64().expect("small rational fits f64"))
        .expect("canonical rho is positive")
}

/// A rational linear combination of [`Atom`]s. Zero coefficients are never
/// stored, so equality of the maps is equality of the constants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicConstant {
    terms: BTreeMap<Atom, BigRational>,
}

impl SymbolicConstant {
    pub fn zero() -> Self {
        SymbolicConstant::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant `r` itself.
    pub fn rational(r: BigRational) -> Self {
        let mut c = SymbolicConstant::zero();
        c.push(Atom::One, r);
        c
    }

    pub fn integer(n: i64) -> Self {
        SymbolicConstant::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn euler_gamma() -> Self {
        let mut c = SymbolicConstant::zero();
        c.push(Atom::EulerGamma, BigRational::one());
        c
    }

    pub fn log_pi() -> Self {
        let mut c = SymbolicConstant::zero();
        c.push(Atom::LogPi, BigRational::one());
        c
    }

    /// log r for a positive rational r, decomposed into prime atoms.
    pub fn log_rational(r: &BigRational) -> Result<Self, SymbolicError> {
        if !r.is_positive() {
            return Err(SymbolicError::LogOfNonPositive(r.clone()));
        }
        let mut c = SymbolicConstant::zero();
        for (p, e) in factor(r.numer())? {
            c.push(Atom::LogPrime(p), BigRational::from_integer(BigInt::from(e)));
        }
        for (p, e) in factor(r.denom())? {
            c.push(Atom::LogPrime(p), -BigRational::from_integer(BigInt::from(e)));
        }
        Ok(c)
    }

    /// log n for a positive integer n.
    pub fn log_u64(n: u64) -> Result<Self, SymbolicError> {
        SymbolicConstant::log_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// log Gamma(rho) for rational rho > 0, canonicalized.
    pub fn log_gamma_rat(rho: &BigRational) -> Result<Self, SymbolicError> {
        if !rho.is_positive() {
            return Err(SymbolicError::NonPositiveArgument(rho.clone()));
        }
        let one = BigRational::one();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut rho = rho.clone();
        // log Gamma(rho) = log Gamma(rho - m) + log prod_{k=1..m} (rho - k)
        let mut product = BigRational::one();
        let mut steps = 0;
        while rho > one {
            rho -= &one;
            product *= &rho;
            steps += 1;
            if steps > MAX_REDUCTION_STEPS {
                return Err(SymbolicError::ArgumentTooLarge(rho));
            }
        }
        let mut c = SymbolicConstant::log_rational(&product)?;
        if rho == half {
            c.push(Atom::LogPi, half);
        } else if rho != one {
            c.push(Atom::LogGammaRat(rho), BigRational::one());
        }
        Ok(c)
    }

    /// Psi(rho) for rational rho > 0, canonicalized.
    pub fn digamma_rat(rho: &BigRational) -> Result<Self, SymbolicError> {
        if !rho.is_positive() {
            return Err(SymbolicError::NonPositiveArgument(rho.clone()));
        }
        let one = BigRational::one();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut rho = rho.clone();
        // Psi(rho) = Psi(rho - m) + sum_{k=1..m} 1/(rho - k)
        let mut harmonic = BigRational::zero();
        let mut steps = 0;
        while rho > one {
            rho -= &one;
            harmonic += rho.recip();
            steps += 1;
            if steps > MAX_REDUCTION_STEPS {
                return Err(SymbolicError::ArgumentTooLarge(rho));
            }
        }
        let mut c = SymbolicConstant::zero();
        if !harmonic.is_zero() {
            c.push(Atom::One, harmonic);
        }
        if rho == one {
            c.push(Atom::EulerGamma, -BigRational::one());
        } else if rho == half {
            c.push(Atom::EulerGamma, -BigRational::one());
            c.push(Atom::LogPrime(2), BigRational::from_integer(BigInt::from(-2)));
        } else {
            c.push(Atom::DigammaRat(rho), BigRational::one());
        }
        Ok(c)
    }

    fn push(&mut self, atom: Atom, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(atom) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (atom, coeff) in &other.terms {
            out.push(atom.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return SymbolicConstant::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(atom, coeff)| (atom.clone(), coeff * c))
            .collect();
        SymbolicConstant { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of `atom`, zero when absent.
    pub fn coeff(&self, atom: &Atom) -> BigRational {
        self.terms.get(atom).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Numeric value of the combination.
    pub fn eval(&self) -> f64 {
        self.terms
            .iter()
            .map(|(atom, coeff)| coeff.to_f64().expect("coefficient fits f64") * atom.eval())
            .sum()
    }

    /// Human-readable form, e.g. `1/2·gamma + log 2 - 1/2·log pi`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (atom, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let name = atom.render();
            if *atom == Atom::One {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&name);
            } else {
                out.push_str(&format!("{magnitude}·{name}"));
            }
        }
        out
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Trial-division factorization; the integers fed in here are word values
/// and small products, so this stays tiny.
fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>, SymbolicError> {
    let mut n = n
        .to_u64()
        .ok_or_else(|| SymbolicError::TooLargeToFactor(n.clone()))?;
    debug_assert!(n > 0, "factor() is only called on positive integers");
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(factors)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

pub(crate) fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, SymbolicError> {
    s.parse()
        .map_err(|_| SymbolicError::MalformedRational(s.to_string()))
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    atom: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    rho: Option<String>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ConstantRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for SymbolicConstant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(atom, coeff)| {
                let coeff = rational_string(coeff);
                match atom {
                    Atom::EulerGamma => TermRepr {
                        atom: "euler_gamma".into(),
                        p: None,
                        rho: None,
                        coeff,
                    },
                    Atom::LogPrime(p) => TermRepr {
                        atom: "log_prime".into(),
                        p: Some(*p),
                        rho: None,
                        coeff,
                    },
                    Atom::LogPi => TermRepr {
                        atom: "log_pi".into(),
                        p: None,
                        rho: None,
                        coeff,
                    },
                    Atom::LogGammaRat(rho) => TermRepr {
                        atom: "log_gamma_rat".into(),
                        p: None,
                        rho: Some(rational_string(rho)),
                        coeff,
                    },
                    Atom::DigammaRat(rho) => TermRepr {
                        atom: "digamma_rat".into(),
                        p: None,
                        rho: Some(rational_string(rho)),
                        coeff,
                    },
                    Atom::One => TermRepr {
                        atom: "one".into(),
                        p: None,
                        rho: None,
                        coeff,
                    },
                }
            })
            .collect();
        ConstantRepr { terms }.serialize(s)
    }
}

impl SymbolicConstant {
    fn from_repr(repr: ConstantRepr) -> Result<Self, SymbolicError> {
        let mut total = SymbolicConstant::zero();
        for term in repr.terms {
            let coeff = parse_rational(&term.coeff)?;
            let need_rho = |field: &str| -> Result<BigRational, SymbolicError> {
                let raw = term.rho.as_deref().ok_or_else(|| SymbolicError::MissingField {
                    atom: term.atom.clone(),
                    field: field.to_string(),
                })?;
                parse_rational(raw)
            };
            let piece = match term.atom.as_str() {
                "one" => SymbolicConstant::rational(BigRational::one()),
                "euler_gamma" => SymbolicConstant::euler_gamma(),
                "log_pi" => SymbolicConstant::log_pi(),
                "log_prime" => {
                    let p = term.p.ok_or_else(|| SymbolicError::MissingField {
                        atom: term.atom.clone(),
                        field: "p".to_string(),
                    })?;
                    if !is_prime(p) {
                        return Err(SymbolicError::NotPrime(p));
                    }
                    SymbolicConstant::log_u64(p)?
                }
                "log_gamma_rat" => SymbolicConstant::log_gamma_rat(&need_rho("rho")?)?,
                "digamma_rat" => SymbolicConstant::digamma_rat(&need_rho("rho")?)?,
                other => return Err(SymbolicError::UnknownAtom(other.to_string())),
            };
            total = total.add(&piece.scale(&coeff));
        }
        Ok(total)
    }
}

impl<'de> Deserialize<'de> for SymbolicConstant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ConstantRepr::deserialize(d)?;
        SymbolicConstant::from_repr(repr).map_err(D::Error::custom)
    }
}
