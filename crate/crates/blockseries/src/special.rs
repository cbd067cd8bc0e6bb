//! Special-function evaluators: log-gamma, digamma, Gauss's finite form for
//! digamma at rationals, and closed forms for three telescoping sums that
//! the series module reduces to.
//!
//! All routines target absolute error below 1e-13 on the arguments the rest
//! of the crate produces (rationals with small denominators, shifted into
//! the Stirling regime). The asymptotic coefficients are Bernoulli-number
//! ratios truncated where the x >= 8 remainder drops below 1e-15.

use serde::Serialize;
use thiserror::Error;

/// Euler's constant, 30 digits.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;
/// log 2, 30 digits.
pub const LN_2: f64 = 0.693147180559945309417232121458;
/// log pi, 30 digits.
pub const LN_PI: f64 = 1.144729885849400174143427351353;

const HALF_LN_2PI: f64 = 0.918938533204672741780329736406;

/// Arguments below this are shifted up by the recurrences before the
/// asymptotic series is applied.
const STIRLING_THRESHOLD: f64 = 8.0;

/// B_{2k} / (2k (2k-1)), the log-gamma asymptotic numerators over x^{2k-1}.
const LOG_GAMMA_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
];

/// B_{2k} / (2k), the digamma asymptotic numerators over x^{2k}.
const DIGAMMA_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

#[derive(Debug, Error, PartialEq)]
pub enum SpecialError {
    #[error("argument must be finite, got {0}")]
    NotFinite(f64),
    #[error("argument must be positive, got {0}")]
    NotPositive(f64),
    #[error("rational argument must satisfy 0 < p < q, got {p}/{q}")]
    RationalOutOfRange { p: u64, q: u64 },
}

/// A finite, strictly positive double. The special functions here have poles
/// at zero and the negative integers; restricting the domain at the type
/// level keeps every public evaluator total.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(x: f64) -> Result<Self, SpecialError> {
        if !x.is_finite() {
            return Err(SpecialError::NotFinite(x));
        }
        if x <= 0.0 {
            return Err(SpecialError::NotPositive(x));
        }
        Ok(PositiveReal(x))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = SpecialError;

    fn try_from(x: f64) -> Result<Self, Self::Error> {
        PositiveReal::new(x)
    }
}

/// log Gamma(x) for x > 0.
pub fn log_gamma(x: PositiveReal) -> f64 {
    let mut x = x.get();
    // Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1)); accumulate the
    // product and take one log at the end.
    let mut shift = 1.0;
    while x < STIRLING_THRESHOLD {
        shift *= x;
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    let mut s = 0.0;
    for &c in LOG_GAMMA_COEFFS.iter().rev() {
        s = s * z + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + s / x - shift.ln()
}

/// Psi(x) = Gamma'(x) / Gamma(x) for x > 0.
pub fn digamma(x: PositiveReal) -> f64 {
    let mut x = x.get();
    let mut shift = 0.0;
    while x < STIRLING_THRESHOLD {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    let mut s = 0.0;
    for &c in DIGAMMA_COEFFS.iter().rev() {
        s = (s + c) * z;
    }
    x.ln() - 0.5 / x - s + shift
}

/// One piece of the Gauss evaluation of Psi(p/q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GaussTerm {
    /// -gamma
    EulerGamma { value: f64 },
    /// -log(2q)
    Log { value: f64 },
    /// -(pi/2) cot(pi p / q)
    Cot { value: f64 },
    /// 2 cos(2 pi k p / q) log sin(k pi / q)
    CosLogSin { k: u64, value: f64 },
}

impl GaussTerm {
    pub fn value(&self) -> f64 {
        match *self {
            GaussTerm::EulerGamma { value }
            | GaussTerm::Log { value }
            | GaussTerm::Cot { value }
            | GaussTerm::CosLogSin { value, .. } => value,
        }
    }
}

/// Psi(p/q) evaluated by Gauss's finite sum, with the individual terms
/// retained for display.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussDigamma {
    pub p: u64,
    pub q: u64,
    pub value: f64,
    pub terms: Vec<GaussTerm>,
}

/// Gauss's closed form
///
///   Psi(p/q) = -gamma - log(2q) - (pi/2) cot(pi p / q)
///              + 2 sum_{0 < k < q/2} cos(2 pi k p / q) log sin(k pi / q)
///
/// for integers 0 < p < q. The sum runs strictly below q/2; when q is even
/// the k = q/2 term would be cos(..) log sin(pi/2) = 0, so excluding it
/// loses nothing.
pub fn gauss_digamma(p: u64, q: u64) -> Result<GaussDigamma, SpecialError> {
    if p == 0 || p >= q {
        return Err(SpecialError::RationalOutOfRange { p, q });
    }
    let pf = p as f64;
    let qf = q as f64;
    let mut terms = Vec::with_capacity(3 + (q as usize - 1) / 2);
    terms.push(GaussTerm::EulerGamma { value: -EULER_GAMMA });
    terms.push(GaussTerm::Log {
        value: -(2.0 * qf).ln(),
    });
    let angle = std::f64::consts::PI * pf / qf;
    terms.push(GaussTerm::Cot {
        value: -std::f64::consts::FRAC_PI_2 * angle.cos() / angle.sin(),
    });
    let mut k = 1;
    while 2 * k < q {
        let kf = k as f64;
        let value = 2.0
            * (2.0 * std::f64::consts::PI * kf * pf / qf).cos()
            * (kf * std::f64::consts::PI / qf).sin().ln();
        terms.push(GaussTerm::CosLogSin { k, value });
        k += 1;
    }
    let value = terms.iter().map(GaussTerm::value).sum();
    Ok(GaussDigamma { p, q, value, terms })
}

/// sum_{n >= 1} ( 1/(a n) - 1/(a n + b) )  =  1/b + (gamma + Psi(b/a)) / a.
pub fn reciprocal_diff_sum(a: PositiveReal, b: PositiveReal) -> f64 {
    let ratio = PositiveReal::new(b.get() / a.get()).expect("ratio of positive reals");
    1.0 / b.get() + (EULER_GAMMA + digamma(ratio)) / a.get()
}

/// sum_{r >= 1} ( x/r - log(1 + x/r) )  =  log x + gamma x + log Gamma(x).
pub fn weierstrass_sum(x: PositiveReal) -> f64 {
    x.get().ln() + EULER_GAMMA * x.get() + log_gamma(x)
}

/// Closed form of the tails sum_n A_{a n + b} of the logarithmic defect
/// A_m = 1/m - log((m+1)/m):
///
///   b = 0 (n >= 1):  log Gamma(1/a) + gamma/a - log a
///   b > 0 (n >= 0):  log Gamma((b+1)/a) - log Gamma(b/a) - Psi(b/a)/a
pub fn a_tail_sum(a: PositiveReal, b: f64) -> Result<f64, SpecialError> {
    if !b.is_finite() {
        return Err(SpecialError::NotFinite(b));
    }
    if b < 0.0 {
        return Err(SpecialError::NotPositive(b));
    }
    let af = a.get();
    if b == 0.0 {
        let inv_a = PositiveReal::new(1.0 / af)?;
        Ok(log_gamma(inv_a) + EULER_GAMMA / af - af.ln())
    } else {
        let rho = PositiveReal::new(b / af)?;
        let rho_next = PositiveReal::new((b + 1.0) / af)?;
        Ok(log_gamma(rho_next) - log_gamma(rho) - digamma(rho) / af)
    }
}
