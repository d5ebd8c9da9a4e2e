//! Probability values in two arithmetic regimes: exact arbitrary-precision
//! rationals, and floating-point reals with explicit tolerances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic regime tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Real,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Real => write!(f, "real"),
        }
    }
}

/// A probability in `[0, 1]`, either an exact rational (kept in lowest terms
/// by `BigRational`) or an `f64`.
#[derive(Clone, Debug, PartialEq)]
pub enum Prob {
    Exact(BigRational),
    Real(f64),
}

impl Prob {
    pub fn exact(num: i64, den: i64) -> Result<Prob> {
        if den == 0 {
            return Err(Error::ProbabilityOutOfRange(format!("{num}/{den}")));
        }
        Prob::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Result<Prob> {
        if r.is_negative() || r > BigRational::one() {
            return Err(Error::ProbabilityOutOfRange(r.to_string()));
        }
        Ok(Prob::Exact(r))
    }

    pub fn real(x: f64) -> Result<Prob> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::ProbabilityOutOfRange(x.to_string()));
        }
        Ok(Prob::Real(x))
    }

    pub fn half(mode: Mode) -> Prob {
        match mode {
            Mode::Exact => Prob::exact(1, 2).unwrap(),
            Mode::Real => Prob::Real(0.5),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Prob::Exact(_) => Mode::Exact,
            Prob::Real(_) => Mode::Real,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Prob::Exact(r) => r.to_f64().unwrap(),
            Prob::Real(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Prob::Exact(r) => Some(r),
            Prob::Real(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Prob::Exact(r) => r.is_zero(),
            Prob::Real(x) => *x == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Prob::Exact(r) => r.is_one(),
            Prob::Real(x) => *x == 1.0,
        }
    }

    /// True when the value equals 1/2 exactly (exact mode) or within `tol`
    /// (real mode).
    pub fn is_half(&self, tol: f64) -> bool {
        match self {
            Prob::Exact(r) => *r == BigRational::new(BigInt::one(), BigInt::from(2)),
            Prob::Real(x) => (x - 0.5).abs() <= tol,
        }
    }

    /// Odds `p / (1 - p)` as a plain rational; only defined in exact mode
    /// away from `p = 1`.
    pub fn exact_odds(&self) -> Result<BigRational> {
        match self {
            Prob::Exact(r) if !r.is_one() => Ok(r / (BigRational::one() - r)),
            _ => Err(Error::ProbabilityOutOfRange("odds undefined".into())),
        }
    }
}

impl std::fmt::Display for Prob {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Prob::Exact(r) => write!(f, "{r}"),
            Prob::Real(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_probabilities_are_normalized() {
        let p = Prob::exact(2, 4).unwrap();
        assert_eq!(p, Prob::exact(1, 2).unwrap());
        assert!(p.is_half(0.0));
    }

    #[test]
    fn range_checks() {
        assert!(Prob::exact(3, 2).is_err());
        assert!(Prob::exact(-1, 2).is_err());
        assert!(Prob::real(1.5).is_err());
        assert!(Prob::real(-0.1).is_err());
        assert!(Prob::exact(0, 1).is_ok());
        assert!(Prob::exact(1, 1).is_ok());
    }

    #[test]
    fn negative_denominator_normalizes() {
        assert_eq!(Prob::exact(-1, -2).unwrap(), Prob::exact(1, 2).unwrap());
    }

    #[test]
    fn odds_arithmetic() {
        let p = Prob::exact(2, 3).unwrap();
        assert_eq!(p.exact_odds().unwrap(), BigRational::from(BigInt::from(2)));
        assert!(Prob::exact(1, 1).unwrap().exact_odds().is_err());
    }
}
