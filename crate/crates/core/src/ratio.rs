//! Exact rationals and a certified rational bracket around ln 2.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A rational number kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    /// Builds `numerator / denominator`. Returns `None` for a zero denominator.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Option<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return None;
        }
        Some(ExactRatio(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(value.into()))
    }

    pub fn from_biguint(value: &BigUint) -> Self {
        Self::from_integer(BigInt::from(value.clone()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always at least one.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactRatio(self.0.recip()))
        }
    }

    /// Integer power; negative exponents invert. `None` for `0^negative`.
    pub fn powi(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = BigRational::one();
        let mut sq = base.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(ExactRatio(acc))
    }

    /// Rough decimal rendering for human-facing output only.
    pub fn approx_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRatio {
    fn from(r: BigRational) -> Self {
        ExactRatio(r)
    }
}

impl From<u64> for ExactRatio {
    fn from(v: u64) -> Self {
        Self::from_integer(v)
    }
}

impl From<&BigUint> for ExactRatio {
    fn from(v: &BigUint) -> Self {
        Self::from_biguint(v)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRatio> for &'a ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &'a ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for ExactRatio {
    type Output = ExactRatio;
    /// Panics on division by zero, like the integer operators.
    fn div(self, rhs: ExactRatio) -> ExactRatio {
        assert!(!rhs.is_zero(), "ExactRatio division by zero");
        ExactRatio(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: &'a ExactRatio) -> ExactRatio {
        assert!(!rhs.is_zero(), "ExactRatio division by zero");
        ExactRatio(&self.0 / &rhs.0)
    }
}

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

/// Outcome of comparing an exact quantity against ln 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ln2Comparison {
    Below,
    Above,
    Inconclusive,
}

impl Ln2Comparison {
    pub fn name(self) -> &'static str {
        match self {
            Ln2Comparison::Below => "Below",
            Ln2Comparison::Above => "Above",
            Ln2Comparison::Inconclusive => "Inconclusive",
        }
    }
}

/// Number of series terms used by the first refinement after the default bracket.
pub const FIRST_REFINEMENT_TERMS: u32 = 32;

/// Default series-term cap for automatic refinement.
pub const DEFAULT_LN2_TERM_CAP: u32 = 4096;

/// Rationals `lower < ln 2 < upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ln2Bracket {
    lower: ExactRatio,
    upper: ExactRatio,
}

impl Default for Ln2Bracket {
    /// `693147/1000000 < ln 2 < 693148/1000000`.
    fn default() -> Self {
        Ln2Bracket {
            lower: ExactRatio::new(693_147u32, 1_000_000u32).unwrap(),
            upper: ExactRatio::new(693_148u32, 1_000_000u32).unwrap(),
        }
    }
}

impl Ln2Bracket {
    pub fn lower(&self) -> &ExactRatio {
        &self.lower
    }

    pub fn upper(&self) -> &ExactRatio {
        &self.upper
    }

    pub fn width(&self) -> ExactRatio {
        &self.upper - &self.lower
    }

    /// Bracket from the first `terms` terms of `ln 2 = sum_{j>=1} 1 / (j 2^j)`.
    ///
    /// The partial sum is a strict lower bound (all terms positive) and the
    /// tail is strictly below `1 / ((terms + 1) 2^terms)`.
    pub fn from_series(terms: u32) -> Self {
        let terms = terms.max(1);
        let mut sum = BigRational::zero();
        let mut pow2 = BigInt::one();
        for j in 1..=terms {
            pow2 <<= 1;
            sum += BigRational::new(BigInt::one(), BigInt::from(j) * &pow2);
        }
        let tail = BigRational::new(BigInt::one(), BigInt::from(terms + 1) * &pow2);
        let upper = &sum + tail;
        Ln2Bracket {
            lower: ExactRatio(sum),
            upper: ExactRatio(upper),
        }
    }

    /// The tighter of `self` and `other` on each side.
    pub fn intersect(&self, other: &Ln2Bracket) -> Ln2Bracket {
        Ln2Bracket {
            lower: self.lower.clone().max(other.lower.clone()),
            upper: self.upper.clone().min(other.upper.clone()),
        }
    }

    pub fn compare(&self, x: &ExactRatio) -> Ln2Comparison {
        if x < &self.lower {
            Ln2Comparison::Below
        } else if x > &self.upper {
            Ln2Comparison::Above
        } else {
            Ln2Comparison::Inconclusive
        }
    }

    /// Compares against the default bracket, then refines with 32, 64, ...
    /// series terms until the answer is conclusive or `term_cap` is reached.
    pub fn compare_refining(x: &ExactRatio, term_cap: u32) -> Ln2Comparison {
        let mut bracket = Ln2Bracket::default();
        let mut verdict = bracket.compare(x);
        let mut terms = FIRST_REFINEMENT_TERMS;
        while verdict == Ln2Comparison::Inconclusive && terms <= term_cap {
            bracket = bracket.intersect(&Ln2Bracket::from_series(terms));
            verdict = bracket.compare(x);
            terms = terms.saturating_mul(2);
        }
        verdict
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_is_reduced() {
        let r = ExactRatio::new(6, -4).unwrap();
        assert_eq!(r.numerator(), &BigInt::from(-3));
        assert_eq!(r.denominator(), &BigInt::from(2));
        assert!(ExactRatio::new(1, 0).is_none());
    }

    #[test]
    fn negative_powers() {
        let three = ExactRatio::from_integer(3);
        assert_eq!(three.powi(-2).unwrap(), ExactRatio::new(1, 9).unwrap());
        assert_eq!(three.powi(0).unwrap(), ExactRatio::one());
        assert!(ExactRatio::zero().powi(-1).is_none());
    }

    #[test]
    fn series_brackets_shrink_and_nest_the_default() {
        let d = Ln2Bracket::default();
        let s = Ln2Bracket::from_series(40);
        assert!(s.lower() < s.upper());
        // the series bracket at 40 terms is far tighter than 1e-6 and lies inside
        assert!(d.lower() < s.lower());
        assert!(s.upper() < d.upper());
        assert!(Ln2Bracket::from_series(80).width() < s.width());
    }

    #[test]
    fn refinement_decides_close_values() {
        // 0.6931472 > ln 2 = 0.69314718..., inside the default bracket
        let x = ExactRatio::new(6_931_472u32, 10_000_000u32).unwrap();
        assert_eq!(Ln2Bracket::default().compare(&x), Ln2Comparison::Inconclusive);
        assert_eq!(Ln2Bracket::compare_refining(&x, 1024), Ln2Comparison::Above);
        let y = ExactRatio::new(69_314_718u32, 100_000_000u32).unwrap();
        assert_eq!(Ln2Bracket::compare_refining(&y, 1024), Ln2Comparison::Below);
        // cap too small to decide
        assert_eq!(Ln2Bracket::compare_refining(&x, 8), Ln2Comparison::Inconclusive);
    }
}
