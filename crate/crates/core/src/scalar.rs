//! Membership grades.
//!
//! Everything above this module is generic over the scalar carrying a grade. Exact
//! rationals are the default (see [`crate::Rational`]); `f64` works for exploratory use but
//! strict-mode equality on floats is only as good as the float values involved.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Scalar types usable as membership grades.
pub trait GradeScalar:
    Clone + PartialOrd + Zero + One + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> GradeScalar for T where
    T: Clone + PartialOrd + Zero + One + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// A membership value in the closed unit interval.
#[derive(Clone, PartialEq, PartialOrd, Debug)]
pub struct Grade<S>(S);

impl<S: GradeScalar> Grade<S> {
    pub fn new(value: S) -> Result<Self> {
        if value >= S::zero() && value <= S::one() {
            Ok(Grade(value))
        } else {
            Err(Error::GradeRange(value.to_string()))
        }
    }

    pub fn zero() -> Self {
        Grade(S::zero())
    }

    pub fn one() -> Self {
        Grade(S::one())
    }

    pub fn value(&self) -> &S {
        &self.0
    }

    pub fn into_value(self) -> S {
        self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0 > S::zero()
    }

    /// The larger of two grades; grades are totally ordered for every supported scalar.
    pub fn max(self, other: Self) -> Self {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }
}

impl<S: fmt::Display> fmt::Display for Grade<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Grade<crate::Rational> {
    /// Parses `"p/q"` (or a bare integer) into an exact grade.
    pub fn parse(text: &str) -> Result<Self> {
        let value: crate::Rational = text
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("malformed grade {text:?}")))?;
        Grade::new(value)
    }

    /// Canonical `"p/q"` rendering; integers keep an explicit denominator.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Grade::new(crate::Rational::new(numer, denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn range_is_enforced() {
        assert!(Grade::new(Rational::new(3, 2)).is_err());
        assert!(Grade::new(Rational::new(-1, 5)).is_err());
        assert!(Grade::new(Rational::new(0, 1)).is_ok());
        assert!(Grade::new(1.0f64).is_ok());
        assert!(Grade::new(f64::NAN).is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let a = Grade::ratio(2, 4).unwrap();
        let b = Grade::ratio(1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_fraction_string(), "1/2");
        assert_eq!(Grade::<Rational>::one().to_fraction_string(), "1/1");
    }

    #[test]
    fn parse_fraction_strings() {
        assert_eq!(Grade::parse("3/10").unwrap(), Grade::ratio(3, 10).unwrap());
        assert_eq!(Grade::parse("1").unwrap(), Grade::one());
        assert!(matches!(Grade::parse("3/2"), Err(Error::GradeRange(_))));
        assert!(matches!(Grade::parse("a/b"), Err(Error::Domain(_))));
    }
}
