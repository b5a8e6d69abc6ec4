//! Exact rational numbers.
//!
//! Every position and value in the crate is a [`Rational`]. Parsing accepts
//! integers and `p/q` fractions; display never produces decimals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::CakeError;

pub type Rational = BigRational;

/// Builds `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"3"`, `"-2"` or `"47/72"`. Whitespace around the token is rejected
/// by the caller's tokenizer, not here.
pub fn parse(text: &str) -> Result<Rational, CakeError> {
    let bad = || CakeError::BadNumber(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn fmt(r: &Rational) -> String {
    r.to_string()
}
