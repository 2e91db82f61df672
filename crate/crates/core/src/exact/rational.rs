use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for `numer/denom`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p"` or `"p/q"`; surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::MalformedRational(text.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"p/q"`, omitting `q` when it is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Comma separated list of rationals, e.g. `"1/2,0,-3"`.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

pub fn format_vector(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// Fractional part in `[0, 1)`.
pub(crate) fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

pub(crate) fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub(crate) fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn dot_int(lambda: &[i64], theta: &[Rational]) -> Rational {
    lambda
        .iter()
        .zip(theta)
        .fold(Rational::zero(), |acc, (l, t)| acc + from_int(*l) * t)
}
