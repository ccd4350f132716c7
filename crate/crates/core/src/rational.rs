//! Exact rational scalars and their canonical text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// The scalar type used for every coordinate in the crate.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational (expected an integer or p/q)")]
pub struct ParseRationalError {
    pub input: String,
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"7"`, `"-3/4"` or `"+5/10"` (reduced on the way in).
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: input.to_string(),
    };
    let s = input.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string: lowest terms, positive denominator, `"p"` when integral.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn format_vec(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: fall back to a ratio of floats.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}
