//! Exact rational scalars and their canonical text form.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::KernelError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"` or `"p"` with `q > 0`. Non-reduced input such as `"2/4"` is
/// accepted and reduced.
pub fn parse_scalar(text: &str) -> Result<Scalar, KernelError> {
    let bad = || KernelError::ParseScalar(text.to_string());
    let text_trim = text.trim();
    let (numer, denom) = match text_trim.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text_trim, None),
    };
    let numer = BigInt::from_str(numer).map_err(|_| bad())?;
    let denom = match denom {
        Some(d) => {
            // A sign on the denominator is not canonical input.
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Scalar::new(numer, denom))
}

pub fn format_scalar(value: &Scalar) -> String {
    value.to_string()
}

pub fn sign_of(value: &Scalar) -> i8 {
    match value.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a row of rationals by a positive factor so every entry is an
/// integer. The sign pattern of the row is preserved.
pub fn to_integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = common_denominator(row);
    row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Reduces a row of rationals to primitive integer form by a positive scale
/// factor. Rows that are entirely zero are returned unchanged.
pub fn primitive_row(row: &[Scalar]) -> Vec<BigInt> {
    let ints = to_integer_row(row);
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

pub fn abs_max<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    values
        .into_iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Scalar::zero)
}
