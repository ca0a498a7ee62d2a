//! Exact rationals over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Always in lowest terms with a positive denominator.
pub type Ratio = BigRational;

pub fn int(v: impl Into<BigInt>) -> Ratio {
    Ratio::from_integer(v.into())
}

pub fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Ratio {
    Ratio::new(num.into(), den.into())
}

/// Parses `p/q`, `p` or `-p/q`.
pub fn parse_ratio(text: &str) -> Result<Ratio> {
    let bad = || Error::InvalidParams(format!("`{text}` is not a rational p/q"));
    let (num, den) = match text.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Ratio>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Multiplies every value by the common denominator, returning the integer
/// numerators.
pub fn clear_denominators(values: &[Ratio]) -> Vec<BigInt> {
    let d = lcm_of_denominators(values);
    values
        .iter()
        .map(|r| r.numer() * (&d / r.denom()))
        .collect()
}

/// Nearest f64; only for human-readable output.
pub fn to_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn ratio_string(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
