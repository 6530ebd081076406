//! Arbitrary-precision counts and rationals.
//!
//! Counts are [`BigUint`] and weights/sums are [`num_rational::BigRational`]; nothing in
//! the crate is allowed to overflow. Rationals travel as `"p/q"` strings in every
//! machine-readable format.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigCount = BigUint;
pub type BigRational = num_rational::BigRational;

/// Parses `"p/q"`, `"p"` or `"-p/q"`. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::input(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::input(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Always `"p/q"`, including `"n/1"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(if r.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

pub fn count_to_rational(c: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(c.clone()))
}

pub fn int_rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

pub fn pow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Least common multiple of the denominators, used to put a weight vector over a
/// common denominator.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigUint {
    use num_integer::Integer;
    values.into_iter().fold(BigUint::one(), |acc, v| {
        let den = v.denom().magnitude();
        acc.lcm(den)
    })
}
