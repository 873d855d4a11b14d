//! Exact rational parameters.
//!
//! Every coordinate in the crate (domain parameters, codomain coordinates,
//! window radii) is an arbitrary-precision rational.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand constructor, `q(1, 2)` is one half.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
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

pub fn half() -> Rational {
    q(1, 2)
}

/// Parses `p/q` or a bare integer. Returns `None` on malformed input or a
/// zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().ok()?;
    let denom: BigInt = denom.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// Formats in lowest terms, integers without a denominator.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True for `0 < value < 1`.
pub fn in_open_unit(value: &Rational) -> bool {
    value.is_positive() && value < &one()
}

/// True for `0 <= value <= 1`.
pub fn in_closed_unit(value: &Rational) -> bool {
    !value.is_negative() && value <= &one()
}

/// Point dividing `[from, to]` in ratio `frac`.
pub fn lerp(from: &Rational, to: &Rational, frac: &Rational) -> Rational {
    from + (to - from) * frac
}

pub fn min_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().min().cloned()
}
