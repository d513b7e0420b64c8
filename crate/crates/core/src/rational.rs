//! Exact rational scalars shared by every symbolic layer of the crate.
//!
//! Provides:
//! - [`Rational`], an arbitrary-precision fraction kept in lowest terms,
//! - small constructors ([`rat`], [`rat_int`], [`big_rat`]),
//! - `p/q` text round-tripping ([`parse_rational`], [`parse_rational_strict`],
//!   [`format_rational`]).
//!
//! The strict parser is the one used for files under version control: it
//! rejects anything that is not already in lowest terms with a positive
//! denominator, so stored tables have exactly one spelling per value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational, always reduced to lowest terms.
pub type Rational = BigRational;

/// Error produced when a `p/q` string cannot be read back as a [`Rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalParseError {
    /// The offending input.
    pub input: String,
    /// Human-readable reason the input was rejected.
    pub reason: String,
}

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for RationalParseError {}

/// Builds a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    assert!(denom != 0, "rational denominator must be nonzero");
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds an integer-valued rational.
pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Builds a rational from big integers.
pub fn big_rat(numer: BigInt, denom: BigInt) -> Rational {
    assert!(!denom.is_zero(), "rational denominator must be nonzero");
    Rational::new(numer, denom)
}

/// Integer power with a nonnegative exponent, by repeated squaring.
pub fn rat_pow(base: &Rational, exp: u32) -> Rational {
    let mut result = Rational::one();
    let mut acc = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &acc;
        }
        e >>= 1;
        if e > 0 {
            acc = &acc * &acc;
        }
    }
    result
}

/// Formats a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn err(input: &str, reason: impl Into<String>) -> RationalParseError {
    RationalParseError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_bigint(text: &str, input: &str, what: &str) -> Result<BigInt, RationalParseError> {
    if text.is_empty() {
        return Err(err(input, format!("empty {what}")));
    }
    text.parse::<BigInt>()
        .map_err(|_| err(input, format!("{what} {text:?} is not an integer")))
}

/// Parses `p` or `p/q` into a rational, reducing as needed.
///
/// Accepts an optional leading sign on the numerator; the denominator must be
/// a positive integer literal.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(err(s, "empty input"));
    }
    match trimmed.split_once('/') {
        None => Ok(Rational::from_integer(parse_bigint(trimmed, s, "numerator")?)),
        Some((p, q)) => {
            let numer = parse_bigint(p.trim(), s, "numerator")?;
            let denom = parse_bigint(q.trim(), s, "denominator")?;
            if denom.is_negative() || denom.is_zero() {
                return Err(err(s, "denominator must be a positive integer"));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Parses `p` or `p/q`, rejecting inputs that are not already in lowest terms.
///
/// This is the parser for file formats kept under version control: `2/4`,
/// `0/5`, and `1/-2` are all errors, so every stored value has a canonical
/// spelling.
pub fn parse_rational_strict(s: &str) -> Result<Rational, RationalParseError> {
    let value = parse_rational(s)?;
    if format_rational(&value) != s.trim() {
        return Err(err(
            s,
            format!(
                "not in lowest terms (canonical spelling is {:?})",
                format_rational(&value)
            ),
        ));
    }
    Ok(value)
}
