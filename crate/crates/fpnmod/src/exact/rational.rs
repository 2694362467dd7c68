//! Arbitrary-precision rational scalars.
//!
//! `Rat` is `num::BigRational`, which already maintains the canonical form we
//! rely on everywhere: lowest terms, denominator > 0, zero stored as 0/1.
//! This module adds the string conventions shared by the document format and
//! the reports: `"a"` or `"a/b"`, nothing else.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Zero};

pub type Rat = num::BigRational;

/// The integer `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The fraction `n/d`, reduced. Panics if `d == 0`; use [`parse_rat`] for
/// untrusted input.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for a nonzero rational base and a possibly negative exponent.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    base.pow(i32::try_from(exp).expect("exponent fits in i32"))
}

/// Canonical rendering: `"a"` when the denominator is one, else `"a/b"` with
/// the sign on the numerator.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"a"` or `"a/b"`. Rejects division by zero and empty parts;
/// non-canonical forms such as `"2/4"` or `"1/-2"` are normalized on read.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |detail: &str| Error::Parse(format!("invalid rational {s:?}: {detail}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| bad("numerator is not an integer"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| bad("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("division by zero"));
    }
    Ok(Rat::new(numer, denom))
}
