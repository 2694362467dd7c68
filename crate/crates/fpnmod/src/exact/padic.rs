//! The fixed prime, p-adic valuations, and the extended integers they land in.

use crate::error::{Error, Result};
use crate::exact::rational::Rat;
use num::bigint::BigInt;
use num::traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// The fixed prime p. Construction runs a deterministic Miller–Rabin test,
/// so a `PrimeContext` always holds a genuine prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u64,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::BadParameters(format!("{p} is not prime")));
        }
        Ok(PrimeContext { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    pub fn p_rat(&self) -> Rat {
        Rat::from_integer(self.p_big())
    }
}

impl fmt::Display for PrimeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.p)
    }
}

/// An integer extended by +∞, the valuation of zero. +∞ compares greater
/// than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedInt {
    Finite(i64),
    PlusInfinity,
}

impl ExtendedInt {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedInt::Finite(_))
    }

    /// The finite value, or `None` for +∞.
    pub fn finite(&self) -> Option<i64> {
        match self {
            ExtendedInt::Finite(v) => Some(*v),
            ExtendedInt::PlusInfinity => None,
        }
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::Finite(v) => write!(f, "{v}"),
            ExtendedInt::PlusInfinity => write!(f, "+inf"),
        }
    }
}

/// v_p of a nonzero integer: the exact power of p dividing it.
fn val_big_int(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num::Integer::div_rem(&n, p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// The p-adic valuation of a rational: v_p(0) = +∞, and for x = p^v·(a/b)
/// with a, b prime to p the result is v. Additive in products.
pub fn valuation(x: &Rat, ctx: &PrimeContext) -> ExtendedInt {
    if x.is_zero() {
        return ExtendedInt::PlusInfinity;
    }
    let p = ctx.p_big();
    ExtendedInt::Finite(val_big_int(x.numer(), &p) - val_big_int(x.denom(), &p))
}

/// Deterministic Miller–Rabin for u64. The witness set covers all 64-bit
/// integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'next: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'next;
            }
        }
        return false;
    }
    true
}

/// Convenience: the valuation of a rational known to be nonzero, as an i64.
pub fn finite_valuation(x: &Rat, ctx: &PrimeContext) -> Result<i64> {
    valuation(x, ctx).finite().ok_or(Error::BadParameters(
        "valuation of zero is not finite".into(),
    ))
}

/// Largest integer e with p^e ≤ represented residues; helper for tests that
/// need p^k as a BigInt.
pub fn p_pow(ctx: &PrimeContext, k: u32) -> BigInt {
    ctx.p_big().pow(k)
}

impl PrimeContext {
    /// p^k as a rational, with k possibly negative.
    pub fn p_pow_rat(&self, k: i64) -> Rat {
        crate::exact::rational::rat_pow(&self.p_rat(), k)
    }
}

#[allow(unused)]
fn _to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};
    use rand::{Rng, SeedableRng};

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    #[test]
    fn primality() {
        assert!(PrimeContext::new(2).is_ok());
        assert!(PrimeContext::new(3).is_ok());
        assert!(PrimeContext::new(97).is_ok());
        assert!(PrimeContext::new(1).is_err());
        assert!(PrimeContext::new(4).is_err());
        assert!(PrimeContext::new(91).is_err()); // 7*13
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(5), &ctx(5)), ExtendedInt::Finite(1));
        assert_eq!(valuation(&ratio(1, 25), &ctx(5)), ExtendedInt::Finite(-2));
        assert_eq!(valuation(&rat(0), &ctx(7)), ExtendedInt::PlusInfinity);
        assert_eq!(valuation(&rat(6), &ctx(5)), ExtendedInt::Finite(0));
        assert_eq!(valuation(&ratio(50, 3), &ctx(5)), ExtendedInt::Finite(2));
    }

    #[test]
    fn plus_infinity_is_greatest() {
        assert!(ExtendedInt::PlusInfinity > ExtendedInt::Finite(i64::MAX));
        assert!(ExtendedInt::Finite(3) > ExtendedInt::Finite(-7));
    }

    // v(xy) = v(x)+v(y) and v(x+y) >= min(v(x),v(y)) over 1000 random pairs.
    #[test]
    fn valuation_is_additive_and_ultrametric() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let c = ctx(5);
        let nonzero = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let n = rng.random_range(-200i64..=200);
            let d = rng.random_range(1i64..=200);
            if n != 0 {
                return ratio(n, d);
            }
        };
        for _ in 0..1000 {
            let x = nonzero(&mut rng);
            let y = nonzero(&mut rng);
            let vx = valuation(&x, &c).finite().unwrap();
            let vy = valuation(&y, &c).finite().unwrap();
            let prod = &x * &y;
            assert_eq!(valuation(&prod, &c), ExtendedInt::Finite(vx + vy));
            let sum = &x + &y;
            let vsum = valuation(&sum, &c);
            assert!(vsum >= ExtendedInt::Finite(vx.min(vy)));
        }
    }
}
