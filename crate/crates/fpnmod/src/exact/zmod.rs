//! Polynomial arithmetic over Z/m, used by the Zassenhaus factorization and
//! the p-adic Hensel lifting. Polynomials are coefficient vectors in
//! ascending degree with canonical residues in [0, m); the vector is trimmed
//! so the last entry is nonzero.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

use crate::exact::rational::Rat;

#[derive(Debug, Clone)]
pub(crate) struct ZMod {
    pub m: BigInt,
}

pub(crate) type ZPoly = Vec<BigInt>;

impl ZMod {
    pub fn new(m: BigInt) -> Self {
        debug_assert!(m > BigInt::one());
        ZMod { m }
    }

    pub fn reduce(&self, x: &BigInt) -> BigInt {
        let r = x % &self.m;
        if r.is_negative() {
            r + &self.m
        } else {
            r
        }
    }

    /// Representative in (−m/2, m/2].
    pub fn balanced(&self, x: &BigInt) -> BigInt {
        let r = self.reduce(x);
        if &r * 2 > self.m {
            r - &self.m
        } else {
            r
        }
    }

    /// Modular inverse by extended Euclid, if it exists.
    pub fn inv(&self, x: &BigInt) -> Option<BigInt> {
        let (mut r0, mut r1) = (self.m.clone(), self.reduce(x));
        let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
        while !r1.is_zero() {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            let t2 = &t0 - &q * &t1;
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_one() {
            Some(self.reduce(&t0))
        } else {
            None
        }
    }

    /// Residue of a rational whose denominator is invertible mod m.
    pub fn rat_residue(&self, x: &Rat) -> Option<BigInt> {
        let d = self.inv(x.denom())?;
        Some(self.reduce(&(self.reduce(x.numer()) * d)))
    }

    pub fn trim(&self, mut f: ZPoly) -> ZPoly {
        while f.last().is_some_and(|c| c.is_zero()) {
            f.pop();
        }
        f
    }

    pub fn normalize(&self, f: &[BigInt]) -> ZPoly {
        self.trim(f.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn add(&self, f: &[BigInt], g: &[BigInt]) -> ZPoly {
        let n = f.len().max(g.len());
        let get = |h: &[BigInt], i: usize| h.get(i).cloned().unwrap_or_else(BigInt::zero);
        self.trim(
            (0..n)
                .map(|i| self.reduce(&(get(f, i) + get(g, i))))
                .collect(),
        )
    }

    pub fn sub(&self, f: &[BigInt], g: &[BigInt]) -> ZPoly {
        let n = f.len().max(g.len());
        let get = |h: &[BigInt], i: usize| h.get(i).cloned().unwrap_or_else(BigInt::zero);
        self.trim(
            (0..n)
                .map(|i| self.reduce(&(get(f, i) - get(g, i))))
                .collect(),
        )
    }

    pub fn mul(&self, f: &[BigInt], g: &[BigInt]) -> ZPoly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        self.normalize(&out)
    }

    pub fn mul_scalar(&self, f: &[BigInt], c: &BigInt) -> ZPoly {
        self.trim(f.iter().map(|a| self.reduce(&(a * c))).collect())
    }

    /// Quotient and remainder by a divisor with invertible leading
    /// coefficient.
    pub fn divmod(&self, f: &[BigInt], g: &[BigInt]) -> (ZPoly, ZPoly) {
        let dg = g.len() - 1;
        let lc_inv = self
            .inv(g.last().expect("nonzero divisor"))
            .expect("leading coefficient must be invertible");
        let mut rem: ZPoly = f.iter().map(|c| self.reduce(c)).collect();
        let mut quo = vec![BigInt::zero(); f.len().saturating_sub(dg)];
        while rem.len() > dg {
            let k = rem.len() - 1 - dg;
            let c = self.reduce(&(rem.last().unwrap() * &lc_inv));
            if !c.is_zero() {
                for i in 0..=dg {
                    let sub = &g[i] * &c;
                    rem[k + i] = self.reduce(&(&rem[k + i] - sub));
                }
                quo[k] = c;
            }
            rem.pop();
        }
        (self.trim(quo), self.trim(rem))
    }

    pub fn rem(&self, f: &[BigInt], g: &[BigInt]) -> ZPoly {
        self.divmod(f, g).1
    }

    pub fn make_monic(&self, f: &[BigInt]) -> ZPoly {
        match f.last() {
            None => Vec::new(),
            Some(lc) => {
                let inv = self
                    .inv(lc)
                    .expect("leading coefficient must be invertible");
                self.mul_scalar(f, &inv)
            }
        }
    }

    /// Monic gcd; valid when m is prime.
    pub fn gcd(&self, f: &[BigInt], g: &[BigInt]) -> ZPoly {
        let mut a = self.normalize(f);
        let mut b = self.normalize(g);
        while !b.is_empty() {
            let r = self.rem(&a, &self.make_monic(&b));
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.make_monic(&a)
        }
    }

    /// Extended Euclid for prime m: returns (s, t) with s·f + t·g ≡ 1,
    /// assuming gcd(f, g) = 1.
    pub fn ext_gcd_coprime(&self, f: &[BigInt], g: &[BigInt]) -> (ZPoly, ZPoly) {
        let mut r0 = self.normalize(f);
        let mut r1 = self.normalize(g);
        let (mut s0, mut s1) = (vec![BigInt::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![BigInt::one()]);
        while !r1.is_empty() {
            let (q, r2) = self.divmod(&r0, &self.make_monic(&r1));
            // divmod used the monic form of r1; rescale the quotient back.
            let lc_inv = self.inv(r1.last().unwrap()).unwrap();
            let q = self.mul_scalar(&q, &lc_inv);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        debug_assert_eq!(r0.len(), 1, "inputs must be coprime");
        let inv = self.inv(&r0[0]).expect("gcd must be a unit");
        (self.mul_scalar(&s0, &inv), self.mul_scalar(&t0, &inv))
    }

    /// x^e mod f, for monic f.
    pub fn pow_x_mod(&self, e: u64, f: &[BigInt]) -> ZPoly {
        let x = vec![BigInt::zero(), BigInt::one()];
        let mut acc = vec![BigInt::one()];
        let mut base = self.rem(&x, f);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), f);
            }
            base = self.rem(&self.mul(&base, &base), f);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(m: i64) -> ZMod {
        ZMod::new(BigInt::from(m))
    }

    fn poly(coeffs: &[i64]) -> ZPoly {
        coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn divmod_round_trips() {
        let z = zp(7);
        let f = z.normalize(&poly(&[3, 0, 5, 1]));
        let g = z.normalize(&poly(&[2, 1]));
        let (q, r) = z.divmod(&f, &g);
        let back = z.add(&z.mul(&q, &g), &r);
        assert_eq!(back, f);
    }

    #[test]
    fn ext_gcd_produces_bezout_identity() {
        let z = zp(5);
        let f = z.normalize(&poly(&[0, 1])); // x
        let g = z.normalize(&poly(&[4, 1])); // x - 1
        let (s, t) = z.ext_gcd_coprime(&f, &g);
        let one = z.add(&z.mul(&s, &f), &z.mul(&t, &g));
        assert_eq!(one, poly(&[1]));
    }

    #[test]
    fn balanced_representatives() {
        let z = zp(7);
        assert_eq!(z.balanced(&BigInt::from(5)), BigInt::from(-2));
        assert_eq!(z.balanced(&BigInt::from(3)), BigInt::from(3));
        assert_eq!(z.balanced(&BigInt::from(-1)), BigInt::from(-1));
    }

    #[test]
    fn rational_residues() {
        let z = zp(25);
        // 1/2 mod 25 = 13.
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        assert_eq!(z.rat_residue(&half), Some(BigInt::from(13)));
        let fifth = Rat::new(BigInt::one(), BigInt::from(5));
        assert_eq!(z.rat_residue(&fifth), None);
    }
}
