//! Exact factorization of rational polynomials and slope factorization over
//! Q_p.
//!
//! The rational factorization is classical Zassenhaus: reduce to a monic
//! integer polynomial, Yun square-free decomposition, Berlekamp modulo a
//! small good prime, quadratic Hensel lifting past the Mignotte bound, and
//! subset recombination. Everything is deterministic.
//!
//! `slope_factorization` splits a monic polynomial into factors of pure
//! Newton slope. When every irreducible rational factor is already
//! slope-pure the result is exact; otherwise the offending factors are split
//! p-adically by Hensel lifting the Newton-polygon factorization at a finite
//! working precision, and the outputs are flagged approximate.

use crate::error::{Error, Result};
use crate::exact::newton::newton_polygon;
use crate::exact::padic::PrimeContext;
use crate::exact::poly::Poly;
use crate::exact::rational::{rat_pow, Rat};
use crate::exact::zmod::{ZMod, ZPoly};
use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Whether a computed object is exact or only correct modulo p^precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Approximate { precision: u32 },
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

/// One slope-pure block of a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeFactor {
    pub slope: Rat,
    pub factor: Poly,
    pub exactness: Exactness,
}

// ---------------------------------------------------------------------------
// Rational factorization (Zassenhaus)
// ---------------------------------------------------------------------------

/// Odd primes in order, for choosing a reduction prime. Only finitely many
/// primes divide the discriminant of a square-free polynomial, so iterating
/// this stream always finds a good one; it is kept small (≤ 210 or so)
/// because Berlekamp's split loop runs over all of F_l.
fn small_primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| crate::exact::padic::is_prime_u64(n))
}

fn poly_from_zpoly(f: &[BigInt]) -> Poly {
    Poly::from_coeffs(f.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

/// Exact division of integer polynomials with monic divisor; `None` if the
/// division is inexact.
fn int_poly_div_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(g.last().is_some_and(|c| c.is_one()));
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return if f.iter().all(|c| c.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let mut rem: Vec<BigInt> = f.to_vec();
    let mut quo = vec![BigInt::zero(); f.len() - dg];
    while rem.len() > dg {
        let k = rem.len() - 1 - dg;
        let c = rem.last().unwrap().clone();
        if !c.is_zero() {
            for i in 0..=dg {
                let sub = &g[i] * &c;
                rem[k + i] -= sub;
            }
            quo[k] = c;
        }
        rem.pop();
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quo)
    } else {
        None
    }
}

/// Berlekamp factorization of a monic square-free polynomial mod l.
/// Deterministic: splits with every kernel vector over all c in F_l.
fn berlekamp(z: &ZMod, f: &ZPoly, l: u64) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Frobenius matrix: column i = x^(i*l) mod f.
    let mut frob = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        let col = z.pow_x_mod(i as u64 * l, f);
        for (j, c) in col.iter().enumerate() {
            frob[j][i] = c.clone();
        }
    }
    // Kernel of (frob - I) over F_l by Gaussian elimination.
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut v = frob[r][c].clone();
                    if r == c {
                        v -= 1;
                    }
                    z.reduce(&v)
                })
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = z.inv(&m[rank][col]).unwrap();
        for j in 0..n {
            m[rank][j] = z.reduce(&(&m[rank][j] * &inv));
        }
        for r in 0..n {
            if r != rank && !m[r][col].is_zero() {
                let c = m[r][col].clone();
                for j in 0..n {
                    let sub = &m[rank][j] * &c;
                    m[r][j] = z.reduce(&(&m[r][j] - sub));
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel: Vec<ZPoly> = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![BigInt::zero(); n];
        v[free] = BigInt::one();
        for &(pr, pc) in &pivots {
            v[pc] = z.reduce(&-&m[pr][free]);
        }
        kernel.push(z.trim(v));
    }
    let r = kernel.len();
    let mut factors = vec![f.clone()];
    for v in &kernel {
        if factors.len() == r {
            break;
        }
        // Skip the constant kernel vector.
        if v.len() <= 1 {
            continue;
        }
        let mut next: Vec<ZPoly> = Vec::new();
        for h in factors {
            if h.len() <= 2 || next.len() + 1 == r {
                next.push(h);
                continue;
            }
            let mut parts: Vec<ZPoly> = Vec::new();
            let mut rest = h.clone();
            for c in 0..l {
                if rest.len() <= 1 {
                    break;
                }
                let mut shifted = v.clone();
                if shifted.is_empty() {
                    shifted.push(BigInt::zero());
                }
                shifted[0] = z.reduce(&(&shifted[0] - BigInt::from(c)));
                let g = z.gcd(&rest, &z.trim(shifted));
                if g.len() > 1 {
                    parts.push(g.clone());
                    rest = z.divmod(&rest, &g).0;
                }
            }
            if rest.len() > 1 {
                parts.push(z.make_monic(&rest));
            }
            next.extend(parts);
        }
        factors = next;
    }
    factors.sort();
    factors
}

/// One quadratic Hensel step from modulus `m_cur` to `m_next`, where
/// m_cur | m_next and m_next | m_cur². All inputs satisfy f ≡ g·h and
/// s·g + t·h ≡ 1 mod m_cur with g, h monic; outputs satisfy the same
/// mod m_next.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    zn: &ZMod,
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = zn.sub(f, &zn.mul(g, h));
    let (q, r) = zn.divmod(&zn.mul(s, &e), h);
    let g1 = zn.add(&zn.add(g, &zn.mul(t, &e)), &zn.mul(&q, g));
    let h1 = zn.add(h, &r);
    let b = zn.sub(&zn.add(&zn.mul(s, &g1), &zn.mul(t, &h1)), &[BigInt::one()]);
    let (c, d) = zn.divmod(&zn.mul(s, &b), &h1);
    let s1 = zn.sub(s, &d);
    let t1 = zn.sub(&zn.sub(t, &zn.mul(t, &b)), &zn.mul(&c, &g1));
    debug_assert!(h1.last().is_some_and(|c| c.is_one()));
    debug_assert!(g1.last().is_some_and(|c| c.is_one()));
    (g1, h1, s1, t1)
}

/// Lift a two-factor factorization of f from mod l to mod l^target_exp.
fn hensel_lift_pair(
    l: u64,
    target_exp: u32,
    f_target: &ZPoly,
    g0: &ZPoly,
    h0: &ZPoly,
) -> (ZPoly, ZPoly) {
    let zl = ZMod::new(BigInt::from(l));
    let (s, t) = zl.ext_gcd_coprime(g0, h0);
    let mut g = g0.clone();
    let mut h = h0.clone();
    let mut s = s;
    let mut t = t;
    let mut exp = 1u32;
    while exp < target_exp {
        let next = (exp * 2).min(target_exp);
        let zn = ZMod::new(BigInt::from(l).pow(next));
        let f_cur = zn.normalize(f_target);
        let (g1, h1, s1, t1) = hensel_step(&zn, &f_cur, &g, &h, &s, &t);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        exp = next;
    }
    (g, h)
}

/// Lift a multifactor factorization of monic f from mod l to mod
/// l^target_exp by recursive two-factor splitting.
fn hensel_lift_list(l: u64, target_exp: u32, f_target: &ZPoly, parts: &[ZPoly]) -> Vec<ZPoly> {
    let zt = ZMod::new(BigInt::from(l).pow(target_exp));
    if parts.len() == 1 {
        return vec![zt.make_monic(&zt.normalize(f_target))];
    }
    let zl = ZMod::new(BigInt::from(l));
    let mid = parts.len() / 2;
    let g0 = parts[..mid]
        .iter()
        .fold(vec![BigInt::one()], |acc, p| zl.mul(&acc, p));
    let h0 = parts[mid..]
        .iter()
        .fold(vec![BigInt::one()], |acc, p| zl.mul(&acc, p));
    let (g, h) = hensel_lift_pair(l, target_exp, f_target, &g0, &h0);
    let mut out = hensel_lift_list(l, target_exp, &g, &parts[..mid]);
    out.extend(hensel_lift_list(l, target_exp, &h, &parts[mid..]));
    out
}

/// Coefficient bound for monic factors of a monic integer polynomial
/// (a comfortable Landau–Mignotte overshoot): 2^n · (‖f‖₂ + 1).
fn factor_coeff_bound(f: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = num::integer::Roots::sqrt(&norm_sq) + 1;
    let n = f.len() as u32;
    (norm + BigInt::one()) << n
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factor a monic square-free integer polynomial into monic irreducible
/// integer factors.
fn factor_squarefree_monic_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // A good prime: f stays square-free mod l.
    let l = small_primes()
        .find(|&l| {
            let z = ZMod::new(BigInt::from(l));
            let fl = z.normalize(f);
            if fl.len() != f.len() {
                return false;
            }
            let deriv: ZPoly = z.trim(
                fl.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, c)| z.reduce(&(c * BigInt::from(i))))
                    .collect(),
            );
            if deriv.is_empty() {
                return false;
            }
            z.gcd(&fl, &deriv).len() == 1
        })
        .expect("square-free integer polynomial has a good prime");
    let zl = ZMod::new(BigInt::from(l));
    let fl = zl.normalize(f);
    let modular = berlekamp(&zl, &fl, l);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Lift past twice the factor coefficient bound.
    let bound = factor_coeff_bound(f) * 2;
    let mut target_exp = 1u32;
    let mut m = BigInt::from(l);
    while m <= bound {
        m *= BigInt::from(l);
        target_exp += 1;
    }
    let zt = ZMod::new(m);
    let lifted = hensel_lift_list(l, target_exp, &zt.normalize(f), &modular);

    // Subset recombination against the exact integer polynomial.
    let mut remaining = lifted;
    let mut target = f.to_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut size = 1;
    'sizes: while 2 * size <= remaining.len() {
        for combo in combinations(remaining.len(), size) {
            let prod = combo
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zt.mul(&acc, &remaining[i]));
            let candidate: Vec<BigInt> = prod.iter().map(|c| zt.balanced(c)).collect();
            if let Some(quot) = int_poly_div_exact(&target, &candidate) {
                out.push(candidate);
                target = quot;
                let drop: std::collections::BTreeSet<usize> = combo.into_iter().collect();
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !drop.contains(i))
                    .map(|(_, p)| p)
                    .collect();
                continue 'sizes;
            }
        }
        size += 1;
    }
    if target.len() > 1 {
        out.push(target);
    }
    out.sort();
    out
}

/// Yun's square-free decomposition of a monic rational polynomial:
/// f = ∏ partᵢ^i with the parts monic, square-free, and pairwise coprime.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let u = f.gcd(&df);
    if u.degree() == Some(0) {
        return vec![(f.clone(), 1)];
    }
    let mut v = f.div_exact(&u).expect("gcd divides");
    let mut w = df.div_exact(&u).expect("gcd divides derivative");
    let mut i = 1usize;
    while v.degree() != Some(0) {
        let z = &w - &v.derivative();
        let h = v.gcd(&z);
        if h.degree().unwrap_or(0) > 0 {
            out.push((h.clone(), i));
        }
        v = v.div_exact(&h).expect("gcd divides");
        w = z.div_exact(&h).expect("gcd divides");
        i += 1;
    }
    out
}

/// Substitute x = y/D to clear denominators of a monic rational polynomial;
/// returns the monic integer polynomial F(y) = Dⁿ·f(y/D) and D.
fn clear_denominators_monic(f: &Poly) -> (Vec<BigInt>, BigInt) {
    let d: BigInt = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let n = f.degree().expect("nonzero polynomial");
    let coeffs: Vec<BigInt> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let scaled = c * Rat::from_integer(d.pow((n - i) as u32));
            debug_assert!(scaled.denom().is_one());
            scaled.numer().clone()
        })
        .collect();
    (coeffs, d)
}

/// Map a monic integer factor G(y) of F back through x = y/D:
/// g(x) = G(D·x)/D^deg G.
fn undo_denominator_clearing(g: &[BigInt], d: &BigInt) -> Poly {
    let poly = poly_from_zpoly(g);
    let scaled = poly.scale_var(&Rat::from_integer(d.clone()));
    scaled.monic()
}

/// Factor a nonzero rational polynomial into its leading coefficient and
/// monic irreducible factors with multiplicities, deterministically ordered
/// by (degree, coefficients).
pub fn factor_rational(f: &Poly) -> Result<(Rat, Vec<(Poly, usize)>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lc = f.leading().unwrap().clone();
    let monic = f.monic();
    if monic.degree() == Some(0) {
        return Ok((lc, Vec::new()));
    }
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        if part.degree() == Some(1) {
            factors.push((part, mult));
            continue;
        }
        let (int_poly, d) = clear_denominators_monic(&part);
        for g in factor_squarefree_monic_integer(&int_poly) {
            factors.push((undo_denominator_clearing(&g, &d), mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then_with(|| a.1.cmp(&b.1))
    });
    Ok((lc, factors))
}

// ---------------------------------------------------------------------------
// Slope factorization
// ---------------------------------------------------------------------------

/// Split a monic polynomial with nonzero constant term into slope-pure
/// factors, listed in Newton-polygon order (weakly decreasing slopes).
///
/// Exact path: factor over Q and group the irreducible factors by slope.
/// If an irreducible rational factor carries more than one slope it is split
/// p-adically instead, at `precision` digits, and every block it contributes
/// to is flagged approximate (the products then reproduce the input only
/// modulo p^precision).
pub fn slope_factorization(
    f: &Poly,
    ctx: &PrimeContext,
    precision: u32,
) -> Result<Vec<SlopeFactor>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::BadParameters(
            "slope factorization requires a monic polynomial".into(),
        ));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::BadParameters(
            "slope factorization requires a nonzero constant term".into(),
        ));
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let polygon = newton_polygon(f, ctx)?;
    if polygon.is_pure() {
        let (slope, _) = polygon.slopes[0].clone();
        return Ok(vec![SlopeFactor {
            slope,
            factor: f.clone(),
            exactness: Exactness::Exact,
        }]);
    }

    let (_, irreducibles) = factor_rational(f)?;
    // slope -> (product, all contributions exact?)
    let mut groups: BTreeMap<Rat, (Poly, bool)> = BTreeMap::new();
    let mut add_to_group = |slope: Rat, factor: &Poly, mult: usize, exact: bool| {
        let entry = groups.entry(slope).or_insert_with(|| (Poly::one(), true));
        entry.0 = &entry.0 * &factor.pow(mult);
        entry.1 &= exact;
    };

    for (g, mult) in &irreducibles {
        let np = newton_polygon(g, ctx)?;
        if np.is_pure() {
            add_to_group(np.slopes[0].0.clone(), g, *mult, true);
        } else {
            for (slope, part) in padic_slope_split(g, ctx, precision)? {
                add_to_group(slope, &part, *mult, false);
            }
        }
    }

    Ok(groups
        .into_iter()
        .rev()
        .map(|(slope, (factor, exact))| SlopeFactor {
            slope,
            factor,
            exactness: if exact {
                Exactness::Exact
            } else {
                Exactness::Approximate { precision }
            },
        })
        .collect())
}

/// Split a monic rational polynomial with several Newton slopes into pure
/// blocks over Z_p by Hensel lifting, working modulo p^precision.
///
/// Only splits at an end of the polygon whose boundary slope is an integer
/// (possibly after reversal); a split strictly between two fractional slopes
/// would need a ramified substitution and is reported as precision
/// exhaustion.
fn padic_slope_split(g: &Poly, ctx: &PrimeContext, precision: u32) -> Result<Vec<(Rat, Poly)>> {
    if precision == 0 {
        return Err(Error::PrecisionExhausted {
            precision,
            detail: "working precision must be positive".into(),
        });
    }
    let mut out = Vec::new();
    split_block(g, true, ctx, precision, &mut out)?;
    Ok(out)
}

fn split_block(
    block: &Poly,
    exact_input: bool,
    ctx: &PrimeContext,
    precision: u32,
    out: &mut Vec<(Rat, Poly)>,
) -> Result<()> {
    let polygon = newton_polygon(block, ctx)?;
    // For an approximate block (a lifted factor), vertex valuations must sit
    // well inside the working precision for its polygon to be trustworthy.
    if !exact_input {
        for (_, v) in &polygon.vertices {
            let v = v.finite().expect("finite vertex valuation");
            if v.unsigned_abs() >= (precision as u64).div_ceil(2) {
                return Err(Error::PrecisionExhausted {
                    precision,
                    detail: format!(
                        "Newton polygon vertex valuation {v} is not certified at precision {precision}"
                    ),
                });
            }
        }
    }
    if polygon.is_pure() {
        let slope = polygon.slopes[0].0.clone();
        out.push((slope, block.clone()));
        return Ok(());
    }
    let min_slope = polygon.min_slope().unwrap().clone();
    let max_slope = polygon.max_slope().unwrap().clone();
    if min_slope.denom().is_one() {
        let (low, rest) = split_min_integer_slope(block, &min_slope, ctx, precision)?;
        out.push((min_slope, low));
        return split_block(&rest, false, ctx, precision, out);
    }
    if max_slope.denom().is_one() {
        // Reverse to bring the integer slope to the minimal end.
        let reversed = block.reverse().monic();
        let mut rev_parts = Vec::new();
        split_block(&reversed, exact_input, ctx, precision, &mut rev_parts)?;
        for (slope, part) in rev_parts {
            out.push((-slope, part.reverse().monic()));
        }
        return Ok(());
    }
    Err(Error::PrecisionExhausted {
        precision,
        detail: format!(
            "separating slopes {} and {} requires a ramified twist; \
             Hensel separation not achieved at precision {precision}",
            max_slope, min_slope
        ),
    })
}

/// Split off the pure block of the minimal (integer) slope by an integer
/// twist followed by a Hensel lift of the reduction y^k · u(y) mod p.
/// Returns (minimal-slope factor, remaining factor), both monic.
fn split_min_integer_slope(
    block: &Poly,
    min_slope: &Rat,
    ctx: &PrimeContext,
    precision: u32,
) -> Result<(Poly, Poly)> {
    let n = block.degree().expect("nonzero block");
    let t = num::traits::ToPrimitive::to_i64(min_slope.numer()).expect("small integer slope");
    // h(y) = block(p^t·y) / p^(n·t): monic with p-integral coefficients.
    let twist = ctx.p_pow_rat(t);
    let h = block.scale_var(&twist).scale(&rat_pow(&twist, -(n as i64)));
    debug_assert!(h.is_monic());

    let zt = ZMod::new(ctx.p_big().pow(precision));
    let h_residues: Option<Vec<BigInt>> = h.coeffs().iter().map(|c| zt.rat_residue(c)).collect();
    let h_mod = h_residues.ok_or_else(|| Error::PrecisionExhausted {
        precision,
        detail: "block coefficients are not p-integral after twisting".into(),
    })?;

    // Reduction mod p: y^k · u(y) with u(0) ≠ 0.
    let zp = ZMod::new(ctx.p_big());
    let h_bar = zp.normalize(&h_mod);
    let k = h_bar
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero reduction");
    debug_assert!(k > 0, "mixed polygon gives a positive-slope part");
    let u_bar: ZPoly = zp.make_monic(&zp.trim(h_bar[k..].to_vec()));
    let mut y_k = vec![BigInt::zero(); k + 1];
    y_k[k] = BigInt::one();

    let (g_lift, u_lift) =
        hensel_lift_pair(ctx.p(), precision, &zt.normalize(&h_mod), &y_k, &u_bar);

    // Untwist x = p^t·y: a monic degree-d factor F(y) becomes
    // p^(t·d) · F(x/p^t).
    let untwist = |fac: &ZPoly| -> Poly {
        let poly = poly_from_zpoly(fac);
        let d = poly.degree().unwrap() as i64;
        poly.scale_var(&rat_pow(&twist, -1))
            .scale(&rat_pow(&twist, d))
    };
    Ok((untwist(&u_lift), untwist(&g_lift)))
}

// ---------------------------------------------------------------------------
// Rational reconstruction
// ---------------------------------------------------------------------------

/// Recover a/b from its residue mod m when |a|, b ≤ √(m/2), by the
/// half-extended Euclidean algorithm. Returns `None` when no such small
/// fraction exists.
pub fn rational_reconstruct(c: &BigInt, modulus: &BigInt) -> Option<Rat> {
    let bound = num::integer::Roots::sqrt(&(modulus / BigInt::from(2)));
    let mut r0 = modulus.clone();
    let mut r1 = c.mod_floor(modulus);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    if num.gcd(&den) != BigInt::one() && !num.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}
