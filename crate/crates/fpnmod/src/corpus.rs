//! Deterministic module generators for tests and benchmarks: named small
//! examples and a seeded random family of weakly admissible modules of
//! Hodge–Tate type (0,1).
//!
//! The random construction mirrors how such modules arise: a diagonal φ with
//! unit or p·unit eigenvalues (pairwise distinct, so the stable-subspace
//! enumeration is certified exact), conjugated by a random integer matrix; a
//! compatible N built from the wiring allowed by p·φ·N = N·φ; a type-(0,1)
//! filtration searched until weak admissibility holds.

use crate::admissibility::{is_weakly_admissible, SearchParams, Verdict};
use crate::error::Result;
use crate::exact::matrix::Matrix;
use crate::exact::padic::PrimeContext;
use crate::exact::rational::{rat, Rat};
use crate::exact::subspace::Subspace;
use crate::module::{FilteredPhiNModule, Filtration};
use num::traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// φ = diag(p, 1), N e₁ = e₂, filtration jumping at 1 on the chosen line.
/// With the jump on ⟨e₁⟩ this is weakly admissible; on ⟨e₂⟩ it is not.
pub fn tate_type_module(p: u64, fil_on_e1: bool) -> Result<FilteredPhiNModule> {
    let ctx = PrimeContext::new(p)?;
    let phi = Matrix::from_rows(vec![
        vec![ctx.p_rat(), Rat::zero()],
        vec![Rat::zero(), rat(1)],
    ])?;
    let mono = Matrix::from_int_rows(&[&[0, 0], &[1, 0]]);
    let line = if fil_on_e1 {
        Subspace::from_int_rows(2, &[&[1, 0]])
    } else {
        Subspace::from_int_rows(2, &[&[0, 1]])
    };
    let fil = Filtration::new(2, vec![(0, Subspace::full(2)), (1, line)])?;
    FilteredPhiNModule::new(ctx, phi, mono, fil)
}

/// Parameters for the random type-(0,1) family.
#[derive(Debug, Clone, Copy)]
pub struct CorpusParams {
    pub seed: u64,
    pub count: usize,
    pub max_dim: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            seed: 0,
            count: 200,
            max_dim: 4,
        }
    }
}

/// Generate `count` weakly admissible modules of Hodge–Tate type (0,1),
/// deterministically from the seed, cycling over p in {2, 3, 5, 7} and
/// dimensions up to `max_dim`. Every returned module is valid, certified
/// weakly admissible with an exact enumeration, and has slopes in {0, 1}.
pub fn type01_corpus(params: &CorpusParams) -> Vec<FilteredPhiNModule> {
    let primes = [2u64, 3, 5, 7];
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(params.count);
    let mut i = 0usize;
    while out.len() < params.count {
        let p = primes[i % primes.len()];
        let dim = 1 + i % params.max_dim;
        i += 1;
        let ctx = PrimeContext::new(p).expect("small primes");
        out.push(random_type01_module(&mut rng, &ctx, dim));
    }
    out
}

/// One random weakly admissible type-(0,1) module of the given dimension.
/// Retries internally until the searched filtration certifies weak
/// admissibility, which happens quickly because the eigenvalues are distinct.
pub fn random_type01_module(
    rng: &mut ChaCha8Rng,
    ctx: &PrimeContext,
    dim: usize,
) -> FilteredPhiNModule {
    loop {
        if let Some(m) = try_random_type01_module(rng, ctx, dim) {
            return m;
        }
    }
}

fn try_random_type01_module(
    rng: &mut ChaCha8Rng,
    ctx: &PrimeContext,
    dim: usize,
) -> Option<FilteredPhiNModule> {
    let p = ctx.p();
    // Distinct units, paired up so that some entries can be p times others
    // (that wiring is what permits a nonzero N).
    let unit_pool: Vec<u64> = (1..40).filter(|u| u % p != 0).collect();
    let mut eigen: Vec<(Rat, bool)> = Vec::new(); // (value, slope-one?)
    let mut used: Vec<Rat> = Vec::new();
    while eigen.len() < dim {
        let u = rat(unit_pool[rng.random_range(0..unit_pool.len())] as i64);
        let slope_one = rng.random_bool(0.5);
        // With some probability pair an existing slope-0 unit to enable N.
        let value = if slope_one {
            &u * &ctx.p_rat()
        } else {
            u.clone()
        };
        if used.contains(&value) {
            continue;
        }
        // Bias towards matched (u, p·u) pairs.
        if slope_one && rng.random_bool(0.6) && !eigen.is_empty() {
            let partners: Vec<Rat> = eigen
                .iter()
                .filter(|(_, s1)| !s1)
                .map(|(v, _)| v * &ctx.p_rat())
                .collect();
            if let Some(v) = partners.into_iter().find(|v| !used.contains(v)) {
                used.push(v.clone());
                eigen.push((v, true));
                continue;
            }
        }
        used.push(value.clone());
        eigen.push((value, slope_one));
    }

    // N in diagonal coordinates: entries allowed exactly where d_col = p·d_row.
    let d = dim;
    let mut n_diag = Matrix::zeros(d, d);
    for row in 0..d {
        for col in 0..d {
            if row == col {
                continue;
            }
            if eigen[col].0 == &eigen[row].0 * &ctx.p_rat() {
                let c = rng.random_range(0..3i64);
                if c != 0 {
                    n_diag[(row, col)] = rat(c);
                }
            }
        }
    }
    // Random invertible integer change of basis.
    let t = loop {
        let cand = Matrix::from_rows(
            (0..d)
                .map(|_| (0..d).map(|_| rat(rng.random_range(-2..=2))).collect())
                .collect(),
        )
        .ok()?;
        if !cand.det().is_zero() {
            break cand;
        }
    };
    let t_inv = t.inverse().ok()?;
    let diag = Matrix::diagonal(&eigen.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>());
    let phi = &(&t * &diag) * &t_inv;
    let mono = &(&t * &n_diag) * &t_inv;

    // Type-(0,1) filtration with dim Fil¹ = t_N, searched for weak
    // admissibility.
    let slope_one_count = eigen.iter().filter(|(_, s)| *s).count();
    for _ in 0..40 {
        let fil = if slope_one_count == 0 {
            Filtration::trivial(d, 0)
        } else if slope_one_count == d {
            Filtration::trivial(d, 1)
        } else {
            let rows: Vec<Vec<Rat>> = (0..slope_one_count)
                .map(|_| (0..d).map(|_| rat(rng.random_range(-3..=3))).collect())
                .collect();
            let sub = Subspace::from_rows(d, &rows).ok()?;
            if sub.dim() != slope_one_count {
                continue;
            }
            match Filtration::new(d, vec![(0, Subspace::full(d)), (1, sub)]) {
                Ok(f) => f,
                Err(_) => continue,
            }
        };
        let m = FilteredPhiNModule::new(*ctx, phi.clone(), mono.clone(), fil).ok()?;
        if !m.is_valid() {
            return None;
        }
        let report = is_weakly_admissible(&m, &SearchParams::default());
        if report.verdict == Verdict::WeaklyAdmissible {
            return Some(m);
        }
    }
    None
}
