//! Slope decompositions of φ and the constructive dichotomy: a weakly
//! admissible module of Hodge–Tate type (0,1) is either crystalline (N = 0)
//! or carries a proper crystalline submodule, namely its slope-zero part.
//!
//! The mechanism: weak admissibility puts the slopes in \[0,1\]; the axiom
//! p·φ·N = N·φ makes N lower slopes by exactly 1, so N kills the slope-zero
//! part M₀ and everything N does not kill maps into M₀. Forced equalities
//! t_H(M₀) = t_N(M₀) = 0 make M₀ a weakly admissible submodule with N = 0,
//! and N vanishes on the quotient as well, giving the two-step chain
//! 0 ⊆ M₀ ⊆ M. Every one of those facts is re-verified here; a failure is
//! reported as a theorem violation, never silently.

use crate::admissibility::{is_weakly_admissible, SearchParams, Verdict};
use crate::error::{Error, Result};
use crate::exact::factor::{rational_reconstruct, slope_factorization, Exactness};
use crate::exact::poly::Poly;
use crate::exact::rational::{rat, rat_to_string, Rat};
use crate::exact::subspace::Subspace;
use crate::exact::zmod::ZMod;
use crate::module::FilteredPhiNModule;
use crate::par;
use num::traits::One;

/// φ-stable slope parts, strictly increasing slopes, summing to the full
/// space with dimensions matching the Newton-polygon multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeDecomposition {
    pub parts: Vec<(Rat, Subspace)>,
    pub exactness: Exactness,
}

impl SlopeDecomposition {
    pub fn part_at(&self, slope: &Rat) -> Option<&Subspace> {
        self.parts.iter().find(|(s, _)| s == slope).map(|(_, w)| w)
    }

    /// Σ slope · dim over the parts.
    pub fn slope_mass(&self) -> Rat {
        self.parts
            .iter()
            .fold(Rat::from_integer(0.into()), |acc, (s, w)| {
                acc + s * rat(w.dim() as i64)
            })
    }
}

/// Decompose M into slope parts: the slope-λ part is the kernel of g_λ(φ)
/// for the slope-λ factor g_λ of the characteristic polynomial.
///
/// Exact whenever the slope factorization is exact. Otherwise the Hensel
/// factors are rounded by rational reconstruction and certified by
/// multiplying back; since no approximate subspace may enter a logical
/// verdict, an uncertified rounding is a `PrecisionExhausted` error.
pub fn slope_decomposition(m: &FilteredPhiNModule, precision: u32) -> Result<SlopeDecomposition> {
    let dim = m.dim();
    if dim == 0 {
        return Ok(SlopeDecomposition {
            parts: Vec::new(),
            exactness: Exactness::Exact,
        });
    }
    let chi = m.phi().char_poly();
    let factors = slope_factorization(&chi, m.ctx(), precision)?;

    let mut exactness = Exactness::Exact;
    let mut resolved: Vec<(Rat, Poly)> = Vec::with_capacity(factors.len());
    let needs_rounding = factors.iter().any(|f| !f.exactness.is_exact());
    if needs_rounding {
        // Round every approximate factor to an exact rational candidate and
        // certify by reproducing the characteristic polynomial exactly.
        let modulus = m.ctx().p_big().pow(precision);
        let z = ZMod::new(modulus.clone());
        let mut product = Poly::one();
        for f in &factors {
            let poly = if f.exactness.is_exact() {
                f.factor.clone()
            } else {
                let mut coeffs = Vec::with_capacity(f.factor.coeffs().len());
                for c in f.factor.coeffs() {
                    let residue = z.rat_residue(c).ok_or_else(|| Error::PrecisionExhausted {
                        precision,
                        detail: format!(
                            "cannot round coefficient {} to a certified rational",
                            rat_to_string(c)
                        ),
                    })?;
                    let rounded = rational_reconstruct(&residue, &modulus).ok_or_else(|| {
                        Error::PrecisionExhausted {
                            precision,
                            detail: "rational reconstruction of a Hensel factor failed".into(),
                        }
                    })?;
                    coeffs.push(rounded);
                }
                Poly::from_coeffs(coeffs)
            };
            product = &product * &poly;
            resolved.push((f.slope.clone(), poly));
        }
        if product != chi {
            return Err(Error::PrecisionExhausted {
                precision,
                detail: format!(
                    "certified rounding failed: the slope factors of {} are not rational \
                     (tried at precision {precision})",
                    chi
                ),
            });
        }
        exactness = Exactness::Approximate { precision };
    } else {
        resolved = factors.into_iter().map(|f| (f.slope, f.factor)).collect();
    }

    let mut parts: Vec<(Rat, Subspace)> = resolved
        .into_iter()
        .map(|(slope, g)| (slope, Subspace::kernel(&m.phi().eval_poly(&g))))
        .collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));

    // Soundness: parts are φ-stable, independent, and exhaust the space.
    let mut total = Subspace::zero(dim);
    let mut dim_sum = 0usize;
    for (_, w) in &parts {
        let img = w.apply(m.phi()).expect("ambient");
        if !w.contains(&img) {
            return Err(Error::TheoremViolation(
                "slope part is not phi-stable".into(),
            ));
        }
        dim_sum += w.dim();
        total = total.sum(w).expect("ambient");
    }
    if dim_sum != dim || !total.is_full() {
        return Err(Error::TheoremViolation(
            "slope parts do not decompose the space".into(),
        ));
    }
    Ok(SlopeDecomposition { parts, exactness })
}

/// Per-slope verification that N maps the slope-λ part into the
/// slope-(λ−1) part (into zero when λ−1 is absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyReport {
    pub entries: Vec<(Rat, bool)>,
}

impl MonodromyReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|(_, ok)| *ok)
    }
}

/// The computable face of p·φ·N = N·φ: N lowers slopes by exactly 1.
pub fn check_monodromy_lowers_slope(
    m: &FilteredPhiNModule,
    decomposition: &SlopeDecomposition,
) -> MonodromyReport {
    let entries = decomposition
        .parts
        .iter()
        .map(|(slope, w)| {
            let image = w.apply(m.mono()).expect("ambient");
            let target_slope = slope - rat(1);
            let ok = match decomposition.part_at(&target_slope) {
                Some(target) => target.contains(&image),
                None => image.is_zero(),
            };
            (slope.clone(), ok)
        })
        .collect();
    MonodromyReport { entries }
}

/// The slope-0 part of M (the zero subspace when no slope vanishes).
pub fn slope_zero_part(m: &FilteredPhiNModule, precision: u32) -> Result<Subspace> {
    let d = slope_decomposition(m, precision)?;
    Ok(d.part_at(&rat(0))
        .cloned()
        .unwrap_or_else(|| Subspace::zero(m.dim())))
}

/// Verdict of the slopes-in-\[0,1\] assertion, with context: on a certified
/// weakly admissible type-(0,1) module a failure would contradict the
/// theorem, so the note says so.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeIntervalReport {
    pub slopes: Vec<Rat>,
    pub ok: bool,
    pub note: Option<String>,
}

pub fn assert_slopes_in_unit_interval(
    m: &FilteredPhiNModule,
    params: &SearchParams,
    precision: u32,
) -> Result<SlopeIntervalReport> {
    let d = slope_decomposition(m, precision)?;
    let mut slopes = Vec::new();
    for (s, w) in &d.parts {
        slopes.extend(std::iter::repeat_n(s.clone(), w.dim()));
    }
    let zero = rat(0);
    let one = Rat::one();
    let ok = slopes.iter().all(|s| *s >= zero && *s <= one);
    let note = if ok {
        None
    } else {
        let wa = is_weakly_admissible(m, params).verdict == Verdict::WeaklyAdmissible;
        let type01 = m.is_type_01();
        Some(if wa && type01 {
            "slopes escape [0,1] on a certified weakly admissible type-(0,1) module: \
             this contradicts the theorem and indicates a library bug"
                .to_string()
        } else {
            format!(
                "slopes escape [0,1]; consistent, since the module is {} of Hodge-Tate type {}",
                if wa {
                    "weakly admissible but not"
                } else {
                    "not certified weakly admissible and is"
                },
                m.hodge_tate_type()
            )
        })
    };
    Ok(SlopeIntervalReport { slopes, ok, note })
}

/// The constructive outcome of the dichotomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DichotomyWitness {
    /// N = 0 on all of M.
    Crystalline,
    /// A nontrivial slope-zero part M₀: killed by N, with
    /// t_H = t_N = 0 as a submodule, and N = 0 on the quotient.
    ProperCrystallineSub {
        m0: Subspace,
        sub: FilteredPhiNModule,
        quot: FilteredPhiNModule,
    },
}

impl DichotomyWitness {
    /// The crystalline filtration this witness exhibits.
    pub fn chain(&self, dim: usize) -> Vec<Subspace> {
        match self {
            DichotomyWitness::Crystalline => {
                if dim == 0 {
                    vec![Subspace::full(0)]
                } else {
                    vec![Subspace::zero(dim), Subspace::full(dim)]
                }
            }
            DichotomyWitness::ProperCrystallineSub { m0, .. } => {
                vec![Subspace::zero(dim), m0.clone(), Subspace::full(dim)]
            }
        }
    }
}

/// Run the dichotomy on a certified weakly admissible module of Hodge–Tate
/// type (0,1). Every step of the argument is re-verified; a verification
/// failure surfaces as `TheoremViolation`, a precondition failure as
/// `PreconditionBreach`.
pub fn crystalline_dichotomy(
    m: &FilteredPhiNModule,
    params: &SearchParams,
    precision: u32,
) -> Result<DichotomyWitness> {
    if !m.is_valid() {
        return Err(Error::PreconditionBreach(
            "module fails structural validation".into(),
        ));
    }
    if !m.is_type_01() {
        return Err(Error::PreconditionBreach(format!(
            "Hodge-Tate type {} is not (0,1)",
            m.hodge_tate_type()
        )));
    }
    let wa = is_weakly_admissible(m, params);
    if wa.verdict != Verdict::WeaklyAdmissible {
        return Err(Error::PreconditionBreach(format!(
            "module is not certified weakly admissible (verdict: {})",
            wa.verdict.as_str()
        )));
    }

    if m.is_crystalline() {
        return Ok(DichotomyWitness::Crystalline);
    }

    let m0 = slope_zero_part(m, precision)?;
    if m0.is_zero() {
        // Slopes all in (0,1] force N to kill everything; N != 0 here.
        return Err(Error::TheoremViolation(
            "no slope-zero part, yet N != 0: N should have killed the module".into(),
        ));
    }
    let n_image = m0.apply(m.mono()).expect("ambient");
    if !n_image.is_zero() {
        return Err(Error::TheoremViolation(
            "the slope-zero part is not killed by N".into(),
        ));
    }
    let sub = m.submodule(&m0)?;
    if sub.newton_number() != 0 {
        return Err(Error::TheoremViolation(format!(
            "t_N of the slope-zero part is {}, expected 0",
            sub.newton_number()
        )));
    }
    if sub.hodge_number() != 0 {
        return Err(Error::TheoremViolation(format!(
            "t_H of the slope-zero part is {}, expected 0 by weak admissibility",
            sub.hodge_number()
        )));
    }
    let quot = m.quotient(&m0)?;
    if !quot.mono().is_zero() {
        return Err(Error::TheoremViolation(
            "N does not vanish on the quotient by the slope-zero part".into(),
        ));
    }
    Ok(DichotomyWitness::ProperCrystallineSub { m0, sub, quot })
}

/// Run the dichotomy over a batch; parallel when the feature is enabled,
/// identical results either way.
pub fn batch_crystalline_dichotomy(
    modules: &[FilteredPhiNModule],
    params: &SearchParams,
    precision: u32,
) -> Vec<Result<DichotomyWitness>> {
    par::map_slice(modules, |m| crystalline_dichotomy(m, params, precision))
}

/// Sequential twin of [`batch_crystalline_dichotomy`] for benchmarks.
pub fn batch_crystalline_dichotomy_seq(
    modules: &[FilteredPhiNModule],
    params: &SearchParams,
    precision: u32,
) -> Vec<Result<DichotomyWitness>> {
    modules
        .iter()
        .map(|m| crystalline_dichotomy(m, params, precision))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{tate_type_module, type01_corpus, CorpusParams};
    use crate::exact::matrix::Matrix;
    use crate::exact::padic::PrimeContext;
    use crate::exact::rational::ratio;
    use crate::module::{fm_example, FilteredPhiNModule, Filtration};

    const PREC: u32 = 50;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    fn params() -> SearchParams {
        SearchParams::default()
    }

    fn fm535() -> FilteredPhiNModule {
        fm_example(5, 3, &rat(5)).unwrap()
    }

    #[test]
    fn decomposition_of_the_example() {
        let m = fm535();
        let d = slope_decomposition(&m, PREC).unwrap();
        assert_eq!(d.exactness, Exactness::Exact);
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[0].0, rat(1));
        assert_eq!(d.parts[0].1, Subspace::from_int_rows(2, &[&[0, 1]]));
        assert_eq!(d.parts[1].0, rat(2));
        assert_eq!(d.parts[1].1, Subspace::from_int_rows(2, &[&[1, 0]]));
        assert_eq!(d.slope_mass(), rat(m.newton_number()));
    }

    #[test]
    fn decomposition_of_identity_is_one_part() {
        let c = ctx(7);
        let m = FilteredPhiNModule::new(
            c,
            Matrix::identity(3),
            Matrix::zeros(3, 3),
            Filtration::trivial(3, 0),
        )
        .unwrap();
        let d = slope_decomposition(&m, PREC).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].0, rat(0));
        assert!(d.parts[0].1.is_full());
    }

    #[test]
    fn decomposition_of_tate_type_module() {
        let m = tate_type_module(5, true).unwrap();
        let d = slope_decomposition(&m, PREC).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[0].0, rat(0));
        assert_eq!(d.parts[0].1, Subspace::from_int_rows(2, &[&[0, 1]]));
        assert_eq!(d.parts[1].0, rat(1));
        assert_eq!(d.parts[1].1, Subspace::from_int_rows(2, &[&[1, 0]]));
    }

    #[test]
    fn fractional_slopes_are_decomposed_exactly() {
        // Companion matrix of x^2 - 5: one pure part of slope 1/2.
        let c = ctx(5);
        let phi = Matrix::from_int_rows(&[&[0, 5], &[1, 0]]);
        let m = FilteredPhiNModule::new(c, phi, Matrix::zeros(2, 2), Filtration::trivial(2, 0))
            .unwrap();
        let d = slope_decomposition(&m, PREC).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].0, ratio(1, 2));
        assert!(d.parts[0].1.is_full());
    }

    #[test]
    fn monodromy_lowers_slopes() {
        let m = fm535();
        let d = slope_decomposition(&m, PREC).unwrap();
        let report = check_monodromy_lowers_slope(&m, &d);
        assert!(report.all_ok());
        assert_eq!(report.entries.len(), 2);

        let t = tate_type_module(5, true).unwrap();
        let dt = slope_decomposition(&t, PREC).unwrap();
        assert!(check_monodromy_lowers_slope(&t, &dt).all_ok());

        // N = 0 passes vacuously.
        let u = FilteredPhiNModule::unit(ctx(5));
        let du = slope_decomposition(&u, PREC).unwrap();
        assert!(check_monodromy_lowers_slope(&u, &du).all_ok());
    }

    #[test]
    fn slope_zero_parts() {
        assert_eq!(
            slope_zero_part(&tate_type_module(5, true).unwrap(), PREC).unwrap(),
            Subspace::from_int_rows(2, &[&[0, 1]])
        );
        assert!(slope_zero_part(&fm535(), PREC).unwrap().is_zero());
        assert!(slope_zero_part(&FilteredPhiNModule::unit(ctx(5)), PREC)
            .unwrap()
            .is_full());
    }

    #[test]
    fn unit_interval_assertion() {
        let t = tate_type_module(5, true).unwrap();
        let r = assert_slopes_in_unit_interval(&t, &params(), PREC).unwrap();
        assert!(r.ok);
        assert_eq!(r.slopes, vec![rat(0), rat(1)]);

        // The example has slopes {1, 2}: fails, consistently (type (0,3)).
        let m = fm535();
        let r2 = assert_slopes_in_unit_interval(&m, &params(), PREC).unwrap();
        assert!(!r2.ok);
        let note = r2.note.unwrap();
        assert!(note.contains("consistent") || note.contains("(0,3)"));

        let u = FilteredPhiNModule::unit(ctx(5));
        assert!(
            assert_slopes_in_unit_interval(&u, &params(), PREC)
                .unwrap()
                .ok
        );
    }

    #[test]
    fn dichotomy_on_tate_type_module() {
        let m = tate_type_module(5, true).unwrap();
        match crystalline_dichotomy(&m, &params(), PREC).unwrap() {
            DichotomyWitness::ProperCrystallineSub { m0, sub, quot } => {
                assert_eq!(m0, Subspace::from_int_rows(2, &[&[0, 1]]));
                assert_eq!(sub.hodge_number(), 0);
                assert_eq!(sub.newton_number(), 0);
                assert_eq!(quot.phi(), &Matrix::from_int_rows(&[&[5]]));
                assert!(quot.mono().is_zero());
                assert_eq!(quot.fil().jumps(), vec![(1, 1)]);
            }
            DichotomyWitness::Crystalline => panic!("N != 0 here"),
        }
        let w = crystalline_dichotomy(&m, &params(), PREC).unwrap();
        assert_eq!(w.chain(2).len(), 3);
    }

    #[test]
    fn dichotomy_on_crystalline_line() {
        // Dimension 1, φ = [5], jump at 1: slopes {1}, no zero part, N = 0.
        let c = ctx(5);
        let m = FilteredPhiNModule::new(
            c,
            Matrix::from_int_rows(&[&[5]]),
            Matrix::zeros(1, 1),
            Filtration::trivial(1, 1),
        )
        .unwrap();
        assert_eq!(
            crystalline_dichotomy(&m, &params(), PREC).unwrap(),
            DichotomyWitness::Crystalline
        );
    }

    #[test]
    fn dichotomy_preconditions() {
        // Wrong type: the example is (0,3).
        let err = crystalline_dichotomy(&fm535(), &params(), PREC).unwrap_err();
        assert!(matches!(err, Error::PreconditionBreach(ref s) if s.contains("(0,3)")));

        // Not weakly admissible: t_H = 1, t_N = 0.
        let c = ctx(5);
        let m = FilteredPhiNModule::new(
            c,
            Matrix::identity(2),
            Matrix::zeros(2, 2),
            Filtration::new(
                2,
                vec![
                    (0, Subspace::full(2)),
                    (1, Subspace::from_int_rows(2, &[&[1, 0]])),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let err = crystalline_dichotomy(&m, &params(), PREC).unwrap_err();
        assert!(matches!(err, Error::PreconditionBreach(ref s) if s.contains("weakly admissible")));
    }

    #[test]
    fn irrational_slope_factors_exhaust_precision() {
        // φ companion to x^2 - x - 5: slopes {1, 0} but irreducible over Q,
        // so the slope parts are not rational subspaces.
        let c = ctx(5);
        let phi = Matrix::from_int_rows(&[&[0, 5], &[1, 1]]);
        let m = FilteredPhiNModule::new(c, phi, Matrix::zeros(2, 2), Filtration::trivial(2, 0))
            .unwrap();
        let err = slope_decomposition(&m, 40).unwrap_err();
        assert!(matches!(
            err,
            Error::PrecisionExhausted { precision: 40, .. }
        ));
    }

    #[test]
    fn dichotomy_as_property_over_the_corpus() {
        let corpus = type01_corpus(&CorpusParams {
            seed: 11,
            count: 40,
            max_dim: 4,
        });
        for m in &corpus {
            let d = slope_decomposition(m, PREC).unwrap();
            assert_eq!(d.exactness, Exactness::Exact);
            assert!(check_monodromy_lowers_slope(m, &d).all_ok());
            assert_eq!(d.slope_mass(), rat(m.newton_number()));
            assert!(
                assert_slopes_in_unit_interval(m, &params(), PREC)
                    .unwrap()
                    .ok
            );
            let witness = crystalline_dichotomy(m, &params(), PREC).unwrap();
            match &witness {
                DichotomyWitness::Crystalline => assert!(m.is_crystalline()),
                DichotomyWitness::ProperCrystallineSub { m0, sub, quot } => {
                    assert!(!m.is_crystalline());
                    assert!(m0.dim() > 0);
                    assert!(m0.apply(m.mono()).unwrap().is_zero());
                    assert_eq!(sub.hodge_number(), 0);
                    assert_eq!(sub.newton_number(), 0);
                    assert!(quot.mono().is_zero());
                }
            }
        }
    }

    #[test]
    fn batch_matches_sequential() {
        let corpus = type01_corpus(&CorpusParams {
            seed: 3,
            count: 8,
            max_dim: 3,
        });
        let a = batch_crystalline_dichotomy(&corpus, &params(), PREC);
        let b = batch_crystalline_dichotomy_seq(&corpus, &params(), PREC);
        assert_eq!(a, b);
    }
}
