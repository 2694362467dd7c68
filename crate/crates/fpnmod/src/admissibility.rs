//! Stable-subspace enumeration and weak-admissibility decisions.
//!
//! A module is weakly admissible when t_H = t_N globally and t_H ≤ t_N on
//! every (φ,N)-stable subspace with the induced filtration. The enumeration
//! of stable subspaces is certified exact in three regimes — dimension ≤ 1,
//! φ with distinct rational eigenvalues (every φ-stable subspace is a span
//! of eigenlines), and dimension 2 (complete line analysis) — and falls back
//! to a seeded randomized search otherwise. Verdicts never overclaim: a
//! heuristic enumeration that finds no violation yields `Undecided`, not
//! `WeaklyAdmissible`.

use crate::exact::factor::factor_rational;
use crate::exact::matrix::Matrix;
use crate::exact::padic::finite_valuation;
use crate::exact::rational::{rat, rat_to_string, Rat};
use crate::exact::subspace::Subspace;
use crate::module::FilteredPhiNModule;
use crate::par;
use num::traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Seed and trial budget for the randomized fallback search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub seed: u64,
    pub trials: u32,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            seed: 0,
            trials: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    Exact,
    Heuristic,
}

impl Completeness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Completeness::Exact => "exact",
            Completeness::Heuristic => "heuristic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Trivial,
    EigenSubset,
    LineAnalysis,
    HeuristicSearch,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Trivial => "trivial",
            Method::EigenSubset => "eigen-subset",
            Method::LineAnalysis => "line-analysis",
            Method::HeuristicSearch => "heuristic-search",
        }
    }
}

/// The (φ,N)-stable subspaces found, sorted by dimension then canonical
/// matrix. Always contains the zero subspace and the full space. When φ is
/// scalar with N = 0 in dimension 2, every line is stable; the finitely many
/// listed subspaces are then {0, M} and `all_lines` is set instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableSubspaceEnumeration {
    pub subspaces: Vec<Subspace>,
    pub completeness: Completeness,
    pub method: Method,
    pub all_lines: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    WeaklyAdmissible,
    NotWeaklyAdmissible,
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::WeaklyAdmissible => "weakly_admissible",
            Verdict::NotWeaklyAdmissible => "not_weakly_admissible",
            Verdict::Undecided => "undecided",
        }
    }
}

/// Weak-admissibility verdict with a violating subspace when one exists
/// (the full space marks a failure of the top-level equality t_H = t_N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub verdict: Verdict,
    pub witness: Option<Subspace>,
    pub enumeration: StableSubspaceEnumeration,
}

/// Rational eigenvalues with multiplicities, when the characteristic
/// polynomial splits into distinct linear factors; `None` otherwise.
fn distinct_rational_eigenvalues(m: &FilteredPhiNModule) -> Option<Vec<Rat>> {
    let chi = m.phi().char_poly();
    let (_, factors) = factor_rational(&chi).ok()?;
    let mut eigen = Vec::new();
    for (g, mult) in &factors {
        if g.degree() != Some(1) || *mult != 1 {
            return None;
        }
        // monic x - r: root is -constant term.
        eigen.push(-g.coeff(0));
    }
    if eigen.len() == m.dim() {
        Some(eigen)
    } else {
        None
    }
}

fn eigenline(m: &FilteredPhiNModule, lambda: &Rat) -> Subspace {
    let shifted = {
        let mut a = m.phi().clone();
        for i in 0..m.dim() {
            a[(i, i)] = &a[(i, i)] - lambda;
        }
        a
    };
    Subspace::kernel(&shifted)
}

fn sort_dedup(mut v: Vec<Subspace>) -> Vec<Subspace> {
    v.sort_by(|a, b| a.canonical_cmp(b));
    v.dedup();
    v
}

/// Enumerate the (φ,N)-stable subspaces.
pub fn stable_subspaces(
    m: &FilteredPhiNModule,
    params: &SearchParams,
) -> StableSubspaceEnumeration {
    let dim = m.dim();
    let zero = Subspace::zero(dim);
    let full = Subspace::full(dim);

    if dim <= 1 {
        return StableSubspaceEnumeration {
            subspaces: sort_dedup(vec![zero, full]),
            completeness: Completeness::Exact,
            method: Method::Trivial,
            all_lines: false,
        };
    }

    if dim <= 16 {
        if let Some(eigen) = distinct_rational_eigenvalues(m) {
            // Every φ-stable subspace is a span of a subset of the
            // eigenlines; filter those by N-stability.
            let lines: Vec<Subspace> = eigen.iter().map(|l| eigenline(m, l)).collect();
            debug_assert!(lines.iter().all(|l| l.dim() == 1));
            let mut out = Vec::with_capacity(1 << dim);
            for mask in 0u32..(1 << dim) {
                let mut span = Subspace::zero(dim);
                for (i, line) in lines.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        span = span.sum(line).expect("same ambient");
                    }
                }
                if m.is_stable(&span) {
                    out.push(span);
                }
            }
            return StableSubspaceEnumeration {
                subspaces: sort_dedup(out),
                completeness: Completeness::Exact,
                method: Method::EigenSubset,
                all_lines: false,
            };
        }
    }

    if dim == 2 {
        return line_analysis_dim2(m);
    }

    // Heuristic regime: spans of subsets of a generalized eigenbasis plus a
    // seeded randomized search.
    let mut candidates = generalized_eigen_subset_candidates(m);
    candidates.extend(heuristic_candidates(m, params));
    candidates.push(zero);
    candidates.push(full);
    let stable = candidates.into_iter().filter(|w| m.is_stable(w)).collect();
    StableSubspaceEnumeration {
        subspaces: sort_dedup(stable),
        completeness: Completeness::Heuristic,
        method: Method::HeuristicSearch,
        all_lines: false,
    }
}

/// Complete enumeration in dimension 2. φ-stable lines are rational
/// eigenlines (all lines when φ is scalar); when N ≠ 0 a stable line must
/// lie in ker N, because N(L) ⊆ L with N nilpotent forces N(L) = 0.
fn line_analysis_dim2(m: &FilteredPhiNModule) -> StableSubspaceEnumeration {
    let zero = Subspace::zero(2);
    let full = Subspace::full(2);
    let mut subspaces = vec![zero, full];
    let mut all_lines = false;

    if !m.mono().is_zero() {
        let ker = Subspace::kernel(m.mono());
        debug_assert_eq!(ker.dim(), 1);
        let phi_ker = ker.apply(m.phi()).expect("ambient matches");
        if ker.contains(&phi_ker) {
            subspaces.push(ker);
        }
    } else {
        let a = m.phi()[(0, 0)].clone();
        let scalar = m.phi() == &Matrix::diagonal(&[a.clone(), a.clone()]);
        if scalar {
            all_lines = true;
        } else {
            let chi = m.phi().char_poly();
            if let Ok((_, factors)) = factor_rational(&chi) {
                for (g, _) in factors.iter().filter(|(g, _)| g.degree() == Some(1)) {
                    let line = eigenline(m, &-g.coeff(0));
                    debug_assert_eq!(line.dim(), 1);
                    subspaces.push(line);
                }
            }
        }
    }

    StableSubspaceEnumeration {
        subspaces: sort_dedup(subspaces),
        completeness: Completeness::Exact,
        method: Method::LineAnalysis,
        all_lines,
    }
}

/// Spans of subsets of a basis adapted to the primary decomposition of φ.
fn generalized_eigen_subset_candidates(m: &FilteredPhiNModule) -> Vec<Subspace> {
    let dim = m.dim();
    let chi = m.phi().char_poly();
    let Ok((_, factors)) = factor_rational(&chi) else {
        return Vec::new();
    };
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for (g, mult) in &factors {
        let primary = Subspace::kernel(&m.phi().eval_poly(&g.pow(*mult)));
        basis.extend(primary.basis_rows());
    }
    if basis.len() != dim || dim > 16 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << dim) {
        let rows: Vec<Vec<Rat>> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        if let Ok(span) = Subspace::from_rows(dim, &rows) {
            out.push(span);
        }
    }
    out
}

/// The smallest (φ,N)-stable subspace containing v: close the span under
/// both operators.
fn krylov_closure(m: &FilteredPhiNModule, v: &[Rat]) -> Subspace {
    let mut span = Subspace::line(v).expect("vector length matches ambient");
    loop {
        let grown = span
            .sum(&span.apply(m.phi()).expect("ambient"))
            .and_then(|s| s.sum(&span.apply(m.mono()).expect("ambient")))
            .expect("ambient");
        if grown.dim() == span.dim() {
            return span;
        }
        span = grown;
    }
}

fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn one_trial(m: &FilteredPhiNModule, seed: u64, index: usize) -> Vec<Subspace> {
    let dim = m.dim();
    let mut rng = trial_rng(seed, index);
    let mut found = Vec::new();
    // Krylov orbit of a random vector: always stable.
    let v: Vec<Rat> = (0..dim).map(|_| rat(rng.random_range(-3..=3))).collect();
    if v.iter().any(|c| !c.is_zero()) {
        found.push(krylov_closure(m, &v));
    }
    // A random subspace, kept only if it happens to be stable.
    let k = rng.random_range(1..dim);
    let rows: Vec<Vec<Rat>> = (0..k)
        .map(|_| (0..dim).map(|_| rat(rng.random_range(-3..=3))).collect())
        .collect();
    if let Ok(w) = Subspace::from_rows(dim, &rows) {
        if !w.is_zero() && m.is_stable(&w) {
            found.push(w);
        }
    }
    found
}

/// Randomized stable-subspace candidates; deterministic in (seed, trials)
/// and identical whether or not the `parallel` feature fans the trials out.
pub fn heuristic_candidates(m: &FilteredPhiNModule, params: &SearchParams) -> Vec<Subspace> {
    let results = par::map_indices(params.trials as usize, |i| one_trial(m, params.seed, i));
    sort_dedup(results.into_iter().flatten().collect())
}

/// Sequential twin of [`heuristic_candidates`], kept unconditionally for
/// benchmark comparison.
pub fn heuristic_candidates_seq(m: &FilteredPhiNModule, params: &SearchParams) -> Vec<Subspace> {
    let results: Vec<Vec<Subspace>> = (0..params.trials as usize)
        .map(|i| one_trial(m, params.seed, i))
        .collect();
    sort_dedup(results.into_iter().flatten().collect())
}

/// Decide weak admissibility: t_H(M) = t_N(M), and t_H ≤ t_N on every
/// stable subspace with the induced structure. Exact enumerations decide;
/// a heuristic enumeration without a violation returns `Undecided`.
pub fn is_weakly_admissible(m: &FilteredPhiNModule, params: &SearchParams) -> AdmissibilityReport {
    let enumeration = stable_subspaces(m, params);
    if m.hodge_number() != m.newton_number() {
        return AdmissibilityReport {
            verdict: Verdict::NotWeaklyAdmissible,
            witness: Some(Subspace::full(m.dim())),
            enumeration,
        };
    }

    if enumeration.all_lines {
        // φ = a·I with N = 0 in dimension 2: t_N is v_p(a) on every line and
        // the maximum of t_H over all lines is the largest degree with a
        // nonzero filtration step.
        let a = m.phi()[(0, 0)].clone();
        let t_n_line = finite_valuation(&a, m.ctx()).expect("phi invertible");
        let max_d = m
            .fil()
            .max_nonzero_degree()
            .expect("positive-dimensional module");
        if max_d > t_n_line {
            let deep = m.fil().at(max_d);
            let witness = Subspace::line(&deep.basis_rows()[0]).expect("nonzero step");
            return AdmissibilityReport {
                verdict: Verdict::NotWeaklyAdmissible,
                witness: Some(witness),
                enumeration,
            };
        }
        return AdmissibilityReport {
            verdict: Verdict::WeaklyAdmissible,
            witness: None,
            enumeration,
        };
    }

    for w in &enumeration.subspaces {
        if w.is_zero() || w.is_full() {
            continue;
        }
        let sub = m.submodule(w).expect("enumerated subspaces are stable");
        if sub.hodge_number() > sub.newton_number() {
            return AdmissibilityReport {
                verdict: Verdict::NotWeaklyAdmissible,
                witness: Some(w.clone()),
                enumeration,
            };
        }
    }

    let verdict = match enumeration.completeness {
        Completeness::Exact => Verdict::WeaklyAdmissible,
        Completeness::Heuristic => Verdict::Undecided,
    };
    AdmissibilityReport {
        verdict,
        witness: None,
        enumeration,
    }
}

/// Proper nonzero stable subspaces that are weakly admissible submodules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaSubmodules {
    pub submodules: Vec<Subspace>,
    pub completeness: Completeness,
    /// Every line is a weakly admissible submodule (scalar φ, N = 0,
    /// trivial filtration at v_p(a)).
    pub all_lines: bool,
    /// Verdict for the ambient module itself; the list is still computed
    /// when the ambient is not weakly admissible, but flagged through this.
    pub ambient_verdict: Verdict,
    pub note: Option<String>,
}

/// Find every proper nonzero stable W whose induced submodule is weakly
/// admissible. An empty list under an exact enumeration certifies that the
/// module has no weakly admissible submodules.
pub fn weakly_admissible_submodules(m: &FilteredPhiNModule, params: &SearchParams) -> WaSubmodules {
    let ambient = is_weakly_admissible(m, params);
    let enumeration = &ambient.enumeration;

    if enumeration.all_lines {
        let a = m.phi()[(0, 0)].clone();
        let v = finite_valuation(&a, m.ctx()).expect("phi invertible");
        let steps = m.fil().steps();
        if steps.len() == 1 {
            // Trivial filtration at degree d: every line has t_H = d.
            let d = steps[0].0;
            if d == v {
                return WaSubmodules {
                    submodules: Vec::new(),
                    completeness: Completeness::Exact,
                    all_lines: true,
                    ambient_verdict: ambient.verdict,
                    note: Some("every line is a weakly admissible submodule".into()),
                };
            }
            return WaSubmodules {
                submodules: Vec::new(),
                completeness: Completeness::Exact,
                all_lines: false,
                ambient_verdict: ambient.verdict,
                note: None,
            };
        }
        // Two jumps (d₁ < d₂): the deep step is a single line with t_H = d₂;
        // every other line has t_H = d₁.
        let (d1, _) = steps[0];
        let (d2, deep) = (steps[1].0, steps[1].1.clone());
        let mut submodules = Vec::new();
        let mut note = None;
        if d2 == v {
            submodules.push(deep);
        }
        if d1 == v {
            note = Some(format!(
                "every line outside the degree-{d2} step is weakly admissible \
                 (infinite family, not listed)"
            ));
        }
        return WaSubmodules {
            submodules,
            completeness: Completeness::Exact,
            all_lines: false,
            ambient_verdict: ambient.verdict,
            note,
        };
    }

    let mut out = Vec::new();
    for w in &enumeration.subspaces {
        if w.is_zero() || w.is_full() {
            continue;
        }
        let sub = m.submodule(w).expect("enumerated subspaces are stable");
        if sub.hodge_number() != sub.newton_number() {
            continue;
        }
        // The submodule must itself be weakly admissible: its stable
        // subspaces are exactly the enumerated ones contained in it.
        let mut inner_ok = true;
        for u in &enumeration.subspaces {
            if u.is_zero() || u.dim() >= w.dim() || !w.contains(u) {
                continue;
            }
            let inner = m.submodule(u).expect("stable");
            if inner.hodge_number() > inner.newton_number() {
                inner_ok = false;
                break;
            }
        }
        if inner_ok {
            out.push(w.clone());
        }
    }
    WaSubmodules {
        submodules: out,
        completeness: enumeration.completeness,
        all_lines: false,
        ambient_verdict: ambient.verdict,
        note: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongIrreducibility {
    True,
    Undecided,
}

/// Certified strong irreducibility result, with the certificate or the
/// reason no certificate applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongIrreducibilityReport {
    pub verdict: StrongIrreducibility,
    pub explanation: String,
}

/// Certify that the module stays without weakly admissible submodules over
/// every finite unramified extension. Certificates:
/// (i) φ has pairwise distinct rational eigenvalues, so no new eigenlines
/// appear over any extension; or (ii) dim = 2 with N ≠ 0, where every stable
/// line lies in ker N, a single line already defined over Q_p.
pub fn is_strongly_irreducible_over_unramified(
    m: &FilteredPhiNModule,
    params: &SearchParams,
) -> StrongIrreducibilityReport {
    if m.dim() <= 1 {
        return StrongIrreducibilityReport {
            verdict: StrongIrreducibility::True,
            explanation: "trivial certificate: no proper nonzero subspaces in dimension <= 1"
                .into(),
        };
    }
    let wa = is_weakly_admissible(m, params);
    if wa.verdict != Verdict::WeaklyAdmissible {
        return StrongIrreducibilityReport {
            verdict: StrongIrreducibility::Undecided,
            explanation: format!(
                "module is not certified weakly admissible (verdict: {})",
                wa.verdict.as_str()
            ),
        };
    }
    let subs = weakly_admissible_submodules(m, params);
    if subs.completeness != Completeness::Exact {
        return StrongIrreducibilityReport {
            verdict: StrongIrreducibility::Undecided,
            explanation: "stable-subspace enumeration is heuristic".into(),
        };
    }
    if !subs.submodules.is_empty() || subs.all_lines {
        return StrongIrreducibilityReport {
            verdict: StrongIrreducibility::Undecided,
            explanation: format!(
                "weakly admissible submodules exist over Q_p already ({} found)",
                if subs.all_lines {
                    "every line".to_string()
                } else {
                    subs.submodules.len().to_string()
                }
            ),
        };
    }
    if m.dim() == 2 && !m.mono().is_zero() {
        return StrongIrreducibilityReport {
            verdict: StrongIrreducibility::True,
            explanation: "criterion (ii): dim = 2 with N != 0, so every stable line lies in \
                          ker N, which is defined over Q_p independently of the coefficients"
                .into(),
        };
    }
    if distinct_rational_eigenvalues(m).is_some() {
        return StrongIrreducibilityReport {
            verdict: StrongIrreducibility::True,
            explanation: "criterion (i): phi has pairwise distinct rational eigenvalues, so \
                          the stable-subspace lattice is unchanged by coefficient extension"
                .into(),
        };
    }
    StrongIrreducibilityReport {
        verdict: StrongIrreducibility::Undecided,
        explanation: "no weakly admissible submodules over Q_p, but base-change stability is \
                      not certified for this shape"
            .into(),
    }
}

/// Result of the crystalline-filtration search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrystallineFiltration {
    /// A chain 0 = W₀ ⊂ … ⊂ W_k = M of weakly admissible stable subspaces
    /// with N vanishing on every graded piece.
    Found {
        chain: Vec<Subspace>,
    },
    /// Certified absent (exact enumeration, exhaustive search).
    Absent,
    Undecided {
        reason: String,
    },
}

/// Search depth-first (in enumeration order) for a filtration by weakly
/// admissible submodules whose graded pieces are crystalline.
pub fn has_crystalline_filtration(
    m: &FilteredPhiNModule,
    params: &SearchParams,
) -> CrystallineFiltration {
    let dim = m.dim();
    if dim == 0 {
        return CrystallineFiltration::Found {
            chain: vec![Subspace::full(0)],
        };
    }
    let wa = is_weakly_admissible(m, params);
    match wa.verdict {
        Verdict::NotWeaklyAdmissible => {
            // The top of any chain would have to be M itself, weakly
            // admissible; so no chain exists.
            return CrystallineFiltration::Absent;
        }
        Verdict::Undecided => {
            return CrystallineFiltration::Undecided {
                reason: "weak admissibility of the module itself is undecided".into(),
            };
        }
        Verdict::WeaklyAdmissible => {}
    }
    if m.is_crystalline() {
        return CrystallineFiltration::Found {
            chain: vec![Subspace::zero(dim), Subspace::full(dim)],
        };
    }

    let enumeration = &wa.enumeration;
    // With N != 0 the all-lines marker cannot be set, so the listed
    // subspaces are the whole lattice when exact.
    let candidates: Vec<&Subspace> = enumeration.subspaces.iter().collect();

    // Weakly admissible as a submodule, including the inner inequalities.
    let wa_sub = |w: &Subspace| -> bool {
        if w.is_full() {
            return true; // M itself, already certified.
        }
        let sub = m.submodule(w).expect("stable");
        if sub.hodge_number() != sub.newton_number() {
            return false;
        }
        candidates
            .iter()
            .filter(|u| !u.is_zero() && u.dim() < w.dim() && w.contains(u))
            .all(|u| {
                let inner = m.submodule(u).expect("stable");
                inner.hodge_number() <= inner.newton_number()
            })
    };

    // N must vanish on W / prev.
    let graded_crystalline = |prev: &Subspace, w: &Subspace| -> bool {
        let sub = m.submodule(w).expect("stable");
        if prev.is_zero() {
            return sub.mono().is_zero();
        }
        let prev_in_w: Vec<Vec<Rat>> = prev
            .basis_rows()
            .iter()
            .map(|v| w.coords(v).expect("prev is contained in w"))
            .collect();
        let prev_sub = Subspace::from_rows(w.dim(), &prev_in_w).expect("coords");
        let graded = sub.quotient(&prev_sub).expect("stable in submodule");
        graded.mono().is_zero()
    };

    fn dfs(
        cur: &Subspace,
        full: &Subspace,
        candidates: &[&Subspace],
        wa_sub: &dyn Fn(&Subspace) -> bool,
        graded: &dyn Fn(&Subspace, &Subspace) -> bool,
        chain: &mut Vec<Subspace>,
        dead: &mut HashSet<Subspace>,
    ) -> bool {
        if cur == full {
            return true;
        }
        for w in candidates {
            if w.dim() <= cur.dim() || !w.contains(cur) || dead.contains(*w) {
                continue;
            }
            if !wa_sub(w) || !graded(cur, w) {
                continue;
            }
            chain.push((*w).clone());
            if dfs(w, full, candidates, wa_sub, graded, chain, dead) {
                return true;
            }
            chain.pop();
        }
        dead.insert(cur.clone());
        false
    }

    let full = Subspace::full(dim);
    let mut chain = vec![Subspace::zero(dim)];
    let mut dead = HashSet::new();
    if dfs(
        &Subspace::zero(dim),
        &full,
        &candidates,
        &wa_sub,
        &graded_crystalline,
        &mut chain,
        &mut dead,
    ) {
        return CrystallineFiltration::Found { chain };
    }
    match enumeration.completeness {
        Completeness::Exact => CrystallineFiltration::Absent,
        Completeness::Heuristic => CrystallineFiltration::Undecided {
            reason: "no chain found, but the stable-subspace enumeration is heuristic".into(),
        },
    }
}

/// Batch admissibility over many modules; parallel when the feature is on,
/// with identical output either way.
pub fn batch_is_weakly_admissible(
    modules: &[FilteredPhiNModule],
    params: &SearchParams,
) -> Vec<AdmissibilityReport> {
    par::map_slice(modules, |m| is_weakly_admissible(m, params))
}

/// Sequential twin of [`batch_is_weakly_admissible`] for benchmarks.
pub fn batch_is_weakly_admissible_seq(
    modules: &[FilteredPhiNModule],
    params: &SearchParams,
) -> Vec<AdmissibilityReport> {
    modules
        .iter()
        .map(|m| is_weakly_admissible(m, params))
        .collect()
}

/// Render a subspace compactly for reports: rows of the canonical basis.
pub fn subspace_to_string(w: &Subspace) -> String {
    if w.is_zero() {
        return "0".into();
    }
    let rows: Vec<String> = w
        .basis_rows()
        .iter()
        .map(|r| {
            let entries: Vec<String> = r.iter().map(rat_to_string).collect();
            format!("({})", entries.join(","))
        })
        .collect();
    format!("span{{{}}}", rows.join(", "))
}
