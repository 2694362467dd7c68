//! Filtered (φ,N)-modules over Q_p: the central data type, its structural
//! axioms, Hodge and Newton numbers, sub/quotient/symmetric-power
//! constructions, and the two-parameter example family.
//!
//! Conventions, used everywhere: vectors are column vectors and operators
//! act on the left, so "N sends e₁ to e₂" means column 1 of N is e₂.
//! A filtration is stored only at its jumps, as strictly increasing degrees
//! with strictly decreasing subspaces; Filᵢ is the subspace at of the
//! smallest listed degree ≥ i, the full space at or below the first listed
//! degree, and zero beyond the last.

use crate::error::{Error, Result};
use crate::exact::matrix::Matrix;
use crate::exact::padic::{finite_valuation, PrimeContext};
use crate::exact::rational::{rat_to_string, Rat};
use crate::exact::subspace::Subspace;
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A decreasing exhaustive separated filtration, stored at its jumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    ambient: usize,
    steps: Vec<(i64, Subspace)>,
}

impl Filtration {
    /// Build from (degree, subspace) steps with degrees strictly increasing.
    /// Consecutive equal subspaces are merged (keeping the largest degree)
    /// and zero subspaces are dropped, so the stored encoding is unique.
    /// After normalization the first subspace must be the full space.
    pub fn new(ambient: usize, steps: Vec<(i64, Subspace)>) -> Result<Self> {
        for (_, s) in &steps {
            if s.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "filtration step has ambient {} but the module has dimension {ambient}",
                    s.ambient_dim()
                )));
            }
        }
        for w in steps.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::BadParameters(
                    "filtration degrees must be strictly increasing".into(),
                ));
            }
        }
        // Merge runs of equal subspaces, keeping the last degree of each run.
        let mut merged: Vec<(i64, Subspace)> = Vec::new();
        for (d, s) in steps {
            if let Some(last) = merged.last_mut() {
                if last.1 == s {
                    last.0 = d;
                    continue;
                }
            }
            merged.push((d, s));
        }
        merged.retain(|(_, s)| !s.is_zero());
        for w in merged.windows(2) {
            if !(w[0].1.contains(&w[1].1) && w[1].1.dim() < w[0].1.dim()) {
                return Err(Error::BadParameters(
                    "filtration subspaces must be strictly decreasing by inclusion".into(),
                ));
            }
        }
        if ambient > 0 {
            match merged.first() {
                Some((_, s)) if s.is_full() => {}
                _ => {
                    return Err(Error::BadParameters(
                        "the first filtration step must be the full space (exhaustive filtration)"
                            .into(),
                    ))
                }
            }
        }
        Ok(Filtration {
            ambient,
            steps: merged,
        })
    }

    /// The filtration with a single jump: full space at `degree`, zero above.
    pub fn trivial(ambient: usize, degree: i64) -> Self {
        Filtration::new(ambient, vec![(degree, Subspace::full(ambient))])
            .expect("trivial filtration is canonical")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn steps(&self) -> &[(i64, Subspace)] {
        &self.steps
    }

    /// Filᵢ: the subspace at the smallest listed degree ≥ i; zero beyond the
    /// last listed degree.
    pub fn at(&self, i: i64) -> Subspace {
        for (d, s) in &self.steps {
            if *d >= i {
                return s.clone();
            }
        }
        Subspace::zero(self.ambient)
    }

    /// Jump degrees with their graded dimensions (all positive).
    pub fn jumps(&self) -> Vec<(i64, usize)> {
        (0..self.steps.len())
            .map(|j| {
                let next_dim = self.steps.get(j + 1).map_or(0, |(_, s)| s.dim());
                (self.steps[j].0, self.steps[j].1.dim() - next_dim)
            })
            .collect()
    }

    /// Largest degree whose filtration subspace is nonzero, if any.
    pub fn max_nonzero_degree(&self) -> Option<i64> {
        self.steps.last().map(|(d, _)| *d)
    }

    /// Σ degree · graded dimension.
    pub fn hodge_number(&self) -> i64 {
        self.jumps().iter().map(|(d, m)| d * *m as i64).sum()
    }

    /// Degrees of an adapted basis: vectors chosen from the deepest step
    /// outwards, each labeled with the largest degree whose step contains it.
    pub fn adapted_basis(&self) -> Vec<(Vec<Rat>, i64)> {
        let mut out: Vec<(Vec<Rat>, i64)> = Vec::new();
        let mut span = Subspace::zero(self.ambient);
        for (d, s) in self.steps.iter().rev() {
            for row in s.basis_rows() {
                if !span.contains_vec(&row) {
                    span = span
                        .sum(&Subspace::line(&row).expect("basis row"))
                        .expect("same ambient");
                    out.push((row, *d));
                }
            }
        }
        debug_assert_eq!(out.len(), self.ambient);
        out
    }
}

/// The multiset of filtration jump degrees with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeTateType {
    pub jumps: Vec<(i64, usize)>,
}

impl HodgeTateType {
    /// All jump degrees lie in {0, 1}.
    pub fn is_type_01(&self) -> bool {
        self.jumps.iter().all(|(d, _)| *d == 0 || *d == 1)
    }
}

impl fmt::Display for HodgeTateType {
    /// Expanded tuple form: the s=3 example prints as `(0,3)`, its square
    /// as `(0,3,6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expanded: Vec<String> = self
            .jumps
            .iter()
            .flat_map(|(d, m)| std::iter::repeat_n(d.to_string(), *m))
            .collect();
        write!(f, "({})", expanded.join(","))
    }
}

/// One structural axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Outcome of `validate`: one entry per axiom, with the offending data on
/// failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// A filtered (φ,N)-module over Q_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredPhiNModule {
    ctx: PrimeContext,
    dim: usize,
    phi: Matrix,
    mono: Matrix,
    fil: Filtration,
}

impl FilteredPhiNModule {
    /// Construct with shape checks only; the structural axioms are examined
    /// by [`FilteredPhiNModule::validate`], which is the gatekeeper.
    pub fn new(ctx: PrimeContext, phi: Matrix, mono: Matrix, fil: Filtration) -> Result<Self> {
        let dim = fil.ambient_dim();
        let square = |m: &Matrix, name: &str| {
            if m.rows() != dim || m.cols() != dim {
                Err(Error::DimensionMismatch(format!(
                    "{name} must be {dim}x{dim}, got {}x{}",
                    m.rows(),
                    m.cols()
                )))
            } else {
                Ok(())
            }
        };
        square(&phi, "phi")?;
        square(&mono, "N")?;
        Ok(FilteredPhiNModule {
            ctx,
            dim,
            phi,
            mono,
            fil,
        })
    }

    /// The unit object: dimension 1, φ = 1, N = 0, jump at 0.
    pub fn unit(ctx: PrimeContext) -> Self {
        FilteredPhiNModule::new(
            ctx,
            Matrix::identity(1),
            Matrix::zeros(1, 1),
            Filtration::trivial(1, 0),
        )
        .expect("unit object is well-formed")
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn mono(&self) -> &Matrix {
        &self.mono
    }

    pub fn fil(&self) -> &Filtration {
        &self.fil
    }

    /// Check every structural axiom and report each with pass/fail and, on
    /// failure, the offending data.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let det = if self.dim == 0 {
            Rat::one()
        } else {
            self.phi.det()
        };
        checks.push(AxiomCheck {
            name: "phi_invertible",
            passed: !det.is_zero(),
            detail: Some(format!("det(phi) = {}", rat_to_string(&det))),
        });

        let nil = self.mono.pow(self.dim);
        checks.push(AxiomCheck {
            name: "mono_nilpotent",
            passed: nil.is_zero(),
            detail: if nil.is_zero() {
                None
            } else {
                Some(format!("N^{} = {}", self.dim, nil))
            },
        });

        let lhs = (&self.phi * &self.mono).scale(&self.ctx.p_rat());
        let rhs = &self.mono * &self.phi;
        let diff = &lhs - &rhs;
        checks.push(AxiomCheck {
            name: "commutation_p_phi_n",
            passed: diff.is_zero(),
            detail: if diff.is_zero() {
                None
            } else {
                Some(format!("p·phi·N - N·phi = {}", diff))
            },
        });

        // The filtration encoding is canonical by construction; re-verify the
        // shape contract here so `validate` stands alone.
        let fil_ok = self.fil.ambient_dim() == self.dim
            && self
                .fil
                .steps()
                .first()
                .map_or(self.dim == 0, |(_, s)| s.is_full());
        checks.push(AxiomCheck {
            name: "filtration_exhaustive_separated",
            passed: fil_ok,
            detail: None,
        });

        ValidationReport { checks }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().all_passed()
    }

    /// t_H: Σ over jumps of degree × graded dimension.
    pub fn hodge_number(&self) -> i64 {
        self.fil.hodge_number()
    }

    /// t_N: v_p(det φ), an integer since det φ is a nonzero rational.
    pub fn newton_number(&self) -> i64 {
        if self.dim == 0 {
            return 0;
        }
        finite_valuation(&self.phi.det(), &self.ctx).expect("valid module has det(phi) != 0")
    }

    pub fn hodge_tate_type(&self) -> HodgeTateType {
        HodgeTateType {
            jumps: self.fil.jumps(),
        }
    }

    pub fn is_type_01(&self) -> bool {
        self.hodge_tate_type().is_type_01()
    }

    /// Crystalline on the module side means N = 0.
    pub fn is_crystalline(&self) -> bool {
        self.mono.is_zero()
    }

    /// φ(W) ⊆ W and N(W) ⊆ W.
    pub fn is_stable(&self, w: &Subspace) -> bool {
        assert_eq!(
            w.ambient_dim(),
            self.dim,
            "subspace ambient must equal module dimension"
        );
        let phi_w = w.apply(&self.phi).expect("ambient checked");
        let n_w = w.apply(&self.mono).expect("ambient checked");
        w.contains(&phi_w) && w.contains(&n_w)
    }

    /// The submodule on a stable subspace: operators restricted to the RREF
    /// basis of W, filtration induced as Filᵈ ∩ W with duplicate steps
    /// merged.
    pub fn submodule(&self, w: &Subspace) -> Result<FilteredPhiNModule> {
        if !self.is_stable(w) {
            return Err(Error::NotInvariant);
        }
        let phi = w.restrict_operator(&self.phi)?;
        let mono = w.restrict_operator(&self.mono)?;
        let k = w.dim();
        let mut steps = Vec::new();
        for (d, s) in self.fil.steps() {
            let inter = s.intersect(w)?;
            let rows: Vec<Vec<Rat>> = inter
                .basis_rows()
                .iter()
                .map(|v| w.coords(v).expect("intersection lies in W"))
                .collect();
            steps.push((*d, Subspace::from_rows(k, &rows)?));
        }
        let fil = Filtration::new(k, steps)?;
        FilteredPhiNModule::new(self.ctx, phi, mono, fil)
    }

    /// The quotient module M/W: canonical projection from the RREF pivots of
    /// W, induced operators, image filtration.
    pub fn quotient(&self, w: &Subspace) -> Result<FilteredPhiNModule> {
        if !self.is_stable(w) {
            return Err(Error::NotInvariant);
        }
        let (proj, qdim) = w.quotient_map();
        let free = w.free_cols();
        let induced = |op: &Matrix| -> Matrix {
            let mut out = Matrix::zeros(qdim, qdim);
            for (j, &f) in free.iter().enumerate() {
                let img = proj
                    .mul_vec(&op.col(f))
                    .expect("projection applies to columns");
                for i in 0..qdim {
                    out[(i, j)] = img[i].clone();
                }
            }
            out
        };
        let phi = induced(&self.phi);
        let mono = induced(&self.mono);
        let mut steps = Vec::new();
        for (d, s) in self.fil.steps() {
            let rows: Vec<Vec<Rat>> = s
                .basis_rows()
                .iter()
                .map(|v| proj.mul_vec(v).expect("ambient checked"))
                .collect();
            steps.push((*d, Subspace::from_rows(qdim, &rows)?));
        }
        let fil = Filtration::new(qdim, steps)?;
        FilteredPhiNModule::new(self.ctx, phi, mono, fil)
    }

    /// The n-th symmetric power: basis are the degree-n monomials in the
    /// standard basis, ordered by descending exponent vectors; φ acts
    /// multiplicatively, N as a derivation, and the filtration is the jump
    /// convolution computed through an adapted basis.
    pub fn sym_power(&self, n: usize) -> Result<FilteredPhiNModule> {
        if n == 0 {
            return Err(Error::BadParameters(
                "symmetric power requires n >= 1".into(),
            ));
        }
        let d = self.dim;
        let monomials = monomials_desc(d, n);
        let dim_sym = monomials.len();
        let index: BTreeMap<&[u32], usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect();

        // φ on a monomial: product of the images of its letters.
        let mut phi_sym = Matrix::zeros(dim_sym, dim_sym);
        for (j, alpha) in monomials.iter().enumerate() {
            let expansion = expand_power_product(&self.phi, alpha);
            for (mono, c) in expansion {
                phi_sym[(index[mono.as_slice()], j)] = c;
            }
        }

        // N on a monomial: Leibniz rule, one letter lowered at a time.
        let mut mono_sym = Matrix::zeros(dim_sym, dim_sym);
        for (j, alpha) in monomials.iter().enumerate() {
            for i in 0..d {
                if alpha[i] == 0 {
                    continue;
                }
                let coeff = Rat::from_integer(alpha[i].into());
                for row in 0..d {
                    let c = &self.mono[(row, i)];
                    if c.is_zero() {
                        continue;
                    }
                    let mut target = alpha.clone();
                    target[i] -= 1;
                    target[row] += 1;
                    let entry = &mono_sym[(index[target.as_slice()], j)] + &(&coeff * c);
                    mono_sym[(index[target.as_slice()], j)] = entry;
                }
            }
        }

        // Filtration by convolution of adapted-basis degrees.
        let adapted = self.fil.adapted_basis();
        let basis_mx = Matrix::from_rows(adapted.iter().map(|(v, _)| v.clone()).collect())?;
        let degrees: Vec<i64> = adapted.iter().map(|(_, g)| *g).collect();
        // Monomials in the adapted basis, expanded into standard monomials.
        let mut columns: Vec<(i64, Vec<Rat>)> = Vec::new();
        for alpha in &monomials {
            let deg: i64 = alpha
                .iter()
                .zip(&degrees)
                .map(|(&a, &g)| a as i64 * g)
                .sum();
            let expansion = expand_power_product(&basis_mx.transpose(), alpha);
            let mut col = vec![Rat::zero(); dim_sym];
            for (mono, c) in expansion {
                col[index[mono.as_slice()]] = c;
            }
            columns.push((deg, col));
        }
        let mut jump_degrees: Vec<i64> = columns.iter().map(|(g, _)| *g).collect();
        jump_degrees.sort_unstable();
        jump_degrees.dedup();
        let mut steps = Vec::new();
        for t in jump_degrees {
            let rows: Vec<Vec<Rat>> = columns
                .iter()
                .filter(|(g, _)| *g >= t)
                .map(|(_, v)| v.clone())
                .collect();
            steps.push((t, Subspace::from_rows(dim_sym, &rows)?));
        }
        let fil = Filtration::new(dim_sym, steps)?;

        let out = FilteredPhiNModule::new(self.ctx, phi_sym, mono_sym, fil)?;
        let report = out.validate();
        if !report.all_passed() {
            return Err(Error::TheoremViolation(format!(
                "symmetric power failed validation: {:?}",
                report.failures()
            )));
        }
        Ok(out)
    }
}

/// Degree-n monomial exponent vectors over `d` letters, lexicographically
/// descending, e.g. (2,0), (1,1), (0,2).
fn monomials_desc(d: usize, n: usize) -> Vec<Vec<u32>> {
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; d];
    fn rec(pos: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = remaining;
            out.push(cur.clone());
            return;
        }
        for a in (0..=remaining).rev() {
            cur[pos] = a;
            rec(pos + 1, remaining - a, cur, out);
        }
    }
    rec(0, n as u32, &mut cur, &mut out);
    out
}

/// Expand ∏ᵢ (column i of `mx` as a linear form)^αᵢ into monomial
/// coefficients.
fn expand_power_product(mx: &Matrix, alpha: &[u32]) -> BTreeMap<Vec<u32>, Rat> {
    let d = mx.rows();
    let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    acc.insert(vec![0u32; d], Rat::one());
    for (i, &power) in alpha.iter().enumerate() {
        for _ in 0..power {
            let mut next: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
            for (mono, c) in &acc {
                for row in 0..d {
                    let a = &mx[(row, i)];
                    if a.is_zero() {
                        continue;
                    }
                    let mut m2 = mono.clone();
                    m2[row] += 1;
                    let add = c * a;
                    next.entry(m2)
                        .and_modify(|v| *v = &*v + &add)
                        .or_insert(add);
                }
            }
            next.retain(|_, v| !v.is_zero());
            acc = next;
        }
    }
    acc
}

/// The two-parameter family: M = ⟨e₁, e₂⟩ with φ(e₁) = pb·e₁, φ(e₂) = b·e₂,
/// N(e₁) = e₂ (and N(e₂) = 0, forced by nilpotency), filtration jumping from
/// the full space at 0 to ⟨e₁⟩ at s. Requires s ≥ 3 odd and v_p(b) = (s−1)/2.
pub fn fm_example(p: u64, s: i64, b: &Rat) -> Result<FilteredPhiNModule> {
    let ctx = PrimeContext::new(p)?;
    if s < 3 || s % 2 == 0 {
        return Err(Error::BadParameters(format!(
            "s must be an odd integer with s >= 3, got {s}"
        )));
    }
    let need = (s - 1) / 2;
    match crate::exact::padic::valuation(b, &ctx).finite() {
        Some(v) if v == need => {}
        v => {
            return Err(Error::BadParameters(format!(
                "v_p(b) must equal (s-1)/2 = {need}, got {}",
                v.map_or("+inf".to_string(), |x| x.to_string())
            )))
        }
    }
    let zero = Rat::zero();
    let pb = &ctx.p_rat() * b;
    let phi = Matrix::from_rows(vec![vec![pb, zero.clone()], vec![zero.clone(), b.clone()]])?;
    let mono = Matrix::from_int_rows(&[&[0, 0], &[1, 0]]);
    let fil = Filtration::new(
        2,
        vec![
            (0, Subspace::full(2)),
            (s, Subspace::from_int_rows(2, &[&[1, 0]])),
        ],
    )?;
    FilteredPhiNModule::new(ctx, phi, mono, fil)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    /// Independent t_H oracle for symmetric powers: enumerate every
    /// degree-n monomial over the adapted-basis degrees and sum the
    /// convolved degrees directly.
    fn sym_hodge_oracle(jump_degrees: &[i64], n: usize) -> i64 {
        fn rec(degrees: &[i64], n: usize, start: usize, acc: i64, total: &mut i64) {
            if n == 0 {
                *total += acc;
                return;
            }
            for i in start..degrees.len() {
                rec(degrees, n - 1, i, acc + degrees[i], total);
            }
        }
        let mut total = 0;
        rec(jump_degrees, n, 0, 0, &mut total);
        total
    }

    fn fm535() -> FilteredPhiNModule {
        fm_example(5, 3, &rat(5)).unwrap()
    }

    /// φ = diag(p, 1), N e₁ = e₂, jumps (0, full), (1, ⟨e₁⟩ or ⟨e₂⟩).
    fn tate_like(p: u64, fil_on_e1: bool) -> FilteredPhiNModule {
        let c = ctx(p);
        let phi = Matrix::from_rows(vec![vec![c.p_rat(), rat(0)], vec![rat(0), rat(1)]]).unwrap();
        let mono = Matrix::from_int_rows(&[&[0, 0], &[1, 0]]);
        let line = if fil_on_e1 {
            Subspace::from_int_rows(2, &[&[1, 0]])
        } else {
            Subspace::from_int_rows(2, &[&[0, 1]])
        };
        let fil = Filtration::new(2, vec![(0, Subspace::full(2)), (1, line)]).unwrap();
        FilteredPhiNModule::new(c, phi, mono, fil).unwrap()
    }

    #[test]
    fn example_module_passes_validation() {
        let m = fm535();
        assert_eq!(m.phi(), &Matrix::from_int_rows(&[&[25, 0], &[0, 5]]));
        assert_eq!(m.mono(), &Matrix::from_int_rows(&[&[0, 0], &[1, 0]]));
        let report = m.validate();
        assert!(report.all_passed(), "failures: {:?}", report.failures());
    }

    #[test]
    fn unit_object_is_valid() {
        let u = FilteredPhiNModule::unit(ctx(5));
        assert!(u.is_valid());
        assert_eq!(u.hodge_number(), 0);
        assert_eq!(u.newton_number(), 0);
        assert!(u.is_crystalline());
        assert_eq!(u.hodge_tate_type().jumps, vec![(0, 1)]);
        assert!(u.is_type_01());
    }

    #[test]
    fn flipped_monodromy_fails_commutation() {
        // N e₂ = e₁ instead: N·φ = [[0,5],[0,0]] but 5·φ·N = [[0,125],[0,0]].
        let c = ctx(5);
        let phi = Matrix::from_int_rows(&[&[25, 0], &[0, 5]]);
        let mono = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let m = FilteredPhiNModule::new(c, phi, mono, Filtration::trivial(2, 0)).unwrap();
        let report = m.validate();
        assert!(!report.all_passed());
        let failing: Vec<_> = report.failures().iter().map(|c| c.name).collect();
        assert_eq!(failing, vec!["commutation_p_phi_n"]);
        let detail = report.failures()[0].detail.clone().unwrap();
        assert!(detail.contains("p·phi·N - N·phi"));
    }

    #[test]
    fn hodge_and_newton_numbers_of_the_example() {
        let m = fm535();
        assert_eq!(m.hodge_number(), 3);
        assert_eq!(m.newton_number(), 3);
        assert_eq!(m.hodge_tate_type().jumps, vec![(0, 1), (3, 1)]);
        assert!(!m.is_type_01());
        assert_eq!(m.hodge_tate_type().to_string(), "(0,3)");
        assert!(!m.is_crystalline());
    }

    #[test]
    fn example_family_numbers_across_the_grid() {
        for p in [2u64, 3, 5, 7] {
            for s in [3i64, 5, 7] {
                let b = ctx(p).p_pow_rat((s - 1) / 2);
                let m = fm_example(p, s, &b).unwrap();
                assert!(m.is_valid());
                assert_eq!(m.hodge_number(), s, "t_H at p={p}, s={s}");
                assert_eq!(m.newton_number(), s, "t_N at p={p}, s={s}");
            }
        }
    }

    #[test]
    fn example_family_rejects_bad_parameters() {
        // s even
        let err = fm_example(5, 4, &rat(5)).unwrap_err();
        assert!(matches!(err, Error::BadParameters(ref msg) if msg.contains("odd")));
        // s too small
        assert!(fm_example(5, 1, &rat(1)).is_err());
        // wrong valuation of b
        let err = fm_example(5, 3, &rat(25)).unwrap_err();
        assert!(matches!(err, Error::BadParameters(ref msg) if msg.contains("(s-1)/2")));
        // v_5(10) = 1 is accepted
        assert!(fm_example(5, 3, &rat(10)).is_ok());
        // p must be prime
        assert!(fm_example(6, 3, &rat(6)).is_err());
    }

    #[test]
    fn stability_of_lines() {
        let m = fm535();
        let e1 = Subspace::from_int_rows(2, &[&[1, 0]]);
        let e2 = Subspace::from_int_rows(2, &[&[0, 1]]);
        assert!(m.is_stable(&e2));
        assert!(!m.is_stable(&e1)); // N e₁ = e₂ leaves ⟨e₁⟩
        assert!(m.is_stable(&Subspace::zero(2)));
        assert!(m.is_stable(&Subspace::full(2)));
    }

    #[test]
    fn submodule_on_the_stable_line() {
        let m = fm535();
        let e2 = Subspace::from_int_rows(2, &[&[0, 1]]);
        let sub = m.submodule(&e2).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(sub.phi(), &Matrix::from_int_rows(&[&[5]]));
        assert!(sub.mono().is_zero());
        // Filtration restricts trivially: single jump at 0.
        assert_eq!(sub.fil().jumps(), vec![(0, 1)]);
        assert_eq!(sub.hodge_number(), 0);
        assert_eq!(sub.newton_number(), 1); // (s-1)/2 for s=3
        assert!(sub.is_valid());
    }

    #[test]
    fn submodule_of_full_space_is_the_module() {
        let m = fm535();
        let sub = m.submodule(&Subspace::full(2)).unwrap();
        assert_eq!(&sub, &m);
    }

    #[test]
    fn submodule_rejects_unstable_subspace() {
        let m = fm535();
        let e1 = Subspace::from_int_rows(2, &[&[1, 0]]);
        assert_eq!(m.submodule(&e1), Err(Error::NotInvariant));
    }

    #[test]
    fn quotient_of_tate_like_module() {
        let m = tate_like(5, true);
        assert!(m.is_valid());
        let e2 = Subspace::from_int_rows(2, &[&[0, 1]]);
        let q = m.quotient(&e2).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.phi(), &Matrix::from_int_rows(&[&[5]]));
        assert!(q.mono().is_zero());
        assert_eq!(q.fil().jumps(), vec![(1, 1)]);
        assert!(q.is_crystalline());
        assert!(q.is_valid());
    }

    #[test]
    fn quotient_degenerate_cases() {
        let m = fm535();
        let by_zero = m.quotient(&Subspace::zero(2)).unwrap();
        assert_eq!(&by_zero, &m);
        let by_full = m.quotient(&Subspace::full(2)).unwrap();
        assert_eq!(by_full.dim(), 0);
        assert_eq!(by_full.hodge_number(), 0);
        assert_eq!(by_full.newton_number(), 0);
        assert!(by_full.is_valid());
    }

    #[test]
    fn numbers_are_additive_over_sub_and_quotient() {
        let m = fm535();
        let e2 = Subspace::from_int_rows(2, &[&[0, 1]]);
        let sub = m.submodule(&e2).unwrap();
        let quot = m.quotient(&e2).unwrap();
        assert_eq!(m.hodge_number(), sub.hodge_number() + quot.hodge_number());
        assert_eq!(
            m.newton_number(),
            sub.newton_number() + quot.newton_number()
        );
        // Same for the Tate-like module.
        let t = tate_like(5, true);
        let sub = t.submodule(&e2).unwrap();
        let quot = t.quotient(&e2).unwrap();
        assert_eq!(t.hodge_number(), sub.hodge_number() + quot.hodge_number());
        assert_eq!(
            t.newton_number(),
            sub.newton_number() + quot.newton_number()
        );
    }

    #[test]
    fn symmetric_square_matches_hand_expansion() {
        let m = fm535();
        let s2 = m.sym_power(2).unwrap();
        assert_eq!(s2.dim(), 3);
        // Basis (e₁², e₁e₂, e₂²): φ multiplies eigenvalues.
        assert_eq!(
            s2.phi(),
            &Matrix::from_int_rows(&[&[625, 0, 0], &[0, 125, 0], &[0, 0, 25]])
        );
        // N(e₁²) = 2e₁e₂, N(e₁e₂) = e₂², N(e₂²) = 0.
        assert_eq!(
            s2.mono(),
            &Matrix::from_int_rows(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0]])
        );
        assert_eq!(s2.fil().jumps(), vec![(0, 1), (3, 1), (6, 1)]);
        // Frozen from the convolution oracle.
        assert_eq!(sym_hodge_oracle(&[3, 0], 2), 9);
        assert_eq!(s2.hodge_number(), 9);
        // Eigenvalue valuations 4 + 3 + 2.
        assert_eq!(s2.newton_number(), 9);
        assert_eq!(s2.hodge_tate_type().to_string(), "(0,3,6)");
    }

    #[test]
    fn symmetric_cube_numbers() {
        let m = fm535();
        let s3 = m.sym_power(3).unwrap();
        assert_eq!(s3.dim(), 4);
        assert_eq!(sym_hodge_oracle(&[3, 0], 3), 18);
        assert_eq!(s3.hodge_number(), 18);
        assert_eq!(s3.newton_number(), 18);
        assert!(s3.is_valid());
    }

    #[test]
    fn first_symmetric_power_is_identity() {
        let m = fm535();
        assert_eq!(m.sym_power(1).unwrap(), m);
        let t = tate_like(7, false);
        assert_eq!(t.sym_power(1).unwrap(), t);
    }

    #[test]
    fn symmetric_power_dimension_formula() {
        // dim Sym^n = C(dim + n - 1, n)
        let m = fm535();
        for n in 1..=4 {
            let s = m.sym_power(n).unwrap();
            assert_eq!(s.dim(), n + 1);
            assert!(s.is_valid());
        }
        let s2_of_s2 = m.sym_power(2).unwrap().sym_power(2).unwrap();
        assert_eq!(s2_of_s2.dim(), 6); // C(3+2-1, 2)
        assert!(s2_of_s2.is_valid());
    }

    #[test]
    fn sym_power_hodge_matches_oracle_on_grid() {
        for s in [3i64, 5] {
            let b = ctx(5).p_pow_rat((s - 1) / 2);
            let m = fm_example(5, s, &b).unwrap();
            for n in 2..=4usize {
                let sym = m.sym_power(n).unwrap();
                let expect = sym_hodge_oracle(&[s, 0], n);
                assert_eq!(sym.hodge_number(), expect, "s={s}, n={n}");
                assert_eq!(sym.newton_number(), expect, "s={s}, n={n}");
                // Closed form s·n(n+1)/2.
                assert_eq!(expect, s * (n as i64) * (n as i64 + 1) / 2);
            }
        }
    }

    #[test]
    fn submodule_of_symmetric_square() {
        // W = span(e₁e₂, e₂²) inside Sym²: t_H = 3, t_N = 5, checked
        // independently through subspace arithmetic in the test.
        let s2 = fm535().sym_power(2).unwrap();
        let w = Subspace::from_int_rows(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert!(s2.is_stable(&w));
        let sub = s2.submodule(&w).unwrap();
        assert_eq!(sub.dim(), 2);
        // Oracle: eigenvalues on W are 125 and 25, valuations 3 + 2 = 5.
        assert_eq!(sub.newton_number(), 5);
        // Oracle: Fil⁰∩W = W, Fil³∩W = ⟨e₁e₂⟩, Fil⁶∩W = 0 → t_H = 3.
        let fil3 = s2.fil().at(3);
        let inter = fil3.intersect(&w).unwrap();
        assert_eq!(inter.dim(), 1);
        assert_eq!(sub.hodge_number(), 3);
        assert!(sub.is_valid());
    }

    #[test]
    fn filtration_convention_matches_piecewise_definition() {
        let m = fm535();
        let full = Subspace::full(2);
        let e1 = Subspace::from_int_rows(2, &[&[1, 0]]);
        let zero = Subspace::zero(2);
        assert_eq!(m.fil().at(-3), full);
        assert_eq!(m.fil().at(0), full);
        assert_eq!(m.fil().at(1), e1);
        assert_eq!(m.fil().at(3), e1);
        assert_eq!(m.fil().at(4), zero);
    }

    #[test]
    fn filtration_rejects_malformed_steps() {
        let full = Subspace::full(2);
        let e1 = Subspace::from_int_rows(2, &[&[1, 0]]);
        // Not exhaustive: first step is a line.
        assert!(Filtration::new(2, vec![(0, e1.clone())]).is_err());
        // Degrees not increasing.
        assert!(Filtration::new(2, vec![(1, full.clone()), (0, e1.clone())]).is_err());
        // Not decreasing by inclusion.
        let e2 = Subspace::from_int_rows(2, &[&[0, 1]]);
        assert!(Filtration::new(2, vec![(0, full.clone()), (1, e1.clone()), (2, e2)]).is_err());
        // Duplicate subspace at consecutive degrees merges to the last one.
        let f = Filtration::new(
            2,
            vec![(0, full.clone()), (1, full.clone()), (3, e1.clone())],
        )
        .unwrap();
        assert_eq!(f.steps().len(), 2);
        assert_eq!(f.steps()[0].0, 1);
        assert_eq!(f.hodge_number(), 1 + 3);
    }

    #[test]
    fn fractional_scalars_are_fine() {
        // b = 5/2 has v_5 = 1, valid for s = 3.
        let m = fm_example(5, 3, &ratio(5, 2)).unwrap();
        assert!(m.is_valid());
        assert_eq!(m.hodge_number(), 3);
        assert_eq!(m.newton_number(), 3);
    }
}
