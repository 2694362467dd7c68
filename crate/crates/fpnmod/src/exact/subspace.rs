//! Linear subspaces of Q^n in a canonical exact representation.
//!
//! A subspace is stored as the reduced row-echelon form of any spanning set,
//! rows being basis vectors. RREF is a unique representative, so subspace
//! equality is plain matrix equality and canonical ordering is
//! (dimension, lexicographic matrix entries).

use crate::error::{Error, Result};
use crate::exact::matrix::Matrix;
use crate::exact::rational::Rat;
use num::traits::{One, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    /// RREF basis, rows = basis vectors; no zero rows.
    basis: Matrix,
    /// Pivot column of each basis row.
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of a list of row vectors inside Q^ambient.
    pub fn from_rows(ambient: usize, rows: &[Vec<Rat>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "spanning vectors must have length {ambient}"
            )));
        }
        // Build with an explicit column count so the empty spanning set
        // still yields a 0×ambient basis and zero subspaces stay canonical.
        let mut raw = Matrix::zeros(rows.len(), ambient);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                raw[(i, j)] = v.clone();
            }
        }
        let (rref, pivots) = raw.rref();
        let mut basis = Matrix::zeros(pivots.len(), ambient);
        for i in 0..pivots.len() {
            for j in 0..ambient {
                basis[(i, j)] = rref[(i, j)].clone();
            }
        }
        Ok(Subspace {
            ambient,
            basis,
            pivots,
        })
    }

    pub fn from_int_rows(ambient: usize, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
            .collect();
        Subspace::from_rows(ambient, &rows).expect("consistent row lengths")
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The line spanned by one vector.
    pub fn line(v: &[Rat]) -> Result<Self> {
        Subspace::from_rows(v.len(), &[v.to_vec()])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical RREF basis matrix (rows = basis vectors).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Kernel {v : Av = 0} of a matrix, inside Q^cols.
    pub fn kernel(m: &Matrix) -> Self {
        let rows = m.kernel_basis();
        Subspace::from_rows(m.cols(), &rows).expect("kernel vectors have ambient length")
    }

    /// Column space of a matrix, inside Q^rows.
    pub fn image(m: &Matrix) -> Self {
        let cols: Vec<Vec<Rat>> = (0..m.cols()).map(|j| m.col(j)).collect();
        Subspace::from_rows(m.rows(), &cols).expect("columns have ambient length")
    }

    /// Image of this subspace under an operator.
    pub fn apply(&self, op: &Matrix) -> Result<Self> {
        if op.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "operator expects dimension {}, subspace has ambient {}",
                op.cols(),
                self.ambient
            )));
        }
        let rows: Vec<Vec<Rat>> = self
            .basis_rows()
            .iter()
            .map(|v| op.mul_vec(v))
            .collect::<Result<_>>()?;
        Subspace::from_rows(op.rows(), &rows)
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Self> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::from_rows(self.ambient, &rows)
    }

    /// Intersection via the kernel of the stacked transposed bases: a vector
    /// a·U = b·V lies in both row spans exactly when (a, -b) kills the
    /// stacked matrix.
    pub fn intersect(&self, other: &Subspace) -> Result<Self> {
        self.check_same_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let k1 = self.dim();
        let k2 = other.dim();
        // Columns of `stack` are the basis vectors of both spaces.
        let mut stack = Matrix::zeros(self.ambient, k1 + k2);
        for (j, v) in self.basis_rows().iter().enumerate() {
            for i in 0..self.ambient {
                stack[(i, j)] = v[i].clone();
            }
        }
        for (j, v) in other.basis_rows().iter().enumerate() {
            for i in 0..self.ambient {
                stack[(i, k1 + j)] = -v[i].clone();
            }
        }
        let combos = stack.kernel_basis();
        let rows: Vec<Vec<Rat>> = combos
            .iter()
            .map(|c| {
                let mut v = vec![Rat::zero(); self.ambient];
                for (j, coeff) in c[..k1].iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (i, b) in self.basis.row(j).iter().enumerate() {
                        v[i] = &v[i] + &(coeff * b);
                    }
                }
                v
            })
            .collect();
        Subspace::from_rows(self.ambient, &rows)
    }

    /// Membership test for a single vector.
    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        self.coords(v).is_some()
    }

    /// True if `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis_rows().iter().all(|v| self.contains_vec(v))
    }

    /// Coordinates of `v` in the RREF basis, or `None` if v is outside the
    /// span. Because the basis is in RREF, candidate coordinates can be read
    /// off the pivot columns and then verified exactly.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        debug_assert_eq!(v.len(), self.ambient);
        let coords: Vec<Rat> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        // Verify: sum of coords[i] * basis_row[i] must reproduce v.
        for j in 0..self.ambient {
            let mut acc = Rat::zero();
            for (i, c) in coords.iter().enumerate() {
                acc += c * &self.basis[(i, j)];
            }
            if acc != v[j] {
                return None;
            }
        }
        Some(coords)
    }

    /// The operator expressed in this subspace's basis; errors with
    /// `NotInvariant` if the subspace is not stable under it.
    pub fn restrict_operator(&self, op: &Matrix) -> Result<Matrix> {
        if op.rows() != self.ambient || op.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "operator must be {0}x{0}",
                self.ambient
            )));
        }
        let k = self.dim();
        let mut out = Matrix::zeros(k, k);
        for (j, v) in self.basis_rows().iter().enumerate() {
            let img = op.mul_vec(v)?;
            let coords = self.coords(&img).ok_or(Error::NotInvariant)?;
            for i in 0..k {
                out[(i, j)] = coords[i].clone();
            }
        }
        Ok(out)
    }

    /// Canonical projection Q^n → Q^(n−k) with kernel exactly this subspace:
    /// reduce by the RREF rows to zero out pivot coordinates, then keep the
    /// non-pivot coordinates. Returns the projection matrix and the quotient
    /// dimension.
    pub fn quotient_map(&self) -> (Matrix, usize) {
        let n = self.ambient;
        let k = self.dim();
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut proj = Matrix::zeros(n - k, n);
        for (out_row, &f) in free.iter().enumerate() {
            proj[(out_row, f)] = Rat::one();
            // Subtract the contribution of each pivot coordinate.
            for (i, &pc) in self.pivots.iter().enumerate() {
                let val = -self.basis[(i, f)].clone();
                if !val.is_zero() {
                    proj[(out_row, pc)] = val;
                }
            }
        }
        (proj, n - k)
    }

    /// Non-pivot columns; the unit vectors there project to the canonical
    /// basis of the quotient.
    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Canonical total order: dimension first, then lexicographic on the
    /// RREF entries.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn canonical_form_is_spanning_set_independent() {
        let a = Subspace::from_int_rows(2, &[&[1, 1], &[1, -1]]);
        let b = Subspace::from_int_rows(2, &[&[2, 0], &[3, 7]]);
        assert_eq!(a, b);
        assert!(a.is_full());
    }

    #[test]
    fn kernel_and_image() {
        let n = Matrix::from_int_rows(&[&[0, 0], &[1, 0]]);
        assert_eq!(Subspace::kernel(&n), Subspace::from_int_rows(2, &[&[0, 1]]));
        assert_eq!(Subspace::image(&n), Subspace::from_int_rows(2, &[&[0, 1]]));
    }

    #[test]
    fn intersect_transverse_lines() {
        let e1 = Subspace::from_int_rows(2, &[&[1, 0]]);
        let e2 = Subspace::from_int_rows(2, &[&[0, 1]]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));
    }

    #[test]
    fn intersect_nontrivial() {
        let u = Subspace::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let v = Subspace::from_int_rows(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let w = u.intersect(&v).unwrap();
        assert_eq!(w, Subspace::from_int_rows(3, &[&[1, 1, 0]]));
    }

    #[test]
    fn restrict_operator_on_eigenline() {
        let phi = Matrix::from_int_rows(&[&[25, 0], &[0, 5]]);
        let e2 = Subspace::from_int_rows(2, &[&[0, 1]]);
        let r = e2.restrict_operator(&phi).unwrap();
        assert_eq!(r, Matrix::from_int_rows(&[&[5]]));
        // e1 + e2 is not stable under diag(25, 5).
        let diag = Subspace::from_int_rows(2, &[&[1, 1]]);
        assert_eq!(diag.restrict_operator(&phi), Err(Error::NotInvariant));
    }

    #[test]
    fn quotient_map_kills_exactly_the_subspace() {
        let w = Subspace::from_int_rows(3, &[&[1, 2, 0]]);
        let (proj, q) = w.quotient_map();
        assert_eq!(q, 2);
        let img = proj.mul_vec(&[rat(1), rat(2), rat(0)]).unwrap();
        assert!(img.iter().all(|x| x.is_zero()));
        let img2 = proj.mul_vec(&[rat(1), rat(0), rat(0)]).unwrap();
        assert!(img2.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn coords_verifies_membership() {
        let w = Subspace::from_int_rows(3, &[&[1, 0, 2], &[0, 1, 3]]);
        assert_eq!(
            w.coords(&[rat(2), rat(1), rat(7)]),
            Some(vec![rat(2), rat(1)])
        );
        assert_eq!(w.coords(&[rat(0), rat(0), rat(1)]), None);
    }

    #[test]
    fn mismatched_ambients_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch(_))));
    }

    fn arb_subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
        let vector = proptest::collection::vec(-4i64..=4, ambient);
        proptest::collection::vec(vector, 0..=ambient).prop_map(move |rows| {
            let rows: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect();
            Subspace::from_rows(ambient, &rows).unwrap()
        })
    }

    proptest! {
        // Grassmann identity: dim A + dim B = dim(A∩B) + dim(A+B).
        #[test]
        fn grassmann_dimension_formula(
            (a, b) in (1usize..=6).prop_flat_map(|n| (arb_subspace(n), arb_subspace(n)))
        ) {
            let inter = a.intersect(&b).unwrap();
            let sum = a.sum(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), inter.dim() + sum.dim());
            prop_assert!(a.contains(&inter) && b.contains(&inter));
            prop_assert!(sum.contains(&a) && sum.contains(&b));
        }

        // Rescaling a spanning set does not change the canonical form.
        #[test]
        fn canonical_under_rescaling(
            rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..=3),
            num in 1i64..=5,
            den in 1i64..=5,
        ) {
            let c = ratio(num, den);
            let orig: Vec<Vec<Rat>> = rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect();
            let scaled: Vec<Vec<Rat>> = orig.iter()
                .map(|r| r.iter().map(|v| v * &c).collect())
                .collect();
            let s1 = Subspace::from_rows(3, &orig).unwrap();
            let s2 = Subspace::from_rows(3, &scaled).unwrap();
            prop_assert_eq!(s1, s2);
        }
    }
}
