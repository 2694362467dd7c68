//! The on-disk document format for modules: UTF-8 JSON with rationals as
//! strings ("a" or "a/b", never floats), matrices row-major, and the
//! filtration listed only at its jumps.
//!
//! Serialization is canonical — sorted keys, normalized rationals, RREF
//! bases — so writing the same module always produces identical bytes, and
//! a write/read round trip reproduces the module exactly.

use crate::error::{Error, Result};
use crate::exact::matrix::Matrix;
use crate::exact::padic::PrimeContext;
use crate::exact::rational::{parse_rat, rat_to_string, Rat};
use crate::exact::subspace::Subspace;
use crate::module::{FilteredPhiNModule, Filtration};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStepDoc {
    pub degree: i64,
    /// Basis row vectors of the step subspace, as rational strings.
    pub basis: Vec<Vec<String>>,
}

/// JSON document describing a [`FilteredPhiNModule`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub p: u64,
    pub dim: usize,
    pub phi: Vec<Vec<String>>,
    pub n: Vec<Vec<String>>,
    pub filtration: Vec<FiltrationStepDoc>,
}

fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rat_to_string).collect())
        .collect()
}

fn matrix_from_strings(rows: &[Vec<String>], dim: usize, name: &str) -> Result<Matrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Parse(format!(
            "field {name:?} must be a {dim}x{dim} array of rational strings"
        )));
    }
    let parsed: Result<Vec<Vec<Rat>>> = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rat(s)).collect())
        .collect();
    Matrix::from_rows(parsed?)
}

impl ModuleDocument {
    /// Canonical document for a module: RREF bases, reduced rationals.
    pub fn from_module(m: &FilteredPhiNModule) -> Self {
        ModuleDocument {
            p: m.ctx().p(),
            dim: m.dim(),
            phi: matrix_to_strings(m.phi()),
            n: matrix_to_strings(m.mono()),
            filtration: m
                .fil()
                .steps()
                .iter()
                .map(|(d, s)| FiltrationStepDoc {
                    degree: *d,
                    basis: matrix_to_strings(s.basis()),
                })
                .collect(),
        }
    }

    /// Reconstruct the module. Rational strings are normalized on read;
    /// structural axioms (invertibility, nilpotency, commutation) are NOT
    /// checked here — run `validate` on the result.
    pub fn to_module(&self) -> Result<FilteredPhiNModule> {
        let ctx = PrimeContext::new(self.p)?;
        let phi = matrix_from_strings(&self.phi, self.dim, "phi")?;
        let mono = matrix_from_strings(&self.n, self.dim, "n")?;
        let mut steps = Vec::with_capacity(self.filtration.len());
        for step in &self.filtration {
            let rows: Result<Vec<Vec<Rat>>> = step
                .basis
                .iter()
                .map(|r| {
                    if r.len() != self.dim {
                        return Err(Error::Parse(format!(
                            "filtration basis vector must have length {}",
                            self.dim
                        )));
                    }
                    r.iter().map(|s| parse_rat(s)).collect()
                })
                .collect();
            steps.push((step.degree, Subspace::from_rows(self.dim, &rows?)?));
        }
        let fil = Filtration::new(self.dim, steps)?;
        FilteredPhiNModule::new(ctx, phi, mono, fil)
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("document serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
