//! Report assembly: every analysis result becomes a `serde_json::Value`
//! whose objects are BTree-backed, so serialization is canonical (sorted
//! keys) and byte-identical across runs. The human-readable table is
//! rendered from the same data and is not contractual.

use fpnmod::admissibility::{
    AdmissibilityReport, CrystallineFiltration, StableSubspaceEnumeration, StrongIrreducibility,
    StrongIrreducibilityReport, WaSubmodules,
};
use fpnmod::dichotomy::{
    DichotomyWitness, MonodromyReport, SlopeDecomposition, SlopeIntervalReport,
};
use fpnmod::endo::{EndRingResult, SemilinearSolution};
use fpnmod::exact::matrix::Matrix;
use fpnmod::exact::rational::rat_to_string;
use fpnmod::exact::subspace::Subspace;
use fpnmod::module::{FilteredPhiNModule, ValidationReport};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn header(input_hash: &str, precision: u32, seed: u64) -> Value {
    json!({
        "input_sha256": input_hash,
        "precision": precision,
        "seed": seed,
    })
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|c| Value::String(rat_to_string(c)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn subspace_value(w: &Subspace) -> Value {
    json!({
        "dim": w.dim(),
        "basis": matrix_value(w.basis()),
    })
}

pub fn validation_value(report: &ValidationReport) -> Value {
    json!({
        "all_passed": report.all_passed(),
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn numbers_value(m: &FilteredPhiNModule) -> Value {
    json!({
        "p": m.ctx().p(),
        "dim": m.dim(),
        "t_h": m.hodge_number(),
        "t_n": m.newton_number(),
        "hodge_tate_type": m.hodge_tate_type().to_string(),
        "is_type_01": m.is_type_01(),
        "crystalline": m.is_crystalline(),
    })
}

pub fn slopes_value(
    d: &SlopeDecomposition,
    monodromy: &MonodromyReport,
    interval: &SlopeIntervalReport,
) -> Value {
    let exactness = match d.exactness {
        fpnmod::exact::factor::Exactness::Exact => "exact".to_string(),
        fpnmod::exact::factor::Exactness::Approximate { precision } => {
            format!("approximate(p^{precision})")
        }
    };
    json!({
        "exactness": exactness,
        "parts": d.parts.iter().map(|(s, w)| json!({
            "slope": rat_to_string(s),
            "dim": w.dim(),
            "basis": matrix_value(w.basis()),
        })).collect::<Vec<_>>(),
        "monodromy_lowers_slope": monodromy.all_ok(),
        "slopes_in_unit_interval": {
            "ok": interval.ok,
            "note": interval.note,
        },
    })
}

pub fn enumeration_value(e: &StableSubspaceEnumeration) -> Value {
    json!({
        "count": e.subspaces.len(),
        "completeness": e.completeness.as_str(),
        "method": e.method.as_str(),
        "all_lines": e.all_lines,
        "subspaces": e.subspaces.iter().map(subspace_value).collect::<Vec<_>>(),
    })
}

pub fn admissibility_value(
    report: &AdmissibilityReport,
    subs: &WaSubmodules,
    strong: &StrongIrreducibilityReport,
    chain: &CrystallineFiltration,
) -> Value {
    json!({
        "verdict": report.verdict.as_str(),
        "witness": report.witness.as_ref().map(subspace_value),
        "enumeration": enumeration_value(&report.enumeration),
        "wa_submodules": {
            "count": subs.submodules.len(),
            "list": subs.submodules.iter().map(subspace_value).collect::<Vec<_>>(),
            "all_lines": subs.all_lines,
            "completeness": subs.completeness.as_str(),
            "note": subs.note,
        },
        "strongly_irreducible": {
            "verdict": match strong.verdict {
                StrongIrreducibility::True => "true",
                StrongIrreducibility::Undecided => "undecided",
            },
            "explanation": strong.explanation,
        },
        "crystalline_filtration": crystalline_filtration_value(chain),
    })
}

pub fn crystalline_filtration_value(c: &CrystallineFiltration) -> Value {
    match c {
        CrystallineFiltration::Found { chain } => json!({
            "verdict": "true",
            "chain": chain.iter().map(subspace_value).collect::<Vec<_>>(),
        }),
        CrystallineFiltration::Absent => json!({
            "verdict": "false",
        }),
        CrystallineFiltration::Undecided { reason } => json!({
            "verdict": "undecided",
            "reason": reason,
        }),
    }
}

pub fn dichotomy_value(
    m: &FilteredPhiNModule,
    outcome: &Result<DichotomyWitness, fpnmod::Error>,
) -> Value {
    match outcome {
        Ok(DichotomyWitness::Crystalline) => json!({
            "applicable": true,
            "kind": "crystalline",
            "chain": DichotomyWitness::Crystalline
                .chain(m.dim())
                .iter()
                .map(subspace_value)
                .collect::<Vec<_>>(),
        }),
        Ok(w @ DichotomyWitness::ProperCrystallineSub { m0, sub, quot }) => json!({
            "applicable": true,
            "kind": "proper_crystalline_sub",
            "m0": subspace_value(m0),
            "sub": {"t_h": sub.hodge_number(), "t_n": sub.newton_number()},
            "quot": {
                "t_h": quot.hodge_number(),
                "t_n": quot.newton_number(),
                "crystalline": quot.is_crystalline(),
            },
            "chain": w.chain(m.dim()).iter().map(subspace_value).collect::<Vec<_>>(),
        }),
        Err(fpnmod::Error::PreconditionBreach(reason)) => json!({
            "applicable": false,
            "precondition_breach": reason,
        }),
        Err(other) => json!({
            "applicable": false,
            "error": other.to_string(),
        }),
    }
}

pub fn endo_value(
    filtered: &EndRingResult,
    unfiltered: &EndRingResult,
    semilinear: &Result<SemilinearSolution, fpnmod::Error>,
) -> Value {
    let sl = match semilinear {
        Ok(sol) => json!({
            "qp_dimension": sol.qp_dimension,
            "trace": sol.trace.iter().map(|(name, fate)| json!({
                "unknown": name,
                "fate": fate.describe(),
            })).collect::<Vec<_>>(),
        }),
        Err(fpnmod::Error::NotTriangular(reason)) => json!({
            "not_triangular": reason,
            "qp_linear_lower_bound": unfiltered.dimension,
        }),
        Err(other) => json!({"error": other.to_string()}),
    };
    json!({
        "dimension_filtered": filtered.dimension,
        "dimension_unfiltered": unfiltered.dimension,
        "semilinear": sl,
    })
}

/// Canonical rendering of a report value: sorted keys (BTree maps), pretty,
/// one trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Human-readable rendering (not contractual)
// ---------------------------------------------------------------------------

pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    render_value(v, 0, &mut out);
    out
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{}{}:\n", "  ".repeat(indent), k));
                        render_value(val, indent + 1, out);
                    }
                    _ => {
                        out.push_str(&format!(
                            "{}{}: {}\n",
                            "  ".repeat(indent),
                            k,
                            scalar_to_string(val)
                        ));
                    }
                }
            }
        }
        Value::Array(items) => {
            if items
                .iter()
                .all(|i| !matches!(i, Value::Object(_) | Value::Array(_)))
            {
                out.push_str(&format!(
                    "{}[{}]\n",
                    "  ".repeat(indent),
                    items
                        .iter()
                        .map(scalar_to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            } else {
                for item in items {
                    out.push_str(&format!("{}-\n", "  ".repeat(indent)));
                    render_value(item, indent + 1, out);
                }
            }
        }
        other => {
            out.push_str(&format!(
                "{}{}\n",
                "  ".repeat(indent),
                scalar_to_string(other)
            ));
        }
    }
}

fn scalar_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
