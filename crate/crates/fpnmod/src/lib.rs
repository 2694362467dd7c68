//! Exact-arithmetic computations with filtered (φ,N)-modules over Q_p.
//!
//! A filtered (φ,N)-module is a finite-dimensional Q_p-vector space carrying
//! an invertible Frobenius operator φ, a nilpotent monodromy operator N with
//! p·φ·N = N·φ, and a decreasing exhaustive separated filtration. This crate
//! computes their structural invariants exactly, with no floating point:
//!
//! * Hodge and Newton numbers, Hodge–Tate types ([`module`]);
//! * stable-subspace enumeration and weak-admissibility decisions
//!   ([`admissibility`]);
//! * slope decompositions of φ and the crystalline dichotomy for weakly
//!   admissible modules of Hodge–Tate type (0,1) ([`dichotomy`]);
//! * endomorphism rings, including a symbolic σ-semilinear solver for the
//!   generic unramified base change ([`endo`]);
//! * the two-parameter family of weakly admissible modules with no weakly
//!   admissible submodules ([`module::fm_example`]), and symmetric powers
//!   ([`module::FilteredPhiNModule::sym_power`]).
//!
//! All scalars are arbitrary-precision rationals viewed inside Q_p, so every
//! result is bit-reproducible. Values are immutable after construction and
//! all operations are pure; everything is safe to share across threads.
//!
//! With the default `parallel` feature the randomized stable-subspace search
//! and the batch verification helpers fan out over rayon; built with
//! `--no-default-features` the same entry points run sequentially and return
//! identical results.

pub mod admissibility;
pub mod corpus;
pub mod dichotomy;
pub mod doc;
pub mod endo;
pub mod error;
pub mod exact;
pub mod module;

mod par;

pub use error::{Error, Result};
pub use exact::rational::Rat;
