//! Exact arithmetic substrate: rationals with p-adic valuations, polynomials
//! with Newton polygons and slope factorization, and canonical linear algebra
//! over Q viewed inside Q_p.

pub mod factor;
pub mod matrix;
pub mod newton;
pub mod padic;
pub mod poly;
pub mod rational;
pub mod subspace;
pub(crate) mod zmod;

pub use factor::{slope_factorization, Exactness, SlopeFactor};
pub use matrix::Matrix;
pub use newton::{newton_polygon, NewtonPolygon};
pub use padic::{valuation, ExtendedInt, PrimeContext};
pub use poly::Poly;
pub use rational::Rat;
pub use subspace::Subspace;
