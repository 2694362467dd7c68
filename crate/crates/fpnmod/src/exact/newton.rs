//! Newton polygons of polynomials with respect to a fixed prime.
//!
//! For f = Σ aᵢxⁱ the polygon is the lower convex hull of the points
//! (i, v_p(aᵢ)). A segment from (i, vᵢ) to (j, vⱼ) with i < j contributes
//! the slope (vᵢ − vⱼ)/(j − i) with multiplicity j − i; under this sign
//! convention the slopes are exactly the valuations of the roots, so they
//! sum (for f with nonzero constant term) to v_p(a₀) − v_p(a_deg).

use crate::error::{Error, Result};
use crate::exact::padic::{valuation, ExtendedInt, PrimeContext};
use crate::exact::poly::Poly;
use crate::exact::rational::Rat;
use num::bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Hull vertices (coefficient degree, valuation), left to right. Indices
    /// below the order of vanishing at 0 carry no finite points and are
    /// omitted.
    pub vertices: Vec<(usize, ExtendedInt)>,
    /// Slope multiset as (slope, multiplicity), in hull order, i.e. weakly
    /// decreasing slopes.
    pub slopes: Vec<(Rat, usize)>,
}

impl NewtonPolygon {
    /// Total multiplicity of the slope multiset.
    pub fn slope_count(&self) -> usize {
        self.slopes.iter().map(|(_, m)| m).sum()
    }

    /// True if all roots share one valuation (constants count as pure).
    pub fn is_pure(&self) -> bool {
        self.slopes.len() <= 1
    }

    /// The slope multiset flattened out, one entry per root.
    pub fn slope_multiset(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.slope_count());
        for (s, m) in &self.slopes {
            out.extend(std::iter::repeat_n(s.clone(), *m));
        }
        out
    }

    pub fn min_slope(&self) -> Option<&Rat> {
        self.slopes.last().map(|(s, _)| s)
    }

    pub fn max_slope(&self) -> Option<&Rat> {
        self.slopes.first().map(|(s, _)| s)
    }
}

/// Compute the Newton polygon of a nonzero polynomial.
pub fn newton_polygon(f: &Poly, ctx: &PrimeContext) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // Finite lattice points (i, v_p(a_i)).
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation(c, ctx).finite().map(|v| (i as i64, v)))
        .collect();
    debug_assert!(!pts.is_empty());

    // Lower convex hull by monotone chain; points are already sorted by i.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Keep b only if it lies strictly below segment a--q.
            let cross = (b.0 - a.0) as i128 * (q.1 - a.1) as i128
                - (q.0 - a.0) as i128 * (b.1 - a.1) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }

    let slopes = hull
        .windows(2)
        .map(|w| {
            let (i, vi) = w[0];
            let (j, vj) = w[1];
            (
                Rat::new(BigInt::from(vi - vj), BigInt::from(j - i)),
                (j - i) as usize,
            )
        })
        .collect();

    Ok(NewtonPolygon {
        vertices: hull
            .into_iter()
            .map(|(i, v)| (i as usize, ExtendedInt::Finite(v)))
            .collect(),
        slopes,
    })
}
