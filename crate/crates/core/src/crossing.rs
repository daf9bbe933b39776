//! Transversal crossings of a curve with region boundaries and the global
//! balancing identity.

use num_traits::Zero;
use serde::Serialize;

use crate::curve::TropicalCurve;
use crate::error::{Error, Result};
use crate::rational::{add_intvec_assign, dot_ints, neg_intvec, IntVec, Point};
use crate::region::Region;

/// A point where an edge meets the boundary of a region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryHit {
    pub edge: usize,
    /// Index of the (first) tight half-space of the region.
    pub facet: usize,
    #[serde(with = "crate::rational::serde_rat::vec")]
    pub point: Point,
    /// Weight representative pointing from inside the region to outside.
    #[serde(with = "crate::rational::serde_big::vec")]
    pub outward: IntVec,
    pub on_skeleton: bool,
}

/// Transversal crossings of `G` with `∂W` for a region `W` whose closure
/// lies in the interior of `G`'s region.
pub fn boundary_crossings(g: &TropicalCurve, w: &Region) -> Result<Vec<BoundaryHit>> {
    if w.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: w.dim(),
        });
    }
    if !g.region().strictly_contains_region(w) {
        return Err(Error::RegionNotContained);
    }
    if let Some(k) = g.vertices().iter().position(|p| w.on_boundary(p)) {
        return Err(Error::VertexOnBoundary(k));
    }
    let mut hits = Vec::new();
    for e in g.edges() {
        let ext = g.extent(e.id)?;
        if w.facet_containing_line(&ext.origin, &ext.step).is_some() {
            let touches = ext.clip(w).is_some();
            if touches {
                return Err(Error::NonTransversal(e.id));
            }
            continue;
        }
        let Some(c) = ext.clip(w) else { continue };
        if c.is_degenerate() {
            // grazes a lower-dimensional face of W
            return Err(Error::NonTransversal(e.id));
        }
        for (t, at_end) in [(&c.t0, false), (&c.t1, true)] {
            let endpoint = if at_end { &ext.t1 } else { &ext.t0 };
            let p = c.point(t);
            let tight = w.tight_facets(&p);
            if tight.is_empty() {
                continue;
            }
            if t == endpoint || tight.len() > 1 {
                return Err(Error::NonTransversal(e.id));
            }
            let facet = tight[0];
            if dot_ints(&w.halfspaces()[facet].normal, &c.step).is_zero() {
                return Err(Error::NonTransversal(e.id));
            }
            let outward = if at_end {
                c.step.clone()
            } else {
                neg_intvec(&c.step)
            };
            hits.push(BoundaryHit {
                edge: e.id,
                facet,
                point: p,
                outward,
                on_skeleton: false,
            });
        }
    }
    Ok(hits)
}

/// `Σ w̃_e` over the crossings of `∂W`; zero for balanced curves.
pub fn global_balance(g: &TropicalCurve, w: &Region) -> Result<IntVec> {
    let mut sum = vec![Zero::zero(); g.dim()];
    for h in boundary_crossings(g, w)? {
        add_intvec_assign(&mut sum, &h.outward);
    }
    Ok(sum)
}

/// Points where edges of `G` reach the boundary of its own region, e.g. the
/// crossings of `Ḡ` with `∂K` for a curve in `K°`. Hits on two or more
/// facets are flagged as skeleton hits.
pub fn region_boundary_hits(g: &TropicalCurve) -> Result<Vec<BoundaryHit>> {
    let region = g.region();
    let mut hits = Vec::new();
    for e in g.edges() {
        let ext = e.extent(region)?;
        let Some(c) = ext.clip(region) else { continue };
        for (t, at_end) in [(&c.t0, false), (&c.t1, true)] {
            let p = c.point(t);
            let tight = region.tight_facets(&p);
            if tight.is_empty() {
                continue;
            }
            let outward = if at_end {
                c.step.clone()
            } else {
                neg_intvec(&c.step)
            };
            hits.push(BoundaryHit {
                edge: e.id,
                facet: tight[0],
                on_skeleton: tight.len() > 1,
                point: p,
                outward,
            });
        }
    }
    Ok(hits)
}
