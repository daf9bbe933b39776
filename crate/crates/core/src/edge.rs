//! Weighted segments and rays.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{
    big_to_rat, max_rat, min_rat, neg_intvec, parallel_coefficient, point_along, sub_points,
    IntVec, Point, Rat,
};
use crate::region::Region;
use crate::weight::{canonical_weight, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeKind {
    Segment { head: Point },
    /// `tail + t·sign·direction` for `t ≥ 0`, clipped by the ambient region.
    Ray { sign: i8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub tail: Point,
    pub kind: EdgeKind,
    pub weight: Weight,
}

/// The geometric extent `{origin + t·step : t0 ≤ t ≤ t1}` of an edge, with
/// `step = ±multiplicity·direction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extent {
    pub origin: Point,
    pub step: IntVec,
    pub t0: Rat,
    pub t1: Rat,
}

impl Extent {
    pub fn point(&self, t: &Rat) -> Point {
        point_along(&self.origin, &self.step, t)
    }

    pub fn start(&self) -> Point {
        self.point(&self.t0)
    }

    pub fn end(&self) -> Point {
        self.point(&self.t1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.t0 >= self.t1
    }

    /// Sub-extent inside the closed region, if any (possibly a single point).
    pub fn clip(&self, region: &Region) -> Option<Extent> {
        let iv = region.line_interval(&self.origin, &self.step)?;
        let (t0, t1) = iv.clamp(&self.t0, &self.t1)?;
        Some(Extent {
            origin: self.origin.clone(),
            step: self.step.clone(),
            t0,
            t1,
        })
    }

    /// Range of the `axis` coordinate over the extent.
    pub fn coord_span(&self, axis: usize) -> (Rat, Rat) {
        let a = self.start()[axis].clone();
        let b = self.end()[axis].clone();
        (min_rat(&a, &b).clone(), max_rat(&a, &b).clone())
    }

    /// Whether `p` lies on the extent strictly between its endpoints.
    pub fn contains_in_interior(&self, p: &[Rat]) -> bool {
        let d = sub_points(p, &self.origin);
        match parallel_coefficient(&d, &self.step) {
            Some(t) => t > self.t0 && t < self.t1,
            None => false,
        }
    }

    /// Parameter of `p` on the extent's line, if `p` is on it.
    pub fn param_of(&self, p: &[Rat]) -> Option<Rat> {
        parallel_coefficient(&sub_points(p, &self.origin), &self.step)
    }
}

impl Edge {
    pub fn segment(id: usize, tail: Point, head: Point, weight: Weight) -> Self {
        Edge {
            id,
            tail,
            kind: EdgeKind::Segment { head },
            weight,
        }
    }

    pub fn ray(id: usize, tail: Point, sign: i8, weight: Weight) -> Self {
        Edge {
            id,
            tail,
            kind: EdgeKind::Ray { sign },
            weight,
        }
    }

    /// Ray from `tail` in the direction of the integer vector `v`, whose
    /// weight is the class of `v`.
    pub fn ray_along(id: usize, tail: Point, v: &[BigInt]) -> Result<Self> {
        let weight = canonical_weight(v)?;
        let sign = if weight.vector().as_slice() == v { 1 } else { -1 };
        Ok(Edge::ray(id, tail, sign, weight))
    }

    /// Segment `tail → head` carrying the weight `v`, which must be parallel
    /// to `head − tail`.
    pub fn segment_weighted(id: usize, tail: Point, head: Point, v: &[BigInt]) -> Result<Self> {
        Ok(Edge::segment(id, tail, head, canonical_weight(v)?))
    }

    pub fn head(&self) -> Option<&Point> {
        match &self.kind {
            EdgeKind::Segment { head } => Some(head),
            EdgeKind::Ray { .. } => None,
        }
    }

    pub fn is_ray(&self) -> bool {
        matches!(self.kind, EdgeKind::Ray { .. })
    }

    /// The oriented step vector `±multiplicity·direction`, pointing from the
    /// tail into the edge. `None` for a segment that is not parallel to its
    /// weight or has zero length.
    pub fn step(&self) -> Option<IntVec> {
        let w = self.weight.vector();
        match &self.kind {
            EdgeKind::Ray { sign } => Some(if *sign < 0 { neg_intvec(&w) } else { w }),
            EdgeKind::Segment { head } => {
                let lambda = parallel_coefficient(&sub_points(head, &self.tail), &w)?;
                if lambda.is_zero() {
                    None
                } else if lambda.is_negative() {
                    Some(neg_intvec(&w))
                } else {
                    Some(w)
                }
            }
        }
    }

    /// Geometric extent; rays are clipped by `region`.
    pub fn extent(&self, region: &Region) -> Result<Extent> {
        let w = self.weight.vector();
        match &self.kind {
            EdgeKind::Segment { head } => {
                let lambda = parallel_coefficient(&sub_points(head, &self.tail), &w)
                    .ok_or(Error::NotParallel(self.id))?;
                if lambda.is_zero() {
                    return Err(Error::DegenerateEdge(self.id));
                }
                let (step, len) = if lambda.is_negative() {
                    (neg_intvec(&w), -lambda)
                } else {
                    (w, lambda)
                };
                Ok(Extent {
                    origin: self.tail.clone(),
                    step,
                    t0: Rat::zero(),
                    t1: len,
                })
            }
            EdgeKind::Ray { sign } => {
                let step = if *sign < 0 { neg_intvec(&w) } else { w };
                let iv = region
                    .line_interval(&self.tail, &step)
                    .ok_or(Error::DegenerateEdge(self.id))?;
                let hi = iv.hi.ok_or(Error::UnboundedExtent(self.id))?;
                let lo = match iv.lo {
                    Some(l) if l > Rat::zero() => l,
                    _ => Rat::zero(),
                };
                if lo >= hi {
                    return Err(Error::DegenerateEdge(self.id));
                }
                Ok(Extent {
                    origin: self.tail.clone(),
                    step,
                    t0: lo,
                    t1: hi,
                })
            }
        }
    }
}

/// Tropical area of an extent: `|λ|·|w|²` with `λ` the parameter length.
pub fn extent_area(ext: &Extent, weight: &Weight) -> Rat {
    (&ext.t1 - &ext.t0) * big_to_rat(&weight.norm_sq())
}

/// `Area(e) = |e|·|w_e|`, computed exactly as `|λ|·|w_e|²`.
pub fn edge_area(e: &Edge, region: &Region) -> Result<Rat> {
    Ok(extent_area(&e.extent(region)?, &e.weight))
}
