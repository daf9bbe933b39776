//! The coordinate decomposition `w = Σ aᵢ e′ᵢ` and the saturation surgery
//! that turns `G|_{K°}` into a saturated curve.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::crossing::boundary_crossings;
use crate::curve::TropicalCurve;
use crate::edge::{extent_area, Edge, Extent};
use crate::error::{Error, Result};
use crate::rational::{int, neg_intvec, parallel_ints, IntVec, Point, Rat};
use crate::region::Region;
use crate::report::{Check, Op};
use crate::saturated::is_saturated;

/// Non-negative `a₀, …, aₙ` with `w = Σ aᵢ e′ᵢ` and some `aᵢ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    #[serde(with = "crate::rational::serde_big::vec")]
    pub a: Vec<BigInt>,
}

/// `e′ᵢ = −eᵢ` for `i ≥ 1` and `e′₀ = (1, …, 1)`.
pub fn basis_vector(dim: usize, i: usize) -> IntVec {
    if i == 0 {
        return vec![BigInt::one(); dim];
    }
    (0..dim)
        .map(|j| if j + 1 == i { -BigInt::one() } else { BigInt::zero() })
        .collect()
}

impl Decomposition {
    /// `Σ aᵢ e′ᵢ`.
    pub fn reconstruct(&self) -> IntVec {
        let dim = self.a.len() - 1;
        (0..dim).map(|j| &self.a[0] - &self.a[j + 1]).collect()
    }
}

pub fn decompose(w: &[BigInt]) -> Decomposition {
    let a0 = w
        .iter()
        .cloned()
        .fold(BigInt::zero(), |m, x| if x > m { x } else { m });
    let mut a = vec![a0.clone()];
    a.extend(w.iter().map(|x| &a0 - x));
    Decomposition { a }
}

/// A bad end of an edge of `G|_{K°}`: its closure meets `∂K` on the
/// skeleton or non-perpendicularly.
#[derive(Debug, Clone)]
struct BadEnd {
    edge: usize,
    at_end: bool,
}

fn bad_ends(gk: &TropicalCurve) -> Result<Vec<BadEnd>> {
    let k = gk.region();
    let dim = gk.dim();
    let mut out = Vec::new();
    for e in gk.edges() {
        let ext = gk.extent(e.id)?;
        if k.facet_containing_line(&ext.origin, &ext.step).is_some() {
            return Err(Error::DegenerateCurve(e.id));
        }
        for (t, at_end) in [(&ext.t0, false), (&ext.t1, true)] {
            let tight = k.tight_facets(&ext.point(t));
            let good = match tight.as_slice() {
                [] => continue,
                [f] => k.face_id(*f).is_some_and(|face| {
                    parallel_ints(&face.outward_normal(dim), e.weight.direction())
                }),
                _ => false,
            };
            if !good {
                out.push(BadEnd { edge: e.id, at_end });
            }
        }
    }
    Ok(out)
}

/// Largest admissible uniform collar offset before any halving: half the
/// smallest vertex-to-facet slack, or `1/(4(n+1))` without vertices.
fn initial_offset(gk: &TropicalCurve) -> Rat {
    let k = gk.region();
    let margin = gk
        .vertices()
        .iter()
        .flat_map(|v| k.halfspaces().iter().map(move |h| h.slack(v)))
        .min();
    match margin {
        Some(m) => m / int(2),
        None => Rat::new(BigInt::one(), BigInt::from(4 * (gk.dim() + 1))),
    }
}

struct Plan {
    offsets: Vec<Rat>,
    collar: Region,
    /// `(bad end, P, parameter of P)`.
    cuts: Vec<(BadEnd, Point, Rat)>,
}

/// Offsets `ε·(r+1+f)/(r+1+n)` for facet `f` on retry `r`. The factors
/// differ per facet and per retry, so no edge can keep hitting a collar
/// corner.
fn collar_offsets(dim: usize, eps: &Rat, retry: u32) -> Vec<Rat> {
    let base = retry as i64 + 1;
    (0..=dim)
        .map(|f| eps * Rat::new(BigInt::from(base + f as i64), BigInt::from(base + dim as i64)))
        .collect()
}

fn try_collar(gk: &TropicalCurve, offsets: Vec<Rat>, ends: &[BadEnd]) -> Result<Option<Plan>> {
    let collar = Region::shrunk_simplex(gk.dim(), &offsets)?;
    if gk.vertices().iter().any(|v| !collar.contains_interior(v)) {
        return Ok(None);
    }
    if boundary_crossings(gk, &collar).is_err() {
        return Ok(None);
    }
    let mut cuts: Vec<(BadEnd, Point, Rat)> = Vec::new();
    for end in ends {
        let ext = gk.extent(end.edge)?;
        let Some(c) = ext.clip(&collar) else { return Ok(None) };
        if c.is_degenerate() {
            return Ok(None);
        }
        let t = if end.at_end { c.t1 } else { c.t0 };
        let p = ext.point(&t);
        let clash = cuts.iter().any(|(_, q, _)| *q == p)
            || gk.edges().iter().any(|o| {
                o.id != end.edge
                    && gk.extent(o.id).is_ok_and(|x| x.contains_in_interior(&p) || x.start() == p || x.end() == p)
            });
        if clash {
            return Ok(None);
        }
        cuts.push((end.clone(), p, t));
    }
    Ok(Some(Plan {
        offsets,
        collar,
        cuts,
    }))
}

pub const MAX_RETRIES: u32 = 64;

/// Per-facet offsets of a collar `Ǩ` around the vertices of `G|_{K°}`
/// crossed transversally by every edge, together with the number of
/// halvings needed.
pub fn choose_collar(gk: &TropicalCurve) -> Result<(Vec<Rat>, u32)> {
    let ends = bad_ends(gk)?;
    let mut eps = initial_offset(gk);
    for retry in 0..=MAX_RETRIES {
        if let Some(plan) = try_collar(gk, collar_offsets(gk.dim(), &eps, retry), &ends)? {
            return Ok((plan.offsets, retry));
        }
        eps /= int(2);
    }
    Err(Error::CollarFailure(MAX_RETRIES))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AddedRay {
    pub edge: usize,
    /// Index `i` of `e′ᵢ`.
    pub direction: usize,
    #[serde(with = "crate::rational::serde_big")]
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryEntry {
    pub edge: usize,
    #[serde(with = "crate::rational::serde_rat::vec")]
    pub truncation_point: Point,
    /// The deleted piece, from `P` to the boundary of `K`.
    #[serde(with = "crate::rational::serde_rat::vec")]
    pub deleted_to: Point,
    pub decomposition: Decomposition,
    pub rays: Vec<AddedRay>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryLog {
    pub entries: Vec<SurgeryEntry>,
    #[serde(with = "crate::rational::serde_rat::vec")]
    pub offsets: Vec<Rat>,
    pub retries: u32,
    /// `#V(G|_{K°})`.
    pub vertices_restricted: usize,
    /// `#V(G′)` counting the truncation points.
    pub vertices_saturated: usize,
    /// `#V(G′)` without the truncation points.
    pub vertices_saturated_without_p: usize,
    #[serde(with = "crate::rational::serde_rat")]
    pub area_restricted: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub area_saturated: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub added_area: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub removed_area: Rat,
    pub checks: Vec<Check>,
}

fn apply(gk: &TropicalCurve, plan: &Plan) -> Result<(TropicalCurve, Vec<SurgeryEntry>, Rat, Rat)> {
    let dim = gk.dim();
    let mut edges: Vec<Edge> = gk.edges().to_vec();
    let mut vertices = gk.vertices().to_vec();
    let mut entries = Vec::new();
    let mut next_id = gk.next_edge_id();
    let mut added = Rat::zero();
    let mut removed = Rat::zero();
    let mut spans: std::collections::BTreeMap<usize, (Extent, Rat, Rat)> = Default::default();
    for (end, p, t) in &plan.cuts {
        let ext = gk.extent(end.edge)?;
        let span = spans
            .entry(end.edge)
            .or_insert_with(|| (ext.clone(), ext.t0.clone(), ext.t1.clone()));
        let (boundary_t, outward) = if end.at_end {
            span.2 = t.clone();
            (ext.t1.clone(), ext.step.clone())
        } else {
            span.1 = t.clone();
            (ext.t0.clone(), neg_intvec(&ext.step))
        };
        let weight = &gk.edge(end.edge)?.weight;
        let piece = Extent {
            origin: ext.origin.clone(),
            step: ext.step.clone(),
            t0: if end.at_end { t.clone() } else { boundary_t.clone() },
            t1: if end.at_end { boundary_t.clone() } else { t.clone() },
        };
        removed += extent_area(&piece, weight);
        let dec = decompose(&outward);
        let mut rays = Vec::new();
        for (i, a) in dec.a.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v: IntVec = basis_vector(dim, i).iter().map(|x| x * a).collect();
            let ray = Edge::ray_along(next_id, p.clone(), &v)?;
            added += extent_area(&ray.extent(gk.region())?, &ray.weight);
            rays.push(AddedRay {
                edge: next_id,
                direction: i,
                multiplicity: a.clone(),
            });
            edges.push(ray);
            next_id += 1;
        }
        vertices.push(p.clone());
        entries.push(SurgeryEntry {
            edge: end.edge,
            truncation_point: p.clone(),
            deleted_to: ext.point(&boundary_t),
            decomposition: dec,
            rays,
        });
    }
    for e in edges.iter_mut() {
        if let Some((ext, lo, hi)) = spans.get(&e.id) {
            *e = Edge::segment(e.id, ext.point(lo), ext.point(hi), e.weight.clone());
        }
    }
    let g2 = TropicalCurve::new(gk.region().clone(), vertices, edges)?
        .with_metadata(gk.metadata().clone());
    Ok((g2, entries, added, removed))
}

/// Runs the saturation surgery on `G` (a curve in a region containing
/// `K`, typically `U′_δ`). Returns `G′` in `K°` and the log, whose checks
/// record saturation, vertex monotonicity and the area inflation bound
/// with `A = Area(G)`.
pub fn saturate(g: &TropicalCurve, delta: &Rat) -> Result<(TropicalCurve, SurgeryLog)> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let dim = g.dim();
    let k = Region::standard_simplex(dim)?;
    let gk = g.restrict(&k).map_err(|e| match e {
        Error::NonTransversal(id) => Error::DegenerateCurve(id),
        other => other,
    })?;
    let ends = bad_ends(&gk)?;
    let mut eps = initial_offset(&gk);
    let mut found = None;
    let mut collar_ok = false;
    for retry in 0..=MAX_RETRIES {
        if let Some(plan) = try_collar(&gk, collar_offsets(dim, &eps, retry), &ends)? {
            collar_ok = true;
            let (g2, entries, added, removed) = apply(&gk, &plan)?;
            if is_saturated(&g2)?.saturated {
                found = Some((g2, entries, added, removed, plan, retry));
                break;
            }
        }
        eps /= int(2);
    }
    let Some((g2, entries, added, removed, plan, retries)) = found else {
        return Err(if collar_ok {
            Error::SkeletonRay(MAX_RETRIES)
        } else {
            Error::CollarFailure(MAX_RETRIES)
        });
    };
    debug_assert!(plan.collar.dim() == dim);

    let area_total = g.area()?;
    let area_restricted = gk.area()?;
    let area_saturated = g2.area()?;
    let a_over_delta = &area_total / delta;
    let bound = &area_restricted + int(dim as i64) * &a_over_delta * &a_over_delta;
    let vr = gk.vertices().len();
    let vs = g2.vertices().len();
    let checks = vec![
        Check::flag("saturated", true),
        Check::count("vertices_monotone", vr, Op::Le, vs),
        Check::count("vertices_monotone_without_p", vr, Op::Le, vr),
        Check::rat("area_inflation", &area_saturated, Op::Le, &bound),
    ];
    let log = SurgeryLog {
        entries,
        offsets: plan.offsets,
        retries,
        vertices_restricted: vr,
        vertices_saturated: vs,
        vertices_saturated_without_p: vr,
        area_restricted,
        area_saturated,
        added_area: added,
        removed_area: removed,
        checks,
    };
    Ok((g2, log))
}
