//! Capacity-greedy path decompositions in a coordinate direction, path
//! unions, the `V₀` vertex sets and the flow lower bound.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::curve::TropicalCurve;
use crate::error::{Error, Result};
use crate::rational::{big_to_rat, fmt_point, Point, Rat};
use crate::region::{FaceId, Region};
use crate::saturated::is_saturated;
use crate::weight::{QWeight, Weight};

/// How the next edge is picked when several qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    #[default]
    SmallestId,
    /// Lexicographically smallest outward direction, then smallest id.
    LexDirection,
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" => Ok(TieRule::SmallestId),
            "lex" => Ok(TieRule::LexDirection),
            _ => Err(Error::InvalidArgument(format!("unknown tie rule {s:?}"))),
        }
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieRule::SmallestId => "id",
            TieRule::LexDirection => "lex",
        })
    }
}

/// A piece of a host edge, given by parameters on the edge's extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSegment {
    pub edge: usize,
    pub t_from: Rat,
    pub t_to: Rat,
    pub weight: QWeight,
}

impl PathSegment {
    pub fn endpoints(&self, g: &TropicalCurve) -> Result<(Point, Point)> {
        let ext = g.extent(self.edge)?;
        Ok((ext.point(&self.t_from), ext.point(&self.t_to)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    /// 0-based direction.
    pub axis: usize,
    pub entry_edge: usize,
    pub segments: Vec<PathSegment>,
    /// Declared vertices at the junctions, in order.
    pub vertices: Vec<usize>,
    pub exit: Point,
}

impl Path {
    pub fn edges(&self) -> BTreeSet<usize> {
        self.segments.iter().map(|s| s.edge).collect()
    }

    /// Consecutive segments share endpoints and the `axis` coordinate
    /// strictly increases along every segment.
    pub fn is_monotone(&self, g: &TropicalCurve) -> Result<bool> {
        let mut prev: Option<Point> = None;
        for s in &self.segments {
            let (a, b) = s.endpoints(g)?;
            if a[self.axis] >= b[self.axis] {
                return Ok(false);
            }
            if prev.as_ref().is_some_and(|p| *p != a) {
                return Ok(false);
            }
            prev = Some(b);
        }
        Ok(prev.is_none_or(|p| p == self.exit))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pub axis: usize,
    pub paths: Vec<Path>,
    /// Number of paths through each used edge.
    pub usage: BTreeMap<usize, BigInt>,
    /// Initial capacity `|w_eⁱ|` of each used edge.
    pub capacity: BTreeMap<usize, BigInt>,
}

impl PathFamily {
    fn new(axis: usize) -> Self {
        PathFamily {
            axis,
            paths: Vec::new(),
            usage: BTreeMap::new(),
            capacity: BTreeMap::new(),
        }
    }

    pub fn respects_capacity(&self) -> bool {
        self.usage.iter().all(|(e, k)| k <= &self.capacity[e])
    }
}

/// Remaining capacities for one direction, shared by every path traced
/// through it.
struct Capacities<'a> {
    g: &'a TropicalCurve,
    axis: usize,
    left: BTreeMap<usize, BigInt>,
}

impl Capacities<'_> {
    fn remaining(&mut self, edge: usize) -> Result<&mut BigInt> {
        if !self.left.contains_key(&edge) {
            let c = self.g.edge(edge)?.weight.component_abs(self.axis);
            self.left.insert(edge, c);
        }
        Ok(self.left.get_mut(&edge).expect("just inserted"))
    }
}

const MAX_PATHS: u64 = 1 << 20;

fn path_count(m: &BigInt) -> Result<u64> {
    m.to_u64()
        .filter(|&c| c <= MAX_PATHS)
        .ok_or_else(|| Error::InvalidArgument(format!("{m} paths requested; too many to trace")))
}

fn trace(
    h: &TropicalCurve,
    r: &Region,
    caps: &mut Capacities,
    entry_edge: usize,
    entry_t: Rat,
    tie: TieRule,
    fam: &mut PathFamily,
) -> Result<()> {
    let axis = caps.axis;
    let mut path = Path {
        axis,
        entry_edge,
        segments: Vec::new(),
        vertices: Vec::new(),
        exit: Vec::new(),
    };
    let mut edge = entry_edge;
    let mut t = entry_t;
    loop {
        let e = h.edge(edge)?;
        let ext = h.extent(edge)?;
        let forward = ext.step[axis].is_positive();
        let clip = if std::ptr::eq(r, h.region()) {
            ext.clone()
        } else {
            ext.clip(r)
                .ok_or_else(|| Error::PreconditionViolated(format!("e{edge} misses the region")))?
        };
        let t_end = if forward { clip.t1 } else { clip.t0 };
        if t_end == t {
            return Err(Error::StuckVertex(fmt_point(&ext.point(&t))));
        }
        let c = caps.remaining(edge)?;
        if !c.is_positive() {
            return Err(Error::StuckVertex(format!("e{edge} has no capacity left")));
        }
        *c -= 1;
        *fam.usage.entry(edge).or_insert_with(BigInt::zero) += 1;
        fam.capacity
            .entry(edge)
            .or_insert_with(|| e.weight.component_abs(axis));
        path.segments.push(PathSegment {
            edge,
            t_from: t,
            t_to: t_end.clone(),
            weight: QWeight::path_weight(&e.weight, axis).expect("nonzero component"),
        });
        let p = ext.point(&t_end);
        if r.on_boundary(&p) {
            path.exit = p;
            break;
        }
        let v = h
            .vertex_at(&p)
            .ok_or_else(|| Error::StuckVertex(fmt_point(&p)))?;
        let mut best: Option<(usize, Vec<BigInt>)> = None;
        for inc in h.incidences(v)? {
            if inc.edge == edge || !inc.outward[axis].is_positive() {
                continue;
            }
            if !caps.remaining(inc.edge)?.is_positive() {
                continue;
            }
            let w = h.edge(inc.edge)?.weight.clone();
            let key = match tie {
                TieRule::SmallestId => Vec::new(),
                TieRule::LexDirection => outward_direction(&w, &inc.outward),
            };
            let better = match &best {
                None => true,
                Some((be, bk)) => (&key, inc.edge) < (bk, *be),
            };
            if better {
                best = Some((inc.edge, key));
            }
        }
        let (next, _) = best.ok_or_else(|| Error::StuckVertex(format!("v{v} {}", fmt_point(&p))))?;
        path.vertices.push(v);
        t = h.extent(next)?.param_of(&p).expect("vertex lies on its incident edge");
        edge = next;
    }
    fam.paths.push(path);
    Ok(())
}

/// The primitive direction of an outward representative.
fn outward_direction(w: &Weight, outward: &[BigInt]) -> Vec<BigInt> {
    let flip = outward
        .iter()
        .zip(w.direction())
        .any(|(o, d)| !d.is_zero() && o.is_negative() != d.is_negative());
    w.direction()
        .iter()
        .map(|d| if flip { -d } else { d.clone() })
        .collect()
}

/// The facet of `r` on a hyperplane `{x_axis = c}` with `r ⊆ {x_axis ≥ c}`.
fn lower_facet(r: &Region, axis: usize) -> Option<(usize, Rat)> {
    r.halfspaces().iter().enumerate().find_map(|(k, h)| {
        let only_axis = h
            .normal
            .iter()
            .enumerate()
            .all(|(j, x)| (j == axis) != x.is_zero());
        (only_axis && h.normal[axis].is_negative())
            .then(|| (k, &h.offset / big_to_rat(&h.normal[axis])))
    })
}

/// `m = |w_{e₀}ⁱ|` paths from `e₀` in direction `axis` (0-based) inside `R`.
pub fn extract_paths(
    h: &TropicalCurve,
    r: &Region,
    e0: usize,
    axis: usize,
    tie: TieRule,
) -> Result<PathFamily> {
    let pre = |s: String| Error::PreconditionViolated(s);
    if axis >= h.dim() || r.dim() != h.dim() {
        return Err(pre(format!("direction {} out of range", axis + 1)));
    }
    if !h.region().contains_region(r) {
        return Err(pre("R is not contained in the curve's region".into()));
    }
    let (facet, c) = lower_facet(r, axis)
        .ok_or_else(|| pre(format!("R has no lower facet x{} = c", axis + 1)))?;
    if let Some(k) = h.vertices().iter().position(|p| r.on_boundary(p)) {
        return Err(pre(format!("vertex v{k} lies on the boundary of R")));
    }
    let m = h.edge(e0)?.weight.component_abs(axis);
    if m.is_zero() {
        return Err(pre(format!("e{e0} has zero component in direction {}", axis + 1)));
    }
    let ext = h.extent(e0)?;
    let t = (&c - &ext.origin[axis]) / big_to_rat(&ext.step[axis]);
    if t < ext.t0 || t > ext.t1 {
        return Err(pre(format!("e{e0} does not reach the facet x{} = c", axis + 1)));
    }
    if r.tight_facets(&ext.point(&t)) != [facet] {
        return Err(pre(format!("e{e0} meets the facet outside its relative interior")));
    }
    let mut caps = Capacities {
        g: h,
        axis,
        left: BTreeMap::new(),
    };
    let mut fam = PathFamily::new(axis);
    for _ in 0..path_count(&m)? {
        trace(h, r, &mut caps, e0, t.clone(), tie, &mut fam)?;
    }
    Ok(fam)
}

/// The `d` paths of a saturated curve in direction `axis`, one batch per
/// crossing with the face `{x_axis = 0}`, sharing capacities.
pub fn path_family_for_face(g: &TropicalCurve, axis: usize, tie: TieRule) -> Result<PathFamily> {
    let report = is_saturated(g)?;
    if !report.saturated {
        return Err(Error::NotSaturated);
    }
    if axis >= g.dim() {
        return Err(Error::InvalidArgument(format!("direction {} out of range", axis + 1)));
    }
    let face = FaceId::for_axis(axis);
    let mut starts: Vec<(usize, Point, BigInt)> = report
        .hits
        .into_iter()
        .filter(|h| h.face == Some(face))
        .map(|h| (h.hit.edge, h.hit.point, h.multiplicity))
        .collect();
    starts.sort();
    let mut caps = Capacities {
        g,
        axis,
        left: BTreeMap::new(),
    };
    let mut fam = PathFamily::new(axis);
    for (edge, point, m) in starts {
        let t = g.extent(edge)?.param_of(&point).expect("hit lies on its edge");
        for _ in 0..path_count(&m)? {
            trace(g, g.region(), &mut caps, edge, t.clone(), tie, &mut fam)?;
        }
    }
    Ok(fam)
}

/// Union weights `k·w_e/|w_eⁱ|` per used edge.
pub fn union_weights(f: &PathFamily) -> BTreeMap<usize, QWeight> {
    let mut out = BTreeMap::new();
    for s in f.paths.iter().flat_map(|p| &p.segments) {
        out.entry(s.edge).or_insert_with(|| {
            let k = big_to_rat(&f.usage[&s.edge]);
            QWeight {
                base: s.weight.base.clone(),
                scale: &s.weight.scale * k,
            }
        });
    }
    out
}

/// Junction vertices `Q` of `P` with an incident edge off `P` whose weight
/// has a nonzero component in some direction other than the path's.
pub fn v0_set(p: &Path, g: &TropicalCurve) -> Result<BTreeSet<usize>> {
    let on_path = p.edges();
    let mut out = BTreeSet::new();
    for &q in &p.vertices {
        for inc in g.incidences(q)? {
            if on_path.contains(&inc.edge) {
                continue;
            }
            let w = &g.edge(inc.edge)?.weight;
            if (0..g.dim()).any(|j| j != p.axis && !w.direction()[j].is_zero()) {
                out.insert(q);
                break;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct V0Bound {
    pub count: usize,
    #[serde(with = "crate::rational::serde_big")]
    pub bound: BigInt,
    pub pass: bool,
}

/// `#V₀(P) ≤ 2d(n−1)`.
pub fn v0_bound_check(p: &Path, g: &TropicalCurve, d: &BigInt) -> Result<V0Bound> {
    let count = v0_set(p, g)?.len();
    let bound = BigInt::from(2) * d * BigInt::from(g.dim() - 1);
    Ok(V0Bound {
        count,
        pass: BigInt::from(count) <= bound,
        bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub covered: bool,
    /// Vertices of `G` in no `V₀(P)`.
    pub misses: Vec<usize>,
}

/// Whether the `V₀` sets of the given families cover every vertex of `G`.
pub fn cover_check(g: &TropicalCurve, families: &[PathFamily]) -> Result<Cover> {
    let mut seen = BTreeSet::new();
    for p in families.iter().flat_map(|f| &f.paths) {
        seen.extend(v0_set(p, g)?);
    }
    let misses: Vec<usize> = (0..g.vertices().len()).filter(|v| !seen.contains(v)).collect();
    Ok(Cover {
        covered: misses.is_empty(),
        misses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowBound {
    #[serde(with = "crate::rational::serde_rat")]
    pub area: Rat,
    #[serde(with = "crate::rational::serde_big")]
    pub m: BigInt,
    /// `scale · m`.
    #[serde(with = "crate::rational::serde_rat")]
    pub bound: Rat,
    pub pass: bool,
}

/// The box `center + scale·([−1,1]^{j≠i} × [0,1]_i)`.
pub fn flow_box(center: &[Rat], axis: usize, scale: &Rat) -> Result<Region> {
    let lo: Point = center
        .iter()
        .enumerate()
        .map(|(j, c)| if j == axis { c.clone() } else { c - scale })
        .collect();
    let hi: Point = center.iter().map(|c| c + scale).collect();
    Region::axis_box(&lo, &hi)
}

/// `Area(H|R°) ≥ scale·|w_{e₀}ⁱ|` for the box `R` above a point `center`
/// in the interior of `e₀`.
pub fn flow_lower_bound(
    h: &TropicalCurve,
    e0: usize,
    axis: usize,
    center: &[Rat],
    scale: &Rat,
) -> Result<FlowBound> {
    let pre = |s: String| Error::PreconditionViolated(s);
    if axis >= h.dim() || center.len() != h.dim() {
        return Err(pre(format!("direction {} out of range", axis + 1)));
    }
    if !scale.is_positive() {
        return Err(pre("scale must be positive".into()));
    }
    if !h.extent(e0)?.contains_in_interior(center) {
        return Err(pre(format!("{} is not interior to e{e0}", fmt_point(center))));
    }
    let r = flow_box(center, axis, scale)?;
    if !h.region().contains_region(&r) {
        return Err(pre("the box is not contained in the curve's region".into()));
    }
    let m = h.edge(e0)?.weight.component_abs(axis);
    let area = h.area_within(&r)?;
    let bound = scale * big_to_rat(&m);
    Ok(FlowBound {
        pass: area >= bound,
        area,
        m,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::Edge;
    use crate::rational::{int, int_point, ints, rat};
    use num_traits::One;

    fn line() -> TropicalCurve {
        let k = Region::standard_simplex(2).unwrap();
        let apex = vec![rat(1, 3), rat(1, 3)];
        let edges = vec![
            Edge::ray_along(0, apex.clone(), &ints(&[-1, 0])).unwrap(),
            Edge::ray_along(1, apex.clone(), &ints(&[0, -1])).unwrap(),
            Edge::ray_along(2, apex.clone(), &ints(&[1, 1])).unwrap(),
        ];
        TropicalCurve::new(k, vec![apex], edges).unwrap()
    }

    #[test]
    fn line_has_one_path_through_the_diagonal() {
        let g = line();
        let f = extract_paths(&g, g.region(), 0, 0, TieRule::SmallestId).unwrap();
        assert_eq!(f.paths.len(), 1);
        let p = &f.paths[0];
        assert_eq!(p.edges(), BTreeSet::from([0, 2]));
        assert_eq!(p.exit, vec![rat(1, 2), rat(1, 2)]);
        assert!(p.is_monotone(&g).unwrap());
        assert_eq!(v0_set(p, &g).unwrap(), BTreeSet::from([0]));
        let b = v0_bound_check(p, &g, &BigInt::one()).unwrap();
        assert_eq!((b.count, b.bound.clone(), b.pass), (1, BigInt::from(2), true));
    }

    #[test]
    fn multiplicity_two_edge_splits() {
        let b = Region::axis_box(&int_point(&[-2, -2]), &int_point(&[2, 2])).unwrap();
        let o = int_point(&[0, 0]);
        let edges = vec![
            Edge::ray_along(0, o.clone(), &ints(&[-2, 0])).unwrap(),
            Edge::ray_along(1, o.clone(), &ints(&[1, 1])).unwrap(),
            Edge::ray_along(2, o.clone(), &ints(&[1, -1])).unwrap(),
        ];
        let g = TropicalCurve::new(b, vec![o], edges).unwrap();
        let r = Region::axis_box(&int_point(&[-1, -2]), &int_point(&[2, 2])).unwrap();
        let f = extract_paths(&g, &r, 0, 0, TieRule::SmallestId).unwrap();
        assert_eq!(f.paths.len(), 2);
        assert_eq!(f.paths[0].edges(), BTreeSet::from([0, 1]));
        assert_eq!(f.paths[1].edges(), BTreeSet::from([0, 2]));
        assert!(f.respects_capacity());
        let u = union_weights(&f);
        assert_eq!(u[&0].scale, int(1));
        assert_eq!(u[&0].vector(), vec![int(2), int(0)]);
        assert_eq!(u[&1].scale, int(1));
    }

    #[test]
    fn zero_component_entry_is_rejected() {
        let g = line();
        assert!(matches!(
            extract_paths(&g, g.region(), 1, 0, TieRule::SmallestId),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn unbalanced_vertex_gets_stuck() {
        let b = Region::axis_box(&int_point(&[-2, -2]), &int_point(&[2, 2])).unwrap();
        let o = int_point(&[0, 0]);
        let edges = vec![
            Edge::ray_along(0, o.clone(), &ints(&[-1, 0])).unwrap(),
            Edge::ray_along(1, o.clone(), &ints(&[0, 1])).unwrap(),
            Edge::ray_along(2, o.clone(), &ints(&[0, -1])).unwrap(),
        ];
        let g = TropicalCurve::new(b, vec![o], edges).unwrap();
        let r = Region::axis_box(&int_point(&[-1, -2]), &int_point(&[2, 2])).unwrap();
        assert!(matches!(
            extract_paths(&g, &r, 0, 0, TieRule::SmallestId),
            Err(Error::StuckVertex(_))
        ));
    }

    #[test]
    fn face_family_and_cover_on_line() {
        let g = line();
        for tie in [TieRule::SmallestId, TieRule::LexDirection] {
            let f = path_family_for_face(&g, 0, tie).unwrap();
            assert_eq!(f.paths.len(), 1);
            let c = cover_check(&g, &[f]).unwrap();
            assert!(c.covered);
        }
    }

    #[test]
    fn flow_bound_equality_for_straight_edge() {
        let b = Region::axis_box(&int_point(&[-3, -3]), &int_point(&[3, 3])).unwrap();
        let e = Edge::segment_weighted(0, int_point(&[0, -3]), int_point(&[0, 3]), &ints(&[0, 3])).unwrap();
        let g = TropicalCurve::new(b, vec![], vec![e]).unwrap();
        let fb = flow_lower_bound(&g, 0, 1, &int_point(&[0, 0]), &int(1)).unwrap();
        assert_eq!((fb.area.clone(), fb.m.clone(), fb.pass), (int(3), BigInt::from(3), true));
        let fb = flow_lower_bound(&g, 0, 0, &int_point(&[0, 0]), &int(1)).unwrap();
        assert!(fb.m.is_zero() && fb.pass);
    }

    #[test]
    fn flow_bound_on_translated_line() {
        // apex at (−1/2, −1/2); the diagonal ray covers the origin
        let b = Region::axis_box(&int_point(&[-3, -3]), &int_point(&[3, 3])).unwrap();
        let apex = vec![rat(-1, 2), rat(-1, 2)];
        let edges = vec![
            Edge::ray_along(0, apex.clone(), &ints(&[-1, 0])).unwrap(),
            Edge::ray_along(1, apex.clone(), &ints(&[0, -1])).unwrap(),
            Edge::ray_along(2, apex.clone(), &ints(&[1, 1])).unwrap(),
        ];
        let g = TropicalCurve::new(b, vec![apex], edges).unwrap();
        let fb = flow_lower_bound(&g, 2, 0, &int_point(&[0, 0]), &int(1)).unwrap();
        assert_eq!(fb.area, int(2));
        assert!(fb.pass);
    }
}
