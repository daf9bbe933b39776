//! Tropical curves: declared vertices, weighted edges, balancing and area.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::edge::{extent_area, Edge, EdgeKind, Extent};
use crate::error::{Error, Result};
use crate::rational::{
    add_intvec_assign, dot_int, neg_intvec, parse_rat, sub_points, IntVec, Point, Rat,
};
use crate::region::Region;

/// Metadata key listing points whose declared vertices are truncation
/// artifacts (e.g. the deepest level of a truncated infinite curve).
/// Lenient validation does not check balancing there.
pub const TRUNCATION_POINTS: &str = "truncation_points";

/// An edge incident to a vertex, with the weight representative pointing
/// away from the vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub edge: usize,
    pub outward: IntVec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TropicalCurve {
    region: Region,
    vertices: Vec<Point>,
    edges: Vec<Edge>,
    metadata: BTreeMap<String, serde_json::Value>,
    incidence: Vec<Vec<Incidence>>,
    edge_index: HashMap<usize, usize>,
    extents: Vec<Result<Extent>>,
    vertex_index: HashMap<Point, usize>,
}

impl TropicalCurve {
    /// Assembles a curve. Only structural consistency (dimensions, unique
    /// edge ids) is enforced here; geometric conditions are the job of
    /// [`crate::validate`].
    pub fn new(region: Region, vertices: Vec<Point>, edges: Vec<Edge>) -> Result<Self> {
        let dim = region.dim();
        let check = |len: usize| {
            if len == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: dim,
                    found: len,
                })
            }
        };
        for v in &vertices {
            check(v.len())?;
        }
        let mut edge_index = HashMap::new();
        for (k, e) in edges.iter().enumerate() {
            check(e.tail.len())?;
            check(e.weight.dim())?;
            if let Some(h) = e.head() {
                check(h.len())?;
            }
            if let EdgeKind::Ray { sign } = e.kind {
                if sign != 1 && sign != -1 {
                    return Err(Error::InvalidArgument(format!(
                        "ray sign of e{} must be +1 or -1",
                        e.id
                    )));
                }
            }
            if edge_index.insert(e.id, k).is_some() {
                return Err(Error::DuplicateEdgeId(e.id));
            }
        }
        let mut vertex_index = HashMap::new();
        for (k, v) in vertices.iter().enumerate() {
            vertex_index.entry(v.clone()).or_insert(k);
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for e in &edges {
            let forward = orientation(e);
            if let Some(&v) = vertex_index.get(&e.tail) {
                incidence[v].push(Incidence {
                    edge: e.id,
                    outward: forward.clone(),
                });
            }
            if let Some(h) = e.head() {
                if let Some(&v) = vertex_index.get(h) {
                    incidence[v].push(Incidence {
                        edge: e.id,
                        outward: neg_intvec(&forward),
                    });
                }
            }
        }
        let extents = edges.iter().map(|e| e.extent(&region)).collect();
        Ok(TropicalCurve {
            extents,
            region,
            vertices,
            edges,
            metadata: BTreeMap::new(),
            incidence,
            edge_index,
            vertex_index,
        })
    }

    /// An edgeless, vertexless curve in `region`.
    pub fn empty(region: Region) -> Self {
        Self::new(region, Vec::new(), Vec::new()).expect("empty curve is consistent")
    }

    pub fn with_metadata(mut self, metadata: BTreeMap<String, serde_json::Value>) -> Self {
        self.metadata = metadata;
        self
    }

    /// The same vertices and edges in another ambient region (rays are
    /// re-clipped). Every vertex must lie inside the new region.
    pub fn with_region(&self, region: Region) -> Result<Self> {
        if let Some(v) = self.vertices.iter().position(|p| !region.contains_interior(p)) {
            return Err(Error::PreconditionViolated(format!(
                "vertex v{v} is not inside the new region"
            )));
        }
        Ok(Self::new(region, self.vertices.clone(), self.edges.clone())?
            .with_metadata(self.metadata.clone()))
    }

    pub fn dim(&self) -> usize {
        self.region.dim()
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn metadata(&self) -> &BTreeMap<String, serde_json::Value> {
        &self.metadata
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        self.edge_index
            .get(&id)
            .map(|&k| &self.edges[k])
            .ok_or(Error::UnknownEdge(id))
    }

    pub fn vertex_at(&self, p: &[Rat]) -> Option<usize> {
        self.vertex_index.get(p).copied()
    }

    pub fn incidences(&self, v: usize) -> Result<&[Incidence]> {
        self.incidence
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn next_edge_id(&self) -> usize {
        self.edges.iter().map(|e| e.id + 1).max().unwrap_or(0)
    }

    /// Extent of edge `id` in the curve's region.
    pub fn extent(&self, id: usize) -> Result<Extent> {
        let k = *self.edge_index.get(&id).ok_or(Error::UnknownEdge(id))?;
        self.extents[k].clone()
    }

    /// Declared vertices exempt from lenient balancing (see
    /// [`TRUNCATION_POINTS`]).
    pub fn truncation_vertices(&self) -> Vec<usize> {
        let Some(serde_json::Value::Array(points)) = self.metadata.get(TRUNCATION_POINTS) else {
            return Vec::new();
        };
        points
            .iter()
            .filter_map(|p| {
                let coords = p.as_array()?;
                let point: Option<Point> = coords
                    .iter()
                    .map(|c| c.as_str().and_then(|s| parse_rat(s).ok()))
                    .collect();
                self.vertex_at(&point?)
            })
            .collect()
    }

    /// Sum of outward weight representatives at vertex `v`; zero iff
    /// balanced.
    pub fn check_balancing(&self, v: usize) -> Result<IntVec> {
        let inc = self.incidences(v)?;
        let mut sum = vec![Zero::zero(); self.dim()];
        for i in inc {
            add_intvec_assign(&mut sum, &i.outward);
        }
        Ok(sum)
    }

    /// Total tropical area, rays clipped to the region.
    pub fn area(&self) -> Result<Rat> {
        self.edges.iter().try_fold(Rat::zero(), |acc, e| {
            Ok(acc + extent_area(&self.extent(e.id)?, &e.weight))
        })
    }

    /// Area of the part of the curve inside the open region `r`. Edge pieces
    /// lying in a facet hyperplane of `r` contribute nothing.
    pub fn area_within(&self, r: &Region) -> Result<Rat> {
        let mut total = Rat::zero();
        for e in &self.edges {
            let ext = self.extent(e.id)?;
            let Some(c) = ext.clip(r) else { continue };
            if c.is_degenerate() || r.facet_containing_line(&c.origin, &c.step).is_some() {
                continue;
            }
            total += extent_area(&c, &e.weight);
        }
        Ok(total)
    }

    /// `G|_{V°}`: clips every edge to `V`, keeps the vertices inside `V°`.
    pub fn restrict(&self, v: &Region) -> Result<TropicalCurve> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        if !self.region.contains_region(v) {
            return Err(Error::RegionNotContained);
        }
        let mut vertices = Vec::new();
        for (k, p) in self.vertices.iter().enumerate() {
            if v.on_boundary(p) {
                return Err(Error::VertexOnBoundary(k));
            }
            if v.contains_interior(p) {
                vertices.push(p.clone());
            }
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let ext = self.extent(e.id)?;
            let Some(c) = ext.clip(v) else { continue };
            if c.is_degenerate() {
                continue;
            }
            if v.facet_containing_line(&c.origin, &c.step).is_some() {
                return Err(Error::NonTransversal(e.id));
            }
            if c == ext {
                edges.push(e.clone());
            } else if e.is_ray() && c.t0 == ext.t0 {
                // tail still inside: the new region clips the far end
                edges.push(e.clone());
            } else {
                edges.push(Edge::segment(e.id, c.start(), c.end(), e.weight.clone()));
            }
        }
        Ok(TropicalCurve::new(v.clone(), vertices, edges)?.with_metadata(self.metadata.clone()))
    }
}

/// Step from the tail into the edge; falls back to the weight vector when
/// the edge is degenerate or not parallel.
fn orientation(e: &Edge) -> IntVec {
    if let Some(step) = e.step() {
        return step;
    }
    let w = e.weight.vector();
    match e.head() {
        Some(h) if dot_int(&w, &sub_points(h, &e.tail)) < Rat::zero() => neg_intvec(&w),
        _ => w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, int_point, ints, rat};
    use crate::weight::canonical_weight;

    fn line(apex: Point) -> TropicalCurve {
        let k = Region::standard_simplex(2).unwrap();
        let edges = vec![
            Edge::ray_along(0, apex.clone(), &ints(&[-1, 0])).unwrap(),
            Edge::ray_along(1, apex.clone(), &ints(&[0, -1])).unwrap(),
            Edge::ray_along(2, apex.clone(), &ints(&[1, 1])).unwrap(),
        ];
        TropicalCurve::new(k, vec![apex], edges).unwrap()
    }

    #[test]
    fn tropical_line_area_and_balance() {
        let g = line(vec![rat(1, 3), rat(1, 3)]);
        assert_eq!(g.area().unwrap(), int(1));
        assert_eq!(g.check_balancing(0).unwrap(), ints(&[0, 0]));
        assert_eq!(g.check_balancing(1), Err(Error::UnknownVertex(1)));
    }

    #[test]
    fn empty_curve_has_zero_area() {
        let g = TropicalCurve::empty(Region::standard_simplex(3).unwrap());
        assert!(g.area().unwrap().is_zero());
    }

    #[test]
    fn unbalanced_star_reports_defect() {
        let b = Region::axis_box(&int_point(&[-2, -2]), &int_point(&[2, 2])).unwrap();
        let o = int_point(&[0, 0]);
        let edges = vec![
            Edge::ray_along(0, o.clone(), &ints(&[1, 0])).unwrap(),
            Edge::ray_along(1, o.clone(), &ints(&[-1, 0])).unwrap(),
            Edge::ray_along(2, o.clone(), &ints(&[0, 1])).unwrap(),
        ];
        let g = TropicalCurve::new(b, vec![o], edges).unwrap();
        assert_eq!(g.check_balancing(0).unwrap(), ints(&[0, 1]));
    }

    #[test]
    fn head_incidence_points_back() {
        let b = Region::axis_box(&int_point(&[-2, -2]), &int_point(&[2, 2])).unwrap();
        let w = canonical_weight(&ints(&[1, 1])).unwrap();
        let e = Edge::segment(0, int_point(&[1, 1]), int_point(&[0, 0]), w);
        let g = TropicalCurve::new(b, vec![int_point(&[0, 0]), int_point(&[1, 1])], vec![e]).unwrap();
        assert_eq!(g.incidences(0).unwrap()[0].outward, ints(&[1, 1]));
        assert_eq!(g.incidences(1).unwrap()[0].outward, ints(&[-1, -1]));
    }

    #[test]
    fn restrict_to_own_region_is_identity() {
        let g = line(vec![rat(1, 3), rat(1, 3)]);
        assert_eq!(g.restrict(g.region()).unwrap(), g);
    }

    #[test]
    fn restrict_through_vertex_fails() {
        let g = line(vec![rat(1, 3), rat(1, 3)]);
        let half = Region::new(
            2,
            vec![
                crate::region::Halfspace::new(ints(&[1, 0]), rat(1, 3)),
                crate::region::Halfspace::new(ints(&[-1, 0]), int(0)),
                crate::region::Halfspace::new(ints(&[0, -1]), int(0)),
                crate::region::Halfspace::new(ints(&[1, 1]), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(g.restrict(&half), Err(Error::VertexOnBoundary(0)));
    }

    #[test]
    fn restrict_rejects_larger_region() {
        let g = line(vec![rat(1, 3), rat(1, 3)]);
        let big = Region::axis_box(&int_point(&[-1, -1]), &int_point(&[1, 1])).unwrap();
        assert_eq!(g.restrict(&big), Err(Error::RegionNotContained));
    }

    #[test]
    fn restrict_clips_rays_to_segments() {
        let g = line(vec![rat(1, 3), rat(1, 3)]);
        let b = Region::axis_box(&[rat(1, 4), rat(1, 4)], &[rat(1, 2), rat(1, 2)]).unwrap();
        let r = g.restrict(&b).unwrap();
        assert_eq!(r.vertices().len(), 1);
        assert_eq!(r.edges().len(), 3);
        // (−1,0): 1/12, (0,−1): 1/12, (1,1): λ = 1/6 → 1/3
        assert_eq!(r.area().unwrap(), rat(1, 12) + rat(1, 12) + rat(1, 3));
        assert_eq!(r.check_balancing(0).unwrap(), ints(&[0, 0]));
    }
}
