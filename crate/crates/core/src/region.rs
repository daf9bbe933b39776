//! Bounded rational convex polytopes in H-representation.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{
    big_to_rat, dot_int, dot_ints, fmt_rat, int, max_rat, min_rat, IntVec, Point, Rat,
};

/// The closed half-space `normal · x ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "crate::rational::serde_big::vec")]
    pub normal: IntVec,
    #[serde(with = "crate::rational::serde_rat")]
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: IntVec, offset: Rat) -> Self {
        Halfspace { normal, offset }
    }

    /// `offset − normal·p`: positive inside, zero on the hyperplane.
    pub fn slack(&self, p: &[Rat]) -> Rat {
        &self.offset - dot_int(&self.normal, p)
    }
}

/// Names a facet of the standard simplex: `FaceId(0)` is `{Σxᵢ = 1}` and
/// `FaceId(i)` for `1 ≤ i ≤ n` is `{xᵢ = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId(pub usize);

impl FaceId {
    /// Axis (0-based) for coordinate faces, `None` for the diagonal face.
    pub fn axis(self) -> Option<usize> {
        self.0.checked_sub(1)
    }

    pub fn for_axis(axis: usize) -> Self {
        FaceId(axis + 1)
    }

    /// Outward normal of the face in the standard simplex.
    pub fn outward_normal(self, dim: usize) -> IntVec {
        match self.axis() {
            None => vec![BigInt::one(); dim],
            Some(a) => (0..dim)
                .map(|j| if j == a { -BigInt::one() } else { BigInt::zero() })
                .collect(),
        }
    }
}

/// Parameter interval `{t : origin + t·step ∈ region}`; `None` bounds are
/// infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInterval {
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
}

impl LineInterval {
    /// Intersection with the finite interval `[a, b]`.
    pub fn clamp(&self, a: &Rat, b: &Rat) -> Option<(Rat, Rat)> {
        let lo = match &self.lo {
            Some(l) => max_rat(l, a).clone(),
            None => a.clone(),
        };
        let hi = match &self.hi {
            Some(h) => min_rat(h, b).clone(),
            None => b.clone(),
        };
        (lo <= hi).then_some((lo, hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Interior,
    /// On the boundary; lists the indices of the tight half-spaces.
    Boundary(Vec<usize>),
    Exterior,
}

/// A bounded, full-dimensional convex polytope given by irredundant
/// half-spaces. The vertex set is kept alongside.
#[derive(Debug, Clone)]
pub struct Region {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    vertices: Vec<Point>,
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.halfspaces == other.halfspaces
    }
}

impl Eq for Region {}

impl Region {
    /// Validates boundedness, full dimension and irredundancy exactly.
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        for h in &halfspaces {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.normal.len(),
                });
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::InvalidRegion("zero normal".into()));
            }
        }
        let rows: Vec<Vec<Rat>> = halfspaces
            .iter()
            .map(|h| h.normal.iter().map(big_to_rat).collect())
            .collect();
        if linalg::rank(&rows) < dim {
            return Err(Error::InvalidRegion("unbounded (normals do not span)".into()));
        }
        // A pointed cone {d : A d ≤ 0} is trivial iff it has no extreme ray;
        // extreme rays are kernels of rank-(n−1) row subsets.
        for subset in (0..halfspaces.len()).combinations(dim - 1) {
            let sub: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
            let ker = linalg::kernel(&sub, dim);
            if ker.len() != 1 {
                continue;
            }
            let d = &ker[0];
            for sign in [1i64, -1] {
                let dir: Vec<Rat> = d.iter().map(|x| x * int(sign)).collect();
                if rows
                    .iter()
                    .all(|r| r.iter().zip(&dir).map(|(a, b)| a * b).sum::<Rat>() <= Rat::zero())
                {
                    return Err(Error::InvalidRegion("unbounded".into()));
                }
            }
        }
        let vertices = enumerate_vertices(dim, &halfspaces);
        if vertices.is_empty() {
            return Err(Error::InvalidRegion("empty".into()));
        }
        let count = int(vertices.len() as i64);
        let centroid: Point = (0..dim)
            .map(|k| vertices.iter().map(|v| v[k].clone()).sum::<Rat>() / &count)
            .collect();
        if halfspaces.iter().any(|h| !h.slack(&centroid).is_positive()) {
            return Err(Error::InvalidRegion("not full-dimensional".into()));
        }
        for (i, h) in halfspaces.iter().enumerate() {
            let tight: Vec<&Point> = vertices.iter().filter(|v| h.slack(v).is_zero()).collect();
            let spans_facet = tight.len() >= dim && {
                let diffs: Vec<Vec<Rat>> = tight[1..]
                    .iter()
                    .map(|v| v.iter().zip(tight[0]).map(|(a, b)| a - b).collect())
                    .collect();
                linalg::rank(&diffs) == dim - 1
            };
            if !spans_facet {
                return Err(Error::InvalidRegion(format!("half-space {i} is redundant")));
            }
        }
        Ok(Region {
            dim,
            halfspaces,
            vertices,
        })
    }

    /// `K = {xᵢ ≥ 0, Σxᵢ ≤ 1}` with half-space `i` naming `FaceId(i)`.
    pub fn standard_simplex(dim: usize) -> Result<Self> {
        Self::simplex_with(dim, Rat::zero(), Rat::one())
    }

    /// The open region `U′_δ`: `{xᵢ ≥ −δ, Σxᵢ ≤ 1 + nδ}`, the simplex with
    /// vertices `(−δ,…,−δ)` and `−δ·1 + (1 + 2nδ)·eᵢ`. Every point of `K`
    /// keeps a box of half-width `δ` inside it.
    pub fn dilated_simplex(dim: usize, delta: &Rat) -> Result<Self> {
        if !delta.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "delta must be positive, got {}",
                fmt_rat(delta)
            )));
        }
        let n = int(dim as i64);
        Self::simplex_with(dim, -delta.clone(), Rat::one() + n * delta)
    }

    /// `{xᵢ ≥ lower, Σxᵢ ≤ upper}`, a simplex whenever `upper > n·lower`.
    fn simplex_with(dim: usize, lower: Rat, upper: Rat) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        let n = int(dim as i64);
        if upper <= &n * &lower {
            return Err(Error::InvalidRegion("empty simplex".into()));
        }
        let mut halfspaces = vec![Halfspace::new(vec![BigInt::one(); dim], upper.clone())];
        for a in 0..dim {
            let normal = (0..dim)
                .map(|j| if j == a { -BigInt::one() } else { BigInt::zero() })
                .collect();
            halfspaces.push(Halfspace::new(normal, -lower.clone()));
        }
        let apex = &upper - (&n - Rat::one()) * &lower;
        let mut vertices = vec![vec![lower.clone(); dim]];
        for a in 0..dim {
            let mut v = vec![lower.clone(); dim];
            v[a] = apex.clone();
            vertices.push(v);
        }
        Ok(Region {
            dim,
            halfspaces,
            vertices,
        })
    }

    /// The simplex shrunk by per-facet inward offsets (`offsets[f]` is the
    /// shift of `FaceId(f)`), i.e. `{xᵢ ≥ εᵢ, Σxᵢ ≤ 1 − ε₀}`.
    pub fn shrunk_simplex(dim: usize, offsets: &[Rat]) -> Result<Self> {
        if offsets.len() != dim + 1 {
            return Err(Error::DimensionMismatch {
                expected: dim + 1,
                found: offsets.len(),
            });
        }
        let mut halfspaces = vec![Halfspace::new(
            vec![BigInt::one(); dim],
            Rat::one() - &offsets[0],
        )];
        for a in 0..dim {
            let normal = (0..dim)
                .map(|j| if j == a { -BigInt::one() } else { BigInt::zero() })
                .collect();
            halfspaces.push(Halfspace::new(normal, -offsets[a + 1].clone()));
        }
        Self::new(dim, halfspaces)
    }

    /// The axis-parallel box `∏ [lo_k, hi_k]`; half-spaces are ordered
    /// `xₖ ≤ hiₖ, −xₖ ≤ −loₖ` for each axis in turn.
    pub fn axis_box(lo: &[Rat], hi: &[Rat]) -> Result<Self> {
        let dim = lo.len();
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        if hi.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: hi.len(),
            });
        }
        if lo.iter().zip(hi).any(|(l, h)| l >= h) {
            return Err(Error::InvalidRegion("box with empty side".into()));
        }
        let mut halfspaces = Vec::with_capacity(2 * dim);
        for a in 0..dim {
            let e: IntVec = (0..dim)
                .map(|j| if j == a { BigInt::one() } else { BigInt::zero() })
                .collect();
            let minus_e: IntVec = e.iter().map(|x| -x).collect();
            halfspaces.push(Halfspace::new(e, hi[a].clone()));
            halfspaces.push(Halfspace::new(minus_e, -lo[a].clone()));
        }
        let vertices = (0..dim)
            .map(|a| [lo[a].clone(), hi[a].clone()])
            .multi_cartesian_product()
            .collect();
        Ok(Region {
            dim,
            halfspaces,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn locate(&self, p: &[Rat]) -> Location {
        let mut tight = Vec::new();
        for (i, h) in self.halfspaces.iter().enumerate() {
            let s = h.slack(p);
            if s.is_negative() {
                return Location::Exterior;
            }
            if s.is_zero() {
                tight.push(i);
            }
        }
        if tight.is_empty() {
            Location::Interior
        } else {
            Location::Boundary(tight)
        }
    }

    pub fn tight_facets(&self, p: &[Rat]) -> Vec<usize> {
        self.halfspaces
            .iter()
            .enumerate()
            .filter(|(_, h)| h.slack(p).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains_interior(&self, p: &[Rat]) -> bool {
        self.locate(p) == Location::Interior
    }

    pub fn contains_closed(&self, p: &[Rat]) -> bool {
        self.locate(p) != Location::Exterior
    }

    pub fn on_boundary(&self, p: &[Rat]) -> bool {
        matches!(self.locate(p), Location::Boundary(_))
    }

    /// `other ⊆ self` (closed sets).
    pub fn contains_region(&self, other: &Region) -> bool {
        other.vertices.iter().all(|v| self.contains_closed(v))
    }

    /// `other ⊂ interior(self)`.
    pub fn strictly_contains_region(&self, other: &Region) -> bool {
        other.vertices.iter().all(|v| self.contains_interior(v))
    }

    /// Parameters `t` with `origin + t·step` in the closed region, or `None`
    /// when the line misses it.
    pub fn line_interval(&self, origin: &[Rat], step: &[BigInt]) -> Option<LineInterval> {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for h in &self.halfspaces {
            let rate = big_to_rat(&dot_ints(&h.normal, step));
            let slack = h.slack(origin);
            if rate.is_zero() {
                if slack.is_negative() {
                    return None;
                }
                continue;
            }
            let t = slack / &rate;
            if rate.is_positive() {
                hi = Some(match hi {
                    Some(h) if h <= t => h,
                    _ => t,
                });
            } else {
                lo = Some(match lo {
                    Some(l) if l >= t => l,
                    _ => t,
                });
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return None;
            }
        }
        Some(LineInterval { lo, hi })
    }

    /// Index of a facet whose hyperplane contains the whole line
    /// `origin + t·step`, if any.
    pub fn facet_containing_line(&self, origin: &[Rat], step: &[BigInt]) -> Option<usize> {
        self.halfspaces.iter().position(|h| {
            dot_ints(&h.normal, step).is_zero() && h.slack(origin).is_zero()
        })
    }

    /// Whether this is the standard simplex (up to the order and positive
    /// scaling of its half-spaces).
    pub fn is_standard_simplex(&self) -> bool {
        self.halfspaces.len() == self.dim + 1
            && (0..=self.dim).all(|f| {
                let normal = FaceId(f).outward_normal(self.dim);
                let offset = if f == 0 { Rat::one() } else { Rat::zero() };
                self.halfspaces
                    .iter()
                    .any(|h| same_halfspace(h, &normal, &offset))
            })
    }

    /// For a standard simplex, the `FaceId` of half-space `index`.
    pub fn face_id(&self, index: usize) -> Option<FaceId> {
        let h = self.halfspaces.get(index)?;
        (0..=self.dim).map(FaceId).find(|f| {
            let offset = if f.0 == 0 { Rat::one() } else { Rat::zero() };
            same_halfspace(h, &f.outward_normal(self.dim), &offset)
        })
    }
}

fn same_halfspace(h: &Halfspace, normal: &[BigInt], offset: &Rat) -> bool {
    // h = c·(normal, offset) for some c > 0
    let k = normal.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    if h.normal[k].is_zero() || h.normal[k].is_negative() != normal[k].is_negative() {
        return false;
    }
    let c = Rat::new(h.normal[k].clone(), normal[k].clone());
    h.normal
        .iter()
        .zip(normal)
        .all(|(a, b)| big_to_rat(a) == &c * big_to_rat(b))
        && h.offset == c * offset
}

fn enumerate_vertices(dim: usize, halfspaces: &[Halfspace]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for subset in (0..halfspaces.len()).combinations(dim) {
        let a: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| halfspaces[i].normal.iter().map(big_to_rat).collect())
            .collect();
        let b: Vec<Rat> = subset.iter().map(|&i| halfspaces[i].offset.clone()).collect();
        let Some(x) = linalg::solve(&a, &b) else {
            continue;
        };
        if halfspaces.iter().all(|h| !h.slack(&x).is_negative()) && !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}
