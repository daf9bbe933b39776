//! Saturated curves in the open standard simplex: face degrees, the area
//! identity and the measure densities along coordinate axes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::crossing::{region_boundary_hits, BoundaryHit};
use crate::curve::TropicalCurve;
use crate::error::{Error, Result};
use crate::rational::{big_to_rat, fmt_rat, int, parallel_ints, Rat};
use crate::region::FaceId;

/// One crossing of `Ḡ` with `∂K`, classified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HitStatus {
    pub hit: BoundaryHit,
    pub face: Option<FaceId>,
    pub perpendicular: bool,
    #[serde(with = "crate::rational::serde_big")]
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    /// Whether the ambient region is the standard simplex.
    pub standard_region: bool,
    pub hits: Vec<HitStatus>,
    pub saturated: bool,
}

/// Classifies the crossings of `Ḡ` with `∂K`. `G` is saturated iff no
/// crossing lies on the `(n−2)`-skeleton and every crossing is
/// perpendicular to its facet.
pub fn is_saturated(g: &TropicalCurve) -> Result<SaturationReport> {
    let region = g.region();
    let standard = region.is_standard_simplex();
    let mut hits = Vec::new();
    for hit in region_boundary_hits(g)? {
        let e = g.edge(hit.edge)?;
        let face = if standard { region.face_id(hit.facet) } else { None };
        let perpendicular = !hit.on_skeleton
            && face.is_some_and(|f| parallel_ints(&f.outward_normal(g.dim()), e.weight.direction()));
        hits.push(HitStatus {
            multiplicity: e.weight.multiplicity().clone(),
            hit,
            face,
            perpendicular,
        });
    }
    let saturated = standard && hits.iter().all(|h| h.perpendicular);
    Ok(SaturationReport {
        standard_region: standard,
        hits,
        saturated,
    })
}

fn saturated_hits(g: &TropicalCurve) -> Result<Vec<HitStatus>> {
    let r = is_saturated(g)?;
    if !r.saturated {
        return Err(Error::NotSaturated);
    }
    Ok(r.hits)
}

/// `(d₁, …, dₙ, d₀)`: crossing multiplicities summed per facet.
pub fn face_degrees(g: &TropicalCurve) -> Result<Vec<BigInt>> {
    let n = g.dim();
    let mut deg = vec![BigInt::zero(); n + 1];
    for h in saturated_hits(g)? {
        let f = h.face.expect("saturated hits lie on named faces");
        let slot = match f.axis() {
            Some(a) => a,
            None => n,
        };
        deg[slot] += &h.multiplicity;
    }
    Ok(deg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AreaCheck {
    #[serde(with = "crate::rational::serde_rat")]
    pub area: Rat,
    #[serde(with = "crate::rational::serde_big")]
    pub d: BigInt,
    /// All face degrees agree and the area equals `d`.
    pub equal: bool,
}

/// Compares the exact area of a saturated curve with its degree.
pub fn saturated_area_check(g: &TropicalCurve) -> Result<AreaCheck> {
    let deg = face_degrees(g)?;
    let d = deg[0].clone();
    let area = g.area()?;
    let equal = deg.iter().all(|x| *x == d) && area == big_to_rat(&d);
    Ok(AreaCheck { area, d, equal })
}

/// The degree `d` of a saturated curve (its common face degree).
pub fn degree(g: &TropicalCurve) -> Result<BigInt> {
    Ok(face_degrees(g)?.swap_remove(0))
}

/// Crossings of the diagonal face `{Σxᵢ = 1}`: `(z, m)` pairs.
fn diagonal_crossings(hits: &[HitStatus]) -> impl Iterator<Item = &HitStatus> {
    hits.iter().filter(|h| h.face == Some(FaceId(0)))
}

/// Coordinates `ζ` on axis `axis` where the density may jump: vertex
/// coordinates and crossing coordinates.
fn critical_values(g: &TropicalCurve, hits: &[HitStatus], axis: usize) -> BTreeSet<Rat> {
    g.vertices()
        .iter()
        .map(|v| v[axis].clone())
        .chain(hits.iter().map(|h| h.hit.point[axis].clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Density {
    #[serde(with = "crate::rational::serde_rat")]
    pub zeta: Rat,
    /// `Σ |w_eⁱ|` over edges whose `i`-span strictly contains `ζ`.
    #[serde(with = "crate::rational::serde_big")]
    pub density: BigInt,
    /// `d − Σ_{z_i < ζ} m` over the crossings of the diagonal face.
    #[serde(with = "crate::rational::serde_big")]
    pub predicted: BigInt,
}

/// Density of the measure `μ_i` at `ζ·eᵢ`, computed from the edges, with
/// the crossing-sum prediction alongside. `axis` is 0-based.
pub fn measure_density(g: &TropicalCurve, axis: usize, zeta: &Rat) -> Result<Density> {
    if axis >= g.dim() {
        return Err(Error::InvalidArgument(format!("direction {} out of range", axis + 1)));
    }
    if !zeta.is_positive() || *zeta >= Rat::one() {
        return Err(Error::DegenerateSlice(format!("{} is not in (0,1)", fmt_rat(zeta))));
    }
    let hits = saturated_hits(g)?;
    if critical_values(g, &hits, axis).contains(zeta) {
        return Err(Error::DegenerateSlice(fmt_rat(zeta)));
    }
    let mut density = BigInt::zero();
    for e in g.edges() {
        let (lo, hi) = g.extent(e.id)?.coord_span(axis);
        if lo < *zeta && *zeta < hi {
            density += e.weight.component_abs(axis);
        }
    }
    let d: BigInt = diagonal_crossings(&hits).map(|h| &h.multiplicity).sum();
    let below: BigInt = diagonal_crossings(&hits)
        .filter(|h| h.hit.point[axis] < *zeta)
        .map(|h| &h.multiplicity)
        .sum();
    Ok(Density {
        zeta: zeta.clone(),
        density,
        predicted: d - below,
    })
}

/// Midpoints between consecutive critical coordinates in `(0, 1)`.
pub fn critical_slices(g: &TropicalCurve, axis: usize) -> Result<Vec<Rat>> {
    let hits = is_saturated(g)?.hits;
    let mut cuts: BTreeSet<Rat> = critical_values(g, &hits, axis)
        .into_iter()
        .filter(|z| z.is_positive() && *z < Rat::one())
        .collect();
    cuts.insert(Rat::zero());
    cuts.insert(Rat::one());
    let cuts: Vec<Rat> = cuts.into_iter().collect();
    Ok(cuts
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / int(2))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::Edge;
    use crate::rational::{ints, rat, Point};
    use crate::region::Region;

    fn line_in(k: Region, apex: Point) -> TropicalCurve {
        let n = apex.len();
        let mut edges = Vec::new();
        for a in 0..n {
            let mut v = vec![0i64; n];
            v[a] = -1;
            edges.push(Edge::ray_along(a, apex.clone(), &ints(&v)).unwrap());
        }
        edges.push(Edge::ray_along(n, apex.clone(), &ints(&vec![1; n])).unwrap());
        TropicalCurve::new(k, vec![apex], edges).unwrap()
    }

    fn line2() -> TropicalCurve {
        line_in(Region::standard_simplex(2).unwrap(), vec![rat(1, 3), rat(1, 3)])
    }

    #[test]
    fn tropical_line_is_saturated_of_degree_one() {
        let g = line2();
        assert!(is_saturated(&g).unwrap().saturated);
        assert_eq!(face_degrees(&g).unwrap(), ints(&[1, 1, 1]));
        let c = saturated_area_check(&g).unwrap();
        assert_eq!((c.area, c.d, c.equal), (int(1), BigInt::one(), true));
    }

    #[test]
    fn three_dimensional_line() {
        let g = line_in(Region::standard_simplex(3).unwrap(), vec![rat(1, 4); 3]);
        let c = saturated_area_check(&g).unwrap();
        assert_eq!((c.area, c.d, c.equal), (int(1), BigInt::one(), true));
    }

    #[test]
    fn slanted_crossing_is_not_saturated() {
        let k = Region::standard_simplex(2).unwrap();
        let e = Edge::segment_weighted(0, vec![rat(0, 1), rat(1, 4)], vec![rat(1, 4), rat(3, 4)], &ints(&[1, 2]))
            .unwrap();
        let g = TropicalCurve::new(k, vec![], vec![e]).unwrap();
        assert!(!is_saturated(&g).unwrap().saturated);
        assert_eq!(face_degrees(&g), Err(Error::NotSaturated));
    }

    #[test]
    fn segment_between_coordinate_faces_is_not_saturated() {
        let k = Region::standard_simplex(2).unwrap();
        let e = Edge::segment_weighted(0, vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)], &ints(&[1, -1]))
            .unwrap();
        let g = TropicalCurve::new(k, vec![], vec![e]).unwrap();
        assert_eq!(face_degrees(&g), Err(Error::NotSaturated));
    }

    #[test]
    fn density_on_the_line() {
        let g = line2();
        let at = |z: Rat| measure_density(&g, 0, &z).unwrap();
        let d = at(rat(1, 6));
        assert_eq!((d.density, d.predicted), (BigInt::one(), BigInt::one()));
        let d = at(rat(5, 12));
        assert_eq!((d.density, d.predicted), (BigInt::one(), BigInt::one()));
        let d = at(rat(5, 6));
        assert_eq!((d.density, d.predicted), (BigInt::zero(), BigInt::zero()));
    }

    #[test]
    fn density_rejects_critical_slices() {
        let g = line2();
        // the vertex coordinate and the diagonal crossing x₁ = 1/2
        assert!(matches!(measure_density(&g, 0, &rat(1, 3)), Err(Error::DegenerateSlice(_))));
        assert!(matches!(measure_density(&g, 0, &rat(1, 2)), Err(Error::DegenerateSlice(_))));
        assert!(matches!(measure_density(&g, 0, &rat(1, 1)), Err(Error::DegenerateSlice(_))));
    }

    #[test]
    fn slices_are_midpoints() {
        let s = critical_slices(&line2(), 0).unwrap();
        assert_eq!(s, vec![rat(1, 6), rat(5, 12), rat(3, 4)]);
    }
}
