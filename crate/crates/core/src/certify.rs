//! Vertex-count certificates, weight bounds, Betti numbers and the
//! conjectural Castelnuovo-type bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::crossing::region_boundary_hits;
use crate::curve::TropicalCurve;
use crate::error::{Error, Result};
use crate::paths::{cover_check, path_family_for_face, v0_set, TieRule};
use crate::rational::{big_to_rat, int, Point, Rat};
use crate::region::Region;
use crate::report::{all_pass, Check, Op};
use crate::saturated::{face_degrees, saturated_area_check};
use crate::saturation::{saturate, SurgeryLog};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightBounds {
    #[serde(with = "crate::rational::serde_big")]
    pub max_component: BigInt,
    /// Distinct intersection points of `G` with `∂K`.
    pub intersections: usize,
    #[serde(with = "crate::rational::serde_rat")]
    pub bound: Rat,
    pub checks: Vec<Check>,
}

/// `|w_eⁱ| ≤ A/δ` for the edges of `G|_{K°}` and `I ≤ A/δ`.
pub fn weight_bounds(g: &TropicalCurve, delta: &Rat, a: &Rat) -> Result<WeightBounds> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let k = Region::standard_simplex(g.dim())?;
    let gk = g.restrict(&k)?;
    weight_bounds_restricted(&gk, delta, a)
}

fn weight_bounds_restricted(gk: &TropicalCurve, delta: &Rat, a: &Rat) -> Result<WeightBounds> {
    let bound = a / delta;
    let max_component = gk
        .edges()
        .iter()
        .flat_map(|e| (0..gk.dim()).map(move |i| e.weight.component_abs(i)))
        .max()
        .unwrap_or_else(BigInt::zero);
    let points: BTreeSet<Point> = region_boundary_hits(gk)?.into_iter().map(|h| h.point).collect();
    let intersections = points.len();
    let checks = vec![
        Check::rat("weight_component", &big_to_rat(&max_component), Op::Le, &bound),
        Check::rat("boundary_intersections", &int(intersections as i64), Op::Le, &bound),
    ];
    Ok(WeightBounds {
        max_component,
        intersections,
        bound,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionStats {
    /// 1-based direction.
    pub direction: usize,
    pub paths: usize,
    pub max_v0: usize,
    #[serde(with = "crate::rational::serde_big")]
    pub v0_bound: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturatedSummary {
    #[serde(with = "crate::rational::serde_big")]
    pub d: BigInt,
    #[serde(with = "crate::rational::serde_rat")]
    pub area: Rat,
    pub vertices: usize,
    pub vertices_without_p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rat")]
    pub delta: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub area_budget: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub area_total: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub area_restricted: Rat,
    pub restricted_vertex_count: usize,
    pub saturated: SaturatedSummary,
    pub surgery: SurgeryLog,
    pub directions: Vec<DirectionStats>,
    pub cover_misses: Vec<usize>,
    /// `2(n−1)²d²`.
    #[serde(with = "crate::rational::serde_big")]
    pub final_bound: BigInt,
    /// `2(n−1)²(A + n(A/δ)²)²`.
    #[serde(with = "crate::rational::serde_rat")]
    pub apriori_bound: Rat,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Certificate {
    /// `#V=<#V(G|K°)> <= <2(n−1)²d²>`.
    pub fn final_line(&self) -> String {
        format!("#V={} <= {}", self.restricted_vertex_count, self.final_bound)
    }
}

/// The full pipeline: restriction, weight bounds, saturation, the area
/// identity, path families for `i = 1..n−1`, the `V₀` bounds and cover,
/// and the vertex bounds.
pub fn certify(g: &TropicalCurve, delta: &Rat, a: &Rat) -> Result<Certificate> {
    certify_with(g, delta, a, TieRule::SmallestId)
}

pub fn certify_with(g: &TropicalCurve, delta: &Rat, a: &Rat, tie: TieRule) -> Result<Certificate> {
    let n = g.dim();
    let k = Region::standard_simplex(n)?;
    let area_total = g.area()?;
    let gk = g.restrict(&k)?;
    let area_restricted = gk.area()?;
    let mut checks = vec![Check::rat("area_budget", &area_total, Op::Le, a)];
    checks.extend(weight_bounds_restricted(&gk, delta, a)?.checks);

    let (g2, log) = saturate(g, delta)?;
    checks.extend(log.checks.iter().filter(|c| c.name != "area_inflation").cloned());
    let a_over_delta = a / delta;
    let inflated = a + int(n as i64) * &a_over_delta * &a_over_delta;
    let inflation_rhs = &area_restricted + int(n as i64) * &a_over_delta * &a_over_delta;
    checks.push(Check::rat("area_inflation", &log.area_saturated, Op::Le, &inflation_rhs));
    checks.push(Check::rat("area_inflation_budget", &log.area_saturated, Op::Le, &inflated));

    let degrees = face_degrees(&g2)?;
    let ac = saturated_area_check(&g2)?;
    let d = ac.d.clone();
    checks.push(Check::flag("face_degrees_equal", degrees.iter().all(|x| *x == d)));
    checks.push(Check::rat("saturated_area", &ac.area, Op::Eq, &big_to_rat(&d)));

    let mut directions = Vec::new();
    let mut families = Vec::new();
    let v0_bound = BigInt::from(2) * &d * BigInt::from(n - 1);
    for axis in 0..n.saturating_sub(1) {
        let fam = path_family_for_face(&g2, axis, tie)?;
        let mut max_v0 = 0;
        for p in &fam.paths {
            max_v0 = max_v0.max(v0_set(p, &g2)?.len());
        }
        checks.push(Check::int(
            format!("paths_dir{}", axis + 1),
            &BigInt::from(fam.paths.len()),
            Op::Eq,
            &d,
        ));
        checks.push(Check::flag(format!("capacity_dir{}", axis + 1), fam.respects_capacity()));
        checks.push(Check::int(
            format!("v0_dir{}", axis + 1),
            &BigInt::from(max_v0),
            Op::Le,
            &v0_bound,
        ));
        directions.push(DirectionStats {
            direction: axis + 1,
            paths: fam.paths.len(),
            max_v0,
            v0_bound: v0_bound.clone(),
        });
        families.push(fam);
    }
    let cover = cover_check(&g2, &families)?;
    checks.push(Check::count("cover_misses", cover.misses.len(), Op::Eq, 0));

    let nm1 = BigInt::from(n - 1);
    let final_bound = BigInt::from(2) * &nm1 * &nm1 * &d * &d;
    let vr = gk.vertices().len();
    let vs = g2.vertices().len();
    checks.push(Check::int("vertex_bound_saturated", &BigInt::from(vs), Op::Le, &final_bound));
    let apriori_bound = int(2) * big_to_rat(&(&nm1 * &nm1)) * &inflated * &inflated;
    checks.push(Check::rat("vertex_bound_apriori", &int(vr as i64), Op::Le, &apriori_bound));
    checks.push(Check::int("vertex_bound", &BigInt::from(vr), Op::Le, &final_bound));

    Ok(Certificate {
        n,
        delta: delta.clone(),
        area_budget: a.clone(),
        area_total,
        area_restricted,
        restricted_vertex_count: vr,
        saturated: SaturatedSummary {
            d,
            area: ac.area,
            vertices: vs,
            vertices_without_p: log.vertices_saturated_without_p,
        },
        surgery: log,
        directions,
        cover_misses: cover.misses,
        final_bound,
        apriori_bound,
        pass: all_pass(&checks),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentEuler {
    pub vertices: usize,
    pub internal_edges: usize,
    pub b1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub components: usize,
    pub b1: usize,
    pub internal_edges: usize,
    pub vertex_count: usize,
    pub per_component: Vec<ComponentEuler>,
}

/// Components and first Betti number of the graph of declared vertices and
/// internal edges (segments joining two declared vertices).
pub fn first_betti(g: &TropicalCurve) -> Betti {
    let nv = g.vertices().len();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut internal = Vec::new();
    for e in g.edges() {
        let (Some(a), Some(b)) = (g.vertex_at(&e.tail), e.head().and_then(|h| g.vertex_at(h))) else {
            continue;
        };
        internal.push((a, b));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut roots: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();
    let ids: BTreeSet<usize> = roots.iter().copied().collect();
    let ids: Vec<usize> = ids.into_iter().collect();
    let mut per_component: Vec<ComponentEuler> = ids
        .iter()
        .map(|_| ComponentEuler {
            vertices: 0,
            internal_edges: 0,
            b1: 0,
        })
        .collect();
    for r in roots.iter_mut() {
        *r = ids.binary_search(r).expect("root listed");
        per_component[*r].vertices += 1;
    }
    for (a, _) in &internal {
        per_component[roots[*a]].internal_edges += 1;
    }
    for c in per_component.iter_mut() {
        // 1 − b₁ = V − E on each connected component
        c.b1 = c.internal_edges + 1 - c.vertices;
    }
    Betti {
        components: ids.len(),
        b1: per_component.iter().map(|c| c.b1).sum(),
        internal_edges: internal.len(),
        vertex_count: nv,
        per_component,
    }
}

/// `2π(d,n) + (n+1)d − 2` with `π(d,n) = m(m−1)/2·(n−1) + mε`,
/// `m = ⌊(d−1)/(n−1)⌋`, `ε = d−1−m(n−1)`. Conjectural.
pub fn castelnuovo_bound(d: &BigInt, n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::BadDimension(n));
    }
    if !d.is_positive() {
        return Err(Error::InvalidArgument(format!("degree must be at least 1, got {d}")));
    }
    let nm1 = BigInt::from(n - 1);
    let m = (d - 1) / &nm1;
    let eps = d - 1 - &m * &nm1;
    let pi = &m * (&m - 1) / 2 * &nm1 + &m * eps;
    Ok(BigInt::from(2) * pi + BigInt::from(n + 1) * d - 2)
}
