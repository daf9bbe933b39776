//! Deterministic curve generators.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::curve::{TropicalCurve, TRUNCATION_POINTS};
use crate::edge::{Edge, EdgeKind};
use crate::error::{Error, Result};
use crate::rational::{fmt_rat, int, ints, parallel_ints, point_along, rat, Point, Rat};
use crate::region::Region;
use crate::validate::{intersect, validate, Level, Meet};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GallerySpec {
    TropicalLine { n: usize, apex: Point },
    Superposition(Vec<GallerySpec>),
    Example7 { levels: u32 },
    RandomBalanced { n: usize, seed: u64, complexity: usize },
    RandomTree { n: usize, seed: u64, complexity: usize, delta: Rat },
}

impl GallerySpec {
    pub fn generate(&self) -> Result<TropicalCurve> {
        match self {
            GallerySpec::TropicalLine { n, apex } => gen_tropical_line(*n, apex),
            GallerySpec::Superposition(parts) => {
                let curves = parts.iter().map(|s| s.generate()).collect::<Result<Vec<_>>>()?;
                superpose(&curves)
            }
            GallerySpec::Example7 { levels } => gen_example7(*levels),
            GallerySpec::RandomBalanced { n, seed, complexity } => {
                gen_random_balanced(*n, *seed, *complexity)
            }
            GallerySpec::RandomTree {
                n,
                seed,
                complexity,
                delta,
            } => gen_random_tree(*n, *seed, *complexity, delta),
        }
    }
}

fn metadata(pairs: Vec<(&str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn point_json(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(|c| Value::String(fmt_rat(c))).collect())
}

fn line_edges(apex: &Point, mult: i64, first_id: usize) -> Vec<Edge> {
    let n = apex.len();
    let mut edges: Vec<Edge> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(-mult);
            Edge::ray_along(first_id + i, apex.clone(), &v).expect("nonzero")
        })
        .collect();
    edges.push(Edge::ray_along(first_id + n, apex.clone(), &vec![BigInt::from(mult); n]).expect("nonzero"));
    edges
}

/// The tropical line in `K` with vertex at `apex`.
pub fn gen_tropical_line(n: usize, apex: &[Rat]) -> Result<TropicalCurve> {
    let k = Region::standard_simplex(n)?;
    if apex.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: apex.len(),
        });
    }
    if !k.contains_interior(apex) {
        return Err(Error::ApexOutside(crate::rational::fmt_point(apex)));
    }
    let apex = apex.to_vec();
    let edges = line_edges(&apex, 1, 0);
    Ok(TropicalCurve::new(k, vec![apex], edges)?
        .with_metadata(metadata(vec![("generator", json!("line"))])))
}

/// Levels `1..=N` of the curve in the open unit square with vertices
/// `(4⁻ⁿ,4⁻ⁿ)`. The level-`N` vertex is unbalanced and recorded under
/// [`TRUNCATION_POINTS`].
pub fn gen_example7(levels: u32) -> Result<TropicalCurve> {
    if levels == 0 {
        return Err(Error::InvalidArgument("levels must be at least 1".into()));
    }
    let region = Region::axis_box(&[int(0), int(0)], &[int(1), int(1)])?;
    let corner = |n: u32| {
        let c = Rat::new(BigInt::one(), BigInt::from(4).pow(n));
        vec![c.clone(), c]
    };
    let two = BigInt::from(2);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for n in 1..=levels {
        let p = corner(n);
        let m = two.pow(n - 1);
        let id = edges.len();
        edges.push(Edge::segment_weighted(id, p.clone(), corner(n - 1), &[m.clone(), m.clone()])?);
        edges.push(Edge::ray_along(id + 1, p.clone(), &[-&m, BigInt::zero()])?);
        edges.push(Edge::ray_along(id + 2, p.clone(), &[BigInt::zero(), -&m])?);
        edges.push(Edge::ray_along(id + 3, p.clone(), &[-&m * 2, &m * 4])?);
        edges.push(Edge::ray_along(id + 4, p.clone(), &[&m * 4, -&m * 2])?);
        vertices.push(p);
    }
    let deepest = point_json(&corner(levels));
    Ok(TropicalCurve::new(region, vertices, edges)?.with_metadata(metadata(vec![
        ("generator", json!("example7")),
        ("levels", json!(levels)),
        (TRUNCATION_POINTS, json!([deepest])),
    ])))
}

/// Joins curves living in the same region, turning crossings into vertices.
pub fn superpose(curves: &[TropicalCurve]) -> Result<TropicalCurve> {
    let Some(first) = curves.first() else {
        return Err(Error::InvalidArgument("nothing to superpose".into()));
    };
    let region = first.region().clone();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for g in curves {
        if g.region() != &region {
            return Err(Error::InvalidArgument("superposed curves must share a region".into()));
        }
        vertices.extend(g.vertices().iter().cloned());
        for e in g.edges() {
            let mut e = e.clone();
            e.id = edges.len();
            edges.push(e);
        }
    }
    planarize(region, vertices, edges)
}

/// Splits edges at their mutual intersection points and declares those
/// points as vertices. Fails on collinear overlaps and on meetings at the
/// region boundary.
pub fn planarize(region: Region, vertices: Vec<Point>, edges: Vec<Edge>) -> Result<TropicalCurve> {
    let exts = edges.iter().map(|e| e.extent(&region)).collect::<Result<Vec<_>>>()?;
    let mut splits: Vec<Vec<Rat>> = vec![Vec::new(); edges.len()];
    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut all_vertices = Vec::new();
    for v in vertices {
        if seen.insert(v.clone()) {
            all_vertices.push(v);
        }
    }
    for i in 0..exts.len() {
        for j in (i + 1)..exts.len() {
            let p = match intersect(&exts[i], &exts[j]) {
                Meet::Disjoint => continue,
                Meet::Overlap => {
                    return Err(Error::Generator(format!(
                        "edges e{} and e{} overlap",
                        edges[i].id, edges[j].id
                    )))
                }
                Meet::Point { p, .. } => p,
            };
            if region.on_boundary(&p) {
                return Err(Error::Generator(format!(
                    "edges e{} and e{} meet on the boundary",
                    edges[i].id, edges[j].id
                )));
            }
            for k in [i, j] {
                let t = exts[k].param_of(&p).expect("point lies on the edge");
                if t > exts[k].t0 && t < exts[k].t1 {
                    splits[k].push(t);
                    if seen.insert(p.clone()) {
                        all_vertices.push(p.clone());
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for ((e, ext), mut cuts) in edges.iter().zip(&exts).zip(splits) {
        cuts.sort();
        cuts.dedup();
        let mut from = e.tail.clone();
        for t in &cuts {
            let q = ext.point(t);
            out.push(Edge::segment(out.len(), from, q.clone(), e.weight.clone()));
            from = q;
        }
        let last = match &e.kind {
            EdgeKind::Segment { head } => Edge::segment(out.len(), from, head.clone(), e.weight.clone()),
            EdgeKind::Ray { sign } => Edge::ray(out.len(), from, *sign, e.weight.clone()),
        };
        out.push(last);
    }
    TropicalCurve::new(region, all_vertices, out)
}

fn random_rat(rng: &mut ChaCha8Rng, lo_den: i64, hi_den: i64) -> (i64, i64) {
    let den = rng.gen_range(lo_den..=hi_den);
    (rng.gen_range(1..den), den)
}

/// A random point of `K°` with coordinates of small height.
fn random_interior_point(rng: &mut ChaCha8Rng, n: usize) -> Point {
    loop {
        let p: Point = (0..n)
            .map(|_| {
                let (a, b) = random_rat(rng, 7, 61);
                rat(a, b)
            })
            .collect();
        if p.iter().sum::<Rat>() < Rat::one() {
            return p;
        }
    }
}

fn general_position(apexes: &[Point], p: &[Rat]) -> bool {
    apexes.iter().all(|a| {
        let diff: Vec<Rat> = a.iter().zip(p).map(|(x, y)| x - y).collect();
        a.iter().zip(p).all(|(x, y)| x != y) && diff.iter().any(|d| *d != diff[0])
    })
}

/// A superposition of `complexity` translated tropical lines in `K` with
/// random apexes and multiplicities in `{1,2}`. Saturated of degree equal to
/// the total multiplicity.
pub fn gen_random_balanced(n: usize, seed: u64, complexity: usize) -> Result<TropicalCurve> {
    if n < 2 {
        return Err(Error::BadDimension(n));
    }
    if complexity == 0 {
        return Err(Error::InvalidArgument("complexity must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = Region::standard_simplex(n)?;
    for _ in 0..MAX_ATTEMPTS {
        let mut apexes: Vec<Point> = Vec::new();
        while apexes.len() < complexity {
            let p = random_interior_point(&mut rng, n);
            if general_position(&apexes, &p) {
                apexes.push(p);
            }
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for a in &apexes {
            let m = rng.gen_range(1..=2);
            edges.extend(line_edges(a, m, edges.len()));
            vertices.push(a.clone());
        }
        if let Ok(g) = planarize(k.clone(), vertices, edges) {
            return Ok(g.with_metadata(metadata(vec![
                ("generator", json!("random")),
                ("seed", json!(seed)),
                ("complexity", json!(complexity)),
            ])));
        }
    }
    Err(Error::Generator(format!("seed {seed}: no general-position superposition found")))
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().any(|x| *x != 0) {
            return ints(&v);
        }
    }
}

fn same_ray(a: &[BigInt], b: &[BigInt]) -> bool {
    parallel_ints(a, b) && a.iter().zip(b).all(|(x, y)| x.signum() == y.signum())
}

fn try_tree(rng: &mut ChaCha8Rng, n: usize, complexity: usize, u: &Region, k: &Region) -> Option<TropicalCurve> {
    let root = random_interior_point(rng, n);
    let mut vertices = vec![root.clone()];
    let mut edges: Vec<Edge> = Vec::new();
    // (vertex, sum the new outward vectors must reach, direction back to parent)
    let mut pending: Vec<(Point, Vec<BigInt>, Option<Vec<BigInt>>)> = vec![(root, vec![BigInt::zero(); n], None)];
    while let Some((p, need, back)) = pending.pop() {
        let count = if back.is_some() { rng.gen_range(2..=3) } else { rng.gen_range(3..=4) };
        let mut out: Vec<Vec<BigInt>> = (0..count - 1).map(|_| random_direction(rng, n)).collect();
        let mut last = need.clone();
        for v in &out {
            for (l, x) in last.iter_mut().zip(v) {
                *l -= x;
            }
        }
        if last.iter().all(|x| x.is_zero()) {
            return None;
        }
        out.push(last);
        let mut all: Vec<&Vec<BigInt>> = out.iter().collect();
        all.extend(back.iter());
        for a in 0..all.len() {
            for b in (a + 1)..all.len() {
                if same_ray(all[a], all[b]) {
                    return None;
                }
            }
        }
        for w in out {
            let grow = vertices.len() < complexity && rng.gen_bool(0.6);
            if grow {
                let max = w.iter().map(|x| x.abs()).max().expect("nonempty");
                let t = Rat::new(BigInt::one(), BigInt::from(rng.gen_range(3..=9)) * max);
                let q = point_along(&p, &w, &t);
                if k.contains_interior(&q) && !vertices.contains(&q) {
                    edges.push(Edge::segment_weighted(edges.len(), p.clone(), q.clone(), &w).ok()?);
                    vertices.push(q.clone());
                    let back: Vec<BigInt> = w.iter().map(|x| -x).collect();
                    pending.push((q, w, Some(back)));
                    continue;
                }
            }
            edges.push(Edge::ray_along(edges.len(), p.clone(), &w).ok()?);
        }
    }
    let g = planarize(u.clone(), vertices, edges).ok()?;
    if !validate(&g, Level::Strict).passed() || g.restrict(k).is_err() {
        return None;
    }
    Some(g)
}

/// A random balanced tree in `U′_δ` whose vertices lie in `K°`. Edges leave
/// `K` in random directions, so the result is typically not saturated.
/// Crossings created by the random layout become vertices.
pub fn gen_random_tree(n: usize, seed: u64, complexity: usize, delta: &Rat) -> Result<TropicalCurve> {
    if n < 2 {
        return Err(Error::BadDimension(n));
    }
    if complexity == 0 {
        return Err(Error::InvalidArgument("complexity must be at least 1".into()));
    }
    let u = Region::dilated_simplex(n, delta)?;
    let k = Region::standard_simplex(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(g) = try_tree(&mut rng, n, complexity, &u, &k) {
            return Ok(g.with_metadata(metadata(vec![
                ("generator", json!("tree")),
                ("seed", json!(seed)),
                ("complexity", json!(complexity)),
                ("delta", json!(fmt_rat(delta))),
            ])));
        }
    }
    Err(Error::Generator(format!("seed {seed}: no admissible tree found")))
}

/// The same curve with ambient region `U′_δ` (rays extend to its boundary).
pub fn in_dilated_simplex(g: &TropicalCurve, delta: &Rat) -> Result<TropicalCurve> {
    g.with_region(Region::dilated_simplex(g.dim(), delta)?)
}
