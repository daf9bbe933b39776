//! Structural validation of curves at two levels.
//!
//! `Strict` is the full definition of a tropical curve: closed in the
//! region, at least 3-valent vertices, weights parallel to edges, balanced,
//! and a genuine polyhedral complex (edges meet only at shared vertices).
//! `Lenient` keeps parallelism, balancing at declared vertices and region
//! containment, which is what restrictions and surgery outputs satisfy.

use std::fmt;

use num_traits::Zero;

use crate::curve::TropicalCurve;
use crate::edge::Extent;
use crate::rational::{
    big_to_rat, fmt_intvec, fmt_point, is_zero_intvec, parallel_coefficient, parallel_ints,
    sub_points, Point, Rat,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Outside,
    DuplicateVertex,
    NotParallel,
    Degenerate,
    Dangling,
    Valence,
    Unbalanced,
    Crossing,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Outside => "OUTSIDE",
            ViolationKind::DuplicateVertex => "DUPLICATE",
            ViolationKind::NotParallel => "NOT_PARALLEL",
            ViolationKind::Degenerate => "DEGENERATE",
            ViolationKind::Dangling => "DANGLING",
            ViolationKind::Valence => "VALENCE",
            ViolationKind::Unbalanced => "UNBALANCED",
            ViolationKind::Crossing => "CROSSING",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Vertex(v) => write!(f, "v{v}"),
            Subject::Edge(e) => write!(f, "e{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: Subject,
    pub detail: String,
}

/// Renders as `KIND id detail`, e.g. `UNBALANCED v0 (0,1)`.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind.as_str(), self.subject, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub level: Level,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

pub fn validate(g: &TropicalCurve, level: Level) -> ValidationReport {
    let strict = level == Level::Strict;
    let region = g.region();
    let mut out = Vec::new();
    let mut push = |kind, subject, detail: String| {
        out.push(Violation {
            kind,
            subject,
            detail,
        })
    };

    for (k, p) in g.vertices().iter().enumerate() {
        if !region.contains_interior(p) {
            push(ViolationKind::Outside, Subject::Vertex(k), fmt_point(p));
        }
        if g.vertex_at(p) != Some(k) {
            push(ViolationKind::DuplicateVertex, Subject::Vertex(k), fmt_point(p));
        }
    }

    let mut extents: Vec<(usize, Extent)> = Vec::new();
    for e in g.edges() {
        let subject = Subject::Edge(e.id);
        if let Some(h) = e.head() {
            if parallel_coefficient(&sub_points(h, &e.tail), &e.weight.vector()).is_none() {
                push(ViolationKind::NotParallel, subject, format!("weight {}", e.weight));
                continue;
            }
            if !region.contains_closed(&e.tail) || !region.contains_closed(h) {
                push(ViolationKind::Outside, subject, "segment leaves the region".into());
                continue;
            }
        } else if !region.contains_closed(&e.tail) {
            push(ViolationKind::Outside, subject, "ray tail outside the region".into());
            continue;
        }
        match e.extent(region) {
            Ok(ext) => extents.push((e.id, ext)),
            Err(_) => push(ViolationKind::Degenerate, subject, "empty or point extent".into()),
        }
    }

    if strict {
        for (id, ext) in &extents {
            for p in [ext.start(), ext.end()] {
                if region.contains_interior(&p) && g.vertex_at(&p).is_none() {
                    push(ViolationKind::Dangling, Subject::Edge(*id), fmt_point(&p));
                }
            }
        }
    }

    let exempt = if strict { Vec::new() } else { g.truncation_vertices() };
    for k in 0..g.vertices().len() {
        let inc = g.incidences(k).expect("vertex index in range");
        if strict && inc.len() < 3 {
            push(ViolationKind::Valence, Subject::Vertex(k), format!("{}", inc.len()));
        }
        if exempt.contains(&k) {
            continue;
        }
        let defect = g.check_balancing(k).expect("vertex index in range");
        if !is_zero_intvec(&defect) {
            push(ViolationKind::Unbalanced, Subject::Vertex(k), fmt_intvec(&defect));
        }
    }

    if strict {
        for (id, ext) in &extents {
            for (k, p) in g.vertices().iter().enumerate() {
                if ext.contains_in_interior(p) {
                    push(
                        ViolationKind::Crossing,
                        Subject::Edge(*id),
                        format!("passes through v{k}"),
                    );
                }
            }
        }
        for a in 0..extents.len() {
            for b in (a + 1)..extents.len() {
                let (ia, ea) = &extents[a];
                let (ib, eb) = &extents[b];
                match intersect(ea, eb) {
                    Meet::Disjoint => {}
                    Meet::Overlap => push(
                        ViolationKind::Crossing,
                        Subject::Edge(*ia),
                        format!("overlaps e{ib}"),
                    ),
                    Meet::Point { p, endpoint_of_both } => {
                        let in_open_region = region.contains_interior(&p);
                        let ok = !in_open_region
                            || (endpoint_of_both && g.vertex_at(&p).is_some());
                        if !ok {
                            push(
                                ViolationKind::Crossing,
                                Subject::Edge(*ia),
                                format!("e{ib} {}", fmt_point(&p)),
                            );
                        }
                    }
                }
            }
        }
    }

    out.sort_by(|x, y| (x.kind, x.subject).cmp(&(y.kind, y.subject)));
    ValidationReport {
        level,
        violations: out,
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Meet {
    Disjoint,
    /// Collinear overlap of positive length.
    Overlap,
    Point {
        p: Point,
        endpoint_of_both: bool,
    },
}

/// Exact intersection of two extents in ℝⁿ.
pub fn intersect(a: &Extent, b: &Extent) -> Meet {
    let n = a.origin.len();
    if parallel_ints(&a.step, &b.step) {
        let d = sub_points(&b.origin, &a.origin);
        let Some(alpha) = parallel_coefficient(&d, &a.step) else {
            return Meet::Disjoint;
        };
        // b.origin + t·b.step = a.origin + (alpha + beta·t)·a.step
        let k = a.step.iter().position(|x| !x.is_zero()).expect("nonzero step");
        let beta = big_to_rat(&b.step[k]) / big_to_rat(&a.step[k]);
        let s1 = &alpha + &beta * &b.t0;
        let s2 = &alpha + &beta * &b.t1;
        let (lo_b, hi_b) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        let lo = if a.t0 > lo_b { a.t0.clone() } else { lo_b };
        let hi = if a.t1 < hi_b { a.t1.clone() } else { hi_b };
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Meet::Disjoint,
            std::cmp::Ordering::Less => Meet::Overlap,
            std::cmp::Ordering::Equal => {
                let p = a.point(&lo);
                let tb = b.param_of(&p).expect("collinear");
                Meet::Point {
                    endpoint_of_both: (lo == a.t0 || lo == a.t1) && (tb == b.t0 || tb == b.t1),
                    p,
                }
            }
        };
    }
    // solve a.origin + s·u = b.origin + t·v on two independent coordinates
    let u: Vec<Rat> = a.step.iter().map(big_to_rat).collect();
    let v: Vec<Rat> = b.step.iter().map(big_to_rat).collect();
    let rhs = sub_points(&b.origin, &a.origin);
    for i in 0..n {
        for j in (i + 1)..n {
            let det = &u[i] * -&v[j] - &u[j] * -&v[i];
            if det.is_zero() {
                continue;
            }
            let s = (&rhs[i] * -&v[j] - &rhs[j] * -&v[i]) / &det;
            let t = (&u[i] * &rhs[j] - &u[j] * &rhs[i]) / &det;
            let pa = a.point(&s);
            if pa != b.point(&t) {
                return Meet::Disjoint;
            }
            if s < a.t0 || s > a.t1 || t < b.t0 || t > b.t1 {
                return Meet::Disjoint;
            }
            return Meet::Point {
                endpoint_of_both: (s == a.t0 || s == a.t1) && (t == b.t0 || t == b.t1),
                p: pa,
            };
        }
    }
    unreachable!("non-parallel steps have an independent pair of coordinates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::Edge;
    use crate::rational::{int_point, ints, rat};
    use crate::region::Region;
    use crate::weight::canonical_weight;

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
    fn tropical_line_passes_strict() {
        let r = validate(&line(), Level::Strict);
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn two_valent_vertex_fails_strict_only() {
        let b = Region::axis_box(&int_point(&[-2, -2]), &int_point(&[2, 2])).unwrap();
        let o = int_point(&[0, 0]);
        let edges = vec![
            Edge::ray_along(0, o.clone(), &ints(&[1, 0])).unwrap(),
            Edge::ray_along(1, o.clone(), &ints(&[-1, 0])).unwrap(),
        ];
        let g = TropicalCurve::new(b, vec![o], edges).unwrap();
        let strict = validate(&g, Level::Strict);
        assert!(strict.has(ViolationKind::Valence));
        assert!(validate(&g, Level::Lenient).passed());
    }

    #[test]
    fn crossing_edges_fail_strict_only() {
        let b = Region::axis_box(&int_point(&[-2, -2]), &int_point(&[2, 2])).unwrap();
        let w = |v: &[i64]| canonical_weight(&ints(v)).unwrap();
        let edges = vec![
            Edge::segment(0, int_point(&[-2, 0]), int_point(&[2, 0]), w(&[1, 0])),
            Edge::segment(1, int_point(&[0, -2]), int_point(&[0, 2]), w(&[0, 1])),
        ];
        let g = TropicalCurve::new(b, vec![], edges).unwrap();
        let strict = validate(&g, Level::Strict);
        assert_eq!(strict.violations.len(), 1);
        assert_eq!(strict.violations[0].to_string(), "CROSSING e0 e1 (0,0)");
        assert!(validate(&g, Level::Lenient).passed());
    }

    #[test]
    fn unbalanced_line_is_reported() {
        let b = Region::axis_box(&int_point(&[-2, -2]), &int_point(&[2, 2])).unwrap();
        let o = int_point(&[0, 0]);
        let edges = vec![
            Edge::ray_along(0, o.clone(), &ints(&[1, 0])).unwrap(),
            Edge::ray_along(1, o.clone(), &ints(&[-1, 0])).unwrap(),
            Edge::ray_along(2, o.clone(), &ints(&[0, 1])).unwrap(),
        ];
        let g = TropicalCurve::new(b, vec![o], edges).unwrap();
        let r = validate(&g, Level::Lenient);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].to_string(), "UNBALANCED v0 (0,1)");
    }

    #[test]
    fn dangling_endpoint_fails_strict() {
        let k = Region::standard_simplex(2).unwrap();
        let w = canonical_weight(&ints(&[1, 0])).unwrap();
        let e = Edge::segment(0, vec![rat(0, 1), rat(1, 4)], vec![rat(1, 4), rat(1, 4)], w);
        let g = TropicalCurve::new(k, vec![], vec![e]).unwrap();
        assert!(validate(&g, Level::Strict).has(ViolationKind::Dangling));
        assert!(validate(&g, Level::Lenient).passed());
    }

    #[test]
    fn intersect_cases() {
        let mk = |o: [i64; 2], s: [i64; 2], t1: i64| Extent {
            origin: int_point(&o),
            step: ints(&s),
            t0: rat(0, 1),
            t1: rat(t1, 1),
        };
        assert_eq!(intersect(&mk([0, 0], [1, 0], 2), &mk([0, 1], [1, 0], 2)), Meet::Disjoint);
        assert_eq!(intersect(&mk([0, 0], [1, 0], 2), &mk([1, 0], [1, 0], 2)), Meet::Overlap);
        assert_eq!(
            intersect(&mk([0, 0], [1, 0], 2), &mk([2, 0], [0, 1], 2)),
            Meet::Point {
                p: int_point(&[2, 0]),
                endpoint_of_both: true
            }
        );
        assert_eq!(
            intersect(&mk([0, 0], [1, 1], 2), &mk([2, 0], [-1, 1], 2)),
            Meet::Point {
                p: int_point(&[1, 1]),
                endpoint_of_both: false
            }
        );
        assert_eq!(intersect(&mk([0, 0], [1, 1], 1), &mk([3, 0], [-1, 1], 1)), Meet::Disjoint);
    }
}
