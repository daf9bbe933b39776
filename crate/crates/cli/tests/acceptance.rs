//! One line per acceptance criterion: `ACCEPTANCE [k] <name> PASS|FAIL <detail>`.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropcurve::certify::{castelnuovo_bound, certify};
use tropcurve::crossing::global_balance;
use tropcurve::document::{parse_curve, write_curve};
use tropcurve::edge::Edge;
use tropcurve::gallery::{gen_example7, gen_random_balanced, gen_random_tree, gen_tropical_line, in_dilated_simplex};
use tropcurve::paths::{cover_check, extract_paths, flow_lower_bound, path_family_for_face, v0_bound_check, TieRule};
use tropcurve::rational::{int, ints, point_along, rat, Rat};
use tropcurve::saturated::{critical_slices, degree, face_degrees, is_saturated, measure_density, saturated_area_check};
use tropcurve::saturation::{decompose, saturate};
use tropcurve::{Error, FaceId, Region, TropicalCurve};

const BIN: &str = env!("CARGO_BIN_EXE_tropcurve");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
const TIES: [TieRule; 2] = [TieRule::SmallestId, TieRule::LexDirection];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

struct Corpus {
    /// Saturated superpositions in `K`.
    saturated: Vec<TropicalCurve>,
    /// Non-saturated balanced trees in `U′_δ`.
    trees: Vec<TropicalCurve>,
    delta: Rat,
}

fn corpus() -> Corpus {
    let saturated = (0..200u64)
        .map(|i| gen_random_balanced(2 + (i % 3) as usize, i, 1 + ((i / 3) % 3) as usize).expect("generator"))
        .collect();
    let delta = rat(1, 4);
    let k = |n| Region::standard_simplex(n).unwrap();
    let mut trees = Vec::new();
    let mut seed = 0u64;
    while trees.len() < 100 {
        let n = 2 + (seed % 3) as usize;
        let g = gen_random_tree(n, seed, 1 + (seed % 4) as usize, &delta).expect("generator");
        if !is_saturated(&g.restrict(&k(n)).unwrap()).unwrap().saturated {
            trees.push(g);
        }
        seed += 1;
    }
    Corpus {
        saturated,
        trees,
        delta,
    }
}

fn run_cli(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(BIN)
        .args(args)
        .env("NO_COLOR", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn c1_example7_area() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in 1..=32u32 {
        let start = Instant::now();
        let (code, doc, _) = run_cli(&["gen", "example7", "--levels", &n.to_string()], None);
        ensure(code == 0, || format!("gen exit {code} at N={n}"))?;
        let (code, out, _) = run_cli(&["area", "-"], Some(&doc));
        slowest = slowest.max(start.elapsed());
        ensure(code == 0, || format!("area exit {code} at N={n}"))?;
        let expected = int(14) * (int(1) - Rat::new(BigInt::one(), BigInt::from(2).pow(n)));
        ensure(out.trim() == expected.to_string(), || format!("N={n}: got {} want {expected}", out.trim()))?;
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest run {slowest:?}"))?;
    Ok(format!("N=1..32 exact; N=32 area {}; slowest {slowest:?}", gen_example7(32).unwrap().area().unwrap()))
}

fn c2_saturated_degree_area(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut max_d = BigInt::zero();
    for (k, g) in c.saturated.iter().enumerate() {
        let degrees = face_degrees(g).map_err(err)?;
        ensure(degrees.iter().all(|x| *x == degrees[0]), || format!("instance {k}: degrees {degrees:?}"))?;
        let ac = saturated_area_check(g).map_err(err)?;
        ensure(ac.equal, || format!("instance {k}: area {} vs d {}", ac.area, ac.d))?;
        max_d = max_d.max(ac.d);
    }
    ensure(max_d <= BigInt::from(6), || format!("degree {max_d} exceeds 6"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{} instances, n in {{2,3,4}}, d <= {max_d}, {t:?}", c.saturated.len()))
}

fn random_region(rng: &mut ChaCha8Rng, n: usize) -> Option<Region> {
    let den = rng.gen_range(8 * n as i64..120);
    if rng.gen_bool(0.5) {
        let lo: Vec<i64> = (0..n).map(|_| rng.gen_range(1..den / n as i64)).collect();
        let hi: Vec<i64> = lo.iter().map(|l| l + rng.gen_range(1..=den / (2 * n as i64))).collect();
        if hi.iter().sum::<i64>() >= den {
            return None;
        }
        let to_rat = |v: &[i64]| v.iter().map(|x| rat(*x, den)).collect::<Vec<_>>();
        Region::axis_box(&to_rat(&lo), &to_rat(&hi)).ok()
    } else {
        // a simplex {x_i ≥ c_i, Σx ≤ s} strictly inside K
        let mut offsets: Vec<Rat> = vec![rat(rng.gen_range(1..den / 4), den)];
        offsets.extend((0..n).map(|_| rat(rng.gen_range(1..den / (2 * n as i64)), den)));
        Region::shrunk_simplex(n, &offsets).ok()
    }
}

fn c3_global_balance(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut tested = 0;
    for (k, g) in c.saturated.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        let mut found = 0;
        for _ in 0..2000 {
            if found == 20 {
                break;
            }
            let Some(w) = random_region(&mut rng, g.dim()) else { continue };
            match global_balance(g, &w) {
                Ok(sum) => {
                    ensure(sum.iter().all(Zero::is_zero), || format!("instance {k}: sum {sum:?}"))?;
                    found += 1;
                }
                Err(Error::NonTransversal(_) | Error::VertexOnBoundary(_)) => {}
                Err(e) => return Err(format!("instance {k}: {e}")),
            }
        }
        ensure(found == 20, || format!("instance {k}: only {found} admissible regions"))?;
        tested += found;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{tested} (instance, region) pairs, all zero, {t:?}"))
}

fn c4_density(c: &Corpus) -> Outcome {
    let mut slices = 0;
    for (k, g) in c.saturated.iter().enumerate() {
        for axis in 0..g.dim() {
            for z in critical_slices(g, axis).map_err(err)? {
                let d = measure_density(g, axis, &z).map_err(err)?;
                ensure(d.density == d.predicted, || {
                    format!("instance {k} dir {} at {z}: {} vs {}", axis + 1, d.density, d.predicted)
                })?;
                slices += 1;
            }
        }
    }
    Ok(format!("{slices} inter-critical midpoints exact"))
}

fn c5_paths(c: &Corpus) -> Outcome {
    let mut paths = 0;
    let mut calls = 0;
    for (k, g) in c.saturated.iter().enumerate() {
        let d = degree(g).map_err(err)?;
        for axis in 0..g.dim() {
            for tie in TIES {
                let fam = path_family_for_face(g, axis, tie).map_err(|e| format!("instance {k}: {e}"))?;
                ensure(BigInt::from(fam.paths.len()) == d, || format!("instance {k}: {} paths", fam.paths.len()))?;
                ensure(fam.respects_capacity(), || format!("instance {k}: capacity exceeded"))?;
                for p in &fam.paths {
                    ensure(p.is_monotone(g).map_err(err)?, || format!("instance {k}: non-monotone path"))?;
                }
                ensure(fam == path_family_for_face(g, axis, tie).map_err(err)?, || {
                    format!("instance {k}: nondeterministic")
                })?;
                paths += fam.paths.len();
                // single-edge extraction from every crossing of {x_axis = 0}
                let hits = is_saturated(g).map_err(err)?.hits;
                for h in hits.iter().filter(|h| h.face == Some(FaceId::for_axis(axis))) {
                    let f = extract_paths(g, g.region(), h.hit.edge, axis, tie)
                        .map_err(|e| format!("instance {k} e{}: {e}", h.hit.edge))?;
                    ensure(f.respects_capacity(), || format!("instance {k}: capacity exceeded"))?;
                    calls += 1;
                }
            }
        }
    }
    Ok(format!("{paths} family paths and {calls} single-edge extractions, both tie rules"))
}

fn c6_vertex_bounds(c: &Corpus) -> Outcome {
    let mut max_v0 = 0;
    for (k, g) in c.saturated.iter().enumerate() {
        let n = g.dim();
        let d = degree(g).map_err(err)?;
        let mut families = Vec::new();
        for axis in 0..n - 1 {
            let fam = path_family_for_face(g, axis, TieRule::SmallestId).map_err(err)?;
            for p in &fam.paths {
                let b = v0_bound_check(p, g, &d).map_err(err)?;
                ensure(b.pass, || format!("instance {k}: |V0| {} > {}", b.count, b.bound))?;
                max_v0 = max_v0.max(b.count);
            }
            families.push(fam);
        }
        let cover = cover_check(g, &families).map_err(err)?;
        ensure(cover.covered, || format!("instance {k}: uncovered vertices {:?}", cover.misses))?;
        let bound = BigInt::from(2 * (n - 1) * (n - 1)) * &d * &d;
        ensure(BigInt::from(g.vertices().len()) <= bound, || {
            format!("instance {k}: #V {} > {bound}", g.vertices().len())
        })?;
    }
    Ok(format!("V0 <= 2d(n-1), cover complete, #V <= 2(n-1)^2 d^2; largest |V0| {max_v0}"))
}

fn c7_flow(c: &Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut equal = 0;
    let mut total = 0;
    // equality witnesses: straight edges of weight m·e_i across K
    for k in 0..30 {
        let n = 2 + k % 3;
        let axis = k % n;
        let m = 1 + (k as i64 % 4);
        let mut foot: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(1..8), 8 * n as i64)).collect();
        foot[axis] = Rat::zero();
        let mut w = vec![BigInt::zero(); n];
        w[axis] = BigInt::from(m);
        let top_t = (int(1) - foot.iter().sum::<Rat>()) / int(m);
        let top = point_along(&foot, &w, &top_t);
        let k_region = Region::standard_simplex(n).unwrap();
        let g = TropicalCurve::new(k_region, vec![], vec![Edge::segment_weighted(0, foot.clone(), top, &w).unwrap()])
            .unwrap();
        let center = point_along(&foot, &w, &(top_t / int(3)));
        let f = flow_lower_bound(&g, 0, axis, &center, &rat(1, 64)).map_err(err)?;
        ensure(f.pass && f.area == f.bound, || format!("witness {k}: {} vs {}", f.area, f.bound))?;
        equal += 1;
        total += 1;
    }
    // boxes sitting on random edges of the tree corpus
    let scale = rat(1, 64);
    'outer: for (k, g) in c.trees.iter().enumerate().cycle() {
        for e in g.edges() {
            if total == 100 {
                break 'outer;
            }
            let axis = rng.gen_range(0..g.dim());
            if e.weight.component_abs(axis).is_zero() {
                continue;
            }
            let ext = g.extent(e.id).map_err(err)?;
            let t = &ext.t0 + (&ext.t1 - &ext.t0) * rat(rng.gen_range(1..8), 8);
            let center = ext.point(&t);
            match flow_lower_bound(g, e.id, axis, &center, &scale) {
                Ok(f) => {
                    ensure(f.pass, || format!("tree {k} e{}: area {} < {}", e.id, f.area, f.bound))?;
                    if f.area == f.bound {
                        equal += 1;
                    }
                    total += 1;
                }
                Err(Error::PreconditionViolated(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!("{total} instances, {equal} attaining equality"))
}

fn c8_surgery(c: &Corpus) -> Outcome {
    let mut modified = 0;
    for (k, g) in c.trees.iter().enumerate() {
        let (g2, log) = saturate(g, &c.delta).map_err(|e| format!("tree {k}: {e}"))?;
        ensure(is_saturated(&g2).map_err(err)?.saturated, || format!("tree {k}: not saturated"))?;
        ensure(log.vertices_saturated >= log.vertices_restricted, || format!("tree {k}: vertex count dropped"))?;
        let a = g.area().map_err(err)?;
        let a_over_delta = &a / &c.delta;
        let rhs = &log.area_restricted + int(g.dim() as i64) * &a_over_delta * &a_over_delta;
        ensure(log.area_saturated <= rhs, || format!("tree {k}: area {} > {rhs}", log.area_saturated))?;
        ensure(log.checks.iter().all(|c| c.pass), || format!("tree {k}: surgery check failed"))?;
        if !log.entries.is_empty() {
            modified += 1;
        }
    }
    Ok(format!("{} non-saturated instances, {modified} needed surgery", c.trees.len()))
}

fn c9_decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=6);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
        let d = decompose(&ints(&w));
        ensure(d.reconstruct() == ints(&w), || format!("{w:?}: reconstruction"))?;
        ensure(d.a.iter().all(|x| !x.is_negative()), || format!("{w:?}: negative entry"))?;
        ensure(d.a.iter().min().is_some_and(Zero::is_zero), || format!("{w:?}: min a != 0"))?;
    }
    // every a in [0,10]^{n+1} with a zero entry, grouped by Σ aᵢe′ᵢ
    let mut checked = 0;
    for n in 1..=4usize {
        let mut preimages = std::collections::HashMap::<Vec<i64>, Vec<Vec<i64>>>::new();
        let mut a = vec![0i64; n + 1];
        loop {
            if a.contains(&0) {
                let w: Vec<i64> = (0..n).map(|j| a[0] - a[j + 1]).collect();
                if w.iter().all(|x| x.abs() <= 5) {
                    preimages.entry(w).or_default().push(a.clone());
                }
            }
            let mut k = 0;
            while k <= n && a[k] == 10 {
                a[k] = 0;
                k += 1;
            }
            if k > n {
                break;
            }
            a[k] += 1;
        }
        ensure(preimages.len() == 11usize.pow(n as u32), || format!("n={n}: {} vectors hit", preimages.len()))?;
        for (w, sols) in &preimages {
            ensure(sols.len() == 1, || format!("{w:?}: {} decompositions", sols.len()))?;
            ensure(decompose(&ints(w)).a == ints(&sols[0]), || format!("{w:?}: differs from brute force"))?;
            checked += 1;
        }
    }
    Ok(format!("10^4 random vectors; {checked} vectors matched the brute-force oracle"))
}

fn c10_certificate(c: &Corpus) -> Outcome {
    let mut runs = 0;
    let line = in_dilated_simplex(&gen_tropical_line(2, &[rat(1, 3), rat(1, 3)]).unwrap(), &c.delta).map_err(err)?;
    let cert = certify(&line, &c.delta, &int(2)).map_err(err)?;
    ensure(cert.final_line() == "#V=1 <= 2", || cert.final_line())?;
    let embedded = c.saturated.iter().map(|g| in_dilated_simplex(g, &c.delta).unwrap());
    for (k, g) in embedded.chain(c.trees.iter().cloned()).chain([line]).enumerate() {
        let a = g.area().map_err(err)?;
        let cert = certify(&g, &c.delta, &a).map_err(|e| format!("instance {k}: {e}"))?;
        let failed: Vec<String> = cert.checks.iter().filter(|c| !c.pass).map(|c| c.to_string()).collect();
        ensure(cert.pass, || format!("instance {k}: {failed:?}"))?;
        ensure(Rat::from_integer(BigInt::from(cert.restricted_vertex_count)) <= cert.apriori_bound, || {
            format!("instance {k}: a-priori bound")
        })?;
        runs += 1;
    }
    Ok(format!("{runs} certificates pass, including a-priori bound 2(n-1)^2(A+n(A/delta)^2)^2"))
}

fn c11_castelnuovo() -> Outcome {
    for (d, n, expected) in [(1, 2, "1"), (3, 2, "9"), (1, 5, "4"), (7, 3, "38")] {
        let v = castelnuovo_bound(&BigInt::from(d), n).map_err(err)?;
        ensure(v.to_string() == expected, || format!("({d},{n}): {v}"))?;
        let (code, out, _) = run_cli(&["castelnuovo", "--degree", &d.to_string(), "--dim", &n.to_string()], None);
        ensure(code == 0 && out.trim() == format!("castelnuovo_bound {expected} (conjectural)"), || out.clone())?;
    }
    Ok("(1,2)=1 (3,2)=9 (1,5)=4 (7,3)=38, labelled conjectural".into())
}

fn c12_cli(c: &Corpus) -> Outcome {
    let mut docs = 0;
    let gallery = [gen_example7(1).unwrap(), gen_example7(32).unwrap()];
    for g in c.saturated.iter().chain(&c.trees).chain(&gallery) {
        let text = write_curve(g);
        let back = parse_curve(&text).map_err(|e| e.to_string())?;
        ensure(&back == g && write_curve(&back) == text, || "round trip differs".into())?;
        docs += 1;
    }
    let (code, text, _) = run_cli(&["gen", "random", "--n", "3", "--seed", "4", "--complexity", "3"], None);
    ensure(code == 0 && write_curve(&parse_curve(&text).unwrap()) == text, || "CLI document not canonical".into())?;
    let fixture = |name: &str| format!("{FIXTURES}/{name}");
    let cases: [(Vec<String>, i32, &str); 6] = [
        (vec!["validate".into(), fixture("line2.json"), "--strict".into()], 0, ""),
        (vec!["validate".into(), fixture("unbalanced.json")], 2, "UNBALANCED v0 (0,1)"),
        (vec!["validate".into(), fixture("malformed.json")], 1, ""),
        (
            vec![
                "certify".into(),
                fixture("line2.json"),
                "--delta".into(),
                "1/4".into(),
                "--area-budget".into(),
                "1/2".into(),
            ],
            2,
            "CHECK area_budget 1 <= 1/2 FAIL",
        ),
        (
            vec!["paths".into(), fixture("stuck.json"), "--dir".into(), "1".into()],
            3,
            "",
        ),
        (vec!["area".into(), "--bogus".into()], 1, ""),
    ];
    for (args, want, needle) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, _) = run_cli(&args, None);
        ensure(code == *want, || format!("{args:?}: exit {code}, expected {want}"))?;
        ensure(needle.is_empty() || out.lines().any(|l| l.contains(needle)), || format!("{args:?}: missing {needle:?}"))?;
    }
    let (code, out, _) = run_cli(
        &["certify", &fixture("line2.json"), "--delta", "1/4", "--area-budget", "2"],
        None,
    );
    ensure(code == 0 && out.lines().last() == Some("#V=1 <= 2"), || out.clone())?;
    Ok(format!("{docs} documents round-trip; exit codes 0/1/2/3 verified on fixtures"))
}

fn main() {
    let c = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("example7 area 14(1-2^-N)", Box::new(c1_example7_area)),
        ("saturated degrees equal and Area = d", Box::new(|| c2_saturated_degree_area(&c))),
        ("global balancing on random regions", Box::new(|| c3_global_balance(&c))),
        ("measure density matches crossing sum", Box::new(|| c4_density(&c))),
        ("path decomposition", Box::new(|| c5_paths(&c))),
        ("vertex bounds and V0 cover", Box::new(|| c6_vertex_bounds(&c))),
        ("flow lower bound", Box::new(|| c7_flow(&c))),
        ("saturation surgery", Box::new(|| c8_surgery(&c))),
        ("decomposition lemma", Box::new(c9_decomposition)),
        ("end-to-end certificate", Box::new(|| c10_certificate(&c))),
        ("castelnuovo bound", Box::new(c11_castelnuovo)),
        ("CLI round trip and exit codes", Box::new(|| c12_cli(&c))),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("ACCEPTANCE [{}] {name} {status} {detail}", k + 1);
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
