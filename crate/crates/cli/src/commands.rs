use num_bigint::BigInt;
use tropcurve::certify::{castelnuovo_bound, certify_with, first_betti};
use tropcurve::document::{parse_curve, write_curve};
use tropcurve::gallery::{gen_example7, gen_random_balanced, gen_random_tree, gen_tropical_line};
use tropcurve::paths::{path_family_for_face, TieRule};
use tropcurve::rational::{fmt_point, fmt_rat, parse_rat, rat};
use tropcurve::report::{Check, Op};
use tropcurve::saturated::measure_density;
use tropcurve::saturation::saturate as saturate_curve;
use tropcurve::validate::{validate as validate_curve, Level};
use tropcurve::{Rat, TropicalCurve};

use crate::output::{line, read_input, write_output, Failure};
use crate::GenKind;

fn load(path: &str) -> Result<TropicalCurve, Failure> {
    Ok(parse_curve(&read_input(path)?)?)
}

fn axis(g: &TropicalCurve, dir: usize) -> Result<usize, Failure> {
    if dir == 0 || dir > g.dim() {
        return Err(Failure::Input(format!("--dir must be between 1 and {}", g.dim())));
    }
    Ok(dir - 1)
}

fn checks_outcome(checks: &[Check], to_stderr: bool) -> Result<(), Failure> {
    for c in checks {
        if to_stderr {
            eprintln!("{c}");
        } else {
            line(&c.to_string());
        }
    }
    if checks.iter().all(|c| c.pass) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn segments_text(g: &TropicalCurve) -> Result<String, Failure> {
    let mut out = String::new();
    for e in g.edges() {
        let ext = g.extent(e.id)?;
        out.push_str(&coords(&ext.start(), &ext.end()));
        out.push('\n');
    }
    Ok(out)
}

fn coords(a: &[Rat], b: &[Rat]) -> String {
    a.iter().chain(b).map(fmt_rat).collect::<Vec<_>>().join(" ")
}

pub fn validate(file: &str, lenient: bool) -> Result<(), Failure> {
    let g = load(file)?;
    let level = if lenient { Level::Lenient } else { Level::Strict };
    let report = validate_curve(&g, level);
    for v in &report.violations {
        println!("{v}");
    }
    if report.passed() {
        line(&format!("valid {} PASS", if lenient { "lenient" } else { "strict" }));
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub fn area(file: &str) -> Result<(), Failure> {
    let g = load(file)?;
    println!("{}", fmt_rat(&g.area()?));
    Ok(())
}

pub fn saturate(file: &str, delta: &Rat, out: &str) -> Result<(), Failure> {
    let g = load(file)?;
    let (g2, log) = saturate_curve(&g, delta)?;
    write_output(out, &write_curve(&g2))?;
    let report = [
        format!("surgery_entries {}", log.entries.len()),
        format!("collar_retries {}", log.retries),
        format!("vertices {} -> {}", log.vertices_restricted, log.vertices_saturated),
        format!("area {} -> {}", fmt_rat(&log.area_restricted), fmt_rat(&log.area_saturated)),
    ];
    let to_stderr = out == "-";
    for r in &report {
        if to_stderr {
            eprintln!("{r}");
        } else {
            println!("{r}");
        }
    }
    checks_outcome(&log.checks, to_stderr)
}

pub fn paths(file: &str, dir: usize, tie: TieRule, emit_segments: bool) -> Result<(), Failure> {
    let g = load(file)?;
    let axis = axis(&g, dir)?;
    let fam = path_family_for_face(&g, axis, tie)?;
    if emit_segments {
        for p in &fam.paths {
            for s in &p.segments {
                let (a, b) = s.endpoints(&g)?;
                println!("{}", coords(&a, &b));
            }
        }
        return Ok(());
    }
    println!("direction {dir} tie {tie} paths {}", fam.paths.len());
    for (k, p) in fam.paths.iter().enumerate() {
        let mut pieces = Vec::new();
        for s in &p.segments {
            let (a, b) = s.endpoints(&g)?;
            pieces.push(format!("e{} {} -> {}", s.edge, fmt_point(&a), fmt_point(&b)));
        }
        println!("path {k}: {} | exit {}", pieces.join(" | "), fmt_point(&p.exit));
    }
    let checks: Vec<Check> = fam
        .usage
        .iter()
        .map(|(e, used)| Check::int(format!("usage_e{e}"), used, Op::Le, &fam.capacity[e]))
        .collect();
    checks_outcome(&checks, false)
}

pub fn certify(file: &str, delta: &Rat, budget: &Rat, tie: TieRule, json: bool) -> Result<(), Failure> {
    let g = load(file)?;
    let c = certify_with(&g, delta, budget, tie)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&c).expect("certificates serialize"));
        return if c.pass { Ok(()) } else { Err(Failure::Check) };
    }
    println!("n {} delta {} area_budget {}", c.n, fmt_rat(&c.delta), fmt_rat(&c.area_budget));
    println!("area_total {}", fmt_rat(&c.area_total));
    println!("area_restricted {}", fmt_rat(&c.area_restricted));
    println!("vertices_restricted {}", c.restricted_vertex_count);
    println!(
        "saturated d {} area {} vertices {} (without truncation points {})",
        c.saturated.d,
        fmt_rat(&c.saturated.area),
        c.saturated.vertices,
        c.saturated.vertices_without_p
    );
    for d in &c.directions {
        println!("direction {} paths {} max_v0 {} bound {}", d.direction, d.paths, d.max_v0, d.v0_bound);
    }
    println!("apriori_bound {}", fmt_rat(&c.apriori_bound));
    let outcome = checks_outcome(&c.checks, false);
    println!("{}", c.final_line());
    outcome
}

pub fn gen(kind: GenKind, out: &str, emit_segments: bool) -> Result<(), Failure> {
    let g = match kind {
        GenKind::Line { n, apex } => {
            let apex = match apex {
                Some(s) => s
                    .split(',')
                    .map(|c| parse_rat(c).map_err(Failure::Input))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![rat(1, n as i64 + 1); n],
            };
            gen_tropical_line(n, &apex)?
        }
        GenKind::Example7 { levels } => gen_example7(levels)?,
        GenKind::Random { n, seed, complexity } => gen_random_balanced(n, seed, complexity)?,
        GenKind::Tree {
            n,
            seed,
            complexity,
            delta,
        } => gen_random_tree(n, seed, complexity, &delta)?,
    };
    let text = if emit_segments { segments_text(&g)? } else { write_curve(&g) };
    write_output(out, &text)
}

pub fn slice(file: &str, dir: usize, at: &Rat) -> Result<(), Failure> {
    let g = load(file)?;
    let axis = axis(&g, dir)?;
    let d = measure_density(&g, axis, at)?;
    println!("zeta {} density {} predicted {}", fmt_rat(&d.zeta), d.density, d.predicted);
    checks_outcome(&[Check::int("slice_density", &d.density, Op::Eq, &d.predicted)], false)
}

pub fn betti(file: &str) -> Result<(), Failure> {
    let g = load(file)?;
    let b = first_betti(&g);
    println!("components {}", b.components);
    println!("b1 {}", b.b1);
    println!("internal_edges {}", b.internal_edges);
    println!("vertices {}", b.vertex_count);
    for (k, c) in b.per_component.iter().enumerate() {
        println!("component {k} vertices {} internal_edges {} b1 {}", c.vertices, c.internal_edges, c.b1);
    }
    Ok(())
}

pub fn castelnuovo(degree: &BigInt, dim: usize) -> Result<(), Failure> {
    println!("castelnuovo_bound {} (conjectural)", castelnuovo_bound(degree, dim)?);
    Ok(())
}
