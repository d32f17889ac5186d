//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cxc_core::complex::{faces, validate};
use cxc_core::contraction::simple_connectivity;
use cxc_core::format::{parse, parse_bytes, serialize, Document};
use cxc_core::gen::median::{cube_completion, Graph};
use cxc_core::gen::{self, NonExample, PeriodicFixture};
use cxc_core::isometry::verify::{
    check_min_links, default_spread, min_pairs, sample_min_loops, verify_min_convex, Cat0Options,
};
use cxc_core::isometry::{finite, periodic, Classification, Permutation, ShiftMap, VertexMap};
use cxc_core::link::gromov_check;
use cxc_core::metric::{bfs_distances, is_median_graph};
use cxc_core::periodic::{PVertex, PeriodicComplex};
use cxc_core::walls::{compute_walls, distance_by_walls, is_self_intersecting, is_self_parallel, wall_summaries};
use cxc_core::{CubeComplex, VertexId};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn finite_corpus() -> Vec<CubeComplex> {
    gen::finite_corpus(20240, 240).into_iter().map(|(_, x)| x).collect()
}

fn is_cat0(x: &CubeComplex) -> bool {
    x.is_connected() && gromov_check(x).pass && simple_connectivity(x).simply_connected
}

/// Cube completion of the largest component left after deleting random vertices.
fn damaged(x: &CubeComplex, rng: &mut ChaCha8Rng) -> Option<CubeComplex> {
    let keep: Vec<bool> = (0..x.vertex_count()).map(|_| !rng.random_bool(0.2)).collect();
    let (sub, _) = x.induced(&keep);
    let biggest = sub.components().into_iter().max_by_key(Vec::len)?;
    let mut index = vec![usize::MAX; sub.vertex_count()];
    for (i, v) in biggest.iter().enumerate() {
        index[v.0] = i;
    }
    let mut edges = Vec::new();
    for &v in &biggest {
        edges.extend(sub.neighbours(v).iter().filter(|&&u| u > v).map(|&u| (index[v.0], index[u.0])));
    }
    let g = Graph::from_edges(biggest.len(), &edges);
    CubeComplex::build(&cube_completion(&g)).ok()
}

/// BFS distance on a window much larger than any certificate needs.
fn window_distance(p: &PeriodicComplex, u: PVertex, v: PVertex, radius: i64) -> Option<usize> {
    let w = p.materialize_window(radius).expect("window");
    bfs_distances(&w.complex, w.id(u)?)[w.id(v)?.0]
}

fn ac1() -> Check {
    let corpus = finite_corpus();
    ensure(corpus.len() >= 200, || format!("only {} complexes", corpus.len()))?;
    for (i, x) in corpus.iter().enumerate() {
        ensure(x.vertex_count() <= 64, || format!("complex {i} has {} vertices", x.vertex_count()))?;
        let report = validate(x);
        ensure(report.ok, || format!("complex {i}: {:?}", report.violations))?;
        for dim in 1..=x.dimension() {
            for c in x.cubes(dim) {
                for f in faces(c, dim - 1).map_err(|e| e.to_string())? {
                    ensure(x.contains(&f), || format!("complex {i}: face {f:?} missing"))?;
                }
            }
        }
        for v in x.vertices() {
            for &u in x.neighbours(v) {
                ensure(x.neighbours(u).contains(&v) && x.edge_between(u, v).is_some(), || {
                    format!("complex {i}: adjacency {v:?}-{u:?} not symmetric")
                })?;
            }
        }
        let rebuilt = CubeComplex::build(&x.to_cube_list()).map_err(|e| format!("complex {i}: {e}"))?;
        ensure(&rebuilt == x, || format!("complex {i}: rebuild differs"))?;
        let text = serialize(&Document::from_complex(x, None));
        let back = parse(&text).map_err(|e| e.to_string())?.to_complex().map_err(|e| e.to_string())?;
        ensure(&back == x, || format!("complex {i}: document round trip differs"))?;
    }
    for kind in NonExample::ALL {
        let x = gen::generate_nonexample(kind);
        ensure(validate(&x).ok, || format!("{kind:?} is not a valid complex"))?;
        let flag = gromov_check(&x).pass;
        let sc = simple_connectivity(&x).simply_connected;
        let table = compute_walls(&x);
        let crossing = table.walls().iter().any(|w| is_self_intersecting(&x, &table, w.id).is_some());
        let clean = wall_summaries(&x, &table).iter().all(|s| s.is_clean());
        let expected = match kind {
            NonExample::NonFlagLink => !flag && sc && clean,
            NonExample::SelfIntersectingWall => crossing && flag,
            NonExample::NonSimplyConnected => !sc && flag && !crossing,
        };
        ensure(expected, || {
            format!("{kind:?}: flag {flag}, simply connected {sc}, self-intersecting {crossing}, clean walls {clean}")
        })?;
    }
    Ok(format!("{} complexes valid, 3 non-examples fail their named check", corpus.len()))
}

fn ac2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut corpus = finite_corpus();
    let originals = corpus.len();
    let mut damaged_count = 0;
    for i in 0..originals {
        for _ in 0..2 {
            if let Some(y) = damaged(&corpus[i], &mut rng) {
                corpus.push(y);
                damaged_count += 1;
            }
        }
    }
    corpus.push(gen::generate_nonexample(NonExample::NonSimplyConnected));
    corpus.push(gen::generate_nonexample(NonExample::SelfIntersectingWall));
    let mut medians = 0;
    for (i, x) in corpus.iter().enumerate() {
        let median = is_median_graph(x).is_median;
        let pipeline = gromov_check(x).pass && simple_connectivity(x).simply_connected;
        ensure(median == pipeline, || {
            format!("complex {i}: median graph {median}, flag links and contractible loops {pipeline}")
        })?;
        medians += median as usize;
    }
    Ok(format!(
        "{} cube-complete complexes ({damaged_count} damaged copies), {medians} median, {} not, zero discrepancies",
        corpus.len(),
        corpus.len() - medians
    ))
}

fn ac3() -> Check {
    let mut walls = 0;
    let mut certified = 0;
    for (i, x) in finite_corpus().iter().enumerate() {
        if !is_cat0(x) {
            continue;
        }
        certified += 1;
        let table = compute_walls(x);
        for w in table.walls() {
            walls += 1;
            ensure(is_self_intersecting(x, &table, w.id).is_none(), || format!("complex {i}: wall {} self-intersects", w.id.0))?;
            ensure(is_self_parallel(x, &table, w.id).is_none(), || format!("complex {i}: wall {} self-osculates", w.id.0))?;
        }
    }
    let strip = gen::generate_nonexample(NonExample::SelfIntersectingWall);
    let table = compute_walls(&strip);
    ensure(table.walls().iter().any(|w| is_self_intersecting(&strip, &table, w.id).is_some()), || {
        "flipped strip has no self-intersecting wall".into()
    })?;
    Ok(format!("{walls} walls on {certified} certified complexes clean; flipped strip self-intersects"))
}

fn ac4() -> Check {
    let mut pairs = 0usize;
    for (i, x) in finite_corpus().iter().enumerate() {
        if !is_cat0(x) {
            continue;
        }
        let table = compute_walls(x);
        for u in 0..x.vertex_count() {
            let bfs = bfs_distances(x, VertexId(u));
            for v in u..x.vertex_count() {
                let walls = distance_by_walls(x, &table, VertexId(u), VertexId(v)).map_err(|e| format!("complex {i}: {e}"))?;
                ensure(Some(walls) == bfs[v], || format!("complex {i}: pair ({u},{v}) walls {walls} bfs {:?}", bfs[v]))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs >= 10_000, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs, zero mismatches"))
}

fn axis_families() -> Vec<PeriodicFixture> {
    let mut out = vec![gen::periodic_line(), gen::periodic_ladder()];
    out.extend((0..20).map(|s| gen::periodic_pendant(500 + s, 1 + (s as usize % 6))));
    out.push(gen::periodic_glide_squared());
    out
}

fn ac5() -> Check {
    let families = axis_families();
    let mut pairs = 0;
    for f in &families {
        let (p, g) = (&f.complex, &f.map);
        let min = periodic::min_set(p, g).map_err(|e| format!("{}: {e}", f.name))?;
        let axis = periodic::build_axis(p, g, &min).map_err(|e| format!("{}: {e}", f.name))?;
        let report = periodic::verify_axis(p, g, &min, &axis).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("{}: {:?}", f.name, report.failure))?;
        let l = axis.period_length() as i64;
        let t = min.translation_length as i64;
        let radius = 4 * (l + t) + 8;
        for a in 0..l {
            let va = axis.at(g, a);
            let moved = window_distance(p, va, g.apply(va), radius);
            ensure(moved == Some(min.translation_length), || format!("{}: gamma({a}) not in Min", f.name))?;
            for b in a..=a + t {
                let d = window_distance(p, va, axis.at(g, b), radius);
                ensure(d == Some((b - a) as usize), || format!("{}: d(gamma({a}), gamma({b})) = {d:?}", f.name))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{} families, {pairs} axis pairs checked against a wide-window oracle", families.len()))
}

fn periodic_corpus() -> Vec<PeriodicFixture> {
    gen::periodic_corpus(77, 20)
}

fn ac6() -> Check {
    let mut pairs = 0;
    let corpus = periodic_corpus();
    for f in &corpus {
        let (p, g) = (&f.complex, &f.map);
        let min = periodic::min_set(p, g).map_err(|e| e.to_string())?;
        let spread = default_spread(min.translation_length);
        let report = verify_min_convex(p, &min, spread).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("{}: {:?}", f.name, report.witness))?;
        let radius = 3 * spread + 8;
        let w = p.materialize_window(radius).map_err(|e| e.to_string())?;
        let (sub, labels) = w.restrict(|v| min.contains(v));
        for (u, v) in min_pairs(&min, spread) {
            let ambient = bfs_distances(&w.complex, w.id(u).expect("inside"))[w.id(v).expect("inside").0];
            let a = labels.iter().position(|&x| x == u).expect("Min vertex");
            let b = labels.iter().position(|&x| x == v).expect("Min vertex");
            let internal = bfs_distances(&sub, VertexId(a))[b];
            ensure(ambient.is_some() && ambient == internal, || {
                format!("{}: {u} {v} ambient {ambient:?} internal {internal:?}", f.name)
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{} examples convex at B = 3|g| + 4; {pairs} pairs embed isometrically", corpus.len()))
}

fn ac7() -> Check {
    let corpus = periodic_corpus();
    let mut loops = 0;
    let mut rechecked = 0;
    for f in &corpus {
        let (p, g) = (&f.complex, &f.map);
        let min = periodic::min_set(p, g).map_err(|e| e.to_string())?;
        for check in check_min_links(p, &min).map_err(|e| e.to_string())? {
            ensure(check.pass(), || format!("{}: {check:?}", f.name))?;
        }
        let opts = Cat0Options::for_translation_length(min.translation_length);
        let summary = sample_min_loops(p, &min, &opts).map_err(|e| e.to_string())?;
        ensure(summary.sampled == 100 && summary.failed.is_empty(), || format!("{}: {summary:?}", f.name))?;
        ensure(summary.rechecked <= 5, || format!("{}: {} loops needed the doubled budget", f.name, summary.rechecked))?;
        loops += summary.contracted;
        rechecked += summary.rechecked;
    }
    Ok(format!(
        "{} examples: Min links flag and contained, {loops} loops contracted ({rechecked} after recheck)",
        corpus.len()
    ))
}

/// Orbits of minimal displacement by plain BFS on a wide window.
fn brute_force_min(p: &PeriodicComplex, g: &ShiftMap) -> (usize, BTreeSet<usize>) {
    let radius = 8 * (g.shift.abs() + p.orbit_count() as i64) + 8;
    let d: Vec<usize> = (0..p.orbit_count())
        .map(|o| {
            let v = PVertex::new(o, 0);
            window_distance(p, v, g.apply(v), radius).expect("connected")
        })
        .collect();
    let m = *d.iter().min().expect("orbits");
    (m, (0..d.len()).filter(|&o| d[o] == m).collect())
}

fn ac8() -> Check {
    let square = CubeComplex::build(&[vec![0, 1, 2, 3]]).map_err(|e| e.to_string())?;
    let id = VertexMap(Permutation::identity(4));
    let c = finite::classify(&square, &id, 8).map_err(|e| e.to_string())?;
    ensure(matches!(c, Classification::Elliptic { .. }), || format!("identity on the square: {c:?}"))?;
    let line = gen::periodic_line();
    let c = periodic::classify(&line.complex, &ShiftMap::identity(1), 8).map_err(|e| e.to_string())?;
    ensure(matches!(c, Classification::Elliptic { .. }), || format!("identity on the line: {c:?}"))?;

    let rotation = VertexMap(Permutation::from_cycles(4, &[vec![0, 1, 3, 2]]).map_err(|e| e.to_string())?);
    let c = finite::classify(&square, &rotation, 2).map_err(|e| e.to_string())?;
    ensure(matches!(c, Classification::InversionDetected { power: 2, .. }), || format!("square rotation: {c:?}"))?;

    let glide = gen::periodic_glide();
    let c = periodic::classify(&glide.complex, &glide.map, 1).map_err(|e| e.to_string())?;
    ensure(matches!(c, Classification::InversionDetected { power: 1, .. }), || format!("glide: {c:?}"))?;

    let mut pendants = vec![parse("cxc 1 periodic\norbit a\norbit b\npcube e : (a,0) (a,1)\npcube f : (a,0) (b,0)\naut shift 1 perm ()\n")
        .map(|d| {
            let p = d.to_periodic().expect("valid");
            let g = d.periodic_map(&p).expect("valid").expect("declared");
            PeriodicFixture { name: "pendant".into(), complex: p, map: g }
        })
        .map_err(|e| e.to_string())?];
    pendants.extend((0..10).map(|s| gen::periodic_pendant(900 + s, 6)));
    for f in &pendants {
        let c = periodic::classify(&f.complex, &f.map, 8).map_err(|e| e.to_string())?;
        ensure(matches!(c, Classification::Hyperbolic { translation_length: 1, .. }), || format!("{}: {c:?}", f.name))?;
        let min = periodic::min_set(&f.complex, &f.map).map_err(|e| e.to_string())?;
        let (m, oracle) = brute_force_min(&f.complex, &f.map);
        let computed: BTreeSet<usize> = min.orbits.iter().map(|o| o.0).collect();
        ensure(m == 1 && computed == oracle && oracle == BTreeSet::from([0]), || {
            format!("{}: Min {computed:?}, oracle {oracle:?} at {m}", f.name)
        })?;
    }
    Ok(format!("identity, square rotation, glide and {} pendant shifts classified as expected", pendants.len()))
}

fn ac9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let corpus = periodic_corpus();
    for q in 0..50 {
        let f = &corpus[rng.random_range(0..corpus.len())];
        let p = &f.complex;
        let n = p.orbit_count();
        let u = PVertex::new(rng.random_range(0..n), rng.random_range(-5..=5));
        let v = PVertex::new(rng.random_range(0..n), rng.random_range(-5..=5));
        let cert = p.certified_distance(u, v).map_err(|e| e.to_string())?;
        let oracle = window_distance(p, u, v, 2 * cert.radius);
        ensure(cert.holds() && oracle == Some(cert.value), || {
            format!("query {q} on {}: {u} {v} certified {} oracle {oracle:?}", f.name, cert.value)
        })?;
    }
    Ok("50 queries agree with BFS on the doubled window".into())
}

fn mutate(rng: &mut ChaCha8Rng, base: &[u8]) -> Vec<u8> {
    let mut out = base.to_vec();
    for _ in 0..rng.random_range(1..=4) {
        let at = if out.is_empty() { 0 } else { rng.random_range(0..out.len()) };
        match rng.random_range(0..5) {
            0 if !out.is_empty() => out[at] = rng.random(),
            1 => out.insert(at, b" \n()#,:-0123456789abcxqz"[rng.random_range(0..24)]),
            2 if !out.is_empty() => {
                out.remove(at);
            }
            3 => out.truncate(at),
            _ => {
                let end = (at + rng.random_range(0..40)).min(out.len());
                let chunk = out[at..end].to_vec();
                let to = rng.random_range(0..=out.len());
                out.splice(to..to, chunk);
            }
        }
    }
    out
}

fn token_soup(rng: &mut ChaCha8Rng) -> Vec<u8> {
    const TOKENS: [&str; 24] = [
        "cxc", " 1", " finite", " periodic", "\n", "cube", "pcube", "orbit", "aut", "perm", "shift", " ", ":", "(", ")",
        ",", "#", "meta", "a", "0", "1", "-3", "99999999999999999999", "\r\n",
    ];
    let mut out = Vec::new();
    if rng.random_bool(0.7) {
        out.extend_from_slice(if rng.random_bool(0.5) { b"cxc 1 finite\n" } else { b"cxc 1 periodic\n" });
    }
    for _ in 0..rng.random_range(0..40) {
        out.extend_from_slice(TOKENS[rng.random_range(0..TOKENS.len())].as_bytes());
    }
    out
}

fn ac10() -> Check {
    let (canonical, raw) = common::golden_files();
    for (name, text) in &canonical {
        let doc = parse(text).map_err(|e| format!("{name}: {e}"))?;
        ensure(&serialize(&doc) == text, || format!("{name} is not a fixed point"))?;
    }
    for (name, input, expected) in &raw {
        let once = serialize(&parse(input).map_err(|e| format!("{name}: {e}"))?);
        ensure(&once == expected, || format!("{name}: canonical form differs"))?;
        ensure(serialize(&parse(&once).map_err(|e| e.to_string())?) == once, || format!("{name}: not stable"))?;
    }
    for (name, text) in common::golden_documents() {
        let stored = canonical.iter().find(|(n, _)| *n == name).map(|(_, t)| t);
        ensure(stored == Some(&text), || format!("{name}: generator output differs from the golden file"))?;
    }
    let seeds: Vec<Vec<u8>> = canonical
        .iter()
        .map(|(_, t)| t.as_bytes())
        .filter(|t| t.len() <= 1200)
        .map(<[u8]>::to_vec)
        .collect();
    let previous = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut accepted, mut crashes) = (0usize, 0usize);
    let mut first_crash = None;
    for case in 0..1_000_000u32 {
        let bytes = match case % 4 {
            0 => {
                let mut b = vec![0u8; rng.random_range(0..64)];
                rng.fill_bytes(&mut b);
                b
            }
            1 => token_soup(&mut rng),
            _ => {
                let base = rng.random_range(0..seeds.len());
                mutate(&mut rng, &seeds[base])
            }
        };
        match catch_unwind(AssertUnwindSafe(|| parse_bytes(&bytes).map(|d| serialize(&d)))) {
            Ok(Ok(text)) => {
                accepted += 1;
                let again = parse(&text).map(|d| serialize(&d));
                if again.as_ref() != Ok(&text) {
                    first_crash.get_or_insert(bytes.clone());
                    crashes += 1;
                }
            }
            Ok(Err(_)) => {}
            Err(_) => {
                first_crash.get_or_insert(bytes.clone());
                crashes += 1;
            }
        }
    }
    std::panic::set_hook(previous);
    ensure(crashes == 0, || {
        format!("{crashes} crashes or unstable canonical forms, first input {:?}", String::from_utf8_lossy(first_crash.as_deref().unwrap_or_default()))
    })?;
    Ok(format!(
        "{} golden files fixed points, {} raw inputs canonicalized; 10^6 fuzz cases, {accepted} parsed, no crash",
        canonical.len(),
        raw.len()
    ))
}

fn main() {
    let criteria: [(u32, &str, Option<u64>, fn() -> Check); 10] = [
        (1, "gluing validation", Some(30), ac1),
        (2, "median graph vs flag links and contractible loops", Some(120), ac2),
        (3, "walls of certified complexes", None, ac3),
        (4, "wall distance equals BFS distance", Some(60), ac4),
        (5, "combinatorial axes", None, ac5),
        (6, "Min convexity and isometric embedding", Some(120), ac6),
        (7, "Min links and loop contraction", None, ac7),
        (8, "classification fixtures", None, ac8),
        (9, "certified periodic distances", None, ac9),
        (10, "format round trip and fuzzing", Some(60), ac10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let tag = format!("AC{n}");
        if !filter.is_empty() && !filter.iter().any(|p| tag.eq_ignore_ascii_case(p) || name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(f).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(detail), Some(secs)) if elapsed > Duration::from_secs(secs) => {
                Err(format!("{detail}; took {:.1} s, limit {secs} s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {tag} {name}: {detail} ({:.2} s)", elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {tag} {name}: {detail} ({:.2} s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
