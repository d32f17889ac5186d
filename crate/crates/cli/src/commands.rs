use cxc_core::complex::{validate, CubeComplex};
use cxc_core::contraction::{contract_loop, simple_connectivity, ContractionOutcome};
use cxc_core::cube::VertexId;
use cxc_core::format::Document;
use cxc_core::gen::{Family, GenSpec};
use cxc_core::isometry::verify::{sample_loops, verify_min_cat0, verify_min_convex, Cat0Options};
use cxc_core::isometry::{finite, periodic, Classification, IsometryError};
use cxc_core::link::{check_vertex_link, gromov_check};
use cxc_core::metric::{bfs_distance, bfs_distances, is_median_graph, CombinatorialPath};
use cxc_core::periodic::walls::{periodic_walls, self_intersections, self_parallels, WallKind};
use cxc_core::periodic::{PVertex, PeriodicComplex, PeriodicError};
use cxc_core::walls::{compute_walls, distance_by_walls, wall_summaries};
use serde_json::json;

use crate::input::{finite_vertex, periodic_vertex, InputError, Loaded};
use crate::report::{Outcome, Verdict};
use crate::Options;

fn labels(p: &PeriodicComplex, vs: &[PVertex]) -> Vec<String> {
    vs.iter().map(|&v| p.vertex_label(v)).collect()
}

fn periodic_failure(e: PeriodicError) -> Outcome {
    match e {
        PeriodicError::GrowthCapExceeded { cap } => {
            let mut out = Outcome::new(Verdict::Inconclusive);
            out.set("reason", format!("window growth exceeded the cap of {cap} vertices"));
            out.line(format!("inconclusive: window growth exceeded the cap of {cap} vertices"));
            out
        }
        other => Outcome::input_error(other.to_string()),
    }
}

fn isometry_failure(e: IsometryError) -> Outcome {
    match e {
        IsometryError::Periodic(p) => periodic_failure(p),
        IsometryError::NotHyperbolic => {
            let mut out = Outcome::new(Verdict::Violated);
            out.set("hyperbolic", false);
            out.witness(json!({ "translation_length": 0 }));
            out.line("the map has translation length 0");
            out
        }
        other => Outcome::input_error(other.to_string()),
    }
}

fn need_finite_map(map: &Option<cxc_core::isometry::VertexMap>) -> Result<&cxc_core::isometry::VertexMap, Outcome> {
    map.as_ref()
        .ok_or_else(|| Outcome::input_error("the document declares no automorphism (`aut perm ...`)"))
}

fn need_periodic_map(map: &Option<cxc_core::isometry::ShiftMap>) -> Result<&cxc_core::isometry::ShiftMap, Outcome> {
    map.as_ref()
        .ok_or_else(|| Outcome::input_error("the document declares no automorphism (`aut shift ...`)"))
}

fn collapse(r: Result<Outcome, Outcome>) -> Outcome {
    r.unwrap_or_else(|e| e)
}

pub fn validate_cmd(loaded: Result<Loaded, InputError>) -> Outcome {
    let loaded = match loaded {
        Ok(l) => l,
        Err(e) if e.is_violation() => {
            let mut out = Outcome::new(Verdict::Violated);
            out.set("valid", false);
            out.witness(json!({ "error": e.to_string() }));
            out.line(format!("invalid: {e}"));
            return out;
        }
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let mut out = Outcome::new(Verdict::Pass);
    match &loaded {
        Loaded::Finite { complex, map, .. } => {
            let report = validate(complex);
            out.set("counts", complex.counts());
            out.set("dimension", complex.dimension());
            out.line(format!("finite complex, cube counts by dimension {:?}", complex.counts()));
            for v in &report.violations {
                out.witness(v);
                out.line(format!("violation: {}", v.message));
                out.downgrade(Verdict::Violated);
            }
            if let Some(g) = map {
                let checked = finite::check_automorphism(complex, g);
                out.set("automorphism", checked.is_ok());
                if let Err(e) = checked {
                    out.witness(json!({ "automorphism": e.to_string() }));
                    out.line(format!("automorphism: {e}"));
                    out.downgrade(Verdict::Violated);
                } else {
                    out.line("automorphism: ok");
                }
            }
        }
        Loaded::Periodic { complex, map, .. } => {
            let counts: Vec<usize> = (0..=complex.dimension()).map(|d| complex.orbit_cubes(d).len()).collect();
            out.set("orbit_counts", &counts);
            out.set("dimension", complex.dimension());
            out.line(format!("periodic complex, cube orbits by dimension {counts:?}"));
            if let Some(g) = map {
                let checked = periodic::check_automorphism(complex, g);
                out.set("automorphism", checked.is_ok());
                if let Err(e) = checked {
                    out.witness(json!({ "automorphism": e.to_string() }));
                    out.line(format!("automorphism: {e}"));
                    out.downgrade(Verdict::Violated);
                } else {
                    out.line("automorphism: ok");
                }
            }
        }
    }
    out.set("valid", out.verdict == Verdict::Pass);
    out
}

pub fn links(loaded: &Loaded) -> Outcome {
    let mut out = Outcome::new(Verdict::Pass);
    let mut rows = Vec::new();
    match loaded {
        Loaded::Finite { complex, .. } => {
            for v in complex.vertices() {
                let check = check_vertex_link(complex, v);
                rows.push(json!({ "vertex": v.0, "flag": check.flag }));
                if let Some(w) = &check.witness {
                    out.witness(json!({ "vertex": v.0, "clique": w }));
                    out.line(format!("vertex {}: link not flag, empty simplex on {:?}", v.0, w.iter().map(|u| u.0).collect::<Vec<_>>()));
                    out.downgrade(Verdict::Violated);
                }
            }
        }
        Loaded::Periodic { complex, .. } => {
            let w = match complex.materialize_window(2) {
                Ok(w) => w,
                Err(e) => return periodic_failure(e),
            };
            for o in 0..complex.orbit_count() {
                let v = PVertex::new(o, 0);
                let check = check_vertex_link(&w.complex, w.id(v).expect("inside"));
                let label = complex.vertex_label(v);
                rows.push(json!({ "vertex": label, "flag": check.flag }));
                if let Some(clique) = &check.witness {
                    let far: Vec<PVertex> = clique.iter().map(|&u| w.label(u)).collect();
                    out.witness(json!({ "vertex": label, "clique": labels(complex, &far) }));
                    out.line(format!("vertex {label}: link not flag, empty simplex on {:?}", labels(complex, &far)));
                    out.downgrade(Verdict::Violated);
                }
            }
        }
    }
    let flag = out.verdict == Verdict::Pass;
    out.line(format!("{} vertex links checked, all flag: {flag}", rows.len()));
    out.set("all_flag", flag);
    out.set("vertices", rows);
    out
}

pub fn is_cat0(loaded: &Loaded, opts: &Options) -> Outcome {
    let mut out = Outcome::new(Verdict::Pass);
    match loaded {
        Loaded::Finite { complex, .. } => {
            let gromov = gromov_check(complex);
            let sc = simple_connectivity(complex);
            let median = is_median_graph(complex);
            let connected = complex.is_connected();
            let cat0 = connected && gromov.pass && sc.simply_connected;
            out.set("cat0", cat0);
            out.set("connected", connected);
            out.set("links_flag", gromov.pass);
            out.set("simply_connected", sc.simply_connected);
            out.set("cycles_checked", sc.cycles_checked);
            out.set("median_graph", median.is_median);
            out.line(format!("connected: {connected}"));
            out.line(format!("links flag: {}", gromov.pass));
            out.line(format!(
                "simply connected: {} ({} fundamental cycles checked)",
                sc.simply_connected, sc.cycles_checked
            ));
            out.line(format!("median 1-skeleton: {}", median.is_median));
            for f in gromov.failures() {
                out.witness(json!({ "non_flag_link": f }));
            }
            if let Some(stuck) = &sc.stuck {
                out.witness(json!({ "uncontracted_loop": stuck }));
            }
            if let Some(t) = &median.witness {
                out.witness(json!({ "median_triple": t }));
                out.line(format!(
                    "median witness: triple {:?} has {:?}",
                    t.triple.iter().map(|v| v.0).collect::<Vec<_>>(),
                    t.median
                ));
            }
            if !cat0 {
                out.downgrade(Verdict::Violated);
            }
        }
        Loaded::Periodic { complex, .. } => {
            let link_out = links(loaded);
            if link_out.verdict == Verdict::InputError || link_out.verdict == Verdict::Inconclusive {
                return link_out;
            }
            let flag = link_out.verdict == Verdict::Pass;
            out.witnesses.extend(link_out.witnesses);
            out.set("links_flag", flag);
            out.line(format!("links flag: {flag}"));
            let reps: Vec<PVertex> = (0..complex.orbit_count()).map(|o| PVertex::new(o, 0)).collect();
            let cat0 = Cat0Options {
                loop_samples: opts.loop_samples,
                max_loop_len: 12,
                seed: opts.seed,
                spread: 0,
            };
            match sample_loops(complex, |_| true, &reps, &cat0) {
                Ok(summary) => {
                    out.line(format!(
                        "sampled loops: {} of {} contracted ({} needed the doubled budget)",
                        summary.contracted, summary.sampled, summary.rechecked
                    ));
                    for l in &summary.failed {
                        out.witness(json!({ "uncontracted_loop": labels(complex, l) }));
                    }
                    if !summary.failed.is_empty() {
                        out.downgrade(Verdict::Inconclusive);
                    }
                    out.set("loops", summary);
                }
                Err(e) => return periodic_failure(e),
            }
            if !flag {
                out.downgrade(Verdict::Violated);
            }
            out.set("cat0", out.verdict == Verdict::Pass);
            out.set("scope", "links exact; loops of length <= 12 sampled and contracted in a window");
        }
    }
    out
}

pub fn walls(loaded: &Loaded) -> Outcome {
    let mut out = Outcome::new(Verdict::Pass);
    match loaded {
        Loaded::Finite { complex, .. } => {
            let table = compute_walls(complex);
            let summaries = wall_summaries(complex, &table);
            let clean = summaries.iter().filter(|s| s.is_clean()).count();
            out.line(format!("{} walls, {clean} two-sided without self-intersection or self-osculation", summaries.len()));
            for s in summaries.iter().filter(|s| !s.is_clean()) {
                out.line(format!(
                    "wall {}: {} edges, self-intersecting: {}, self-parallel: {}, components after removal: {}",
                    s.id.0,
                    s.edges.len(),
                    s.self_intersection.is_some(),
                    s.self_parallel.is_some(),
                    s.components
                ));
                out.witness(s);
                out.downgrade(Verdict::Violated);
            }
            out.set("wall_count", summaries.len());
            out.set("walls", &summaries);
        }
        Loaded::Periodic { complex, .. } => {
            let catalogue = periodic_walls(complex);
            let crossings = self_intersections(complex, &catalogue);
            let parallels = self_parallels(complex, &catalogue);
            let finite = catalogue.orbits.iter().filter(|o| o.kind == WallKind::Finite).count();
            out.line(format!(
                "{} wall classes modulo the shift: {finite} finite, {} shift-periodic",
                catalogue.orbits.len(),
                catalogue.orbits.len() - finite
            ));
            for c in &crossings {
                out.line(format!("self-intersecting wall at square {:?}", labels(complex, &c.square)));
                out.witness(json!({ "self_intersection": c, "square": labels(complex, &c.square) }));
                out.downgrade(Verdict::Violated);
            }
            for s in &parallels {
                out.line(format!(
                    "self-parallel wall at {} via {} and {}",
                    complex.vertex_label(s.vertex),
                    complex.vertex_label(s.ends[0]),
                    complex.vertex_label(s.ends[1])
                ));
                out.witness(json!({ "self_parallel": s }));
                out.downgrade(Verdict::Violated);
            }
            out.set("wall_classes", &catalogue.orbits);
        }
    }
    out
}

pub fn distance(loaded: &Loaded, u: &str, v: &str) -> Outcome {
    collapse((|| match loaded {
        Loaded::Finite { complex, .. } => {
            let a = finite_vertex(complex, u).map_err(|e| Outcome::input_error(e.to_string()))?;
            let b = finite_vertex(complex, v).map_err(|e| Outcome::input_error(e.to_string()))?;
            let mut out = Outcome::new(Verdict::Pass);
            let d = match bfs_distance(complex, a, b) {
                Ok(d) => d,
                Err(e) => {
                    let mut out = Outcome::new(Verdict::Violated);
                    out.set("distance", serde_json::Value::Null);
                    out.witness(json!({ "disconnected": [a.0, b.0] }));
                    out.line(e.to_string());
                    return Ok(out);
                }
            };
            out.set("distance", d);
            out.line(format!("distance: {d}"));
            let table = compute_walls(complex);
            match distance_by_walls(complex, &table, a, b) {
                Ok(w) => {
                    out.set("walls_cross_check", json!({ "separating_walls": w, "agrees": w == d }));
                    out.line(format!("walls cross-check: {w} separating walls, {}", if w == d { "agrees" } else { "MISMATCH" }));
                    if w != d {
                        out.witness(json!({ "bfs": d, "separating_walls": w }));
                        out.downgrade(Verdict::Violated);
                    }
                }
                Err(e) => {
                    out.set("walls_cross_check", json!({ "error": e.to_string() }));
                    out.line(format!("walls cross-check unavailable: {e}"));
                    out.downgrade(Verdict::Inconclusive);
                }
            }
            Ok(out)
        }
        Loaded::Periodic { complex, .. } => {
            let a = periodic_vertex(complex, u).map_err(|e| Outcome::input_error(e.to_string()))?;
            let b = periodic_vertex(complex, v).map_err(|e| Outcome::input_error(e.to_string()))?;
            let cert = complex.certified_distance(a, b).map_err(periodic_failure)?;
            let mut out = Outcome::new(Verdict::Pass);
            out.set("distance", cert.value);
            out.certificate(json!({ "distance": cert, "holds": cert.holds() }));
            out.line(format!("distance: {} (certified on the window of radius {})", cert.value, cert.radius));
            match complex.materialize_window(2 * cert.radius) {
                Ok(w) => {
                    let big = bfs_distances(&w.complex, w.id(a).expect("inside"))[w.id(b).expect("inside").0];
                    let agrees = big == Some(cert.value);
                    out.set("window_cross_check", json!({ "radius": 2 * cert.radius, "distance": big, "agrees": agrees }));
                    out.line(format!(
                        "cross-check on the window of radius {}: {}",
                        2 * cert.radius,
                        if agrees { "agrees" } else { "MISMATCH" }
                    ));
                    if !agrees {
                        out.witness(json!({ "certified": cert.value, "doubled_window": big }));
                        out.downgrade(Verdict::Violated);
                    }
                }
                Err(e) => {
                    out.set("window_cross_check", json!({ "error": e.to_string() }));
                    out.line(format!("cross-check skipped: {e}"));
                    out.downgrade(Verdict::Inconclusive);
                }
            }
            Ok(out)
        }
    })())
}

fn classification_lines<V, W>(
    out: &mut Outcome,
    c: &Classification<V, W>,
    show: impl Fn(&V) -> String,
    show_wall: impl Fn(&W) -> String,
) {
    match c {
        Classification::Elliptic { fixed } => out.line(format!("elliptic: fixes {}", show(fixed))),
        Classification::Hyperbolic { translation_length, axis } => {
            out.line(format!("hyperbolic: translation length {translation_length}"));
            out.line(format!("axis period: {}", axis.iter().map(&show).collect::<Vec<_>>().join(" ")));
        }
        Classification::InversionDetected { power, wall, vertex, image } => out.line(format!(
            "inversion detected: g^{power} swaps the sides of {} ({} -> {})",
            show_wall(wall),
            show(vertex),
            show(image)
        )),
        Classification::Undecided { translation_length, fixed_cubes, reason } => out.line(format!(
            "undecided: translation length {translation_length}, {fixed_cubes} invariant cubes; {reason}"
        )),
    }
}

pub fn classify(loaded: &Loaded, opts: &Options) -> Outcome {
    collapse((|| {
        let mut out = Outcome::new(Verdict::Pass);
        out.set("power_bound", opts.power_bound);
        match loaded {
            Loaded::Finite { complex, map, .. } => {
                let g = need_finite_map(map)?;
                let c = finite::classify(complex, g, opts.power_bound).map_err(isometry_failure)?;
                classification_lines(&mut out, &c, |v| v.0.to_string(), |w| format!("wall {}", w.0));
                record_classification(&mut out, &c);
            }
            Loaded::Periodic { complex, map, .. } => {
                let g = need_periodic_map(map)?;
                let c = periodic::classify(complex, g, opts.power_bound).map_err(isometry_failure)?;
                classification_lines(
                    &mut out,
                    &c,
                    |v| complex.vertex_label(*v),
                    |w| format!("wall {} of class {}", w.index, w.orbit),
                );
                record_classification(&mut out, &c);
                if let Classification::Hyperbolic { axis, .. } = &c {
                    out.set("axis_labels", labels(complex, axis));
                }
            }
        }
        Ok(out)
    })())
}

fn record_classification<V: serde::Serialize, W: serde::Serialize>(out: &mut Outcome, c: &Classification<V, W>) {
    out.set("classification", c.kind());
    out.set("details", c);
    match c {
        Classification::InversionDetected { .. } | Classification::Elliptic { .. } => out.witness(c),
        Classification::Hyperbolic { .. } => out.certificate(c),
        Classification::Undecided { .. } => out.downgrade(Verdict::Inconclusive),
    }
}

pub fn minset(loaded: &Loaded) -> Outcome {
    collapse((|| {
        let mut out = Outcome::new(Verdict::Pass);
        match loaded {
            Loaded::Finite { complex, map, .. } => {
                let g = need_finite_map(map)?;
                let min = finite::min_set(complex, g).map_err(isometry_failure)?;
                let vertices: Vec<usize> = min.vertices.iter().map(|v| v.0).collect();
                out.line(format!("translation length: {}", min.translation_length));
                out.line(format!("Min vertices: {vertices:?}"));
                out.set("translation_length", min.translation_length);
                out.set("min_vertices", vertices);
            }
            Loaded::Periodic { complex, map, .. } => {
                let g = need_periodic_map(map)?;
                let min = periodic::min_set(complex, g).map_err(isometry_failure)?;
                let names: Vec<&str> = min.orbits.iter().map(|o| complex.orbit_names()[o.0].as_str()).collect();
                out.line(format!("translation length: {}", min.translation_length));
                out.line(format!("Min orbits: {}", names.join(" ")));
                out.set("translation_length", min.translation_length);
                out.set("min_orbits", &names);
                out.set("g_invariant", min.g_invariant);
                let profile: serde_json::Map<String, serde_json::Value> = min
                    .profile
                    .values
                    .iter()
                    .map(|(o, d)| (complex.orbit_names()[o.0].clone(), json!(d)))
                    .collect();
                out.set("displacement", profile);
            }
        }
        Ok(out)
    })())
}

pub fn verify_min(loaded: &Loaded, opts: &Options) -> Outcome {
    collapse((|| {
        let mut out = Outcome::new(Verdict::Pass);
        match loaded {
            Loaded::Finite { complex, map, .. } => {
                let g = need_finite_map(map)?;
                let min = finite::min_set(complex, g).map_err(isometry_failure)?;
                let report = finite::verify_min(complex, &min);
                out.line(format!("Min: {} vertices, translation length {}", min.vertices.len(), min.translation_length));
                out.line(format!("convex: {}", report.convexity.convex));
                out.line(format!("links flag: {}", report.links.pass));
                out.line(format!("simply connected: {}", report.simple_connectivity.simply_connected));
                if !report.pass {
                    out.witness(&report);
                    out.downgrade(Verdict::Violated);
                }
                out.set("pass", report.pass);
                out.set("report", &report);
            }
            Loaded::Periodic { complex, map, .. } => {
                let g = need_periodic_map(map)?;
                let min = periodic::min_set(complex, g).map_err(isometry_failure)?;
                let spread = opts.spread.unwrap_or_else(|| cxc_core::isometry::verify::default_spread(min.translation_length));
                let convex = verify_min_convex(complex, &min, spread).map_err(periodic_failure)?;
                let cat0 = verify_min_cat0(
                    complex,
                    &min,
                    &Cat0Options {
                        loop_samples: opts.loop_samples,
                        max_loop_len: 12,
                        seed: opts.seed,
                        spread,
                    },
                )
                .map_err(periodic_failure)?;
                out.line(format!(
                    "convexity at spread {spread}: {} ({} pairs checked)",
                    convex.pass, convex.pairs_checked
                ));
                let links_ok = cat0.links.iter().all(|l| l.pass());
                out.line(format!("links flag and contained in ambient links: {links_ok}"));
                out.line(format!(
                    "loops: {} of {} contracted ({} rechecked at double budget)",
                    cat0.loops.contracted, cat0.loops.sampled, cat0.loops.rechecked
                ));
                out.line(format!(
                    "medians: {} triples, unique: {}",
                    cat0.medians.triples,
                    cat0.medians.failure.is_none()
                ));
                if let Some(w) = &convex.witness {
                    out.witness(json!({ "convexity": w }));
                    out.downgrade(Verdict::Violated);
                }
                for l in cat0.links.iter().filter(|l| !l.pass()) {
                    out.witness(json!({ "link": l }));
                    out.downgrade(Verdict::Violated);
                }
                if let Some(m) = &cat0.medians.failure {
                    out.witness(json!({ "median": m }));
                    out.downgrade(Verdict::Violated);
                }
                for l in &cat0.loops.failed {
                    out.witness(json!({ "uncontracted_loop": labels(complex, l) }));
                    out.downgrade(Verdict::Inconclusive);
                }
                out.set("spread", spread);
                out.set("translation_length", min.translation_length);
                out.set("pass", convex.pass && cat0.pass);
                out.set("convexity", &convex);
                out.set("cat0", &cat0);
            }
        }
        Ok(out)
    })())
}

pub fn axis(loaded: &Loaded) -> Outcome {
    collapse((|| {
        let (complex, map) = match loaded {
            Loaded::Periodic { complex, map, .. } => (complex, map),
            Loaded::Finite { .. } => return Err(Outcome::input_error("axis needs a periodic document")),
        };
        let g = need_periodic_map(map)?;
        let min = periodic::min_set(complex, g).map_err(isometry_failure)?;
        let axis = periodic::build_axis(complex, g, &min).map_err(isometry_failure)?;
        let report = periodic::verify_axis(complex, g, &min, &axis).map_err(periodic_failure)?;
        let mut out = Outcome::new(Verdict::Pass);
        out.line(format!("axis period: {}", labels(complex, &axis.period).join(" ")));
        out.line(format!("verified: {} ({} pairs checked)", report.pass, report.pairs_checked));
        out.set("translation_length", min.translation_length);
        out.set("period", labels(complex, &axis.period));
        out.set("pass", report.pass);
        if let Some(f) = &report.failure {
            out.witness(f);
            out.downgrade(Verdict::Violated);
        } else {
            out.certificate(json!({ "axis": axis.period, "pairs_checked": report.pairs_checked }));
        }
        Ok(out)
    })())
}

fn contraction_result(out: &mut Outcome, outcome: &ContractionOutcome, moves_budget: usize) {
    out.set("budget", moves_budget);
    match outcome {
        ContractionOutcome::Contracted(cert) => {
            out.set("contracted", true);
            out.set("moves", cert.moves.len());
            out.line(format!("contracted in {} moves", cert.moves.len()));
            out.certificate(cert);
        }
        ContractionOutcome::Inconclusive { moves_used, .. } => {
            out.set("contracted", false);
            out.line(format!("not contracted: stuck after {moves_used} moves (budget {moves_budget})"));
            out.witness(outcome);
            out.downgrade(Verdict::Inconclusive);
        }
    }
}

pub fn contract(loaded: &Loaded, vertices: &[String], budget: Option<usize>) -> Outcome {
    collapse((|| {
        if vertices.is_empty() {
            return Err(Outcome::input_error("give the loop as a list of vertices"));
        }
        let mut out = Outcome::new(Verdict::Pass);
        match loaded {
            Loaded::Finite { complex, .. } => {
                let mut path: Vec<VertexId> = vertices
                    .iter()
                    .map(|t| finite_vertex(complex, t))
                    .collect::<Result<_, _>>()
                    .map_err(|e| Outcome::input_error(e.to_string()))?;
                close(&mut path);
                contract_in(complex, path, budget, &mut out)?;
            }
            Loaded::Periodic { complex, .. } => {
                let mut path: Vec<PVertex> = vertices
                    .iter()
                    .map(|t| periodic_vertex(complex, t))
                    .collect::<Result<_, _>>()
                    .map_err(|e| Outcome::input_error(e.to_string()))?;
                close(&mut path);
                let reach = path.iter().map(|v| v.z.abs()).max().unwrap_or(0) + path.len() as i64 + 1;
                let w = complex.materialize_window(reach).map_err(periodic_failure)?;
                let ids = path.iter().map(|&v| w.id(v).expect("inside")).collect();
                out.set("window_radius", reach);
                contract_in(&w.complex, ids, budget, &mut out)?;
            }
        }
        Ok(out)
    })())
}

fn close<V: Copy + PartialEq>(path: &mut Vec<V>) {
    if path.len() > 1 && path.first() != path.last() {
        path.push(path[0]);
    }
}

fn contract_in(x: &CubeComplex, path: Vec<VertexId>, budget: Option<usize>, out: &mut Outcome) -> Result<(), Outcome> {
    let path = CombinatorialPath::new(x, path).map_err(|e| Outcome::input_error(e.to_string()))?;
    let budget = budget.unwrap_or(10 * path.length() * path.length() + 10);
    out.set("length", path.length());
    let outcome = contract_loop(x, &path, budget).map_err(|e| Outcome::input_error(e.to_string()))?;
    contraction_result(out, &outcome, budget);
    Ok(())
}

pub fn generate(family: &str, size: usize, seed: u64, output: Option<&std::path::Path>) -> Outcome {
    let Some(family) = Family::from_name(family) else {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        return Outcome::input_error(format!("unknown family {family:?}; expected one of {}", names.join(", ")));
    };
    let text = cxc_core::format::serialize(&Document::generated(&GenSpec { seed, family, size }));
    let mut out = Outcome::new(Verdict::Pass);
    out.set("family", family.name());
    out.set("seed", seed);
    out.set("size", size);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return Outcome::input_error(format!("cannot write {}: {e}", path.display()));
            }
            out.set("output", path.display().to_string());
            out.line(format!("wrote {}", path.display()));
        }
        None => out.text.extend(text.lines().map(str::to_string)),
    }
    out.set("document", text);
    out
}
