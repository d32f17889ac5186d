//! Bounded checks that a periodic minimal displacement set is convex and
//! CAT(0): interval closure and isometric embedding over pairs of bounded
//! z-spread, flag links containing the right simplices, contractible sampled
//! loops and unique medians.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::periodic::PeriodicMinSet;
use crate::complex::CubeComplex;
use crate::contraction::{contract_loop, random_loop, ContractionOutcome};
use crate::cube::VertexId;
use crate::link::{is_flag, link_of_vertex};
use crate::metric::bfs_distances;
use crate::periodic::{PVertex, PeriodicComplex, PeriodicError};

/// Default z-spread for the Min checks: `3|g| + 4`.
pub fn default_spread(translation_length: usize) -> i64 {
    3 * translation_length as i64 + 4
}

/// Full subcomplexes of windows spanned by a vertex predicate, cached by radius.
struct Restricted<'a, F> {
    p: &'a PeriodicComplex,
    member: F,
    cache: HashMap<i64, (CubeComplex, HashMap<PVertex, VertexId>, Vec<PVertex>)>,
}

impl<'a, F: Fn(PVertex) -> bool> Restricted<'a, F> {
    fn new(p: &'a PeriodicComplex, member: F) -> Self {
        Restricted {
            p,
            member,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, radius: i64) -> Result<&(CubeComplex, HashMap<PVertex, VertexId>, Vec<PVertex>), PeriodicError> {
        if !self.cache.contains_key(&radius) {
            let w = self.p.materialize_window(radius)?;
            let (complex, labels) = w.restrict(&self.member);
            let index = labels.iter().enumerate().map(|(i, &v)| (v, VertexId(i))).collect();
            self.cache.insert(radius, (complex, index, labels));
        }
        Ok(&self.cache[&radius])
    }

    /// Distance inside the restricted window; `None` if not connected there.
    fn distance(&mut self, radius: i64, u: PVertex, v: PVertex) -> Result<Option<usize>, PeriodicError> {
        let (complex, index, _) = self.get(radius)?;
        match (index.get(&u), index.get(&v)) {
            (Some(&a), Some(&b)) => Ok(bfs_distances(complex, a)[b.0]),
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConvexWitness {
    /// `z` lies on a geodesic from `u` to `v` but outside the set.
    Escapes { u: PVertex, v: PVertex, z: PVertex },
    /// Distance inside the set differs from the ambient distance.
    Isometry {
        u: PVertex,
        v: PVertex,
        ambient: usize,
        internal: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexReport {
    pub pass: bool,
    pub pairs_checked: usize,
    pub witness: Option<ConvexWitness>,
}

/// Checks, for each pair, that the certified interval stays in the set and
/// that the distance inside the set's full subcomplex equals the ambient one.
/// Stops at the first failing pair.
pub fn verify_convex_set(
    p: &PeriodicComplex,
    member: impl Fn(PVertex) -> bool,
    pairs: &[(PVertex, PVertex)],
) -> Result<ConvexReport, PeriodicError> {
    let mut inner = Restricted::new(p, &member);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let interval = p.certified_interval(u, v)?;
        let witness = match interval.members.iter().find(|&&z| !member(z)) {
            Some(&z) => Some(ConvexWitness::Escapes { u, v, z }),
            None => {
                let ambient = interval.certificate.value;
                let internal = inner.distance(interval.certificate.radius, u, v)?;
                (internal != Some(ambient)).then_some(ConvexWitness::Isometry { u, v, ambient, internal })
            }
        };
        if witness.is_some() {
            return Ok(ConvexReport {
                pass: false,
                pairs_checked: i + 1,
                witness,
            });
        }
    }
    Ok(ConvexReport {
        pass: true,
        pairs_checked: pairs.len(),
        witness: None,
    })
}

/// Pairs `(u, v)` with `u` an orbit representative at `z = 0` and `v` any
/// Min vertex with `|z| <= spread`; by shift invariance these cover every
/// pair of Min vertices whose z-coordinates differ by at most `spread`.
pub fn min_pairs(min: &PeriodicMinSet, spread: i64) -> Vec<(PVertex, PVertex)> {
    let mut out = Vec::new();
    for u in min.representatives() {
        for z in -spread..=spread {
            for &o in &min.orbits {
                let v = PVertex { orbit: o, z };
                if v != u {
                    out.push((u, v));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinConvexReport {
    pub pass: bool,
    pub spread: i64,
    pub pairs_checked: usize,
    pub witness: Option<ConvexWitness>,
}

pub fn verify_min_convex(p: &PeriodicComplex, min: &PeriodicMinSet, spread: i64) -> Result<MinConvexReport, PeriodicError> {
    let report = verify_convex_set(p, |v| min.contains(v), &min_pairs(min, spread))?;
    Ok(MinConvexReport {
        pass: report.pass,
        spread,
        pairs_checked: report.pairs_checked,
        witness: report.witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinLinkCheck {
    pub vertex: PVertex,
    /// Every link vertex of Min at `vertex` is a link vertex of the complex.
    pub contained: bool,
    /// The Min link is the full subcomplex of the ambient link on its vertices.
    pub full: bool,
    pub flag: bool,
    /// Far endpoints of a clique spanning no simplex.
    pub witness: Option<Vec<PVertex>>,
}

impl MinLinkCheck {
    pub fn pass(&self) -> bool {
        self.contained && self.full && self.flag
    }
}

/// Link checks at each Min orbit representative.
pub fn check_min_links(p: &PeriodicComplex, min: &PeriodicMinSet) -> Result<Vec<MinLinkCheck>, PeriodicError> {
    // every cube at a vertex with z = 0 lies in |z| <= 1
    let w = p.materialize_window(2)?;
    let (sub, labels) = w.restrict(|v| min.contains(v));
    let mut out = Vec::new();
    for v in min.representatives() {
        let ambient = link_of_vertex(&w.complex, w.id(v).expect("inside"));
        let local = labels.iter().position(|&l| l == v).expect("Min vertex inside");
        let inner = link_of_vertex(&sub, VertexId(local));
        let far: Vec<PVertex> = inner.vertices.iter().map(|lv| labels[lv.far.0]).collect();
        let keep: Option<Vec<usize>> = far
            .iter()
            .map(|&f| ambient.local_index(w.id(f).expect("inside")))
            .collect();
        let contained = keep.is_some();
        let full = keep.is_some_and(|keep| ambient.complex.full_subcomplex(&keep).simplices == inner.complex.simplices);
        let flag = is_flag(&inner.complex);
        out.push(MinLinkCheck {
            vertex: v,
            contained,
            full,
            flag: flag.flag,
            witness: flag.witness.map(|c| c.iter().map(|&i| far[i]).collect()),
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cat0Options {
    pub loop_samples: usize,
    pub max_loop_len: usize,
    pub seed: u64,
    pub spread: i64,
}

impl Cat0Options {
    pub fn for_translation_length(translation_length: usize) -> Self {
        Cat0Options {
            loop_samples: 100,
            max_loop_len: 12,
            seed: 0,
            spread: default_spread(translation_length),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopSummary {
    pub sampled: usize,
    pub contracted: usize,
    /// Loops that needed the doubled budget.
    pub rechecked: usize,
    /// Loops still uncontracted at the doubled budget.
    pub failed: Vec<Vec<PVertex>>,
}

/// Random loops of length at most `max_loop_len` in Min, started at the
/// orbit representatives in turn and contracted inside Min.
pub fn sample_min_loops(p: &PeriodicComplex, min: &PeriodicMinSet, opts: &Cat0Options) -> Result<LoopSummary, PeriodicError> {
    sample_loops(p, |v| min.contains(v), &min.representatives(), opts)
}

/// Random loops in the full subcomplex spanned by `member`, started at
/// `reps` in turn; a loop not contracted within `10 len^2 + 10` moves is
/// retried once at double budget.
pub fn sample_loops(
    p: &PeriodicComplex,
    member: impl Fn(PVertex) -> bool,
    reps: &[PVertex],
    opts: &Cat0Options,
) -> Result<LoopSummary, PeriodicError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let radius = opts.max_loop_len as i64 + 1;
    let w = p.materialize_window(radius)?;
    let (sub, labels) = w.restrict(member);
    let mut summary = LoopSummary {
        sampled: 0,
        contracted: 0,
        rechecked: 0,
        failed: Vec::new(),
    };
    for i in 0..opts.loop_samples {
        let start = reps[i % reps.len()];
        let local = VertexId(labels.iter().position(|&l| l == start).expect("inside"));
        let path = random_loop(&sub, local, opts.max_loop_len, &mut rng);
        let budget = 10 * path.length() * path.length() + 10;
        summary.sampled += 1;
        let first = contract_loop(&sub, &path, budget).expect("closed");
        let outcome = match first {
            ContractionOutcome::Contracted(_) => first,
            ContractionOutcome::Inconclusive { .. } => {
                summary.rechecked += 1;
                contract_loop(&sub, &path, 2 * budget).expect("closed")
            }
        };
        if outcome.is_contracted() {
            summary.contracted += 1;
        } else {
            summary.failed.push(path.vertices().iter().map(|v| labels[v.0]).collect());
        }
    }
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MedianFailure {
    pub triple: [PVertex; 3],
    pub medians: Vec<PVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MedianSummary {
    pub triples: usize,
    pub failure: Option<MedianFailure>,
}

/// Unique medians in Min for triples `(u, v, w)` with `u` an orbit
/// representative and `v, w` within the spread. Distances are taken in a
/// window of Min that is wide enough to hold every geodesic between the
/// three vertices, so the median sets are exact.
pub fn check_min_medians(p: &PeriodicComplex, min: &PeriodicMinSet, spread: i64) -> Result<MedianSummary, PeriodicError> {
    let mut inner = Restricted::new(p, |v| min.contains(v));
    let mut radius = 2 * spread + p.orbit_count() as i64;
    let others: Vec<PVertex> = (-spread..=spread)
        .flat_map(|z| min.orbits.iter().map(move |&o| PVertex { orbit: o, z }))
        .collect();
    let mut triples = 0;
    let mut bfs: HashMap<PVertex, Vec<Option<usize>>> = HashMap::new();
    for u in min.representatives() {
        for (i, &v) in others.iter().enumerate() {
            for &w in &others[i + 1..] {
                let triple = [u, v, w];
                let reach = triple.iter().map(|x| x.z.abs()).max().expect("three");
                let found = loop {
                    if p.orbit_count().saturating_mul(2 * radius as usize + 1) > p.growth_cap() {
                        return Err(PeriodicError::GrowthCapExceeded { cap: p.growth_cap() });
                    }
                    let (complex, index, labels) = inner.get(radius)?;
                    for x in &triple {
                        bfs.entry(*x).or_insert_with(|| bfs_distances(complex, index[x]));
                    }
                    let dist: Vec<&Vec<Option<usize>>> = triple.iter().map(|x| &bfs[x]).collect();
                    let pair = |a: usize, b: usize| dist[a][index[&triple[b]].0];
                    let (duv, dvw, duw) = (pair(0, 1), pair(1, 2), pair(0, 2));
                    match (duv, dvw, duw) {
                        (Some(a), Some(b), Some(c)) if reach + a.max(b).max(c) as i64 <= radius => {
                            let medians: Vec<PVertex> = (0..labels.len())
                                .filter(|&x| {
                                    let d = |k: usize| dist[k][x];
                                    matches!((d(0), d(1), d(2)), (Some(x0), Some(x1), Some(x2))
                                        if x0 + x1 == a && x1 + x2 == b && x0 + x2 == c)
                                })
                                .map(|x| labels[x])
                                .collect();
                            break medians;
                        }
                        _ => {
                            radius *= 2;
                            bfs.clear();
                        }
                    }
                };
                triples += 1;
                if found.len() != 1 {
                    return Ok(MedianSummary {
                        triples,
                        failure: Some(MedianFailure { triple, medians: found }),
                    });
                }
            }
        }
    }
    Ok(MedianSummary { triples, failure: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinCat0Report {
    pub pass: bool,
    pub links: Vec<MinLinkCheck>,
    pub loops: LoopSummary,
    pub medians: MedianSummary,
}

pub fn verify_min_cat0(p: &PeriodicComplex, min: &PeriodicMinSet, opts: &Cat0Options) -> Result<MinCat0Report, PeriodicError> {
    let links = check_min_links(p, min)?;
    let loops = sample_min_loops(p, min, opts)?;
    let medians = check_min_medians(p, min, opts.spread)?;
    Ok(MinCat0Report {
        pass: links.iter().all(MinLinkCheck::pass) && loops.failed.is_empty() && medians.failure.is_none(),
        links,
        loops,
        medians,
    })
}
