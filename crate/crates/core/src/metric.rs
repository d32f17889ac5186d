//! Combinatorial distance in the 1-skeleton and the notions built on it:
//! intervals, geodesics, medians and convexity.
//!
//! Every search visits neighbours in increasing vertex id, so paths and
//! geodesic enumerations are deterministic.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::complex::CubeComplex;
use crate::cube::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(VertexId, VertexId),
    #[error("loop is not closed: starts at {0}, ends at {1}")]
    NotClosed(VertexId, VertexId),
    #[error("path is empty")]
    EmptyPath,
    #[error("consecutive vertices {0} and {1} are neither equal nor adjacent")]
    NotAPath(VertexId, VertexId),
}

/// Distances from `source`; `None` for unreachable vertices.
pub fn bfs_distances(x: &CubeComplex, source: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; x.vertex_count()];
    dist[source.0] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v.0].expect("queued vertices are reached");
        for &w in x.neighbours(v) {
            if dist[w.0].is_none() {
                dist[w.0] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn bfs_distance(x: &CubeComplex, u: VertexId, v: VertexId) -> Result<usize, MetricError> {
    bfs_distances(x, u)[v.0].ok_or(MetricError::Disconnected(u, v))
}

/// All-pairs distances by one BFS per vertex.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    const UNREACHABLE: u32 = u32::MAX;

    pub fn new(x: &CubeComplex) -> Self {
        let n = x.vertex_count();
        let mut d = vec![Self::UNREACHABLE; n * n];
        for s in x.vertices() {
            for (t, dist) in bfs_distances(x, s).into_iter().enumerate() {
                if let Some(dist) = dist {
                    d[s.0 * n + t] = dist as u32;
                }
            }
        }
        DistanceMatrix { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Option<usize> {
        match self.d[u.0 * self.n + v.0] {
            Self::UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    #[inline]
    fn raw(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    /// Is `z` on some geodesic from `u` to `v`?
    pub fn between(&self, u: VertexId, z: VertexId, v: VertexId) -> bool {
        let (uv, uz, zv) = (self.raw(u.0, v.0), self.raw(u.0, z.0), self.raw(z.0, v.0));
        uv != Self::UNREACHABLE
            && uz != Self::UNREACHABLE
            && zv != Self::UNREACHABLE
            && uz + zv == uv
    }
}

/// Vertex sequence whose consecutive entries are equal or adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CombinatorialPath {
    vertices: Vec<VertexId>,
}

impl CombinatorialPath {
    pub fn new(x: &CubeComplex, vertices: Vec<VertexId>) -> Result<Self, MetricError> {
        if vertices.is_empty() {
            return Err(MetricError::EmptyPath);
        }
        for w in vertices.windows(2) {
            if w[0] != w[1] && !x.are_adjacent(w[0], w[1]) {
                return Err(MetricError::NotAPath(w[0], w[1]));
            }
        }
        Ok(CombinatorialPath { vertices })
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<VertexId>) -> Self {
        CombinatorialPath { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of steps, counting stationary ones.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("nonempty path")
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub u: VertexId,
    pub v: VertexId,
    /// Sorted vertices lying on some geodesic from `u` to `v`.
    pub members: Vec<VertexId>,
}

impl Interval {
    pub fn contains(&self, z: VertexId) -> bool {
        self.members.binary_search(&z).is_ok()
    }
}

/// Interval by two BFS sweeps.
pub fn interval(x: &CubeComplex, u: VertexId, v: VertexId) -> Result<Interval, MetricError> {
    let from_u = bfs_distances(x, u);
    let from_v = bfs_distances(x, v);
    let d = from_u[v.0].ok_or(MetricError::Disconnected(u, v))?;
    let members = x
        .vertices()
        .filter(|z| matches!((from_u[z.0], from_v[z.0]), (Some(a), Some(b)) if a + b == d))
        .collect();
    Ok(Interval { u, v, members })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Geodesics {
    pub paths: Vec<CombinatorialPath>,
    /// More geodesics exist than the cap allowed.
    pub overflow: bool,
}

/// Geodesics from `u` to `v` in lexicographic order, at most `cap` of them.
pub fn enumerate_geodesics(
    x: &CubeComplex,
    u: VertexId,
    v: VertexId,
    cap: usize,
) -> Result<Geodesics, MetricError> {
    let to_v = bfs_distances(x, v);
    if to_v[u.0].is_none() {
        return Err(MetricError::Disconnected(u, v));
    }
    let mut out = Geodesics {
        paths: Vec::new(),
        overflow: false,
    };
    let mut stack = vec![u];
    extend_geodesics(x, &to_v, v, cap, &mut stack, &mut out);
    Ok(out)
}

fn extend_geodesics(
    x: &CubeComplex,
    to_v: &[Option<usize>],
    v: VertexId,
    cap: usize,
    stack: &mut Vec<VertexId>,
    out: &mut Geodesics,
) {
    if out.overflow {
        return;
    }
    let cur = *stack.last().expect("nonempty");
    if cur == v {
        if out.paths.len() == cap {
            out.overflow = true;
        } else {
            out.paths.push(CombinatorialPath::from_vertices_unchecked(stack.clone()));
        }
        return;
    }
    let d = to_v[cur.0].expect("on a geodesic");
    for &w in x.neighbours(cur) {
        if to_v[w.0] == Some(d - 1) {
            stack.push(w);
            extend_geodesics(x, to_v, v, cap, stack, out);
            stack.pop();
            if out.overflow {
                return;
            }
        }
    }
}

/// Lexicographically smallest geodesic from `u` to `v`.
pub fn shortest_path(x: &CubeComplex, u: VertexId, v: VertexId) -> Result<CombinatorialPath, MetricError> {
    let to_v = bfs_distances(x, v);
    let mut d = to_v[u.0].ok_or(MetricError::Disconnected(u, v))?;
    let mut path = vec![u];
    let mut cur = u;
    while d > 0 {
        cur = *x
            .neighbours(cur)
            .iter()
            .find(|w| to_v[w.0] == Some(d - 1))
            .expect("BFS layers are connected");
        path.push(cur);
        d -= 1;
    }
    Ok(CombinatorialPath::from_vertices_unchecked(path))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "kebab-case")]
pub enum Median {
    Unique(VertexId),
    NoMedian,
    Multiple(Vec<VertexId>),
}

pub fn median_in(dm: &DistanceMatrix, u: VertexId, v: VertexId, w: VertexId) -> Median {
    let found: Vec<VertexId> = (0..dm.len())
        .map(VertexId)
        .filter(|&z| dm.between(u, z, v) && dm.between(v, z, w) && dm.between(u, z, w))
        .collect();
    match found.len() {
        0 => Median::NoMedian,
        1 => Median::Unique(found[0]),
        _ => Median::Multiple(found),
    }
}

pub fn median(x: &CubeComplex, u: VertexId, v: VertexId, w: VertexId) -> Result<Median, MetricError> {
    let iuv = interval(x, u, v)?;
    let ivw = interval(x, v, w)?;
    let iuw = interval(x, u, w)?;
    let found: Vec<VertexId> = iuv
        .members
        .iter()
        .copied()
        .filter(|&z| ivw.contains(z) && iuw.contains(z))
        .collect();
    Ok(match found.len() {
        0 => Median::NoMedian,
        1 => Median::Unique(found[0]),
        _ => Median::Multiple(found),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MedianTriple {
    pub triple: [VertexId; 3],
    pub median: Median,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MedianGraphReport {
    pub is_median: bool,
    pub connected: bool,
    pub witness: Option<MedianTriple>,
}

/// Exhaustive unique-median test over all triples `u < v < w`.
pub fn is_median_graph(x: &CubeComplex) -> MedianGraphReport {
    let dm = DistanceMatrix::new(x);
    median_graph_report(x, &dm)
}

pub fn median_graph_report(x: &CubeComplex, dm: &DistanceMatrix) -> MedianGraphReport {
    if !x.is_connected() {
        return MedianGraphReport {
            is_median: false,
            connected: false,
            witness: None,
        };
    }
    let n = x.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let triple = [VertexId(u), VertexId(v), VertexId(w)];
                let m = median_in(dm, triple[0], triple[1], triple[2]);
                if !matches!(m, Median::Unique(_)) {
                    return MedianGraphReport {
                        is_median: false,
                        connected: true,
                        witness: Some(MedianTriple { triple, median: m }),
                    };
                }
            }
        }
    }
    MedianGraphReport {
        is_median: true,
        connected: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConvexityWitness {
    /// `z` lies on a geodesic from `u` to `v` but outside the set.
    Escapes { u: VertexId, v: VertexId, z: VertexId },
    /// The set does not induce a connected subgraph.
    Disconnected { u: VertexId, v: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityReport {
    pub convex: bool,
    pub witness: Option<ConvexityWitness>,
}

/// Interval-closure test for the full subcomplex spanned by `s`.
pub fn is_convex_subcomplex(x: &CubeComplex, s: &[VertexId]) -> ConvexityReport {
    let dm = DistanceMatrix::new(x);
    convexity_with(x, &dm, s)
}

pub fn convexity_with(x: &CubeComplex, dm: &DistanceMatrix, s: &[VertexId]) -> ConvexityReport {
    let mut member = vec![false; x.vertex_count()];
    for v in s {
        member[v.0] = true;
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for (i, &u) in sorted.iter().enumerate() {
        for &v in &sorted[i + 1..] {
            if dm.get(u, v).is_none() {
                continue;
            }
            if let Some(z) = x.vertices().find(|&z| !member[z.0] && dm.between(u, z, v)) {
                return ConvexityReport {
                    convex: false,
                    witness: Some(ConvexityWitness::Escapes { u, v, z }),
                };
            }
        }
    }
    let (sub, old) = x.induced(&member);
    let comps = sub.components();
    if comps.len() > 1 {
        return ConvexityReport {
            convex: false,
            witness: Some(ConvexityWitness::Disconnected {
                u: old[comps[0][0].0],
                v: old[comps[1][0].0],
            }),
        };
    }
    ConvexityReport {
        convex: true,
        witness: None,
    }
}

/// First pair whose distance inside the full subcomplex on `s` differs from
/// the ambient distance, as `(u, v, ambient, internal)`.
pub fn isometry_defect(
    x: &CubeComplex,
    s: &[VertexId],
) -> Option<(VertexId, VertexId, Option<usize>, Option<usize>)> {
    let mut member = vec![false; x.vertex_count()];
    for v in s {
        member[v.0] = true;
    }
    let (sub, old) = x.induced(&member);
    let ambient = DistanceMatrix::new(x);
    let inner = DistanceMatrix::new(&sub);
    for i in 0..old.len() {
        for j in i + 1..old.len() {
            let a = ambient.get(old[i], old[j]);
            let b = inner.get(VertexId(i), VertexId(j));
            if a != b {
                return Some((old[i], old[j], a, b));
            }
        }
    }
    None
}
