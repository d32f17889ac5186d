//! Vertex links and the flag condition.
//!
//! The link of `v` has one vertex per edge at `v`; a set of `k + 1` such edges
//! spans a `k`-simplex when some `(k + 1)`-cube has `v` as a corner and those
//! edges as its edges at `v`. Only the combinatorics is kept.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{CubeComplex, EdgeId};
use crate::cube::VertexId;

/// Abstract simplicial complex on local vertices `0..labels.len()`.
///
/// Simplices are sorted vectors of local indices; the empty simplex is not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub labels: Vec<usize>,
    pub simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Downward closure of `facets` over `labels.len()` vertices; every vertex
    /// is added as a 0-simplex.
    pub fn from_facets(labels: Vec<usize>, facets: &[Vec<usize>]) -> Self {
        let mut simplices: BTreeSet<Vec<usize>> = (0..labels.len()).map(|i| vec![i]).collect();
        for facet in facets {
            let mut facet = facet.clone();
            facet.sort_unstable();
            facet.dedup();
            let n = facet.len();
            for mask in 1..(1usize << n) {
                simplices.insert((0..n).filter(|i| mask & (1 << i) != 0).map(|i| facet[i]).collect());
            }
        }
        SimplicialComplex { labels, simplices }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.simplices.contains(simplex)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.simplices
            .iter()
            .filter(|s| s.len() == 2)
            .map(|s| (s[0], s[1]))
    }

    /// Closed under faces, and every simplex uses listed vertices only.
    pub fn is_valid(&self) -> bool {
        self.simplices.iter().all(|s| {
            s.iter().all(|&i| i < self.labels.len())
                && s.windows(2).all(|w| w[0] < w[1])
                && (s.len() == 1
                    || (0..s.len()).all(|skip| {
                        let face: Vec<usize> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &x)| x)
                            .collect();
                        self.simplices.contains(&face)
                    }))
        })
    }

    /// Full subcomplex on the local vertices in `keep` (given as local indices).
    pub fn full_subcomplex(&self, keep: &[usize]) -> SimplicialComplex {
        let mut local = HashMap::new();
        for (new, &old) in keep.iter().enumerate() {
            local.insert(old, new);
        }
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|i| local.contains_key(i)))
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|i| local[i]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        SimplicialComplex {
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            simplices,
        }
    }
}

/// Outcome of the flag test. `witness` holds local indices of a clique that
/// spans no simplex while all its proper subsets do.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub flag: bool,
    pub witness: Option<Vec<usize>>,
}

/// Checks that every clique of the 1-skeleton spans a simplex.
///
/// Cliques are grown level by level from the edges; the search stops at the
/// first level containing a non-simplex, so the reported clique is minimal.
pub fn is_flag(s: &SimplicialComplex) -> FlagReport {
    let n = s.vertex_count();
    let mut adjacent = vec![vec![false; n]; n];
    for (a, b) in s.edges() {
        adjacent[a][b] = true;
        adjacent[b][a] = true;
    }
    let mut level: Vec<Vec<usize>> = s.edges().map(|(a, b)| vec![a, b]).collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for clique in &level {
            let last = *clique.last().expect("nonempty clique");
            for w in last + 1..n {
                if clique.iter().all(|&c| adjacent[c][w]) {
                    let mut bigger = clique.clone();
                    bigger.push(w);
                    if !s.contains(&bigger) {
                        return FlagReport {
                            flag: false,
                            witness: Some(bigger),
                        };
                    }
                    next.push(bigger);
                }
            }
        }
        level = next;
    }
    FlagReport {
        flag: true,
        witness: None,
    }
}

/// A link vertex: the edge at the base vertex and its other endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkVertex {
    pub edge: EdgeId,
    pub far: VertexId,
}

#[derive(Clone, Debug)]
pub struct Link {
    pub base: VertexId,
    pub vertices: Vec<LinkVertex>,
    pub complex: SimplicialComplex,
}

impl Link {
    /// Translates local link indices to the far endpoints of their edges.
    pub fn far_vertices(&self, local: &[usize]) -> Vec<VertexId> {
        local.iter().map(|&i| self.vertices[i].far).collect()
    }

    pub fn local_index(&self, far: VertexId) -> Option<usize> {
        self.vertices.iter().position(|lv| lv.far == far)
    }
}

/// Simplex of the link of `v` contributed by each cube at `v`, one entry per cube.
fn cube_simplices(x: &CubeComplex, v: VertexId) -> Vec<Vec<usize>> {
    let neighbours = x.neighbours(v);
    x.incident_cubes(v)
        .iter()
        .filter_map(|&r| {
            let far = x.cube(r).neighbours_of(v)?;
            let mut simplex: Vec<usize> = far
                .iter()
                .filter_map(|w| neighbours.binary_search(w).ok())
                .collect();
            simplex.sort_unstable();
            Some(simplex)
        })
        .collect()
}

pub fn link_of_vertex(x: &CubeComplex, v: VertexId) -> Link {
    let vertices: Vec<LinkVertex> = x
        .neighbours(v)
        .iter()
        .map(|&w| LinkVertex {
            edge: x.edge_between(v, w).expect("neighbours share an edge"),
            far: w,
        })
        .collect();
    let simplices: BTreeSet<Vec<usize>> = cube_simplices(x, v)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    Link {
        base: v,
        complex: SimplicialComplex {
            labels: vertices.iter().map(|lv| lv.edge.0).collect(),
            simplices,
        },
        vertices,
    }
}

/// True when no two cubes at `v` contribute the same link simplex.
pub fn link_is_simplicial(x: &CubeComplex, v: VertexId) -> bool {
    let simplices = cube_simplices(x, v);
    let distinct: BTreeSet<&Vec<usize>> = simplices.iter().collect();
    distinct.len() == simplices.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLinkCheck {
    pub vertex: VertexId,
    pub flag: bool,
    /// Far endpoints of a minimal clique of link vertices spanning no simplex.
    pub witness: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GromovReport {
    pub pass: bool,
    pub vertices: Vec<VertexLinkCheck>,
}

impl GromovReport {
    pub fn failures(&self) -> impl Iterator<Item = &VertexLinkCheck> {
        self.vertices.iter().filter(|c| !c.flag)
    }
}

pub fn check_vertex_link(x: &CubeComplex, v: VertexId) -> VertexLinkCheck {
    let link = link_of_vertex(x, v);
    let report = is_flag(&link.complex);
    VertexLinkCheck {
        vertex: v,
        flag: report.flag,
        witness: report.witness.map(|w| link.far_vertices(&w)),
    }
}

/// Flag test of every vertex link.
pub fn gromov_check(x: &CubeComplex) -> GromovReport {
    let vertices: Vec<VertexLinkCheck> = x.vertices().map(|v| check_vertex_link(x, v)).collect();
    GromovReport {
        pass: vertices.iter().all(|c| c.flag),
        vertices,
    }
}
