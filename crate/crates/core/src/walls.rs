//! Walls (equivalence classes of edges under elementary parallelism) and
//! their halfspaces.
//!
//! Two edges are elementary parallel when they are opposite sides of a square.
//! Walls are the classes of the generated equivalence relation, computed by a
//! union-find pass over the squares.

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{CubeComplex, CubeRef, EdgeId};
use crate::cube::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct WallId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub id: WallId,
    /// Sorted; never empty.
    pub edges: Vec<EdgeId>,
}

/// Partition of the edge set into walls, numbered by smallest edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallTable {
    walls: Vec<Wall>,
    edge_wall: Vec<WallId>,
}

impl WallTable {
    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall(&self, w: WallId) -> &Wall {
        &self.walls[w.0]
    }

    pub fn wall_of(&self, e: EdgeId) -> WallId {
        self.edge_wall[e.0]
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }
}

/// Edge ids of the two pairs of opposite sides of a square: `[(a, b), (c, d)]`
/// where `a ∥ b` (coordinate 0) and `c ∥ d` (coordinate 1).
pub fn opposite_side_pairs(x: &CubeComplex, square: CubeRef) -> [(EdgeId, EdgeId); 2] {
    let c = x.cube(square).corners();
    let edge = |i: usize, j: usize| x.edge_between(c[i], c[j]).expect("faces are stored");
    [(edge(0, 1), edge(2, 3)), (edge(0, 2), edge(1, 3))]
}

pub fn compute_walls(x: &CubeComplex) -> WallTable {
    let m = x.edge_count();
    let mut uf: UnionFind<usize> = UnionFind::new(m);
    for index in 0..x.squares().len() {
        for (a, b) in opposite_side_pairs(x, CubeRef { dim: 2, index }) {
            uf.union(a.0, b.0);
        }
    }
    let mut root_wall = vec![usize::MAX; m];
    let mut walls: Vec<Wall> = Vec::new();
    let mut edge_wall = vec![WallId(0); m];
    for e in 0..m {
        let root = uf.find_mut(e);
        if root_wall[root] == usize::MAX {
            root_wall[root] = walls.len();
            walls.push(Wall {
                id: WallId(walls.len()),
                edges: Vec::new(),
            });
        }
        let w = root_wall[root];
        walls[w].edges.push(EdgeId(e));
        edge_wall[e] = WallId(w);
    }
    WallTable { walls, edge_wall }
}

/// A square met by the wall in both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SelfIntersection {
    pub square: CubeRef,
    pub edges: (EdgeId, EdgeId),
}

/// Some square contains two non-opposite edges of `w`.
pub fn is_self_intersecting(x: &CubeComplex, table: &WallTable, w: WallId) -> Option<SelfIntersection> {
    (0..x.squares().len()).find_map(|index| {
        let square = CubeRef { dim: 2, index };
        let [(a, _), (c, _)] = opposite_side_pairs(x, square);
        (table.wall_of(a) == w && table.wall_of(c) == w).then_some(SelfIntersection { square, edges: (a, c) })
    })
}

/// Two distinct edges of the wall meeting at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SelfParallel {
    pub vertex: VertexId,
    pub edges: (EdgeId, EdgeId),
}

pub fn is_self_parallel(x: &CubeComplex, table: &WallTable, w: WallId) -> Option<SelfParallel> {
    let mut seen: Vec<Option<EdgeId>> = vec![None; x.vertex_count()];
    for &e in &table.wall(w).edges {
        let (a, b) = x.edge_endpoints(e);
        for v in [a, b] {
            if let Some(first) = seen[v.0] {
                return Some(SelfParallel {
                    vertex: v,
                    edges: (first, e),
                });
            }
            seen[v.0] = Some(e);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallError {
    #[error("wall {wall:?} cuts the complex into {components} pieces instead of two")]
    NotTwoSided { wall: WallId, components: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    A,
    B,
}

/// The two components left after deleting the wall's edges. `side_a` holds
/// the first endpoint of the wall's smallest edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfspacePair {
    pub wall: WallId,
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
    #[serde(skip)]
    in_a: Vec<bool>,
}

impl HalfspacePair {
    pub fn side_of(&self, v: VertexId) -> Side {
        if self.in_a[v.0] {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn separates(&self, u: VertexId, v: VertexId) -> bool {
        self.in_a[u.0] != self.in_a[v.0]
    }

    pub fn side(&self, side: Side) -> &[VertexId] {
        match side {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }
}

pub fn halfspaces(x: &CubeComplex, table: &WallTable, w: WallId) -> Result<HalfspacePair, WallError> {
    let n = x.vertex_count();
    let mut removed = vec![false; x.edge_count()];
    for e in &table.wall(w).edges {
        removed[e.0] = true;
    }
    let mut label = vec![usize::MAX; n];
    let mut components = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = components;
        let mut stack = vec![VertexId(start)];
        while let Some(v) = stack.pop() {
            for &u in x.neighbours(v) {
                let e = x.edge_between(v, u).expect("adjacent");
                if !removed[e.0] && label[u.0] == usize::MAX {
                    label[u.0] = components;
                    stack.push(u);
                }
            }
        }
        components += 1;
    }
    if components != 2 {
        return Err(WallError::NotTwoSided { wall: w, components });
    }
    let (a, _) = x.edge_endpoints(table.wall(w).edges[0]);
    let in_a: Vec<bool> = label.iter().map(|&l| l == label[a.0]).collect();
    let side_a = (0..n).filter(|&v| in_a[v]).map(VertexId).collect();
    let side_b = (0..n).filter(|&v| !in_a[v]).map(VertexId).collect();
    Ok(HalfspacePair {
        wall: w,
        side_a,
        side_b,
        in_a,
    })
}

pub fn separates(h: &HalfspacePair, u: VertexId, v: VertexId) -> bool {
    h.separates(u, v)
}

/// Halfspaces of every wall, failing on the first one-sided or many-sided wall.
pub fn all_halfspaces(x: &CubeComplex, table: &WallTable) -> Result<Vec<HalfspacePair>, WallError> {
    table.walls().iter().map(|w| halfspaces(x, table, w.id)).collect()
}

pub fn separating_walls(
    x: &CubeComplex,
    table: &WallTable,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<WallId>, WallError> {
    Ok(all_halfspaces(x, table)?
        .iter()
        .filter(|h| h.separates(u, v))
        .map(|h| h.wall)
        .collect())
}

pub fn distance_by_walls(x: &CubeComplex, table: &WallTable, u: VertexId, v: VertexId) -> Result<usize, WallError> {
    separating_walls(x, table, u, v).map(|walls| walls.len())
}

/// Per-wall summary of the structural checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallSummary {
    pub id: WallId,
    pub edges: Vec<EdgeId>,
    pub self_intersection: Option<SelfIntersection>,
    pub self_parallel: Option<SelfParallel>,
    /// Component count after deleting the wall; two for a two-sided wall.
    pub components: usize,
}

impl WallSummary {
    pub fn is_clean(&self) -> bool {
        self.self_intersection.is_none() && self.self_parallel.is_none() && self.components == 2
    }
}

pub fn wall_summaries(x: &CubeComplex, table: &WallTable) -> Vec<WallSummary> {
    table
        .walls()
        .iter()
        .map(|w| WallSummary {
            id: w.id,
            edges: w.edges.clone(),
            self_intersection: is_self_intersecting(x, table, w.id),
            self_parallel: is_self_parallel(x, table, w.id),
            components: match halfspaces(x, table, w.id) {
                Ok(_) => 2,
                Err(WallError::NotTwoSided { components, .. }) => components,
            },
        })
        .collect()
}
