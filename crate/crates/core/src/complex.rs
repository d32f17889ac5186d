//! Finite cubical complexes over a shared vertex set.
//!
//! A complex is a face-closed family of cubes. Gluing is implicit: two cubes
//! are glued along whatever corners they share, and [`CubeComplex::build`]
//! rejects every configuration in which that shared corner set is not a
//! common face. All cubes are stored explicitly, bucketed by dimension and
//! sorted by canonical corner sequence, so [`EdgeId`]s are stable indices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cube::{Cube, CubeError, VertexId};

/// Reference to a stored cube: its dimension and index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CubeRef {
    pub dim: usize,
    pub index: usize,
}

/// Index of a 1-cube in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Errors raised while building a complex. Cube indices refer to the input list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cube #{cube}: {len} corners is not a power of two")]
    BadArity { cube: usize, len: usize },
    #[error("cube #{cube} is glued to itself: corners {corners:?}")]
    SelfGluedCube { cube: usize, corners: Vec<usize> },
    #[error("cube #{second} duplicates cube #{first}")]
    DuplicateCube { first: usize, second: usize },
    #[error("cubes #{first} and #{second} generate two different cubes on vertex set {vertices:?}")]
    Embedding {
        first: usize,
        second: usize,
        vertices: Vec<usize>,
    },
    #[error("cubes #{first} and #{second} share corners {shared:?}, which is not a common face")]
    BadGluing {
        first: usize,
        second: usize,
        shared: Vec<usize>,
    },
}

/// Named invariants checked by [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    VertexRange,
    SelfGlued,
    FaceClosure,
    Embedding,
    Gluing,
    SimpleGraph,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::VertexRange => "vertex-range",
            Rule::SelfGlued => "self-glued",
            Rule::FaceClosure => "face-closure",
            Rule::Embedding => "embedding",
            Rule::Gluing => "gluing",
            Rule::SimpleGraph => "simple-graph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub cubes: Vec<CubeRef>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    vertex_count: usize,
    cubes: Vec<Vec<Cube>>,
    lookup: HashMap<Vec<VertexId>, CubeRef>,
    adjacency: Vec<Vec<VertexId>>,
    incident: Vec<Vec<CubeRef>>,
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.cubes == other.cubes
    }
}

impl Eq for CubeComplex {}

impl CubeComplex {
    /// Builds and validates a complex from corner sequences in mask order.
    ///
    /// The vertex set is `0..=max id`; vertices not covered by any listed cube
    /// are isolated.
    pub fn build(cube_list: &[Vec<usize>]) -> Result<Self, ComplexError> {
        Self::build_with_vertex_count(0, cube_list)
    }

    /// Like [`CubeComplex::build`], with at least `vertex_count` vertices.
    pub fn build_with_vertex_count(
        vertex_count: usize,
        cube_list: &[Vec<usize>],
    ) -> Result<Self, ComplexError> {
        let mut inputs: Vec<Cube> = Vec::with_capacity(cube_list.len());
        for (i, corners) in cube_list.iter().enumerate() {
            let raw = Cube::from_corners_unchecked(corners.iter().copied().map(VertexId).collect())
                .map_err(|_| ComplexError::BadArity {
                    cube: i,
                    len: corners.len(),
                })?;
            if !raw.has_distinct_corners() {
                return Err(ComplexError::SelfGluedCube {
                    cube: i,
                    corners: corners.clone(),
                });
            }
            inputs.push(raw.canonical());
        }

        let mut seen: HashMap<&Cube, usize> = HashMap::new();
        for (i, cube) in inputs.iter().enumerate() {
            if let Some(&first) = seen.get(cube) {
                return Err(ComplexError::DuplicateCube { first, second: i });
            }
            seen.insert(cube, i);
        }

        // face closure, remembering which input produced each cube
        let mut closure: HashMap<Vec<VertexId>, (Cube, usize)> = HashMap::new();
        for (i, cube) in inputs.iter().enumerate() {
            for k in 0..=cube.dim() {
                for face in cube.faces(k).expect("k <= dim") {
                    let key = face.vertex_set();
                    match closure.get(&key) {
                        Some((existing, origin)) if *existing != face => {
                            return Err(ComplexError::Embedding {
                                first: *origin,
                                second: i,
                                vertices: key.iter().map(|v| v.0).collect(),
                            });
                        }
                        Some(_) => {}
                        None => {
                            closure.insert(key, (face, i));
                        }
                    }
                }
            }
        }

        // gluing: each pair of input cubes is examined once, at its smallest shared vertex
        let max_vertex = inputs
            .iter()
            .flat_map(|c| c.corners().iter().map(|v| v.0 + 1))
            .max()
            .unwrap_or(0);
        let vertex_count = vertex_count.max(max_vertex);
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (i, cube) in inputs.iter().enumerate() {
            for v in cube.corners() {
                by_vertex[v.0].push(i);
            }
        }
        let sets: Vec<Vec<VertexId>> = inputs.iter().map(Cube::vertex_set).collect();
        for (v, list) in by_vertex.iter().enumerate() {
            for (a_pos, &a) in list.iter().enumerate() {
                for &b in &list[a_pos + 1..] {
                    let shared = sorted_intersection(&sets[a], &sets[b]);
                    if shared[0].0 != v {
                        continue;
                    }
                    let fa = inputs[a].face_on(&shared);
                    let fb = inputs[b].face_on(&shared);
                    if fa.is_none() || fa != fb {
                        return Err(ComplexError::BadGluing {
                            first: a,
                            second: b,
                            shared: shared.iter().map(|v| v.0).collect(),
                        });
                    }
                }
            }
        }

        let cubes = closure.into_values().map(|(cube, _)| cube).collect();
        Ok(Self::assemble(vertex_count, cubes))
    }

    /// Stores the given cubes without any validation. Exact duplicates are
    /// merged; everything else is kept so that [`validate`] can report it.
    pub fn from_cubes_unchecked(vertex_count: usize, cubes: Vec<Cube>) -> Self {
        let max_vertex = cubes
            .iter()
            .flat_map(|c| c.corners().iter().map(|v| v.0 + 1))
            .max()
            .unwrap_or(0);
        Self::assemble(vertex_count.max(max_vertex), cubes)
    }

    fn assemble(vertex_count: usize, cubes: Vec<Cube>) -> Self {
        let mut by_dim: Vec<Vec<Cube>> = Vec::new();
        for cube in cubes {
            let d = cube.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(cube);
        }
        if by_dim.is_empty() {
            by_dim.push(Vec::new());
        }
        // every vertex is a 0-cube
        by_dim[0] = (0..vertex_count).map(|v| Cube::vertex(VertexId(v))).collect();
        for list in by_dim.iter_mut().skip(1) {
            list.sort();
            list.dedup();
        }
        while by_dim.len() > 1 && by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }

        let mut lookup = HashMap::new();
        let mut incident = vec![Vec::new(); vertex_count];
        let mut adjacency: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); vertex_count];
        for (dim, list) in by_dim.iter().enumerate() {
            for (index, cube) in list.iter().enumerate() {
                let r = CubeRef { dim, index };
                lookup.entry(cube.vertex_set()).or_insert(r);
                if dim >= 1 {
                    let mut corners = cube.vertex_set();
                    corners.dedup();
                    for v in corners {
                        incident[v.0].push(r);
                    }
                }
                if dim == 1 {
                    let (a, b) = (cube.corners()[0], cube.corners()[1]);
                    if a != b {
                        adjacency[a.0].insert(b);
                        adjacency[b.0].insert(a);
                    }
                }
            }
        }
        CubeComplex {
            vertex_count,
            cubes: by_dim,
            lookup,
            adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
            incident,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count).map(VertexId)
    }

    /// Highest dimension with at least one cube (0 for the empty complex).
    pub fn dimension(&self) -> usize {
        self.cubes.len() - 1
    }

    pub fn cubes(&self, dim: usize) -> &[Cube] {
        self.cubes.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_cubes(&self) -> impl Iterator<Item = (CubeRef, &Cube)> + '_ {
        self.cubes.iter().enumerate().flat_map(|(dim, list)| {
            list.iter()
                .enumerate()
                .map(move |(index, c)| (CubeRef { dim, index }, c))
        })
    }

    pub fn cube(&self, r: CubeRef) -> &Cube {
        &self.cubes[r.dim][r.index]
    }

    /// Number of cubes per dimension, starting at vertices.
    pub fn counts(&self) -> Vec<usize> {
        self.cubes.iter().map(Vec::len).collect()
    }

    pub fn edges(&self) -> &[Cube] {
        self.cubes(1)
    }

    pub fn squares(&self) -> &[Cube] {
        self.cubes(2)
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let c = &self.edges()[e.0];
        (c.corners()[0], c.corners()[1])
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = if u < v { vec![u, v] } else { vec![v, u] };
        match self.lookup.get(&key) {
            Some(r) if r.dim == 1 => Some(EdgeId(r.index)),
            _ => None,
        }
    }

    /// Looks up a stored cube by its corner set (any order).
    pub fn find(&self, corners: &[VertexId]) -> Option<CubeRef> {
        let mut key = corners.to_vec();
        key.sort_unstable();
        self.lookup.get(&key).copied()
    }

    pub fn contains(&self, cube: &Cube) -> bool {
        self.cubes
            .get(cube.dim())
            .is_some_and(|list| list.binary_search(cube).is_ok())
    }

    pub fn neighbours(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.0]
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u.0].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    /// Cubes of dimension at least one having `v` as a corner.
    pub fn incident_cubes(&self, v: VertexId) -> &[CubeRef] {
        &self.incident[v.0]
    }

    /// Cubes that are not a proper face of another stored cube.
    pub fn maximal_cubes(&self) -> Vec<&Cube> {
        let mut covered: BTreeSet<CubeRef> = BTreeSet::new();
        for (dim, list) in self.cubes.iter().enumerate().skip(1) {
            for cube in list {
                for face in cube.faces(dim - 1).expect("dim >= 1") {
                    if let Some(r) = self.find(face.corners()) {
                        covered.insert(r);
                    }
                }
            }
        }
        self.all_cubes()
            .filter(|(r, _)| !covered.contains(r))
            .map(|(_, c)| c)
            .collect()
    }

    /// The subcomplex of all cubes of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> CubeComplex {
        let cubes = self
            .cubes
            .iter()
            .take(k + 1)
            .flat_map(|list| list.iter().cloned())
            .collect();
        Self::assemble(self.vertex_count, cubes)
    }

    /// Full subcomplex spanned by the vertices with `keep[v]`, renumbered
    /// densely in increasing order. Returns the complex and the old id of each
    /// new vertex.
    pub fn induced(&self, keep: &[bool]) -> (CubeComplex, Vec<VertexId>) {
        let old_ids: Vec<VertexId> = self.vertices().filter(|v| keep[v.0]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (i, v) in old_ids.iter().enumerate() {
            new_id[v.0] = i;
        }
        let cubes = self
            .all_cubes()
            .filter(|(_, c)| c.corners().iter().all(|v| keep[v.0]))
            .map(|(_, c)| {
                Cube::from_corners_unchecked(c.corners().iter().map(|v| VertexId(new_id[v.0])).collect())
                    .expect("arity preserved")
                    .canonical()
            })
            .collect();
        (Self::assemble(old_ids.len(), cubes), old_ids)
    }

    /// Connected components of the 1-skeleton, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![VertexId(start)];
            label[start] = id;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in self.neighbours(v) {
                    if label[w.0] == usize::MAX {
                        label[w.0] = id;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Maximal cubes as plain corner lists, the form accepted by [`CubeComplex::build`].
    pub fn to_cube_list(&self) -> Vec<Vec<usize>> {
        let mut list: Vec<Vec<usize>> = self
            .maximal_cubes()
            .into_iter()
            .map(|c| c.corners().iter().map(|v| v.0).collect())
            .collect();
        list.sort();
        list
    }
}

fn sorted_intersection(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Builds a complex from explicit corner lists; convenience over [`CubeComplex::build`].
pub fn build_complex(cube_list: &[Vec<usize>]) -> Result<CubeComplex, ComplexError> {
    CubeComplex::build(cube_list)
}

/// All `k`-faces of a cube, canonical and without duplicates.
pub fn faces(cube: &Cube, k: usize) -> Result<Vec<Cube>, CubeError> {
    cube.faces(k)
}

pub fn skeleton(x: &CubeComplex, k: usize) -> CubeComplex {
    x.skeleton(k)
}

/// Checks every structural invariant and lists each violation found.
pub fn validate(x: &CubeComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let all: Vec<(CubeRef, &Cube)> = x.all_cubes().collect();

    for &(r, cube) in &all {
        if let Some(v) = cube.corners().iter().find(|v| v.0 >= x.vertex_count()) {
            violations.push(Violation {
                rule: Rule::VertexRange,
                cubes: vec![r],
                message: format!("cube {cube} uses vertex {v} outside 0..{}", x.vertex_count()),
            });
        }
        if !cube.has_distinct_corners() {
            let rule = if cube.dim() == 1 {
                Rule::SimpleGraph
            } else {
                Rule::SelfGlued
            };
            violations.push(Violation {
                rule,
                cubes: vec![r],
                message: format!("cube {cube} repeats a corner"),
            });
        }
    }

    for &(r, cube) in &all {
        if cube.dim() == 0 || !cube.has_distinct_corners() {
            continue;
        }
        for k in 0..cube.dim() {
            for face in cube.faces(k).expect("k < dim") {
                if !x.contains(&face) {
                    violations.push(Violation {
                        rule: Rule::FaceClosure,
                        cubes: vec![r],
                        message: format!("face {face} of {cube} is not stored"),
                    });
                }
            }
        }
    }

    let mut by_set: HashMap<Vec<VertexId>, CubeRef> = HashMap::new();
    for &(r, cube) in &all {
        if let Some(&first) = by_set.get(&cube.vertex_set()) {
            let rule = if cube.dim() == 1 {
                Rule::SimpleGraph
            } else {
                Rule::Embedding
            };
            violations.push(Violation {
                rule,
                cubes: vec![first, r],
                message: format!(
                    "{} and {cube} are distinct cubes on the same vertex set",
                    x.cube(first)
                ),
            });
        } else {
            by_set.insert(cube.vertex_set(), r);
        }
    }

    let sets: Vec<Vec<VertexId>> = all.iter().map(|(_, c)| c.vertex_set()).collect();
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); x.vertex_count()];
    for (i, (_, cube)) in all.iter().enumerate() {
        if cube.dim() == 0 || !cube.has_distinct_corners() {
            continue;
        }
        for v in cube.corners() {
            if v.0 < x.vertex_count() {
                by_vertex[v.0].push(i);
            }
        }
    }
    for (v, list) in by_vertex.iter().enumerate() {
        for (pos, &a) in list.iter().enumerate() {
            for &b in &list[pos + 1..] {
                let shared = sorted_intersection(&sets[a], &sets[b]);
                if shared[0].0 != v || sets[a] == sets[b] {
                    continue;
                }
                let (ra, ca) = all[a];
                let (rb, cb) = all[b];
                let fa = ca.face_on(&shared);
                let glued = match (&fa, cb.face_on(&shared)) {
                    (Some(fa), Some(fb)) => *fa == fb && x.contains(fa),
                    _ => false,
                };
                if !glued {
                    violations.push(Violation {
                        rule: Rule::Gluing,
                        cubes: vec![ra, rb],
                        message: format!(
                            "{ca} and {cb} share {:?}, which is not a stored common face",
                            shared.iter().map(|v| v.0).collect::<Vec<_>>()
                        ),
                    });
                }
            }
        }
    }

    ValidationReport::from_violations(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId).collect()
    }

    fn grid_2x2() -> CubeComplex {
        // vertex (i, j) -> 3 * j + i
        let sq = |i: usize, j: usize| {
            let v = |a: usize, b: usize| 3 * b + a;
            vec![v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)]
        };
        CubeComplex::build(&[sq(0, 0), sq(1, 0), sq(0, 1), sq(1, 1)]).unwrap()
    }

    #[test]
    fn single_square_has_forced_faces() {
        let x = CubeComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(x.counts(), vec![4, 4, 1]);
        assert!(validate(&x).ok);
    }

    #[test]
    fn self_glued_square_is_rejected() {
        assert!(matches!(
            CubeComplex::build(&[vec![0, 1, 0, 2]]),
            Err(ComplexError::SelfGluedCube { cube: 0, .. })
        ));
    }

    #[test]
    fn squares_sharing_a_diagonal_are_badly_glued() {
        // {0,3} is a diagonal of the first square and of the second one
        let err = CubeComplex::build(&[vec![0, 1, 2, 3], vec![0, 4, 5, 3]]).unwrap_err();
        assert_eq!(
            err,
            ComplexError::BadGluing {
                first: 0,
                second: 1,
                shared: vec![0, 3]
            }
        );
        // the second square as written in the narrative, (0,3,4,5), has {0,3} as an edge
        // of itself but a diagonal of the first square
        assert!(matches!(
            CubeComplex::build(&[vec![0, 1, 2, 3], vec![0, 3, 4, 5]]),
            Err(ComplexError::BadGluing { .. })
        ));
    }

    #[test]
    fn duplicate_and_arity_errors() {
        assert_eq!(
            CubeComplex::build(&[vec![0, 1, 2, 3], vec![3, 2, 1, 0]]),
            Err(ComplexError::DuplicateCube { first: 0, second: 1 })
        );
        assert_eq!(
            CubeComplex::build(&[vec![0, 1, 2]]),
            Err(ComplexError::BadArity { cube: 0, len: 3 })
        );
    }

    #[test]
    fn two_squares_on_one_vertex_set_violate_embedding() {
        assert!(matches!(
            CubeComplex::build(&[vec![0, 1, 2, 3], vec![0, 1, 3, 2]]),
            Err(ComplexError::Embedding { .. })
        ));
        let a = Cube::new(ids(&[0, 1, 2, 3])).unwrap();
        let b = Cube::new(ids(&[0, 1, 3, 2])).unwrap();
        let mut cubes = vec![a.clone(), b.clone()];
        for c in [&a, &b] {
            cubes.extend(c.faces(1).unwrap());
        }
        let x = CubeComplex::from_cubes_unchecked(4, cubes);
        let report = validate(&x);
        assert!(!report.ok);
        assert!(report.has(Rule::Embedding));
    }

    #[test]
    fn missing_face_is_reported() {
        let square = Cube::new(ids(&[0, 1, 2, 3])).unwrap();
        let mut cubes = vec![square.clone()];
        cubes.extend(square.faces(1).unwrap().into_iter().skip(1));
        let report = validate(&CubeComplex::from_cubes_unchecked(4, cubes));
        assert!(report.has(Rule::FaceClosure));
        assert!(!report.ok);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn degenerate_complexes_are_valid() {
        let empty = CubeComplex::build(&[]).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert!(validate(&empty).ok);
        let point = CubeComplex::build(&[vec![0]]).unwrap();
        assert_eq!(point.counts(), vec![1]);
        assert!(validate(&point).ok);
    }

    #[test]
    fn skeleta() {
        let cube3 = CubeComplex::build(&[(0..8).collect()]).unwrap();
        assert_eq!(cube3.skeleton(1).counts(), vec![8, 12]);
        assert_eq!(cube3.skeleton(0).counts(), vec![8]);
        let grid = grid_2x2();
        assert_eq!(grid.counts(), vec![9, 12, 4]);
        assert_eq!(grid.skeleton(1).counts(), vec![9, 12]);
    }

    #[test]
    fn round_trip_through_maximal_cubes() {
        let grid = grid_2x2();
        let again = CubeComplex::build(&grid.to_cube_list()).unwrap();
        assert_eq!(again, grid);
    }

    #[test]
    fn stored_pairs_meet_in_common_faces() {
        let grid = grid_2x2();
        let all: Vec<_> = grid.all_cubes().collect();
        for (_, a) in &all {
            for (_, b) in &all {
                let shared = sorted_intersection(&a.vertex_set(), &b.vertex_set());
                if shared.is_empty() {
                    continue;
                }
                let face = a.face_on(&shared).expect("face of a");
                assert_eq!(Some(face.clone()), b.face_on(&shared));
                assert!(grid.contains(&face));
            }
        }
    }

    #[test]
    fn induced_subcomplex_is_full() {
        let grid = grid_2x2();
        let keep: Vec<bool> = (0..9).map(|v| v % 3 != 2).collect();
        let (sub, old) = grid.induced(&keep);
        assert_eq!(old.len(), 6);
        assert_eq!(sub.counts(), vec![6, 7, 2]);
    }
}
