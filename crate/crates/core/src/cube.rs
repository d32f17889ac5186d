//! Combinatorial cubes as corner sequences.
//!
//! An `n`-cube is stored as its `2^n` corners indexed by `n`-bit masks: the
//! corner at mask `m` sits at the coordinate vector whose `i`-th entry is bit
//! `i` of `m`. Two corner sequences describe the same cube exactly when they
//! differ by one of the `2^n · n!` symmetries of the hypercube (coordinate
//! flips composed with coordinate permutations), so every cube has a canonical
//! representative: the lexicographically smallest corner sequence in its
//! symmetry orbit.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Index of a vertex in the owning complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(value: usize) -> Self {
        VertexId(value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("corner count {0} is not a power of two")]
    BadArity(usize),
    #[error("cube has a repeated corner {0}")]
    RepeatedCorner(String),
    #[error("face dimension {k} out of range for a {dim}-cube")]
    BadDimension { k: usize, dim: usize },
}

/// Dimension of a cube with `len` corners, if `len` is a power of two.
pub fn dimension_of(len: usize) -> Option<usize> {
    if len.is_power_of_two() {
        Some(len.trailing_zeros() as usize)
    } else {
        None
    }
}

/// Canonical corner order for any corner labels with a total order.
///
/// Assumes pairwise distinct corners. The smallest corner is moved to mask 0
/// and the coordinates are sorted by the label of the neighbouring corner in
/// that direction, which is exactly the greedy choice that minimizes the
/// sequence position by position.
pub fn canonical_corners<T: Ord + Copy>(corners: &[T]) -> Vec<T> {
    let len = corners.len();
    if len <= 1 {
        return corners.to_vec();
    }
    let dim = len.trailing_zeros() as usize;
    let base = (0..len).min_by_key(|&m| corners[m]).expect("nonempty");
    let mut coords: Vec<usize> = (0..dim).collect();
    coords.sort_by_key(|&i| corners[base ^ (1 << i)]);
    (0..len)
        .map(|mask| {
            let mut old = base;
            for (j, &coord) in coords.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    old ^= 1 << coord;
                }
            }
            corners[old]
        })
        .collect()
}

/// Corner sequences of the `k`-faces of a cube given by `corners`.
///
/// Faces are produced in a fixed order (free-coordinate subsets in
/// lexicographic order, then fixed-bit patterns ascending) and are not
/// canonicalized.
pub fn face_corner_sets<T: Copy>(corners: &[T], k: usize) -> Vec<Vec<T>> {
    let dim = corners.len().trailing_zeros() as usize;
    let mut out = Vec::new();
    for free in subsets_of_size(dim, k) {
        let fixed: Vec<usize> = (0..dim).filter(|i| !free.contains(i)).collect();
        for pattern in 0..(1usize << fixed.len()) {
            let mut anchor = 0usize;
            for (j, &coord) in fixed.iter().enumerate() {
                if pattern & (1 << j) != 0 {
                    anchor |= 1 << coord;
                }
            }
            let face = (0..(1usize << k))
                .map(|m| {
                    let mut mask = anchor;
                    for (j, &coord) in free.iter().enumerate() {
                        if m & (1 << j) != 0 {
                            mask |= 1 << coord;
                        }
                    }
                    corners[mask]
                })
                .collect();
            out.push(face);
        }
    }
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// If the corner masks `masks` of a cube form a face, returns `(anchor, free)`
/// where `anchor` holds the fixed bits and `free` the varying ones.
pub(crate) fn face_of_masks(masks: &[usize]) -> Option<(usize, usize)> {
    let first = *masks.first()?;
    let (and, or) = masks
        .iter()
        .fold((first, first), |(a, o), &m| (a & m, o | m));
    let free = and ^ or;
    if masks.len() == 1usize << free.count_ones() {
        Some((and, free))
    } else {
        None
    }
}

/// A combinatorial cube: `2^dim` pairwise distinct corners in mask order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cube {
    corners: Vec<VertexId>,
}

impl Cube {
    /// Builds a cube from a corner sequence in mask order and canonicalizes it.
    pub fn new(corners: Vec<VertexId>) -> Result<Self, CubeError> {
        let cube = Self::from_corners_unchecked(corners)?;
        let mut sorted = cube.corners.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CubeError::RepeatedCorner(w[0].to_string()));
        }
        Ok(cube.canonical())
    }

    /// Keeps the corner sequence as given. Only the arity is checked.
    pub fn from_corners_unchecked(corners: Vec<VertexId>) -> Result<Self, CubeError> {
        if dimension_of(corners.len()).is_none() {
            return Err(CubeError::BadArity(corners.len()));
        }
        Ok(Cube { corners })
    }

    pub fn vertex(v: VertexId) -> Self {
        Cube { corners: vec![v] }
    }

    pub fn dim(&self) -> usize {
        self.corners.len().trailing_zeros() as usize
    }

    pub fn corners(&self) -> &[VertexId] {
        &self.corners
    }

    /// Corner set in ascending order; identifies the cube inside a valid complex.
    pub fn vertex_set(&self) -> Vec<VertexId> {
        let mut set = self.corners.clone();
        set.sort_unstable();
        set
    }

    pub fn canonical(&self) -> Cube {
        Cube {
            corners: canonical_corners(&self.corners),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.corners == canonical_corners(&self.corners)
    }

    pub fn has_distinct_corners(&self) -> bool {
        let set = self.vertex_set();
        set.windows(2).all(|w| w[0] != w[1])
    }

    /// Mask of `v` inside this cube.
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.corners.iter().position(|&c| c == v)
    }

    /// All `k`-faces in canonical form, without duplicates.
    pub fn faces(&self, k: usize) -> Result<Vec<Cube>, CubeError> {
        if k > self.dim() {
            return Err(CubeError::BadDimension { k, dim: self.dim() });
        }
        let mut faces: Vec<Cube> = face_corner_sets(&self.corners, k)
            .into_iter()
            .map(|corners| Cube { corners }.canonical())
            .collect();
        faces.sort();
        faces.dedup();
        Ok(faces)
    }

    /// The face of this cube spanned by exactly the corners in `set`, if any.
    pub fn face_on(&self, set: &[VertexId]) -> Option<Cube> {
        let masks: Option<Vec<usize>> = set.iter().map(|&v| self.position(v)).collect();
        let masks = masks?;
        let (anchor, free) = face_of_masks(&masks)?;
        let free_bits: Vec<usize> = (0..self.dim()).filter(|i| free & (1 << i) != 0).collect();
        let corners = (0..(1usize << free_bits.len()))
            .map(|m| {
                let mut mask = anchor;
                for (j, &bit) in free_bits.iter().enumerate() {
                    if m & (1 << j) != 0 {
                        mask |= 1 << bit;
                    }
                }
                self.corners[mask]
            })
            .collect();
        Some(Cube { corners }.canonical())
    }

    /// Corners adjacent to `v` inside this cube, ordered by coordinate.
    pub fn neighbours_of(&self, v: VertexId) -> Option<Vec<VertexId>> {
        let mask = self.position(v)?;
        Some((0..self.dim()).map(|i| self.corners[mask ^ (1 << i)]).collect())
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.corners.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
