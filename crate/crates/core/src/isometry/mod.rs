//! Automorphisms, displacement, classification and minimal displacement sets.
//!
//! Finite complexes use [`VertexMap`]; periodic complexes use [`ShiftMap`],
//! which acts by `(o, z) -> (sigma(o), z + t)` and so commutes with the shift.

pub mod finite;
pub mod periodic;
pub mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::cube::VertexId;
use crate::metric::MetricError;
use crate::periodic::{OrbitId, PVertex, PeriodicError};
use crate::walls::WallError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsometryError {
    #[error("map has {len} images for {expected} vertices")]
    WrongLength { len: usize, expected: usize },
    #[error("map is not a bijection: {0} is hit twice")]
    NotABijection(usize),
    #[error("cube {cube:?} is sent to {image:?}, which is not a cube")]
    NotAutomorphism { cube: Vec<usize>, image: Vec<usize> },
    #[error("cube orbit {cube:?} is sent to {image:?}, which is not a cube")]
    NotPeriodicAutomorphism { cube: Vec<PVertex>, image: Vec<PVertex> },
    #[error("translation length is 0")]
    NotHyperbolic,
    #[error("{0} is not in the minimal displacement set")]
    NotInMin(PVertex),
    #[error("path from {from} of length {length} is not a geodesic to {to} of length {expected}")]
    NotGeodesic {
        from: PVertex,
        to: PVertex,
        length: usize,
        expected: usize,
    },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error(transparent)]
    Wall(#[from] WallError),
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, IsometryError> {
        let n = images.len();
        let mut hit = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(IsometryError::WrongLength { len: i + 1, expected: n });
            }
            if hit[i] {
                return Err(IsometryError::NotABijection(i));
            }
            hit[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, IsometryError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(IsometryError::WrongLength { len: a + 1, expected: n });
                }
                if seen[a] {
                    return Err(IsometryError::NotABijection(a));
                }
                seen[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.0[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.0[cur];
            }
            out.push(cycle);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.len());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }
}

/// Automorphism candidate of a finite complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexMap(pub Permutation);

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap(Permutation::identity(n))
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        VertexId(self.0.apply(v.0))
    }

    pub fn inverse(&self) -> Self {
        VertexMap(self.0.inverse())
    }

    pub fn compose(&self, other: &Self) -> Self {
        VertexMap(self.0.compose(&other.0))
    }

    pub fn power(&self, k: i64) -> Self {
        VertexMap(self.0.power(k))
    }
}

/// `(o, z) -> (perm(o), z + shift)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShiftMap {
    pub perm: Permutation,
    pub shift: i64,
}

impl ShiftMap {
    pub fn identity(orbits: usize) -> Self {
        ShiftMap {
            perm: Permutation::identity(orbits),
            shift: 0,
        }
    }

    /// The shift `T^t` itself.
    pub fn translation(orbits: usize, t: i64) -> Self {
        ShiftMap {
            perm: Permutation::identity(orbits),
            shift: t,
        }
    }

    pub fn apply(&self, v: PVertex) -> PVertex {
        PVertex {
            orbit: OrbitId(self.perm.apply(v.orbit.0)),
            z: v.z + self.shift,
        }
    }

    pub fn inverse(&self) -> Self {
        ShiftMap {
            perm: self.perm.inverse(),
            shift: -self.shift,
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        ShiftMap {
            perm: self.perm.compose(&other.perm),
            shift: self.shift + other.shift,
        }
    }

    pub fn power(&self, k: i64) -> Self {
        ShiftMap {
            perm: self.perm.power(k),
            shift: self.shift * k,
        }
    }
}

/// Displacement `d(v, g(v))` of each listed vertex (every vertex of a finite
/// complex, or each orbit at `z = 0` of a periodic one).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplacementProfile<V> {
    pub values: Vec<(V, usize)>,
    pub translation_length: usize,
    pub argmin: Vec<V>,
}

impl<V: Copy> DisplacementProfile<V> {
    pub(crate) fn from_values(values: Vec<(V, usize)>) -> Self {
        let translation_length = values.iter().map(|&(_, d)| d).min().unwrap_or(0);
        let argmin = values
            .iter()
            .filter(|&&(_, d)| d == translation_length)
            .map(|&(v, _)| v)
            .collect();
        DisplacementProfile {
            values,
            translation_length,
            argmin,
        }
    }
}

/// `power`-th power of the map sends `vertex` to `image` across `wall`,
/// which it preserves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inversion<V, W> {
    pub wall: W,
    pub vertex: V,
    pub image: V,
}

/// Outcome of [`finite::classify`] and [`periodic::classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification<V, W> {
    Elliptic {
        fixed: V,
    },
    Hyperbolic {
        translation_length: usize,
        /// One period of the axis; the last vertex is the image of the first.
        axis: Vec<V>,
    },
    InversionDetected {
        power: u32,
        wall: W,
        /// A vertex and its image under the power, on opposite sides of `wall`.
        vertex: V,
        image: V,
    },
    Undecided {
        translation_length: usize,
        fixed_cubes: usize,
        reason: String,
    },
}

impl<V, W> Classification<V, W> {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::Elliptic { .. } => "elliptic",
            Classification::Hyperbolic { .. } => "hyperbolic",
            Classification::InversionDetected { .. } => "inversion-detected",
            Classification::Undecided { .. } => "undecided",
        }
    }
}
