//! Z-periodic cubical complexes described by finitely many cube orbits.
//!
//! Vertices are pairs `(orbit, z)`; the shift `T` sends `(o, z)` to
//! `(o, z + 1)`. Each cube orbit is stored once, normalized so that its
//! smallest z-coordinate is 0, and every corner offset is 0 or 1. Queries
//! are answered on finite windows `|z| <= R` whose radius is chosen so that
//! the answer provably agrees with the infinite complex.

mod window;
pub mod walls;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, CubeComplex};
use crate::cube::{canonical_corners, dimension_of, face_corner_sets};
use crate::metric::bfs_distances;

pub use walls::{periodic_walls, PeriodicWall, WallCatalogue, WallKind, WallOrbit};
pub use window::WindowComplex;

/// Default cap on the number of window vertices a single query may touch.
pub const DEFAULT_GROWTH_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct OrbitId(pub usize);

/// A vertex `(orbit, z)` of the infinite complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PVertex {
    pub orbit: OrbitId,
    pub z: i64,
}

impl PVertex {
    pub fn new(orbit: usize, z: i64) -> Self {
        PVertex {
            orbit: OrbitId(orbit),
            z,
        }
    }

    pub fn shifted(self, by: i64) -> Self {
        PVertex {
            orbit: self.orbit,
            z: self.z + by,
        }
    }
}

impl fmt::Display for PVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(o{},{})", self.orbit.0, self.z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodicError {
    #[error("orbit name {0:?} is declared twice")]
    DuplicateOrbit(String),
    #[error("cube orbit #{cube}: {len} corners is not a power of two")]
    BadArity { cube: usize, len: usize },
    #[error("cube orbit #{cube} refers to undeclared orbit {orbit}")]
    UnknownOrbit { cube: usize, orbit: usize },
    #[error("cube orbit #{cube} spans {span} levels; corners must sit at offsets 0 and 1")]
    OffsetSpan { cube: usize, span: i64 },
    #[error("invalid periodic data in cube orbits {cubes:?}: {detail}")]
    InvalidPeriodicData { cubes: Vec<usize>, detail: String },
    #[error("vertex {0} refers to an undeclared orbit")]
    UnknownVertex(PVertex),
    #[error("window radius {0} is negative")]
    NegativeRadius(i64),
    #[error("no connecting path found within the growth cap of {cap} window vertices")]
    GrowthCapExceeded { cap: usize },
}

/// Shifts corner sequences so the smallest z is 0; returns the shift applied.
pub(crate) fn normalize(corners: &[PVertex]) -> (Vec<PVertex>, i64) {
    let low = corners.iter().map(|v| v.z).min().unwrap_or(0);
    (corners.iter().map(|v| v.shifted(-low)).collect(), low)
}

/// Canonical, normalized corner sequence of a shifted cube and the shift
/// taking the stored representative to it.
pub(crate) fn orbit_key(corners: &[PVertex]) -> (Vec<PVertex>, i64) {
    let (norm, low) = normalize(corners);
    (canonical_corners(&norm), low)
}

pub struct PeriodicComplex {
    orbit_names: Vec<String>,
    /// Declared cube orbits, normalized and canonical, in input order.
    declared: Vec<Vec<PVertex>>,
    /// Face-closed orbit representatives by dimension, sorted.
    closure: Vec<Vec<Vec<PVertex>>>,
    lookup: HashMap<Vec<PVertex>, (usize, usize)>,
    growth_cap: usize,
    cache: Mutex<HashMap<i64, Arc<WindowComplex>>>,
}

impl Clone for PeriodicComplex {
    fn clone(&self) -> Self {
        PeriodicComplex {
            orbit_names: self.orbit_names.clone(),
            declared: self.declared.clone(),
            closure: self.closure.clone(),
            lookup: self.lookup.clone(),
            growth_cap: self.growth_cap,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for PeriodicComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicComplex")
            .field("orbit_names", &self.orbit_names)
            .field("cube_orbits", &self.declared)
            .finish()
    }
}

impl PartialEq for PeriodicComplex {
    fn eq(&self, other: &Self) -> bool {
        self.orbit_names == other.orbit_names && self.closure == other.closure
    }
}

impl PeriodicComplex {
    /// Validates the cube orbits on a window large enough to contain every
    /// pair of intersecting cubes up to shift.
    pub fn new(orbit_names: Vec<String>, cube_orbits: Vec<Vec<PVertex>>) -> Result<Self, PeriodicError> {
        let mut seen = HashSet::new();
        for name in &orbit_names {
            if !seen.insert(name.as_str()) {
                return Err(PeriodicError::DuplicateOrbit(name.clone()));
            }
        }
        let n = orbit_names.len();
        let mut declared = Vec::with_capacity(cube_orbits.len());
        for (i, corners) in cube_orbits.iter().enumerate() {
            if dimension_of(corners.len()).is_none() {
                return Err(PeriodicError::BadArity {
                    cube: i,
                    len: corners.len(),
                });
            }
            if let Some(v) = corners.iter().find(|v| v.orbit.0 >= n) {
                return Err(PeriodicError::UnknownOrbit {
                    cube: i,
                    orbit: v.orbit.0,
                });
            }
            let (norm, _) = normalize(corners);
            let span = norm.iter().map(|v| v.z).max().unwrap_or(0);
            if span > 1 {
                return Err(PeriodicError::OffsetSpan { cube: i, span });
            }
            declared.push(norm);
        }

        let mut p = PeriodicComplex {
            orbit_names,
            declared,
            closure: Vec::new(),
            lookup: HashMap::new(),
            growth_cap: DEFAULT_GROWTH_CAP,
            cache: Mutex::new(HashMap::new()),
        };
        p.validate_on_window(2)?;

        let mut by_dim: Vec<HashSet<Vec<PVertex>>> = Vec::new();
        for cube in &p.declared {
            let dim = dimension_of(cube.len()).expect("checked");
            for k in 1..=dim {
                if by_dim.len() <= k {
                    by_dim.resize_with(k + 1, HashSet::new);
                }
                for face in face_corner_sets(cube, k) {
                    by_dim[k].insert(orbit_key(&face).0);
                }
            }
        }
        if by_dim.is_empty() {
            by_dim.push(HashSet::new());
        }
        p.closure = by_dim
            .into_iter()
            .map(|set| {
                let mut list: Vec<_> = set.into_iter().collect();
                list.sort();
                list
            })
            .collect();
        for (dim, list) in p.closure.iter().enumerate() {
            for (index, cube) in list.iter().enumerate() {
                p.lookup.insert(cube.clone(), (dim, index));
            }
        }
        Ok(p)
    }

    fn validate_on_window(&self, radius: i64) -> Result<(), PeriodicError> {
        let n = self.orbit_count();
        let id = |v: PVertex| ((v.z + radius) as usize) * n + v.orbit.0;
        let mut list = Vec::new();
        let mut origin = Vec::new();
        for (i, cube) in self.declared.iter().enumerate() {
            let top = cube.iter().map(|v| v.z).max().unwrap_or(0);
            for s in -radius..=radius - top {
                list.push(cube.iter().map(|v| id(v.shifted(s))).collect::<Vec<_>>());
                origin.push(i);
            }
        }
        let label = |w: usize| {
            let v = PVertex::new(w % n, (w / n) as i64 - radius);
            self.vertex_label(v)
        };
        let labels = |ws: &[usize]| ws.iter().map(|&w| label(w)).collect::<Vec<_>>().join(" ");
        let count = n * (2 * radius as usize + 1);
        match CubeComplex::build_with_vertex_count(count, &list) {
            Ok(_) => Ok(()),
            Err(e) => {
                let (cubes, detail) = match e {
                    ComplexError::BadArity { cube, len } => (vec![origin[cube]], format!("{len} corners")),
                    ComplexError::SelfGluedCube { cube, corners } => {
                        (vec![origin[cube]], format!("cube repeats a corner: {}", labels(&corners)))
                    }
                    ComplexError::DuplicateCube { first, second } => {
                        (vec![origin[first], origin[second]], "the same cube orbit is declared twice".to_string())
                    }
                    ComplexError::Embedding { first, second, vertices } => (
                        vec![origin[first], origin[second]],
                        format!("two different cubes on vertices {}", labels(&vertices)),
                    ),
                    ComplexError::BadGluing { first, second, shared } => (
                        vec![origin[first], origin[second]],
                        format!("shared corners {} are not a common face", labels(&shared)),
                    ),
                };
                let mut cubes = cubes;
                cubes.sort();
                cubes.dedup();
                Err(PeriodicError::InvalidPeriodicData { cubes, detail })
            }
        }
    }

    pub fn with_growth_cap(mut self, cap: usize) -> Self {
        self.growth_cap = cap;
        self
    }

    pub fn growth_cap(&self) -> usize {
        self.growth_cap
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_names.len()
    }

    pub fn orbit_names(&self) -> &[String] {
        &self.orbit_names
    }

    pub fn orbit_by_name(&self, name: &str) -> Option<OrbitId> {
        self.orbit_names.iter().position(|n| n == name).map(OrbitId)
    }

    pub fn vertex_label(&self, v: PVertex) -> String {
        match self.orbit_names.get(v.orbit.0) {
            Some(name) => format!("({name},{})", v.z),
            None => v.to_string(),
        }
    }

    /// Declared cube orbits, normalized, in input order.
    pub fn cube_orbits(&self) -> &[Vec<PVertex>] {
        &self.declared
    }

    /// Face-closed orbit representatives of dimension `dim`, sorted.
    pub fn orbit_cubes(&self, dim: usize) -> &[Vec<PVertex>] {
        self.closure.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dimension(&self) -> usize {
        self.closure.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    /// Edge orbit and shift of the edge `{a, b}`, if it is an edge.
    pub fn edge_orbit(&self, a: PVertex, b: PVertex) -> Option<(usize, i64)> {
        self.find_orbit(&[a, b]).filter(|(dim, _, _)| *dim == 1).map(|(_, i, s)| (i, s))
    }

    /// `(dim, index, shift)` of the cube with the given corner sequence.
    pub fn find_orbit(&self, corners: &[PVertex]) -> Option<(usize, usize, i64)> {
        dimension_of(corners.len())?;
        let (key, shift) = orbit_key(corners);
        let &(dim, index) = self.lookup.get(&key)?;
        Some((dim, index, shift))
    }

    pub fn contains_cube(&self, corners: &[PVertex]) -> bool {
        self.find_orbit(corners).is_some()
    }

    pub fn neighbours(&self, v: PVertex) -> Vec<PVertex> {
        let mut out: Vec<PVertex> = Vec::new();
        for edge in self.orbit_cubes(1) {
            for (i, &c) in edge.iter().enumerate() {
                if c.orbit == v.orbit {
                    out.push(edge[1 - i].shifted(v.z - c.z));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn check_vertex(&self, v: PVertex) -> Result<(), PeriodicError> {
        if v.orbit.0 < self.orbit_count() {
            Ok(())
        } else {
            Err(PeriodicError::UnknownVertex(v))
        }
    }

    /// The finite complex on `{(o, z) : |z| <= R}` spanned by every shifted
    /// cube lying inside the window. Windows are cached by radius.
    pub fn materialize_window(&self, radius: i64) -> Result<Arc<WindowComplex>, PeriodicError> {
        if radius < 0 {
            return Err(PeriodicError::NegativeRadius(radius));
        }
        if let Some(w) = self.cache.lock().expect("cache lock").get(&radius) {
            return Ok(Arc::clone(w));
        }
        let window = Arc::new(WindowComplex::build(self, radius));
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(Arc::clone(cache.entry(radius).or_insert(window)))
    }

    fn window_vertices(&self, radius: i64) -> usize {
        self.orbit_count().saturating_mul(2 * radius as usize + 1)
    }

    /// Exact distance in the infinite complex.
    ///
    /// Every path of length `d` from `u` stays in the band
    /// `|z| <= max(|z_u|, |z_v|) + d`, so once some window exhibits a path
    /// of length `U`, the window of radius `max(|z_u|, |z_v|) + U` contains
    /// every geodesic and its BFS distance is exact.
    pub fn certified_distance(&self, u: PVertex, v: PVertex) -> Result<DistanceCertificate, PeriodicError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let reach = u.z.abs().max(v.z.abs());
        let mut radius = reach + self.orbit_count() as i64;
        let upper = loop {
            if self.window_vertices(radius) > self.growth_cap {
                return Err(PeriodicError::GrowthCapExceeded { cap: self.growth_cap });
            }
            let w = self.materialize_window(radius)?;
            let found = bfs_distances(&w.complex, w.id(u).expect("inside"))[w.id(v).expect("inside").0];
            if let Some(d) = found {
                break d;
            }
            radius = (2 * radius).max(1);
        };
        let radius = reach + upper as i64;
        let w = self.materialize_window(radius)?;
        let value = bfs_distances(&w.complex, w.id(u).expect("inside"))[w.id(v).expect("inside").0]
            .expect("the bounding path lies inside the band");
        Ok(DistanceCertificate {
            u,
            v,
            value,
            radius,
            upper_bound: upper,
        })
    }

    pub fn distance(&self, u: PVertex, v: PVertex) -> Result<usize, PeriodicError> {
        self.certified_distance(u, v).map(|c| c.value)
    }

    /// Vertices on some geodesic from `u` to `v`, computed on the window of
    /// the distance certificate, which contains all of them.
    pub fn certified_interval(&self, u: PVertex, v: PVertex) -> Result<CertifiedInterval, PeriodicError> {
        let certificate = self.certified_distance(u, v)?;
        let w = self.materialize_window(certificate.radius)?;
        let from_u = bfs_distances(&w.complex, w.id(u).expect("inside"));
        let from_v = bfs_distances(&w.complex, w.id(v).expect("inside"));
        let d = certificate.value;
        let members = w
            .complex
            .vertices()
            .filter(|x| matches!((from_u[x.0], from_v[x.0]), (Some(a), Some(b)) if a + b == d))
            .map(|x| w.label(x))
            .collect::<Vec<_>>();
        let mut members = members;
        members.sort();
        Ok(CertifiedInterval { members, certificate })
    }
}

/// `value` is exact because `radius >= max(|z_u|, |z_v|) + value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceCertificate {
    pub u: PVertex,
    pub v: PVertex,
    pub value: usize,
    pub radius: i64,
    /// Length of the first connecting path found while growing the window.
    pub upper_bound: usize,
}

impl DistanceCertificate {
    pub fn holds(&self) -> bool {
        self.radius >= self.u.z.abs().max(self.v.z.abs()) + self.value as i64 && self.value <= self.upper_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedInterval {
    /// Sorted.
    pub members: Vec<PVertex>,
    pub certificate: DistanceCertificate,
}

impl CertifiedInterval {
    pub fn contains(&self, v: PVertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn pv(o: usize, z: i64) -> PVertex {
        PVertex::new(o, z)
    }

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    pub fn line() -> PeriodicComplex {
        PeriodicComplex::new(names(&["a"]), vec![vec![pv(0, 0), pv(0, 1)]]).unwrap()
    }

    pub fn ladder() -> PeriodicComplex {
        PeriodicComplex::new(
            names(&["a", "b"]),
            vec![vec![pv(0, 0), pv(0, 1), pv(1, 0), pv(1, 1)]],
        )
        .unwrap()
    }

    pub fn pendant() -> PeriodicComplex {
        PeriodicComplex::new(
            names(&["a", "b"]),
            vec![vec![pv(0, 0), pv(0, 1)], vec![pv(0, 0), pv(1, 0)]],
        )
        .unwrap()
    }
}
