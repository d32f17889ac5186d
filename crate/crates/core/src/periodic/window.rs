use crate::complex::CubeComplex;
use crate::cube::{Cube, VertexId};

use super::{PVertex, PeriodicComplex};

/// The finite complex spanned by the vertices with `|z| <= radius`.
///
/// Window vertex ids are `(z + radius) * orbit_count + orbit`, so id order is
/// the `(z, orbit)` order.
#[derive(Clone, Debug)]
pub struct WindowComplex {
    pub radius: i64,
    pub complex: CubeComplex,
    orbit_count: usize,
}

impl WindowComplex {
    pub(super) fn build(p: &PeriodicComplex, radius: i64) -> Self {
        let n = p.orbit_count();
        let id = |v: PVertex| VertexId(((v.z + radius) as usize) * n + v.orbit.0);
        let mut cubes = Vec::new();
        for dim in 1..=p.dimension() {
            for cube in p.orbit_cubes(dim) {
                let top = cube.iter().map(|v| v.z).max().unwrap_or(0);
                for s in -radius..=radius - top {
                    let corners = cube.iter().map(|&v| id(v.shifted(s))).collect();
                    cubes.push(Cube::new(corners).expect("validated orbit"));
                }
            }
        }
        let count = n * (2 * radius as usize + 1);
        WindowComplex {
            radius,
            complex: CubeComplex::from_cubes_unchecked(count, cubes),
            orbit_count: n,
        }
    }

    pub fn id(&self, v: PVertex) -> Option<VertexId> {
        (v.z.abs() <= self.radius && v.orbit.0 < self.orbit_count)
            .then(|| VertexId(((v.z + self.radius) as usize) * self.orbit_count + v.orbit.0))
    }

    pub fn label(&self, v: VertexId) -> PVertex {
        PVertex::new(v.0 % self.orbit_count, (v.0 / self.orbit_count) as i64 - self.radius)
    }

    pub fn labels(&self) -> impl Iterator<Item = PVertex> + '_ {
        self.complex.vertices().map(|v| self.label(v))
    }

    /// Full subcomplex on the window vertices satisfying `keep`, with the
    /// labels of its vertices.
    pub fn restrict(&self, keep: impl Fn(PVertex) -> bool) -> (CubeComplex, Vec<PVertex>) {
        let mask: Vec<bool> = self.labels().map(keep).collect();
        let (sub, old) = self.complex.induced(&mask);
        let labels = old.into_iter().map(|v| self.label(v)).collect();
        (sub, labels)
    }
}
