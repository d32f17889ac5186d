//! Automorphisms of finite complexes.

use serde::Serialize;

use super::{Classification, DisplacementProfile, Inversion, IsometryError, VertexMap};
use crate::complex::{CubeComplex, CubeRef};
use crate::contraction::{simple_connectivity, SimpleConnectivityReport};
use crate::cube::{Cube, VertexId};
use crate::link::{gromov_check, GromovReport};
use crate::metric::{bfs_distances, is_convex_subcomplex, ConvexityReport, MetricError};
use crate::walls::{compute_walls, halfspaces, WallError, WallId, WallTable};

/// Checks that `g` sends every cube onto a cube with the same corner structure.
pub fn check_automorphism(x: &CubeComplex, g: &VertexMap) -> Result<(), IsometryError> {
    if g.0.len() != x.vertex_count() {
        return Err(IsometryError::WrongLength {
            len: g.0.len(),
            expected: x.vertex_count(),
        });
    }
    for dim in 1..=x.dimension() {
        for cube in x.cubes(dim) {
            let image: Vec<VertexId> = cube.corners().iter().map(|&v| g.apply(v)).collect();
            let ok = Cube::new(image.clone()).is_ok_and(|c| x.contains(&c));
            if !ok {
                return Err(IsometryError::NotAutomorphism {
                    cube: cube.corners().iter().map(|v| v.0).collect(),
                    image: image.iter().map(|v| v.0).collect(),
                });
            }
        }
    }
    Ok(())
}

pub fn displacement(x: &CubeComplex, g: &VertexMap, v: VertexId) -> Result<usize, MetricError> {
    let image = g.apply(v);
    bfs_distances(x, v)[image.0].ok_or(MetricError::Disconnected(v, image))
}

pub fn displacement_profile(x: &CubeComplex, g: &VertexMap) -> Result<DisplacementProfile<VertexId>, MetricError> {
    let values = x
        .vertices()
        .map(|v| displacement(x, g, v).map(|d| (v, d)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DisplacementProfile::from_values(values))
}

pub fn translation_length(x: &CubeComplex, g: &VertexMap) -> Result<(usize, Vec<VertexId>), MetricError> {
    let profile = displacement_profile(x, g)?;
    Ok((profile.translation_length, profile.argmin))
}

/// Full subcomplex spanned by the vertices of minimal displacement.
#[derive(Clone, Debug)]
pub struct FiniteMinSet {
    pub translation_length: usize,
    /// Sorted vertex ids in the ambient complex.
    pub vertices: Vec<VertexId>,
    pub complex: CubeComplex,
}

impl FiniteMinSet {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

pub fn min_set(x: &CubeComplex, g: &VertexMap) -> Result<FiniteMinSet, IsometryError> {
    let (length, argmin) = translation_length(x, g)?;
    if length == 0 {
        return Err(IsometryError::NotHyperbolic);
    }
    let mut keep = vec![false; x.vertex_count()];
    for v in &argmin {
        keep[v.0] = true;
    }
    let (complex, _) = x.induced(&keep);
    Ok(FiniteMinSet {
        translation_length: length,
        vertices: argmin,
        complex,
    })
}

/// Wall containing the image of the first edge of `w`.
pub fn wall_image(x: &CubeComplex, table: &WallTable, g: &VertexMap, w: WallId) -> WallId {
    let (a, b) = x.edge_endpoints(table.wall(w).edges[0]);
    let e = x.edge_between(g.apply(a), g.apply(b)).expect("automorphisms preserve edges");
    table.wall_of(e)
}

/// `Some` when `g` preserves `w` and exchanges its halfspaces.
pub fn detect_inversion(
    x: &CubeComplex,
    table: &WallTable,
    g: &VertexMap,
    w: WallId,
) -> Result<Option<Inversion<VertexId, WallId>>, WallError> {
    if wall_image(x, table, g, w) != w {
        return Ok(None);
    }
    let h = halfspaces(x, table, w)?;
    let (a, _) = x.edge_endpoints(table.wall(w).edges[0]);
    Ok(h.separates(a, g.apply(a)).then_some(Inversion {
        wall: w,
        vertex: a,
        image: g.apply(a),
    }))
}

/// Cubes (of every dimension) whose vertex set is mapped onto itself.
pub fn fixed_cubes(x: &CubeComplex, g: &VertexMap) -> Vec<CubeRef> {
    x.all_cubes()
        .filter(|(_, c)| {
            let mut image: Vec<VertexId> = c.corners().iter().map(|&v| g.apply(v)).collect();
            image.sort();
            image == c.vertex_set()
        })
        .map(|(r, _)| r)
        .collect()
}

/// Inversions of `g^k` for `1 <= k <= power_bound` are looked for first, then
/// a fixed vertex. A finite complex carries no bi-infinite geodesic, so
/// anything else is reported as undecided.
pub fn classify(
    x: &CubeComplex,
    g: &VertexMap,
    power_bound: u32,
) -> Result<Classification<VertexId, WallId>, IsometryError> {
    check_automorphism(x, g)?;
    let table = compute_walls(x);
    for k in 1..=power_bound {
        let gk = g.power(k as i64);
        for wall in table.walls() {
            if let Some(inv) = detect_inversion(x, &table, &gk, wall.id)? {
                return Ok(Classification::InversionDetected {
                    power: k,
                    wall: inv.wall,
                    vertex: inv.vertex,
                    image: inv.image,
                });
            }
        }
    }
    if let Some(v) = x.vertices().find(|&v| g.apply(v) == v) {
        return Ok(Classification::Elliptic { fixed: v });
    }
    let (length, _) = translation_length(x, g)?;
    Ok(Classification::Undecided {
        translation_length: length,
        fixed_cubes: fixed_cubes(x, g).len(),
        reason: format!("no fixed vertex and no inversion up to power {power_bound}; a finite complex has no axis"),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteMinReport {
    pub pass: bool,
    pub convexity: ConvexityReport,
    /// Link checks on the Min subcomplex; vertex ids are ambient ids.
    pub links: GromovReport,
    pub simple_connectivity: SimpleConnectivityReport,
}

/// Convexity in the ambient complex, flag links and simple connectivity of
/// the Min subcomplex.
pub fn verify_min(x: &CubeComplex, min: &FiniteMinSet) -> FiniteMinReport {
    let convexity = is_convex_subcomplex(x, &min.vertices);
    let mut links = gromov_check(&min.complex);
    for check in &mut links.vertices {
        check.vertex = min.vertices[check.vertex.0];
        if let Some(w) = &mut check.witness {
            for v in w.iter_mut() {
                *v = min.vertices[v.0];
            }
        }
    }
    let simple = simple_connectivity(&min.complex);
    FiniteMinReport {
        pass: convexity.convex && links.pass && simple.simply_connected,
        convexity,
        links,
        simple_connectivity: simple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::Permutation;

    fn map(n: usize, cycles: &[Vec<usize>]) -> VertexMap {
        VertexMap(Permutation::from_cycles(n, cycles).unwrap())
    }

    fn square() -> CubeComplex {
        CubeComplex::build(&[vec![0, 1, 2, 3]]).unwrap()
    }

    fn path2() -> CubeComplex {
        CubeComplex::build(&[vec![0, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn automorphism_checks() {
        assert_eq!(check_automorphism(&square(), &VertexMap::identity(4)), Ok(()));
        assert_eq!(check_automorphism(&square(), &map(4, &[vec![0, 1, 3, 2]])), Ok(()));
        let err = check_automorphism(&path2(), &map(3, &[vec![0, 1]])).unwrap_err();
        assert!(matches!(err, IsometryError::NotAutomorphism { .. }));
        assert!(check_automorphism(&path2(), &VertexMap::identity(4)).is_err());
    }

    #[test]
    fn square_rotation() {
        let x = square();
        let g = map(4, &[vec![0, 1, 3, 2]]);
        let table = compute_walls(&x);
        for w in table.walls() {
            assert_eq!(detect_inversion(&x, &table, &g, w.id), Ok(None));
            assert_ne!(wall_image(&x, &table, &g, w.id), w.id);
        }
        let c = classify(&x, &g, 1).unwrap();
        assert!(matches!(c, Classification::Undecided { translation_length: 1, fixed_cubes: 1, .. }));
        match classify(&x, &g, 2).unwrap() {
            Classification::InversionDetected { power, wall, vertex, image } => {
                assert_eq!(power, 2);
                let h = halfspaces(&x, &table, wall).unwrap();
                assert!(h.separates(vertex, image));
                assert_eq!(g.power(2).apply(vertex), image);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn elliptic_and_inversions() {
        assert_eq!(
            classify(&square(), &VertexMap::identity(4), 8).unwrap(),
            Classification::Elliptic { fixed: VertexId(0) }
        );
        assert_eq!(
            classify(&path2(), &map(3, &[vec![0, 2]]), 8).unwrap(),
            Classification::Elliptic { fixed: VertexId(1) }
        );
        let edge = CubeComplex::build(&[vec![0, 1]]).unwrap();
        assert!(matches!(
            classify(&edge, &map(2, &[vec![0, 1]]), 1).unwrap(),
            Classification::InversionDetected { power: 1, .. }
        ));
    }

    #[test]
    fn displacement_and_min_set() {
        // reflection of a 2 x 1 strip 0 1 2 / 3 4 5 across the middle column
        let x = CubeComplex::build(&[vec![0, 1, 3, 4], vec![1, 2, 4, 5]]).unwrap();
        let g = map(6, &[vec![0, 2], vec![3, 5]]);
        let profile = displacement_profile(&x, &g).unwrap();
        assert_eq!(profile.translation_length, 0);
        assert_eq!(profile.argmin, vec![VertexId(1), VertexId(4)]);
        assert!(matches!(min_set(&x, &g), Err(IsometryError::NotHyperbolic)));

        let x = square();
        let g = map(4, &[vec![0, 3], vec![1, 2]]);
        let min = min_set(&x, &g).unwrap();
        assert_eq!(min.translation_length, 2);
        assert_eq!(min.vertices.len(), 4);
        let report = verify_min(&x, &min);
        assert!(report.pass);
    }

    #[test]
    fn displacement_is_symmetric_under_inverse() {
        // rotations and reflections of the 3 x 3 grid of vertices
        let x = {
            let v = |a: usize, b: usize| 3 * b + a;
            let sq = |i: usize, j: usize| vec![v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)];
            CubeComplex::build(&[sq(0, 0), sq(1, 0), sq(0, 1), sq(1, 1)]).unwrap()
        };
        let rot = VertexMap(Permutation::new((0..9).map(|i| 3 * (2 - i % 3) + i / 3).collect()).unwrap());
        let refl = VertexMap(Permutation::new((0..9).map(|i| 3 * (i / 3) + 2 - i % 3).collect()).unwrap());
        for g in [rot.clone(), refl.clone(), rot.compose(&refl), rot.power(2)] {
            assert_eq!(check_automorphism(&x, &g), Ok(()));
            let inv = g.inverse();
            for v in x.vertices() {
                assert_eq!(displacement(&x, &g, v), displacement(&x, &inv, g.apply(v)));
            }
        }
        assert!(matches!(classify(&x, &rot, 8).unwrap(), Classification::Elliptic { fixed: VertexId(4) }));
    }
}
