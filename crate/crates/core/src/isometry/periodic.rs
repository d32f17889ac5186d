//! Shift-commuting automorphisms of periodic complexes.

use serde::Serialize;

use super::{Classification, DisplacementProfile, Inversion, IsometryError, ShiftMap};
use crate::metric::shortest_path;
use crate::periodic::{periodic_walls, OrbitId, PVertex, PeriodicComplex, PeriodicError, PeriodicWall, WallCatalogue};

/// Checks every cube orbit representative; by periodicity this covers every cube.
pub fn check_automorphism(p: &PeriodicComplex, g: &ShiftMap) -> Result<(), IsometryError> {
    if g.perm.len() != p.orbit_count() {
        return Err(IsometryError::WrongLength {
            len: g.perm.len(),
            expected: p.orbit_count(),
        });
    }
    for dim in 1..=p.dimension() {
        for cube in p.orbit_cubes(dim) {
            let image: Vec<PVertex> = cube.iter().map(|&v| g.apply(v)).collect();
            if !p.contains_cube(&image) {
                return Err(IsometryError::NotPeriodicAutomorphism {
                    cube: cube.clone(),
                    image,
                });
            }
        }
    }
    Ok(())
}

pub fn displacement(p: &PeriodicComplex, g: &ShiftMap, v: PVertex) -> Result<usize, PeriodicError> {
    p.distance(v, g.apply(v))
}

/// Displacement of each orbit at `z = 0`; it does not depend on `z`.
pub fn displacement_profile(p: &PeriodicComplex, g: &ShiftMap) -> Result<DisplacementProfile<OrbitId>, PeriodicError> {
    let values = (0..p.orbit_count())
        .map(|o| displacement(p, g, PVertex::new(o, 0)).map(|d| (OrbitId(o), d)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DisplacementProfile::from_values(values))
}

pub fn translation_length(p: &PeriodicComplex, g: &ShiftMap) -> Result<(usize, Vec<OrbitId>), PeriodicError> {
    let profile = displacement_profile(p, g)?;
    Ok((profile.translation_length, profile.argmin))
}

/// Vertices of minimal displacement: a union of whole orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicMinSet {
    pub translation_length: usize,
    /// Sorted.
    pub orbits: Vec<OrbitId>,
    pub profile: DisplacementProfile<OrbitId>,
    /// `g` maps the set onto itself.
    pub g_invariant: bool,
}

impl PeriodicMinSet {
    pub fn contains(&self, v: PVertex) -> bool {
        self.orbits.binary_search(&v.orbit).is_ok()
    }

    /// Orbit representatives at `z = 0`.
    pub fn representatives(&self) -> Vec<PVertex> {
        self.orbits.iter().map(|o| PVertex { orbit: *o, z: 0 }).collect()
    }
}

pub fn min_set(p: &PeriodicComplex, g: &ShiftMap) -> Result<PeriodicMinSet, IsometryError> {
    let profile = displacement_profile(p, g)?;
    if profile.translation_length == 0 {
        return Err(IsometryError::NotHyperbolic);
    }
    let orbits = profile.argmin.clone();
    let g_invariant = orbits
        .iter()
        .all(|o| orbits.binary_search(&OrbitId(g.perm.apply(o.0))).is_ok());
    Ok(PeriodicMinSet {
        translation_length: profile.translation_length,
        orbits,
        profile,
        g_invariant,
    })
}

pub fn wall_image(p: &PeriodicComplex, catalogue: &WallCatalogue, g: &ShiftMap, w: PeriodicWall) -> PeriodicWall {
    let (a, b) = catalogue.representative_edge(p, w);
    catalogue
        .wall_of(p, g.apply(a), g.apply(b))
        .expect("automorphisms preserve edges")
}

/// `Some` when `g` preserves `w` and exchanges its sides.
///
/// The side of a vertex `y` relative to a wall through the edge `ab` is read
/// off distances: `y` lies with `a` when it is strictly closer to `a` than
/// to `b`. This agrees with the halfspaces whenever the 1-skeleton is a
/// median graph.
pub fn detect_inversion(
    p: &PeriodicComplex,
    catalogue: &WallCatalogue,
    g: &ShiftMap,
    w: PeriodicWall,
) -> Result<Option<Inversion<PVertex, PeriodicWall>>, PeriodicError> {
    if wall_image(p, catalogue, g, w) != w {
        return Ok(None);
    }
    let (a, b) = catalogue.representative_edge(p, w);
    let image = g.apply(a);
    let swapped = p.distance(image, b)? < p.distance(image, a)?;
    Ok(swapped.then_some(Inversion { wall: w, vertex: a, image }))
}

/// One period of a `g`-invariant bi-infinite path: `period[L] = g(period[0])`
/// and `gamma(i + L) = g(gamma(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axis {
    pub period: Vec<PVertex>,
}

impl Axis {
    pub fn period_length(&self) -> usize {
        self.period.len().saturating_sub(1)
    }

    /// `gamma(i)` for any integer `i`.
    pub fn at(&self, g: &ShiftMap, i: i64) -> PVertex {
        let l = self.period_length() as i64;
        if l == 0 {
            return self.period[0];
        }
        let (q, r) = (i.div_euclid(l), i.rem_euclid(l));
        g.power(q).apply(self.period[r as usize])
    }
}

/// Axis through the first Min orbit at `z = 0`.
pub fn build_axis(p: &PeriodicComplex, g: &ShiftMap, min: &PeriodicMinSet) -> Result<Axis, IsometryError> {
    build_axis_at(p, g, min, min.representatives()[0])
}

/// Axis through `v`, using the lexicographically smallest geodesic from `v`
/// to `g(v)` on the certified window.
pub fn build_axis_at(p: &PeriodicComplex, g: &ShiftMap, min: &PeriodicMinSet, v: PVertex) -> Result<Axis, IsometryError> {
    if !min.contains(v) {
        return Err(IsometryError::NotInMin(v));
    }
    let certificate = p.certified_distance(v, g.apply(v))?;
    let w = p.materialize_window(certificate.radius)?;
    let path = shortest_path(&w.complex, w.id(v).expect("inside"), w.id(g.apply(v)).expect("inside"))?;
    let alpha = path.vertices().iter().map(|&x| w.label(x)).collect();
    axis_from_geodesic(p, g, min, alpha)
}

/// Axis with the given first period `alpha`, which must be a geodesic of
/// length `|g|` from a Min vertex to its image.
pub fn axis_from_geodesic(
    p: &PeriodicComplex,
    g: &ShiftMap,
    min: &PeriodicMinSet,
    alpha: Vec<PVertex>,
) -> Result<Axis, IsometryError> {
    let v = alpha[0];
    if !min.contains(v) {
        return Err(IsometryError::NotInMin(v));
    }
    let end = *alpha.last().expect("nonempty");
    let is_path = alpha.windows(2).all(|s| p.edge_orbit(s[0], s[1]).is_some());
    if end != g.apply(v) || !is_path || alpha.len() != min.translation_length + 1 {
        return Err(IsometryError::NotGeodesic {
            from: v,
            to: g.apply(v),
            length: alpha.len() - 1,
            expected: min.translation_length,
        });
    }
    Ok(Axis { period: alpha })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxisFailure {
    Empty,
    NotClosed { end: PVertex, expected: PVertex },
    NotInMin { index: usize, vertex: PVertex },
    Distance { a: i64, b: i64, expected: usize, actual: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxisReport {
    pub pass: bool,
    pub pairs_checked: usize,
    pub failure: Option<AxisFailure>,
}

/// Checks `d(gamma(a), gamma(b)) = b - a` for `0 <= a < L` and
/// `a <= b <= a + |g|`, and that one period lies in Min. Invariance under `g`
/// extends both checks to the whole axis.
pub fn verify_axis(
    p: &PeriodicComplex,
    g: &ShiftMap,
    min: &PeriodicMinSet,
    axis: &Axis,
) -> Result<AxisReport, PeriodicError> {
    let fail = |pairs_checked, failure| {
        Ok(AxisReport {
            pass: false,
            pairs_checked,
            failure: Some(failure),
        })
    };
    if axis.period.len() < 2 {
        return fail(0, AxisFailure::Empty);
    }
    let (first, last) = (axis.period[0], *axis.period.last().expect("nonempty"));
    if last != g.apply(first) {
        return fail(
            0,
            AxisFailure::NotClosed {
                end: last,
                expected: g.apply(first),
            },
        );
    }
    if let Some((index, &vertex)) = axis.period.iter().enumerate().find(|(_, v)| !min.contains(**v)) {
        return fail(0, AxisFailure::NotInMin { index, vertex });
    }
    let l = axis.period_length() as i64;
    let reach = min.translation_length as i64;
    let mut pairs = 0;
    for a in 0..l {
        for b in a..=a + reach {
            let actual = p.distance(axis.at(g, a), axis.at(g, b))?;
            pairs += 1;
            if actual != (b - a) as usize {
                return fail(
                    pairs,
                    AxisFailure::Distance {
                        a,
                        b,
                        expected: (b - a) as usize,
                        actual,
                    },
                );
            }
        }
    }
    Ok(AxisReport {
        pass: true,
        pairs_checked: pairs,
        failure: None,
    })
}

/// Inversions of `g^k` for `1 <= k <= power_bound` over one wall per class
/// modulo the shift; then a fixed vertex; then a verified axis.
pub fn classify(
    p: &PeriodicComplex,
    g: &ShiftMap,
    power_bound: u32,
) -> Result<Classification<PVertex, PeriodicWall>, IsometryError> {
    check_automorphism(p, g)?;
    let catalogue = periodic_walls(p);
    for k in 1..=power_bound {
        let gk = g.power(k as i64);
        for w in catalogue.representatives() {
            if let Some(inv) = detect_inversion(p, &catalogue, &gk, w)? {
                return Ok(Classification::InversionDetected {
                    power: k,
                    wall: inv.wall,
                    vertex: inv.vertex,
                    image: inv.image,
                });
            }
        }
    }
    if g.shift == 0 {
        if let Some(o) = (0..p.orbit_count()).find(|&o| g.perm.apply(o) == o) {
            return Ok(Classification::Elliptic {
                fixed: PVertex::new(o, 0),
            });
        }
    }
    let (length, _) = translation_length(p, g)?;
    let undecided = |reason: String| Classification::Undecided {
        translation_length: length,
        fixed_cubes: fixed_cube_orbits(p, g),
        reason,
    };
    if g.shift == 0 {
        return Ok(undecided("the map has finite orbits but fixes no vertex".to_string()));
    }
    let min = min_set(p, g)?;
    let axis = build_axis(p, g, &min)?;
    let report = verify_axis(p, g, &min, &axis)?;
    if report.pass {
        Ok(Classification::Hyperbolic {
            translation_length: length,
            axis: axis.period,
        })
    } else {
        Ok(undecided(format!("axis check failed: {:?}", report.failure)))
    }
}

/// Cube orbit representatives mapped onto themselves as vertex sets.
pub fn fixed_cube_orbits(p: &PeriodicComplex, g: &ShiftMap) -> usize {
    (1..=p.dimension())
        .flat_map(|d| p.orbit_cubes(d))
        .filter(|cube| {
            let mut a: Vec<PVertex> = cube.to_vec();
            let mut b: Vec<PVertex> = cube.iter().map(|&v| g.apply(v)).collect();
            a.sort();
            b.sort();
            a == b
        })
        .count()
}
