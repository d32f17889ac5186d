//! Walls of a periodic complex, computed exactly from orbit data.
//!
//! Every edge is a shift `T^s e` of a stored edge orbit `e`. Each square
//! orbit identifies two pairs of shifted edge orbits, which gives a graph on
//! edge orbits whose arcs carry integer shifts. Within a connected
//! component, fixing a potential `phi(e)` for each edge orbit, the walls
//! meeting the component are the sets `{T^{phi(e) + k} e}` taken modulo the
//! gcd `q` of the shift discrepancies around cycles. If `q = 0` each wall
//! is finite and `T` moves it to a disjoint wall; otherwise there are `q`
//! infinite walls, cyclically permuted by `T`.

use std::collections::HashMap;

use serde::Serialize;

use super::{PVertex, PeriodicComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WallKind {
    Finite,
    ShiftPeriodic { period: i64 },
}

/// One `T`-orbit class of walls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallOrbit {
    pub kind: WallKind,
    /// `(edge orbit, offset)`: wall `k` of this orbit contains `T^{offset + k}`
    /// of each listed edge orbit (plus multiples of the period when periodic).
    pub edges: Vec<(usize, i64)>,
}

/// A single wall: orbit class and index. For finite classes every integer
/// index is a distinct wall; for periodic classes the index is taken modulo
/// the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PeriodicWall {
    pub orbit: usize,
    pub index: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallCatalogue {
    pub orbits: Vec<WallOrbit>,
    /// For each edge orbit, its wall orbit and offset.
    edge_to: Vec<(usize, i64)>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn periodic_walls(p: &PeriodicComplex) -> WallCatalogue {
    let edges = p.orbit_cubes(1);
    let m = edges.len();
    let mut arcs: Vec<Vec<(usize, i64)>> = vec![Vec::new(); m];
    for square in p.orbit_cubes(2) {
        for (i, j, k, l) in [(0, 1, 2, 3), (0, 2, 1, 3)] {
            let (a, sa) = p.edge_orbit(square[i], square[j]).expect("face closure");
            let (b, sb) = p.edge_orbit(square[k], square[l]).expect("face closure");
            arcs[a].push((b, sb - sa));
            arcs[b].push((a, sa - sb));
        }
    }

    let mut component = vec![usize::MAX; m];
    let mut phi = vec![0i64; m];
    let mut periods = Vec::new();
    for start in 0..m {
        if component[start] != usize::MAX {
            continue;
        }
        let c = periods.len();
        component[start] = c;
        let mut q = 0;
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            for &(f, shift) in &arcs[e] {
                if component[f] == usize::MAX {
                    component[f] = c;
                    phi[f] = phi[e] + shift;
                    stack.push(f);
                } else {
                    q = gcd(q, phi[e] + shift - phi[f]);
                }
            }
        }
        periods.push(q);
    }

    let mut orbits: Vec<WallOrbit> = periods
        .iter()
        .map(|&q| WallOrbit {
            kind: if q == 0 {
                WallKind::Finite
            } else {
                WallKind::ShiftPeriodic { period: q }
            },
            edges: Vec::new(),
        })
        .collect();
    let mut edge_to = vec![(0, 0); m];
    for e in 0..m {
        let c = component[e];
        let offset = match periods[c] {
            0 => phi[e],
            q => phi[e].rem_euclid(q),
        };
        orbits[c].edges.push((e, offset));
        edge_to[e] = (c, offset);
    }
    WallCatalogue { orbits, edge_to }
}

impl WallCatalogue {
    /// The wall containing the edge `{a, b}`, or `None` if it is not an edge.
    pub fn wall_of(&self, p: &PeriodicComplex, a: PVertex, b: PVertex) -> Option<PeriodicWall> {
        let (e, shift) = p.edge_orbit(a, b)?;
        let (orbit, offset) = self.edge_to[e];
        Some(self.reduce(PeriodicWall {
            orbit,
            index: shift - offset,
        }))
    }

    fn reduce(&self, w: PeriodicWall) -> PeriodicWall {
        match self.orbits[w.orbit].kind {
            WallKind::Finite => w,
            WallKind::ShiftPeriodic { period } => PeriodicWall {
                orbit: w.orbit,
                index: w.index.rem_euclid(period),
            },
        }
    }

    pub fn kind(&self, w: PeriodicWall) -> WallKind {
        self.orbits[w.orbit].kind
    }

    /// Image of a wall under the shift `T^t`.
    pub fn shift(&self, w: PeriodicWall, t: i64) -> PeriodicWall {
        self.reduce(PeriodicWall {
            orbit: w.orbit,
            index: w.index + t,
        })
    }

    /// One wall from each class modulo `T`: index 0 of every finite class
    /// and every index of every periodic class.
    pub fn representatives(&self) -> Vec<PeriodicWall> {
        let mut out = Vec::new();
        for (orbit, o) in self.orbits.iter().enumerate() {
            match o.kind {
                WallKind::Finite => out.push(PeriodicWall { orbit, index: 0 }),
                WallKind::ShiftPeriodic { period } => {
                    out.extend((0..period).map(|index| PeriodicWall { orbit, index }))
                }
            }
        }
        out
    }

    /// Some edge of the wall, as a pair of endpoints.
    pub fn representative_edge(&self, p: &PeriodicComplex, w: PeriodicWall) -> (PVertex, PVertex) {
        let (e, offset) = self.orbits[w.orbit].edges[0];
        let edge = &p.orbit_cubes(1)[e];
        let s = offset + w.index;
        (edge[0].shifted(s), edge[1].shifted(s))
    }

    /// All edges of a finite wall; `None` for a periodic wall.
    pub fn finite_edges(&self, p: &PeriodicComplex, w: PeriodicWall) -> Option<Vec<(PVertex, PVertex)>> {
        (self.kind(w) == WallKind::Finite).then(|| {
            self.orbits[w.orbit]
                .edges
                .iter()
                .map(|&(e, offset)| {
                    let edge = &p.orbit_cubes(1)[e];
                    (edge[0].shifted(offset + w.index), edge[1].shifted(offset + w.index))
                })
                .collect()
        })
    }

    /// Lowest and highest z-coordinate met by a finite wall.
    pub fn extent(&self, p: &PeriodicComplex, w: PeriodicWall) -> Option<(i64, i64)> {
        let edges = self.finite_edges(p, w)?;
        let zs = edges.iter().flat_map(|(a, b)| [a.z, b.z]);
        Some((zs.clone().min()?, zs.max()?))
    }
}

/// A square orbit whose two directions lie in the same wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicSelfIntersection {
    pub wall: PeriodicWall,
    pub square: Vec<PVertex>,
}

/// Two edges at one vertex lying in the same wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicSelfParallel {
    pub wall: PeriodicWall,
    pub vertex: PVertex,
    pub ends: [PVertex; 2],
}

/// Self-intersections, one per square orbit. Exact: every square of the
/// complex is a shift of a square orbit and walls commute with shifts.
pub fn self_intersections(p: &PeriodicComplex, catalogue: &WallCatalogue) -> Vec<PeriodicSelfIntersection> {
    let mut out = Vec::new();
    for square in p.orbit_cubes(2) {
        let first = catalogue.wall_of(p, square[0], square[1]);
        let second = catalogue.wall_of(p, square[0], square[2]);
        if let (Some(wall), true) = (first, first == second) {
            out.push(PeriodicSelfIntersection {
                wall,
                square: square.clone(),
            });
        }
    }
    out
}

/// Self-osculations at the level-0 representative of each vertex orbit.
pub fn self_parallels(p: &PeriodicComplex, catalogue: &WallCatalogue) -> Vec<PeriodicSelfParallel> {
    let mut out = Vec::new();
    for o in 0..p.orbit_count() {
        let v = PVertex::new(o, 0);
        let mut seen: HashMap<PeriodicWall, PVertex> = HashMap::new();
        for u in p.neighbours(v) {
            let wall = catalogue.wall_of(p, v, u).expect("neighbours span edges");
            if let Some(&first) = seen.get(&wall) {
                out.push(PeriodicSelfParallel {
                    wall,
                    vertex: v,
                    ends: [first, u],
                });
            } else {
                seen.insert(wall, u);
            }
        }
    }
    out
}
