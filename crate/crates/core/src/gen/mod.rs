//! Deterministic generators of CAT(0) test complexes, periodic testbeds and
//! non-examples. Every generator is a pure function of its parameters and
//! seed.

pub mod median;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::CubeComplex;
use crate::isometry::{Permutation, ShiftMap};
use crate::periodic::{PVertex, PeriodicComplex};
use median::{cube_completion, median_graph, Graph};

/// Vertex cap for finite generators.
pub const MAX_FINITE_VERTICES: usize = 64;
/// Orbit cap for periodic generators.
pub const MAX_ORBITS: usize = 8;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_of(g: &Graph) -> CubeComplex {
    CubeComplex::build_with_vertex_count(g.len(), &cube_completion(g)).expect("cube completions of median graphs are valid")
}

/// Median graph grown by `steps` random convex expansions, with every induced
/// hypercube filled.
pub fn generate_median(seed: u64, steps: usize) -> CubeComplex {
    complex_of(&median_graph(steps, MAX_FINITE_VERTICES, &mut rng(seed)))
}

/// Random tree on `n >= 1` vertices, each new vertex attached to a uniformly
/// chosen earlier one.
pub fn generate_tree(seed: u64, n: usize) -> CubeComplex {
    let mut r = rng(seed);
    let edges: Vec<Vec<usize>> = (1..n.max(1)).map(|v| vec![r.random_range(0..v), v]).collect();
    CubeComplex::build_with_vertex_count(n.max(1), &edges).expect("trees are valid")
}

pub fn path(n: usize) -> CubeComplex {
    let edges: Vec<Vec<usize>> = (1..n.max(1)).map(|v| vec![v - 1, v]).collect();
    CubeComplex::build_with_vertex_count(n.max(1), &edges).expect("paths are valid")
}

/// Random Young diagram of at most `cells` unit squares in the plane grid.
/// The union of a down-closed set of cells is CAT(0).
pub fn generate_grid_subcomplex(seed: u64, cells: usize) -> CubeComplex {
    let mut r = rng(seed);
    // column heights, non-increasing
    let mut heights: Vec<usize> = Vec::new();
    let mut left = cells.max(1);
    let mut cap = r.random_range(1..=left.min(7));
    while left > 0 && heights.len() < 7 {
        let h = r.random_range(1..=cap.min(left));
        heights.push(h);
        left -= h;
        cap = h;
    }
    let width = heights.len();
    let top = heights[0];
    let id = |x: usize, y: usize| y * (width + 1) + x;
    let mut squares = Vec::new();
    for (x, &h) in heights.iter().enumerate() {
        for y in 0..h {
            squares.push(vec![id(x, y), id(x + 1, y), id(x, y + 1), id(x + 1, y + 1)]);
        }
    }
    let used: std::collections::BTreeSet<usize> = squares.iter().flatten().copied().collect();
    let relabel: Vec<usize> = (0..=id(width, top)).map(|v| used.range(..v).count()).collect();
    let squares: Vec<Vec<usize>> = squares.iter().map(|s| s.iter().map(|&v| relabel[v]).collect()).collect();
    CubeComplex::build(&squares).expect("Young diagrams are valid")
}

/// Cartesian product: vertex `(i, j)` gets id `i * |b| + j`, and each pair of
/// cubes gives a cube whose low mask bits index `a` and high bits `b`.
pub fn product(a: &CubeComplex, b: &CubeComplex) -> CubeComplex {
    let nb = b.vertex_count();
    let mut cubes = Vec::new();
    for ca in a.maximal_cubes() {
        for cb in b.maximal_cubes() {
            let da = ca.dim();
            let corners = (0..1usize << (da + cb.dim()))
                .map(|m| ca.corners()[m & ((1 << da) - 1)].0 * nb + cb.corners()[m >> da].0)
                .collect();
            cubes.push(corners);
        }
    }
    CubeComplex::build_with_vertex_count(a.vertex_count() * nb, &cubes).expect("products of valid complexes are valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonExample {
    NonFlagLink,
    SelfIntersectingWall,
    NonSimplyConnected,
}

impl NonExample {
    pub const ALL: [NonExample; 3] = [
        NonExample::NonFlagLink,
        NonExample::SelfIntersectingWall,
        NonExample::NonSimplyConnected,
    ];
}

/// Valid complexes each violating one named property:
/// the boundary of the 3-cube (every link is a hollow triangle), a square
/// with a three-square strip glued from one side round to an adjacent side
/// (its long wall crosses that square twice), and the square-free hexagon.
pub fn generate_nonexample(kind: NonExample) -> CubeComplex {
    let cubes: Vec<Vec<usize>> = match kind {
        NonExample::NonFlagLink => {
            let mut faces = Vec::new();
            for axis in 0..3usize {
                for bit in 0..2usize {
                    let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
                    faces.push(
                        (0..4usize)
                            .map(|m| {
                                (bit << axis) | ((m & 1) << others[0]) | (((m >> 1) & 1) << others[1])
                            })
                            .collect(),
                    );
                }
            }
            faces
        }
        NonExample::SelfIntersectingWall => flipped_strip_cubes(),
        NonExample::NonSimplyConnected => (0..6).map(|i| vec![i, (i + 1) % 6]).collect(),
    };
    CubeComplex::build(&cubes).expect("non-examples are valid complexes")
}

fn flipped_strip_cubes() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2, 3], vec![2, 3, 4, 5], vec![4, 5, 6, 7], vec![6, 7, 1, 3]]
}

/// Periodic testbed and its canonical automorphism.
#[derive(Clone, Debug)]
pub struct PeriodicFixture {
    pub name: String,
    pub complex: PeriodicComplex,
    pub map: ShiftMap,
}

fn names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "a".to_string(),
            1 => "b".to_string(),
            _ => format!("b{i}"),
        })
        .collect()
}

/// The line with the unit shift.
pub fn periodic_line() -> PeriodicFixture {
    PeriodicFixture {
        name: "periodic-line".into(),
        complex: PeriodicComplex::new(names(1), vec![vec![PVertex::new(0, 0), PVertex::new(0, 1)]])
            .expect("valid"),
        map: ShiftMap::translation(1, 1),
    }
}

fn ladder_complex() -> PeriodicComplex {
    PeriodicComplex::new(
        names(2),
        vec![vec![PVertex::new(0, 0), PVertex::new(0, 1), PVertex::new(1, 0), PVertex::new(1, 1)]],
    )
    .expect("valid")
}

/// The ladder `Z x [0, 1]` with the unit shift.
pub fn periodic_ladder() -> PeriodicFixture {
    PeriodicFixture {
        name: "periodic-ladder".into(),
        complex: ladder_complex(),
        map: ShiftMap::translation(2, 1),
    }
}

fn glide_map() -> ShiftMap {
    ShiftMap {
        perm: Permutation::from_cycles(2, &[vec![0, 1]]).expect("valid"),
        shift: 1,
    }
}

/// The ladder with the glide `(a, z) -> (b, z + 1)`, `(b, z) -> (a, z + 1)`.
pub fn periodic_glide() -> PeriodicFixture {
    PeriodicFixture {
        name: "periodic-glide".into(),
        complex: ladder_complex(),
        map: glide_map(),
    }
}

/// The ladder with the square of the glide, a shift by 2.
pub fn periodic_glide_squared() -> PeriodicFixture {
    PeriodicFixture {
        name: "periodic-glide-squared".into(),
        complex: ladder_complex(),
        map: glide_map().power(2),
    }
}

/// The line `a` with a random tree of `1..=tree_size` extra orbits hanging
/// from each of its vertices; tree edges join levels `0` or `0` and `1`.
pub fn periodic_pendant(seed: u64, tree_size: usize) -> PeriodicFixture {
    let mut r = rng(seed);
    let extra = r.random_range(1..=tree_size.clamp(1, MAX_ORBITS - 1));
    let mut cubes = vec![vec![PVertex::new(0, 0), PVertex::new(0, 1)]];
    for child in 1..=extra {
        let parent = r.random_range(0..child);
        let offset = *[0i64, 0, 1].choose(&mut r).expect("nonempty");
        cubes.push(vec![PVertex::new(parent, 0), PVertex::new(child, offset)]);
    }
    PeriodicFixture {
        name: format!("periodic-pendant-{seed}"),
        complex: PeriodicComplex::new(names(extra + 1), cubes).expect("trees on a line are valid"),
        map: ShiftMap::translation(extra + 1, 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Tree,
    Expansion,
    GridSubcomplex,
    Product,
    PeriodicLine,
    PeriodicLadder,
    PeriodicPendant,
    PeriodicGlide,
    PeriodicGlideSquared,
    FlippedStrip,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Tree,
        Family::Expansion,
        Family::GridSubcomplex,
        Family::Product,
        Family::PeriodicLine,
        Family::PeriodicLadder,
        Family::PeriodicPendant,
        Family::PeriodicGlide,
        Family::PeriodicGlideSquared,
        Family::FlippedStrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::Expansion => "expansion",
            Family::GridSubcomplex => "grid-subcomplex",
            Family::Product => "product",
            Family::PeriodicLine => "periodic-line",
            Family::PeriodicLadder => "periodic-ladder",
            Family::PeriodicPendant => "periodic-pendant",
            Family::PeriodicGlide => "periodic-glide",
            Family::PeriodicGlideSquared => "periodic-glide-squared",
            Family::FlippedStrip => "flipped-strip",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// A generator call. `size` is the family's size parameter: vertices for
/// trees, expansion steps, cells for grid subcomplexes, factor size for
/// products, tree size for pendants; other families ignore it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GenSpec {
    pub seed: u64,
    pub family: Family,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub enum Generated {
    Finite(CubeComplex),
    Periodic(PeriodicFixture),
}

impl GenSpec {
    pub fn generate(&self) -> Generated {
        let GenSpec { seed, family, size } = *self;
        match family {
            Family::Tree => Generated::Finite(generate_tree(seed, size.clamp(1, MAX_FINITE_VERTICES))),
            Family::Expansion => Generated::Finite(generate_median(seed, size)),
            Family::GridSubcomplex => Generated::Finite(generate_grid_subcomplex(seed, size.clamp(1, 40))),
            Family::Product => {
                let k = size.clamp(1, 8);
                let a = generate_tree(seed, k);
                let b = generate_median(seed.wrapping_add(1), k.min(4));
                if a.vertex_count() * b.vertex_count() <= MAX_FINITE_VERTICES {
                    Generated::Finite(product(&a, &b))
                } else {
                    Generated::Finite(product(&a, &path(2)))
                }
            }
            Family::PeriodicLine => Generated::Periodic(periodic_line()),
            Family::PeriodicLadder => Generated::Periodic(periodic_ladder()),
            Family::PeriodicPendant => Generated::Periodic(periodic_pendant(seed, size.max(1))),
            Family::PeriodicGlide => Generated::Periodic(periodic_glide()),
            Family::PeriodicGlideSquared => Generated::Periodic(periodic_glide_squared()),
            Family::FlippedStrip => Generated::Finite(generate_nonexample(NonExample::SelfIntersectingWall)),
        }
    }
}

/// `count` CAT(0) complexes with at most 64 vertices, cycling through trees,
/// expansions, grid subcomplexes and products.
pub fn finite_corpus(seed: u64, count: usize) -> Vec<(GenSpec, CubeComplex)> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let s = r.random::<u64>();
            let spec = match i % 6 {
                0 => GenSpec { seed: s, family: Family::Tree, size: r.random_range(1..=20) },
                1 | 2 | 3 => GenSpec { seed: s, family: Family::Expansion, size: r.random_range(0..=14) },
                4 => GenSpec { seed: s, family: Family::GridSubcomplex, size: r.random_range(1..=20) },
                _ => GenSpec { seed: s, family: Family::Product, size: r.random_range(1..=6) },
            };
            match spec.generate() {
                Generated::Finite(x) => (spec, x),
                Generated::Periodic(_) => unreachable!("finite families only"),
            }
        })
        .collect()
}

/// Line, ladder, `pendants` decorated lines (up to six pendant orbits) and
/// the squared glide.
pub fn periodic_corpus(seed: u64, pendants: usize) -> Vec<PeriodicFixture> {
    let mut out = vec![periodic_line(), periodic_ladder()];
    out.extend((0..pendants as u64).map(|i| periodic_pendant(seed.wrapping_add(i), 2 + (i % 5) as usize)));
    out.push(periodic_glide_squared());
    out
}
