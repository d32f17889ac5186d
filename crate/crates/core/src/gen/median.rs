//! Median graphs grown by convex expansion, and cube completion.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::IndexedRandom;
use rand::Rng;

/// Small simple graph with sorted adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn single_vertex() -> Self {
        Graph {
            adj: vec![BTreeSet::new()],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Graph { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    fn bfs(&self, s: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.len()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if d[w] == usize::MAX {
                    d[w] = d[v] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    pub fn distances(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|s| self.bfs(s)).collect()
    }
}

/// Smallest set containing `seed` and closed under taking intervals.
pub fn convex_hull(d: &[Vec<usize>], seed: &[usize]) -> Vec<bool> {
    let n = d.len();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            members.push(s);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        for j in 0..=i {
            let b = members[j];
            for (z, flag) in inside.iter_mut().enumerate() {
                if !*flag && d[a][z] + d[z][b] == d[a][b] {
                    *flag = true;
                    members.push(z);
                }
            }
        }
        i += 1;
    }
    inside
}

fn is_convex(d: &[Vec<usize>], set: &[bool]) -> bool {
    let n = d.len();
    (0..n).filter(|&a| set[a]).all(|a| {
        (0..n)
            .filter(|&b| set[b])
            .all(|b| (0..n).all(|z| set[z] || d[a][z] + d[z][b] != d[a][b]))
    })
}

/// Checks that `(g1, g2)` is a proper cover: both convex, covering, meeting,
/// and with no edge between `g1 \ g2` and `g2 \ g1`.
pub fn is_convex_cover(g: &Graph, d: &[Vec<usize>], g1: &[bool], g2: &[bool]) -> bool {
    let n = g.len();
    (0..n).all(|v| g1[v] || g2[v])
        && (0..n).any(|v| g1[v] && g2[v])
        && is_convex(d, g1)
        && is_convex(d, g2)
        && g.edges().iter().all(|&(a, b)| {
            let only1 = |v: usize| g1[v] && !g2[v];
            let only2 = |v: usize| g2[v] && !g1[v];
            !((only1(a) && only2(b)) || (only2(a) && only1(b)))
        })
}

/// Duplicates `g1 ∩ g2`: the old copy stays attached to `g1`, the new copy
/// (appended ids, in increasing order of the originals) to `g2`, joined by a
/// matching.
pub fn expand(g: &Graph, g1: &[bool], g2: &[bool]) -> Graph {
    let n = g.len();
    let mut copy = vec![usize::MAX; n];
    let mut next = n;
    for v in 0..n {
        if g1[v] && g2[v] {
            copy[v] = next;
            next += 1;
        }
    }
    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        let (ia, ib) = (g1[a] && g2[a], g1[b] && g2[b]);
        match (ia, ib) {
            (true, true) => {
                edges.push((a, b));
                edges.push((copy[a], copy[b]));
            }
            (true, false) if g2[b] => edges.push((copy[a], b)),
            (false, true) if g2[a] => edges.push((a, copy[b])),
            _ => edges.push((a, b)),
        }
    }
    for v in 0..n {
        if copy[v] != usize::MAX {
            edges.push((v, copy[v]));
        }
    }
    Graph::from_edges(next, &edges)
}

/// One random convex cover of `g`, or `None` when the attempt produced an
/// improper one.
fn random_cover<R: Rng>(g: &Graph, d: &[Vec<usize>], rng: &mut R) -> Option<(Vec<bool>, Vec<bool>)> {
    let n = g.len();
    let edges = g.edges();
    if edges.is_empty() || rng.random_bool(0.4) {
        // peripheral: g1 = everything, g2 = hull of a few vertices
        let k = rng.random_range(1..=3.min(n));
        let seed: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        let h = convex_hull(d, &seed);
        return Some((vec![true; n], h));
    }
    // along a wall: g2 is a halfspace, g1 the hull of the other halfspace
    // and the boundary of g2, plus a few extra vertices of g2
    let &(x, y) = edges.choose(rng).expect("nonempty");
    let (x, y) = if rng.random_bool(0.5) { (x, y) } else { (y, x) };
    let side_b: Vec<bool> = (0..n).map(|w| d[w][y] < d[w][x]).collect();
    let mut seed: Vec<usize> = (0..n).filter(|&w| !side_b[w]).collect();
    seed.extend((0..n).filter(|&w| side_b[w] && g.neighbours(w).any(|u| !side_b[u])));
    let b_list: Vec<usize> = (0..n).filter(|&w| side_b[w]).collect();
    for _ in 0..rng.random_range(0..=2) {
        seed.push(*b_list.choose(rng).expect("y is in B"));
    }
    let g1 = convex_hull(d, &seed);
    Some((g1, side_b)).filter(|(g1, g2)| is_convex_cover(g, d, g1, g2))
}

/// Median graph on at most `max_vertices` vertices after `steps` expansions.
pub fn median_graph<R: Rng>(steps: usize, max_vertices: usize, rng: &mut R) -> Graph {
    let mut g = Graph::single_vertex();
    for _ in 0..steps {
        let d = g.distances();
        for _attempt in 0..20 {
            let Some((g1, g2)) = random_cover(&g, &d, rng) else {
                continue;
            };
            let grow = (0..g.len()).filter(|&v| g1[v] && g2[v]).count();
            if g.len() + grow <= max_vertices {
                g = expand(&g, &g1, &g2);
                break;
            }
        }
    }
    g
}

/// Every induced hypercube of dimension at least 1, as a corner sequence in
/// mask order, each listed once (in canonical form).
///
/// Squares are completed through unique common neighbours, so `g` must not
/// contain `K_{2,3}`; median graphs and their induced subgraphs qualify.
pub fn induced_cubes(g: &Graph) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for v in 0..g.len() {
        let nbrs: Vec<usize> = g.neighbours(v).filter(|&w| w > v).collect();
        let mut chosen = Vec::new();
        grow_cube(g, v, &nbrs, 0, &mut chosen, &mut found);
    }
    found.into_iter().collect()
}

/// Corners of the cube at `v` spanned by the neighbours `dirs`, if it is an
/// induced hypercube.
fn cube_corners(g: &Graph, v: usize, dirs: &[usize]) -> Option<Vec<usize>> {
    let k = dirs.len();
    let mut corners = vec![usize::MAX; 1 << k];
    corners[0] = v;
    for (i, &w) in dirs.iter().enumerate() {
        corners[1 << i] = w;
    }
    for mask in 1usize..(1 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let low = mask.trailing_zeros();
        let a = corners[mask ^ (1 << low)];
        let rest = mask ^ (1 << low);
        let high = rest.trailing_zeros();
        let b = corners[mask ^ (1 << high)];
        let c = corners[mask ^ (1 << low) ^ (1 << high)];
        let fourth: Vec<usize> = g
            .neighbours(a)
            .filter(|&z| z != c && g.adjacent(z, b))
            .collect();
        if fourth.len() != 1 {
            return None;
        }
        corners[mask] = fourth[0];
    }
    let distinct: BTreeSet<usize> = corners.iter().copied().collect();
    if distinct.len() != corners.len() {
        return None;
    }
    // all cube edges present, and nothing else among the corners
    for m1 in 0..corners.len() {
        for m2 in m1 + 1..corners.len() {
            let is_edge = (m1 ^ m2).count_ones() == 1;
            if g.adjacent(corners[m1], corners[m2]) != is_edge {
                return None;
            }
        }
    }
    Some(corners)
}

fn grow_cube(
    g: &Graph,
    v: usize,
    nbrs: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
) {
    for i in from..nbrs.len() {
        chosen.push(nbrs[i]);
        if let Some(corners) = cube_corners(g, v, chosen) {
            if corners.iter().all(|&c| c >= v) {
                found.insert(crate::cube::canonical_corners(&corners));
                grow_cube(g, v, nbrs, i + 1, chosen, found);
            }
        }
        chosen.pop();
    }
}

/// Cubes of the cube completion of `g`: every induced hypercube, keeping
/// only maximal ones, plus isolated vertices.
pub fn cube_completion(g: &Graph) -> Vec<Vec<usize>> {
    let cubes = induced_cubes(g);
    let sets: Vec<BTreeSet<usize>> = cubes.iter().map(|c| c.iter().copied().collect()).collect();
    let mut out: Vec<Vec<usize>> = cubes
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !sets
                .iter()
                .enumerate()
                .any(|(j, s)| j != *i && s.len() > sets[*i].len() && sets[*i].is_subset(s))
        })
        .map(|(_, c)| c.clone())
        .collect();
    out.extend((0..g.len()).filter(|&v| g.adj[v].is_empty()).map(|v| vec![v]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn expansions_from_a_point() {
        let g = Graph::single_vertex();
        let d = g.distances();
        let cover = (vec![true], vec![true]);
        assert!(is_convex_cover(&g, &d, &cover.0, &cover.1));
        let e = expand(&g, &cover.0, &cover.1);
        assert_eq!(e.edges(), vec![(0, 1)]);
        // expanding a path along its middle edge's wall with full overlap
        // of the boundary gives a ladder
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let d = p.distances();
        let all = vec![true; 3];
        assert!(is_convex_cover(&p, &d, &all, &all));
        let ladder = expand(&p, &all, &all);
        assert_eq!(ladder.len(), 6);
        assert_eq!(ladder.edges().len(), 7);
    }

    #[test]
    fn improper_covers_are_rejected() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let d = p.distances();
        // {0, 2} is not convex
        assert!(!is_convex_cover(&p, &d, &[true, false, true], &[false, true, false]));
        // disjoint
        assert!(!is_convex_cover(&p, &d, &[true, false, false], &[false, true, true]));
    }

    #[test]
    fn hulls() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let h = convex_hull(&c6.distances(), &[0, 2]);
        assert_eq!(h, vec![true, true, true, false, false, false]);
        let h = convex_hull(&c6.distances(), &[0, 3]);
        assert!(h.iter().all(|&b| b));
    }

    #[test]
    fn induced_cubes_of_a_3_cube_graph() {
        let edges: Vec<(usize, usize)> = (0..8usize)
            .flat_map(|a| (0..3).map(move |i| (a, a ^ (1 << i))))
            .filter(|&(a, b)| a < b)
            .collect();
        let g = Graph::from_edges(8, &edges);
        let cubes = induced_cubes(&g);
        let count = |k: usize| cubes.iter().filter(|c| c.len() == 1 << k).count();
        assert_eq!((count(1), count(2), count(3)), (12, 6, 1));
        assert_eq!(cube_completion(&g), vec![(0..8).collect::<Vec<_>>()]);
    }

    #[test]
    fn growth_respects_the_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for steps in [0, 1, 5, 30] {
            let g = median_graph(steps, 64, &mut rng);
            assert!(g.len() <= 64);
            if steps == 0 {
                assert_eq!(g.len(), 1);
            }
            if steps == 1 {
                assert_eq!(g.len(), 2);
            }
        }
    }
}
