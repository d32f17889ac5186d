//! Combinatorial null-homotopies of closed edge paths.
//!
//! A loop is reduced to a point with three kinds of moves: dropping a
//! stationary step, deleting a backtrack `a b a -> a`, and exchanging two
//! consecutive sides of a square for the other two. The greedy strategy pulls
//! the vertex farthest from a base point across a square towards the base
//! point. On CAT(0) cube complexes this never gets stuck, because two
//! vertices at distance `k - 1` from the base with a common neighbour at
//! distance `k` span a square with a vertex at distance `k - 2`.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::CubeComplex;
use crate::cube::VertexId;
use crate::metric::{bfs_distances, shortest_path, CombinatorialPath, MetricError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    /// Removes `c[at]`, which equals its successor.
    Collapse { at: usize },
    /// Removes `c[at]` and `c[at + 1]` where `c[at - 1] == c[at + 1]`; on a
    /// loop of two vertices only `c[at]` goes.
    DeleteBacktrack { at: usize },
    /// Inserts `vertex, c[at]` right after `c[at]`.
    InsertBacktrack { at: usize, vertex: VertexId },
    /// Replaces `c[at]` by the corner opposite to it in the square through
    /// `c[at - 1], c[at], c[at + 1]`.
    SquareExchange { at: usize, to: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("move {index} ({mv:?}) does not apply to the current loop")]
    Inapplicable { index: usize, mv: Move },
    #[error("replay ended at a loop of length {0}, not a point")]
    NotConstant(usize),
}

/// Moves reducing `start` (a closed path, first vertex repeated at the end) to a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionCertificate {
    pub start: Vec<VertexId>,
    pub moves: Vec<Move>,
}

impl ContractionCertificate {
    /// Applies every move, checking each one, and returns the final point.
    pub fn replay(&self, x: &CubeComplex) -> Result<VertexId, ReplayError> {
        let mut word = cyclic_word(&self.start);
        for (index, &mv) in self.moves.iter().enumerate() {
            if !apply_move(x, &mut word, mv) {
                return Err(ReplayError::Inapplicable { index, mv });
            }
            debug_assert!(is_closed_walk(x, &word));
        }
        match word.as_slice() {
            [v] => Ok(*v),
            _ => Err(ReplayError::NotConstant(word.len())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ContractionOutcome {
    Contracted(ContractionCertificate),
    /// No certificate within the budget; `shortest` is the shortest closed
    /// path reached (first vertex repeated at the end).
    Inconclusive { shortest: Vec<VertexId>, moves_used: usize },
}

impl ContractionOutcome {
    pub fn is_contracted(&self) -> bool {
        matches!(self, ContractionOutcome::Contracted(_))
    }
}

fn cyclic_word(closed: &[VertexId]) -> Vec<VertexId> {
    closed[..closed.len().max(2) - 1].to_vec()
}

fn closed_path(word: &[VertexId]) -> Vec<VertexId> {
    let mut out = word.to_vec();
    out.push(word[0]);
    out
}

fn is_closed_walk(x: &CubeComplex, word: &[VertexId]) -> bool {
    let n = word.len();
    n <= 1
        || (0..n).all(|i| {
            let (a, b) = (word[i], word[(i + 1) % n]);
            a == b || x.are_adjacent(a, b)
        })
}

/// Fourth corner of the square with consecutive corners `a, b, d`.
pub fn square_completion(x: &CubeComplex, a: VertexId, b: VertexId, d: VertexId) -> Option<VertexId> {
    x.incident_cubes(b)
        .iter()
        .filter(|r| r.dim == 2)
        .find_map(|&r| {
            let sq = x.cube(r);
            let m = sq.position(b)?;
            let (pa, pd) = (sq.position(a)?, sq.position(d)?);
            if (pa == m ^ 1 && pd == m ^ 2) || (pa == m ^ 2 && pd == m ^ 1) {
                Some(sq.corners()[m ^ 3])
            } else {
                None
            }
        })
}

fn apply_move(x: &CubeComplex, word: &mut Vec<VertexId>, mv: Move) -> bool {
    let n = word.len();
    match mv {
        Move::Collapse { at } => {
            if n < 2 || at >= n || word[at] != word[(at + 1) % n] {
                return false;
            }
            word.remove(at);
        }
        Move::DeleteBacktrack { at } => {
            if n < 2 || at >= n || word[(at + n - 1) % n] != word[(at + 1) % n] {
                return false;
            }
            if n == 2 {
                word.remove(at);
            } else {
                let next = (at + 1) % n;
                let (hi, lo) = if next > at { (next, at) } else { (at, next) };
                word.remove(hi);
                word.remove(lo);
            }
        }
        Move::InsertBacktrack { at, vertex } => {
            if at >= n || !x.are_adjacent(word[at], vertex) {
                return false;
            }
            let here = word[at];
            word.insert(at + 1, vertex);
            word.insert(at + 2, here);
        }
        Move::SquareExchange { at, to } => {
            if n < 3 || at >= n {
                return false;
            }
            let (a, b, d) = (word[(at + n - 1) % n], word[at], word[(at + 1) % n]);
            if a == d || square_completion(x, a, b, d) != Some(to) {
                return false;
            }
            word[at] = to;
        }
    }
    true
}

/// Greedy contraction of a closed path within `budget` moves.
pub fn contract_loop(
    x: &CubeComplex,
    closed: &CombinatorialPath,
    budget: usize,
) -> Result<ContractionOutcome, MetricError> {
    if !closed.is_closed() {
        return Err(MetricError::NotClosed(closed.start(), closed.end()));
    }
    let start = closed.vertices().to_vec();
    let mut word = cyclic_word(&start);
    let dist: Vec<usize> = bfs_distances(x, word[0])
        .into_iter()
        .map(|d| d.unwrap_or(usize::MAX))
        .collect();
    let mut moves = Vec::new();
    let mut shortest = word.clone();

    while word.len() > 1 {
        if moves.len() >= budget {
            return Ok(ContractionOutcome::Inconclusive {
                shortest: closed_path(&shortest),
                moves_used: moves.len(),
            });
        }
        let Some(mv) = next_move(x, &word, &dist) else {
            return Ok(ContractionOutcome::Inconclusive {
                shortest: closed_path(&shortest),
                moves_used: moves.len(),
            });
        };
        let applied = apply_move(x, &mut word, mv);
        debug_assert!(applied);
        moves.push(mv);
        if word.len() < shortest.len() {
            shortest = word.clone();
        }
    }
    Ok(ContractionOutcome::Contracted(ContractionCertificate { start, moves }))
}

fn next_move(x: &CubeComplex, word: &[VertexId], dist: &[usize]) -> Option<Move> {
    let n = word.len();
    if let Some(at) = (0..n).find(|&i| word[i] == word[(i + 1) % n]) {
        return Some(Move::Collapse { at });
    }
    if let Some(at) = (0..n).find(|&i| word[(i + n - 1) % n] == word[(i + 1) % n]) {
        return Some(Move::DeleteBacktrack { at });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| dist[word[j].0].cmp(&dist[word[i].0]).then(i.cmp(&j)));
    order.into_iter().find_map(|at| {
        let (a, b, d) = (word[(at + n - 1) % n], word[at], word[(at + 1) % n]);
        let to = square_completion(x, a, b, d)?;
        (dist[to.0] < dist[b.0]).then_some(Move::SquareExchange { at, to })
    })
}

/// Cycles closing each non-tree edge of a BFS spanning forest (roots are the
/// smallest vertex of each component). Together they generate the
/// fundamental group of the 1-skeleton, so a complex is simply connected
/// iff all of them contract.
pub fn fundamental_cycles(x: &CubeComplex) -> Vec<CombinatorialPath> {
    let n = x.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if parent[root] != usize::MAX {
            continue;
        }
        parent[root] = root;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in x.neighbours(VertexId(v)) {
                if parent[w.0] == usize::MAX {
                    parent[w.0] = v;
                    depth[w.0] = depth[v] + 1;
                    queue.push_back(w.0);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for cube in x.edges() {
        let (u, v) = (cube.corners()[0].0, cube.corners()[1].0);
        if parent[v] == u || parent[u] == v {
            continue;
        }
        // climb to the lowest common ancestor
        let (mut a, mut b) = (u, v);
        let (mut left, mut right) = (vec![a], vec![b]);
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
                left.push(a);
            } else {
                b = parent[b];
                right.push(b);
            }
        }
        // left ends at the ancestor, right too; walk u -> lca -> v -> u
        right.pop();
        right.reverse();
        let mut cycle: Vec<VertexId> = left.into_iter().chain(right).map(VertexId).collect();
        cycle.push(VertexId(u));
        cycles.push(CombinatorialPath::from_vertices_unchecked(cycle));
    }
    cycles
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleConnectivityReport {
    pub simply_connected: bool,
    pub cycles_checked: usize,
    pub longest_cycle: usize,
    /// Closed path that could not be contracted, if any.
    pub stuck: Option<Vec<VertexId>>,
}

/// Contracts every fundamental cycle with budget `10 · length²`.
pub fn simple_connectivity(x: &CubeComplex) -> SimpleConnectivityReport {
    let cycles = fundamental_cycles(x);
    let longest_cycle = cycles.iter().map(CombinatorialPath::length).max().unwrap_or(0);
    for cycle in &cycles {
        let budget = 10 * cycle.length() * cycle.length();
        match contract_loop(x, cycle, budget).expect("fundamental cycles are closed") {
            ContractionOutcome::Contracted(_) => {}
            ContractionOutcome::Inconclusive { .. } => {
                return SimpleConnectivityReport {
                    simply_connected: false,
                    cycles_checked: cycles.len(),
                    longest_cycle,
                    stuck: Some(cycle.vertices().to_vec()),
                };
            }
        }
    }
    SimpleConnectivityReport {
        simply_connected: true,
        cycles_checked: cycles.len(),
        longest_cycle,
        stuck: None,
    }
}

/// Random closed path of length at most `max_len` through `start`: a random
/// walk of at most `max_len / 2` steps followed by the lexicographically
/// smallest geodesic back.
pub fn random_loop<R: Rng>(x: &CubeComplex, start: VertexId, max_len: usize, rng: &mut R) -> CombinatorialPath {
    let steps = if max_len >= 2 { rng.random_range(1..=max_len / 2) } else { 0 };
    let mut walk = vec![start];
    let mut cur = start;
    for _ in 0..steps {
        let nbrs = x.neighbours(cur);
        if nbrs.is_empty() {
            break;
        }
        cur = nbrs[rng.random_range(0..nbrs.len())];
        walk.push(cur);
    }
    let back = shortest_path(x, cur, start).expect("walk stays in one component");
    walk.extend_from_slice(&back.vertices()[1..]);
    CombinatorialPath::from_vertices_unchecked(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vids(v: &[usize]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId).collect()
    }

    fn path(x: &CubeComplex, v: &[usize]) -> CombinatorialPath {
        CombinatorialPath::new(x, vids(v)).unwrap()
    }

    #[test]
    fn square_boundary_contracts_with_one_exchange() {
        let sq = CubeComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        // boundary 0-1-3-2-0
        let outcome = contract_loop(&sq, &path(&sq, &[0, 1, 3, 2, 0]), 100).unwrap();
        let ContractionOutcome::Contracted(cert) = outcome else {
            panic!("square boundary must contract");
        };
        assert!(matches!(cert.moves[0], Move::SquareExchange { .. }));
        assert!(cert.moves[1..]
            .iter()
            .all(|m| matches!(m, Move::DeleteBacktrack { .. })));
        assert_eq!(cert.moves.len(), 3);
        assert!(cert.replay(&sq).is_ok());
    }

    #[test]
    fn backtrack_is_one_deletion() {
        let e = CubeComplex::build(&[vec![0, 1]]).unwrap();
        let ContractionOutcome::Contracted(cert) = contract_loop(&e, &path(&e, &[0, 1, 0]), 10).unwrap() else {
            panic!()
        };
        assert_eq!(cert.moves, vec![Move::DeleteBacktrack { at: 0 }]);
        assert!(cert.replay(&e).is_ok());
    }

    #[test]
    fn constant_loop_replays() {
        let e = CubeComplex::build(&[vec![0, 1]]).unwrap();
        let ContractionOutcome::Contracted(cert) = contract_loop(&e, &path(&e, &[1]), 0).unwrap() else {
            panic!("constant loop");
        };
        assert!(cert.moves.is_empty());
        assert_eq!(cert.replay(&e), Ok(VertexId(1)));
    }

    #[test]
    fn hexagon_is_inconclusive() {
        let hex = CubeComplex::build(&(0..6).map(|i| vec![i, (i + 1) % 6]).collect::<Vec<_>>()).unwrap();
        let lp = path(&hex, &[0, 1, 2, 3, 4, 5, 0]);
        for budget in [1, 10, 1000] {
            let outcome = contract_loop(&hex, &lp, budget).unwrap();
            assert!(matches!(outcome, ContractionOutcome::Inconclusive { ref shortest, .. } if shortest.len() == 7));
        }
        let report = simple_connectivity(&hex);
        assert!(!report.simply_connected);
    }

    #[test]
    fn open_path_is_rejected() {
        let e = CubeComplex::build(&[vec![0, 1]]).unwrap();
        assert!(matches!(
            contract_loop(&e, &path(&e, &[0, 1]), 10),
            Err(MetricError::NotClosed(..))
        ));
    }

    #[test]
    fn forged_certificates_fail_replay() {
        let sq = CubeComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        let cert = ContractionCertificate {
            start: vids(&[0, 1, 3, 2, 0]),
            moves: vec![Move::DeleteBacktrack { at: 1 }],
        };
        assert!(matches!(cert.replay(&sq), Err(ReplayError::Inapplicable { .. })));
        let short = ContractionCertificate {
            start: vids(&[0, 1, 3, 2, 0]),
            moves: vec![],
        };
        assert_eq!(short.replay(&sq), Err(ReplayError::NotConstant(4)));
        let grown = ContractionCertificate {
            start: vids(&[0, 0]),
            moves: vec![Move::InsertBacktrack { at: 0, vertex: VertexId(1) }],
        };
        assert_eq!(grown.replay(&sq), Err(ReplayError::NotConstant(3)));
    }

    #[test]
    fn grid_loops_contract_and_replay() {
        let v = |a: usize, b: usize| 4 * b + a;
        let mut cubes = Vec::new();
        for j in 0..3 {
            for i in 0..3 {
                cubes.push(vec![v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)]);
            }
        }
        let g = CubeComplex::build(&cubes).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for start in g.vertices() {
            for _ in 0..5 {
                let lp = random_loop(&g, start, 12, &mut rng);
                assert!(lp.length() <= 12);
                let budget = 10 * lp.length().max(1).pow(2);
                let ContractionOutcome::Contracted(cert) = contract_loop(&g, &lp, budget).unwrap() else {
                    panic!("grid loop {lp:?} must contract");
                };
                assert!(cert.replay(&g).is_ok());
            }
        }
        let report = simple_connectivity(&g);
        assert!(report.simply_connected);
        assert_eq!(report.cycles_checked, 9);
    }
}
