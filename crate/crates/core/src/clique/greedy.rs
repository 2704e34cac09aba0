use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::{bits, ConflictGraph};

/// Grows cliques greedily from `restarts` start vertices and returns the
/// largest, ascending.
///
/// The first start is a vertex of maximum degree, later starts are random.
/// Each step adds the candidate with the most neighbours among the remaining
/// candidates, breaking ties at random. The output depends only on the graph,
/// `restarts` and `seed`.
pub fn greedy_clique(g: &ConflictGraph, restarts: usize, seed: u64) -> Vec<usize> {
    let n = g.n();
    if n == 0 || restarts == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<usize> = Vec::new();
    let mut p = vec![0u64; g.words()];
    for r in 0..restarts {
        let start = if r == 0 { (0..n).max_by_key(|&u| (g.degree(u), std::cmp::Reverse(u))).unwrap() } else { rng.gen_range(0..n) };
        let mut clique = vec![start];
        p.copy_from_slice(g.row(start));
        loop {
            let mut pick = None;
            let mut best_score = 0;
            let mut ties = 0u32;
            for v in bits(&p) {
                let score: u32 = p.iter().zip(g.row(v)).map(|(a, b)| (a & b).count_ones()).sum();
                if pick.is_none() || score > best_score {
                    pick = Some(v);
                    best_score = score;
                    ties = 1;
                } else if score == best_score {
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        pick = Some(v);
                    }
                }
            }
            let Some(v) = pick else { break };
            clique.push(v);
            for (a, b) in p.iter_mut().zip(g.row(v)) {
                *a &= b;
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    debug_assert!(g.is_clique(&best));
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_cases() {
        assert!(greedy_clique(&ConflictGraph::new(0), 10, 1).is_empty());
        assert_eq!(greedy_clique(&ConflictGraph::new(3), 1, 1).len(), 1);
        let mut k10 = ConflictGraph::new(10);
        for i in 0..10 {
            for j in i + 1..10 {
                k10.add_edge(i, j);
            }
        }
        assert_eq!(greedy_clique(&k10, 3, 7), (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn deterministic_for_seed() {
        let mut g = ConflictGraph::new(40);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..40 {
            for j in i + 1..40 {
                if rng.gen_bool(0.5) {
                    g.add_edge(i, j);
                }
            }
        }
        let a = greedy_clique(&g, 20, 11);
        assert_eq!(a, greedy_clique(&g, 20, 11));
        assert!(g.is_clique(&a));
    }
}
