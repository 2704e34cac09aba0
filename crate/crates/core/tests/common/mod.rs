//! Reference implementations used as oracles. They share no code with the
//! library kernels: elimination is done on plain integer vectors, distances by
//! listing every vector of a span, cliques by naive enumeration.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use subcode::clique::ConflictGraph;
use subcode::{FieldSpec, Subspace};

pub fn inv_mod(a: u32, q: u32) -> u32 {
    (1..q).find(|&b| a * b % q == 1).expect("nonzero element of a prime field")
}

/// Rank by textbook Gaussian elimination modulo a prime.
pub fn naive_rank(rows: &[Vec<u8>], q: u32) -> usize {
    let mut a: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = inv_mod(a[rank][c], q);
        for x in a[rank].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + q * q - f * a[rank][j] % q) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every vector of the row space, by summing all coefficient combinations.
pub fn span(rows: &[Vec<u8>], v: usize, q: u32) -> HashSet<Vec<u8>> {
    let mut out = HashSet::new();
    out.insert(vec![0u8; v]);
    for r in rows {
        let mut next = HashSet::new();
        for x in &out {
            for c in 0..q {
                next.insert((0..v).map(|j| ((x[j] as u32 + c * r[j] as u32) % q) as u8).collect::<Vec<u8>>());
            }
        }
        out = next;
    }
    out
}

pub fn log_q(n: usize, q: u32) -> usize {
    let mut d = 0;
    let mut m = 1usize;
    while m < n {
        m *= q as usize;
        d += 1;
    }
    assert_eq!(m, n, "span size is a power of q");
    d
}

pub fn rows_of(u: &Subspace) -> Vec<Vec<u8>> {
    u.basis().to_rows()
}

/// `dim(U+W) - dim(U∩W)` from the sizes of the spans.
pub fn scan_distance(u: &Subspace, w: &Subspace) -> usize {
    let q = u.field().q() as u32;
    let v = u.ambient();
    let su = span(&rows_of(u), v, q);
    let sw = span(&rows_of(w), v, q);
    let meet = log_q(su.intersection(&sw).count(), q);
    let mut both = rows_of(u);
    both.extend(rows_of(w));
    let join = log_q(span(&both, v, q).len(), q);
    join - meet
}

/// Whether `U ⊆ W` or `W ⊆ U`, by vector containment.
pub fn scan_incident(u: &Subspace, w: &Subspace) -> bool {
    let q = u.field().q() as u32;
    let v = u.ambient();
    let su = span(&rows_of(u), v, q);
    let sw = span(&rows_of(w), v, q);
    su.is_subset(&sw) || sw.is_subset(&su)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, q: u32, rows: usize, cols: usize) -> Vec<Vec<u8>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..q) as u8).collect()).collect()
}

/// A random subspace of exact dimension `k`.
pub fn random_subspace(rng: &mut ChaCha8Rng, field: FieldSpec, v: usize, k: usize) -> Subspace {
    loop {
        let m = random_matrix(rng, field.q() as u32, k, v);
        if naive_rank(&m, field.q() as u32) == k {
            return Subspace::from_rows(field, v, &m).unwrap();
        }
    }
}

/// Maximum clique by plain recursion with the trivial size bound.
pub fn naive_max_clique(g: &ConflictGraph) -> usize {
    fn go(g: &ConflictGraph, size: usize, cand: Vec<usize>, best: &mut usize) {
        *best = (*best).max(size);
        for (i, &v) in cand.iter().enumerate() {
            if size + cand.len() - i <= *best {
                return;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&u| g.has_edge(v, u)).collect();
            go(g, size + 1, next, best);
        }
    }
    let mut best = 0;
    go(g, 0, (0..g.n()).collect(), &mut best);
    best
}

/// Whether some `size`-subset of the vertices is a clique, by checking every
/// subset.
pub fn exhaustive_has_clique(g: &ConflictGraph, size: usize) -> bool {
    fn go(g: &ConflictGraph, start: usize, chosen: &mut Vec<usize>, size: usize) -> bool {
        if chosen.len() == size {
            return chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| g.has_edge(a, b)));
        }
        for v in start..g.n() {
            chosen.push(v);
            if go(g, v + 1, chosen, size) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(g, 0, &mut Vec::new(), size)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> ConflictGraph {
    let mut g = ConflictGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j);
            }
        }
    }
    g
}
