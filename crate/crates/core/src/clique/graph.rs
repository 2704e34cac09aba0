use std::fmt::Write as _;

use super::CliqueError;

/// Undirected simple graph with one adjacency bitset row per vertex.
///
/// Each vertex carries a label, usually the enumeration index of the subspace
/// it stands for. Edges join compatible vertices, so cliques are feasible
/// packings.
#[derive(Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Vec<u64>,
}

impl ConflictGraph {
    /// Edgeless graph on `n` vertices labelled `0..n`.
    pub fn new(n: usize) -> Self {
        Self::with_labels((0..n as u64).collect()).expect("identity labels are injective")
    }

    pub fn with_labels(labels: Vec<u64>) -> Result<Self, CliqueError> {
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CliqueError::Graph("vertex labels must be distinct".into()));
        }
        let n = labels.len();
        let words = n.div_ceil(64).max(1);
        Ok(ConflictGraph { n, words, adj: vec![0; n * words], labels })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, u: usize) -> u64 {
        self.labels[u]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    /// Adds the edge `{u, v}`; loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return;
        }
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(u))
    }

    /// Whether the vertices are pairwise adjacent and distinct.
    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| a < self.n && vs[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b)))
    }

    /// Induced subgraph on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> ConflictGraph {
        let mut g = ConflictGraph::with_labels(keep.iter().map(|&u| self.labels[u]).collect())
            .expect("labels of distinct vertices are distinct");
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// DIMACS edge format. Vertices are 1-based; labels that differ from the
    /// 0-based vertex number are kept in `c label <vertex> <label>` lines.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "c subcode conflict graph").unwrap();
        writeln!(out, "p edge {} {}", self.n, self.edge_count()).unwrap();
        for (u, &l) in self.labels.iter().enumerate() {
            if l != u as u64 {
                writeln!(out, "c label {} {}", u + 1, l).unwrap();
            }
        }
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v > u) {
                writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
            }
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self, CliqueError> {
        let mut g: Option<ConflictGraph> = None;
        let mut labels: Vec<(usize, u64)> = Vec::new();
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let bad = || CliqueError::Graph(format!("line {}: malformed `{}`", i + 1, line.trim()));
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["c", "label", v, l] => labels.push((v.parse().map_err(|_| bad())?, l.parse().map_err(|_| bad())?)),
                ["c", ..] => {}
                ["p", "edge" | "col", n, _m] => g = Some(ConflictGraph::new(n.parse().map_err(|_| bad())?)),
                ["e", u, v] => edges.push((u.parse::<usize>().map_err(|_| bad())?, v.parse::<usize>().map_err(|_| bad())?)),
                _ => return Err(bad()),
            }
        }
        let mut g = g.ok_or_else(|| CliqueError::Graph("missing `p edge` line".into()))?;
        if !labels.is_empty() {
            let mut l = g.labels.clone();
            for (v, lab) in labels {
                if v == 0 || v > g.n {
                    return Err(CliqueError::Graph(format!("label for vertex {v} out of range")));
                }
                l[v - 1] = lab;
            }
            let adj = std::mem::take(&mut g.adj);
            g = ConflictGraph::with_labels(l)?;
            g.adj = adj;
        }
        for (u, v) in edges {
            if u == 0 || v == 0 || u > g.n || v > g.n {
                return Err(CliqueError::Graph(format!("edge {u} {v} out of range")));
            }
            g.add_edge(u - 1, v - 1);
        }
        Ok(g)
    }
}

impl std::fmt::Debug for ConflictGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ConflictGraph(n = {}, m = {})", self.n, self.edge_count())
    }
}

/// Set bits of a bitset, ascending.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}
