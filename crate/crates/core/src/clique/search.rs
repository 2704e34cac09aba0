use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use super::graph::{bits, ConflictGraph};
use super::{greedy_clique, CliqueError};

/// Limits and options for [`max_clique`].
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    /// Stop as soon as a clique of this size is found.
    pub target: Option<usize>,
    pub threads: usize,
    pub seed: u64,
    /// Greedy restarts used to seed the incumbent.
    pub warm_start: usize,
    /// A known clique to start from.
    pub initial: Option<Vec<usize>>,
    /// Cooperative interruption flag, polled during the search.
    pub interrupt: Option<Arc<AtomicBool>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            time_limit: None,
            node_limit: None,
            target: None,
            threads: 1,
            seed: 0,
            warm_start: 0,
            initial: None,
            interrupt: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// The search space was exhausted; the clique is maximum.
    Complete,
    TargetReached,
    TimeLimit,
    NodeLimit,
    Interrupted,
}

#[derive(Debug, Clone)]
pub struct CliqueResult {
    /// Vertices of the best clique found, ascending.
    pub clique: Vec<usize>,
    pub lower: usize,
    /// Valid upper bound on the clique number, whatever the status.
    pub upper: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub elapsed: Duration,
    pub status: SearchStatus,
}

const POLL_MASK: u64 = 0x3FF;

struct Shared {
    best_len: AtomicUsize,
    best: Mutex<Vec<usize>>,
    stop: AtomicBool,
    status: Mutex<Option<SearchStatus>>,
    nodes: AtomicU64,
}

impl Shared {
    fn halt(&self, why: SearchStatus) {
        let mut s = self.status.lock().unwrap();
        if s.is_none() {
            *s = Some(why);
        }
        self.stop.store(true, Ordering::Relaxed);
    }

    fn offer(&self, clique: &[usize]) {
        let mut best = self.best.lock().unwrap();
        if clique.len() > best.len() {
            *best = clique.to_vec();
            self.best_len.fetch_max(clique.len(), Ordering::Relaxed);
        }
    }
}

/// Adjacency of the graph after renumbering vertices into search order.
struct Ordered {
    w: usize,
    adj: Vec<u64>,
}

impl Ordered {
    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.w..(u + 1) * self.w]
    }
}

/// Degeneracy order, highest core first.
fn degeneracy_order(g: &ConflictGraph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for u in (0..n).rev() {
        buckets[deg[u]].push(u);
    }
    let mut removed = vec![false; n];
    let mut elim = Vec::with_capacity(n);
    let mut d = 0usize;
    while elim.len() < n {
        d = d.saturating_sub(1);
        while buckets[d].is_empty() {
            d += 1;
        }
        let u = buckets[d].pop().unwrap();
        if removed[u] || deg[u] != d {
            continue;
        }
        removed[u] = true;
        elim.push(u);
        for x in g.neighbors(u) {
            if !removed[x] {
                deg[x] -= 1;
                buckets[deg[x]].push(x);
            }
        }
    }
    elim.reverse();
    elim
}

/// Greedy sequential colouring of `p`. Returns vertices with colour ≥ `kmin`
/// and their colours, colours non-decreasing.
fn color_sort(g: &Ordered, p: &[u64], kmin: usize, order: &mut Vec<usize>, colors: &mut Vec<usize>, u: &mut Vec<u64>, q: &mut Vec<u64>) {
    order.clear();
    colors.clear();
    u.clear();
    u.extend_from_slice(p);
    let mut k = 0;
    let mut lo = 0;
    while lo < g.w {
        if u[lo] == 0 {
            lo += 1;
            continue;
        }
        k += 1;
        q.clear();
        q.extend_from_slice(u);
        let mut i = lo;
        while i < g.w {
            let word = q[i];
            if word == 0 {
                i += 1;
                continue;
            }
            let v = i * 64 + word.trailing_zeros() as usize;
            u[i] &= !(1 << (v % 64));
            q[i] &= !(1 << (v % 64));
            for (qw, &aw) in q[i..].iter_mut().zip(&g.row(v)[i..]) {
                *qw &= !aw;
            }
            if k >= kmin {
                order.push(v);
                colors.push(k);
            }
        }
    }
}

struct Worker<'a> {
    g: &'a Ordered,
    shared: &'a Shared,
    floor: usize,
    target: Option<usize>,
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    interrupt: Option<&'a AtomicBool>,
    current: Vec<usize>,
    local_nodes: u64,
    scratch: Vec<Scratch>,
}

#[derive(Default)]
struct Scratch {
    order: Vec<usize>,
    colors: Vec<usize>,
    p: Vec<u64>,
    u: Vec<u64>,
    q: Vec<u64>,
}

impl Worker<'_> {
    fn threshold(&self) -> usize {
        self.shared.best_len.load(Ordering::Relaxed).max(self.floor)
    }

    fn tick(&mut self) {
        self.local_nodes += 1;
        if self.local_nodes & POLL_MASK != 0 {
            return;
        }
        let total = self.shared.nodes.fetch_add(POLL_MASK + 1, Ordering::Relaxed) + POLL_MASK + 1;
        if self.node_limit.is_some_and(|l| total >= l) {
            self.shared.halt(SearchStatus::NodeLimit);
        } else if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.shared.halt(SearchStatus::TimeLimit);
        } else if self.interrupt.is_some_and(|f| f.load(Ordering::Relaxed)) {
            self.shared.halt(SearchStatus::Interrupted);
        }
    }

    fn found(&mut self) {
        if self.current.len() > self.shared.best_len.load(Ordering::Relaxed) {
            self.shared.offer(&self.current);
            if self.target.is_some_and(|t| self.current.len() >= t) {
                self.shared.halt(SearchStatus::TargetReached);
            }
        }
    }

    /// Explores the candidate set held in `scratch[depth].p`.
    fn expand(&mut self, depth: usize) {
        if self.shared.stop.load(Ordering::Relaxed) {
            return;
        }
        self.tick();
        if self.scratch.len() <= depth + 1 {
            self.scratch.push(Scratch::default());
        }
        let mut s = std::mem::take(&mut self.scratch[depth]);
        let kmin = (self.threshold() + 1).saturating_sub(self.current.len()).max(1);
        color_sort(self.g, &s.p, kmin, &mut s.order, &mut s.colors, &mut s.u, &mut s.q);
        for i in (0..s.order.len()).rev() {
            if self.current.len() + s.colors[i] <= self.threshold() {
                break;
            }
            let v = s.order[i];
            let next = &mut self.scratch[depth + 1].p;
            next.clear();
            next.extend(s.p.iter().zip(self.g.row(v)).map(|(a, b)| a & b));
            let empty = next.iter().all(|&w| w == 0);
            self.current.push(v);
            if empty {
                self.found();
            } else {
                self.expand(depth + 1);
            }
            self.current.pop();
            s.p[v / 64] &= !(1 << (v % 64));
            if self.shared.stop.load(Ordering::Relaxed) {
                break;
            }
        }
        self.scratch[depth] = s;
    }
}

/// Exact maximum clique by bitset branch and bound with colouring bounds.
///
/// The root is coloured once; each root branch is a subproblem that may run on
/// any worker. When the search stops early, the upper bound is the largest of
/// the incumbent size, `target − 1` in target mode, and the colour of every
/// root branch that did not finish.
pub fn max_clique(g: &ConflictGraph, cfg: &SearchConfig) -> Result<CliqueResult, CliqueError> {
    let start = Instant::now();
    let n = g.n();
    let order = degeneracy_order(g);
    let mut pos = vec![0; n];
    for (i, &u) in order.iter().enumerate() {
        pos[u] = i;
    }
    let w = n.div_ceil(64).max(1);
    let mut adj = vec![0u64; n * w];
    for (i, &u) in order.iter().enumerate() {
        for x in g.neighbors(u) {
            let j = pos[x];
            adj[i * w + j / 64] |= 1 << (j % 64);
        }
    }
    let og = Ordered { w, adj };

    let mut seed_clique: Vec<usize> = Vec::new();
    if let Some(init) = &cfg.initial {
        if !g.is_clique(init) {
            return Err(CliqueError::Search("initial vertex set is not a clique".into()));
        }
        seed_clique = init.clone();
    }
    if cfg.warm_start > 0 {
        let gc = greedy_clique(g, cfg.warm_start, cfg.seed);
        if gc.len() > seed_clique.len() {
            seed_clique = gc;
        }
    }
    let shared = Shared {
        best_len: AtomicUsize::new(seed_clique.len()),
        best: Mutex::new(seed_clique.iter().map(|&u| pos[u]).collect()),
        stop: AtomicBool::new(false),
        status: Mutex::new(None),
        nodes: AtomicU64::new(0),
    };
    let floor = cfg.target.map_or(0, |t| t.saturating_sub(1));
    if cfg.target.is_some_and(|t| seed_clique.len() >= t) {
        shared.halt(SearchStatus::TargetReached);
    }

    let mut all = vec![0u64; w];
    for i in 0..n {
        all[i / 64] |= 1 << (i % 64);
    }
    let (mut root_order, mut root_colors) = (Vec::new(), Vec::new());
    color_sort(&og, &all, 1, &mut root_order, &mut root_colors, &mut Vec::new(), &mut Vec::new());
    let root_pos: Vec<usize> = {
        let mut rp = vec![0; n];
        for (i, &v) in root_order.iter().enumerate() {
            rp[v] = i;
        }
        rp
    };
    let done: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(false)).collect();
    let next = AtomicUsize::new(0);
    let deadline = cfg.time_limit.map(|t| start + t);
    let threads = cfg.threads.max(1);

    let run = |_: usize| -> u64 {
        let mut wk = Worker {
            g: &og,
            shared: &shared,
            floor,
            target: cfg.target,
            deadline,
            node_limit: cfg.node_limit,
            interrupt: cfg.interrupt.as_deref(),
            current: Vec::new(),
            local_nodes: 0,
            scratch: vec![Scratch::default(), Scratch::default()],
        };
        loop {
            if shared.stop.load(Ordering::Relaxed) {
                break;
            }
            let k = next.fetch_add(1, Ordering::Relaxed);
            if k >= n {
                break;
            }
            let i = n - 1 - k;
            let v = root_order[i];
            if root_colors[i] <= wk.threshold() {
                done[i].store(true, Ordering::Relaxed);
                continue;
            }
            let p = &mut wk.scratch[0].p;
            p.clear();
            p.extend(og.row(v).iter().copied());
            for x in bits(og.row(v)) {
                if root_pos[x] > i {
                    p[x / 64] &= !(1 << (x % 64));
                }
            }
            wk.current.push(v);
            if p.iter().all(|&w| w == 0) {
                wk.found();
            } else {
                wk.expand(0);
            }
            wk.current.pop();
            if !shared.stop.load(Ordering::Relaxed) {
                done[i].store(true, Ordering::Relaxed);
            }
        }
        wk.local_nodes & POLL_MASK
    };
    let rest: u64 = if threads == 1 {
        run(0)
    } else {
        std::thread::scope(|s| {
            let hs: Vec<_> = (0..threads).map(|t| s.spawn(move || run(t))).collect();
            hs.into_iter().map(|h| h.join().expect("search worker panicked")).sum()
        })
    };

    let best: Vec<usize> = shared.best.lock().unwrap().clone();
    let lower = best.len();
    let status = shared.status.lock().unwrap().unwrap_or(SearchStatus::Complete);
    let open = (0..n).filter(|&i| !done[i].load(Ordering::Relaxed)).map(|i| root_colors[i]).max().unwrap_or(0);
    let root_bound = root_colors.last().copied().unwrap_or(0);
    let upper = root_bound.min(lower.max(open).max(floor)).max(lower);
    let mut clique: Vec<usize> = best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    if !g.is_clique(&clique) {
        return Err(CliqueError::Search("internal error: search returned a non-clique".into()));
    }
    Ok(CliqueResult {
        clique,
        lower,
        upper,
        optimal: lower == upper,
        nodes: shared.nodes.load(Ordering::Relaxed) + rest,
        elapsed: start.elapsed(),
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ConflictGraph {
        let mut g = ConflictGraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn trivial_graphs() {
        let r = max_clique(&ConflictGraph::new(0), &SearchConfig::default()).unwrap();
        assert_eq!((r.lower, r.upper, r.optimal), (0, 0, true));
        let r = max_clique(&ConflictGraph::new(5), &SearchConfig::default()).unwrap();
        assert_eq!(r.clique.len(), 1);
        assert!(r.optimal);
        let r = max_clique(&cycle(5), &SearchConfig::default()).unwrap();
        assert_eq!(r.lower, 2);
    }

    #[test]
    fn complete_graph() {
        let mut g = ConflictGraph::new(130);
        for i in 0..130 {
            for j in i + 1..130 {
                g.add_edge(i, j);
            }
        }
        let r = max_clique(&g, &SearchConfig::default()).unwrap();
        assert_eq!(r.clique, (0..130).collect::<Vec<_>>());
    }

    #[test]
    fn target_mode_bound() {
        let mut g = cycle(7);
        for (a, b) in [(0, 2), (0, 3), (2, 3)] {
            g.add_edge(a, b);
        }
        let cfg = SearchConfig { target: Some(3), ..Default::default() };
        let r = max_clique(&g, &cfg).unwrap();
        assert_eq!((r.lower, r.status), (3, SearchStatus::TargetReached));
        assert!(r.upper >= 3);
        // no 4-clique exists, so the search proves the bound without a witness
        let cfg = SearchConfig { target: Some(4), ..Default::default() };
        let r = max_clique(&g, &cfg).unwrap();
        assert_eq!(r.status, SearchStatus::Complete);
        assert_eq!(r.upper, 3);
        assert!(r.lower <= 3);
    }

    #[test]
    fn degeneracy_is_permutation() {
        let g = cycle(9);
        let mut o = degeneracy_order(&g);
        o.sort_unstable();
        assert_eq!(o, (0..9).collect::<Vec<_>>());
    }
}
