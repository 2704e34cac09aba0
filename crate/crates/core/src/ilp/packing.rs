//! Exact solver for set packing models: maximize the number of chosen
//! variables subject to rows `Σ x ≤ 1`. It works on the model rows directly and
//! shares no code with the clique search, so the two can check each other.

use super::{IlpError, IlpModel, Relation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingResult {
    pub optimum: usize,
    /// Chosen variables, ascending.
    pub chosen: Vec<u32>,
    pub nodes: u64,
    /// False when the node limit stopped the search; `optimum` is then only a
    /// lower bound.
    pub complete: bool,
}

struct Solver {
    w: usize,
    conf: Vec<u64>,
    rows: Vec<Vec<u64>>,
    best: Vec<u32>,
    nodes: u64,
    limit: Option<u64>,
    stopped: bool,
}

fn members(bits: &[u64]) -> Vec<u32> {
    let mut out = Vec::new();
    for (i, &w) in bits.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push((i * 64) as u32 + w.trailing_zeros());
            w &= w - 1;
        }
    }
    out
}

impl Solver {
    fn conf(&self, v: u32) -> &[u64] {
        let v = v as usize;
        &self.conf[v * self.w..(v + 1) * self.w]
    }

    /// Takes vertices whose remaining conflicts pairwise conflict; some
    /// optimum contains each of them.
    fn take_simplicial(&self, cand: &mut [u64], chosen: &mut Vec<u32>) {
        let mut changed = true;
        while changed {
            changed = false;
            for v in members(cand) {
                if cand[v as usize / 64] >> (v % 64) & 1 == 0 {
                    continue;
                }
                let nb: Vec<u64> = self.conf(v).iter().zip(cand.iter()).map(|(a, b)| a & b).collect();
                let simplicial = members(&nb).into_iter().all(|u| {
                    nb.iter().zip(self.conf(u)).enumerate().all(|(i, (x, c))| {
                        let own = if i == u as usize / 64 { 1u64 << (u % 64) } else { 0 };
                        x & !own & !c == 0
                    })
                });
                if simplicial {
                    chosen.push(v);
                    for (x, y) in cand.iter_mut().zip(&nb) {
                        *x &= !y;
                    }
                    cand[v as usize / 64] &= !(1 << (v % 64));
                    changed = true;
                }
            }
        }
    }

    /// Partition of `cand` into classes of pairwise conflicting variables,
    /// taking each time the model row that covers most of the rest. Returns
    /// the variables class by class, largest class first, with the number of
    /// classes up to and including each one.
    fn cover(&self, cand: &[u64]) -> (Vec<u32>, Vec<usize>) {
        let mut rem = cand.to_vec();
        let mut live: Vec<&[u64]> = self.rows.iter().map(Vec::as_slice).collect();
        let mut order = Vec::new();
        let mut bound = Vec::new();
        let mut k = 0;
        loop {
            let mut best = (1, usize::MAX);
            live.retain(|r| r.iter().zip(&rem).any(|(a, b)| a & b != 0));
            for (i, r) in live.iter().enumerate() {
                let hit = r.iter().zip(&rem).map(|(a, b)| (a & b).count_ones() as usize).sum();
                if hit > best.0 {
                    best = (hit, i);
                }
            }
            if best.1 == usize::MAX {
                break;
            }
            let class: Vec<u64> = live[best.1].iter().zip(&rem).map(|(a, b)| a & b).collect();
            k += 1;
            for v in members(&class) {
                order.push(v);
                bound.push(k);
            }
            rem.iter_mut().zip(&class).for_each(|(x, y)| *x &= !y);
        }
        for v in members(&rem) {
            k += 1;
            order.push(v);
            bound.push(k);
        }
        (order, bound)
    }

    fn dfs(&mut self, mut cand: Vec<u64>, chosen: &mut Vec<u32>) {
        if self.stopped {
            return;
        }
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            self.stopped = true;
            return;
        }
        if cand.iter().all(|&x| x == 0) {
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let (order, bound) = self.cover(&cand);
        for i in (0..order.len()).rev() {
            if chosen.len() + bound[i] <= self.best.len() || self.stopped {
                return;
            }
            let v = order[i];
            cand[v as usize / 64] &= !(1 << (v % 64));
            let with: Vec<u64> = cand.iter().zip(self.conf(v)).map(|(a, b)| a & !b).collect();
            chosen.push(v);
            self.dfs(with, chosen);
            chosen.pop();
        }
    }
}

/// Maximizes a set packing model exactly by branch and bound.
///
/// The model must have unit objective coefficients on every variable and only
/// `≤` rows with unit coefficients. Fixings are honoured.
pub fn solve_packing(model: &IlpModel, node_limit: Option<u64>) -> Result<PackingResult, IlpError> {
    let n = model.num_vars();
    if model.objective().len() != n || model.objective().iter().any(|t| t.coef != 1) {
        return Err(IlpError::NotPacking("objective must be the sum of all variables".into()));
    }
    let w = n.div_ceil(64).max(1);
    let mut conf = vec![0u64; n * w];
    let mut banned = vec![0u64; w];
    let mut rows = Vec::new();
    for c in model.constraints() {
        if c.relation != Relation::Le || c.terms.iter().any(|t| t.coef != 1) {
            return Err(IlpError::NotPacking(format!("constraint `{}` is not a unit packing row", c.name)));
        }
        match c.rhs {
            r if r < 0 => return Err(IlpError::NotPacking(format!("constraint `{}` is infeasible", c.name))),
            0 => c.terms.iter().for_each(|t| banned[t.var as usize / 64] |= 1 << (t.var % 64)),
            r if r as usize >= c.terms.len() => {}
            1 => {
                let mut bits = vec![0u64; w];
                for t in &c.terms {
                    bits[t.var as usize / 64] |= 1 << (t.var % 64);
                }
                for t in &c.terms {
                    let row = &mut conf[t.var as usize * w..(t.var as usize + 1) * w];
                    for (x, y) in row.iter_mut().zip(&bits) {
                        *x |= y;
                    }
                    row[t.var as usize / 64] &= !(1 << (t.var % 64));
                }
                rows.push(bits);
            }
            _ => return Err(IlpError::NotPacking(format!("constraint `{}` has rhs {} > 1", c.name, c.rhs))),
        }
    }
    let mut solver = Solver { w, conf, rows, best: Vec::new(), nodes: 0, limit: node_limit, stopped: false };

    let mut cand = vec![0u64; w];
    for v in 0..n {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut chosen = Vec::new();
    for (&v, &val) in model.fixings() {
        cand[v as usize / 64] &= !(1 << (v % 64));
        if val == 1 {
            if banned[v as usize / 64] >> (v % 64) & 1 == 1 || chosen.iter().any(|&u: &u32| solver.conf(u)[v as usize / 64] >> (v % 64) & 1 == 1) {
                return Err(IlpError::NotPacking(format!("fixings are infeasible at `{}`", model.var_name(v))));
            }
            chosen.push(v);
        }
    }
    for &u in &chosen {
        for (x, y) in cand.iter_mut().zip(solver.conf(u).to_vec()) {
            *x &= !y;
        }
    }
    for (x, y) in cand.iter_mut().zip(&banned) {
        *x &= !y;
    }
    solver.best = chosen.clone();
    solver.take_simplicial(&mut cand, &mut chosen);
    solver.dfs(cand, &mut chosen);
    let mut best = solver.best;
    best.sort_unstable();
    Ok(PackingResult { optimum: best.len(), chosen: best, nodes: solver.nodes, complete: !solver.stopped })
}
