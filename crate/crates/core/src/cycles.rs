//! Cycles in reduced preferences and the cyclic matchings they induce.
//!
//! For a reduced profile with respect to `μ ⪰_F μ̃`, cycles are read off a
//! bipartite digraph. Nodes of the first kind are pairs `(w, f)` with
//! `w ∈ μ(f) \ μ̃(f)`; nodes of the second kind are all remaining
//! `(f, w)` pairs. Arcs:
//!
//! * `(w, f) → (f, w')` iff `C_f(W \ {w}) = (μ(f) \ {w}) ∪ {w'}`
//! * `(f', w) → (w, f)` iff `C_w(μ(w) ∪ {f'}) = (μ(w) \ {f}) ∪ {f'}`
//!
//! with choices taken under the reduced preferences. Every directed cycle
//! `(w1,f1) → (f1,w2) → (w2,f2) → … → (fr,w1)` is a cycle
//! `[(w1,f1), …, (wr,fr)]` of the reduced profile.

use std::collections::BTreeMap;
use std::fmt;

use crate::market::AgentId;
use crate::matching::Matching;
use crate::partner_set::PartnerSet;
use crate::reduction::ReducedProfile;

/// `(worker, firm)` index pair.
pub type WorkerFirm = (usize, usize);
/// `(firm, worker)` index pair.
pub type FirmWorker = (usize, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    pub v1: Vec<WorkerFirm>,
    pub v2: Vec<FirmWorker>,
    pub arcs_12: BTreeMap<WorkerFirm, Vec<FirmWorker>>,
    pub arcs_21: BTreeMap<FirmWorker, Vec<WorkerFirm>>,
}

impl Digraph {
    pub fn max_out_degree(&self) -> usize {
        self.arcs_12
            .values()
            .chain(self.arcs_21.values())
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    pub fn arc_count(&self) -> usize {
        self.arcs_12.values().chain(self.arcs_21.values()).map(Vec::len).sum()
    }
}

/// An ordered sequence of `(worker, firm)` pairs, rotated so the smallest
/// pair comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pairs: Vec<WorkerFirm>,
}

impl Cycle {
    /// Canonicalizes `pairs` by rotation. Panics on an empty sequence.
    pub fn new(mut pairs: Vec<WorkerFirm>) -> Self {
        assert!(!pairs.is_empty(), "a cycle has at least one pair");
        let start = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| **p)
            .map(|(i, _)| i)
            .unwrap_or(0);
        pairs.rotate_left(start);
        Cycle { pairs }
    }

    pub fn pairs(&self) -> &[WorkerFirm] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Firms that appear in the cycle.
    pub fn firms(&self) -> PartnerSet {
        self.pairs.iter().map(|&(_, f)| f).collect()
    }
}

/// Renders with one-based default labels, e.g. `{(w1,f1),(w4,f3)}`.
impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &(w, firm)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", AgentId::worker(w), AgentId::firm(firm))?;
        }
        f.write_str("}")
    }
}

pub fn build_digraph(reduced: &ReducedProfile, mu: &Matching, mu_tilde: &Matching) -> Digraph {
    let n_firms = mu.n_firms();
    let n_workers = mu.n_workers();
    let all_workers = PartnerSet::full(n_workers);
    let mu_w = mu.worker_view();

    let in_v1: Vec<PartnerSet> = (0..n_firms).map(|f| mu.firm(f) - mu_tilde.firm(f)).collect();
    let mut v1 = Vec::new();
    for w in 0..n_workers {
        for (f, set) in in_v1.iter().enumerate() {
            if set.contains(w) {
                v1.push((w, f));
            }
        }
    }
    let mut v2 = Vec::new();
    for (f, set) in in_v1.iter().enumerate() {
        for w in 0..n_workers {
            if !set.contains(w) {
                v2.push((f, w));
            }
        }
    }

    let mut arcs_12 = BTreeMap::new();
    for &(w, f) in &v1 {
        let chosen = reduced.choice(AgentId::firm(f), all_workers.without(w));
        let base = mu.firm(f).without(w);
        // w' must be in the chosen set for the arc condition to hold
        let targets: Vec<FirmWorker> = chosen
            .iter()
            .filter(|&w2| !in_v1[f].contains(w2) && chosen == base.with(w2))
            .map(|w2| (f, w2))
            .collect();
        if !targets.is_empty() {
            arcs_12.insert((w, f), targets);
        }
    }

    let mut arcs_21 = BTreeMap::new();
    for &(f2, w) in &v2 {
        let chosen = reduced.choice(AgentId::worker(w), mu_w[w].with(f2));
        let targets: Vec<WorkerFirm> = (0..n_firms)
            .filter(|&f| in_v1[f].contains(w) && chosen == mu_w[w].without(f).with(f2))
            .map(|f| (w, f))
            .collect();
        if !targets.is_empty() {
            arcs_21.insert((f2, w), targets);
        }
    }

    Digraph {
        v1,
        v2,
        arcs_12,
        arcs_21,
    }
}

/// Node numbering: first-kind nodes, then second-kind nodes.
struct Indexed {
    succ: Vec<Vec<usize>>,
    n_v1: usize,
    v1: Vec<WorkerFirm>,
}

impl Indexed {
    fn new(g: &Digraph) -> Self {
        let n_v1 = g.v1.len();
        let idx1: BTreeMap<WorkerFirm, usize> = g.v1.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let idx2: BTreeMap<FirmWorker, usize> =
            g.v2.iter().enumerate().map(|(i, &n)| (n, n_v1 + i)).collect();
        let mut succ = vec![Vec::new(); n_v1 + g.v2.len()];
        for (from, tos) in &g.arcs_12 {
            succ[idx1[from]] = tos.iter().map(|t| idx2[t]).collect();
        }
        for (from, tos) in &g.arcs_21 {
            succ[idx2[from]] = tos.iter().map(|t| idx1[t]).collect();
        }
        Indexed {
            succ,
            n_v1,
            v1: g.v1.clone(),
        }
    }

    /// Cycles of a graph with out-degree at most one.
    fn functional_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.succ.len();
        // 0 = unvisited, 1 = on current walk, 2 = done
        let mut state = vec![0u8; n];
        let mut out = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = Some(start);
            while let Some(v) = cur {
                match state[v] {
                    0 => {
                        state[v] = 1;
                        walk.push(v);
                        cur = self.succ[v].first().copied();
                    }
                    1 => {
                        let pos = walk.iter().position(|&x| x == v).expect("on walk");
                        out.push(walk[pos..].to_vec());
                        cur = None;
                    }
                    _ => cur = None,
                }
            }
            for v in walk {
                state[v] = 2;
            }
        }
        out
    }

    /// Every elementary cycle, each reported once from its smallest node.
    fn elementary_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.succ.len();
        let mut out = Vec::new();
        let mut on_path = vec![false; n];
        for start in 0..n {
            let mut path = vec![start];
            on_path[start] = true;
            // explicit stack of (node, next successor position)
            let mut stack = vec![(start, 0usize)];
            while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
                if let Some(&next) = self.succ[v].get(*pos) {
                    *pos += 1;
                    if next == start {
                        out.push(path.clone());
                    } else if next > start && !on_path[next] {
                        on_path[next] = true;
                        path.push(next);
                        stack.push((next, 0));
                    }
                } else {
                    stack.pop();
                    on_path[v] = false;
                    path.pop();
                }
            }
        }
        out
    }

    fn to_pairs(&self, cycle: &[usize]) -> Vec<WorkerFirm> {
        cycle
            .iter()
            .filter(|&&v| v < self.n_v1)
            .map(|&v| self.v1[v])
            .collect()
    }
}

/// Checks the three defining conditions of a cycle for `pairs` directly.
pub fn is_cycle(reduced: &ReducedProfile, mu: &Matching, mu_tilde: &Matching, pairs: &[WorkerFirm]) -> bool {
    let r = pairs.len();
    if r == 0 {
        return false;
    }
    let mut seen = pairs.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != r {
        return false;
    }
    let all_workers = PartnerSet::full(mu.n_workers());
    (0..r).all(|i| {
        let (w, f) = pairs[i];
        let w_next = pairs[(i + 1) % r].0;
        let f_prev = pairs[(i + r - 1) % r].1;
        let mu_f = mu.firm(f);
        let mu_w = mu.worker(w);
        let in_diff = mu_f.contains(w) && !mu_tilde.firm(f).contains(w);
        let firm_ok = reduced.choice(AgentId::firm(f), all_workers.without(w)) == mu_f.without(w).with(w_next);
        let worker_ok = reduced.choice(AgentId::worker(w), mu_w.with(f_prev)) == mu_w.without(f).with(f_prev);
        in_diff && firm_ok && worker_ok
    })
}

/// All cycles of the reduced profile, canonicalized and sorted. Empty iff
/// `mu == mu_tilde` (for valid inputs).
pub fn find_cycles(reduced: &ReducedProfile, mu: &Matching, mu_tilde: &Matching) -> Vec<Cycle> {
    let g = build_digraph(reduced, mu, mu_tilde);
    cycles_of(&g, reduced, mu, mu_tilde)
}

pub fn cycles_of(g: &Digraph, reduced: &ReducedProfile, mu: &Matching, mu_tilde: &Matching) -> Vec<Cycle> {
    let idx = Indexed::new(g);
    let raw = if g.max_out_degree() <= 1 {
        idx.functional_cycles()
    } else {
        idx.elementary_cycles()
    };
    let mut cycles: Vec<Cycle> = raw
        .iter()
        .map(|c| idx.to_pairs(c))
        .filter(|pairs| !pairs.is_empty() && is_cycle(reduced, mu, mu_tilde, pairs))
        .map(Cycle::new)
        .collect();
    cycles.sort();
    cycles.dedup();
    cycles
}

/// The matching obtained from `mu` by giving each `f_i` worker `w_{i+1}` in
/// place of `w_i`.
pub fn cyclic_matching(mu: &Matching, cycle: &Cycle) -> Matching {
    let pairs = cycle.pairs();
    let r = pairs.len();
    let mut out = mu.clone();
    let mut removed = vec![PartnerSet::EMPTY; mu.n_firms()];
    let mut added = vec![PartnerSet::EMPTY; mu.n_firms()];
    for i in 0..r {
        let (w, f) = pairs[i];
        removed[f] = removed[f].with(w);
        added[f] = added[f].with(pairs[(i + 1) % r].0);
    }
    for f in cycle.firms().iter() {
        out.set_firm(f, (mu.firm(f) - removed[f]) | added[f]);
    }
    out
}
