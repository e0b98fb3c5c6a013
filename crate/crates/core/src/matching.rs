//! Matchings, stability, the brute-force stable-set oracle and comparisons
//! between matchings.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::axioms::ChoiceTable;
use crate::error::{Error, Result};
use crate::market::{AgentId, Preference, Profile, Side};
use crate::partner_set::PartnerSet;

/// A many-to-many matching, stored as the set of workers of each firm.
///
/// The worker side is always derived from the firm side, so `w ∈ μ(f)` iff
/// `f ∈ μ(w)` holds by construction. Equality and ordering use the firm-side
/// assignment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    assign: Vec<PartnerSet>,
    n_workers: usize,
}

impl Matching {
    pub fn new(n_workers: usize, assign: Vec<PartnerSet>) -> Self {
        debug_assert!(assign
            .iter()
            .all(|s| s.is_subset(PartnerSet::full(n_workers))));
        Matching { assign, n_workers }
    }

    /// The matching where nobody is matched.
    pub fn empty(n_firms: usize, n_workers: usize) -> Self {
        Matching::new(n_workers, vec![PartnerSet::EMPTY; n_firms])
    }

    /// Builds a matching from the worker-side view.
    pub fn from_worker_view(n_firms: usize, view: &[PartnerSet]) -> Self {
        let mut assign = vec![PartnerSet::EMPTY; n_firms];
        for (w, firms) in view.iter().enumerate() {
            for f in firms.iter() {
                assign[f] = assign[f].with(w);
            }
        }
        Matching::new(view.len(), assign)
    }

    pub fn n_firms(&self) -> usize {
        self.assign.len()
    }

    pub fn n_workers(&self) -> usize {
        self.n_workers
    }

    pub fn assignment(&self) -> &[PartnerSet] {
        &self.assign
    }

    pub fn firm(&self, f: usize) -> PartnerSet {
        self.assign[f]
    }

    pub fn worker(&self, w: usize) -> PartnerSet {
        self.assign
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(w))
            .map(|(f, _)| f)
            .collect()
    }

    /// `μ(w)` for every worker.
    pub fn worker_view(&self) -> Vec<PartnerSet> {
        let mut view = vec![PartnerSet::EMPTY; self.n_workers];
        for (f, workers) in self.assign.iter().enumerate() {
            for w in workers.iter() {
                view[w] = view[w].with(f);
            }
        }
        view
    }

    /// Partners of any agent.
    pub fn partners(&self, agent: AgentId) -> PartnerSet {
        match agent.side {
            Side::Firm => self.assign[agent.index],
            Side::Worker => self.worker(agent.index),
        }
    }

    pub fn set_firm(&mut self, f: usize, workers: PartnerSet) {
        self.assign[f] = workers;
    }

    fn check_dims(&self, profile: &Profile) -> Result<()> {
        if self.n_firms() != profile.n_firms() || self.n_workers != profile.n_workers() {
            return Err(Error::InvalidMatching(format!(
                "matching is {}x{} but the market is {}x{}",
                self.n_firms(),
                self.n_workers,
                profile.n_firms(),
                profile.n_workers()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StabilityReport {
    pub individually_rational: bool,
    pub irrational_agents: Vec<AgentId>,
    pub blocking_pairs: Vec<(usize, usize)>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.individually_rational && self.blocking_pairs.is_empty()
    }
}

/// Full stability diagnosis: every agent blocking individually and every
/// blocking firm-worker pair, ordered by firm then worker index.
pub fn stability(profile: &Profile, m: &Matching) -> Result<StabilityReport> {
    m.check_dims(profile)?;
    let workers = m.worker_view();
    let irrational_agents: Vec<AgentId> = profile
        .all_agents()
        .filter(|&a| {
            let mine = match a.side {
                Side::Firm => m.firm(a.index),
                Side::Worker => workers[a.index],
            };
            profile.choice(a, mine) != mine
        })
        .collect();
    let mut blocking_pairs = Vec::new();
    for f in 0..profile.n_firms() {
        for (w, &held) in workers.iter().enumerate() {
            if blocks(profile.pref(AgentId::firm(f)), profile.pref(AgentId::worker(w)), m.firm(f), held, f, w) {
                blocking_pairs.push((f, w));
            }
        }
    }
    Ok(StabilityReport {
        individually_rational: irrational_agents.is_empty(),
        irrational_agents,
        blocking_pairs,
    })
}

fn blocks(
    firm_pref: &Preference,
    worker_pref: &Preference,
    firm_mate: PartnerSet,
    worker_mate: PartnerSet,
    f: usize,
    w: usize,
) -> bool {
    !firm_mate.contains(w)
        && firm_pref.choice(firm_mate.with(w)).contains(w)
        && worker_pref.choice(worker_mate.with(f)).contains(f)
}

/// Early-exit stability test.
pub fn is_stable(profile: &Profile, m: &Matching) -> bool {
    if m.check_dims(profile).is_err() {
        return false;
    }
    let workers = m.worker_view();
    for f in 0..profile.n_firms() {
        let s = m.firm(f);
        if profile.choice(AgentId::firm(f), s) != s {
            return false;
        }
    }
    for (w, &s) in workers.iter().enumerate() {
        if profile.choice(AgentId::worker(w), s) != s {
            return false;
        }
    }
    for f in 0..profile.n_firms() {
        for (w, &held) in workers.iter().enumerate() {
            if blocks(profile.pref(AgentId::firm(f)), profile.pref(AgentId::worker(w)), m.firm(f), held, f, w) {
                return false;
            }
        }
    }
    true
}

/// `m1 ⪰ m2` for every agent of `side` under their Blair orders.
pub fn unanimous_blair_geq(profile: &Profile, m1: &Matching, m2: &Matching, side: Side) -> bool {
    profile
        .agents(side)
        .all(|a| profile.blair_geq(a, m1.partners(a), m2.partners(a)))
}

/// Whether every agent has the same number of partners in every matching.
pub fn rural_hospitals_holds<'a, I>(stable_set: I) -> bool
where
    I: IntoIterator<Item = &'a Matching>,
{
    let mut iter = stable_set.into_iter();
    let Some(first) = iter.next() else {
        return true;
    };
    let firm_sizes: Vec<usize> = first.assignment().iter().map(|s| s.len()).collect();
    let worker_sizes: Vec<usize> = first.worker_view().iter().map(|s| s.len()).collect();
    iter.all(|m| {
        m.assignment().iter().map(|s| s.len()).eq(firm_sizes.iter().copied())
            && m.worker_view().iter().map(|s| s.len()).eq(worker_sizes.iter().copied())
    })
}

/// Default cap on candidate matchings examined by [`brute_force_stable_set`].
pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

/// Table-backed choice when the support is small, list scan otherwise.
enum FastChoice<'a> {
    Table(ChoiceTable),
    Scan(&'a Preference),
}

impl FastChoice<'_> {
    fn new(pref: &Preference) -> FastChoice<'_> {
        match ChoiceTable::new(pref, 16) {
            Ok(t) => FastChoice::Table(t),
            Err(_) => FastChoice::Scan(pref),
        }
    }

    fn choose(&self, s: PartnerSet) -> PartnerSet {
        match self {
            FastChoice::Table(t) => t.choose(s),
            FastChoice::Scan(p) => p.choice(s),
        }
    }
}

/// `S(P)` by exhaustion: every firm ranges over its acceptable sets and the
/// empty set (any stable matching is individually rational), and each
/// candidate is tested for stability. The result is sorted.
pub fn brute_force_stable_set(profile: &Profile) -> Result<Vec<Matching>> {
    brute_force_stable_set_with_cap(profile, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_stable_set_with_cap(profile: &Profile, cap: u128) -> Result<Vec<Matching>> {
    let options: Vec<Vec<PartnerSet>> = profile
        .prefs(Side::Firm)
        .iter()
        .map(|p| {
            std::iter::once(PartnerSet::EMPTY)
                .chain(p.ranked().iter().copied())
                .collect()
        })
        .collect();
    let total = options
        .iter()
        .try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128))
        .unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::CapExceeded {
            what: "candidate matchings",
            size: total,
            cap,
        });
    }
    let n_firms = profile.n_firms();
    let n_workers = profile.n_workers();
    if n_firms == 0 {
        return Ok(vec![Matching::empty(0, n_workers)]);
    }

    let firm_choice: Vec<FastChoice> = profile.prefs(Side::Firm).iter().map(FastChoice::new).collect();
    let worker_choice: Vec<FastChoice> = profile.prefs(Side::Worker).iter().map(FastChoice::new).collect();

    // Firm-side individual rationality depends on one firm only; filter early.
    let options: Vec<Vec<PartnerSet>> = options
        .into_iter()
        .enumerate()
        .map(|(f, o)| o.into_iter().filter(|s| firm_choice[f].choose(*s) == *s).collect())
        .collect();

    let check = |assign: &[PartnerSet]| -> bool {
        let mut view = vec![PartnerSet::EMPTY; n_workers];
        for (f, s) in assign.iter().enumerate() {
            for w in s.iter() {
                view[w] = view[w].with(f);
            }
        }
        if view
            .iter()
            .enumerate()
            .any(|(w, s)| worker_choice[w].choose(*s) != *s)
        {
            return false;
        }
        for (f, &mine) in assign.iter().enumerate() {
            for (w, &theirs) in view.iter().enumerate() {
                if !mine.contains(w)
                    && firm_choice[f].choose(mine.with(w)).contains(w)
                    && worker_choice[w].choose(theirs.with(f)).contains(f)
                {
                    return false;
                }
            }
        }
        true
    };

    let mut found: Vec<Matching> = options[0]
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let mut assign = vec![PartnerSet::EMPTY; n_firms];
            assign[0] = first;
            let mut digits = vec![0usize; n_firms];
            loop {
                for f in 1..n_firms {
                    assign[f] = options[f][digits[f]];
                }
                if check(&assign) {
                    out.push(Matching::new(n_workers, assign.clone()));
                }
                // odometer over firms 1..n
                let mut f = n_firms;
                loop {
                    f -= 1;
                    if f == 0 {
                        return out;
                    }
                    digits[f] += 1;
                    if digits[f] < options[f].len() {
                        break;
                    }
                    digits[f] = 0;
                }
            }
        })
        .collect();
    found.sort();
    found.dedup();
    Ok(found)
}

/// Stable matchings `m'` with `upper ⪰_F m' ⪰_F lower`.
pub fn blair_interval(profile: &Profile, stable: &[Matching], upper: &Matching, lower: &Matching) -> Vec<Matching> {
    let mut out: Vec<Matching> = stable
        .iter()
        .filter(|m| {
            unanimous_blair_geq(profile, upper, m, Side::Firm)
                && unanimous_blair_geq(profile, m, lower, Side::Firm)
        })
        .cloned()
        .collect();
    out.sort();
    out
}

/// Sorted, deduplicated copy of a matching collection.
pub fn canonical_set<I: IntoIterator<Item = Matching>>(ms: I) -> Vec<Matching> {
    ms.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}
