//! Agents, ranked preferences over partner sets, and choice functions.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::partner_set::{PartnerSet, MAX_SIDE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Firm,
    Worker,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Firm => Side::Worker,
            Side::Worker => Side::Firm,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId {
    pub side: Side,
    pub index: usize,
}

impl AgentId {
    pub const fn firm(index: usize) -> Self {
        AgentId {
            side: Side::Firm,
            index,
        }
    }

    pub const fn worker(index: usize) -> Self {
        AgentId {
            side: Side::Worker,
            index,
        }
    }
}

/// Default labels: `f1, f2, ...` and `w1, w2, ...` (one-based).
impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Firm => write!(f, "f{}", self.index + 1),
            Side::Worker => write!(f, "w{}", self.index + 1),
        }
    }
}

/// A strict preference, represented by the ranked list of its acceptable sets.
///
/// The empty set is never stored: anything not on the list is ranked below
/// being unmatched, and the relative order of unacceptable sets never affects
/// choice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preference {
    owner: AgentId,
    ranked: Vec<PartnerSet>,
}

impl Preference {
    /// Builds a preference for `owner` over an opposite side of `n_opposite` agents.
    pub fn new(owner: AgentId, ranked: Vec<PartnerSet>, n_opposite: usize) -> Result<Self> {
        let allowed = PartnerSet::full(n_opposite.min(MAX_SIDE));
        let mut seen = HashSet::with_capacity(ranked.len());
        for entry in &ranked {
            if entry.is_empty() {
                return Err(Error::InvalidProfile(format!(
                    "{owner}: the empty set cannot be listed as acceptable"
                )));
            }
            if !entry.is_subset(allowed) {
                return Err(Error::InvalidProfile(format!(
                    "{owner}: entry {entry:?} references agents beyond {n_opposite}"
                )));
            }
            if !seen.insert(*entry) {
                return Err(Error::InvalidProfile(format!(
                    "{owner}: entry {entry:?} is listed twice"
                )));
            }
        }
        Ok(Preference { owner, ranked })
    }

    pub fn owner(&self) -> AgentId {
        self.owner
    }

    pub fn ranked(&self) -> &[PartnerSet] {
        &self.ranked
    }

    pub fn is_acceptable(&self, set: PartnerSet) -> bool {
        self.ranked.contains(&set)
    }

    /// The most preferred listed subset of `available`, or the empty set.
    pub fn choice(&self, available: PartnerSet) -> PartnerSet {
        self.ranked
            .iter()
            .copied()
            .find(|e| e.is_subset(available))
            .unwrap_or(PartnerSet::EMPTY)
    }

    /// Blair order: `s1` is weakly Blair-preferred to `s2` iff `C(s1 ∪ s2) = s1`.
    pub fn blair_geq(&self, s1: PartnerSet, s2: PartnerSet) -> bool {
        self.choice(s1 | s2) == s1
    }

    /// The truncation at `banned`: every listed set containing it becomes unacceptable.
    pub fn truncate(&self, banned: AgentId) -> Preference {
        assert_eq!(
            banned.side,
            self.owner.side.opposite(),
            "truncation agent must be on the opposite side"
        );
        self.without_any(PartnerSet::singleton(banned.index))
    }

    /// Drops every listed set that meets `banned`; equivalent to truncating at
    /// each member of `banned` in turn.
    pub fn without_any(&self, banned: PartnerSet) -> Preference {
        Preference {
            owner: self.owner,
            ranked: self
                .ranked
                .iter()
                .copied()
                .filter(|e| e.is_disjoint(banned))
                .collect(),
        }
    }

    /// Union of all listed sets.
    pub fn support(&self) -> PartnerSet {
        self.ranked
            .iter()
            .fold(PartnerSet::EMPTY, |acc, e| acc | *e)
    }
}

/// A market `(F, W, P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    firm_prefs: Vec<Preference>,
    worker_prefs: Vec<Preference>,
    firm_names: Vec<String>,
    worker_names: Vec<String>,
}

impl Profile {
    /// Builds a profile from ranked lists; agents are labelled `f1.., w1..`.
    pub fn new(firm_lists: Vec<Vec<PartnerSet>>, worker_lists: Vec<Vec<PartnerSet>>) -> Result<Self> {
        let n_firms = firm_lists.len();
        let n_workers = worker_lists.len();
        let firm_names = (0..n_firms).map(|i| AgentId::firm(i).to_string()).collect();
        let worker_names = (0..n_workers)
            .map(|i| AgentId::worker(i).to_string())
            .collect();
        Self::with_names(firm_lists, worker_lists, firm_names, worker_names)
    }

    pub fn with_names(
        firm_lists: Vec<Vec<PartnerSet>>,
        worker_lists: Vec<Vec<PartnerSet>>,
        firm_names: Vec<String>,
        worker_names: Vec<String>,
    ) -> Result<Self> {
        let n_firms = firm_lists.len();
        let n_workers = worker_lists.len();
        if n_firms > MAX_SIDE || n_workers > MAX_SIDE {
            return Err(Error::CapExceeded {
                what: "side size",
                size: n_firms.max(n_workers) as u128,
                cap: MAX_SIDE as u128,
            });
        }
        if firm_names.len() != n_firms || worker_names.len() != n_workers {
            return Err(Error::InvalidProfile(
                "name lists do not match the number of agents".into(),
            ));
        }
        let firm_prefs = firm_lists
            .into_iter()
            .enumerate()
            .map(|(i, l)| Preference::new(AgentId::firm(i), l, n_workers))
            .collect::<Result<Vec<_>>>()?;
        let worker_prefs = worker_lists
            .into_iter()
            .enumerate()
            .map(|(i, l)| Preference::new(AgentId::worker(i), l, n_firms))
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile {
            firm_prefs,
            worker_prefs,
            firm_names,
            worker_names,
        })
    }

    pub fn n_firms(&self) -> usize {
        self.firm_prefs.len()
    }

    pub fn n_workers(&self) -> usize {
        self.worker_prefs.len()
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Firm => self.n_firms(),
            Side::Worker => self.n_workers(),
        }
    }

    /// Number of agents an agent of `agent`'s side can be matched with.
    pub fn n_opposite(&self, agent: AgentId) -> usize {
        self.side_len(agent.side.opposite())
    }

    pub fn agents(&self, side: Side) -> impl Iterator<Item = AgentId> {
        (0..self.side_len(side)).map(move |index| AgentId { side, index })
    }

    pub fn all_agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        self.agents(Side::Firm).chain(self.agents(Side::Worker))
    }

    pub fn pref(&self, agent: AgentId) -> &Preference {
        match agent.side {
            Side::Firm => &self.firm_prefs[agent.index],
            Side::Worker => &self.worker_prefs[agent.index],
        }
    }

    pub fn prefs(&self, side: Side) -> &[Preference] {
        match side {
            Side::Firm => &self.firm_prefs,
            Side::Worker => &self.worker_prefs,
        }
    }

    pub fn name(&self, agent: AgentId) -> &str {
        match agent.side {
            Side::Firm => &self.firm_names[agent.index],
            Side::Worker => &self.worker_names[agent.index],
        }
    }

    pub fn names(&self, side: Side) -> &[String] {
        match side {
            Side::Firm => &self.firm_names,
            Side::Worker => &self.worker_names,
        }
    }

    pub fn choice(&self, agent: AgentId, available: PartnerSet) -> PartnerSet {
        self.pref(agent).choice(available)
    }

    pub fn blair_geq(&self, agent: AgentId, s1: PartnerSet, s2: PartnerSet) -> bool {
        self.pref(agent).blair_geq(s1, s2)
    }

    /// Copy of the profile with one agent's preference replaced.
    pub fn with_preference(&self, pref: Preference) -> Profile {
        let mut out = self.clone();
        let owner = pref.owner();
        match owner.side {
            Side::Firm => out.firm_prefs[owner.index] = pref,
            Side::Worker => out.worker_prefs[owner.index] = pref,
        }
        out
    }

    /// Copy of the profile with every listed set meeting `banned[a]` removed
    /// from agent `a`'s list.
    pub fn without_banned(&self, banned_firms: &[PartnerSet], banned_workers: &[PartnerSet]) -> Profile {
        Profile {
            firm_prefs: self
                .firm_prefs
                .iter()
                .zip(banned_firms)
                .map(|(p, b)| p.without_any(*b))
                .collect(),
            worker_prefs: self
                .worker_prefs
                .iter()
                .zip(banned_workers)
                .map(|(p, b)| p.without_any(*b))
                .collect(),
            firm_names: self.firm_names.clone(),
            worker_names: self.worker_names.clone(),
        }
    }

    /// Whether `{f}` is acceptable to `w` and `{w}` is acceptable to `f`.
    pub fn mutually_acceptable(&self, firm: usize, worker: usize) -> bool {
        self.firm_prefs[firm].is_acceptable(PartnerSet::singleton(worker))
            && self.worker_prefs[worker].is_acceptable(PartnerSet::singleton(firm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example1, example2, set};

    #[test]
    fn choice_scans_ranked_list() {
        let p = example1();
        let all_but_w1 = PartnerSet::from_indices(1..6);
        assert_eq!(p.choice(AgentId::firm(0), all_but_w1), set(&[2, 5]));
        assert_eq!(
            p.choice(AgentId::firm(1), PartnerSet::full(6)),
            set(&[3, 6])
        );
        for a in p.all_agents() {
            assert_eq!(p.choice(a, PartnerSet::EMPTY), PartnerSet::EMPTY);
        }
    }

    #[test]
    fn blair_order_examples() {
        let p = example1();
        let f1 = AgentId::firm(0);
        assert!(p.blair_geq(f1, set(&[1, 2]), set(&[3, 4])));
        assert!(!p.blair_geq(f1, set(&[3, 4]), set(&[1, 2])));
        for e in p.pref(f1).ranked() {
            assert!(p.blair_geq(f1, *e, *e));
        }
    }

    #[test]
    fn truncation_drops_sets_containing_agent() {
        let p = example2();
        let t = p.pref(AgentId::firm(0)).truncate(AgentId::worker(0));
        assert_eq!(t.ranked(), &[set(&[2]), set(&[3]), set(&[4])]);

        let q = example1();
        let f2 = q.pref(AgentId::firm(1));
        // w6 appears nowhere in f3's list
        let f3 = q.pref(AgentId::firm(2));
        assert_eq!(f3.truncate(AgentId::worker(5)), f3.clone());

        let expected: Vec<PartnerSet> = [
            &[3, 5][..],
            &[2, 5],
            &[1, 3],
            &[1, 5],
            &[1, 2],
            &[2, 3],
            &[1],
            &[2],
            &[3],
            &[5],
        ]
        .iter()
        .map(|s| set(s))
        .collect();
        assert_eq!(f2.truncate(AgentId::worker(5)).ranked(), expected.as_slice());
    }

    #[test]
    #[should_panic]
    fn truncation_rejects_same_side_agent() {
        example2().pref(AgentId::firm(0)).truncate(AgentId::firm(1));
    }

    #[test]
    fn construction_rejects_malformed_lists() {
        let owner = AgentId::firm(0);
        assert!(Preference::new(owner, vec![PartnerSet::EMPTY], 3).is_err());
        assert!(Preference::new(owner, vec![set(&[1]), set(&[1])], 3).is_err());
        assert!(Preference::new(owner, vec![set(&[4])], 3).is_err());
        assert!(Preference::new(owner, vec![set(&[3])], 3).is_ok());
    }
}
