//! Reduced preference profiles with respect to two Blair-comparable stable
//! matchings `μ ⪰_F μ̃`.
//!
//! Every deletion the reduction makes removes "all sets containing some
//! partner", so the reduced profile is the base profile with a set of banned
//! partners per agent. Choice in the reduced profile is choice in the base
//! profile after discarding the banned partners.

use crate::da::deferred_acceptance;
use crate::error::{Error, Result};
use crate::market::{AgentId, Profile, Side};
use crate::matching::{is_stable, unanimous_blair_geq, Matching};
use crate::partner_set::PartnerSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedProfile {
    base: Profile,
    banned_firms: Vec<PartnerSet>,
    banned_workers: Vec<PartnerSet>,
    materialized: Profile,
}

impl ReducedProfile {
    pub fn base(&self) -> &Profile {
        &self.base
    }

    /// The reduced lists as an ordinary profile.
    pub fn profile(&self) -> &Profile {
        &self.materialized
    }

    pub fn into_profile(self) -> Profile {
        self.materialized
    }

    /// Partners whose every containing set was removed from `agent`'s list.
    pub fn banned(&self, agent: AgentId) -> PartnerSet {
        match agent.side {
            Side::Firm => self.banned_firms[agent.index],
            Side::Worker => self.banned_workers[agent.index],
        }
    }

    /// Choice under the reduced preference.
    pub fn choice(&self, agent: AgentId, available: PartnerSet) -> PartnerSet {
        self.materialized.choice(agent, available)
    }
}

/// Computes the reduced profile of `profile` with respect to `mu ⪰_F mu_tilde`.
///
/// Both matchings must be stable and firm-comparable.
pub fn reduce(profile: &Profile, mu: &Matching, mu_tilde: &Matching) -> Result<ReducedProfile> {
    if !is_stable(profile, mu) {
        return Err(Error::NotStable("mu"));
    }
    if !is_stable(profile, mu_tilde) {
        return Err(Error::NotStable("mu_tilde"));
    }
    if !unanimous_blair_geq(profile, mu, mu_tilde, Side::Firm) {
        return Err(Error::NotComparable);
    }
    Ok(reduce_unchecked(profile, mu, mu_tilde))
}

/// Reduction with respect to `mu` and the worker-optimal stable matching.
pub fn reduce_to_worker_optimal(profile: &Profile, mu: &Matching) -> Result<ReducedProfile> {
    let (mu_w, _) = deferred_acceptance(profile, Side::Worker)?;
    reduce(profile, mu, &mu_w)
}

/// Partners to ban from `agent`'s list because they belong to a listed set
/// that is Blair-above `top` or Blair-below `bottom`.
fn blair_bans(profile: &Profile, agent: AgentId, top: PartnerSet, bottom: PartnerSet) -> PartnerSet {
    let pref = profile.pref(agent);
    let mut banned = PartnerSet::EMPTY;
    for &entry in pref.ranked() {
        // sets strictly Blair-preferred to the upper matching's assignment
        if entry != top && pref.blair_geq(entry, top) {
            banned |= entry - top;
        }
        // sets strictly Blair-worse than the lower matching's assignment
        if entry != bottom && pref.blair_geq(bottom, entry) {
            banned |= entry - bottom;
        }
    }
    banned
}

pub(crate) fn reduce_unchecked(profile: &Profile, mu: &Matching, mu_tilde: &Matching) -> ReducedProfile {
    let mu_w = mu.worker_view();
    let tilde_w = mu_tilde.worker_view();

    // Preference bans. A firm's best assignment is mu(f) and worst mu_tilde(f);
    // for workers the roles are swapped.
    let mut banned_firms: Vec<PartnerSet> = profile
        .agents(Side::Firm)
        .map(|f| blair_bans(profile, f, mu.firm(f.index), mu_tilde.firm(f.index)))
        .collect();
    let mut banned_workers: Vec<PartnerSet> = profile
        .agents(Side::Worker)
        .map(|w| blair_bans(profile, w, tilde_w[w.index], mu_w[w.index]))
        .collect();

    // Mutual acceptability, one pass over the lists as they stand after the bans.
    let after12 = profile.without_banned(&banned_firms, &banned_workers);
    #[allow(clippy::needless_range_loop)]
    for f in 0..profile.n_firms() {
        for w in 0..profile.n_workers() {
            let f_ok_for_w = after12
                .pref(AgentId::worker(w))
                .is_acceptable(PartnerSet::singleton(f));
            let w_ok_for_f = after12
                .pref(AgentId::firm(f))
                .is_acceptable(PartnerSet::singleton(w));
            if !f_ok_for_w {
                banned_firms[f] = banned_firms[f].with(w);
            }
            if !w_ok_for_f {
                banned_workers[w] = banned_workers[w].with(f);
            }
        }
    }

    let materialized = profile.without_banned(&banned_firms, &banned_workers);
    ReducedProfile {
        base: profile.clone(),
        banned_firms,
        banned_workers,
        materialized,
    }
}
