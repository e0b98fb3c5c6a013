//! Enumeration of the full stable set by repeated reduction and cycle
//! execution, plus the truncation-based algorithm it is compared against.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::axioms::{validate, DEFAULT_AXIOM_CAP};
use crate::cycles::{cyclic_matching, find_cycles, Cycle};
use crate::da::{deferred_acceptance, optimal_pair};
use crate::error::Result;
use crate::market::{AgentId, Profile, Side};
use crate::matching::{brute_force_stable_set_with_cap, Matching, DEFAULT_ORACLE_CAP};
use crate::reduction::reduce_unchecked;

/// One matching expanded: the cycles of its reduced profile and the cyclic
/// matchings they produce (same order as `cycles`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub from: Matching,
    pub cycles: Vec<Cycle>,
    pub produced: Vec<Matching>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationStep {
    /// Algorithm step number; the first expansion round is step 2.
    pub step: usize,
    pub expansions: Vec<Expansion>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationTrace {
    pub mu_f: Option<Matching>,
    pub mu_w: Option<Matching>,
    pub steps: Vec<EnumerationStep>,
    pub visited: BTreeSet<Matching>,
}

impl EnumerationTrace {
    /// Every cyclic matching produced, in trace order.
    pub fn produced(&self) -> impl Iterator<Item = &Matching> {
        self.steps
            .iter()
            .flat_map(|s| s.expansions.iter())
            .flat_map(|e| e.produced.iter())
    }

    pub fn expansions(&self) -> impl Iterator<Item = &Expansion> {
        self.steps.iter().flat_map(|s| s.expansions.iter())
    }
}

fn expand(profile: &Profile, mu: &Matching, mu_w: &Matching) -> Expansion {
    let reduced = reduce_unchecked(profile, mu, mu_w);
    let cycles = find_cycles(&reduced, mu, mu_w);
    let produced = cycles.iter().map(|c| cyclic_matching(mu, c)).collect();
    Expansion {
        from: mu.clone(),
        cycles,
        produced,
    }
}

/// All stable matchings of `profile`, sorted, with the expansion trace.
///
/// Every agent is checked for substitutability and the law of aggregate
/// demand first.
pub fn stable_set(profile: &Profile) -> Result<(Vec<Matching>, EnumerationTrace)> {
    validate(profile, DEFAULT_AXIOM_CAP)?;
    stable_set_unchecked(profile)
}

/// [`stable_set`] without the axiom check. The output is only meaningful for
/// substitutable preferences satisfying the law of aggregate demand.
pub fn stable_set_unchecked(profile: &Profile) -> Result<(Vec<Matching>, EnumerationTrace)> {
    let (mu_f, mu_w) = optimal_pair(profile)?;
    let mut trace = EnumerationTrace {
        mu_f: Some(mu_f.clone()),
        mu_w: Some(mu_w.clone()),
        ..Default::default()
    };
    let mut found: BTreeSet<Matching> = [mu_f.clone(), mu_w.clone()].into_iter().collect();
    trace.visited.insert(mu_f.clone());
    trace.visited.insert(mu_w.clone());
    if mu_f == mu_w {
        return Ok((found.into_iter().collect(), trace));
    }

    let mut frontier = vec![mu_f];
    let mut step = 2;
    while !frontier.is_empty() {
        let expansions: Vec<Expansion> = frontier.par_iter().map(|mu| expand(profile, mu, &mu_w)).collect();
        let mut next = BTreeSet::new();
        for e in &expansions {
            for m in &e.produced {
                found.insert(m.clone());
                if trace.visited.insert(m.clone()) {
                    next.insert(m.clone());
                }
            }
        }
        trace.steps.push(EnumerationStep { step, expansions });
        frontier = next.into_iter().collect();
        step += 1;
    }
    Ok((found.into_iter().collect(), trace))
}

/// One truncation tried by [`mms_algorithm`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmsCandidate {
    pub step: usize,
    /// The matching whose pair was truncated.
    pub parent: Matching,
    pub firm: usize,
    pub worker: usize,
    /// Firm-proposing DA outcome under the truncated profile.
    pub candidate: Matching,
    /// Workers `w'` with `C_w'(parent(w') ∪ candidate(w')) ≠ candidate(w')`.
    pub failing_workers: Vec<usize>,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmsOutcome {
    pub matchings: Vec<Matching>,
    pub candidates: Vec<MmsCandidate>,
    /// Set when a step after the first ran. Which profile later truncations
    /// apply to is not pinned down; here they accumulate on the profile that
    /// produced the parent matching.
    pub later_steps_ambiguous: bool,
}

/// The truncation algorithm: starting from `{μ_F, μ_W}`, truncate each
/// `w ∈ ν(f) \ μ_W(f)` out of `P_f`, rerun firm-proposing DA, and keep the
/// outcome when every worker weakly prefers it under its choice function.
pub fn mms_algorithm(profile: &Profile) -> Result<MmsOutcome> {
    validate(profile, DEFAULT_AXIOM_CAP)?;
    let (mu_f, mu_w) = optimal_pair(profile)?;
    let mut found: BTreeSet<Matching> = [mu_f.clone(), mu_w.clone()].into_iter().collect();
    let mut candidates = Vec::new();
    let mut later_steps_ambiguous = false;

    let mut frontier = vec![(mu_f, profile.clone())];
    let mut step = 1;
    while !frontier.is_empty() {
        if step >= 2 {
            later_steps_ambiguous = true;
        }
        let mut next = Vec::new();
        for (nu, prof) in &frontier {
            let nu_w = nu.worker_view();
            for f in 0..profile.n_firms() {
                for w in (nu.firm(f) - mu_w.firm(f)).iter() {
                    let firm = AgentId::firm(f);
                    let truncated = prof.with_preference(prof.pref(firm).truncate(AgentId::worker(w)));
                    let (cand, _) = deferred_acceptance(&truncated, Side::Firm)?;
                    let cand_w = cand.worker_view();
                    let failing_workers: Vec<usize> = (0..profile.n_workers())
                        .filter(|&w2| profile.choice(AgentId::worker(w2), nu_w[w2] | cand_w[w2]) != cand_w[w2])
                        .collect();
                    let accepted = failing_workers.is_empty();
                    if accepted && found.insert(cand.clone()) {
                        next.push((cand.clone(), truncated));
                    }
                    candidates.push(MmsCandidate {
                        step,
                        parent: nu.clone(),
                        firm: f,
                        worker: w,
                        candidate: cand,
                        failing_workers,
                        accepted,
                    });
                }
            }
        }
        frontier = next;
        step += 1;
    }
    Ok(MmsOutcome {
        matchings: found.into_iter().collect(),
        candidates,
        later_steps_ambiguous,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub stable_set: Vec<Matching>,
    pub mms: MmsOutcome,
    pub oracle: Vec<Matching>,
    /// Oracle matchings the cycle enumeration missed, and ones it added.
    pub stable_set_missing: Vec<Matching>,
    pub stable_set_extra: Vec<Matching>,
    pub mms_missing: Vec<Matching>,
    pub mms_extra: Vec<Matching>,
}

impl Comparison {
    pub fn all_agree(&self) -> bool {
        self.stable_set_missing.is_empty()
            && self.stable_set_extra.is_empty()
            && self.mms_missing.is_empty()
            && self.mms_extra.is_empty()
    }
}

fn diff(a: &[Matching], b: &[Matching]) -> Vec<Matching> {
    a.iter().filter(|m| b.binary_search(m).is_err()).cloned().collect()
}

/// Runs the cycle enumeration, the truncation algorithm and the brute-force
/// oracle side by side.
pub fn compare_algorithms(profile: &Profile) -> Result<Comparison> {
    compare_algorithms_with_cap(profile, DEFAULT_ORACLE_CAP)
}

pub fn compare_algorithms_with_cap(profile: &Profile, oracle_cap: u128) -> Result<Comparison> {
    let (stable, _) = stable_set(profile)?;
    let mms = mms_algorithm(profile)?;
    let oracle = brute_force_stable_set_with_cap(profile, oracle_cap)?;
    Ok(Comparison {
        stable_set_missing: diff(&oracle, &stable),
        stable_set_extra: diff(&stable, &oracle),
        mms_missing: diff(&oracle, &mms.matchings),
        mms_extra: diff(&mms.matchings, &oracle),
        stable_set: stable,
        mms,
        oracle,
    })
}
