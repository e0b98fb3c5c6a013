//! Many-to-many deferred acceptance with substitutable choice functions.
//!
//! Each proposer keeps a set of partners that have rejected it and, every
//! round, proposes to its choice from everyone else. Each receiver keeps its
//! choice from the offers it holds plus the new ones and rejects the rest.
//! Rejections are permanent. The process stops after a round without
//! rejections.

use crate::error::{Error, Result};
use crate::market::{AgentId, Profile, Side};
use crate::matching::Matching;
use crate::partner_set::PartnerSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaRound {
    /// Proposal set of each proposer, indexed by proposer.
    pub proposals: Vec<PartnerSet>,
    /// `(proposer, receiver)` indices rejected this round.
    pub rejections: Vec<(usize, usize)>,
    /// What each receiver holds at the end of the round.
    pub held: Vec<PartnerSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaTrace {
    pub proposing: Side,
    pub rounds: Vec<DaRound>,
}

/// Runs deferred acceptance with `proposing` making offers. Firm-proposing
/// yields the firm-optimal stable matching and worker-proposing the
/// worker-optimal one.
pub fn deferred_acceptance(profile: &Profile, proposing: Side) -> Result<(Matching, DaTrace)> {
    let receiving = proposing.opposite();
    let n_prop = profile.side_len(proposing);
    let n_recv = profile.side_len(receiving);
    let all_recv = PartnerSet::full(n_recv);
    let max_side = n_prop.max(n_recv) as u32;
    let round_limit = (n_prop as u128 * n_recv as u128)
        .saturating_mul(1u128.checked_shl(max_side).unwrap_or(u128::MAX))
        .max(1);

    let mut rejected = vec![PartnerSet::EMPTY; n_prop];
    let mut held = vec![PartnerSet::EMPTY; n_recv];
    let mut rounds = Vec::new();

    loop {
        if rounds.len() as u128 >= round_limit {
            return Err(Error::NonTermination(round_limit));
        }
        let proposals: Vec<PartnerSet> = (0..n_prop)
            .map(|p| {
                let me = AgentId { side: proposing, index: p };
                profile.choice(me, all_recv - rejected[p])
            })
            .collect();

        let mut offers = vec![PartnerSet::EMPTY; n_recv];
        for (p, s) in proposals.iter().enumerate() {
            for r in s.iter() {
                offers[r] = offers[r].with(p);
            }
        }

        let mut rejections = Vec::new();
        for r in 0..n_recv {
            let me = AgentId { side: receiving, index: r };
            let pool = offers[r] | held[r];
            let keep = profile.choice(me, pool);
            for p in (offers[r] - keep).iter() {
                rejections.push((p, r));
            }
            held[r] = keep;
        }
        rejections.sort_unstable();
        for &(p, r) in &rejections {
            rejected[p] = rejected[p].with(r);
        }
        let done = rejections.is_empty();
        rounds.push(DaRound {
            proposals,
            rejections,
            held: held.clone(),
        });
        if done {
            break;
        }
    }

    let final_proposals = &rounds.last().expect("at least one round").proposals;
    let matching = match proposing {
        Side::Firm => Matching::new(n_recv, final_proposals.clone()),
        Side::Worker => Matching::from_worker_view(n_recv, final_proposals),
    };
    Ok((
        matching,
        DaTrace {
            proposing,
            rounds,
        },
    ))
}

/// Firm-optimal and worker-optimal stable matchings.
pub fn optimal_pair(profile: &Profile) -> Result<(Matching, Matching)> {
    let (mu_f, _) = deferred_acceptance(profile, Side::Firm)?;
    let (mu_w, _) = deferred_acceptance(profile, Side::Worker)?;
    Ok((mu_f, mu_w))
}
