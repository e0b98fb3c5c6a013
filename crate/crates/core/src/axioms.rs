//! Exhaustive checks of substitutability, the law of aggregate demand (LAD)
//! and the choice identity `C(S ∪ S') = C(C(S) ∪ S')`.
//!
//! Agents outside a preference's support (the union of its listed sets)
//! never influence choice, so every check runs over subsets of the support
//! only. The cap bounds the support size.

use crate::error::{Axiom, Error, Result};
use crate::market::{AgentId, Preference, Profile};
use crate::partner_set::PartnerSet;

/// Default bound on the number of partners an exhaustive check enumerates over.
pub const DEFAULT_AXIOM_CAP: usize = 12;

/// Precomputed choice for every subset of a preference's support.
#[derive(Clone, Debug)]
pub struct ChoiceTable {
    support: Vec<usize>,
    table: Vec<u32>,
}

impl ChoiceTable {
    pub fn new(pref: &Preference, cap: usize) -> Result<Self> {
        let support: Vec<usize> = pref.support().iter().collect();
        if support.len() > cap {
            return Err(Error::CapExceeded {
                what: "preference support for exhaustive check",
                size: support.len() as u128,
                cap: cap as u128,
            });
        }
        let compressed: Vec<u32> = pref.ranked().iter().map(|e| compress(&support, *e)).collect();
        let table = (0..1u32 << support.len())
            .map(|s| {
                compressed
                    .iter()
                    .copied()
                    .find(|e| e & !s == 0)
                    .unwrap_or(0)
            })
            .collect();
        Ok(ChoiceTable { support, table })
    }

    /// Size of the support the table ranges over.
    pub fn width(&self) -> usize {
        self.support.len()
    }

    /// Choice from a compressed (support-relative) mask.
    #[inline]
    pub fn choose_compressed(&self, s: u32) -> u32 {
        self.table[s as usize]
    }

    pub fn choose(&self, available: PartnerSet) -> PartnerSet {
        expand(&self.support, self.table[compress(&self.support, available) as usize])
    }
}

fn compress(support: &[usize], set: PartnerSet) -> u32 {
    support
        .iter()
        .enumerate()
        .filter(|(_, &a)| set.contains(a))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn expand(support: &[usize], bits: u32) -> PartnerSet {
    support
        .iter()
        .enumerate()
        .filter(|(i, _)| bits >> i & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

/// Substitutability, checked in single-removal form: for every `S`, every
/// chosen `b` and every other `x ∈ S`, `b` is still chosen from `S \ {x}`.
/// Chaining removals gives the subset form `b ∈ C(S' ∪ {b})` for all `S' ⊆ S`.
pub fn is_substitutable(pref: &Preference, cap: usize) -> Result<bool> {
    let t = ChoiceTable::new(pref, cap)?;
    let n = t.width();
    for s in 0..1u32 << n {
        let chosen = t.choose_compressed(s);
        if chosen == 0 {
            continue;
        }
        for x in 0..n {
            if s >> x & 1 == 0 {
                continue;
            }
            let kept = chosen & !(1 << x);
            if t.choose_compressed(s & !(1 << x)) & kept != kept {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// LAD in single-addition form: `|C(S)| <= |C(S ∪ {x})|` for all `S` and `x`.
pub fn satisfies_lad(pref: &Preference, cap: usize) -> Result<bool> {
    let t = ChoiceTable::new(pref, cap)?;
    let n = t.width();
    for s in 0..1u32 << n {
        let size = t.choose_compressed(s).count_ones();
        for x in 0..n {
            if s >> x & 1 == 0 && t.choose_compressed(s | 1 << x).count_ones() < size {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `C(S ∪ S') = C(C(S) ∪ S')` holds for every pair of subsets.
pub fn check_eq1(pref: &Preference, cap: usize) -> Result<bool> {
    let t = ChoiceTable::new(pref, cap)?;
    let n = t.width();
    for s in 0..1u32 << n {
        let cs = t.choose_compressed(s);
        for s2 in 0..1u32 << n {
            if t.choose_compressed(s | s2) != t.choose_compressed(cs | s2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-agent result of the exhaustive checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentAxioms {
    pub agent: AgentId,
    pub substitutable: bool,
    pub lad: bool,
}

impl AgentAxioms {
    pub fn passes(&self) -> bool {
        self.substitutable && self.lad
    }
}

/// Runs both axiom checks for every agent, firms first.
pub fn axiom_report(profile: &Profile, cap: usize) -> Result<Vec<AgentAxioms>> {
    profile
        .all_agents()
        .map(|agent| {
            let pref = profile.pref(agent);
            Ok(AgentAxioms {
                agent,
                substitutable: is_substitutable(pref, cap)?,
                lad: satisfies_lad(pref, cap)?,
            })
        })
        .collect()
}

/// Fails with the first agent (firms first) violating either axiom.
pub fn validate(profile: &Profile, cap: usize) -> Result<()> {
    for agent in profile.all_agents() {
        let pref = profile.pref(agent);
        if !is_substitutable(pref, cap)? {
            return Err(Error::AxiomViolation {
                agent,
                axiom: Axiom::Substitutability,
            });
        }
        if !satisfies_lad(pref, cap)? {
            return Err(Error::AxiomViolation {
                agent,
                axiom: Axiom::LawOfAggregateDemand,
            });
        }
    }
    Ok(())
}
