//! JSON file formats for markets and matchings.
//!
//! A market lists agent names per side and, for each agent, its ranked
//! acceptable sets as lists of names. Agents missing from the preference maps
//! find nobody acceptable. Output always follows declaration order: agents,
//! and the members inside every emitted set.

use std::collections::HashMap;

use indexmap::IndexMap;
use manymatch::{Matching, PartnerSet, Profile, Side};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarketFile {
    pub firms: Vec<String>,
    pub workers: Vec<String>,
    #[serde(default)]
    pub firm_prefs: IndexMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub worker_prefs: IndexMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingFile {
    pub assignment: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unmatched: Option<Vec<String>>,
}

fn side_word(side: Side) -> &'static str {
    match side {
        Side::Firm => "firm",
        Side::Worker => "worker",
    }
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

/// Name lookup for one side.
struct Index<'a> {
    side: Side,
    by_name: HashMap<&'a str, usize>,
}

impl<'a> Index<'a> {
    fn new(side: Side, names: &'a [String]) -> Result<Self, CliError> {
        let mut by_name = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if by_name.insert(n.as_str(), i).is_some() {
                return Err(malformed(format!("duplicate {} name {n:?}", side_word(side))));
            }
        }
        Ok(Index { side, by_name })
    }

    fn get(&self, name: &str) -> Result<usize, CliError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| malformed(format!("unknown {} {name:?}", side_word(self.side))))
    }

    fn set(&self, names: &[String], context: &str) -> Result<PartnerSet, CliError> {
        let mut out = PartnerSet::EMPTY;
        for n in names {
            let i = self.get(n)?;
            if out.contains(i) {
                return Err(malformed(format!("{context}: {n:?} listed twice")));
            }
            out = out.with(i);
        }
        Ok(out)
    }
}

fn names_of(set: PartnerSet, names: &[String]) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

/// Names of the members of `set`, a set of agents on `side`.
pub fn set_names(profile: &Profile, side: Side, set: PartnerSet) -> Vec<String> {
    names_of(set, profile.names(side))
}

impl MarketFile {
    pub fn to_profile(&self) -> Result<Profile, CliError> {
        let firms = Index::new(Side::Firm, &self.firms)?;
        let workers = Index::new(Side::Worker, &self.workers)?;

        let lists = |own: &Index, other: &Index, prefs: &IndexMap<String, Vec<Vec<String>>>| {
            let mut out = vec![Vec::new(); own.by_name.len()];
            for (agent, ranked) in prefs {
                let i = own.get(agent)?;
                out[i] = ranked
                    .iter()
                    .map(|entry| {
                        if entry.is_empty() {
                            return Err(malformed(format!("{agent}: empty set in preference list")));
                        }
                        other.set(entry, agent)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
            }
            Ok::<_, CliError>(out)
        };
        let firm_lists = lists(&firms, &workers, &self.firm_prefs)?;
        let worker_lists = lists(&workers, &firms, &self.worker_prefs)?;
        Ok(Profile::with_names(
            firm_lists,
            worker_lists,
            self.firms.clone(),
            self.workers.clone(),
        )?)
    }

    pub fn from_profile(profile: &Profile) -> Self {
        let prefs = |side: Side| -> IndexMap<String, Vec<Vec<String>>> {
            let other = profile.names(side.opposite());
            profile
                .agents(side)
                .map(|a| {
                    let ranked = profile.pref(a).ranked().iter().map(|s| names_of(*s, other)).collect();
                    (profile.name(a).to_string(), ranked)
                })
                .collect()
        };
        MarketFile {
            firms: profile.names(Side::Firm).to_vec(),
            workers: profile.names(Side::Worker).to_vec(),
            firm_prefs: prefs(Side::Firm),
            worker_prefs: prefs(Side::Worker),
        }
    }
}

fn unmatched_names(profile: &Profile, m: &Matching) -> Vec<String> {
    let workers = m.worker_view();
    profile
        .all_agents()
        .filter(|a| match a.side {
            Side::Firm => m.firm(a.index).is_empty(),
            Side::Worker => workers[a.index].is_empty(),
        })
        .map(|a| profile.name(a).to_string())
        .collect()
}

impl MatchingFile {
    pub fn to_matching(&self, profile: &Profile) -> Result<Matching, CliError> {
        let firms = Index::new(Side::Firm, profile.names(Side::Firm))?;
        let workers = Index::new(Side::Worker, profile.names(Side::Worker))?;
        let mut assign = vec![PartnerSet::EMPTY; profile.n_firms()];
        let mut seen = PartnerSet::EMPTY;
        for (firm, ws) in &self.assignment {
            let f = firms.get(firm)?;
            if seen.contains(f) {
                return Err(malformed(format!("firm {firm:?} assigned twice")));
            }
            seen = seen.with(f);
            assign[f] = workers.set(ws, firm)?;
        }
        let m = Matching::new(profile.n_workers(), assign);
        if let Some(listed) = &self.unmatched {
            let mut listed = listed.clone();
            let mut actual = unmatched_names(profile, &m);
            listed.sort();
            actual.sort();
            if listed != actual {
                return Err(malformed(format!(
                    "unmatched list {listed:?} disagrees with the assignment (expected {actual:?})"
                )));
            }
        }
        Ok(m)
    }

    pub fn from_matching(profile: &Profile, m: &Matching) -> Self {
        let assignment = profile
            .agents(Side::Firm)
            .map(|f| (profile.name(f).to_string(), set_names(profile, Side::Worker, m.firm(f.index))))
            .collect();
        MatchingFile {
            assignment,
            unmatched: Some(unmatched_names(profile, m)),
        }
    }
}

/// `f1:{w1,w2} f2:{} ...` using the market's names.
pub fn matching_line(profile: &Profile, m: &Matching) -> String {
    profile
        .agents(Side::Firm)
        .map(|f| {
            format!(
                "{}:{{{}}}",
                profile.name(f),
                set_names(profile, Side::Worker, m.firm(f.index)).join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}
