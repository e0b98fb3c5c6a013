//! JSON views of library results and the plain-text traces.

use std::fmt::Write as _;

use manymatch::{
    AgentAxioms, AgentId, Comparison, Cycle, DaTrace, EnumerationTrace, Matching, MmsCandidate, MmsOutcome, Profile,
    Side,
};
use serde::Serialize;

use crate::format::{matching_line, set_names, MatchingFile};

#[derive(Debug, Serialize)]
pub struct AxiomLine {
    pub agent: String,
    pub substitutable: bool,
    pub law_of_aggregate_demand: bool,
}

#[derive(Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub agents: Vec<AxiomLine>,
}

impl ValidationReport {
    pub fn new(profile: &Profile, report: &[AgentAxioms]) -> Self {
        ValidationReport {
            valid: report.iter().all(AgentAxioms::passes),
            agents: report
                .iter()
                .map(|r| AxiomLine {
                    agent: profile.name(r.agent).to_string(),
                    substitutable: r.substitutable,
                    law_of_aggregate_demand: r.lad,
                })
                .collect(),
        }
    }
}

pub fn matchings(profile: &Profile, ms: &[Matching]) -> Vec<MatchingFile> {
    ms.iter().map(|m| MatchingFile::from_matching(profile, m)).collect()
}

/// A cycle as its ordered `[worker, firm]` name pairs.
pub fn cycle_pairs(profile: &Profile, cycle: &Cycle) -> Vec<[String; 2]> {
    cycle
        .pairs()
        .iter()
        .map(|&(w, f)| {
            [
                profile.name(AgentId::worker(w)).to_string(),
                profile.name(AgentId::firm(f)).to_string(),
            ]
        })
        .collect()
}

fn cycle_text(profile: &Profile, cycle: &Cycle) -> String {
    let inner: Vec<String> = cycle_pairs(profile, cycle)
        .into_iter()
        .map(|[w, f]| format!("({w},{f})"))
        .collect();
    format!("{{{}}}", inner.join(","))
}

#[derive(Debug, Serialize)]
pub struct FailingCondition {
    pub worker: String,
    /// The worker's partners in the parent matching and the candidate.
    pub offered: Vec<String>,
    pub chosen: Vec<String>,
    pub required: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CandidateView {
    pub step: usize,
    pub firm: String,
    pub truncated_worker: String,
    pub candidate: MatchingFile,
    pub accepted: bool,
    pub failing_conditions: Vec<FailingCondition>,
}

impl CandidateView {
    pub fn new(profile: &Profile, c: &MmsCandidate) -> Self {
        let parent = c.parent.worker_view();
        let cand = c.candidate.worker_view();
        let failing_conditions = c
            .failing_workers
            .iter()
            .map(|&w| {
                let offered = parent[w] | cand[w];
                FailingCondition {
                    worker: profile.name(AgentId::worker(w)).to_string(),
                    offered: set_names(profile, Side::Firm, offered),
                    chosen: set_names(profile, Side::Firm, profile.choice(AgentId::worker(w), offered)),
                    required: set_names(profile, Side::Firm, cand[w]),
                }
            })
            .collect();
        CandidateView {
            step: c.step,
            firm: profile.name(AgentId::firm(c.firm)).to_string(),
            truncated_worker: profile.name(AgentId::worker(c.worker)).to_string(),
            candidate: MatchingFile::from_matching(profile, &c.candidate),
            accepted: c.accepted,
            failing_conditions,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MmsView {
    pub count: usize,
    pub matchings: Vec<MatchingFile>,
    pub later_steps_ambiguous: bool,
    pub candidates: Vec<CandidateView>,
}

impl MmsView {
    pub fn new(profile: &Profile, out: &MmsOutcome) -> Self {
        MmsView {
            count: out.matchings.len(),
            matchings: matchings(profile, &out.matchings),
            later_steps_ambiguous: out.later_steps_ambiguous,
            candidates: out.candidates.iter().map(|c| CandidateView::new(profile, c)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SetView {
    pub count: usize,
    pub matchings: Vec<MatchingFile>,
}

impl SetView {
    fn new(profile: &Profile, ms: &[Matching]) -> Self {
        SetView {
            count: ms.len(),
            matchings: matchings(profile, ms),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComparisonView {
    pub agree: bool,
    pub stable_set: SetView,
    pub mms: MmsView,
    pub oracle: SetView,
    pub stable_set_missing: Vec<MatchingFile>,
    pub stable_set_extra: Vec<MatchingFile>,
    pub mms_missing: Vec<MatchingFile>,
    pub mms_extra: Vec<MatchingFile>,
}

impl ComparisonView {
    pub fn new(profile: &Profile, c: &Comparison) -> Self {
        ComparisonView {
            agree: c.all_agree(),
            stable_set: SetView::new(profile, &c.stable_set),
            mms: MmsView::new(profile, &c.mms),
            oracle: SetView::new(profile, &c.oracle),
            stable_set_missing: matchings(profile, &c.stable_set_missing),
            stable_set_extra: matchings(profile, &c.stable_set_extra),
            mms_missing: matchings(profile, &c.mms_missing),
            mms_extra: matchings(profile, &c.mms_extra),
        }
    }
}

pub fn da_trace_text(profile: &Profile, trace: &DaTrace) -> String {
    let proposing = trace.proposing;
    let mut out = String::new();
    for (i, round) in trace.rounds.iter().enumerate() {
        let _ = writeln!(out, "round {}", i + 1);
        for (p, s) in round.proposals.iter().enumerate() {
            let me = AgentId { side: proposing, index: p };
            let _ = writeln!(
                out,
                "  {} proposes {{{}}}",
                profile.name(me),
                set_names(profile, proposing.opposite(), *s).join(",")
            );
        }
        for &(p, r) in &round.rejections {
            let _ = writeln!(
                out,
                "  {} rejects {}",
                profile.name(AgentId { side: proposing.opposite(), index: r }),
                profile.name(AgentId { side: proposing, index: p })
            );
        }
    }
    out
}

pub fn enumeration_trace_text(profile: &Profile, trace: &EnumerationTrace) -> String {
    let mut out = String::new();
    if let (Some(mf), Some(mw)) = (&trace.mu_f, &trace.mu_w) {
        let _ = writeln!(out, "step 1");
        let _ = writeln!(out, "  firm-optimal   {}", matching_line(profile, mf));
        let _ = writeln!(out, "  worker-optimal {}", matching_line(profile, mw));
        if mf == mw {
            let _ = writeln!(out, "  optima coincide");
        }
    }
    for step in &trace.steps {
        let _ = writeln!(out, "step {}", step.step);
        for e in &step.expansions {
            let _ = writeln!(out, "  reduce at {}", matching_line(profile, &e.from));
            for (c, m) in e.cycles.iter().zip(&e.produced) {
                let _ = writeln!(out, "    cycle {} -> {}", cycle_text(profile, c), matching_line(profile, m));
            }
        }
    }
    out
}
