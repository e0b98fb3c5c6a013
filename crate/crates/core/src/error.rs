use thiserror::Error;

use crate::market::AgentId;

/// The preference axioms checked before running the cycle machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Substitutability,
    LawOfAggregateDemand,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axiom::Substitutability => f.write_str("substitutability"),
            Axiom::LawOfAggregateDemand => f.write_str("law of aggregate demand"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("agent {agent} violates {axiom}")]
    AxiomViolation { agent: AgentId, axiom: Axiom },

    #[error("{0} is not stable under the given profile")]
    NotStable(&'static str),

    #[error("matchings are not unanimously Blair-comparable for the firms")]
    NotComparable,

    #[error("deferred acceptance did not terminate within {0} rounds")]
    NonTermination(u128),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
