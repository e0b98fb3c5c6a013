//! Many-to-many stable matching with substitutable preferences.
//!
//! Preferences are ranked lists of acceptable partner sets. Given a market
//! whose preferences are substitutable and satisfy the law of aggregate
//! demand, [`stable_set`] computes every stable matching: it starts from the
//! firm-optimal matching, reduces the preferences to the interval between the
//! current matching and the worker-optimal one, finds the cycles of the
//! reduced profile and executes each of them, repeating until the
//! worker-optimal matching is reached.
//!
//! ```
//! use manymatch::fixtures::example2;
//! use manymatch::stable_set;
//!
//! let (all, _trace) = stable_set(&example2()).unwrap();
//! assert_eq!(all.len(), 3);
//! ```

pub mod axioms;
pub mod cycles;
pub mod da;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod market;
pub mod matching;
pub mod partner_set;
pub mod reduction;

pub use axioms::{axiom_report, is_substitutable, satisfies_lad, validate, AgentAxioms, DEFAULT_AXIOM_CAP};
pub use cycles::{build_digraph, cyclic_matching, find_cycles, Cycle, Digraph};
pub use da::{deferred_acceptance, optimal_pair, DaRound, DaTrace};
pub use enumerate::{
    compare_algorithms, mms_algorithm, stable_set, Comparison, EnumerationStep, EnumerationTrace, Expansion,
    MmsCandidate, MmsOutcome,
};
pub use error::{Axiom, Error, Result};
pub use gen::{random_market, GenConfig};
pub use market::{AgentId, Preference, Profile, Side};
pub use matching::{
    blair_interval, brute_force_stable_set, is_stable, stability, unanimous_blair_geq, Matching, StabilityReport,
};
pub use partner_set::PartnerSet;
pub use reduction::{reduce, reduce_to_worker_optimal, ReducedProfile};
