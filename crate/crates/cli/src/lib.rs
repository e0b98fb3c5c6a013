//! Command-line driver for `manymatch`.
//!
//! Results go to stdout (or `--out`), diagnostics and traces to stderr.
//! Exit codes: 0 success, 1 malformed input, 2 axiom violation, 3 cap
//! exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use manymatch::axioms::{axiom_report, validate, DEFAULT_AXIOM_CAP};
use manymatch::enumerate::compare_algorithms_with_cap;
use manymatch::matching::{brute_force_stable_set_with_cap, DEFAULT_ORACLE_CAP};
use manymatch::{
    deferred_acceptance, find_cycles, mms_algorithm, random_market, reduce, stable_set, GenConfig, Matching, Profile,
    Side,
};
use serde::Serialize;
use thiserror::Error;

pub mod format;
pub mod report;

use format::{MarketFile, MatchingFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error(transparent)]
    Core(#[from] manymatch::Error),

    #[error("{0} agent(s) fail the preference axioms")]
    AxiomsFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(manymatch::Error::AxiomViolation { .. }) | CliError::AxiomsFailed(_) => 2,
            CliError::Core(manymatch::Error::CapExceeded { .. }) => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "manymatch", version, about = "Stable matchings in many-to-many markets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Proposing {
    Firms,
    Workers,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check substitutability and the law of aggregate demand for every agent.
    Validate {
        market: PathBuf,
        /// Largest preference support checked exhaustively.
        #[arg(long, default_value_t = DEFAULT_AXIOM_CAP)]
        cap: usize,
    },
    /// Run deferred acceptance.
    Da {
        market: PathBuf,
        #[arg(long, value_enum, default_value = "firms")]
        proposing: Proposing,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All stable matchings.
    Enumerate {
        market: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced preferences between two stable matchings.
    Reduce {
        market: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        /// Defaults to the worker-optimal stable matching.
        #[arg(long)]
        mu_tilde: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cycles of the reduced preferences at a stable matching.
    Cycles {
        market: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        mu_tilde: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stable set by exhaustive search.
    Oracle {
        market: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cycle enumeration, the truncation algorithm and exhaustive search side by side.
    Compare {
        market: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The truncation algorithm alone.
    Mms {
        market: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random market with responsive preferences.
    Gen {
        #[arg(long)]
        firms: usize,
        #[arg(long)]
        workers: usize,
        /// Capacity of every agent
        #[arg(long)]
        quota: usize,
        /// Probability that a given partner is acceptable
        #[arg(long)]
        prob: f64,
        /// ChaCha8 seed; equal seeds give identical output
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_market(path: &Path) -> Result<Profile, CliError> {
    read_json::<MarketFile>(path)?.to_profile()
}

pub fn load_matching(path: &Path, profile: &Profile) -> Result<Matching, CliError> {
    read_json::<MatchingFile>(path)?.to_matching(profile)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = to_json(value);
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn reduction_inputs(
    market: &Path,
    mu: &Path,
    mu_tilde: Option<&Path>,
) -> Result<(Profile, Matching, Matching), CliError> {
    let profile = load_market(market)?;
    validate(&profile, DEFAULT_AXIOM_CAP)?;
    let mu = load_matching(mu, &profile)?;
    let mu_tilde = match mu_tilde {
        Some(p) => load_matching(p, &profile)?,
        None => deferred_acceptance(&profile, Side::Worker)?.0,
    };
    Ok((profile, mu, mu_tilde))
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { market, cap } => {
            let profile = load_market(&market)?;
            let rows = axiom_report(&profile, cap)?;
            emit(&report::ValidationReport::new(&profile, &rows), None, stdout)?;
            let failing: Vec<_> = rows.iter().filter(|r| !r.passes()).collect();
            for r in &failing {
                if !r.substitutable {
                    let _ = writeln!(stderr, "{} violates substitutability", profile.name(r.agent));
                }
                if !r.lad {
                    let _ = writeln!(stderr, "{} violates the law of aggregate demand", profile.name(r.agent));
                }
            }
            if !failing.is_empty() {
                return Err(CliError::AxiomsFailed(failing.len()));
            }
        }
        Command::Da {
            market,
            proposing,
            trace,
            out,
        } => {
            let profile = load_market(&market)?;
            let side = match proposing {
                Proposing::Firms => Side::Firm,
                Proposing::Workers => Side::Worker,
            };
            let (m, t) = deferred_acceptance(&profile, side)?;
            if trace {
                let _ = stderr.write_all(report::da_trace_text(&profile, &t).as_bytes());
            }
            emit(&MatchingFile::from_matching(&profile, &m), out.as_deref(), stdout)?;
        }
        Command::Enumerate { market, trace, out } => {
            let profile = load_market(&market)?;
            let (all, t) = stable_set(&profile)?;
            if trace {
                let _ = stderr.write_all(report::enumeration_trace_text(&profile, &t).as_bytes());
            }
            emit(&report::matchings(&profile, &all), out.as_deref(), stdout)?;
        }
        Command::Reduce {
            market,
            mu,
            mu_tilde,
            out,
        } => {
            let (profile, mu, mu_tilde) = reduction_inputs(&market, &mu, mu_tilde.as_deref())?;
            let reduced = reduce(&profile, &mu, &mu_tilde)?;
            emit(&MarketFile::from_profile(reduced.profile()), out.as_deref(), stdout)?;
        }
        Command::Cycles {
            market,
            mu,
            mu_tilde,
            out,
        } => {
            let (profile, mu, mu_tilde) = reduction_inputs(&market, &mu, mu_tilde.as_deref())?;
            let reduced = reduce(&profile, &mu, &mu_tilde)?;
            let cycles: Vec<_> = find_cycles(&reduced, &mu, &mu_tilde)
                .iter()
                .map(|c| report::cycle_pairs(&profile, c))
                .collect();
            emit(&cycles, out.as_deref(), stdout)?;
        }
        Command::Oracle { market, cap, out } => {
            let profile = load_market(&market)?;
            let all = brute_force_stable_set_with_cap(&profile, cap)?;
            emit(&report::matchings(&profile, &all), out.as_deref(), stdout)?;
        }
        Command::Compare { market, cap, out } => {
            let profile = load_market(&market)?;
            let c = compare_algorithms_with_cap(&profile, cap)?;
            if !c.mms_missing.is_empty() {
                let _ = writeln!(
                    stderr,
                    "truncation algorithm misses {} stable matching(s)",
                    c.mms_missing.len()
                );
            }
            emit(&report::ComparisonView::new(&profile, &c), out.as_deref(), stdout)?;
        }
        Command::Mms { market, out } => {
            let profile = load_market(&market)?;
            let outcome = mms_algorithm(&profile)?;
            emit(&report::MmsView::new(&profile, &outcome), out.as_deref(), stdout)?;
        }
        Command::Gen {
            firms,
            workers,
            quota,
            prob,
            seed,
            out,
        } => {
            let profile = random_market(&GenConfig {
                n_firms: firms,
                n_workers: workers,
                quota,
                acceptability_prob: prob,
                seed,
            })?;
            emit(&MarketFile::from_profile(&profile), out.as_deref(), stdout)?;
        }
    }
    Ok(())
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
