//! Command-line harness: single-pair experiments, strand replication with
//! candidate search, decoherence-free-sector audits, and machine-readable
//! reports.

pub mod audit;
pub mod pair;
pub mod replicate;
pub mod report;
pub mod states;

use clap::{Args, Parser, Subcommand};
use pairswap_core::noise::EnzymeSite;
use pairswap_core::recognition::{default_phi, default_theta};
use serde::Serialize;
use std::path::PathBuf;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => EXIT_INVARIANT,
            _ => EXIT_BAD_INPUT,
        }
    }
}

impl From<pairswap_core::Error> for CliError {
    fn from(e: pairswap_core::Error) -> Self {
        use pairswap_core::Error as E;
        match e {
            E::AngleOutOfRange(_)
            | E::BadBasisString(_)
            | E::SharpNotAllowed(_)
            | E::BadEnzymeSite { .. }
            | E::EnzymeTooSmall { .. }
            | E::QubitCapExceeded { .. }
            | E::BadSector { .. } => CliError::BadInput(e.to_string()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

/// Enzyme site given as `q,k` (acceptors, total atoms).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnzymeSpec {
    pub q: usize,
    pub k: usize,
}

pub(crate) fn parse_enzyme(s: &str) -> Result<EnzymeSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected `q,k`".into());
    }
    let q = parts[0].trim().parse().map_err(|_| "q must be an integer")?;
    let k = parts[1].trim().parse().map_err(|_| "k must be an integer")?;
    EnzymeSite::<f64>::new(q, k).map_err(|e| e.to_string())?;
    Ok(EnzymeSpec { q, k })
}

pub(crate) fn parse_base(s: &str) -> Result<char, String> {
    let c = s.trim().to_ascii_uppercase();
    if c.len() == 1 && "ATGC".contains(&c) {
        Ok(c.chars().next().unwrap())
    } else {
        Err(format!("`{s}` is not one of A, T, G, C"))
    }
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Serialize)]
pub struct CommonArgs {
    /// Root seed for all stochastic steps
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of repetitions
    #[arg(long, default_value_t = 1)]
    pub shots: usize,

    /// Recognition angle θ in radians (default arccos(1/√3))
    #[arg(long)]
    pub theta: Option<f64>,

    /// Recognition angle φ in radians (default arccos(1/√2))
    #[arg(long)]
    pub phi: Option<f64>,

    /// Write the JSON report here
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub json: Option<PathBuf>,

    /// Enzyme site as `q,k`: q acceptors, k total atoms
    #[arg(long, value_parser = parse_enzyme, default_value = "2,4")]
    pub enzyme: EnzymeSpec,
}

impl CommonArgs {
    pub fn angles(&self) -> (f64, f64) {
        (
            self.theta.unwrap_or_else(default_theta::<f64>),
            self.phi.unwrap_or_else(default_phi::<f64>),
        )
    }

    pub fn validated_shots(&self) -> Result<usize, CliError> {
        if self.shots == 0 {
            return Err(CliError::BadInput("--shots must be ≥ 1".into()));
        }
        Ok(self.shots)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pairswap",
    version,
    about = "Base-pairing simulator: recognition superpositions, entanglement-swapping pairing, strand replication, and decoherence audits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the input and recognized Watson-Crick states of one base
    States(states::StatesArgs),
    /// Pair a template with a candidate and report the bond signature
    Pair(pair::PairArgs),
    /// Replicate a template strand by candidate search
    Replicate(replicate::ReplicateArgs),
    /// Audit λ-sector preservation of the joint base+enzyme pipeline
    DfsAudit(audit::AuditArgs),
}

/// What a command hands back: human text, machine report, and whether any
/// invariant check failed.
pub struct CommandOutput {
    pub text: String,
    pub json: String,
    pub invariant_failure: bool,
}

pub fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Command::States(args) => states::run(args),
        Command::Pair(args) => pair::run(args),
        Command::Replicate(args) => replicate::run(args),
        Command::DfsAudit(args) => audit::run(args),
    }
}

pub(crate) fn base_from_char(c: char) -> pairswap_core::Nucleobase {
    pairswap_core::Nucleobase::from_char(c).expect("validated base letter")
}

pub(crate) fn fmt_amp_row(e: &report::AmplitudeEntry) -> String {
    let sym = e.symbolic.as_deref().unwrap_or("");
    format!(
        "  |{}⟩  {:+.6} {:+.6}i  {}",
        e.basis, e.amplitude[0], e.amplitude[1], sym
    )
}
