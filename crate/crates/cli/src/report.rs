//! Machine-readable report schema shared by all commands.
//!
//! Top level: `{version, config, results, invariant_checks}`. Amplitudes are
//! `[re, im]` pairs keyed by basis strings; every map is ordered so a report
//! is byte-identical across runs with the same config and seed.

use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Report<C: Serialize> {
    pub version: VersionInfo,
    pub config: C,
    pub results: Results,
    pub invariant_checks: Vec<InvariantCheck>,
}

#[derive(Serialize)]
pub struct VersionInfo {
    pub schema: &'static str,
    pub tool: &'static str,
}

impl VersionInfo {
    pub fn current() -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl InvariantCheck {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Results {
    States(StatesResults),
    Pair(PairResults),
    Replicate(ReplicateResults),
    DfsAudit(AuditResults),
}

/// An amplitude rendered for the report: basis string, [re, im], and the
/// symbolic name when the magnitude matches one of the model's constants.
#[derive(Serialize)]
pub struct AmplitudeEntry {
    pub basis: String,
    pub amplitude: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<String>,
}

pub fn amplitude_entries(
    amps: &[Complex64],
    num_qubits: usize,
    floor: f64,
) -> Vec<AmplitudeEntry> {
    amps.iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > floor)
        .map(|(idx, a)| AmplitudeEntry {
            basis: pairswap_core::state::basis_label(idx, num_qubits),
            amplitude: [a.re, a.im],
            symbolic: symbolic_label(*a),
        })
        .collect()
}

/// Recognize the handful of exact magnitudes the model's closed forms
/// produce (±1/√2, ±1/√6, ±2/√6, ±1/2, ±1).
pub fn symbolic_label(a: Complex64) -> Option<String> {
    if a.im.abs() > 1e-9 {
        return None;
    }
    let v = a.re;
    let table: [(f64, &str); 6] = [
        (1.0, "1"),
        (0.5, "1/2"),
        (std::f64::consts::FRAC_1_SQRT_2, "1/√2"),
        (1.0 / 6f64.sqrt(), "1/√6"),
        (2.0 / 6f64.sqrt(), "2/√6"),
        (1.0 / 3.0, "1/3"),
    ];
    for (mag, name) in table {
        if (v.abs() - mag).abs() < 1e-9 {
            let sign = if v >= 0.0 { "+" } else { "-" };
            return Some(format!("{sign}{name}"));
        }
    }
    None
}

#[derive(Serialize)]
pub struct StatesResults {
    pub base: char,
    pub input_basis: String,
    pub recognized: Vec<AmplitudeEntry>,
    pub lambda_support: Vec<i64>,
    /// Entropy across each single-qubit cut, in qubit order.
    pub cut_entropies: Vec<f64>,
    /// The full machine-readable encoding table (all tautomer forms × edges).
    pub catalogue: Vec<pairswap_core::basecode::CatalogueRow>,
}

#[derive(Serialize)]
pub struct PairResults {
    pub template: char,
    pub candidate: char,
    pub shots: usize,
    /// Histogram over bond signatures like "β01 β01 β11".
    pub signature_counts: BTreeMap<String, usize>,
    pub verdict_counts: BTreeMap<String, usize>,
    pub final_state: Vec<AmplitudeEntry>,
    pub first_transcript: pairswap_core::MeasurementRecord,
}

#[derive(Serialize)]
pub struct ReplicateResults {
    pub template_strand: String,
    pub output_strand: String,
    pub positions: Vec<PositionRecord>,
    pub aggregate: ReplicateAggregate,
}

#[derive(Serialize)]
pub struct PositionRecord {
    pub position: usize,
    pub template: char,
    pub candidates_tried: Vec<char>,
    pub rejected: Vec<RejectedAttempt>,
    pub accepted: char,
    pub accepted_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapse: Option<CollapseRecord>,
}

#[derive(Serialize)]
pub struct RejectedAttempt {
    pub candidate: char,
    pub bonds: [pairswap_core::BondState; 3],
    pub seed: u64,
    pub released: bool,
}

#[derive(Serialize)]
pub struct CollapseRecord {
    pub mark: String,
    pub probability: f64,
}

#[derive(Serialize)]
pub struct ReplicateAggregate {
    pub shots: usize,
    pub positions_per_shot: usize,
    pub acceptance_fidelity: f64,
    pub rejected_attempts: usize,
    pub mean_rejections_per_position: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapse_histogram: Option<BTreeMap<String, usize>>,
}

#[derive(Serialize)]
pub struct AuditResults {
    pub pipelines: Vec<PipelineAudit>,
    pub dephase_sweep: Vec<DephaseSample>,
    pub proton_number_conserved: bool,
}

#[derive(Serialize)]
pub struct PipelineAudit {
    pub pair: String,
    pub passed: bool,
    /// Steps in this realization of the pipeline (recognition, reorder
    /// swaps, pairing unitary, Bell rotations and corrections, final stage).
    pub gate_count: usize,
    pub report: pairswap_core::joint::AuditReport,
}

#[derive(Serialize)]
pub struct DephaseSample {
    pub base: char,
    pub phi: f64,
    pub fidelity: f64,
}

pub fn render_json<C: Serialize>(report: &Report<C>) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
