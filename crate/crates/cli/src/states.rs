//! `states`: dump the input basis state and the recognized superposition of
//! one base, with sector and entanglement diagnostics.

use crate::report::{
    amplitude_entries, render_json, InvariantCheck, Report, Results, StatesResults, VersionInfo,
};
use crate::{base_from_char, fmt_amp_row, parse_base, CliError, CommandOutput, CommonArgs};
use clap::Args;
use pairswap_core::basecode::{encode, Edge, TautomerForm};
use pairswap_core::noise::sector_support;
use pairswap_core::recognition::recognize;
use serde::Serialize;

#[derive(Args, Clone, Debug, Serialize)]
pub struct StatesArgs {
    /// Base letter (A, T, G, or C)
    #[arg(value_parser = parse_base)]
    pub base: char,

    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

pub fn run(args: &StatesArgs) -> Result<CommandOutput, CliError> {
    let base = base_from_char(args.base);
    let (theta, phi) = args.common.angles();
    let recognized = recognize::<f64>(base, theta, phi)?;

    let input_basis = encode(TautomerForm::usual(base), Edge::WatsonCrick)?.to_string();
    let entries = amplitude_entries(recognized.state.amplitudes(), 3, 1e-12);
    let support = sector_support(&recognized.state);
    let cut_entropies: Vec<f64> = (0..3)
        .map(|q| recognized.state.entanglement_entropy(&[q]))
        .collect::<Result<_, _>>()?;

    let norm = recognized.state.norm_sqr();
    let checks = vec![
        InvariantCheck::new(
            "recognized_state_normalized",
            (norm - 1.0).abs() < 1e-12,
            format!("norm² = {norm:.15}"),
        ),
        InvariantCheck::new(
            "single_lambda_sector",
            support.len() == 1,
            format!("support = {support:?}"),
        ),
    ];
    let invariant_failure = checks.iter().any(|c| !c.passed);

    let mut text = String::new();
    text.push_str(&format!("input   |{}⟩ (Watson-Crick basis state of {})\n", input_basis, base));
    text.push_str(&format!(
        "recognized state at θ={theta:.6}, φ={phi:.6}:\n"
    ));
    for e in &entries {
        text.push_str(&fmt_amp_row(e));
        text.push('\n');
    }
    text.push_str(&format!("λ support : {support:?}\n"));
    text.push_str("entropy   :");
    for (q, s) in cut_entropies.iter().enumerate() {
        text.push_str(&format!("  cut{{q{}}}={s:.6}", q + 1));
    }
    text.push('\n');

    let report = Report {
        version: VersionInfo::current(),
        config: args.clone(),
        results: Results::States(StatesResults {
            base: args.base,
            input_basis,
            recognized: entries,
            lambda_support: support,
            cut_entropies,
            catalogue: pairswap_core::basecode::catalogue(),
        }),
        invariant_checks: checks,
    };
    Ok(CommandOutput {
        text,
        json: render_json(&report),
        invariant_failure,
    })
}
