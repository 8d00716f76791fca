//! `dfs-audit`: run the proton-conserving joint realization of recognition
//! and the swapping protocol over the base+enzyme register and verify the
//! λ sector never moves; sweep weak dephasing over the recognized states.

use crate::report::{
    render_json, AuditResults, DephaseSample, InvariantCheck, PipelineAudit, Report, Results,
    VersionInfo,
};
use crate::{CliError, CommandOutput, CommonArgs};
use clap::Args;
use pairswap_core::basecode::{Nucleobase, BASES};
use pairswap_core::joint::JointRealization;
use pairswap_core::noise::weak_dephase;
use pairswap_core::recognition::recognize;
use pairswap_core::rng::seeded;
use rand::Rng;
use serde::Serialize;

#[derive(Args, Clone, Debug, Serialize)]
pub struct AuditArgs {
    /// Insert an uncompensated bit flip at this gate position of the first
    /// pipeline; the audit must flag it
    #[arg(long, value_name = "POSITION")]
    pub inject_fault: Option<usize>,

    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

const AUDITED_PAIRS: [(Nucleobase, Nucleobase); 5] = [
    (Nucleobase::A, Nucleobase::T),
    (Nucleobase::T, Nucleobase::A),
    (Nucleobase::G, Nucleobase::C),
    (Nucleobase::C, Nucleobase::G),
    (Nucleobase::A, Nucleobase::G),
];

pub fn run(args: &AuditArgs) -> Result<CommandOutput, CliError> {
    let spec = args.common.enzyme;
    let (theta, phi_angle) = args.common.angles();
    let realization = JointRealization::<f64>::new(spec.q, spec.k)?;

    let mut pipelines = Vec::new();
    let mut proton_conserved = true;
    for (idx, (t, c)) in AUDITED_PAIRS.iter().enumerate() {
        let pipeline = match (idx, args.inject_fault) {
            (0, Some(pos)) => {
                realization.pipeline_with_fault_at_angles(*t, *c, pos, theta, phi_angle)?
            }
            _ => realization.pipeline_with_angles(*t, *c, theta, phi_angle)?,
        };
        if idx == 0 && !pipeline.conserves_proton_number()? {
            proton_conserved = false;
        }
        let gate_count = pipeline.gates.len();
        let report = pipeline.audit()?;
        pipelines.push(PipelineAudit {
            pair: format!("{t}·{c}"),
            passed: report.constant,
            gate_count,
            report,
        });
    }

    // Weak-dephasing sweep φ ∈ {0, π/4, ..., 2π} over the recognized states,
    // plus `--shots` Monte-Carlo draws of φ uniform in [0, 2π).
    let mut rng = seeded(args.common.seed);
    let mut dephase_sweep = Vec::new();
    for base in BASES {
        let s = recognize::<f64>(base, theta, phi_angle)?.state;
        let grid = (0..=8).map(|step| step as f64 * std::f64::consts::FRAC_PI_4);
        let draws = (1..args.common.shots).map(|_| rng.gen_range(0.0..std::f64::consts::TAU));
        for phi in grid.chain(draws) {
            let fidelity = s.inner_product(&weak_dephase(&s, phi))?.norm();
            dephase_sweep.push(DephaseSample {
                base: base.to_char(),
                phi,
                fidelity,
            });
        }
    }

    let all_constant = pipelines.iter().all(|p| p.passed);
    let dephase_ok = dephase_sweep.iter().all(|d| (d.fidelity - 1.0).abs() < 1e-12);
    let checks = vec![
        InvariantCheck::new(
            "lambda_constant_through_pipelines",
            all_constant,
            pipelines
                .iter()
                .map(|p| format!("{}:{}", p.pair, if p.passed { "PASS" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join(" "),
        ),
        InvariantCheck::new(
            "dephasing_invariant_recognized_states",
            dephase_ok,
            format!("{} samples", dephase_sweep.len()),
        ),
        InvariantCheck::new(
            "proton_number_conserved_per_gate",
            proton_conserved,
            "expanded matrices stay within proton-number sectors",
        ),
    ];
    let invariant_failure = checks.iter().any(|c| !c.passed);

    let mut text = String::new();
    text.push_str(&format!(
        "dfs-audit over base+enzyme register (q={}, k={})\n",
        spec.q, spec.k
    ));
    for p in &pipelines {
        text.push_str(&format!(
            "pipeline {} ({} gates): {}\n",
            p.pair,
            p.gate_count,
            if p.passed { "PASS (λ constant)" } else { "FAIL" }
        ));
        for step in &p.report.steps {
            let flag = if step.changed { "  << support changed" } else { "" };
            text.push_str(&format!(
                "    λ{:?}  after {}{}\n",
                step.support, step.label, flag
            ));
        }
    }
    text.push_str(&format!(
        "dephasing sweep: {}\n",
        if dephase_ok {
            "fidelity 1.0 at every φ"
        } else {
            "FAIL"
        }
    ));
    text.push_str(&format!(
        "overall: {}\n",
        if invariant_failure { "FAIL" } else { "PASS" }
    ));

    let report = Report {
        version: VersionInfo::current(),
        config: args.clone(),
        results: Results::DfsAudit(AuditResults {
            pipelines,
            dephase_sweep,
            proton_number_conserved: proton_conserved,
        }),
        invariant_checks: checks,
    };
    Ok(CommandOutput {
        text,
        json: render_json(&report),
        invariant_failure,
    })
}
