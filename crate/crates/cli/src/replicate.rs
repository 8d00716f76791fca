//! `replicate`: walk a template strand, search candidates per position, and
//! accept the first proper pairing. Improper candidates are released with
//! the proton-number-fixing flip. An optional relaxation model collapses
//! each accepted pair onto one tautomer configuration.

use crate::report::{
    render_json, CollapseRecord, InvariantCheck, PositionRecord, RejectedAttempt, Report,
    ReplicateAggregate, ReplicateResults, Results, VersionInfo,
};
use crate::{CliError, CommandOutput, CommonArgs};
use clap::{Args, ValueEnum};
use pairswap_core::basecode::{encode, Edge, Nucleobase, TautomerForm, TautomerMark, BASES};
use pairswap_core::pairing::{assemble_pair, PairState};
use pairswap_core::protocol::release_improper;
use pairswap_core::recognition::recognize;
use pairswap_core::rng::{seeded, split, split_seed, SimRng};
use pairswap_core::{SwapEngine64, Verdict};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    /// Try candidates in A, T, G, C order
    Fixed,
    /// Shuffle the candidate order per position
    Shuffled,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelaxationKind {
    /// Keep the full interbase entanglement
    None,
    /// Collapse each accepted pair onto one allowed tautomer configuration
    UniformCollapse,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct ReplicateArgs {
    /// Template strand over A, T, G, C
    #[arg(long, conflicts_with = "sequence_file")]
    pub sequence: Option<String>,

    /// File holding the template strand
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub sequence_file: Option<PathBuf>,

    /// Candidate search order
    #[arg(long, value_enum, default_value_t = Order::Fixed)]
    pub order: Order,

    /// Post-pairing relaxation model
    #[arg(long, value_enum, default_value_t = RelaxationKind::None)]
    pub relaxation: RelaxationKind,

    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

/// Outcome of one relaxation collapse.
pub struct CollapseOutcome {
    pub mark: TautomerMark,
    pub probability: f64,
}

/// Plug-in point for post-pairing relaxation models.
pub trait Relaxation {
    fn name(&self) -> &'static str;
    fn collapse(
        &self,
        pair: &PairState<f64>,
        rng: &mut SimRng,
    ) -> Result<CollapseOutcome, CliError>;
}

/// Projective measurement in the basis of allowed tautomer-pair product
/// states, conditioned on that span. The final proper-pair states carry
/// equal amplitudes on every allowed configuration, so the collapse is
/// uniform over them.
pub struct UniformCollapse;

impl Relaxation for UniformCollapse {
    fn name(&self) -> &'static str {
        "uniform-collapse"
    }

    fn collapse(
        &self,
        pair: &PairState<f64>,
        rng: &mut SimRng,
    ) -> Result<CollapseOutcome, CliError> {
        let marks = pair.template.allowed_marks();
        let mut probs = Vec::with_capacity(marks.len());
        for mark in marks {
            let t_code = encode(TautomerForm::new(pair.template, *mark)?, Edge::WatsonCrick)?;
            let c_code = encode(TautomerForm::new(pair.candidate, *mark)?, Edge::WatsonCrick)?;
            let mut idx = 0usize;
            for (tb, cb) in t_code.bytes().zip(c_code.bytes()) {
                idx = (idx << 1) | usize::from(tb == b'1');
                idx = (idx << 1) | usize::from(cb == b'1');
            }
            probs.push((*mark, pair.state.probability(idx)));
        }
        let total: f64 = probs.iter().map(|(_, p)| p).sum();
        if total < 1e-12 {
            return Err(CliError::Invariant(
                "no amplitude on the tautomer-pair span".into(),
            ));
        }
        let u: f64 = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        for (mark, p) in &probs {
            acc += p;
            if u < acc {
                return Ok(CollapseOutcome {
                    mark: *mark,
                    probability: p / total,
                });
            }
        }
        let (mark, p) = probs[probs.len() - 1];
        Ok(CollapseOutcome {
            mark,
            probability: p / total,
        })
    }
}

fn load_sequence(args: &ReplicateArgs) -> Result<Vec<Nucleobase>, CliError> {
    let raw = match (&args.sequence, &args.sequence_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => {
            return Err(CliError::BadInput(
                "provide --sequence or --sequence-file".into(),
            ))
        }
    };
    let cleaned: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(CliError::BadInput("sequence is empty".into()));
    }
    cleaned
        .chars()
        .map(|c| {
            Nucleobase::from_char(c)
                .ok_or_else(|| CliError::BadInput(format!("`{c}` is not one of A, T, G, C")))
        })
        .collect()
}

fn mark_name(mark: TautomerMark) -> &'static str {
    match mark {
        TautomerMark::Usual => "usual",
        TautomerMark::Star => "star",
        TautomerMark::Sharp => "sharp",
    }
}

pub fn run(args: &ReplicateArgs) -> Result<CommandOutput, CliError> {
    let shots = args.common.validated_shots()?;
    let strand = load_sequence(args)?;
    let (theta, phi) = args.common.angles();
    let engine = SwapEngine64::new()?;
    let relaxation: Option<&dyn Relaxation> = match args.relaxation {
        RelaxationKind::None => None,
        RelaxationKind::UniformCollapse => Some(&UniformCollapse),
    };

    let mut root = seeded(args.common.seed);
    let mut positions: Vec<PositionRecord> = Vec::new();
    let mut output_strand = String::new();
    let mut rejected_total = 0usize;
    let mut complement_matches = 0usize;
    let mut mutation_count = 0usize;
    let mut collapse_histogram: BTreeMap<String, usize> = BTreeMap::new();

    for shot in 0..shots {
        let mut shot_rng = split(&mut root);
        for (pos, &template) in strand.iter().enumerate() {
            let mut pos_rng = split(&mut shot_rng);
            let mut order: Vec<Nucleobase> = BASES.to_vec();
            if args.order == Order::Shuffled {
                order.shuffle(&mut pos_rng);
            }

            let mut tried = Vec::new();
            let mut rejected = Vec::new();
            let mut accepted = None;
            for candidate in order {
                tried.push(candidate.to_char());
                let attempt_seed = split_seed(&mut pos_rng);
                let t = recognize::<f64>(template, theta, phi)?;
                let c = recognize::<f64>(candidate, theta, phi)?;
                let pair = assemble_pair(&t, &c)?;
                let (fin, outcome) = engine.swap_protocol(pair, attempt_seed)?;
                match outcome.verdict {
                    Verdict::Proper => {
                        accepted = Some((candidate, attempt_seed, fin));
                        break;
                    }
                    Verdict::Improper => {
                        let (_, outcome) = release_improper(fin, outcome)?;
                        rejected_total += 1;
                        rejected.push(RejectedAttempt {
                            candidate: candidate.to_char(),
                            bonds: outcome.bonds,
                            seed: attempt_seed,
                            released: outcome.released,
                        });
                    }
                }
            }
            let (accepted_base, accepted_seed, final_pair) = accepted.ok_or_else(|| {
                CliError::Invariant(format!("no candidate accepted at position {pos}"))
            })?;
            if accepted_base == template.complement() {
                complement_matches += 1;
            }

            let collapse = match relaxation {
                Some(model) => {
                    let outcome = model.collapse(&final_pair, &mut pos_rng)?;
                    if outcome.mark != TautomerMark::Usual {
                        mutation_count += 1;
                    }
                    *collapse_histogram
                        .entry(mark_name(outcome.mark).to_string())
                        .or_insert(0) += 1;
                    Some(CollapseRecord {
                        mark: mark_name(outcome.mark).to_string(),
                        probability: outcome.probability,
                    })
                }
                None => None,
            };

            if shot == 0 {
                output_strand.push(accepted_base.to_char());
                positions.push(PositionRecord {
                    position: pos,
                    template: template.to_char(),
                    candidates_tried: tried,
                    rejected,
                    accepted: accepted_base.to_char(),
                    accepted_seed,
                    collapse,
                });
            }
        }
    }

    let total_positions = strand.len() * shots;
    let acceptance_fidelity = complement_matches as f64 / total_positions as f64;
    let mean_rejections = rejected_total as f64 / total_positions as f64;
    let template_strand: String = strand.iter().map(|b| b.to_char()).collect();

    let mut checks = vec![InvariantCheck::new(
        "output_is_exact_complement",
        acceptance_fidelity == 1.0,
        format!("fidelity = {acceptance_fidelity}"),
    )];
    if relaxation.is_none() {
        checks.push(InvariantCheck::new(
            "no_mutations_without_relaxation",
            mutation_count == 0,
            format!("mutations = {mutation_count}"),
        ));
    }
    let invariant_failure = checks.iter().any(|c| !c.passed);

    let mut text = String::new();
    text.push_str(&format!(
        "replicate: {} positions × {shots} shot(s), order {:?}, relaxation {:?}, seed {}\n",
        strand.len(),
        args.order,
        args.relaxation,
        args.common.seed
    ));
    let show = |s: &str| {
        if s.len() <= 64 {
            s.to_string()
        } else {
            format!("{}…({} bases)", &s[..60], s.len())
        }
    };
    text.push_str(&format!("template : {}\n", show(&template_strand)));
    text.push_str(&format!("output   : {}\n", show(&output_strand)));
    text.push_str(&format!(
        "fidelity {acceptance_fidelity:.6}   rejections/position {mean_rejections:.4}\n"
    ));
    if relaxation.is_some() {
        text.push_str(&format!(
            "mutations {mutation_count} / {total_positions}   collapse histogram {collapse_histogram:?}\n"
        ));
    }
    if strand.len() <= 8 && shots == 1 {
        for p in &positions {
            let sigs: Vec<String> = p
                .rejected
                .iter()
                .map(|r| format!("{}→rejected", r.candidate))
                .collect();
            text.push_str(&format!(
                "  pos {:>3}  {} → {}   tried {:?} {}\n",
                p.position,
                p.template,
                p.accepted,
                p.candidates_tried,
                sigs.join(" ")
            ));
        }
    }

    let report = Report {
        version: VersionInfo::current(),
        config: args.clone(),
        results: Results::Replicate(ReplicateResults {
            template_strand,
            output_strand,
            positions,
            aggregate: ReplicateAggregate {
                shots,
                positions_per_shot: strand.len(),
                acceptance_fidelity,
                rejected_attempts: rejected_total,
                mean_rejections_per_position: mean_rejections,
                mutation_count: relaxation.is_some().then_some(mutation_count),
                collapse_histogram: relaxation.is_some().then_some(collapse_histogram),
            },
        }),
        invariant_checks: checks,
    };
    Ok(CommandOutput {
        text,
        json: render_json(&report),
        invariant_failure,
    })
}
