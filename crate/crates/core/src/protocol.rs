//! The three-step swapping protocol: pairing unitary, modified Bell
//! measurements with feedforward corrections, and the final
//! Hadamard/controlled-NOT stage that turns the tail qubits into a Bell pair.

use crate::basecode::Nucleobase;
use crate::bell::{classify_pair_bond, BellLabel, BondState, MeasurementRecord};
use crate::error::{Error, Result};
use crate::gates::{cnot, hadamard, pauli_x, pauli_z};
use crate::pairing::{PairState, Stage, SwapEngine};
use crate::rng::{seeded, SimRng};
use crate::state::StateVector;
use crate::float::Real;
use serde::Serialize;

/// Which Bell state the feedforward corrections force.
///
/// Variant A leaves the measured pair in β11 (antibonding), variant B in β01
/// (bonding), for every Bell input and every outcome branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BellVariant {
    A,
    B,
}

impl BellVariant {
    fn target(self) -> BellLabel {
        match self {
            BellVariant::A => BellLabel::B11,
            BellVariant::B => BellLabel::B01,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Proper,
    Improper,
}

/// Classification record of one pairing attempt.
#[derive(Clone, Debug, Serialize)]
pub struct PairingOutcome {
    pub verdict: Verdict,
    /// Bond state per atom pair, in pair order 1..3.
    pub bonds: [BondState; 3],
    pub transcript: MeasurementRecord,
    pub released: bool,
}

/// Nondestructive Bell measurement with feedforward on qubits `(a, b)`.
///
/// Pre-rotations CX(a→b) then H(a) carry the Bell basis onto the
/// computational basis; both qubits are measured (M1 on `a` is the phase
/// bit, M2 on `b` the amplitude bit); the rotations are undone, restoring
/// the collapsed Bell state; and X/Z corrections force the variant's target.
pub fn modified_bell<T: Real>(
    state: &StateVector<T>,
    pair: (usize, usize),
    variant: BellVariant,
    seed: u64,
) -> Result<(BellLabel, StateVector<T>, MeasurementRecord)> {
    let mut rng = seeded(seed);
    let mut record = MeasurementRecord::new(seed);
    let (label, out) = modified_bell_with(state, pair, variant, &mut rng, "", &mut record)?;
    Ok((label, out, record))
}

pub(crate) fn modified_bell_with<T: Real>(
    state: &StateVector<T>,
    (a, b): (usize, usize),
    variant: BellVariant,
    rng: &mut SimRng,
    label_prefix: &str,
    record: &mut MeasurementRecord,
) -> Result<(BellLabel, StateVector<T>)> {
    let mut s = cnot(a, b).apply(state)?;
    s = hadamard(a).apply(&s)?;
    let (m1, after1) = s.measure_qubit_with(a, rng)?;
    let (m2, after2) = after1.measure_qubit_with(b, rng)?;
    record.push(format!("{label_prefix}M1"), a, m1);
    record.push(format!("{label_prefix}M2"), b, m2);
    // Undo the rotation: |m1 m2⟩ returns to the Bell state β_{m1 m2}.
    let mut out = hadamard(a).apply(&after2)?;
    out = cnot(a, b).apply(&out)?;
    // Z on the first qubit flips the phase bit, X on the second flips the
    // amplitude bit; both leave the canonical signs intact.
    let target = variant.target();
    if m1 != target.phase_bit {
        out = pauli_z(a).apply(&out)?;
    }
    if m2 != target.amplitude_bit {
        out = pauli_x(b).apply(&out)?;
    }
    Ok((BellLabel::new(m1, m2), out))
}

impl<T: Real> SwapEngine<T> {
    /// Run the full three-step protocol on an assembled pair.
    ///
    /// Step 1 applies the pairing unitary. Step 2 measures the sixth qubit
    /// (deterministic after step 1) and applies variant A to pairs 1 and 2
    /// when it reads 0, variant B otherwise. Step 3 passes the fifth qubit
    /// through a Hadamard and flips the sixth conditioned on it. Bonds are
    /// then classified per atom pair.
    pub fn swap_protocol(
        &self,
        pair: PairState<T>,
        seed: u64,
    ) -> Result<(PairState<T>, PairingOutcome)> {
        let mut rng = seeded(seed);
        let mut record = MeasurementRecord::new(seed);

        let pair = self.transform_v(pair)?;
        let (q6, state) = pair.state.measure_qubit_with(5, &mut rng)?;
        record.push("q6", 5, q6);
        let variant = if q6 == 0 { BellVariant::A } else { BellVariant::B };

        let (_, state) =
            modified_bell_with(&state, (0, 1), variant, &mut rng, "pair1.", &mut record)?;
        let (_, state) =
            modified_bell_with(&state, (2, 3), variant, &mut rng, "pair2.", &mut record)?;

        let state = hadamard(4).apply(&state)?;
        let state = cnot(4, 5).apply(&state)?;

        let bonds = [
            classify_pair_bond(&state, (0, 1))?,
            classify_pair_bond(&state, (2, 3))?,
            classify_pair_bond(&state, (4, 5))?,
        ];
        let proper_signature = bonds[0] == BondState::Bell(BellLabel::B01)
            && bonds[1] == BondState::Bell(BellLabel::B01)
            && matches!(
                bonds[2],
                BondState::Bell(BellLabel::B11) | BondState::Bell(BellLabel::B01)
            );
        let verdict = if proper_signature {
            Verdict::Proper
        } else {
            Verdict::Improper
        };

        let final_pair = PairState {
            template: pair.template,
            candidate: pair.candidate,
            state,
            stage: Stage::Final,
        };
        Ok((
            final_pair,
            PairingOutcome {
                verdict,
                bonds,
                transcript: record,
                released: false,
            },
        ))
    }

    /// Convenience: recognize both bases at the engine's default angles,
    /// assemble, and run the protocol.
    pub fn pair_bases(
        &self,
        template: Nucleobase,
        candidate: Nucleobase,
        seed: u64,
    ) -> Result<(PairState<T>, PairingOutcome)> {
        let t = crate::recognition::recognize_default::<T>(template);
        let c = crate::recognition::recognize_default::<T>(candidate);
        let pair = crate::pairing::assemble_pair(&t, &c)?;
        self.swap_protocol(pair, seed)
    }
}

/// Move a rejected pair's third atom pair into the fixed-proton-number
/// sector with a Pauli-X on the sixth qubit, releasing the candidate.
pub fn release_improper<T: Real>(
    pair: PairState<T>,
    mut outcome: PairingOutcome,
) -> Result<(PairState<T>, PairingOutcome)> {
    if outcome.verdict != Verdict::Improper {
        return Err(Error::ReleaseOnProper);
    }
    let state = pauli_x(5).apply(&pair.state)?;
    outcome.released = true;
    Ok((
        PairState {
            template: pair.template,
            candidate: pair.candidate,
            state,
            stage: pair.stage,
        },
        outcome,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basecode::BASES;
    use crate::pairing::assemble_pair;
    use crate::recognition::recognize_default;

    fn engine() -> SwapEngine<f64> {
        SwapEngine::new().unwrap()
    }

    fn final_signature(t: Nucleobase, _c: Nucleobase) -> StateVector<f64> {
        let tail = if matches!(t, Nucleobase::A | Nucleobase::T) {
            BellLabel::B11
        } else {
            BellLabel::B01
        };
        BellLabel::B01
            .state::<f64>()
            .tensor(&BellLabel::B01.state())
            .unwrap()
            .tensor(&tail.state())
            .unwrap()
    }

    #[test]
    fn variant_b_forces_bonding_state_from_every_bell_input() {
        for input in BellLabel::all() {
            for seed in [0u64, 1, 99] {
                let (measured, out, record) =
                    modified_bell(&input.state::<f64>(), (0, 1), BellVariant::B, seed).unwrap();
                assert_eq!(measured, input, "Bell eigenstates measure themselves");
                assert!(
                    out.max_amplitude_diff(&BellLabel::B01.state()).unwrap() < 1e-12,
                    "B on {input} must land exactly on β01"
                );
                assert_eq!(record.get("M1"), Some(input.phase_bit));
                assert_eq!(record.get("M2"), Some(input.amplitude_bit));
            }
        }
    }

    #[test]
    fn variant_a_forces_antibonding_state_from_every_bell_input() {
        for input in BellLabel::all() {
            let (_, out, _) =
                modified_bell(&input.state::<f64>(), (0, 1), BellVariant::A, 7).unwrap();
            assert!(out.max_amplitude_diff(&BellLabel::B11.state()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn modified_bell_collapses_superposed_inputs_to_the_target() {
        // |00⟩ is an even mixture of β00 and β10; either branch must still be
        // corrected onto the target.
        let s = StateVector::<f64>::from_bits("00").unwrap();
        for seed in 0..16 {
            let (_, out, _) = modified_bell(&s, (0, 1), BellVariant::B, seed).unwrap();
            assert!(out.max_amplitude_diff(&BellLabel::B01.state()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn proper_pairs_end_in_the_expected_bell_products() {
        let e = engine();
        for (t, c) in [
            (Nucleobase::A, Nucleobase::T),
            (Nucleobase::T, Nucleobase::A),
            (Nucleobase::G, Nucleobase::C),
            (Nucleobase::C, Nucleobase::G),
        ] {
            let (fin, outcome) = e.pair_bases(t, c, 5).unwrap();
            assert_eq!(outcome.verdict, Verdict::Proper);
            assert!(
                fin.state
                    .max_amplitude_diff(&final_signature(t, c))
                    .unwrap()
                    < 1e-12,
                "{t}·{c}"
            );
            assert_eq!(fin.stage, Stage::Final);
        }
    }

    #[test]
    fn reversed_proper_orderings_yield_identical_final_states() {
        let e = engine();
        for (t, c) in [(Nucleobase::A, Nucleobase::T), (Nucleobase::G, Nucleobase::C)] {
            let (f1, _) = e.pair_bases(t, c, 11).unwrap();
            let (f2, _) = e.pair_bases(c, t, 12).unwrap();
            assert!(f1.state.max_amplitude_diff(&f2.state).unwrap() < 1e-12);
        }
    }

    #[test]
    fn protocol_is_deterministic_across_seeds() {
        let e = engine();
        let (reference, _) = e.pair_bases(Nucleobase::A, Nucleobase::T, 0).unwrap();
        for seed in 1..50 {
            let (fin, _) = e.pair_bases(Nucleobase::A, Nucleobase::T, seed).unwrap();
            assert!(fin.state.max_amplitude_diff(&reference.state).unwrap() < 1e-12);
        }
    }

    #[test]
    fn improper_matrix_signature() {
        let e = engine();
        for t in BASES {
            for c in BASES {
                if t.complement() == c {
                    continue;
                }
                for seed in [0u64, 3, 17] {
                    let (_, outcome) = e.pair_bases(t, c, seed).unwrap();
                    assert_eq!(outcome.verdict, Verdict::Improper, "{t}·{c}");
                    assert_eq!(outcome.bonds[0], BondState::Bell(BellLabel::B11));
                    assert_eq!(outcome.bonds[1], BondState::Bell(BellLabel::B11));
                    assert!(
                        matches!(
                            outcome.bonds[2],
                            BondState::Bell(BellLabel::B00) | BondState::Bell(BellLabel::B10)
                        ),
                        "{t}·{c} pair3 = {}",
                        outcome.bonds[2]
                    );
                    assert_eq!(outcome.transcript.get("q6"), Some(0));
                }
            }
        }
    }

    #[test]
    fn release_moves_tail_into_odd_parity_sector() {
        let e = engine();
        let (fin, outcome) = e.pair_bases(Nucleobase::A, Nucleobase::G, 2).unwrap();
        let before = outcome.bonds[2];
        let (released, outcome) = release_improper(fin, outcome).unwrap();
        assert!(outcome.released);
        let after = classify_pair_bond(&released.state, (4, 5)).unwrap();
        match before {
            BondState::Bell(BellLabel::B00) => {
                assert_eq!(after, BondState::Bell(BellLabel::B01))
            }
            BondState::Bell(BellLabel::B10) => {
                assert_eq!(after, BondState::Bell(BellLabel::B11))
            }
            other => panic!("unexpected pre-release tail {other}"),
        }
    }

    #[test]
    fn release_rejects_proper_outcomes() {
        let e = engine();
        let (fin, outcome) = e.pair_bases(Nucleobase::A, Nucleobase::T, 2).unwrap();
        assert!(matches!(
            release_improper(fin, outcome),
            Err(Error::ReleaseOnProper)
        ));
    }

    #[test]
    fn swap_protocol_requires_assembled_stage() {
        let e = engine();
        let pair = assemble_pair(
            &recognize_default(Nucleobase::A),
            &recognize_default(Nucleobase::T),
        )
        .unwrap();
        let advanced = e.transform_v(pair).unwrap();
        assert!(matches!(
            e.swap_protocol(advanced, 0),
            Err(Error::WrongStage { .. })
        ));
    }

    #[test]
    fn single_precision_engine_reaches_the_same_verdicts() {
        let e = SwapEngine::<f32>::new().unwrap();
        let (fin, outcome) = e.pair_bases(Nucleobase::G, Nucleobase::C, 4).unwrap();
        assert_eq!(outcome.verdict, Verdict::Proper);
        assert_eq!(outcome.bonds[2], BondState::Bell(BellLabel::B01));
        assert!((fin.state.norm_sqr() - 1.0).abs() < 1e-5);
        let (_, outcome) = e.pair_bases(Nucleobase::T, Nucleobase::C, 4).unwrap();
        assert_eq!(outcome.verdict, Verdict::Improper);
    }

    #[test]
    fn transcripts_are_reproducible_per_seed() {
        let e = engine();
        let (_, o1) = e.pair_bases(Nucleobase::A, Nucleobase::G, 77).unwrap();
        let (_, o2) = e.pair_bases(Nucleobase::A, Nucleobase::G, 77).unwrap();
        assert_eq!(o1.transcript, o2.transcript);
    }
}
