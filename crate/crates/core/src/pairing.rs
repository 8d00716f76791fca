//! Pair assembly and the fixed pairing unitary that makes proper base pairs
//! orthogonal and flags improper ones on the last atom pair.
//!
//! Layout after assembly: the six qubits are interleaved as
//! (t₁c₁ t₂c₂ t₃c₃), so hydrogen-bonded atom pairs sit adjacent — pair 1 on
//! qubits (0,1), pair 2 on (2,3), pair 3 on (4,5).

use crate::basecode::{Family, Nucleobase, BASES};
use crate::bell::BellLabel;
use crate::error::{Error, Result};
use crate::float::{czero, real, tol_algebraic, Real};
use crate::linalg::{complete_orthonormal, DenseMatrix};
use crate::recognition::{recognize_default, RecognizedState};
use crate::state::StateVector;
use num_complex::Complex;
use std::collections::BTreeMap;

/// Permutation taking (t₁t₂t₃ c₁c₂c₃) to the interleaved (t₁c₁ t₂c₂ t₃c₃).
pub const INTERLEAVE: [usize; 6] = [0, 2, 4, 1, 3, 5];

/// Protocol stage of a pair register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Stage {
    Assembled,
    AfterV,
    AfterBell,
    Final,
}

/// A template/candidate pair sharing one six-qubit register.
#[derive(Clone, Debug)]
pub struct PairState<T: Real> {
    pub template: Nucleobase,
    pub candidate: Nucleobase,
    pub state: StateVector<T>,
    pub stage: Stage,
}

/// Tensor the two recognized Watson-Crick registers and reorder so bonded
/// atom pairs are adjacent.
pub fn assemble_pair<T: Real>(
    template: &RecognizedState<T>,
    candidate: &RecognizedState<T>,
) -> Result<PairState<T>> {
    let joint = template.state.tensor(&candidate.state)?;
    let state = joint.permute_qubits(&INTERLEAVE)?;
    Ok(PairState {
        template: template.base,
        candidate: candidate.base,
        state,
        stage: Stage::Assembled,
    })
}

/// Where the pairing unitary sends one assembled input: a product of two
/// Bell states on pairs 1–2 and a basis state on pair 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairImage {
    pub pair1: BellLabel,
    pub pair2: BellLabel,
    /// Basis bits of qubits (4, 5). Proper pairs end in (1,1) or (0,1);
    /// improper pairs always have the sixth qubit 0.
    pub tail: (u8, u8),
}

impl PairImage {
    pub fn state<T: Real>(&self) -> StateVector<T> {
        let tail_idx = ((self.tail.0 as usize) << 1) | self.tail.1 as usize;
        let tail = StateVector::basis(2, tail_idx).expect("2-qubit basis");
        self.pair1
            .state::<T>()
            .tensor(&self.pair2.state::<T>())
            .and_then(|s| s.tensor(&tail))
            .expect("6 qubits is under the cap")
    }

    /// Proton counts that appear among the image's computational terms.
    fn term_weights(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for wa in bell_weights(self.pair1) {
            for wb in bell_weights(self.pair2) {
                out.push(wa + wb + self.tail.0 as usize + self.tail.1 as usize);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn bell_weights(l: BellLabel) -> &'static [usize] {
    // Odd-parity Bell states (β01, β11) have one proton per term; even-parity
    // ones (β00, β10) mix zero- and two-proton terms.
    if l.amplitude_bit == 1 {
        &[1]
    } else {
        &[0, 2]
    }
}

/// Proton count of a recognized base's sector: 2 for purines, 1 for
/// pyrimidines.
pub(crate) fn base_weight(b: Nucleobase) -> usize {
    match b.family() {
        Family::Purine => 2,
        Family::Pyrimidine => 1,
    }
}

fn is_proper(t: Nucleobase, c: Nucleobase) -> bool {
    t.complement() == c
}

const BELL_ORDER: [BellLabel; 4] = [
    BellLabel::B00,
    BellLabel::B01,
    BellLabel::B10,
    BellLabel::B11,
];

/// Deterministic image table for all 16 ordered inputs.
///
/// A·T and G·C take the canonical images β01⊗β01⊗|11⟩ and β01⊗β01⊗|01⟩;
/// every other input takes the lexicographically first unused Bell⊗Bell slot
/// with the stage-correct tail whose term proton counts all lie within ±1 of
/// the input's count. The window keeps an enzyme-compensated joint
/// realization constructible.
pub fn pairing_image_table() -> Result<BTreeMap<(char, char), PairImage>> {
    let mut used: Vec<PairImage> = Vec::new();
    let mut table = BTreeMap::new();

    let assign =
        |used: &mut Vec<PairImage>, t: Nucleobase, c: Nucleobase, tails: &[(u8, u8)]| -> Result<PairImage> {
            let target = base_weight(t) + base_weight(c);
            for a in BELL_ORDER {
                for b in BELL_ORDER {
                    for &tail in tails {
                        let img = PairImage { pair1: a, pair2: b, tail };
                        if used.contains(&img) {
                            continue;
                        }
                        let ok = img
                            .term_weights()
                            .iter()
                            .all(|w| w.abs_diff(target) <= 1);
                        if ok {
                            used.push(img);
                            return Ok(img);
                        }
                    }
                }
            }
            Err(Error::NoFeasibleSlot(format!("{t}·{c}")))
        };

    // Canonical proper images first.
    let canonical = [
        (Nucleobase::A, Nucleobase::T, (1u8, 1u8)),
        (Nucleobase::G, Nucleobase::C, (0u8, 1u8)),
    ];
    for (t, c, tail) in canonical {
        let img = PairImage { pair1: BellLabel::B01, pair2: BellLabel::B01, tail };
        used.push(img);
        table.insert((t.to_char(), c.to_char()), img);
    }
    // Reversed proper orderings share the tail but must take fresh slots.
    for (t, c, tail) in [
        (Nucleobase::T, Nucleobase::A, (1u8, 1u8)),
        (Nucleobase::C, Nucleobase::G, (0u8, 1u8)),
    ] {
        let img = assign(&mut used, t, c, &[tail])?;
        table.insert((t.to_char(), c.to_char()), img);
    }
    // Improper inputs end with the sixth qubit |0⟩, tail ∈ {|00⟩, |10⟩}.
    for t in BASES {
        for c in BASES {
            if is_proper(t, c) {
                continue;
            }
            let img = assign(&mut used, t, c, &[(0, 0), (1, 0)])?;
            table.insert((t.to_char(), c.to_char()), img);
        }
    }
    Ok(table)
}

/// The pairing unitary plus its image table, built once and reused.
pub struct SwapEngine<T: Real> {
    v: DenseMatrix<T>,
    images: BTreeMap<(char, char), PairImage>,
}

impl<T: Real> SwapEngine<T> {
    /// Build the fixed 64-dim pairing unitary from the default-angle
    /// recognized states: prescribed inputs map to their images, and both
    /// sides are completed to orthonormal bases of the full space.
    pub fn new() -> Result<Self> {
        let images = pairing_image_table()?;
        let mut inputs: Vec<Vec<Complex<T>>> = Vec::with_capacity(16);
        let mut outputs: Vec<Vec<Complex<T>>> = Vec::with_capacity(16);
        for t in BASES {
            for c in BASES {
                let pair = assemble_pair(&recognize_default::<T>(t), &recognize_default::<T>(c))?;
                inputs.push(pair.state.amplitudes().to_vec());
                let img = images[&(t.to_char(), c.to_char())];
                outputs.push(img.state::<T>().amplitudes().to_vec());
            }
        }
        let input_basis = complete_orthonormal(&inputs, 64);
        let output_basis = complete_orthonormal(&outputs, 64);
        let mut v = DenseMatrix::<T>::zeros(64);
        for (inp, out) in input_basis.iter().zip(&output_basis) {
            for i in 0..64 {
                if out[i] == czero() {
                    continue;
                }
                for j in 0..64 {
                    v[(i, j)] = v[(i, j)] + out[i] * inp[j].conj();
                }
            }
        }
        v.ensure_unitary(tol_algebraic::<T>() * real(64.0))?;
        Ok(Self { v, images })
    }

    pub fn pairing_unitary(&self) -> &DenseMatrix<T> {
        &self.v
    }

    pub fn image_of(&self, template: Nucleobase, candidate: Nucleobase) -> PairImage {
        self.images[&(template.to_char(), candidate.to_char())]
    }

    /// Step 1 of the protocol: apply the pairing unitary to an assembled pair.
    pub fn transform_v(&self, pair: PairState<T>) -> Result<PairState<T>> {
        if pair.stage != Stage::Assembled {
            return Err(Error::WrongStage {
                expected: Stage::Assembled,
                actual: pair.stage,
            });
        }
        let amps = self.v.matvec(pair.state.amplitudes());
        Ok(PairState {
            template: pair.template,
            candidate: pair.candidate,
            state: StateVector::from_raw(6, amps),
            stage: Stage::AfterV,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner;

    type E = SwapEngine<f64>;

    fn assembled(t: Nucleobase, c: Nucleobase) -> PairState<f64> {
        assemble_pair(&recognize_default(t), &recognize_default(c)).unwrap()
    }

    #[test]
    fn assembled_at_pair_has_four_half_terms() {
        let p = assembled(Nucleobase::A, Nucleobase::T);
        let expect = [
            ("001110", 0.5),
            ("011010", -0.5),
            ("100110", -0.5),
            ("110010", 0.5),
        ];
        let mut weight = 0.0;
        for (bits, val) in expect {
            let amp = p.state.amplitude_of(bits).unwrap();
            assert!((amp.re - val).abs() < 1e-12, "{bits}: {amp}");
            assert!(amp.im.abs() < 1e-15);
            weight += amp.norm_sqr();
        }
        assert!((weight - 1.0).abs() < 1e-12);
    }

    #[test]
    fn assembled_gc_pair_has_nine_terms_with_two_thirds_prefactor() {
        let p = assembled(Nucleobase::G, Nucleobase::C);
        let third = 1.0 / 3.0;
        let expect = [
            ("011010", -0.5 * third),
            ("110010", -0.5 * third),
            ("111000", third),
            ("001110", -0.5 * third),
            ("100110", -0.5 * third),
            ("101100", third),
            ("001011", third),
            ("100011", third),
            ("101001", -2.0 * third),
        ];
        let mut weight = 0.0;
        for (bits, val) in expect {
            let amp = p.state.amplitude_of(bits).unwrap();
            assert!((amp.re - val).abs() < 1e-12, "{bits}: {} vs {val}", amp.re);
            weight += amp.norm_sqr();
        }
        assert!((weight - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_products_before_reordering_have_the_expected_terms() {
        let a = recognize_default::<f64>(Nucleobase::A).state;
        let t = recognize_default::<f64>(Nucleobase::T).state;
        let at = a.tensor(&t).unwrap();
        for (bits, v) in [
            ("011010", 0.5),
            ("011100", -0.5),
            ("101010", -0.5),
            ("101100", 0.5),
        ] {
            assert!((at.amplitude_of(bits).unwrap().re - v).abs() < 1e-12, "{bits}");
        }
        assert!((at.norm_sqr() - 1.0).abs() < 1e-12);

        let g = recognize_default::<f64>(Nucleobase::G).state;
        let c = recognize_default::<f64>(Nucleobase::C).state;
        let gc = g.tensor(&c).unwrap();
        for (bits, v) in [
            ("011100", -1.0 / 6.0),
            ("110100", 1.0 / 3.0),
            ("110001", -2.0 / 3.0),
        ] {
            assert!((gc.amplitude_of(bits).unwrap().re - v).abs() < 1e-12, "{bits}");
        }
    }

    #[test]
    fn all_assembled_pairs_are_normalized_and_orthonormal() {
        let mut states = Vec::new();
        for t in BASES {
            for c in BASES {
                states.push(assembled(t, c).state);
            }
        }
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let ip = a.inner_product(b).unwrap().norm();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn image_table_is_orthogonal_and_weight_feasible() {
        let table = pairing_image_table().unwrap();
        assert_eq!(table.len(), 16);
        type Labeled<'a> = (&'a (char, char), Vec<num_complex::Complex<f64>>);
        let imgs: Vec<Labeled> = table
            .iter()
            .map(|(k, v)| (k, v.state::<f64>().amplitudes().to_vec()))
            .collect();
        for (i, (ka, a)) in imgs.iter().enumerate() {
            for (kb, b) in imgs.iter().skip(i + 1) {
                assert!(
                    inner(a, b).norm() < 1e-12,
                    "images for {ka:?} and {kb:?} overlap"
                );
            }
        }
        for ((t, c), img) in &table {
            let tb = Nucleobase::from_char(*t).unwrap();
            let cb = Nucleobase::from_char(*c).unwrap();
            let target = base_weight(tb) + base_weight(cb);
            for w in img.term_weights() {
                assert!(w.abs_diff(target) <= 1, "{t}{c}: weight {w} vs {target}");
            }
            if tb.complement() == cb {
                assert_eq!(img.tail.1, 1, "proper pair tail must end in 1");
            } else {
                assert_eq!(img.tail.1, 0, "improper pair tail must end in 0");
            }
        }
        // Canonical proper images.
        let at = table[&('A', 'T')];
        assert_eq!(at.pair1, BellLabel::B01);
        assert_eq!(at.pair2, BellLabel::B01);
        assert_eq!(at.tail, (1, 1));
        let gc = table[&('G', 'C')];
        assert_eq!(gc.tail, (0, 1));
    }

    #[test]
    fn pairing_unitary_is_unitary() {
        let e = E::new().unwrap();
        assert!(e.pairing_unitary().unitarity_defect() < 1e-12);
    }

    #[test]
    fn proper_inputs_map_to_their_canonical_images() {
        let e = E::new().unwrap();
        for (t, c) in [
            (Nucleobase::A, Nucleobase::T),
            (Nucleobase::T, Nucleobase::A),
            (Nucleobase::G, Nucleobase::C),
            (Nucleobase::C, Nucleobase::G),
        ] {
            let after = e.transform_v(assembled(t, c)).unwrap();
            let expect = e.image_of(t, c).state::<f64>();
            assert!(
                after.state.max_amplitude_diff(&expect).unwrap() < 1e-12,
                "{t}·{c}"
            );
        }
    }

    #[test]
    fn improper_inputs_never_set_the_sixth_qubit() {
        let e = E::new().unwrap();
        for t in BASES {
            for c in BASES {
                if t.complement() == c {
                    continue;
                }
                let after = e.transform_v(assembled(t, c)).unwrap();
                assert!(
                    after.state.prob_one(5).unwrap() < 1e-20,
                    "{t}·{c} leaked onto q6"
                );
            }
        }
    }

    #[test]
    fn transform_v_requires_assembled_stage() {
        let e = E::new().unwrap();
        let done = e.transform_v(assembled(Nucleobase::A, Nucleobase::T)).unwrap();
        assert!(matches!(
            e.transform_v(done),
            Err(Error::WrongStage { .. })
        ));
    }

    #[test]
    fn pairing_unitary_preserves_assembled_inner_products() {
        let e = E::new().unwrap();
        let a = e.transform_v(assembled(Nucleobase::A, Nucleobase::G)).unwrap();
        let b = e.transform_v(assembled(Nucleobase::T, Nucleobase::C)).unwrap();
        assert!((a.state.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(a.state.inner_product(&b.state).unwrap().norm() < 1e-12);
    }
}
