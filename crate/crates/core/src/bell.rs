//! Bell states, bond classification, and measurement transcripts.

use crate::error::Result;
use crate::float::{bond_tolerance, creal, czero, Real};
use crate::state::{index_bit, StateVector};
use serde::ser::Serializer;
use serde::Serialize;
use std::fmt;

/// Names the Bell state β_ij = (|0 j⟩ + (−1)^i |1 ȷ̄⟩)/√2.
///
/// β01 models a hydrogen bond, β11 the antibonding repulsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BellLabel {
    pub phase_bit: u8,
    pub amplitude_bit: u8,
}

impl BellLabel {
    pub const B00: BellLabel = BellLabel { phase_bit: 0, amplitude_bit: 0 };
    pub const B01: BellLabel = BellLabel { phase_bit: 0, amplitude_bit: 1 };
    pub const B10: BellLabel = BellLabel { phase_bit: 1, amplitude_bit: 0 };
    pub const B11: BellLabel = BellLabel { phase_bit: 1, amplitude_bit: 1 };

    pub fn all() -> [BellLabel; 4] {
        [Self::B00, Self::B01, Self::B10, Self::B11]
    }

    pub fn new(phase_bit: u8, amplitude_bit: u8) -> Self {
        debug_assert!(phase_bit <= 1 && amplitude_bit <= 1);
        Self { phase_bit, amplitude_bit }
    }

    /// The two-qubit state vector, canonical signs.
    pub fn state<T: Real>(&self) -> StateVector<T> {
        let mut amps = vec![czero::<T>(); 4];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let j = self.amplitude_bit as usize;
        amps[j] = creal(h);
        amps[0b10 | (1 - j)] = creal(if self.phase_bit == 1 { -h } else { h });
        StateVector::from_raw(2, amps)
    }

    /// Amplitude on the two-qubit basis pattern `p` ∈ 0..4.
    pub(crate) fn amp<T: Real>(&self, p: usize) -> num_complex::Complex<T> {
        self.state::<T>().amplitude(p)
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "β{}{}", self.phase_bit, self.amplitude_bit)
    }
}

impl Serialize for BellLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("beta{}{}", self.phase_bit, self.amplitude_bit))
    }
}

/// Classification of one atom pair after the protocol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BondState {
    Bell(BellLabel),
    NotBell,
}

impl fmt::Display for BondState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BondState::Bell(l) => write!(f, "{l}"),
            BondState::NotBell => write!(f, "not-bell"),
        }
    }
}

impl Serialize for BondState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BondState::Bell(l) => l.serialize(s),
            BondState::NotBell => s.serialize_str("not_bell"),
        }
    }
}

/// Declare the atom pair `(a, b)` of `state` to be in a Bell state when the
/// projector expectation exceeds 1 − 1e-9 (epsilon-scaled for narrow floats).
pub fn classify_pair_bond<T: Real>(
    state: &StateVector<T>,
    pair: (usize, usize),
) -> Result<BondState> {
    let threshold = T::one() - bond_tolerance::<T>();
    for label in BellLabel::all() {
        if bell_projection_probability(state, pair, label)? > threshold {
            return Ok(BondState::Bell(label));
        }
    }
    Ok(BondState::NotBell)
}

/// ⟨ψ| (|β⟩⟨β| on the pair ⊗ I elsewhere) |ψ⟩.
pub fn bell_projection_probability<T: Real>(
    state: &StateVector<T>,
    (a, b): (usize, usize),
    label: BellLabel,
) -> Result<T> {
    let n = state.num_qubits();
    let rest_dim = 1usize << (n - 2);
    let mut contracted = vec![czero::<T>(); rest_dim];
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        if *amp == czero() {
            continue;
        }
        let p = ((index_bit(idx, a, n) as usize) << 1) | index_bit(idx, b, n) as usize;
        let mut r = 0usize;
        for q in 0..n {
            if q == a || q == b {
                continue;
            }
            r = (r << 1) | usize::from(index_bit(idx, q, n));
        }
        contracted[r] = contracted[r] + label.amp::<T>(p).conj() * *amp;
    }
    Ok(contracted
        .iter()
        .map(|c| c.norm_sqr())
        .fold(T::zero(), |x, y| x + y))
}

/// Ordered transcript of measurement outcomes, reproducible from `rng_seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Default)]
pub struct MeasurementRecord {
    outcomes: Vec<(usize, u8)>,
    labels: Vec<String>,
    pub rng_seed: u64,
}

impl MeasurementRecord {
    pub fn new(rng_seed: u64) -> Self {
        Self {
            outcomes: Vec::new(),
            labels: Vec::new(),
            rng_seed,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, qubit: usize, bit: u8) {
        debug_assert!(bit <= 1);
        self.outcomes.push((qubit, bit));
        self.labels.push(label.into());
    }

    pub fn outcomes(&self) -> &[(usize, u8)] {
        &self.outcomes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, label: &str) -> Option<u8> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.outcomes[i].1)
    }

    pub fn extend(&mut self, other: &MeasurementRecord) {
        self.outcomes.extend_from_slice(&other.outcomes);
        self.labels.extend(other.labels.iter().cloned());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_states_have_canonical_amplitudes() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let b01 = BellLabel::B01.state::<f64>();
        assert!((b01.amplitude_of("01").unwrap().re - h).abs() < 1e-15);
        assert!((b01.amplitude_of("10").unwrap().re - h).abs() < 1e-15);
        let b11 = BellLabel::B11.state::<f64>();
        assert!((b11.amplitude_of("01").unwrap().re - h).abs() < 1e-15);
        assert!((b11.amplitude_of("10").unwrap().re + h).abs() < 1e-15);
        let b10 = BellLabel::B10.state::<f64>();
        assert!((b10.amplitude_of("00").unwrap().re - h).abs() < 1e-15);
        assert!((b10.amplitude_of("11").unwrap().re + h).abs() < 1e-15);
    }

    #[test]
    fn bell_states_are_orthonormal() {
        for a in BellLabel::all() {
            for b in BellLabel::all() {
                let ip = a
                    .state::<f64>()
                    .inner_product(&b.state::<f64>())
                    .unwrap()
                    .norm();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn classify_recovers_each_bell_state() {
        for label in BellLabel::all() {
            let s = label.state::<f64>();
            assert_eq!(
                classify_pair_bond(&s, (0, 1)).unwrap(),
                BondState::Bell(label)
            );
        }
    }

    #[test]
    fn classify_rejects_separable_pair() {
        let s = StateVector::<f64>::from_bits("00").unwrap();
        assert_eq!(classify_pair_bond(&s, (0, 1)).unwrap(), BondState::NotBell);
    }

    #[test]
    fn classify_works_inside_larger_register() {
        // β01 on qubits (0, 2) of a 3-qubit register, qubit 1 in |1⟩.
        let b = BellLabel::B01.state::<f64>();
        let one = StateVector::<f64>::from_bits("1").unwrap();
        let joint = b.tensor(&one).unwrap().permute_qubits(&[0, 2, 1]).unwrap();
        assert_eq!(
            classify_pair_bond(&joint, (0, 2)).unwrap(),
            BondState::Bell(BellLabel::B01)
        );
        assert_eq!(classify_pair_bond(&joint, (0, 1)).unwrap(), BondState::NotBell);
    }

    #[test]
    fn record_keeps_labels_aligned() {
        let mut r = MeasurementRecord::new(9);
        r.push("M1", 0, 1);
        r.push("M2", 1, 0);
        assert_eq!(r.get("M1"), Some(1));
        assert_eq!(r.get("M2"), Some(0));
        assert_eq!(r.outcomes().len(), r.labels().len());
    }
}
