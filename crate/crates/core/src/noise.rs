//! Collective-decoherence models and decoherence-free sector arithmetic.
//!
//! λ over K qubits counts |0⟩s minus |1⟩s; subspaces of constant λ are
//! untouched by weak collective dephasing, which multiplies every |1⟩ by a
//! common phase.

use crate::error::{Error, Result};
use crate::float::{real, Real};
use crate::gates::{GateKind, GateOp};
use crate::linalg::DenseMatrix;
use crate::state::{parse_basis, StateVector, MAX_QUBITS};
use num_complex::Complex;
use serde::Serialize;

/// λ of a basis string: (#0) − (#1).
pub fn lambda_of(bits: &str) -> Result<i64> {
    let (n, idx) = parse_basis(bits)?;
    Ok(lambda_of_index(idx, n))
}

/// λ of a basis index over `n` qubits.
pub fn lambda_of_index(index: usize, n: usize) -> i64 {
    let ones = index.count_ones() as i64;
    n as i64 - 2 * ones
}

/// Distinct λ values carrying probability weight above 1e-12, ascending.
pub fn sector_support<T: Real>(state: &StateVector<T>) -> Vec<i64> {
    let n = state.num_qubits();
    let floor = real::<T>(1e-12);
    let mut weights = std::collections::BTreeMap::new();
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        let w = amp.norm_sqr();
        if w > T::zero() {
            let entry = weights.entry(lambda_of_index(idx, n)).or_insert(T::zero());
            *entry = *entry + w;
        }
    }
    weights
        .into_iter()
        .filter(|(_, w)| *w > floor)
        .map(|(l, _)| l)
        .collect()
}

/// Weak collective dephasing: each |1⟩ acquires e^{iφ}, so a basis string of
/// weight w picks up e^{iφw}.
pub fn weak_dephase<T: Real>(state: &StateVector<T>, phi: T) -> StateVector<T> {
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(idx, amp)| {
            let w = real::<T>(idx.count_ones() as f64);
            let phase = Complex::from_polar(T::one(), phi * w);
            *amp * phase
        })
        .collect();
    StateVector::from_raw(state.num_qubits(), amps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// The n-fold tensor power of one Pauli — the strong collective action on an
/// n-qubit register.
pub fn collective_pauli<T: Real>(axis: Axis, n: usize) -> Result<GateOp<T>> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCapExceeded {
            requested: n,
            cap: MAX_QUBITS,
        });
    }
    let single = match axis {
        Axis::X => GateKind::<T>::PauliX.matrix(),
        Axis::Y => GateKind::<T>::PauliY.matrix(),
        Axis::Z => GateKind::<T>::PauliZ.matrix(),
    };
    let mut m = DenseMatrix::identity(1);
    for _ in 0..n {
        m = m.kron(&single);
    }
    GateOp::custom(m, (0..n).collect())
}

/// A decoherence-free sector: λ value over K qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NoiseSector {
    pub k: usize,
    pub lambda: i64,
}

impl NoiseSector {
    pub fn new(k: usize, lambda: i64) -> Result<Self> {
        let parity_ok = (k as i64 - lambda) % 2 == 0;
        if !parity_ok || lambda.unsigned_abs() as usize > k {
            return Err(Error::BadSector { k, lambda });
        }
        Ok(Self { k, lambda })
    }

    /// Dimension C(K, (K−λ)/2): the number of basis strings in the sector.
    pub fn dimension(&self) -> u64 {
        let ones = ((self.k as i64 - self.lambda) / 2) as u64;
        binomial(self.k as u64, ones)
    }

    /// Basis indices (over K qubits) spanning the sector.
    pub fn basis_indices(&self) -> Vec<usize> {
        let ones = ((self.k as i64 - self.lambda) / 2) as u32;
        (0..(1usize << self.k))
            .filter(|idx| idx.count_ones() == ones)
            .collect()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The enzyme's active site: q hydrogen-bond acceptors (|0⟩) followed by
/// k − q donors (|1⟩).
#[derive(Clone, Debug)]
pub struct EnzymeSite<T: Real> {
    pub q: usize,
    pub k: usize,
    pub state: StateVector<T>,
}

impl<T: Real> EnzymeSite<T> {
    pub fn new(q: usize, k: usize) -> Result<Self> {
        if q > k || k == 0 || k > MAX_QUBITS {
            return Err(Error::BadEnzymeSite { q, k });
        }
        // |0⟩^q ⊗ |1⟩^(k−q): the (k−q) low-order bits set.
        let index = (1usize << (k - q)) - 1;
        Ok(Self {
            q,
            k,
            state: StateVector::basis(k, index)?,
        })
    }

    /// λ of the site state: 2q − k.
    pub fn lambda(&self) -> i64 {
        2 * self.q as i64 - self.k as i64
    }

    /// Number of protons the site holds by default.
    pub fn donors(&self) -> usize {
        self.k - self.q
    }

    pub fn acceptors(&self) -> usize {
        self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basecode::{encode, Edge, Nucleobase, TautomerForm, BASES};
    use crate::float::creal;
    use crate::recognition::recognize_default;

    #[test]
    fn lambda_counts_zeros_minus_ones() {
        assert_eq!(lambda_of("101").unwrap(), -1);
        assert_eq!(lambda_of("010").unwrap(), 1);
        assert_eq!(lambda_of("000000").unwrap(), 6);
    }

    #[test]
    fn every_tautomer_wc_code_sits_in_a_unit_sector() {
        for f in crate::basecode::all_forms() {
            let wc = encode(f, Edge::WatsonCrick).unwrap();
            let l = lambda_of(wc).unwrap();
            assert!(l == 1 || l == -1, "{f}: λ = {l}");
        }
    }

    #[test]
    fn recognized_states_are_single_sector() {
        assert_eq!(
            sector_support(&recognize_default::<f64>(Nucleobase::A).state),
            vec![-1]
        );
        assert_eq!(
            sector_support(&recognize_default::<f64>(Nucleobase::C).state),
            vec![1]
        );
        for b in BASES {
            assert_eq!(
                sector_support(&recognize_default::<f64>(b).state).len(),
                1
            );
        }
    }

    #[test]
    fn even_bell_state_straddles_two_sectors() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::<f64>::from_amplitudes(
            2,
            vec![creal(h), creal(0.0), creal(0.0), creal(h)],
        )
        .unwrap();
        assert_eq!(sector_support(&s), vec![-2, 2]);
    }

    #[test]
    fn dephasing_is_a_global_phase_on_single_sector_states() {
        for b in BASES {
            let s = recognize_default::<f64>(b).state;
            for k in 0..8 {
                let phi = 0.31 * k as f64 + 0.11;
                let out = weak_dephase(&s, phi);
                let overlap = s.inner_product(&out).unwrap().norm();
                assert!((overlap - 1.0).abs() < 1e-12, "{b} at φ={phi}");
            }
        }
    }

    #[test]
    fn dephasing_leaves_all_zero_string_untouched() {
        let s = StateVector::<f64>::from_bits("000").unwrap();
        let out = weak_dephase(&s, 1.234);
        assert!(s.max_amplitude_diff(&out).unwrap() < 1e-15);
    }

    #[test]
    fn half_pi_dephasing_flips_even_bell_state() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::<f64>::from_amplitudes(
            2,
            vec![creal(h), creal(0.0), creal(0.0), creal(h)],
        )
        .unwrap();
        // |11⟩ carries two protons, so it picks up e^{2iφ}; at φ = π/2 that
        // is −1: (|00⟩ + |11⟩)/√2 → (|00⟩ − |11⟩)/√2, orthogonal to the input.
        let out = weak_dephase(&s, std::f64::consts::FRAC_PI_2);
        assert!(s.inner_product(&out).unwrap().norm() < 1e-12);
        assert!((out.amplitude_of("11").unwrap().re + h).abs() < 1e-12);
        // A full φ = π turn is e^{2πi} = 1 on two protons: invariant.
        let out = weak_dephase(&s, std::f64::consts::PI);
        assert!(s.max_amplitude_diff(&out).unwrap() < 1e-12);
    }

    #[test]
    fn triple_x_maps_each_recognized_base_to_minus_its_complement() {
        let sx3 = collective_pauli::<f64>(Axis::X, 3).unwrap();
        for b in BASES {
            let s = recognize_default::<f64>(b).state;
            let out = sx3.apply(&s).unwrap();
            let comp = recognize_default::<f64>(b.complement()).state;
            // Exactly −1 times the complement's state.
            let mut worst = 0.0f64;
            for (x, y) in out.amplitudes().iter().zip(comp.amplitudes()) {
                worst = worst.max((x + y).norm());
            }
            assert!(worst < 1e-12, "{b}");
        }
    }

    #[test]
    fn collective_paulis_act_on_complement_products_as_displayed() {
        for b in BASES {
            let n = recognize_default::<f64>(b).state;
            let nb = recognize_default::<f64>(b.complement()).state;
            let forward = n.tensor(&nb).unwrap();
            let swapped = nb.tensor(&n).unwrap();
            for axis in [Axis::X, Axis::Y] {
                let g = collective_pauli::<f64>(axis, 6).unwrap();
                let out = g.apply(&forward).unwrap();
                let overlap = out.inner_product(&swapped).unwrap().norm();
                assert!((overlap - 1.0).abs() < 1e-12, "{axis:?} on {b}");
            }
            let gz = collective_pauli::<f64>(Axis::Z, 6).unwrap();
            let out = gz.apply(&forward).unwrap();
            let overlap = out.inner_product(&forward).unwrap().norm();
            assert!((overlap - 1.0).abs() < 1e-12, "Z on {b}");
        }
    }

    #[test]
    fn sector_dimensions_match_binomials() {
        let s = NoiseSector::new(3, 1).unwrap();
        assert_eq!(s.dimension(), 3);
        assert_eq!(s.basis_indices(), vec![0b001, 0b010, 0b100]);
        let s = NoiseSector::new(3, -1).unwrap();
        assert_eq!(s.basis_indices(), vec![0b011, 0b101, 0b110]);
        assert!(NoiseSector::new(3, 0).is_err());
        assert!(NoiseSector::new(2, 6).is_err());
    }

    #[test]
    fn enzyme_site_state_and_lambda() {
        let e = EnzymeSite::<f64>::new(2, 4).unwrap();
        assert_eq!(e.lambda(), 0);
        assert_eq!(e.state.amplitude_of("0011").unwrap().re, 1.0);
        let e = EnzymeSite::<f64>::new(3, 4).unwrap();
        assert_eq!(e.lambda(), 2);
        assert!(EnzymeSite::<f64>::new(5, 4).is_err());
    }

    #[test]
    fn tautomer_form_display_used_in_errors() {
        // Keeps the Display impl honest for report rendering.
        let f = TautomerForm::new(Nucleobase::G, crate::basecode::TautomerMark::Sharp).unwrap();
        assert_eq!(f.to_string(), "G#");
    }
}
