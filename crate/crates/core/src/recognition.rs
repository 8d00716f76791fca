//! The recognition transformation: a unitary on the Watson-Crick register
//! that turns each usual-form basis state into the superposition of that
//! base's allowed tautomer forms.
//!
//! The unitary is block-diagonal across the two proton-number sectors of the
//! 3-qubit register (weight-1 and weight-2 strings), so recognition never
//! moves amplitude between decoherence-free sectors. Within each sector the
//! block is a real 3×3 rotation parameterized by (θ, φ); at the default
//! angles θ = arccos(1/√3), φ = arccos(1/√2) the images carry the model's
//! printed amplitudes exactly.

use crate::basecode::{wc_basis_state, Nucleobase, TautomerForm};
use crate::error::{Error, Result};
use crate::float::{real, Real};
use crate::gates::{ChemTag, GateOp};
use crate::linalg::DenseMatrix;
use crate::state::StateVector;
use num_complex::Complex;

/// arccos(1/√3).
pub fn default_theta<T: Real>() -> T {
    real((1.0 / 3f64.sqrt()).acos())
}

/// arccos(1/√2) = π/4.
pub fn default_phi<T: Real>() -> T {
    real((1.0 / 2f64.sqrt()).acos())
}

/// A base after recognition: its Watson-Crick register holds the intrabase
/// entanglement among the allowed tautomer forms.
#[derive(Clone, Debug)]
pub struct RecognizedState<T: Real> {
    pub base: Nucleobase,
    pub state: StateVector<T>,
    pub theta: T,
    pub phi: T,
}

fn check_angle<T: Real>(angle: T) -> Result<()> {
    let half_pi = real::<T>(std::f64::consts::FRAC_PI_2);
    if angle <= T::zero() || angle >= half_pi {
        return Err(Error::AngleOutOfRange(
            angle.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(())
}

/// The 8×8 recognition unitary at angles (θ, φ).
///
/// Sector bases are ordered (|011⟩, |101⟩, |110⟩) and (|001⟩, |010⟩, |100⟩);
/// the usual-form inputs |011⟩ (G), |101⟩ (A), |010⟩ (T), |100⟩ (C) map to
/// mutually orthogonal columns for every angle pair, and the leftover column
/// of each block is the cross product of the other two, so the family is
/// unitary on the whole space.
pub fn recognition_unitary<T: Real>(theta: T, phi: T) -> Result<DenseMatrix<T>> {
    check_angle(theta)?;
    check_angle(phi)?;
    let (ct, st) = (theta.cos(), theta.sin());
    let (cp, sp) = (phi.cos(), phi.sin());

    let mut u = DenseMatrix::<T>::zeros(8);
    u[(0b000, 0b000)] = Complex::new(T::one(), T::zero());
    u[(0b111, 0b111)] = Complex::new(T::one(), T::zero());

    // Weight-2 sector, basis (011, 101, 110): columns for inputs 011, 101, 110.
    let minus_basis = [0b011usize, 0b101, 0b110];
    let minus_cols = [
        [ct * cp, ct * sp, -st],
        [sp, -cp, T::zero()],
        [-st * cp, -st * sp, -ct],
    ];
    // Weight-1 sector, basis (001, 010, 100): columns for inputs 001, 010, 100.
    let plus_basis = [0b001usize, 0b010, 0b100];
    let plus_cols = [
        [-ct, -st * sp, -st * cp],
        [T::zero(), cp, -sp],
        [st, -ct * sp, -ct * cp],
    ];

    for (c, col) in minus_cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            u[(minus_basis[r], minus_basis[c])] = Complex::new(*v, T::zero());
        }
    }
    for (c, col) in plus_cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            u[(plus_basis[r], plus_basis[c])] = Complex::new(*v, T::zero());
        }
    }
    Ok(u)
}

/// Recognition as a gate on three target qubits (for joint-register audits).
pub fn recognition_gate<T: Real>(theta: T, phi: T, targets: [usize; 3]) -> Result<GateOp<T>> {
    Ok(GateOp::custom(recognition_unitary(theta, phi)?, targets.to_vec())?
        .tagged(ChemTag::Composite))
}

/// Recognize a base: start from its usual-form Watson-Crick basis state and
/// apply the recognition unitary.
pub fn recognize<T: Real>(base: Nucleobase, theta: T, phi: T) -> Result<RecognizedState<T>> {
    let u = recognition_unitary(theta, phi)?;
    let input: StateVector<T> = wc_basis_state(TautomerForm::usual(base))?;
    let amps = u.matvec(input.amplitudes());
    Ok(RecognizedState {
        base,
        state: StateVector::from_raw(3, amps),
        theta,
        phi,
    })
}

pub fn recognize_default<T: Real>(base: Nucleobase) -> RecognizedState<T> {
    recognize(base, default_theta(), default_phi()).expect("default angles are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basecode::BASES;
    use crate::rng::seeded;
    use rand::Rng;

    const S2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn s6() -> f64 {
        1.0 / 6f64.sqrt()
    }

    #[test]
    fn default_angles_match_closed_forms() {
        assert!((default_theta::<f64>().cos() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((default_phi::<f64>() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn recognized_default_amplitudes_are_exact() {
        let a = recognize_default::<f64>(Nucleobase::A).state;
        assert!((a.amplitude_of("011").unwrap().re - S2).abs() < 1e-12);
        assert!((a.amplitude_of("101").unwrap().re + S2).abs() < 1e-12);

        let t = recognize_default::<f64>(Nucleobase::T).state;
        assert!((t.amplitude_of("010").unwrap().re - S2).abs() < 1e-12);
        assert!((t.amplitude_of("100").unwrap().re + S2).abs() < 1e-12);

        let g = recognize_default::<f64>(Nucleobase::G).state;
        assert!((g.amplitude_of("011").unwrap().re - s6()).abs() < 1e-12);
        assert!((g.amplitude_of("101").unwrap().re - s6()).abs() < 1e-12);
        assert!((g.amplitude_of("110").unwrap().re + 2.0 * s6()).abs() < 1e-12);

        let c = recognize_default::<f64>(Nucleobase::C).state;
        assert!((c.amplitude_of("100").unwrap().re + s6()).abs() < 1e-12);
        assert!((c.amplitude_of("010").unwrap().re + s6()).abs() < 1e-12);
        assert!((c.amplitude_of("001").unwrap().re - 2.0 * s6()).abs() < 1e-12);
    }

    #[test]
    fn default_states_are_orthonormal() {
        let states: Vec<_> = BASES
            .iter()
            .map(|b| recognize_default::<f64>(*b).state)
            .collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let ip = a.inner_product(b).unwrap().norm();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expect).abs() < 1e-12, "⟨{i}|{j}⟩ = {ip}");
            }
        }
    }

    #[test]
    fn unitary_for_random_angles_in_range() {
        let mut rng = seeded(31);
        for _ in 0..100 {
            let theta = rng.gen_range(0.05..1.5);
            let phi = rng.gen_range(0.05..1.5);
            let u = recognition_unitary::<f64>(theta, phi).unwrap();
            assert!(u.unitarity_defect() < 1e-12);
            // Never mixes proton-number sectors.
            assert!(u.is_number_conserving(1e-14));
        }
    }

    #[test]
    fn angles_outside_open_interval_rejected() {
        let ok = default_phi::<f64>();
        for bad in [0.0, std::f64::consts::FRAC_PI_2, -0.3, 2.0] {
            assert!(matches!(
                recognize::<f64>(Nucleobase::A, bad, ok),
                Err(Error::AngleOutOfRange(_))
            ));
            assert!(matches!(
                recognize::<f64>(Nucleobase::A, ok, bad),
                Err(Error::AngleOutOfRange(_))
            ));
        }
    }

    #[test]
    fn a_and_g_images_stay_orthogonal_off_default() {
        let a = recognize::<f64>(Nucleobase::A, 0.7, 0.9).unwrap().state;
        let g = recognize::<f64>(Nucleobase::G, 0.7, 0.9).unwrap().state;
        assert!(a.inner_product(&g).unwrap().norm() < 1e-12);
    }

    #[test]
    fn twofold_entanglement_structure_for_a_and_t() {
        for b in [Nucleobase::A, Nucleobase::T] {
            let s = recognize_default::<f64>(b).state;
            // The third Watson-Crick atom stays separable, the other two are
            // maximally entangled.
            assert!(s.entanglement_entropy(&[2]).unwrap() < 1e-10);
            assert!((s.entanglement_entropy(&[0]).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn threefold_entanglement_structure_for_g_and_c() {
        for b in [Nucleobase::G, Nucleobase::C] {
            let s = recognize_default::<f64>(b).state;
            for q in 0..3 {
                assert!(
                    s.entanglement_entropy(&[q]).unwrap() > 0.1,
                    "{b} cut {q} should be entangled"
                );
            }
        }
    }

    #[test]
    fn images_live_in_a_single_weight_sector() {
        for b in BASES {
            let s = recognize_default::<f64>(b).state;
            let expected_weight = match b.family() {
                crate::basecode::Family::Purine => 2,
                crate::basecode::Family::Pyrimidine => 1,
            };
            for (idx, amp) in s.amplitudes().iter().enumerate() {
                if amp.norm() > 1e-12 {
                    assert_eq!(idx.count_ones() as usize, expected_weight);
                }
            }
        }
    }

    #[test]
    fn off_default_recognized_state_is_normalized_single_sector() {
        let s = recognize::<f64>(
            Nucleobase::A,
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_4,
        )
        .unwrap()
        .state;
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        for (idx, amp) in s.amplitudes().iter().enumerate() {
            if amp.norm() > 1e-12 {
                assert_eq!(idx.count_ones(), 2);
            }
        }
    }
}
