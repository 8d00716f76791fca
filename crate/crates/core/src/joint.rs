//! Enzyme-compensated joint realization of recognition and the swapping
//! protocol, and the λ-sector audit.
//!
//! Every proton that leaves the base register enters the enzyme register and
//! vice versa, so each joint gate is number-conserving: its matrix never
//! connects basis states of different total proton count. A register that
//! starts in a single λ sector therefore stays in it through the whole
//! pipeline, which is exactly what the audit checks.
//!
//! Register layout: qubits 0–2 template, 3–5 candidate, 6..6+k enzyme
//! (q acceptors first, then k−q donors).

use crate::basecode::{Nucleobase, TautomerForm, BASES};
use crate::error::{Error, Result};
use crate::float::{czero, real, Real};
use crate::gates::{pauli_x, pauli_z, swap, ChemTag, GateKind, GateOp};
use crate::linalg::{complete_orthonormal, DenseMatrix};
use crate::noise::{sector_support, EnzymeSite};
use crate::pairing::{assemble_pair, base_weight, pairing_image_table, PairImage, INTERLEAVE};
use crate::recognition::{default_phi, default_theta, recognition_gate, recognize_default};
use crate::state::StateVector;
use num_complex::Complex;
use serde::Serialize;
use std::collections::BTreeMap;

/// Sector support after one pipeline step.
#[derive(Clone, Debug, Serialize)]
pub struct AuditStep {
    pub label: String,
    pub support: Vec<i64>,
    pub changed: bool,
}

/// Per-step λ support of a gate list applied to an initial state.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub initial_support: Vec<i64>,
    pub steps: Vec<AuditStep>,
    /// True when no step changed the support.
    pub constant: bool,
}

/// Apply `gates` in order and report the λ support after each one.
pub fn audit_circuit<T: Real>(
    gates: &[GateOp<T>],
    initial: &StateVector<T>,
) -> Result<AuditReport> {
    let labeled: Vec<(String, GateOp<T>)> =
        gates.iter().map(|g| (g.label(), g.clone())).collect();
    audit_circuit_labeled(&labeled, initial)
}

pub fn audit_circuit_labeled<T: Real>(
    gates: &[(String, GateOp<T>)],
    initial: &StateVector<T>,
) -> Result<AuditReport> {
    let initial_support = sector_support(initial);
    let mut state = initial.clone();
    let mut prev = initial_support.clone();
    let mut steps = Vec::with_capacity(gates.len());
    for (label, gate) in gates {
        state = gate.apply(&state)?;
        let support = sector_support(&state);
        let changed = support != prev;
        steps.push(AuditStep {
            label: label.clone(),
            support: support.clone(),
            changed,
        });
        prev = support;
    }
    let constant = steps.iter().all(|s| !s.changed);
    Ok(AuditReport {
        initial_support,
        steps,
        constant,
    })
}

/// Two-qubit bond rotation on a (base, enzyme) pair: acts as the Hadamard
/// column pattern inside the span of |01⟩ and |10⟩ and leaves |00⟩, |11⟩
/// alone. The proton-conserving stand-in for a bare Hadamard.
pub fn bond_givens_gate<T: Real>(base_q: usize, enzyme_q: usize) -> Result<GateOp<T>> {
    let h = real::<T>(std::f64::consts::FRAC_1_SQRT_2);
    let mut m = DenseMatrix::<T>::identity(4);
    m[(1, 1)] = Complex::new(h, T::zero());
    m[(1, 2)] = Complex::new(h, T::zero());
    m[(2, 1)] = Complex::new(h, T::zero());
    m[(2, 2)] = Complex::new(-h, T::zero());
    Ok(GateOp::custom(m, vec![base_q, enzyme_q])?.tagged(ChemTag::HydrogenBonding))
}

/// Controlled proton exchange (Fredkin): when `control` is |1⟩, swap the
/// target with an enzyme qubit. The proton-conserving stand-in for CX.
pub fn controlled_proton_exchange<T: Real>(
    control: usize,
    target: usize,
    enzyme_q: usize,
) -> Result<GateOp<T>> {
    Ok(
        GateOp::with_controls(GateKind::Swap, vec![target, enzyme_q], vec![control])?
            .tagged(ChemTag::ProtonTunneling),
    )
}

/// The enzyme-compensated joint realization: fixed pairing unitary over the
/// base+enzyme register plus per-pair pipelines.
pub struct JointRealization<T: Real> {
    pub q: usize,
    pub k: usize,
    images: BTreeMap<(char, char), PairImage>,
    v_joint: DenseMatrix<T>,
}

/// A labeled gate list with its initial joint state.
pub struct JointPipeline<T: Real> {
    pub template: Nucleobase,
    pub candidate: Nucleobase,
    pub initial: StateVector<T>,
    pub gates: Vec<(String, GateOp<T>)>,
    pub num_qubits: usize,
}

impl<T: Real> JointPipeline<T> {
    pub fn audit(&self) -> Result<AuditReport> {
        audit_circuit_labeled(&self.gates, &self.initial)
    }

    /// Exact integer check: every gate's expanded matrix stays within
    /// proton-number sectors.
    pub fn conserves_proton_number(&self) -> Result<bool> {
        let tol = real::<T>(1e-14);
        for (_, gate) in &self.gates {
            if !gate.expanded(self.num_qubits)?.is_number_conserving(tol) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<T: Real> JointRealization<T> {
    pub fn new(q: usize, k: usize) -> Result<Self> {
        if q > k || k == 0 {
            return Err(Error::BadEnzymeSite { q, k });
        }
        if q < 1 || k - q < 1 {
            return Err(Error::EnzymeTooSmall { q, k });
        }
        if 6 + k > crate::state::MAX_QUBITS {
            return Err(Error::QubitCapExceeded {
                requested: 6 + k,
                cap: crate::state::MAX_QUBITS,
            });
        }
        let images = pairing_image_table()?;
        let v_joint = build_joint_pairing_unitary::<T>(&images, q, k)?;
        Ok(Self { q, k, images, v_joint })
    }

    pub fn num_qubits(&self) -> usize {
        6 + self.k
    }

    pub fn joint_pairing_unitary(&self) -> &DenseMatrix<T> {
        &self.v_joint
    }

    fn acceptor(&self, i: usize) -> usize {
        6 + (i % self.q)
    }

    fn donor(&self, i: usize) -> usize {
        6 + self.q + (i % (self.k - self.q))
    }

    /// The joint pipeline for one ordered base pair: recognition on both
    /// registers, the reordering swap network, the joint pairing unitary,
    /// the Bell-measurement rotations with their feedforward corrections,
    /// and the final bond stage — every step proton-conserving.
    pub fn pipeline(&self, template: Nucleobase, candidate: Nucleobase) -> Result<JointPipeline<T>> {
        self.pipeline_with_angles(template, candidate, default_theta(), default_phi())
    }

    /// Same pipeline with explicit recognition angles. The recognition
    /// unitary is sector-preserving for every angle pair, so the audit
    /// outcome does not depend on them.
    pub fn pipeline_with_angles(
        &self,
        template: Nucleobase,
        candidate: Nucleobase,
        theta: T,
        phi: T,
    ) -> Result<JointPipeline<T>> {
        let n = self.num_qubits();
        let enzyme = EnzymeSite::<T>::new(self.q, self.k)?;
        let t_in: StateVector<T> =
            crate::basecode::wc_basis_state(TautomerForm::usual(template))?;
        let c_in: StateVector<T> =
            crate::basecode::wc_basis_state(TautomerForm::usual(candidate))?;
        let initial = t_in.tensor(&c_in)?.tensor(&enzyme.state)?;

        let mut gates: Vec<(String, GateOp<T>)> = Vec::new();
        gates.push((
            "recognize template".into(),
            recognition_gate(theta, phi, [0, 1, 2])?,
        ));
        gates.push((
            "recognize candidate".into(),
            recognition_gate(theta, phi, [3, 4, 5])?,
        ));
        for (a, b) in permutation_swaps(&INTERLEAVE) {
            gates.push((format!("reorder swap ({a},{b})"), swap(a, b)));
        }
        gates.push((
            "pairing unitary (joint)".into(),
            GateOp::custom_unchecked(self.v_joint.clone(), (0..n).collect())
                .tagged(ChemTag::Composite),
        ));

        let image = self.images[&(template.to_char(), candidate.to_char())];
        // q6 after the pairing unitary is image.tail.1; it selects the
        // feedforward target: β01 when |1⟩, β11 when |0⟩.
        let target = if image.tail.1 == 1 {
            crate::bell::BellLabel::B01
        } else {
            crate::bell::BellLabel::B11
        };
        for (idx, (first, second, bell)) in
            [(0usize, 1usize, image.pair1), (2, 3, image.pair2)].iter().enumerate()
        {
            let tag = idx + 1;
            let ex = controlled_proton_exchange(*first, *second, self.donor(idx))?;
            let bond = bond_givens_gate(*first, self.acceptor(idx))?;
            gates.push((format!("pair{tag} bell pre-rotation (proton exchange)"), ex.clone()));
            gates.push((format!("pair{tag} bell pre-rotation (bond)"), bond.clone()));
            gates.push((format!("pair{tag} bell un-rotation (bond)"), bond));
            gates.push((format!("pair{tag} bell un-rotation (proton exchange)"), ex));
            if bell.phase_bit != target.phase_bit {
                gates.push((
                    format!("pair{tag} feedforward phase correction"),
                    pauli_z(*first).tagged(ChemTag::Antibonding),
                ));
            }
            if bell.amplitude_bit != target.amplitude_bit {
                gates.push((
                    format!("pair{tag} feedforward proton correction"),
                    swap(*second, self.donor(idx)).tagged(ChemTag::ProtonTunneling),
                ));
            }
        }

        // Final stage: the fifth qubit bonds through the enzyme, then the
        // sixth exchanges a proton conditioned on it.
        let tail_bond_partner = if image.tail.0 == 1 {
            self.acceptor(0)
        } else {
            self.donor(0)
        };
        gates.push((
            "tail bond rotation".into(),
            bond_givens_gate(4, tail_bond_partner)?,
        ));
        let tail_exchange_partner = if image.tail.1 == 1 {
            self.acceptor(1)
        } else {
            self.donor(1)
        };
        gates.push((
            "tail controlled proton exchange".into(),
            controlled_proton_exchange(4, 5, tail_exchange_partner)?,
        ));

        Ok(JointPipeline {
            template,
            candidate,
            initial,
            gates,
            num_qubits: n,
        })
    }

    /// A pipeline with a deliberately uncompensated bit flip inserted at
    /// `position`; the audit must flag it.
    pub fn pipeline_with_fault(
        &self,
        template: Nucleobase,
        candidate: Nucleobase,
        position: usize,
    ) -> Result<JointPipeline<T>> {
        self.pipeline_with_fault_at_angles(template, candidate, position, default_theta(), default_phi())
    }

    pub fn pipeline_with_fault_at_angles(
        &self,
        template: Nucleobase,
        candidate: Nucleobase,
        position: usize,
        theta: T,
        phi: T,
    ) -> Result<JointPipeline<T>> {
        let mut p = self.pipeline_with_angles(template, candidate, theta, phi)?;
        let at = position.min(p.gates.len());
        p.gates.insert(
            at,
            ("injected fault: bare X".into(), pauli_x(0).tagged(ChemTag::ProtonTunneling)),
        );
        Ok(p)
    }
}

/// Decompose a position permutation into transpositions, selection-sort
/// style: at most n−1 swaps, deterministic.
pub fn permutation_swaps(perm: &[usize]) -> Vec<(usize, usize)> {
    let n = perm.len();
    // occupant[p] = original qubit currently sitting at position p.
    let mut occupant: Vec<usize> = (0..n).collect();
    let mut position: Vec<usize> = (0..n).collect();
    let mut swaps = Vec::new();
    for original in 0..n {
        let target = perm[original];
        let current = position[original];
        if current != target {
            let other = occupant[target];
            swaps.push((current, target));
            occupant.swap(current, target);
            position[original] = target;
            position[other] = current;
        }
    }
    swaps
}

/// Prescribed (input, output) joint vector pairs for one proton sector.
type SectorPrescriptions<T> = Vec<(Vec<Complex<T>>, Vec<Complex<T>>)>;

fn build_joint_pairing_unitary<T: Real>(
    images: &BTreeMap<(char, char), PairImage>,
    q: usize,
    k: usize,
) -> Result<DenseMatrix<T>> {
    let n = 6 + k;
    let dim = 1usize << n;
    let p0 = k - q;
    let enzyme_pattern = |protons: usize| -> usize { (1usize << protons) - 1 };

    // Prescribed joint input/output pairs, grouped by total proton count.
    let mut by_sector: BTreeMap<usize, SectorPrescriptions<T>> = BTreeMap::new();
    for t in BASES {
        for c in BASES {
            let assembled =
                assemble_pair(&recognize_default::<T>(t), &recognize_default::<T>(c))?.state;
            let u_in = base_weight(t) + base_weight(c);
            let w_total = u_in + p0;
            let mut jin = vec![czero::<T>(); dim];
            for (i6, amp) in assembled.amplitudes().iter().enumerate() {
                if amp.norm() > T::zero() {
                    jin[(i6 << k) | enzyme_pattern(p0)] = *amp;
                }
            }
            let image = images[&(t.to_char(), c.to_char())].state::<T>();
            let mut jout = vec![czero::<T>(); dim];
            for (i6, amp) in image.amplitudes().iter().enumerate() {
                if amp.norm() > T::zero() {
                    let u = i6.count_ones() as usize;
                    if u > w_total || w_total - u > k {
                        return Err(Error::NoFeasibleSlot(format!("{t}·{c}")));
                    }
                    jout[(i6 << k) | enzyme_pattern(w_total - u)] = *amp;
                }
            }
            by_sector.entry(w_total).or_default().push((jin, jout));
        }
    }

    // Complete each proton-number sector independently, so the assembled
    // unitary is block-diagonal across sectors.
    let mut v = DenseMatrix::<T>::zeros(dim);
    for m in 0..=n {
        let sector: Vec<usize> = (0..dim).filter(|i| i.count_ones() as usize == m).collect();
        let local = |full: &Vec<Complex<T>>| -> Vec<Complex<T>> {
            sector.iter().map(|&g| full[g]).collect()
        };
        let prescribed = by_sector.get(&m);
        let ins: Vec<Vec<Complex<T>>> = prescribed
            .map(|v| v.iter().map(|(jin, _)| local(jin)).collect())
            .unwrap_or_default();
        let outs: Vec<Vec<Complex<T>>> = prescribed
            .map(|v| v.iter().map(|(_, jout)| local(jout)).collect())
            .unwrap_or_default();
        let in_basis = complete_orthonormal(&ins, sector.len());
        let out_basis = complete_orthonormal(&outs, sector.len());
        for (iv, ov) in in_basis.iter().zip(&out_basis) {
            for (li, &gi) in sector.iter().enumerate() {
                if ov[li] == czero() {
                    continue;
                }
                for (lj, &gj) in sector.iter().enumerate() {
                    v[(gi, gj)] = v[(gi, gj)] + ov[li] * iv[lj].conj();
                }
            }
        }
    }
    Ok(v)
}
