//! Gate primitives and their application to state vectors.

use crate::error::{Error, Result};
use crate::float::{cone, czero, real, tol_algebraic, Real};
use crate::linalg::DenseMatrix;
use crate::state::{index_bit, StateVector};
use num_complex::Complex;
use serde::Serialize;

/// Chemical reading of a gate in the enzyme/base picture. Descriptive
/// metadata only; it never affects the numerics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChemTag {
    ProtonTunneling,
    HydrogenBonding,
    Antibonding,
    Composite,
}

/// The unitary primitives used by the model.
///
/// `Sp(θ)` is the superposition matrix R(θ)·Z and `SpPrime(θ)` is Z·R(θ),
/// with R(θ) the real plane rotation. At θ = arccos(1/√2) the Sp matrix is
/// the Hadamard.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind<T: Real> {
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    Rotation(T),
    Sp(T),
    SpPrime(T),
    Swap,
    Custom(DenseMatrix<T>),
}

impl<T: Real> GateKind<T> {
    /// Number of target qubits the kind acts on.
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Swap => 2,
            GateKind::Custom(m) => {
                debug_assert!(m.dim().is_power_of_two());
                m.dim().trailing_zeros() as usize
            }
            _ => 1,
        }
    }

    /// The kind's base matrix on its own target space.
    pub fn matrix(&self) -> DenseMatrix<T> {
        let h = real::<T>(std::f64::consts::FRAC_1_SQRT_2);
        match self {
            GateKind::PauliX => DenseMatrix::from_rows(vec![
                vec![czero(), cone()],
                vec![cone(), czero()],
            ]),
            GateKind::PauliY => DenseMatrix::from_rows(vec![
                vec![czero(), Complex::new(T::zero(), -T::one())],
                vec![Complex::new(T::zero(), T::one()), czero()],
            ]),
            GateKind::PauliZ => DenseMatrix::from_rows(vec![
                vec![cone(), czero()],
                vec![czero(), -cone::<T>()],
            ]),
            GateKind::Hadamard => DenseMatrix::from_rows(vec![
                vec![Complex::new(h, T::zero()), Complex::new(h, T::zero())],
                vec![Complex::new(h, T::zero()), Complex::new(-h, T::zero())],
            ]),
            GateKind::Rotation(theta) => {
                let (c, s) = ((*theta).cos(), (*theta).sin());
                DenseMatrix::from_rows(vec![
                    vec![Complex::new(c, T::zero()), Complex::new(-s, T::zero())],
                    vec![Complex::new(s, T::zero()), Complex::new(c, T::zero())],
                ])
            }
            GateKind::Sp(theta) => {
                // R(θ)·Z
                let (c, s) = ((*theta).cos(), (*theta).sin());
                DenseMatrix::from_rows(vec![
                    vec![Complex::new(c, T::zero()), Complex::new(s, T::zero())],
                    vec![Complex::new(s, T::zero()), Complex::new(-c, T::zero())],
                ])
            }
            GateKind::SpPrime(theta) => {
                // Z·R(θ)
                let (c, s) = ((*theta).cos(), (*theta).sin());
                DenseMatrix::from_rows(vec![
                    vec![Complex::new(c, T::zero()), Complex::new(-s, T::zero())],
                    vec![Complex::new(-s, T::zero()), Complex::new(-c, T::zero())],
                ])
            }
            GateKind::Swap => {
                let mut m = DenseMatrix::zeros(4);
                m[(0, 0)] = cone();
                m[(1, 2)] = cone();
                m[(2, 1)] = cone();
                m[(3, 3)] = cone();
                m
            }
            GateKind::Custom(m) => m.clone(),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            GateKind::PauliX => "X",
            GateKind::PauliY => "Y",
            GateKind::PauliZ => "Z",
            GateKind::Hadamard => "H",
            GateKind::Rotation(_) => "R",
            GateKind::Sp(_) => "SP",
            GateKind::SpPrime(_) => "SP'",
            GateKind::Swap => "SWAP",
            GateKind::Custom(_) => "U",
        }
    }

    fn default_tag(&self) -> ChemTag {
        match self {
            GateKind::PauliX | GateKind::Swap => ChemTag::ProtonTunneling,
            GateKind::Hadamard | GateKind::Sp(_) | GateKind::SpPrime(_) | GateKind::Rotation(_) => {
                ChemTag::HydrogenBonding
            }
            _ => ChemTag::Composite,
        }
    }
}

/// A gate bound to target qubits, optionally controlled.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp<T: Real> {
    pub kind: GateKind<T>,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
    pub chem_tag: ChemTag,
}

impl<T: Real> GateOp<T> {
    pub fn new(kind: GateKind<T>, targets: Vec<usize>) -> Result<Self> {
        Self::with_controls(kind, targets, Vec::new())
    }

    pub fn with_controls(
        kind: GateKind<T>,
        targets: Vec<usize>,
        controls: Vec<usize>,
    ) -> Result<Self> {
        let arity = kind.arity();
        if targets.len() != arity {
            return Err(Error::MatrixDimMismatch {
                dim: 1 << arity,
                targets: targets.len(),
            });
        }
        let mut all = targets.clone();
        all.extend(&controls);
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err(Error::OverlappingQubits);
        }
        if let GateKind::Custom(m) = &kind {
            if !m.dim().is_power_of_two() {
                return Err(Error::MatrixDimMismatch {
                    dim: m.dim(),
                    targets: targets.len(),
                });
            }
            m.ensure_unitary(tol_algebraic::<T>() * real(m.dim() as f64))?;
        }
        let chem_tag = kind.default_tag();
        Ok(Self {
            kind,
            targets,
            controls,
            chem_tag,
        })
    }

    pub fn custom(matrix: DenseMatrix<T>, targets: Vec<usize>) -> Result<Self> {
        Self::new(GateKind::Custom(matrix), targets)
    }

    /// Custom gate without the O(dim³) unitarity validation; callers must
    /// guarantee orthonormal columns by construction.
    pub(crate) fn custom_unchecked(matrix: DenseMatrix<T>, targets: Vec<usize>) -> Self {
        debug_assert_eq!(matrix.dim(), 1 << targets.len());
        let kind = GateKind::Custom(matrix);
        let chem_tag = kind.default_tag();
        Self {
            kind,
            targets,
            controls: Vec::new(),
            chem_tag,
        }
    }

    pub fn tagged(mut self, tag: ChemTag) -> Self {
        self.chem_tag = tag;
        self
    }

    /// Human label for transcripts and audit reports, e.g. `X@[2]c[0]`.
    pub fn label(&self) -> String {
        let mut s = format!("{}@{:?}", self.kind.name(), self.targets);
        if !self.controls.is_empty() {
            s.push_str(&format!("c{:?}", self.controls));
        }
        s
    }

    fn check_range(&self, n: usize) -> Result<()> {
        for &q in self.targets.iter().chain(&self.controls) {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, qubits: n });
            }
        }
        Ok(())
    }

    /// Apply the gate; controls must all read |1⟩ for the unitary to act on
    /// the target subspace. Returns a new state.
    pub fn apply(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        let n = state.num_qubits();
        self.check_range(n)?;
        let u = self.kind.matrix();
        let t = self.targets.len();
        let mut out = vec![czero::<T>(); state.dim()];
        for (idx, amp) in state.amplitudes().iter().enumerate() {
            if *amp == czero() {
                continue;
            }
            let active = self
                .controls
                .iter()
                .all(|&c| index_bit(idx, c, n) == 1);
            if !active {
                out[idx] = out[idx] + *amp;
                continue;
            }
            let mut col = 0usize;
            for (pos, &q) in self.targets.iter().enumerate() {
                col |= usize::from(index_bit(idx, q, n)) << (t - 1 - pos);
            }
            for row in 0..(1usize << t) {
                let entry = u[(row, col)];
                if entry == czero() {
                    continue;
                }
                let mut j = idx;
                for (pos, &q) in self.targets.iter().enumerate() {
                    let bit = (row >> (t - 1 - pos)) & 1;
                    let mask = 1usize << (n - 1 - q);
                    if bit == 1 {
                        j |= mask;
                    } else {
                        j &= !mask;
                    }
                }
                out[j] = out[j] + entry * *amp;
            }
        }
        Ok(StateVector::from_raw(n, out))
    }

    /// Dense 2ⁿ×2ⁿ matrix of the gate, assembled entry-by-entry and
    /// independently of the application kernel — the oracle route.
    pub fn expanded(&self, n: usize) -> Result<DenseMatrix<T>> {
        self.check_range(n)?;
        let u = self.kind.matrix();
        let t = self.targets.len();
        let mut m = DenseMatrix::zeros(1 << n);
        for col in 0..(1usize << n) {
            let active = self
                .controls
                .iter()
                .all(|&c| index_bit(col, c, n) == 1);
            if !active {
                m[(col, col)] = cone();
                continue;
            }
            let mut cpat = 0usize;
            for (pos, &q) in self.targets.iter().enumerate() {
                cpat |= usize::from(index_bit(col, q, n)) << (t - 1 - pos);
            }
            for rpat in 0..(1usize << t) {
                let mut row = col;
                for (pos, &q) in self.targets.iter().enumerate() {
                    let bit = (rpat >> (t - 1 - pos)) & 1;
                    let mask = 1usize << (n - 1 - q);
                    if bit == 1 {
                        row |= mask;
                    } else {
                        row &= !mask;
                    }
                }
                m[(row, col)] = u[(rpat, cpat)];
            }
        }
        Ok(m)
    }
}

/// Apply a sequence of gates left to right.
pub fn apply_circuit<T: Real>(
    state: &StateVector<T>,
    gates: &[GateOp<T>],
) -> Result<StateVector<T>> {
    let mut s = state.clone();
    for g in gates {
        s = g.apply(&s)?;
    }
    Ok(s)
}

/// Dense matrix of a whole circuit (product of expanded gate matrices).
pub fn circuit_matrix<T: Real>(gates: &[GateOp<T>], n: usize) -> Result<DenseMatrix<T>> {
    let mut m = DenseMatrix::identity(1 << n);
    for g in gates {
        m = g.expanded(n)?.mul(&m);
    }
    Ok(m)
}

/// Convenience constructors used throughout the protocol code.
pub fn pauli_x<T: Real>(q: usize) -> GateOp<T> {
    GateOp::new(GateKind::PauliX, vec![q]).expect("valid")
}

pub fn pauli_z<T: Real>(q: usize) -> GateOp<T> {
    GateOp::new(GateKind::PauliZ, vec![q]).expect("valid")
}

pub fn hadamard<T: Real>(q: usize) -> GateOp<T> {
    GateOp::new(GateKind::Hadamard, vec![q]).expect("valid")
}

pub fn cnot<T: Real>(control: usize, target: usize) -> GateOp<T> {
    GateOp::with_controls(GateKind::PauliX, vec![target], vec![control]).expect("valid")
}

pub fn swap<T: Real>(a: usize, b: usize) -> GateOp<T> {
    GateOp::new(GateKind::Swap, vec![a, b]).expect("valid")
}
