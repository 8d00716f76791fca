use thiserror::Error;

/// Errors surfaced by state, gate, and protocol operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count {requested} exceeds the cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },

    #[error("state needs at least one qubit")]
    EmptyRegister,

    #[error("amplitude vector length {len} is not a power of two matching {qubits} qubits")]
    BadAmplitudeLength { len: usize, qubits: usize },

    #[error("state norm² = {norm_sqr} is not 1 within tolerance")]
    NotNormalized { norm_sqr: f64 },

    #[error("qubit index {index} out of range for {qubits} qubits")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("gate targets and controls must be disjoint and distinct")]
    OverlappingQubits,

    #[error("custom matrix of dim {dim} is not unitary (defect {defect:e})")]
    NotUnitary { dim: usize, defect: f64 },

    #[error("matrix dim {dim} does not match {targets} target qubits")]
    MatrixDimMismatch { dim: usize, targets: usize },

    #[error("permutation is not a bijection on the qubit positions")]
    BadPermutation,

    #[error("both measurement outcomes have probability below 1e-14; state is corrupted")]
    CorruptedState,

    #[error("cut must be a nonempty proper subset of the qubits")]
    InvalidCut,

    #[error("basis string `{0}` must be over {{0,1}} with the expected length")]
    BadBasisString(String),

    #[error("tautomer mark ♯ is not defined for base {0}")]
    SharpNotAllowed(crate::basecode::Nucleobase),

    #[error("angles must lie strictly inside (0, π/2); got {0}")]
    AngleOutOfRange(f64),

    #[error("operation requires stage {expected:?} but pair is at {actual:?}")]
    WrongStage {
        expected: crate::pairing::Stage,
        actual: crate::pairing::Stage,
    },

    #[error("release is only defined for improper pairings")]
    ReleaseOnProper,

    #[error("enzyme site needs at least one acceptor and one donor for a compensated realization (q={q}, k={k})")]
    EnzymeTooSmall { q: usize, k: usize },

    #[error("invalid enzyme site: q={q} acceptors cannot exceed k={k} atoms")]
    BadEnzymeSite { q: usize, k: usize },

    #[error("sector λ={lambda} is not representable over {k} qubits")]
    BadSector { k: usize, lambda: i64 },

    #[error("no image slot satisfies the proton-count window for pair input {0}")]
    NoFeasibleSlot(String),
}

pub type Result<V> = std::result::Result<V, Error>;
