//! State-vector simulator for a base-pairing model built on intrabase and
//! interbase entanglement.
//!
//! The crate covers four layers:
//!
//! - [`state`] / [`gates`] / [`bell`]: a dense simulator with gate
//!   application at arbitrary qubit positions, qubit permutation, seeded
//!   projective measurement, and entanglement diagnostics;
//! - [`basecode`]: the static qubit encodings of the nucleobases, their
//!   tautomer forms, and the three recognition edges;
//! - [`recognition`] / [`pairing`] / [`protocol`]: the recognition unitary,
//!   pair assembly, and the three-step swapping protocol that turns
//!   intrabase entanglement into interbase Bell pairs;
//! - [`noise`] / [`joint`]: collective-dephasing sector arithmetic and the
//!   proton-conserving joint realization audited for decoherence-free
//!   operation.
//!
//! Everything numeric is generic over the real scalar (f32 or f64) through
//! the [`float::Real`] trait; the `*64` aliases below pin the double
//! precision instantiation used by the CLI and the test suites.

pub mod basecode;
pub mod bell;
pub mod error;
pub mod float;
pub mod gates;
pub mod joint;
pub mod linalg;
pub mod noise;
pub mod pairing;
pub mod protocol;
pub mod recognition;
pub mod rng;
pub mod state;

pub use basecode::{Edge, Family, Nucleobase, TautomerForm, TautomerMark};
pub use bell::{BellLabel, BondState, MeasurementRecord};
pub use error::{Error, Result};
pub use float::Real;
pub use gates::{ChemTag, GateKind, GateOp};
pub use pairing::{PairState, Stage, SwapEngine};
pub use protocol::{BellVariant, PairingOutcome, Verdict};
pub use recognition::RecognizedState;
pub use state::StateVector;

/// Double-precision aliases.
pub type StateVec64 = state::StateVector<f64>;
pub type Gate64 = gates::GateOp<f64>;
pub type Matrix64 = linalg::DenseMatrix<f64>;
pub type SwapEngine64 = pairing::SwapEngine<f64>;
pub type Recognized64 = recognition::RecognizedState<f64>;
pub type JointRealization64 = joint::JointRealization<f64>;

/// Single-precision aliases for narrow-scalar smoke testing.
pub type StateVec32 = state::StateVector<f32>;
pub type SwapEngine32 = pairing::SwapEngine<f32>;
