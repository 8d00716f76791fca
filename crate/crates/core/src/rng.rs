//! Seeded, splittable randomness. Every stochastic operation takes an explicit
//! seed so transcripts are bit-reproducible.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The simulator's named generator.
pub type SimRng = ChaCha8Rng;

/// Generator for a root seed.
pub fn seeded(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Derive an independent child generator; advancing the child never perturbs
/// the parent stream beyond the one split draw.
pub fn split(parent: &mut SimRng) -> SimRng {
    SimRng::seed_from_u64(parent.next_u64())
}

/// Derive a child seed (for transcripts that record seeds rather than states).
pub fn split_seed(parent: &mut SimRng) -> u64 {
    parent.next_u64()
}
