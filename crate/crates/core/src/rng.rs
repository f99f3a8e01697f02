//! Keyed random substreams.
//!
//! Every random draw in the crate comes from a ChaCha8 stream whose 256-bit
//! seed is built from the master seed and a small tuple of keys, so the
//! result of any block of work depends only on its keys and never on which
//! thread ran it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags that keep substreams for different jobs apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Directions = 1,
    Offsets = 2,
    Pairing = 3,
    Generator = 4,
    Test = 5,
}

pub type Rng = ChaCha8Rng;

/// Plain stream for a single seed.
pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream keyed by `(master, purpose, a, b)`.
pub fn substream(master: u64, purpose: Purpose, a: u64, b: u64) -> Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master.to_le_bytes());
    seed[8..16].copy_from_slice(&(purpose as u64).to_le_bytes());
    seed[16..24].copy_from_slice(&a.to_le_bytes());
    seed[24..].copy_from_slice(&b.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}
