//! Seeded randomness shared by every solver.
//!
//! Every random decision made by a solver is drawn from an [`RngStream`] that the caller
//! passes in explicitly. Child streams are a pure function of the parent seed and an index,
//! so any single repetition of an experiment can be replayed in isolation.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer, used to decorrelate derived seeds.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a seed from a parent seed and a path of indices.
pub fn derive_seed(parent: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(mix64(parent), |acc, &ix| mix64(acc ^ mix64(ix.wrapping_add(0xA5A5))))
}

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream determined by `(self.seed, index)` only; does not advance `self`.
    pub fn child(&self, index: u64) -> RngStream {
        RngStream::new(derive_seed(self.seed, &[index]))
    }

    /// Independent stream seeded from the next value of this stream.
    pub fn fork(&mut self) -> RngStream {
        let s = self.rng.next_u64();
        RngStream::new(mix64(s))
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}
