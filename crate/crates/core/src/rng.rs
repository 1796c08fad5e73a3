//! Deterministic random streams.
//!
//! Every stream is ChaCha20 keyed by the 64-bit seed (little-endian, zero
//! padded to 32 bytes) with the ChaCha stream id set to the substream index.
//! Uniform doubles take the top 53 bits of each 64-bit output. The same
//! (seed, substream) pair yields the same sequence on any platform and at
//! any degree of parallelism.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

pub struct Stream(ChaCha20Rng);

impl Stream {
    pub fn new(seed: u64, substream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha20Rng::from_seed(key);
        rng.set_stream(substream);
        Self(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}
