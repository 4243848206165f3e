//! Seeded random streams.
//!
//! A master seed keys a ChaCha8 generator. Each consumer gets its own
//! lane (part of the key) and each trial its own ChaCha stream id, so trial
//! `i` draws the same numbers no matter how many trials run or in what
//! order they execute.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const REQUEST_LANE: u64 = 0;
const PLACEMENT_LANE_BASE: u64 = 1 << 32;
const FUZZ_LANE: u64 = 2 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamSeed {
    seed: u64,
}

impl StreamSeed {
    pub fn new(seed: u64) -> Self {
        StreamSeed { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Arbitrary `(lane, trial)` substream.
    pub fn stream(&self, lane: u64, trial: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&lane.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(trial);
        rng
    }

    /// Request stream of a trial, shared by every policy in that trial.
    pub fn requests(&self, trial: u64) -> ChaCha8Rng {
        self.stream(REQUEST_LANE, trial)
    }

    /// Placement stream of policy number `policy` within a trial.
    pub fn placement(&self, trial: u64, policy: u64) -> ChaCha8Rng {
        self.stream(PLACEMENT_LANE_BASE + policy, trial)
    }

    /// Stream for the decodability fuzzer.
    pub fn fuzz(&self, trial: u64) -> ChaCha8Rng {
        self.stream(FUZZ_LANE, trial)
    }
}
