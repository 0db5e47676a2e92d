//! Random-stream discipline for the Monte Carlo runners.
//!
//! Every batch runner derives one independent ChaCha stream per trial index
//! from a master seed. Trials can then run in any order, on any number of
//! threads, and still consume exactly the same random numbers, so aggregate
//! counts are bit-identical across runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator handed to samplers; one per trial.
pub type TrialRng = ChaCha8Rng;

/// Builds the master generator for a run. Never drawn from directly; trials
/// get clones on their own streams via [`trial`].
pub fn master(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The generator for one trial: the master's key on stream `index`.
pub fn trial(master: &TrialRng, index: u64) -> TrialRng {
    let mut rng = master.clone();
    rng.set_stream(index);
    rng
}

/// Derives an independent sub-seed for a tagged sub-experiment (one CHSH
/// expectation out of four, one sweep row out of many). Splitmix64 finalizer.
pub fn derive(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
