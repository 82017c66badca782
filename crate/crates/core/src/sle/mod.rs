//! Chordal SLE simulation with an optional group factor.

pub mod config;
pub mod group;
pub mod loewner;
pub mod mc;
pub mod trace;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use config::{GroupScheme, LoewnerScheme, SimConfig};
pub use group::{generator_check, GeneratorReport, GroupFactor};
pub use loewner::{kappa_zero_map, loewner_step, swallow_radius, LoewnerState};
pub use mc::{
    coset_onepoint_martingale_mc, indicial_exponent, indicial_residual, mc_harness, power_martingale_mc, Checkpoint,
    MartingaleReport, StreamOutcome, Verdict,
};
pub use trace::{driving_recovery, trace_from_driving, trace_generate, DrivingSample, TracePoint};

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
