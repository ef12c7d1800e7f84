//! Seeded random streams and the Poisson sampler used for count simulation.
//!
//! Every random draw in the crate comes from [`stream_rng`]: a ChaCha8
//! generator keyed by a 64-bit master seed, with an independent 64-bit stream
//! index. Work item `i` of a parallel loop uses stream `i`, so results do not
//! depend on thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Means at or above this use the rounded normal approximation.
pub const POISSON_NORMAL_CUTOFF: f64 = 30.0;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws from Poisson(`mean`).
///
/// Sequential inversion below [`POISSON_NORMAL_CUTOFF`], otherwise
/// `round(mean + sqrt(mean) * Z)` clamped at zero.
pub fn poisson<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    if mean < POISSON_NORMAL_CUTOFF {
        let u: f64 = rng.random();
        let mut k = 0u64;
        let mut pmf = (-mean).exp();
        let mut cdf = pmf;
        // Past ~mean + 40 sigma the cdf is 1 to double precision.
        while u > cdf && pmf > 0.0 {
            k += 1;
            pmf *= mean / k as f64;
            cdf += pmf;
        }
        k
    } else {
        let z: f64 = rng.sample(StandardNormal);
        (mean + mean.sqrt() * z).round().max(0.0) as u64
    }
}
