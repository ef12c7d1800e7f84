//! Benchmark fixtures shared by the criterion suites.

use steerq_core::expio::simulate_record;
use steerq_core::{ExperimentRecord, WernerLikeParams};

/// Simulated counts for a Werner state at `chi`, θ = 22.5°.
pub fn werner_record(chi: f64, shots: u64) -> ExperimentRecord {
    let params = WernerLikeParams::from_degrees(22.5, chi).expect("valid parameters");
    simulate_record(params, shots, 42).expect("simulation succeeds")
}
