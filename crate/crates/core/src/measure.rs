//! Pauli-basis measurement statistics on two qubits.
//!
//! Each setting measures the same Pauli axis on both sides (`A_k ⊗ B_k`).
//! Outcome `0` is the `+1` eigenvalue and outcome `1` the `-1` eigenvalue.
//! Cells are indexed `(i, j)` with `i` Alice's outcome, flattened as
//! `00, 01, 10, 11`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{paulis, ComplexMatrix, DensityMatrix};
use crate::rng::{poisson, stream_rng};

/// Tolerance on `Σ p = 1` and on marginal consistency.
pub const PROBABILITY_TOLERANCE: f64 = 1e-10;
/// Negative probabilities above this are rounding noise and are clamped to zero.
const NEGATIVE_NOISE: f64 = -1e-12;

pub const OUTCOMES: [&str; 4] = ["00", "01", "10", "11"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn pauli(self) -> ComplexMatrix {
        let [x, y, z] = paulis();
        match self {
            Axis::X => x,
            Axis::Y => y,
            Axis::Z => z,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown setting {other:?}, expected x, y or z")),
        }
    }
}

/// Joint outcome probabilities for one setting, with Alice's marginal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointDistribution {
    axis: Axis,
    p: [f64; 4],
    alice_marginal: [f64; 2],
}

impl JointDistribution {
    pub fn new(axis: Axis, p: [f64; 4]) -> Result<Self> {
        let mut cells = p;
        for x in cells.iter_mut() {
            if !x.is_finite() || *x < NEGATIVE_NOISE {
                return Err(Error::InvalidDistribution(format!(
                    "cell probability {x} on axis {axis} is negative or not finite"
                )));
            }
            *x = x.max(0.0);
        }
        let total: f64 = cells.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities on axis {axis} sum to {total}"
            )));
        }
        Ok(Self {
            axis,
            p: cells,
            alice_marginal: [cells[0] + cells[1], cells[2] + cells[3]],
        })
    }

    pub fn uniform(axis: Axis) -> Self {
        Self::new(axis, [0.25; 4]).expect("uniform is valid")
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    /// Cells in `00, 01, 10, 11` order.
    pub fn cells(&self) -> [f64; 4] {
        self.p
    }

    pub fn p(&self, i: usize, j: usize) -> f64 {
        self.p[2 * i + j]
    }

    pub fn alice_marginal(&self) -> [f64; 2] {
        self.alice_marginal
    }
}

/// Coincidence counts for one setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    axis: Axis,
    counts: [u64; 4],
    total: u64,
}

impl CountRecord {
    pub fn new(axis: Axis, counts: [u64; 4]) -> Self {
        Self {
            axis,
            counts,
            total: counts.iter().sum(),
        }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn counts(&self) -> [u64; 4] {
        self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// `(Π⁰, Π¹) = ((I + σ)/2, (I - σ)/2)`.
pub fn pauli_projectors(axis: Axis) -> [ComplexMatrix; 2] {
    let id = ComplexMatrix::identity(2);
    let sigma = axis.pauli();
    let half = Complex64::new(0.5, 0.0);
    [
        id.add(&sigma).expect("2x2").scale(half),
        id.sub(&sigma).expect("2x2").scale(half),
    ]
}

/// `p_ij = tr(ρ Π_i ⊗ Π_j)` for a two-qubit state.
pub fn joint_distribution(rho: &DensityMatrix, axis: Axis) -> Result<JointDistribution> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let proj = pauli_projectors(axis);
    let mut p = [0.0; 4];
    for i in 0..2 {
        for j in 0..2 {
            let op = proj[i].kron(&proj[j]);
            p[2 * i + j] = rho.matrix().trace_product(&op)?.re;
        }
    }
    JointDistribution::new(axis, p)
}

/// `⟨σ_k ⊗ σ_k⟩ = p00 - p01 - p10 + p11`.
pub fn correlation(jd: &JointDistribution) -> f64 {
    let [p00, p01, p10, p11] = jd.p;
    p00 - p01 - p10 + p11
}

/// Joint distributions for the three Pauli settings, in `x, y, z` order.
pub fn pauli_settings(rho: &DensityMatrix) -> Result<[JointDistribution; 3]> {
    Ok([
        joint_distribution(rho, Axis::X)?,
        joint_distribution(rho, Axis::Y)?,
        joint_distribution(rho, Axis::Z)?,
    ])
}

/// Independent Poisson draws with means `mean_total · p_ij`, on stream 0 of `seed`.
pub fn simulate_counts(jd: &JointDistribution, mean_total: u64, seed: u64) -> CountRecord {
    simulate_counts_on_stream(jd, mean_total, seed, 0)
}

pub fn simulate_counts_on_stream(
    jd: &JointDistribution,
    mean_total: u64,
    seed: u64,
    stream: u64,
) -> CountRecord {
    let mut rng = stream_rng(seed, stream);
    let n = mean_total as f64;
    let counts = jd.p.map(|p| poisson(&mut rng, n * p));
    CountRecord::new(jd.axis, counts)
}

/// Relative frequencies `count_ij / total`.
pub fn estimate_distribution(c: &CountRecord) -> Result<JointDistribution> {
    if c.total == 0 {
        return Err(Error::EmptyRecord(c.axis));
    }
    let n = c.total as f64;
    JointDistribution::new(c.axis, c.counts.map(|k| k as f64 / n))
}
