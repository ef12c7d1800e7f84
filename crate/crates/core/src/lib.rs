//! Quantum steering detection for two-qubit states.
//!
//! The crate evaluates two families of steering criteria on states shared by
//! Alice and Bob:
//!
//! - the Tsallis-entropy criterion (SCG) built on general entropic uncertainty
//!   relations over the three Pauli bases, available both in its entropic form
//!   and in its direct probability form;
//! - the linear steering criterion (LSC), `sqrt(c_x^2 + c_y^2 + c_z^2) <= 1`.
//!
//! Both can be evaluated analytically from a density matrix or statistically
//! from coincidence counts, with Poisson parametric bootstrap error bars.
//!
//! Module map:
//!
//! - [`qmat`]: complex matrices, density matrices, Werner-like states, Bloch
//!   decomposition, Uhlmann fidelity.
//! - [`measure`]: Pauli projectors, joint outcome distributions, Poisson count
//!   simulation and estimation.
//! - [`qentropy`]: q-logarithm, Tsallis and Shannon entropies, the conditional
//!   entropy and correction term.
//! - [`criteria`]: criterion values, bounds, verdicts and the χ-threshold solver.
//! - [`expio`]: counts CSV, evaluation reports, curves and table comparison.
//!
//! ```
//! use steerq_core::{criteria, qmat::WernerLikeParams};
//!
//! let theta = 22.5_f64.to_radians();
//! let threshold = criteria::chi_threshold(theta, criteria::Criterion::scg(2.0).unwrap(), 1e-9).unwrap();
//! assert!((threshold.chi - 1.0 / 3f64.sqrt()).abs() < 1e-6);
//! # let _ = WernerLikeParams::new(theta, 0.5).unwrap();
//! ```

pub mod criteria;
mod error;
pub mod expio;
pub mod measure;
pub mod qentropy;
pub mod qmat;
pub mod rng;

pub use criteria::{Criterion, CriterionReport, Threshold};
pub use error::{Error, ErrorKind, Result};
pub use expio::{EvaluationReport, ExperimentRecord};
pub use measure::{Axis, CountRecord, JointDistribution};
pub use qentropy::{Distribution, TsallisParam};
pub use qmat::{BlochDecomposition, ComplexMatrix, DensityMatrix, WernerLikeParams};
