//! Complex-matrix kernel and two-qubit density matrices.
//!
//! Basis convention: `H ↦ |0⟩`, `V ↦ |1⟩`, with the standard Pauli matrices
//! (`σ_y` has `-i` in the upper-right entry). Two-qubit operators are ordered
//! Alice ⊗ Bob.

mod eigen;
mod matrix;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

pub use eigen::{
    hermitian_eigendecompose, HermitianEigen, HERMITIAN_TOLERANCE, JACOBI_MAX_SWEEPS,
    JACOBI_TOLERANCE,
};
pub use matrix::{pauli_x, pauli_y, pauli_z, paulis, ComplexMatrix};

use crate::error::{Error, Result};

pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Smallest eigenvalue tolerated by the positivity check.
pub const PSD_TOLERANCE: f64 = -1e-9;
/// Eigenvalues below this fraction of the largest one are treated as zero
/// when taking matrix square roots.
const SQRT_FLOOR: f64 = 1e-14;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// `|ψ⟩⟨ψ|` for a vector normalised here.
    pub fn pure(state: &[Complex64]) -> Result<Self> {
        let norm = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidDistribution(
                "state vector has zero norm".into(),
            ));
        }
        let normalised: Vec<Complex64> = state.iter().map(|z| z / norm).collect();
        validate_density(ComplexMatrix::projector(&normalised))
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Checks the density-matrix invariants and reports the first one that fails.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = m.trace();
    let trace_dev = (trace - Complex64::new(1.0, 0.0)).norm();
    if trace_dev > TRACE_TOLERANCE {
        return Err(Error::NotUnitTrace {
            trace: trace.re,
            deviation: trace_dev,
        });
    }
    let eig = hermitian_eigendecompose(&m)?;
    let min_eigenvalue = eig.values[0];
    if min_eigenvalue < PSD_TOLERANCE {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(DensityMatrix { matrix: m })
}

/// Parameters of `χ|φ⟩⟨φ| + (1-χ)I/4` with `|φ⟩ = cos2θ|00⟩ + sin2θ|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WernerLikeParams {
    theta: f64,
    chi: f64,
}

impl WernerLikeParams {
    /// Slack on the θ range so that `45f64.to_radians()` is accepted.
    const THETA_SLACK: f64 = 1e-12;

    pub fn new(theta: f64, chi: f64) -> Result<Self> {
        let max_theta = std::f64::consts::FRAC_PI_4;
        if !(theta.is_finite()
            && (-Self::THETA_SLACK..=max_theta + Self::THETA_SLACK).contains(&theta))
        {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi/4]",
            });
        }
        if !(chi.is_finite() && (0.0..=1.0).contains(&chi)) {
            return Err(Error::OutOfRange {
                name: "chi",
                value: chi,
                range: "[0, 1]",
            });
        }
        Ok(Self {
            theta: theta.clamp(0.0, max_theta),
            chi,
        })
    }

    pub fn from_degrees(theta_deg: f64, chi: f64) -> Result<Self> {
        Self::new(theta_deg.to_radians(), chi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn with_chi(&self, chi: f64) -> Result<Self> {
        Self::new(self.theta, chi)
    }
}

pub fn make_werner_like(p: WernerLikeParams) -> DensityMatrix {
    let (s, c) = (2.0 * p.theta).sin_cos();
    let zero = Complex64::new(0.0, 0.0);
    let phi = [Complex64::new(c, 0.0), zero, zero, Complex64::new(s, 0.0)];
    let pure = ComplexMatrix::projector(&phi).scale_real(p.chi);
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - p.chi) / 4.0);
    DensityMatrix {
        matrix: pure.add(&noise).expect("both operands are 4x4"),
    }
}

/// Local Bloch vectors and the spin correlation matrix of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochDecomposition {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [[f64; 3]; 3],
}

impl BlochDecomposition {
    /// Diagonal `(c_xx, c_yy, c_zz)`.
    pub fn diagonal_correlations(&self) -> [f64; 3] {
        [self.c[0][0], self.c[1][1], self.c[2][2]]
    }

    /// `(I⊗I + a·σ⊗I + I⊗b·σ + Σ c_ij σ_i⊗σ_j) / 4`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let id = ComplexMatrix::identity(2);
        let sigma = paulis();
        let mut m = ComplexMatrix::identity(4);
        let mut acc = |term: ComplexMatrix, w: f64| {
            if w != 0.0 {
                m = m.add(&term.scale_real(w)).expect("4x4");
            }
        };
        for i in 0..3 {
            acc(sigma[i].kron(&id), self.a[i]);
            acc(id.kron(&sigma[i]), self.b[i]);
            for j in 0..3 {
                acc(sigma[i].kron(&sigma[j]), self.c[i][j]);
            }
        }
        m.scale_real(0.25)
    }
}

pub fn bloch_decompose(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let id = ComplexMatrix::identity(2);
    let sigma = paulis();
    let expect =
        |op: &ComplexMatrix| -> f64 { rho.matrix.trace_product(op).expect("4x4 operators").re };
    let mut out = BlochDecomposition {
        a: [0.0; 3],
        b: [0.0; 3],
        c: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        out.a[i] = expect(&sigma[i].kron(&id));
        out.b[i] = expect(&id.kron(&sigma[i]));
        for j in 0..3 {
            out.c[i][j] = expect(&sigma[i].kron(&sigma[j]));
        }
    }
    Ok(out)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Negative eigenvalues (rounding noise) are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigendecompose(m)?;
    let floor = SQRT_FLOOR * eig.values.last().copied().unwrap_or(0.0).max(0.0);
    Ok(eig.map_values(|x| if x <= floor { 0.0 } else { x.sqrt() }))
}

/// Uhlmann fidelity `[tr √(√ρ σ √ρ)]²`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let sqrt_rho = psd_sqrt(&rho.matrix)?;
    let inner = sqrt_rho
        .matmul(&sigma.matrix)?
        .matmul(&sqrt_rho)?
        .hermitian_part();
    let eig = hermitian_eigendecompose(&inner)?;
    let floor = SQRT_FLOOR * eig.values.last().copied().unwrap_or(0.0).max(0.0);
    let root_trace: f64 = eig
        .values
        .iter()
        .map(|&x| if x <= floor { 0.0 } else { x.sqrt() })
        .sum();
    Ok((root_trace * root_trace).clamp(0.0, 1.0))
}

/// Random Hermitian matrix with independent standard-normal real and imaginary parts.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for j in (i + 1)..n {
            let z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random density matrix `G G† / tr(G G†)` with `G` a `dim x rank` complex Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> DensityMatrix {
    let rank = rank.clamp(1, dim);
    let data = (0..dim * rank)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let g = ComplexMatrix::new(dim, rank, data).expect("finite gaussian entries");
    let gg = g
        .matmul(&g.adjoint())
        .expect("conformable")
        .hermitian_part();
    let tr = gg.trace().re;
    DensityMatrix {
        matrix: gg.scale_real(1.0 / tr),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_8};

    fn bell() -> DensityMatrix {
        let z = Complex64::new(0.0, 0.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        DensityMatrix::pure(&[h, z, z, h]).unwrap()
    }

    fn werner(theta: f64, chi: f64) -> DensityMatrix {
        make_werner_like(WernerLikeParams::new(theta, chi).unwrap())
    }

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!((got - want).abs() <= tol, "got {got}, want {want}");
    }

    #[test]
    fn validates_maximally_mixed_and_bell() {
        assert!(validate_density(ComplexMatrix::identity(4).scale_real(0.25)).is_ok());
        assert!(validate_density(bell().matrix().clone()).is_ok());
    }

    #[test]
    fn reports_negative_eigenvalue() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0 + 1e-3, 0.0, 0.0, -1e-3]);
        match validate_density(m).unwrap_err() {
            Error::NotPositive { min_eigenvalue } => assert_close(min_eigenvalue, -1e-3, 1e-15),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn reports_trace_and_hermiticity() {
        let m = ComplexMatrix::identity(4).scale_real(0.3);
        assert!(matches!(
            validate_density(m).unwrap_err(),
            Error::NotUnitTrace { .. }
        ));
        let mut m = ComplexMatrix::identity(4).scale_real(0.25);
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        match validate_density(m).unwrap_err() {
            Error::NotHermitian { deviation } => assert_close(deviation, 0.1, 1e-15),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn werner_at_pi_over_8_is_bell_state() {
        let rho = werner(FRAC_PI_8, 1.0);
        assert!(rho.matrix().max_abs_diff(bell().matrix()) < 1e-15);
    }

    #[test]
    fn werner_with_zero_weight_is_maximally_mixed() {
        for theta in [0.0, 0.1, FRAC_PI_8, std::f64::consts::FRAC_PI_4] {
            let rho = werner(theta, 0.0);
            assert!(
                rho.matrix()
                    .max_abs_diff(DensityMatrix::maximally_mixed(4).matrix())
                    < 1e-15
            );
        }
    }

    #[test]
    fn werner_params_are_range_checked() {
        assert!(WernerLikeParams::new(-0.1, 0.5).is_err());
        assert!(WernerLikeParams::new(0.9, 0.5).is_err());
        assert!(WernerLikeParams::new(0.1, 1.1).is_err());
        assert!(WernerLikeParams::new(0.1, f64::NAN).is_err());
        assert!(WernerLikeParams::from_degrees(45.0, 1.0).is_ok());
    }

    #[test]
    fn bloch_of_seven_and_a_half_degrees() {
        let rho = werner(7.5_f64.to_radians(), 1.0);
        let bd = bloch_decompose(&rho).unwrap();
        let cos30 = 30f64.to_radians().cos();
        for (got, want) in bd.a.iter().zip([0.0, 0.0, cos30]) {
            assert_close(*got, want, 1e-12);
        }
        for (got, want) in bd.b.iter().zip([0.0, 0.0, cos30]) {
            assert_close(*got, want, 1e-12);
        }
        let c = [[0.5, 0.0, 0.0], [0.0, -0.5, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_close(bd.c[i][j], c[i][j], 1e-12);
            }
        }
    }

    #[test]
    fn bloch_of_reference_states() {
        let mixed = bloch_decompose(&DensityMatrix::maximally_mixed(4)).unwrap();
        assert_eq!(mixed.a, [0.0; 3]);
        assert_eq!(mixed.b, [0.0; 3]);
        assert_eq!(mixed.c, [[0.0; 3]; 3]);

        let b = bloch_decompose(&bell()).unwrap();
        assert_eq!(
            b.diagonal_correlations().map(|x| x.round()),
            [1.0, -1.0, 1.0]
        );

        let w = bloch_decompose(&werner(FRAC_PI_8, 0.5)).unwrap();
        for (got, want) in w.diagonal_correlations().iter().zip([0.5, -0.5, 0.5]) {
            assert_close(*got, want, 1e-12);
        }
        assert!(w.a.iter().chain(&w.b).all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn bloch_rejects_single_qubit() {
        let err = bloch_decompose(&DensityMatrix::maximally_mixed(2)).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 4,
                found: 2
            }
        ));
    }

    #[test]
    fn fidelity_examples() {
        let bell = bell();
        let mixed = DensityMatrix::maximally_mixed(4);
        assert_close(fidelity(&bell, &bell).unwrap(), 1.0, 1e-12);
        assert_close(fidelity(&bell, &mixed).unwrap(), 0.25, 1e-12);
        assert_close(fidelity(&mixed, &bell).unwrap(), 0.25, 1e-12);
        for chi in [0.0, 0.25, 0.5, 0.9] {
            let w = werner(FRAC_PI_8, chi);
            assert_close(fidelity(&bell, &w).unwrap(), (1.0 + 3.0 * chi) / 4.0, 1e-10);
        }
        assert!(matches!(
            fidelity(&bell, &DensityMatrix::maximally_mixed(2)).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn fidelity_is_symmetric_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rank = rng.random_range(1..=4);
            let r = random_density(&mut rng, 4, rank);
            let s = random_density(&mut rng, 4, 4);
            let f1 = fidelity(&r, &s).unwrap();
            let f2 = fidelity(&s, &r).unwrap();
            assert!((0.0..=1.0).contains(&f1));
            assert!((f1 - f2).abs() < 1e-9, "{f1} vs {f2}");
        }
    }

    #[test]
    fn random_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for rank in 1..=4 {
            let rho = random_density(&mut rng, 4, rank);
            assert!(validate_density(rho.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = random_density(&mut rng, 4, 4);
        let root = psd_sqrt(rho.matrix()).unwrap();
        assert!(root.matmul(&root).unwrap().max_abs_diff(rho.matrix()) < 1e-12);
    }
}
