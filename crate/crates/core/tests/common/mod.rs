#![allow(dead_code)]

use rand::Rng;
use rand_distr::Exp1;
use steerq_core::qmat::{validate_density, BlochDecomposition};
use steerq_core::DensityMatrix;

/// Uniform point on the probability simplex.
pub fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Correlation diagonals of the four Bell states.
pub const BELL_CORNERS: [[f64; 3]; 4] = [
    [1.0, -1.0, 1.0],
    [-1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [-1.0, -1.0, -1.0],
];

/// Random Bell-diagonal state: `a = b = 0`, `c` diagonal inside the tetrahedron.
pub fn random_bell_diagonal<R: Rng>(rng: &mut R) -> (DensityMatrix, [f64; 3]) {
    let w = random_simplex(rng, 4);
    let mut c = [0.0; 3];
    for (wk, corner) in w.iter().zip(BELL_CORNERS) {
        for i in 0..3 {
            c[i] += wk * corner[i];
        }
    }
    let bd = BlochDecomposition {
        a: [0.0; 3],
        b: [0.0; 3],
        c: [[c[0], 0.0, 0.0], [0.0, c[1], 0.0], [0.0, 0.0, c[2]]],
    };
    (
        validate_density(bd.to_matrix()).expect("Bell mixtures are states"),
        c,
    )
}

/// SCG q=2 value of `χ|φ_θ⟩⟨φ_θ| + (1-χ)I/4` from its Bloch data, written out by hand.
pub fn werner_like_scg_q2(theta: f64, chi: f64) -> f64 {
    let m = chi * (4.0 * theta).cos();
    let cxy = chi * (4.0 * theta).sin();
    // x and y: unbiased marginals, correlation ±cxy
    let xy = 2.0 * (1.0 - cxy * cxy) / 2.0;
    let p00 = (1.0 + 2.0 * m + chi) / 4.0;
    let p01 = (1.0 - chi) / 4.0;
    let p11 = (1.0 - 2.0 * m + chi) / 4.0;
    let p0 = (1.0 + m) / 2.0;
    let p1 = (1.0 - m) / 2.0;
    let mut z = 1.0;
    if p0 > 0.0 {
        z -= (p00 * p00 + p01 * p01) / p0;
    }
    if p1 > 0.0 {
        z -= (p01 * p01 + p11 * p11) / p1;
    }
    xy + z
}
