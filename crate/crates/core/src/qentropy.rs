//! Tsallis and Shannon entropy functionals.
//!
//! Zero-probability cells contribute nothing to any sum (`0^q ln_q 0 := 0`).
//! Whenever `|q - 1| < 1e-9` the functionals switch to their Shannon forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::JointDistribution;

/// Half-width of the band around `q = 1` that routes to Shannon formulas.
pub const SHANNON_BAND: f64 = 1e-9;

/// Entropic index `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct TsallisParam(f64);

impl TsallisParam {
    pub const SHANNON: TsallisParam = TsallisParam(1.0);

    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::OutOfRange {
                name: "q",
                value: q,
                range: "(0, inf)",
            });
        }
        Ok(Self(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_shannon(self) -> bool {
        (self.0 - 1.0).abs() < SHANNON_BAND
    }
}

/// A finite probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidDistribution("empty distribution".into()));
        }
        if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "entry {bad} is negative or not finite"
            )));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}"
            )));
        }
        Ok(Self(p))
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }
}

impl From<&JointDistribution> for Distribution {
    fn from(jd: &JointDistribution) -> Self {
        Self(jd.cells().to_vec())
    }
}

/// `ln_q(x) = (x^{1-q} - 1)/(1 - q)`, evaluated as `expm1((1-q) ln x)/(1-q)`.
pub fn ln_q(x: f64, q: TsallisParam) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::LogDomain(x));
    }
    Ok(lnq(x, q))
}

fn lnq(x: f64, q: TsallisParam) -> f64 {
    if q.is_shannon() {
        return x.ln();
    }
    let k = 1.0 - q.0;
    (k * x.ln()).exp_m1() / k
}

fn tsallis_of(p: &[f64], q: TsallisParam) -> f64 {
    if q.is_shannon() {
        return shannon_of(p);
    }
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x.powf(q.0) * lnq(x, q))
        .sum::<f64>()
}

fn shannon_of(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// `S_q(P) = -Σ p_i^q ln_q(p_i)`.
pub fn tsallis_entropy(d: &Distribution, q: TsallisParam) -> f64 {
    tsallis_of(&d.0, q)
}

/// `-Σ p ln p` in nats.
pub fn shannon_entropy(d: &Distribution) -> f64 {
    shannon_of(&d.0)
}

/// `S_q(B|A) = S_q(A,B) - S_q(A)`, with A Alice's outcome.
pub fn conditional_tsallis(joint: &JointDistribution, q: TsallisParam) -> f64 {
    tsallis_of(&joint.cells(), q) - tsallis_of(&joint.alice_marginal(), q)
}

/// `C(A,B) = Σ_i p_i^q [ln_q p_i]² - Σ_ij p_ij^q ln_q(p_i) ln_q(p_ij)`.
///
/// `p_i` is Alice's marginal. Cells with `p_ij = 0` are skipped, and `p_ij > 0`
/// implies `p_i > 0`.
pub fn correction_term(joint: &JointDistribution, q: TsallisParam) -> f64 {
    let marginal = joint.alice_marginal();
    let first: f64 = marginal
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p.powf(q.0) * lnq(p, q).powi(2))
        .sum();
    let mut second = 0.0;
    for (i, &pi) in marginal.iter().enumerate() {
        for j in 0..2 {
            let pij = joint.p(i, j);
            if pij > 0.0 {
                second += pij.powf(q.0) * lnq(pi, q) * lnq(pij, q);
            }
        }
    }
    first - second
}
