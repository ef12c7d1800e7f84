//! Steering criteria, their bounds and verdicts.
//!
//! SCG: `(1/(q-1)) Σ_k [1 - Σ_ij (p_ij^k)^q / (p_i^k)^{q-1}] ≥ C_B^(q)` holds for
//! every non-steerable state; a value strictly below the bound certifies
//! steering. For `q = 1` the left-hand side is `Σ_k S(B_k|A_k)` and the bound is
//! the complete-MUB Shannon bound.
//!
//! LSC: `sqrt(Σ_k c_k²) ≤ 1` for non-steerable states; a value strictly above 1
//! certifies steering.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{correlation, pauli_settings, JointDistribution};
use crate::qentropy::{conditional_tsallis, correction_term, ln_q, TsallisParam};
use crate::qmat::{make_werner_like, WernerLikeParams};

/// Largest entropic index for which the MUB bound is established.
pub const MAX_Q: f64 = 2.0;
pub const LSC_BOUND: f64 = 1.0;
/// Samples used to verify monotonicity before bisection.
pub const MONOTONE_SAMPLES: usize = 21;
pub const MAX_BISECTION_STEPS: usize = 200;

/// Qubits measured in the three Pauli bases.
const QUBIT_DIM: u32 = 2;
const PAULI_MUBS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "criterion")]
pub enum Criterion {
    #[serde(rename = "SCG")]
    Scg { q: TsallisParam },
    #[serde(rename = "LSC")]
    Lsc,
}

impl Criterion {
    pub fn scg(q: f64) -> Result<Self> {
        let q = TsallisParam::new(q)?;
        check_supported(q)?;
        Ok(Criterion::Scg { q })
    }

    /// Bound for three Pauli settings on a qubit pair.
    pub fn bound(&self) -> f64 {
        match *self {
            Criterion::Scg { q } => scg_bound(q).expect("q validated on construction"),
            Criterion::Lsc => LSC_BOUND,
        }
    }

    /// Whether `lhs` strictly violates `bound` in this criterion's direction.
    pub fn is_violation(&self, lhs: f64, bound: f64) -> bool {
        match self {
            Criterion::Scg { .. } => lhs < bound,
            Criterion::Lsc => lhs > bound,
        }
    }

    /// Left-hand side from the three Pauli-setting distributions.
    pub fn lhs(&self, joints: &[JointDistribution]) -> Result<f64> {
        match *self {
            Criterion::Scg { q } => scg_lhs(joints, q),
            Criterion::Lsc => {
                check_settings(joints)?;
                let mut c = [0.0; 3];
                for jd in joints {
                    c[jd.axis().index()] = correlation(jd);
                }
                Ok(lsc_value(c))
            }
        }
    }

    /// Snake-case key such as `scg_q2` or `lsc`.
    pub fn key(&self) -> String {
        match self {
            Criterion::Scg { q } => format!("scg_q{}", q.value()),
            Criterion::Lsc => "lsc".to_string(),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Scg { q } => write!(f, "SCG(q={})", q.value()),
            Criterion::Lsc => f.write_str("LSC"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionReport {
    #[serde(flatten)]
    pub criterion: Criterion,
    pub lhs: f64,
    pub bound: f64,
    pub steerable: bool,
    pub error_bar: Option<f64>,
}

impl CriterionReport {
    pub fn with_error_bar(mut self, error_bar: f64) -> Self {
        self.error_bar = Some(error_bar);
        self
    }
}

/// Dimension and number of mutually unbiased bases for the Tsallis bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundSpec {
    d: u32,
    m: u32,
}

impl BoundSpec {
    pub fn new(d: u32, m: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::OutOfRange {
                name: "d",
                value: d as f64,
                range: "[2, inf)",
            });
        }
        if m < 1 || m > d + 1 {
            return Err(Error::OutOfRange {
                name: "m",
                value: m as f64,
                range: "[1, d + 1]",
            });
        }
        Ok(Self { d, m })
    }

    pub fn pauli() -> Self {
        Self {
            d: QUBIT_DIM,
            m: PAULI_MUBS,
        }
    }
}

fn check_supported(q: TsallisParam) -> Result<()> {
    if q.value() > MAX_Q {
        return Err(Error::UnsupportedQ(q.value()));
    }
    Ok(())
}

fn check_settings(joints: &[JointDistribution]) -> Result<()> {
    if joints.is_empty() || joints.len() > 3 {
        return Err(Error::SettingCount(joints.len()));
    }
    for (i, a) in joints.iter().enumerate() {
        if joints[..i].iter().any(|b| b.axis() == a.axis()) {
            return Err(Error::DuplicateAxis(a.axis()));
        }
    }
    Ok(())
}

/// Probability form of the SCG left-hand side.
pub fn scg_lhs(joints: &[JointDistribution], q: TsallisParam) -> Result<f64> {
    check_supported(q)?;
    check_settings(joints)?;
    if q.is_shannon() {
        return Ok(joints.iter().map(|jd| conditional_tsallis(jd, q)).sum());
    }
    let qv = q.value();
    let total: f64 = joints
        .iter()
        .map(|jd| {
            let marginal = jd.alice_marginal();
            let mut s = 0.0;
            for (i, &pi) in marginal.iter().enumerate() {
                for j in 0..2 {
                    let pij = jd.p(i, j);
                    if pij > 0.0 {
                        s += pij.powf(qv) / pi.powf(qv - 1.0);
                    }
                }
            }
            1.0 - s
        })
        .sum();
    Ok(total / (qv - 1.0))
}

/// Entropic form `Σ_k [S_q(B_k|A_k) + (1-q) C(A_k, B_k)]`.
pub fn scg_lhs_entropic(joints: &[JointDistribution], q: TsallisParam) -> Result<f64> {
    check_supported(q)?;
    check_settings(joints)?;
    let weight = if q.is_shannon() { 0.0 } else { 1.0 - q.value() };
    Ok(joints
        .iter()
        .map(|jd| {
            let c = if weight == 0.0 {
                0.0
            } else {
                weight * correction_term(jd, q)
            };
            conditional_tsallis(jd, q) + c
        })
        .sum())
}

/// `m ln_q(md/(d+m-1))`.
pub fn mub_bound(spec: BoundSpec, q: TsallisParam) -> Result<f64> {
    check_supported(q)?;
    let (d, m) = (spec.d as f64, spec.m as f64);
    Ok(m * ln_q(m * d / (d + m - 1.0), q)?)
}

/// Shannon bound for a complete set of `d + 1` MUBs.
pub fn shannon_bound(d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "[2, inf)",
        });
    }
    let df = d as f64;
    Ok(if d % 2 == 1 {
        (df + 1.0) * ((df + 1.0) / 2.0).ln()
    } else {
        let h = df / 2.0;
        h * h.ln() + (h + 1.0) * (h + 1.0).ln()
    })
}

/// SCG bound for three Pauli settings: Tsallis MUB bound, or the Shannon bound at `q = 1`.
pub fn scg_bound(q: TsallisParam) -> Result<f64> {
    if q.is_shannon() {
        shannon_bound(QUBIT_DIM)
    } else {
        mub_bound(BoundSpec::pauli(), q)
    }
}

/// Euclidean norm of the diagonal correlations `(c_x, c_y, c_z)`.
pub fn lsc_value(correlations: [f64; 3]) -> f64 {
    correlations.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Steerable only on strict violation; ties are non-steerable.
pub fn verdict(criterion: Criterion, lhs: f64, bound: f64) -> CriterionReport {
    CriterionReport {
        criterion,
        lhs,
        bound,
        steerable: criterion.is_violation(lhs, bound),
        error_bar: None,
    }
}

/// Critical mixing weight for a Werner-like family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// Boundary between non-steerable and steerable χ; `1.0` when `crossed` is false.
    pub chi: f64,
    /// False when the criterion is not violated anywhere on `[0, 1]`.
    pub crossed: bool,
}

/// Criterion value along `χ ↦ χ|φ_θ⟩⟨φ_θ| + (1-χ)I/4`.
pub fn werner_like_lhs(theta: f64, chi: f64, criterion: Criterion) -> Result<f64> {
    let rho = make_werner_like(WernerLikeParams::new(theta, chi)?);
    criterion.lhs(&pauli_settings(&rho)?)
}

/// Smallest χ beyond which the criterion detects steering, by bisection.
pub fn chi_threshold(theta: f64, criterion: Criterion, tol: f64) -> Result<Threshold> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol,
            range: "(0, inf)",
        });
    }
    WernerLikeParams::new(theta, 0.0)?;
    let lhs = |chi: f64| werner_like_lhs(theta, chi, criterion);

    let samples = (0..MONOTONE_SAMPLES)
        .map(|k| lhs(k as f64 / (MONOTONE_SAMPLES - 1) as f64))
        .collect::<Result<Vec<_>>>()?;
    let increasing = samples.windows(2).all(|w| w[1] > w[0]);
    let decreasing = samples.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(Error::NonMonotone {
            criterion: criterion.to_string(),
        });
    }

    let bound = criterion.bound();
    let violated = |chi: f64| -> Result<bool> { Ok(criterion.is_violation(lhs(chi)?, bound)) };
    if violated(0.0)? {
        return Ok(Threshold {
            chi: 0.0,
            crossed: true,
        });
    }
    if !violated(1.0)? {
        return Ok(Threshold {
            chi: 1.0,
            crossed: false,
        });
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if violated(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Threshold {
        chi: 0.5 * (lo + hi),
        crossed: true,
    })
}
