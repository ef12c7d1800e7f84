//! Experiment-facing layer: count files, evaluation reports, curves and the
//! comparison against published measurements.

mod counts_csv;
mod curve;
mod tables;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use counts_csv::{parse_counts_csv, to_counts_csv, COUNTS_HEADER};
pub use curve::{sweep_curve, Curve};
pub use tables::{
    reproduce_tables, MeasuredRow, TableComparison, TableEntry, WERNER_LIKE_MEASURED,
    WERNER_MEASURED,
};

use crate::criteria::{verdict, Criterion, CriterionReport};
use crate::error::{Error, Result};
use crate::measure::{
    estimate_distribution, pauli_settings, simulate_counts_on_stream, Axis, CountRecord,
    JointDistribution, OUTCOMES,
};
use crate::qentropy::TsallisParam;
use crate::qmat::{make_werner_like, WernerLikeParams};
use crate::rng::{poisson, stream_rng};

pub const DEFAULT_BOOTSTRAP: usize = 1000;
pub const DEFAULT_SHOTS: u64 = 100_000;

/// Counts for the three Pauli settings of one prepared state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentRecord {
    pub label: String,
    records: [CountRecord; 3],
}

impl ExperimentRecord {
    /// Accepts the records in any order; they are stored as `x, y, z`.
    pub fn new(label: impl Into<String>, records: [CountRecord; 3]) -> Result<Self> {
        let mut slots: [Option<CountRecord>; 3] = [None; 3];
        for r in records {
            let slot = &mut slots[r.axis().index()];
            if slot.is_some() {
                return Err(Error::DuplicateAxis(r.axis()));
            }
            if r.total() == 0 {
                return Err(Error::EmptyRecord(r.axis()));
            }
            *slot = Some(r);
        }
        let records = slots.map(|s| s.expect("three distinct axes fill all slots"));
        Ok(Self {
            label: label.into(),
            records,
        })
    }

    pub fn records(&self) -> &[CountRecord; 3] {
        &self.records
    }

    pub fn record(&self, axis: Axis) -> &CountRecord {
        &self.records[axis.index()]
    }
}

/// Outcome probabilities keyed `"00"`, `"01"`, `"10"`, `"11"`.
pub type ProbabilityTable = BTreeMap<&'static str, f64>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub label: String,
    pub criteria: Vec<CriterionReport>,
    pub probabilities: BTreeMap<Axis, ProbabilityTable>,
    pub totals: Option<BTreeMap<Axis, u64>>,
    pub bounds: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    pub bootstrap: Option<usize>,
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are always serialisable")
    }

    pub fn get(&self, criterion: Criterion) -> Option<&CriterionReport> {
        self.criteria.iter().find(|r| r.criterion == criterion)
    }
}

/// SCG for each `q`, followed by LSC.
pub fn criteria_for(qs: &[TsallisParam]) -> Result<Vec<Criterion>> {
    let mut out = qs
        .iter()
        .map(|q| Criterion::scg(q.value()))
        .collect::<Result<Vec<_>>>()?;
    out.push(Criterion::Lsc);
    Ok(out)
}

fn lhs_values(joints: &[JointDistribution; 3], criteria: &[Criterion]) -> Result<Vec<f64>> {
    criteria.iter().map(|c| c.lhs(joints)).collect()
}

fn estimate_all(records: &[CountRecord; 3]) -> Result<[JointDistribution; 3]> {
    Ok([
        estimate_distribution(&records[0])?,
        estimate_distribution(&records[1])?,
        estimate_distribution(&records[2])?,
    ])
}

fn probability_tables(joints: &[JointDistribution; 3]) -> BTreeMap<Axis, ProbabilityTable> {
    joints
        .iter()
        .map(|jd| (jd.axis(), OUTCOMES.into_iter().zip(jd.cells()).collect()))
        .collect()
}

fn bounds_map(criteria: &[Criterion]) -> BTreeMap<String, f64> {
    criteria.iter().map(|c| (c.key(), c.bound())).collect()
}

/// Sample standard deviation of each column.
fn column_std(samples: &[Vec<f64>], columns: usize) -> Vec<Option<f64>> {
    let n = samples.len();
    (0..columns)
        .map(|c| {
            if n < 2 {
                return None;
            }
            let mean = samples.iter().map(|s| s[c]).sum::<f64>() / n as f64;
            let var = samples.iter().map(|s| (s[c] - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            Some(var.sqrt())
        })
        .collect()
}

/// Poisson parametric bootstrap: every cell is redrawn with mean equal to its
/// observed count. Resample `b` uses stream `b` of `seed`. Resamples that
/// empty an axis are dropped.
fn bootstrap_error_bars(
    rec: &ExperimentRecord,
    criteria: &[Criterion],
    resamples: usize,
    seed: u64,
) -> Vec<Option<f64>> {
    let samples: Vec<Vec<f64>> = (0..resamples)
        .into_par_iter()
        .filter_map(|b| {
            let mut rng = stream_rng(seed, b as u64);
            let redrawn = rec.records.map(|r| {
                CountRecord::new(r.axis(), r.counts().map(|k| poisson(&mut rng, k as f64)))
            });
            let joints = estimate_all(&redrawn).ok()?;
            lhs_values(&joints, criteria).ok()
        })
        .collect();
    column_std(&samples, criteria.len())
}

/// Evaluates SCG for each `q` and LSC from measured counts, with bootstrap error bars.
pub fn evaluate_record(
    rec: &ExperimentRecord,
    qs: &[TsallisParam],
    bootstrap: usize,
    seed: u64,
) -> Result<EvaluationReport> {
    let criteria = criteria_for(qs)?;
    let joints = estimate_all(&rec.records)?;
    let values = lhs_values(&joints, &criteria)?;
    let errors = bootstrap_error_bars(rec, &criteria, bootstrap, seed);

    let reports = criteria
        .iter()
        .zip(values)
        .zip(errors)
        .map(|((&c, lhs), err)| {
            let r = verdict(c, lhs, c.bound());
            match err {
                Some(e) => r.with_error_bar(e),
                None => r,
            }
        })
        .collect();

    Ok(EvaluationReport {
        label: rec.label.clone(),
        criteria: reports,
        probabilities: probability_tables(&joints),
        totals: Some(rec.records.iter().map(|r| (r.axis(), r.total())).collect()),
        bounds: bounds_map(&criteria),
        seed: Some(seed),
        bootstrap: Some(bootstrap),
    })
}

/// Analytic evaluation of a Werner-like state, without error bars.
pub fn evaluate_state(params: WernerLikeParams, qs: &[TsallisParam]) -> Result<EvaluationReport> {
    let criteria = criteria_for(qs)?;
    let joints = pauli_settings(&make_werner_like(params))?;
    let reports = criteria
        .iter()
        .map(|&c| Ok(verdict(c, c.lhs(&joints)?, c.bound())))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvaluationReport {
        label: format!(
            "werner-like theta={}deg chi={}",
            params.theta().to_degrees(),
            params.chi()
        ),
        criteria: reports,
        probabilities: probability_tables(&joints),
        totals: None,
        bounds: bounds_map(&criteria),
        seed: None,
        bootstrap: None,
    })
}

/// Simulated coincidence counts for a Werner-like state; axis `k` draws from stream `k` of `seed`.
pub fn simulate_record(
    params: WernerLikeParams,
    shots: u64,
    seed: u64,
) -> Result<ExperimentRecord> {
    let joints = pauli_settings(&make_werner_like(params))?;
    let records =
        joints.map(|jd| simulate_counts_on_stream(&jd, shots, seed, jd.axis().index() as u64));
    ExperimentRecord::new(
        format!(
            "simulated theta={}deg chi={} shots={} seed={}",
            params.theta().to_degrees(),
            params.chi(),
            shots,
            seed
        ),
        records,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_8, LN_2};

    fn qs() -> Vec<TsallisParam> {
        vec![TsallisParam::new(2.0).unwrap(), TsallisParam::SHANNON]
    }

    fn uniform_record() -> ExperimentRecord {
        ExperimentRecord::new("uniform", Axis::ALL.map(|a| CountRecord::new(a, [250; 4]))).unwrap()
    }

    fn bell_record(n: u64) -> ExperimentRecord {
        let h = n / 2;
        ExperimentRecord::new(
            "bell",
            [
                CountRecord::new(Axis::X, [h, 0, 0, h]),
                CountRecord::new(Axis::Y, [0, h, h, 0]),
                CountRecord::new(Axis::Z, [h, 0, 0, h]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn record_validation() {
        let r = CountRecord::new(Axis::X, [1; 4]);
        assert!(matches!(
            ExperimentRecord::new("dup", [r, r, CountRecord::new(Axis::Z, [1; 4])]),
            Err(Error::DuplicateAxis(Axis::X))
        ));
        assert!(matches!(
            ExperimentRecord::new(
                "empty",
                [
                    r,
                    CountRecord::new(Axis::Y, [0; 4]),
                    CountRecord::new(Axis::Z, [1; 4])
                ]
            ),
            Err(Error::EmptyRecord(Axis::Y))
        ));
        let shuffled = ExperimentRecord::new(
            "any order",
            [
                CountRecord::new(Axis::Z, [1; 4]),
                CountRecord::new(Axis::Y, [2; 4]),
                r,
            ],
        )
        .unwrap();
        assert_eq!(shuffled.records().map(|r| r.axis()), Axis::ALL);
    }

    #[test]
    fn bell_counts_are_steerable_everywhere() {
        let report = evaluate_record(&bell_record(1_000_000), &qs(), 200, 1).unwrap();
        assert_eq!(report.criteria.len(), 3);
        let [q2, q1, lsc] = [
            &report.criteria[0],
            &report.criteria[1],
            &report.criteria[2],
        ];
        assert!(q2.lhs.abs() < 1e-12 && q1.lhs.abs() < 1e-12);
        assert!((lsc.lhs - 3f64.sqrt()).abs() < 1e-12);
        assert!(report.criteria.iter().all(|r| r.steerable));
        assert_eq!(report.bounds["scg_q2"], 1.0);
        assert!((report.bounds["scg_q1"] - 2.0 * LN_2).abs() < 1e-15);
        assert_eq!(report.bounds["lsc"], 1.0);
    }

    #[test]
    fn uniform_counts_are_not_steerable() {
        let report = evaluate_record(&uniform_record(), &qs(), 100, 1).unwrap();
        assert!((report.criteria[0].lhs - 1.5).abs() < 1e-15);
        assert!((report.criteria[1].lhs - 3.0 * LN_2).abs() < 1e-12);
        assert_eq!(report.criteria[2].lhs, 0.0);
        assert!(report.criteria.iter().all(|r| !r.steerable));
        assert_eq!(report.totals.as_ref().unwrap()[&Axis::Y], 1000);
    }

    #[test]
    fn bootstrap_is_deterministic() {
        let params = WernerLikeParams::new(FRAC_PI_8, 0.5).unwrap();
        let rec = simulate_record(params, 10_000, 5).unwrap();
        let a = evaluate_record(&rec, &qs(), 300, 77).unwrap();
        let b = evaluate_record(&rec, &qs(), 300, 77).unwrap();
        assert_eq!(a, b);
        let c = evaluate_record(&rec, &qs(), 300, 78).unwrap();
        assert_ne!(a.criteria[0].error_bar, c.criteria[0].error_bar);
    }

    #[test]
    fn no_bootstrap_means_no_error_bar() {
        let report = evaluate_record(&uniform_record(), &qs(), 0, 1).unwrap();
        assert!(report.criteria.iter().all(|r| r.error_bar.is_none()));
    }

    #[test]
    fn simulated_werner_is_within_three_error_bars() {
        let params = WernerLikeParams::new(FRAC_PI_8, 0.74).unwrap();
        let rec = simulate_record(params, 100_000, 2020).unwrap();
        let report = evaluate_record(&rec, &qs(), 1000, 2021).unwrap();
        let q2 = &report.criteria[0];
        let analytic: f64 = 1.5 * (1.0 - 0.74 * 0.74);
        assert!((analytic - 0.6786).abs() < 1e-12);
        assert!((q2.lhs - analytic).abs() < 3.0 * q2.error_bar.unwrap());
    }

    #[test]
    fn state_evaluation_examples() {
        let r = evaluate_state(WernerLikeParams::new(FRAC_PI_8, 0.58).unwrap(), &qs()).unwrap();
        assert!((r.criteria[0].lhs - 1.5 * (1.0 - 0.58 * 0.58)).abs() < 1e-12);
        assert!((r.criteria[0].lhs - 0.9954).abs() < 1e-12);
        assert!(r.criteria[0].steerable);
        assert!(r.seed.is_none() && r.totals.is_none());

        let r = evaluate_state(WernerLikeParams::from_degrees(7.5, 0.55).unwrap(), &qs()).unwrap();
        // Frozen from an independent dense-matrix evaluation.
        assert!((r.criteria[0].lhs - 1.243_412_995_149_555).abs() < 1e-10);

        let r = evaluate_state(WernerLikeParams::new(FRAC_PI_8, 0.0).unwrap(), &qs()).unwrap();
        let lhs: Vec<f64> = r.criteria.iter().map(|c| c.lhs).collect();
        assert!((lhs[0] - 1.5).abs() < 1e-12);
        assert!((lhs[1] - 3.0 * LN_2).abs() < 1e-12);
        assert!(lhs[2].abs() < 1e-12);
    }

    #[test]
    fn report_json_has_fixed_fields() {
        let report = evaluate_record(&uniform_record(), &qs(), 10, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in [
            "label",
            "criteria",
            "probabilities",
            "bounds",
            "seed",
            "totals",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["probabilities"]["x"]["01"], 0.25);
        assert_eq!(v["criteria"][0]["criterion"], "SCG");
        assert_eq!(v["criteria"][2]["criterion"], "LSC");
        assert_eq!(v["seed"], 3);
    }

    #[test]
    fn unsupported_q_is_rejected() {
        let bad = [TsallisParam::new(2.5).unwrap()];
        assert!(matches!(
            evaluate_record(&uniform_record(), &bad, 10, 1),
            Err(Error::UnsupportedQ(_))
        ));
    }
}
