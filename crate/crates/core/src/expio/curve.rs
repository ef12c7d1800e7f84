use std::fmt::Write as _;

use serde::Serialize;

use super::criteria_for;
use crate::criteria::werner_like_lhs;
use crate::error::{Error, Result};
use crate::qentropy::TsallisParam;

/// Criterion values on a uniform χ grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join(",")).expect("writing to a String");
        }
        out
    }
}

/// Columns: `chi`, `scg_q{q}` per q, `lsc`, `bound_q{q}` per q, `bound_lsc`.
///
/// With `qs = [2, 1]` the header is `chi,scg_q2,scg_q1,lsc,bound_q2,bound_q1,bound_lsc`.
pub fn sweep_curve(theta: f64, qs: &[TsallisParam], chi_steps: usize) -> Result<Curve> {
    if chi_steps < 2 {
        return Err(Error::OutOfRange {
            name: "chi_steps",
            value: chi_steps as f64,
            range: "[2, inf)",
        });
    }
    let criteria = criteria_for(qs)?;

    let mut header = vec!["chi".to_string()];
    header.extend(criteria.iter().map(|c| c.key()));
    header.extend(qs.iter().map(|q| format!("bound_q{}", q.value())));
    header.push("bound_lsc".to_string());

    let bounds: Vec<f64> = criteria.iter().map(|c| c.bound()).collect();
    let rows = (0..chi_steps)
        .map(|k| {
            let chi = k as f64 / (chi_steps - 1) as f64;
            let mut row = Vec::with_capacity(header.len());
            row.push(chi);
            for c in &criteria {
                row.push(werner_like_lhs(theta, chi, *c)?);
            }
            row.extend(&bounds);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve { header, rows })
}
