use std::fmt::Write as _;

use csv::{ReaderBuilder, StringRecord, Trim};

use super::ExperimentRecord;
use crate::error::{Error, Result};
use crate::measure::{Axis, CountRecord, OUTCOMES};

pub const COUNTS_HEADER: &str = "setting,outcome,count";
const HEADER_FIELDS: [&str; 3] = ["setting", "outcome", "count"];

fn csv_error(line: u64, message: impl Into<String>) -> Error {
    Error::Csv {
        line,
        message: message.into(),
    }
}

fn outcome_index(s: &str) -> Option<usize> {
    OUTCOMES.iter().position(|o| *o == s)
}

fn line_of(record: &StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

/// Parses a strict counts file: header `setting,outcome,count` followed by
/// exactly the 12 `(setting, outcome)` rows in any order. Lines starting with
/// `#` are comments.
pub fn parse_counts_csv(text: &str) -> Result<ExperimentRecord> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(Trim::All)
        .from_reader(text.as_bytes());

    let mut cells: [[Option<u64>; 4]; 3] = [[None; 4]; 3];
    let mut seen_header = false;
    for result in reader.records() {
        let record = result.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_error(line, e.to_string())
        })?;
        let line = line_of(&record);
        if !seen_header {
            if record.iter().ne(HEADER_FIELDS) {
                return Err(csv_error(
                    line,
                    format!("expected header `{COUNTS_HEADER}`"),
                ));
            }
            seen_header = true;
            continue;
        }
        if record.len() != 3 {
            return Err(csv_error(
                line,
                format!("expected 3 fields, found {}", record.len()),
            ));
        }
        let axis: Axis = record[0].parse().map_err(|e: String| csv_error(line, e))?;
        let outcome = outcome_index(&record[1]).ok_or_else(|| {
            csv_error(
                line,
                format!(
                    "unknown outcome {:?}, expected one of 00, 01, 10, 11",
                    &record[1]
                ),
            )
        })?;
        let raw = &record[2];
        let count: u64 = match raw.parse::<i128>() {
            Ok(v) if v < 0 => return Err(csv_error(line, format!("negative count {v}"))),
            Ok(v) => {
                u64::try_from(v).map_err(|_| csv_error(line, format!("count {v} is too large")))?
            }
            Err(_) => {
                return Err(csv_error(
                    line,
                    format!("count {raw:?} is not a non-negative integer"),
                ))
            }
        };
        let slot = &mut cells[axis.index()][outcome];
        if slot.is_some() {
            return Err(csv_error(
                line,
                format!(
                    "duplicate row for setting {axis}, outcome {}",
                    OUTCOMES[outcome]
                ),
            ));
        }
        *slot = Some(count);
    }
    if !seen_header {
        return Err(csv_error(1, format!("missing header `{COUNTS_HEADER}`")));
    }

    let mut records = Vec::with_capacity(3);
    for axis in Axis::ALL {
        let mut counts = [0u64; 4];
        for (k, cell) in cells[axis.index()].iter().enumerate() {
            counts[k] = cell.ok_or(Error::MissingRow {
                setting: axis,
                outcome: OUTCOMES[k],
            })?;
        }
        records.push(CountRecord::new(axis, counts));
    }
    let records: [CountRecord; 3] = records.try_into().expect("three axes");
    ExperimentRecord::new("counts", records)
}

/// Writes the 12 rows in `x, y, z` × `00, 01, 10, 11` order, LF-terminated.
pub fn to_counts_csv(rec: &ExperimentRecord) -> String {
    let mut out = String::with_capacity(256);
    out.push_str(COUNTS_HEADER);
    out.push('\n');
    for r in rec.records() {
        for (outcome, count) in OUTCOMES.iter().zip(r.counts()) {
            writeln!(out, "{},{},{}", r.axis(), outcome, count).expect("writing to a String");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(cells: &[(&str, &str, &str)]) -> String {
        let mut s = String::from("setting,outcome,count\n");
        for (a, o, c) in cells {
            s.push_str(&format!("{a},{o},{c}\n"));
        }
        s
    }

    fn full(count: &str) -> Vec<(&'static str, &'static str, String)> {
        let mut v = Vec::new();
        for a in ["x", "y", "z"] {
            for o in OUTCOMES {
                v.push((a, o, count.to_string()));
            }
        }
        v
    }

    fn text_of(v: &[(&str, &str, String)]) -> String {
        let borrowed: Vec<(&str, &str, &str)> =
            v.iter().map(|(a, o, c)| (*a, *o, c.as_str())).collect();
        rows(&borrowed)
    }

    #[test]
    fn parses_uniform_counts() {
        let rec = parse_counts_csv(&text_of(&full("250"))).unwrap();
        for r in rec.records() {
            assert_eq!(r.counts(), [250; 4]);
        }
    }

    #[test]
    fn accepts_comments_any_order_and_no_trailing_newline() {
        let text = "# bell state\nsetting,outcome,count\n\
            z,11,500\nz,00,500\nz,01,0\nz,10,0\n# x block\n\
            x,00,500\nx,01,0\nx,10,0\nx,11,500\n\
            y,00,0\ny,01,500\ny,10,500\ny,11,0";
        let rec = parse_counts_csv(text).unwrap();
        assert_eq!(rec.record(Axis::Z).counts(), [500, 0, 0, 500]);
        assert_eq!(rec.record(Axis::Y).counts(), [0, 500, 500, 0]);
    }

    #[test]
    fn missing_row_is_named() {
        let mut v = full("10");
        v.retain(|(a, o, _)| !(*a == "y" && *o == "10"));
        match parse_counts_csv(&text_of(&v)).unwrap_err() {
            Error::MissingRow { setting, outcome } => {
                assert_eq!(setting, Axis::Y);
                assert_eq!(outcome, "10");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn bad_values_report_line_numbers() {
        let cases = [
            (("w", "00", "1"), "unknown setting"),
            (("x", "02", "1"), "unknown outcome"),
            (("x", "00", "-4"), "negative count"),
            (("x", "00", "1.5"), "not a non-negative integer"),
        ];
        for ((a, o, c), needle) in cases {
            let text = rows(&[("z", "00", "1"), (a, o, c)]);
            match parse_counts_csv(&text).unwrap_err() {
                Error::Csv { line, message } => {
                    assert_eq!(line, 3, "{message}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("unexpected {other}"),
            }
        }
    }

    #[test]
    fn duplicates_are_rejected() {
        let text = rows(&[("x", "00", "1"), ("x", "00", "2")]);
        match parse_counts_csv(&text).unwrap_err() {
            Error::Csv { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn header_is_required() {
        assert!(matches!(parse_counts_csv(""), Err(Error::Csv { .. })));
        assert!(matches!(
            parse_counts_csv("axis,outcome,count\nx,00,1\n"),
            Err(Error::Csv { line: 1, .. })
        ));
        assert!(matches!(
            parse_counts_csv("setting,outcome,count\nx,00\n"),
            Err(Error::Csv { line: 2, .. })
        ));
    }

    #[test]
    fn zero_total_axis_is_rejected() {
        let mut v = full("3");
        for row in v.iter_mut().filter(|r| r.0 == "x") {
            row.2 = "0".into();
        }
        assert!(matches!(
            parse_counts_csv(&text_of(&v)),
            Err(Error::EmptyRecord(Axis::X))
        ));
    }

    #[test]
    fn serialises_in_canonical_order() {
        let rec = parse_counts_csv(&text_of(&full("7"))).unwrap();
        let text = to_counts_csv(&rec);
        assert!(text.starts_with("setting,outcome,count\nx,00,7\nx,01,7\n"));
        assert!(text.ends_with("z,11,7\n"));
        assert_eq!(text.lines().count(), 13);
    }
}
