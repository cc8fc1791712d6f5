use std::io;

use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use super::bigfloat::{BigFloat10, LOG_BITS};
use super::terms::main_term_x;
use super::AsymptoticError;
use crate::gf::{gf_gap, gf_stack};
use crate::par;
use crate::params::{StackParams, Variant};

/// Largest `n` the table computes exact counts for.
pub const EXACT_CEILING: u64 = 20_000;

/// Exact count next to the leading asymptotic.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRecord {
    pub n: u64,
    pub exact: Integer,
    pub asymptotic: BigFloat10,
    /// `(asymptotic - exact) / exact`.
    pub relative_error: f64,
}

/// Flat form used for CSV and JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n: u64,
    pub exact: String,
    pub asymptotic_mantissa: String,
    pub asymptotic_exp10: i64,
    pub relative_error: f64,
}

impl ComparisonRecord {
    pub fn new(n: u64, exact: Integer, asymptotic: BigFloat10) -> Self {
        let relative_error = relative_error(&exact, &asymptotic);
        Self { n, exact, asymptotic, relative_error }
    }

    pub fn to_row(&self) -> ComparisonRow {
        let (asymptotic_mantissa, asymptotic_exp10) = self.asymptotic.to_parts();
        ComparisonRow {
            n: self.n,
            exact: self.exact.to_string(),
            asymptotic_mantissa,
            asymptotic_exp10,
            relative_error: self.relative_error,
        }
    }
}

impl ComparisonRow {
    pub fn to_record(&self) -> Result<ComparisonRecord, AsymptoticError> {
        let exact: Integer = self.exact.parse().map_err(|_| AsymptoticError::Parse(self.exact.clone()))?;
        Ok(ComparisonRecord {
            n: self.n,
            exact,
            asymptotic: BigFloat10::from_parts(&self.asymptotic_mantissa, self.asymptotic_exp10)?,
            relative_error: self.relative_error,
        })
    }
}

fn relative_error(exact: &Integer, asymptotic: &BigFloat10) -> f64 {
    match BigFloat10::from_integer(exact) {
        Some(e) => Float::with_val(LOG_BITS, asymptotic.ratio(&e) - 1u32).to_f64(),
        None => f64::INFINITY,
    }
}

/// Exact counts against [`main_term_x`] for each `n`.
///
/// The series is expanded once to the largest `n`; rows are then built
/// independently.
pub fn error_table(params: &StackParams, ns: &[u64]) -> Result<Vec<ComparisonRecord>, AsymptoticError> {
    let Some(&max_n) = ns.iter().max() else {
        return Err(AsymptoticError::EmptyTable);
    };
    if max_n > EXACT_CEILING {
        return Err(AsymptoticError::AboveCeiling { n: max_n, ceiling: EXACT_CEILING });
    }
    if ns.contains(&0) {
        return Err(AsymptoticError::ZeroSize);
    }
    let order = max_n as usize;
    let series = match params.variant() {
        Variant::Standard => gf_stack(params, order)?,
        Variant::Gap => gf_gap(params, order)?,
    };
    par::map(ns, |&n| {
        let exact = series.coeff(n as usize).cloned().unwrap_or_default();
        Ok(ComparisonRecord::new(n, exact, main_term_x(params, n)?))
    })
    .into_iter()
    .collect()
}

pub fn write_csv<W: io::Write>(records: &[ComparisonRecord], out: W) -> Result<(), AsymptoticError> {
    let mut w = csv::Writer::from_writer(out);
    for rec in records {
        w.serialize(rec.to_row())?;
    }
    w.flush().map_err(|e| AsymptoticError::Io(e.to_string()))?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<ComparisonRecord>, AsymptoticError> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize::<ComparisonRow>()
        .map(|row| row?.to_record())
        .collect()
}

pub fn to_json(records: &[ComparisonRecord]) -> Result<String, AsymptoticError> {
    let rows: Vec<_> = records.iter().map(ComparisonRecord::to_row).collect();
    Ok(serde_json::to_string_pretty(&rows)?)
}

pub fn from_json(text: &str) -> Result<Vec<ComparisonRecord>, AsymptoticError> {
    let rows: Vec<ComparisonRow> = serde_json::from_str(text)?;
    rows.iter().map(ComparisonRow::to_record).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p13() -> StackParams {
        StackParams::standard(1, 3).unwrap()
    }

    #[test]
    fn hundred_row() {
        let t = error_table(&p13(), &[100]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].exact, 3_167_122);
        // (3285951.2265 - 3167122) / 3167122
        assert!((t[0].relative_error - 0.037_519_6).abs() < 1e-7, "{}", t[0].relative_error);
    }

    #[test]
    fn rows_keep_input_order() {
        let t = error_table(&p13(), &[300, 50, 120]).unwrap();
        let ns: Vec<_> = t.iter().map(|r| r.n).collect();
        assert_eq!(ns, [300, 50, 120]);
    }

    #[test]
    fn rejects_bad_lists() {
        assert!(matches!(error_table(&p13(), &[]), Err(AsymptoticError::EmptyTable)));
        assert!(matches!(error_table(&p13(), &[0]), Err(AsymptoticError::ZeroSize)));
        assert!(matches!(
            error_table(&p13(), &[EXACT_CEILING + 1]),
            Err(AsymptoticError::AboveCeiling { .. })
        ));
    }

    #[test]
    fn gap_variant_uses_its_own_series() {
        let p = StackParams::gap(2, 3).unwrap();
        let t = error_table(&p, &[30]).unwrap();
        let direct = gf_gap(&p, 30).unwrap();
        assert_eq!(&t[0].exact, direct.coeff(30).unwrap());
    }

    #[test]
    fn csv_and_json_round_trip() {
        let t = error_table(&StackParams::standard(1, 4).unwrap(), &[40, 200, 400]).unwrap();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,exact,asymptotic_mantissa,asymptotic_exp10,relative_error\n"));
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), t.len());
        for (a, b) in back.iter().zip(&t) {
            assert_eq!(a.to_row(), b.to_row());
        }
        let json = to_json(&t).unwrap();
        let back = from_json(&json).unwrap();
        assert_eq!(to_json(&back).unwrap(), json);
    }
}
