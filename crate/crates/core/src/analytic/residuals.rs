use std::io;

use serde::{Deserialize, Serialize};

use super::AnalyticError;

/// One line of a residual table: where it was evaluated, what came out, and
/// what it was allowed to be.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub point: String,
    pub residual: f64,
    pub bound: f64,
}

impl ResidualRow {
    pub fn new(point: impl Into<String>, residual: f64, bound: f64) -> Self {
        Self { point: point.into(), residual, bound }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.bound
    }
}

/// Writes `point,residual,bound` rows with a header.
pub fn write_residual_csv<W: io::Write>(rows: &[ResidualRow], out: W) -> Result<(), AnalyticError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let rows = [ResidualRow::new("tau=0.5i, w=0.1", 1.5e-45, 1e-40), ResidualRow::new("z=0.3", 2.0, 1.0)];
        let mut buf = Vec::new();
        write_residual_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("point,residual,bound\n\"tau=0.5i, w=0.1\",1.5e-45,"));
        let back: Vec<ResidualRow> = csv::Reader::from_reader(text.as_bytes()).deserialize().map(Result::unwrap).collect();
        assert_eq!(back, rows);
        assert!(rows[0].passed() && !rows[1].passed());
    }
}
