//! JSON shapes for coefficient lists and stack witnesses.

use rug::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::StackWitness;
use crate::params::{ParamError, StackParams, Variant};
use crate::series::TruncatedSeries;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("coefficient {index} is not a decimal integer: {text:?}")]
    BadCoefficient { index: usize, text: String },
    #[error("order {order} does not match {len} coefficients")]
    OrderMismatch { order: usize, len: usize },
}

/// `{"r","m","variant","order","coeffs":[decimal strings]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesExport {
    pub r: u32,
    pub m: u32,
    pub variant: Variant,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl SeriesExport {
    pub fn new(params: &StackParams, series: &TruncatedSeries) -> Self {
        Self {
            r: params.r(),
            m: params.m(),
            variant: params.variant(),
            order: series.order(),
            coeffs: series.coeffs().iter().map(Integer::to_string).collect(),
        }
    }

    pub fn decode(&self) -> Result<(StackParams, TruncatedSeries), ExportError> {
        let params = StackParams::new(self.r, self.m, self.variant)?;
        if self.coeffs.len() != self.order + 1 {
            return Err(ExportError::OrderMismatch { order: self.order, len: self.coeffs.len() });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(index, text)| {
                text.parse::<Integer>()
                    .map_err(|_| ExportError::BadCoefficient { index, text: text.clone() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((params, TruncatedSeries::from_coeffs(coeffs)))
    }
}

pub fn series_to_json(params: &StackParams, series: &TruncatedSeries) -> String {
    serde_json::to_string_pretty(&SeriesExport::new(params, series)).expect("plain data serializes")
}

pub fn series_from_json(text: &str) -> Result<(StackParams, TruncatedSeries), ExportError> {
    serde_json::from_str::<SeriesExport>(text)?.decode()
}

/// Array of `{"left":[..],"peak":c,"right":[..]}`.
pub fn witnesses_to_json(witnesses: &[StackWitness]) -> String {
    serde_json::to_string_pretty(witnesses).expect("plain data serializes")
}

pub fn witnesses_from_json(text: &str) -> Result<Vec<StackWitness>, ExportError> {
    Ok(serde_json::from_str(text)?)
}
