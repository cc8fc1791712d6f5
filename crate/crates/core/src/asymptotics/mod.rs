//! Circle-method quantities: saddle parameters, Bessel functions, main terms
//! and comparison tables.

mod alpha;
mod bessel;
mod bigfloat;
mod context;
mod table;
mod terms;

use thiserror::Error;

use crate::gf::GfError;
use crate::params::StackParams;

pub use alpha::{alpha_coeffs, kks_cubic, MAX_ALPHA_INDEX};
pub use bessel::{bessel_i, hankel, BesselMethod, HANKEL_TOLERANCE};
pub use bigfloat::{BigFloat10, SciRounded, EXPORT_DIGITS, LOG_BITS};
pub use context::{compute_kappa, compute_n, AsymptoticContext};
pub use table::{
    error_table, from_json, read_csv, to_json, write_csv, ComparisonRecord, ComparisonRow, EXACT_CEILING,
};
pub use terms::{auluck_main_term, main_term_x, refined_h0, RefinedH0};

#[derive(Debug, Error)]
pub enum AsymptoticError {
    #[error("radicand 6r(m-r) - m^2 + 12mn is not positive for {params} at n = {n}")]
    NegativeRadicand { params: StackParams, n: u64 },
    #[error("n must be at least 1")]
    ZeroSize,
    #[error("n = {n} gives 2N = {two_n:.3}; need 2N >= 10")]
    TooSmall { n: u64, two_n: f64 },
    #[error("rho = {0} must be positive with rho*kappa < pi")]
    BadRho(f64),
    #[error("Bessel argument must be non-negative")]
    NegativeArgument,
    #[error("asymptotic regime violated at x = {x}: smallest Hankel term {smallest_term:e}")]
    AsymptoticRegime { x: f64, smallest_term: f64 },
    #[error("alpha_s is only determined for s <= 3 (cubic expansion), got {0}")]
    AlphaIndex(usize),
    #[error("empty n list")]
    EmptyTable,
    #[error("n = {n} exceeds the exact-count ceiling {ceiling}")]
    AboveCeiling { n: u64, ceiling: u64 },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(String),
}
