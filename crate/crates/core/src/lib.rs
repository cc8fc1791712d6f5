//! Mixed congruence stacks: exact generating functions, an independent
//! counting oracle, and circle-method asymptotics with numeric checks.

pub mod analytic;
pub mod asymptotics;
pub mod checks;
pub mod export;
pub mod gf;
pub mod oracle;
pub mod par;
pub mod params;
pub mod precision;
pub mod series;

pub use params::{ParamError, StackParams, Variant};
pub use precision::Precision;
pub use series::TruncatedSeries;
