//! Congruence parameters `(r, m)` for mixed congruence stacks.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which generating function a parameter pair belongs to.
///
/// `Standard` covers `2r < m`; `Gap` covers `2r > m`, where the largest
/// right-side residue below the peak sits at `km + (m - r)` and the
/// generating function needs one more right-side Pochhammer factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Gap,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Standard => f.write_str("standard"),
            Variant::Gap => f.write_str("gap"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("modulus m = {m} must be greater than 1")]
    ModulusTooSmall { m: u32 },
    #[error("residue r = {r} must satisfy 0 < r < m = {m}")]
    ResidueOutOfRange { r: u32, m: u32 },
    #[error("gcd(r, m) = gcd({r}, {m}) = {gcd} must be 1")]
    NotCoprime { r: u32, m: u32, gcd: u32 },
    #[error("standard variant requires 2r < m, got r = {r}, m = {m}")]
    StandardNeedsSmallResidue { r: u32, m: u32 },
    #[error("gap variant requires 2r > m, got r = {r}, m = {m}")]
    GapNeedsLargeResidue { r: u32, m: u32 },
    #[error("2r = m is excluded (r = {r}, m = {m})")]
    HalfModulus { r: u32, m: u32 },
}

/// Validated `(r, m, variant)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StackParams {
    r: u32,
    m: u32,
    variant: Variant,
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl StackParams {
    pub fn new(r: u32, m: u32, variant: Variant) -> Result<Self, ParamError> {
        if m <= 1 {
            return Err(ParamError::ModulusTooSmall { m });
        }
        if r == 0 || r >= m {
            return Err(ParamError::ResidueOutOfRange { r, m });
        }
        let g = gcd(r, m);
        if g != 1 {
            return Err(ParamError::NotCoprime { r, m, gcd: g });
        }
        if 2 * r == m {
            return Err(ParamError::HalfModulus { r, m });
        }
        match variant {
            Variant::Standard if 2 * r > m => Err(ParamError::StandardNeedsSmallResidue { r, m }),
            Variant::Gap if 2 * r < m => Err(ParamError::GapNeedsLargeResidue { r, m }),
            _ => Ok(Self { r, m, variant }),
        }
    }

    pub fn standard(r: u32, m: u32) -> Result<Self, ParamError> {
        Self::new(r, m, Variant::Standard)
    }

    pub fn gap(r: u32, m: u32) -> Result<Self, ParamError> {
        Self::new(r, m, Variant::Gap)
    }

    /// Picks the variant from the sign of `2r - m`.
    pub fn infer(r: u32, m: u32) -> Result<Self, ParamError> {
        let variant = if 2 * r > m { Variant::Gap } else { Variant::Standard };
        Self::new(r, m, variant)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Residue class of the right-side parts, `m - r`.
    pub fn conjugate_residue(&self) -> u32 {
        self.m - self.r
    }
}

impl fmt::Display for StackParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) {}", self.r, self.m, self.variant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_standard_pairs() {
        for (r, m) in [(1, 3), (1, 4), (1, 5), (2, 5), (3, 7)] {
            let p = StackParams::standard(r, m).unwrap();
            assert_eq!((p.r(), p.m(), p.variant()), (r, m, Variant::Standard));
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(
            StackParams::standard(1, 1),
            Err(ParamError::ModulusTooSmall { m: 1 })
        );
        assert_eq!(
            StackParams::standard(0, 5),
            Err(ParamError::ResidueOutOfRange { r: 0, m: 5 })
        );
        assert_eq!(
            StackParams::standard(2, 4),
            Err(ParamError::NotCoprime { r: 2, m: 4, gcd: 2 })
        );
        assert_eq!(
            StackParams::standard(1, 2),
            Err(ParamError::HalfModulus { r: 1, m: 2 })
        );
        assert_eq!(
            StackParams::standard(3, 4),
            Err(ParamError::StandardNeedsSmallResidue { r: 3, m: 4 })
        );
        assert_eq!(
            StackParams::gap(1, 4),
            Err(ParamError::GapNeedsLargeResidue { r: 1, m: 4 })
        );
    }

    #[test]
    fn infer_picks_variant() {
        assert_eq!(StackParams::infer(3, 4).unwrap().variant(), Variant::Gap);
        assert_eq!(StackParams::infer(2, 7).unwrap().variant(), Variant::Standard);
    }
}
