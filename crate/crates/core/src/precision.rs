//! Working precision, carried per call.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Default number of decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;

/// Guard bits added on top of the requested digits.
const GUARD_BITS: u32 = 32;

/// Decimal working precision. Passed explicitly to every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub fn digits(digits: u32) -> Self {
        Self { digits: digits.max(1) }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits: `ceil(digits * log2(10))` plus guard bits.
    pub fn bits(&self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// Same precision with `extra` more decimal digits.
    pub fn widened(&self, extra: u32) -> Self {
        Self { digits: self.digits + extra }
    }

    /// `10^{-digits}` as a float at this precision.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.bits(), 10).pow(-i64::from(self.digits) as i32)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        let mut f = Float::new(self.bits());
        rug::Assign::assign(&mut f, value);
        f
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::digits(DEFAULT_DIGITS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_cover_digits() {
        let p = Precision::digits(50);
        assert!(p.bits() >= 167);
        assert_eq!(p.widened(10).decimal_digits(), 60);
        let eps = p.epsilon();
        assert!((eps.to_f64() - 1e-50).abs() < 1e-60);
    }
}
