use std::fmt;

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer};

use super::AsymptoticError;

/// Bits kept in the logarithm; ≥ 70 significant decimal digits.
pub const LOG_BITS: u32 = 256;

/// Mantissa digits written by [`BigFloat10::to_parts`].
pub const EXPORT_DIGITS: u32 = 40;

/// A positive quantity stored by its natural logarithm and shown as
/// `mantissa × 10^exponent10` with the mantissa in `[1, 10)`.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct BigFloat10 {
    ln: Float,
}

impl BigFloat10 {
    pub fn from_ln(ln: Float) -> Self {
        Self { ln: Float::with_val(LOG_BITS.max(ln.prec()), ln) }
    }

    /// `None` unless `value > 0`.
    pub fn from_float(value: &Float) -> Option<Self> {
        if *value > 0 {
            let v = Float::with_val(LOG_BITS.max(value.prec()), value);
            Some(Self { ln: v.ln() })
        } else {
            None
        }
    }

    /// `None` unless `value > 0`.
    pub fn from_integer(value: &Integer) -> Option<Self> {
        if *value > 0 {
            let bits = (value.significant_bits() + LOG_BITS).max(LOG_BITS);
            Some(Self { ln: Float::with_val(bits, value).ln() })
        } else {
            None
        }
    }

    pub fn ln(&self) -> &Float {
        &self.ln
    }

    fn ln10(&self) -> Float {
        Float::with_val(self.ln.prec(), 10).ln()
    }

    pub fn exponent10(&self) -> i64 {
        let e = Float::with_val(self.ln.prec(), &self.ln / self.ln10()).floor();
        e.to_integer().and_then(|i| i.to_i64()).expect("exponent fits in i64")
    }

    /// Mantissa in `[1, 10)`.
    pub fn mantissa(&self) -> Float {
        let shifted = Float::with_val(self.ln.prec(), &self.ln - self.ln10() * self.exponent10());
        shifted.exp()
    }

    /// The value itself at `bits` precision.
    pub fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, &self.ln).exp()
    }

    /// Rounds to `sig` significant digits (nearest).
    pub fn round_sig(&self, sig: u32) -> SciRounded {
        let scaled = self.mantissa() * Float::with_val(self.ln.prec(), 10).pow(sig as i32 - 1);
        let digits = scaled.to_integer_round(Round::Nearest).expect("finite").0;
        SciRounded::normalize(digits, sig, self.exponent10())
    }

    /// Decimal mantissa string with [`EXPORT_DIGITS`] significant digits and
    /// the base-10 exponent.
    pub fn to_parts(&self) -> (String, i64) {
        let r = self.round_sig(EXPORT_DIGITS);
        (r.mantissa_string(), r.exp10)
    }

    pub fn from_parts(mantissa: &str, exp10: i64) -> Result<Self, AsymptoticError> {
        let parsed = Float::parse(mantissa)
            .map_err(|_| AsymptoticError::Parse(mantissa.to_string()))?;
        let m = Float::with_val(LOG_BITS, parsed);
        if m <= 0 {
            return Err(AsymptoticError::Parse(mantissa.to_string()));
        }
        let ln10 = Float::with_val(LOG_BITS, 10).ln();
        Ok(Self { ln: m.ln() + ln10 * exp10 })
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { ln: Float::with_val(LOG_BITS, &self.ln + &other.ln) }
    }

    pub fn div(&self, other: &Self) -> Self {
        Self { ln: Float::with_val(LOG_BITS, &self.ln - &other.ln) }
    }

    /// `self / other` as a plain float.
    pub fn ratio(&self, other: &Self) -> Float {
        self.div(other).to_float(LOG_BITS)
    }
}

impl fmt::Display for BigFloat10 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.round_sig(5).fmt(f)
    }
}

/// A decimal rounded to a fixed number of significant digits:
/// `digits × 10^{exp10 - sig + 1}` with `digits` exactly `sig` long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SciRounded {
    pub digits: Integer,
    pub sig: u32,
    pub exp10: i64,
}

impl SciRounded {
    fn normalize(mut digits: Integer, sig: u32, mut exp10: i64) -> Self {
        let limit = Integer::from(Integer::u_pow_u(10, sig));
        if digits >= limit {
            digits /= 10;
            exp10 += 1;
        }
        Self { digits, sig, exp10 }
    }

    /// Exact rounding of a positive integer, half away from zero.
    pub fn from_integer(value: &Integer, sig: u32) -> Self {
        let len = value.to_string().len() as u32;
        let exp10 = i64::from(len) - 1;
        if len <= sig {
            let pad = Integer::from(Integer::u_pow_u(10, sig - len));
            return Self { digits: value * pad, sig, exp10 };
        }
        let div = Integer::from(Integer::u_pow_u(10, len - sig));
        let (mut q, rem) = value.clone().div_rem(div.clone());
        if Integer::from(&rem * 2) >= div {
            q += 1;
        }
        Self::normalize(q, sig, exp10)
    }

    pub fn mantissa_string(&self) -> String {
        let s = self.digits.to_string();
        if s.len() <= 1 {
            s
        } else {
            format!("{}.{}", &s[..1], &s[1..])
        }
    }

    pub fn mantissa_f64(&self) -> f64 {
        self.mantissa_string().parse().expect("decimal")
    }
}

impl fmt::Display for SciRounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", self.mantissa_string(), self.exp10)
    }
}

/// `π` at [`LOG_BITS`].
pub(crate) fn pi() -> Float {
    Float::with_val(LOG_BITS, Constant::Pi)
}
