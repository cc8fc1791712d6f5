use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::AsymptoticError;

/// The Hankel sum is refused when its smallest term exceeds this (relative).
pub const HANKEL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BesselMethod {
    /// Power series `Σ (x/2)^{2j+k} / (j! (j+k)!)`.
    Series,
    /// Large-argument expansion `e^x/√(2πx) Σ (-1)^j a_j(ν) / x^j`,
    /// truncated at its smallest term.
    Hankel,
}

/// Modified Bessel function `I_order(x)` for integer order and `x >= 0`,
/// evaluated at the precision of `x`. `I_{-k} = I_k`.
pub fn bessel_i(order: i32, x: &Float, method: BesselMethod) -> Result<Float, AsymptoticError> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(AsymptoticError::NegativeArgument);
    }
    let k = order.unsigned_abs();
    match method {
        BesselMethod::Series => Ok(series(k, x)),
        BesselMethod::Hankel => hankel(k, x).map(|(v, _)| v),
    }
}

fn series(k: u32, x: &Float) -> Float {
    let prec = x.prec() + 16;
    let half = Float::with_val(prec, x) / 2u32;
    if half.is_zero() {
        return Float::with_val(x.prec(), u32::from(k == 0));
    }
    let quarter_sq = Float::with_val(prec, half.square_ref());
    // (x/2)^k / k!
    let mut term = half.clone().pow(k);
    for i in 2..=k {
        term /= i;
    }
    let mut sum = term.clone();
    let mut j: u32 = 0;
    loop {
        j += 1;
        term *= &quarter_sq;
        term /= j;
        term /= j + k;
        sum += &term;
        if term < Float::with_val(prec, &sum >> prec as i32) {
            break;
        }
    }
    Float::with_val(x.prec(), sum)
}

/// Returns the Hankel value and the smallest (relative) term reached.
pub fn hankel(k: u32, x: &Float) -> Result<(Float, Float), AsymptoticError> {
    let prec = x.prec() + 16;
    if x.is_zero() {
        return Err(AsymptoticError::AsymptoticRegime { x: 0.0, smallest_term: f64::INFINITY });
    }
    let nu_sq4 = Float::with_val(prec, 4u64 * u64::from(k) * u64::from(k));
    let xf = Float::with_val(prec, x);
    let eps = Float::with_val(prec, Float::with_val(prec, 1) >> (prec as i32));
    let mut term = Float::with_val(prec, 1);
    let mut sum = term.clone();
    let mut smallest = term.clone().abs();
    for j in 1u32.. {
        let odd = Float::with_val(prec, 2 * j - 1).square();
        let factor = Float::with_val(prec, &nu_sq4 - &odd);
        let next = -Float::with_val(prec, &term * &factor) / (8u32 * j) / &xf;
        if next.clone().abs() >= smallest {
            break;
        }
        term = next;
        smallest = term.clone().abs();
        sum += &term;
        if smallest < eps {
            break;
        }
    }
    if smallest > HANKEL_TOLERANCE {
        return Err(AsymptoticError::AsymptoticRegime {
            x: x.to_f64(),
            smallest_term: smallest.to_f64(),
        });
    }
    let two_pi_x = Float::with_val(prec, Constant::Pi) * &xf * 2u32;
    let prefactor = xf.exp() / two_pi_x.sqrt();
    Ok((Float::with_val(x.prec(), prefactor * sum), Float::with_val(53, smallest)))
}
