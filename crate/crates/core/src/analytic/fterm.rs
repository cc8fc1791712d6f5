use rug::float::Constant;
use rug::{Complex, Float};

use super::{abs, exp_pi_i, log_target, work_bits, AnalyticError, Tau};
use crate::params::StackParams;
use crate::precision::Precision;

/// `F(q) = 1 / ((q^r;q^m)_∞ (q^{m-r};q^m)_∞)` as a truncated product.
pub fn f_eval(params: &StackParams, tau: &Tau, prec: Precision) -> Complex {
    let bits = work_bits(prec);
    let t = tau.with_prec(bits);
    let (r, m) = (params.r(), params.m());
    // stop once |q|^e < 10^{-(P+10)}
    let last = (log_target(prec, 10) / (2.0 * std::f64::consts::PI * tau.im_f64())).ceil() as u64 + 1;
    let q_pow = |k: u32| exp_pi_i(&Complex::with_val(bits, t.value() * k), 2);
    let qm = q_pow(m);
    let mut a = q_pow(r);
    let mut b = q_pow(m - r);
    let mut denom = Complex::with_val(bits, 1);
    let mut e = u64::from(r.min(m - r));
    while e <= last {
        denom *= Complex::with_val(bits, 1) - &a;
        denom *= Complex::with_val(bits, 1) - &b;
        a *= &qm;
        b *= &qm;
        e += u64::from(m);
    }
    Complex::with_val(prec.bits(), denom.recip())
}

/// Leading modular term
/// `1/(2 sin(π(m-r)/m)) · e^{(-πir(m-r)/m + πim/6)τ + πi/(6mτ)}`.
pub fn f_closed_form(params: &StackParams, tau: &Tau, prec: Precision) -> Complex {
    let bits = work_bits(prec);
    let t = Complex::with_val(bits, tau.value());
    let (r, m) = (i64::from(params.r()), i64::from(params.m()));
    // exponent / (πi) = (m/6 - r(m-r)/m) τ + 1/(6mτ)
    let lin = Float::with_val(bits, m) / 6u32 - Float::with_val(bits, r * (m - r)) / m;
    let inv = Complex::with_val(bits, Complex::with_val(bits, 6 * m) * &t).recip();
    let arg = Complex::with_val(bits, &t * &lin) + inv;
    let pi = Float::with_val(bits, Constant::Pi);
    let sine = Float::with_val(bits, &pi * (m - r)) / m;
    let pre = sine.sin() * 2u32;
    Complex::with_val(prec.bits(), exp_pi_i(&arg, 1) / pre)
}

/// One sample of the `F` transform residual.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayPoint {
    pub z: f64,
    /// `|F(e^{-z}) / w(z) - 1|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    /// Least-squares slope of `ln residual` against `1/z`.
    pub slope: f64,
    /// `-4π²/m`.
    pub theoretical: f64,
    pub points: Vec<DecayPoint>,
    /// Points whose residual fell below `10^{-(P-10)}` and were left out.
    pub excluded: Vec<DecayPoint>,
}

impl DecayFit {
    pub fn relative_deviation(&self) -> f64 {
        (self.slope / self.theoretical - 1.0).abs()
    }
}

/// Fits the decay rate of `F / w - 1` as `z → 0⁺` (`q = e^{-z}`).
pub fn transform_residual_decay(
    params: &StackParams,
    z_list: &[f64],
    prec: Precision,
) -> Result<DecayFit, AnalyticError> {
    let floor = 10f64.powi(-(prec.decimal_digits() as i32 - 10));
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for &z in z_list {
        if !(z > 0.0 && z.is_finite()) {
            return Err(AnalyticError::BadZ(z));
        }
        let tau = Tau::from_z(&prec.float(z))?;
        let ratio = f_eval(params, &tau, prec) / f_closed_form(params, &tau, prec);
        let residual = abs(&(ratio - 1u32)).to_f64();
        let point = DecayPoint { z, residual };
        if residual < floor {
            excluded.push(point);
        } else {
            points.push(point);
        }
    }
    if points.len() < 2 {
        return Err(AnalyticError::TooFewPoints { usable: points.len(), excluded: excluded.len() });
    }
    let xs: Vec<f64> = points.iter().map(|p| 1.0 / p.z).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.residual.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let pi = std::f64::consts::PI;
    Ok(DecayFit {
        slope: sxy / sxx,
        theoretical: -4.0 * pi * pi / f64::from(params.m()),
        points,
        excluded,
    })
}
