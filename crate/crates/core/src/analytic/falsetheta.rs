use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::{abs, exp_pi_i, log_target, residual, work_bits, AnalyticError, Tau};
use crate::gf::gf_l;
use crate::params::StackParams;
use crate::precision::Precision;

/// `f_{a,b}(τ) = Σ_{n>=1} (-1)^n q^{(an² + bn)/2}`, summed until the terms drop
/// below `10^{-(P+10)}`.
pub fn false_theta_f(a: i64, b: i64, tau: &Tau, prec: Precision) -> Complex {
    let bits = work_bits(prec);
    let t = Complex::with_val(bits, tau.value());
    let cutoff = log_target(prec, 10) / (std::f64::consts::PI * tau.im_f64());
    let mut sum = Complex::new(bits);
    for n in 1i64.. {
        let e = a * n * n + b * n;
        // |q^{e/2}| = e^{-πye}; past the vertex the exponents only grow
        if e as f64 > cutoff && 2 * a * n + b > 0 {
            break;
        }
        let term = exp_pi_i(&Complex::with_val(bits, &t * e), 1);
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Complex::with_val(prec.bits(), sum)
}

/// `-1/2 + (b/8)z + (ab/32)z² + (b(6a²-b²)/384)z³` at `z = -2πiτ`.
pub fn kks_cubic_value(a: i64, b: i64, tau: &Tau, prec: Precision) -> Complex {
    let bits = work_bits(prec);
    let pi = Float::with_val(bits, Constant::Pi);
    let z = Complex::with_val(bits, (Float::new(bits), -pi * 2u32)) * tau.value();
    let coeffs = crate::asymptotics::kks_cubic(a, b);
    let mut acc = Complex::new(bits);
    for c in coeffs.iter().rev() {
        acc *= &z;
        acc += Float::with_val(bits, c);
    }
    Complex::with_val(prec.bits(), acc)
}

/// `105π⁴a⁴b¹⁴e^{π√3b²/(32a)}`.
pub fn kks_constant(a: i64, b: i64, prec: Precision) -> Float {
    let bits = work_bits(prec);
    let pi = Float::with_val(bits, Constant::Pi);
    let b2 = Float::with_val(bits, b * b);
    let expo = Float::with_val(bits, &pi * Float::with_val(bits, 3).sqrt()) * &b2 / (32 * a);
    let mut c = Float::with_val(bits, pi.square_ref()).square() * 105u32;
    c *= Float::with_val(bits, a).square().square();
    c *= Float::with_val(bits, (&b2).pow(7u32));
    c * expo.exp()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub tau: (f64, f64),
    /// `|f_{a,b}(τ) - cubic|`.
    pub deviation: f64,
    /// `c y⁴`.
    pub bound: f64,
    pub passed: bool,
}

impl BoundCheck {
    /// `log10(bound / deviation)`; positive when the bound holds.
    pub fn margin_decades(&self) -> f64 {
        (self.bound / self.deviation).log10()
    }
}

/// Checks `|f_{a,b}(τ) - cubic(-2πiτ)| < c y⁴` for `τ = x + iy`, `|x| <= y <= √3/8`.
pub fn check_kks_bound(a: i64, b: i64, tau: &Tau, prec: Precision) -> Result<BoundCheck, AnalyticError> {
    let (x, y) = (tau.re_f64(), tau.im_f64());
    if x.abs() > y || y > 3f64.sqrt() / 8.0 {
        return Err(AnalyticError::OutsideBoundRegion { x, y });
    }
    let diff = false_theta_f(a, b, tau, prec) - kks_cubic_value(a, b, tau, prec);
    let deviation = abs(&diff);
    let y4 = Float::with_val(work_bits(prec), tau.value().imag()).square().square();
    let bound = kks_constant(a, b, prec) * y4;
    Ok(BoundCheck {
        tau: (x, y),
        deviation: deviation.to_f64(),
        bound: bound.to_f64(),
        passed: deviation < bound,
    })
}

/// Relative gap between the exact `L(q)` series and `-q^{2r} f_{m,-m-4r}(q)`.
pub fn l_consistency(params: &StackParams, tau: &Tau, prec: Precision) -> Result<f64, AnalyticError> {
    let bits = work_bits(prec);
    let (r, m) = (i64::from(params.r()), i64::from(params.m()));
    let order = (log_target(prec, 10) / (2.0 * std::f64::consts::PI * tau.im_f64())).ceil() as usize + 1;
    let series = gf_l(params, order)?;
    let t = tau.with_prec(bits);
    let from_series = series.evaluate(&t.q());
    let q2r = exp_pi_i(&Complex::with_val(bits, t.value() * (4 * r)), 1);
    let analytic = -(q2r * false_theta_f(m, -m - 4 * r, &t, prec));
    Ok(residual(&from_series, &analytic, &prec.epsilon()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::digits(50)
    }

    #[test]
    fn tends_to_minus_half() {
        let mut last = f64::INFINITY;
        for y in [0.1, 0.03, 0.01, 0.003] {
            let tau = Tau::from_f64(0.0, y, p()).unwrap();
            let v = false_theta_f(3, -7, &tau, p());
            let gap = abs(&(v + 0.5f64)).to_f64();
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 0.05);
    }

    #[test]
    fn bound_holds_for_three_seven() {
        let tau = Tau::from_f64(0.0, 0.05, p()).unwrap();
        let check = check_kks_bound(3, -7, &tau, p()).unwrap();
        assert!(check.passed);
        assert!(check.margin_decades() > 5.0, "{check:?}");
    }

    #[test]
    fn cubic_is_fourth_order_accurate() {
        // the deviation scales like y⁴ along the imaginary axis
        let d1 = check_kks_bound(3, -7, &Tau::from_f64(0.0, 0.004, p()).unwrap(), p()).unwrap().deviation;
        let d2 = check_kks_bound(3, -7, &Tau::from_f64(0.0, 0.002, p()).unwrap(), p()).unwrap().deviation;
        let order = (d1 / d2).log2();
        assert!((order - 4.0).abs() < 0.3, "{order}");
    }

    #[test]
    fn region_is_enforced() {
        let outside = Tau::from_f64(0.2, 0.1, p()).unwrap();
        assert!(matches!(check_kks_bound(3, -7, &outside, p()), Err(AnalyticError::OutsideBoundRegion { .. })));
        let high = Tau::from_f64(0.0, 0.3, p()).unwrap();
        assert!(check_kks_bound(3, -7, &high, p()).is_err());
    }

    #[test]
    fn l_matches_series() {
        let tau = Tau::from_f64(0.0, 0.1, p()).unwrap();
        for (r, m) in [(1, 3), (1, 4), (2, 5)] {
            let params = StackParams::standard(r, m).unwrap();
            assert!(l_consistency(&params, &tau, p()).unwrap() < 1e-40);
        }
        let tau = Tau::from_f64(0.3, 0.2, p()).unwrap();
        assert!(l_consistency(&StackParams::standard(3, 7).unwrap(), &tau, p()).unwrap() < 1e-40);
    }

    #[test]
    fn l_needs_standard_variant() {
        let tau = Tau::from_f64(0.0, 0.1, p()).unwrap();
        assert!(l_consistency(&StackParams::gap(2, 3).unwrap(), &tau, p()).is_err());
    }
}
