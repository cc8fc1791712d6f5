use num_complex::Complex64;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::AnalyticError;
use crate::asymptotics::{bessel_i, AsymptoticContext, BesselMethod};
use crate::params::StackParams;
use crate::precision::Precision;

/// Relative Richardson disagreement accepted by the quadrature.
const QUAD_TOLERANCE: f64 = 1e-12;
const MAX_LEVELS: u32 = 22;

/// `h_s` from quadrature, scaled by `e^{-2N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HsQuadrature {
    pub scaled: f64,
    pub two_n: f64,
    pub levels: u32,
    pub disagreement: f64,
}

/// Quadrature of `(1/2πi) ∫ z^s w(z) e^{nz} dz` along `z = κ + iν`, `|ν| <= ρκ`, where
/// `w(z) = csc(πr/m)/2 · e^{π²/(3mz) + (r(m-r)/(2m) - m/12) z}`.
///
/// Runs in `f64` on the integrand divided by `e^{2N}`, its value at `ν = 0`.
/// Romberg refinement starts from `quad_points` panels and stops when
/// successive extrapolations agree to `1e-12`.
pub fn wright_hs_numeric(
    params: &StackParams,
    n: u64,
    s: u32,
    rho: f64,
    quad_points: usize,
) -> Result<HsQuadrature, AnalyticError> {
    let ctx = AsymptoticContext::new(*params, n, rho, Precision::digits(30))?;
    let kappa = ctx.kappa.to_f64();
    let two_n = 2.0 * ctx.big_n.to_f64();
    let c = ctx.linear_coefficient().to_f64();
    let (r, m) = (f64::from(params.r()), f64::from(params.m()));
    let pi = std::f64::consts::PI;
    let half_csc = 0.5 / (pi * r / m).sin();
    let a = pi * pi / (3.0 * m);
    let integrand = |nu: f64| -> f64 {
        let z = Complex64::new(kappa, nu);
        let e = a / z + c * z - two_n;
        // dz = i dν cancels the i of 1/(2πi)
        (z.powu(s) * e.exp() * half_csc).re / (2.0 * pi)
    };
    // the real part is even in ν
    let (value, levels, disagreement) = romberg(&integrand, 0.0, rho * kappa, quad_points.max(1))?;
    Ok(HsQuadrature { scaled: 2.0 * value, two_n, levels, disagreement })
}

fn romberg(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> Result<(f64, u32, f64), AnalyticError> {
    let mut panels = panels;
    let mut h = (hi - lo) / panels as f64;
    let mut trap = 0.5 * (f(lo) + f(hi)) + (1..panels).map(|i| f(lo + i as f64 * h)).sum::<f64>();
    let mut prev_row = vec![trap * h];
    let mut disagreement = f64::INFINITY;
    for level in 1..=MAX_LEVELS {
        // add midpoints
        trap += (0..panels).map(|i| f(lo + (i as f64 + 0.5) * h)).sum::<f64>();
        panels *= 2;
        h /= 2.0;
        let mut row = vec![trap * h];
        let mut factor = 1.0;
        for k in 0..prev_row.len() {
            factor *= 4.0;
            let next = row[k] + (row[k] - prev_row[k]) / (factor - 1.0);
            row.push(next);
        }
        let best = *row.last().expect("non-empty");
        let last = *prev_row.last().expect("non-empty");
        disagreement = ((best - last) / best).abs();
        if level >= 3 && disagreement < QUAD_TOLERANCE {
            return Ok((best, level, disagreement));
        }
        prev_row = row;
    }
    Err(AnalyticError::NonConvergence { levels: MAX_LEVELS, disagreement })
}

/// `(csc(πr/m)/4) κ^{s+1} I_{-s-1}(2N)` scaled by `e^{-2N}`.
pub fn hs_bessel_closed_form(params: &StackParams, n: u64, s: u32, prec: Precision) -> Result<f64, AnalyticError> {
    let ctx = AsymptoticContext::new(*params, n, 0.5, prec)?;
    let bits = prec.bits();
    let two_n = Float::with_val(bits, &ctx.big_n * 2u32);
    let i = bessel_i(-(s as i32) - 1, &two_n, BesselMethod::Series)?;
    let pi = Float::with_val(bits, Constant::Pi);
    let sine = (pi * params.r() / params.m()).sin();
    let kappa_pow = Float::with_val(bits, (&ctx.kappa).pow(s + 1));
    let value = i * kappa_pow / sine / 4u32 * (-two_n).exp();
    Ok(value.to_f64())
}

/// Quadrature of `h_0` against its Bessel closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourCheck {
    pub n: u64,
    pub rho: f64,
    /// `h_0 e^{-2N}` from quadrature.
    pub h0_scaled: f64,
    /// `α_0 h_0 e^{-2N}` with `α_0 = 1/2`.
    pub alpha0_h0_scaled: f64,
    /// `(csc/4) κ I_{-1}(2N) e^{-2N}`.
    pub closed_scaled: f64,
    /// `h_0 / closed`; about 2 because `w` carries `csc/2`.
    pub raw_ratio: f64,
    /// `|α_0 h_0 / closed - 1|`.
    pub relative_gap: f64,
}

pub fn contour_check(params: &StackParams, n: u64, rho: f64, prec: Precision) -> Result<ContourCheck, AnalyticError> {
    let h0 = wright_hs_numeric(params, n, 0, rho, 64)?;
    let closed = hs_bessel_closed_form(params, n, 0, prec)?;
    let alpha0_h0 = 0.5 * h0.scaled;
    Ok(ContourCheck {
        n,
        rho,
        h0_scaled: h0.scaled,
        alpha0_h0_scaled: alpha0_h0,
        closed_scaled: closed,
        raw_ratio: h0.scaled / closed,
        relative_gap: (alpha0_h0 / closed - 1.0).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p13() -> StackParams {
        StackParams::standard(1, 3).unwrap()
    }

    #[test]
    fn romberg_on_polynomial_and_gaussian() {
        let (v, _, _) = romberg(&|x| x * x * x, 0.0, 2.0, 4).unwrap();
        assert!((v - 4.0).abs() < 1e-13);
        let (v, _, _) = romberg(&|x: f64| (-x * x).exp(), -6.0, 6.0, 8).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn integrand_real_positive_at_saddle() {
        let q = wright_hs_numeric(&p13(), 200, 0, 1e-6, 4).unwrap();
        assert!(q.scaled > 0.0);
    }

    #[test]
    fn wide_arc_recovers_twice_the_closed_form() {
        let check = contour_check(&p13(), 500, 2.0, Precision::digits(40)).unwrap();
        assert!((check.raw_ratio - 2.0).abs() < 1e-6, "{check:?}");
        assert!(check.relative_gap < 1e-6);
    }

    #[test]
    fn gap_shrinks_with_n_on_wide_arc() {
        let gaps: Vec<f64> = [50, 100, 200, 500]
            .iter()
            .map(|&n| contour_check(&p13(), n, 2.0, Precision::digits(40)).unwrap().relative_gap)
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    }

    #[test]
    fn closed_form_for_s1_uses_kappa_squared() {
        let prec = Precision::digits(40);
        let c0 = hs_bessel_closed_form(&p13(), 300, 0, prec).unwrap();
        let c1 = hs_bessel_closed_form(&p13(), 300, 1, prec).unwrap();
        // I_2/I_1 < 1 and one extra factor κ
        let kappa = crate::asymptotics::compute_kappa(&p13(), 300, prec).unwrap().to_f64();
        assert!(c1 < c0 * kappa && c1 > 0.8 * c0 * kappa);
    }

    #[test]
    fn rejects_bad_rho() {
        assert!(wright_hs_numeric(&p13(), 200, 0, 0.0, 16).is_err());
        assert!(wright_hs_numeric(&p13(), 200, 0, 1e3, 16).is_err());
    }
}
