use num_complex::Complex64;

use super::AnalyticError;
use crate::asymptotics::AsymptoticContext;
use crate::par;
use crate::params::{StackParams, Variant};
use crate::precision::Precision;

/// Largest local value in the window `|ν - 2πℓ/m| <= π/m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondaryPeak {
    pub ell: u32,
    pub center: f64,
    pub nu: f64,
    pub log_abs: f64,
}

/// `ln |F(x) L(x) x^{-n}|` on `x = e^{-κ+iν}`, `ν = -π + 2πj/G`, `j = 1..=G`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceProfile {
    pub kappa: f64,
    pub rho: f64,
    pub nu: Vec<f64>,
    pub log_abs: Vec<f64>,
    pub argmax_nu: f64,
    pub major_max: f64,
    pub minor_max: f64,
    pub secondary: Vec<SecondaryPeak>,
    /// `max_j |g(ν_j) - g(-ν_j)|`.
    pub evenness_defect: f64,
}

impl DominanceProfile {
    pub fn argmax_on_major_arc(&self) -> bool {
        self.argmax_nu.abs() <= self.rho * self.kappa
    }

    /// `max on minor arc / max on major arc`.
    pub fn minor_major_ratio(&self) -> f64 {
        (self.minor_max - self.major_max).exp()
    }

    pub fn secondary_below_principal(&self) -> bool {
        self.secondary.iter().all(|p| p.log_abs < self.major_max)
    }
}

fn log_abs_fl(params: &StackParams, kappa: f64, nu: f64, n: u64) -> f64 {
    let (r, m) = (f64::from(params.r()), f64::from(params.m()));
    let z = Complex64::new(-kappa, nu);
    // |x|^e below 1e-18
    let last = 42.0 / kappa;
    let mut ln_f = 0.0;
    for start in [r, m - r] {
        let mut e = start;
        while e <= last {
            ln_f -= (Complex64::new(1.0, 0.0) - (z * e).exp()).norm().ln();
            e += m;
        }
    }
    let mut l = Complex64::new(0.0, 0.0);
    for j in 0u32.. {
        let jf = f64::from(j);
        let e = m * jf * (jf + 1.0) / 2.0 - 2.0 * r * jf;
        if e > last && j > 1 {
            break;
        }
        let term = (z * e).exp();
        if j % 2 == 0 {
            l += term;
        } else {
            l -= term;
        }
    }
    ln_f + l.norm().ln() + n as f64 * kappa
}

/// Profiles `|F L x^{-n}|` around the circle `|x| = e^{-κ}` (double precision).
pub fn major_arc_dominance(
    params: &StackParams,
    n: u64,
    grid_size: usize,
    rho: f64,
) -> Result<DominanceProfile, AnalyticError> {
    if params.variant() != Variant::Standard {
        return Err(AnalyticError::StandardOnly(*params));
    }
    if grid_size < 8 || !grid_size.is_multiple_of(2) {
        return Err(AnalyticError::BadGrid(grid_size));
    }
    let ctx = AsymptoticContext::new(*params, n, rho, Precision::digits(30))?;
    let kappa = ctx.kappa.to_f64();
    let pi = std::f64::consts::PI;
    let g = grid_size as f64;
    let nu: Vec<f64> = (1..=grid_size).map(|j| -pi + 2.0 * pi * j as f64 / g).collect();
    let log_abs = par::map(&nu, |&v| log_abs_fl(params, kappa, v, n));

    let arc = rho * kappa;
    let mut argmax = 0;
    let mut major_max = f64::NEG_INFINITY;
    let mut minor_max = f64::NEG_INFINITY;
    for (i, (&v, &val)) in nu.iter().zip(&log_abs).enumerate() {
        if val > log_abs[argmax] {
            argmax = i;
        }
        if v.abs() <= arc {
            major_max = major_max.max(val);
        } else {
            minor_max = minor_max.max(val);
        }
    }

    let m = params.m();
    let secondary = (1..m)
        .map(|ell| {
            let mut center = 2.0 * pi * f64::from(ell) / f64::from(m);
            if center > pi {
                center -= 2.0 * pi;
            }
            let half = pi / f64::from(m);
            let (nu_at, val) = nu
                .iter()
                .zip(&log_abs)
                .filter(|(v, _)| (**v - center).abs() <= half)
                .fold((center, f64::NEG_INFINITY), |best, (v, val)| if *val > best.1 { (*v, *val) } else { best });
            SecondaryPeak { ell, center, nu: nu_at, log_abs: val }
        })
        .collect();

    // ν_j and ν_{G-j} are mirror images
    let evenness_defect = (1..grid_size)
        .map(|j| (log_abs[j - 1] - log_abs[grid_size - j - 1]).abs())
        .fold(0.0, f64::max);

    Ok(DominanceProfile {
        kappa,
        rho,
        argmax_nu: nu[argmax],
        nu,
        log_abs,
        major_max,
        minor_max,
        secondary,
        evenness_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p13() -> StackParams {
        StackParams::standard(1, 3).unwrap()
    }

    #[test]
    fn peak_at_zero_for_one_three() {
        let prof = major_arc_dominance(&p13(), 500, 2048, 0.5).unwrap();
        assert_eq!(prof.argmax_nu, 0.0);
        assert!(prof.argmax_on_major_arc());
        assert!(prof.minor_major_ratio() < 1.0);
        assert!(prof.secondary_below_principal());
        assert_eq!(prof.secondary.len(), 2);
    }

    #[test]
    fn profile_is_even() {
        let prof = major_arc_dominance(&StackParams::standard(2, 5).unwrap(), 300, 1024, 0.5).unwrap();
        assert!(prof.evenness_defect < 1e-9, "{}", prof.evenness_defect);
    }

    #[test]
    fn saddle_value_tracks_two_n() {
        // ln|F L x^{-n}| at ν = 0 is 2N + ln(csc/4) + o(1)
        let p = p13();
        let prof = major_arc_dominance(&p, 2000, 64, 0.5).unwrap();
        let two_n = 2.0 * crate::asymptotics::compute_n(&p, 2000, Precision::digits(30)).unwrap().to_f64();
        let csc = 1.0 / (std::f64::consts::PI / 3.0).sin();
        let pred = two_n + (csc / 4.0).ln();
        assert!((prof.major_max - pred).abs() < 0.05, "{} vs {pred}", prof.major_max);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(major_arc_dominance(&p13(), 500, 7, 0.5).is_err());
        assert!(major_arc_dominance(&StackParams::gap(2, 3).unwrap(), 500, 64, 0.5).is_err());
    }
}
