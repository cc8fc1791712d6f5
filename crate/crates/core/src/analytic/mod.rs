//! Numeric checks of the modular and asymptotic identities behind the main term.
//!
//! Fractional powers and square roots always take the principal branch.

mod contour;
mod dominance;
mod falsetheta;
mod fterm;
mod residuals;
mod theta;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Complex, Float};
use thiserror::Error;

use crate::asymptotics::AsymptoticError;
use crate::gf::GfError;
use crate::precision::Precision;

pub(crate) use relative_residual as residual;
pub use contour::{contour_check, hs_bessel_closed_form, wright_hs_numeric, ContourCheck, HsQuadrature};
pub use dominance::{major_arc_dominance, DominanceProfile, SecondaryPeak};
pub use falsetheta::{check_kks_bound, false_theta_f, kks_constant, kks_cubic_value, l_consistency, BoundCheck};
pub use fterm::{f_closed_form, f_eval, transform_residual_decay, DecayFit, DecayPoint};
pub use residuals::{write_residual_csv, ResidualRow};
pub use theta::{
    check_eta_inversion, check_theta_oddness, check_theta_transform, eta, theta_product, theta_sum,
};

/// Complex value carried at an explicit binary precision.
pub type HighPrecComplex = Complex;

#[derive(Debug, Error)]
pub enum AnalyticError {
    #[error("tau = {re} + {im}i is not in the upper half-plane")]
    NotUpperHalfPlane { re: f64, im: f64 },
    #[error("tau = {x} + {y}i is outside |x| <= y <= sqrt(3)/8")]
    OutsideBoundRegion { x: f64, y: f64 },
    #[error("z = {0} must be real and positive")]
    BadZ(f64),
    #[error("only {usable} usable points for the fit (need 2); {excluded} fell below the precision floor")]
    TooFewPoints { usable: usize, excluded: usize },
    #[error("quadrature did not converge after {levels} refinements (last disagreement {disagreement:e})")]
    NonConvergence { levels: u32, disagreement: f64 },
    #[error("{0} has no false theta decomposition; use a standard-variant pair")]
    StandardOnly(crate::params::StackParams),
    #[error("grid size {0} must be even and at least 8")]
    BadGrid(usize),
    #[error(transparent)]
    Asymptotic(#[from] AsymptoticError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// A point `τ` with `Im τ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tau(Complex);

impl Tau {
    pub fn new(value: Complex) -> Result<Self, AnalyticError> {
        if *value.imag() > 0 {
            Ok(Self(value))
        } else {
            Err(AnalyticError::NotUpperHalfPlane { re: value.real().to_f64(), im: value.imag().to_f64() })
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: Precision) -> Result<Self, AnalyticError> {
        Self::new(Complex::with_val(prec.bits(), (re, im)))
    }

    /// `τ = i z / (2π)` for real `z > 0`, the point where `q = e^{-z}`.
    pub fn from_z(z: &Float) -> Result<Self, AnalyticError> {
        if *z <= 0 {
            return Err(AnalyticError::BadZ(z.to_f64()));
        }
        let bits = z.prec();
        let im = Float::with_val(bits, z / Float::with_val(bits, Constant::Pi)) / 2u32;
        Ok(Self(Complex::with_val(bits, (Float::new(bits), im))))
    }

    pub fn value(&self) -> &Complex {
        &self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0
    }

    pub fn im_f64(&self) -> f64 {
        self.0.imag().to_f64()
    }

    pub fn re_f64(&self) -> f64 {
        self.0.real().to_f64()
    }

    /// `-1/τ`, again in the upper half-plane.
    pub fn inverted(&self) -> Self {
        let bits = self.prec();
        let minus_one = Complex::with_val(bits, -1);
        Self(minus_one / &self.0)
    }

    /// `q = e^{2πiτ}`.
    pub fn q(&self) -> Complex {
        exp_pi_i(&self.0, 2)
    }

    /// `τ` at `bits` precision.
    pub fn with_prec(&self, bits: u32) -> Self {
        Self(Complex::with_val(bits, &self.0))
    }
}

/// `e^{kπi·x}`.
pub(crate) fn exp_pi_i(x: &Complex, k: i32) -> Complex {
    let bits = x.prec().0;
    let pi_i = Complex::with_val(bits, (Float::new(bits), Float::with_val(bits, Constant::Pi)));
    (pi_i * x * k).exp()
}

pub(crate) fn abs(c: &Complex) -> Float {
    Float::with_val(c.prec().0, c.abs_ref())
}

/// `|a - b| / |b|`, or `|a - b|` when `|b|` is below `floor`.
pub fn relative_residual(a: &Complex, b: &Complex, floor: &Float) -> f64 {
    let diff = abs(&Complex::with_val(a.prec().0, a - b));
    let scale = abs(b);
    if scale < *floor {
        diff.to_f64()
    } else {
        (diff / scale).to_f64()
    }
}

/// `(P + extra) ln 10`: log of the reciprocal tail tolerance.
pub(crate) fn log_target(prec: Precision, extra: u32) -> f64 {
    f64::from(prec.decimal_digits() + extra) * std::f64::consts::LN_10
}

/// Working precision with guard bits for a target [`Precision`].
pub(crate) fn work_bits(prec: Precision) -> u32 {
    prec.bits() + 32
}

/// `count` pairs `(w, τ)` with `Re τ ∈ [-1, 1]`, `Im τ ∈ [0.3, 2]` and
/// `w` in the unit square centred at 0, from a seeded ChaCha stream.
pub fn random_points(seed: u64, count: usize, prec: Precision) -> Vec<(Complex, Tau)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits = prec.bits();
    (0..count)
        .map(|_| {
            let w = Complex::with_val(bits, (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)));
            let tau = Tau::from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0), prec)
                .expect("imaginary part is positive");
            (w, tau)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_rejects_lower_half_plane() {
        let p = Precision::default();
        assert!(Tau::from_f64(0.1, 0.0, p).is_err());
        assert!(Tau::from_f64(0.1, -1.0, p).is_err());
        assert!(Tau::from_f64(0.1, 1e-9, p).is_ok());
    }

    #[test]
    fn inversion_stays_upper() {
        let t = Tau::from_f64(0.9, 0.3, Precision::default()).unwrap();
        assert!(t.inverted().im_f64() > 0.0);
    }

    #[test]
    fn from_z_gives_real_q() {
        let p = Precision::digits(40);
        let t = Tau::from_z(&p.float(0.25)).unwrap();
        let q = t.q();
        let want = p.float(-0.25).exp();
        assert!((Float::with_val(p.bits(), q.real() - &want)).abs() < 1e-38);
        assert!(q.imag().clone().abs() < 1e-38);
    }

    #[test]
    fn random_points_are_reproducible() {
        let p = Precision::default();
        let a = random_points(7, 5, p);
        let b = random_points(7, 5, p);
        assert_eq!(a, b);
        assert!(a.iter().all(|(_, t)| (0.3..2.0).contains(&t.im_f64())));
    }
}
