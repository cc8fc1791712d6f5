use rug::Float;

use super::AsymptoticError;
use crate::params::StackParams;
use crate::precision::Precision;

/// `6r(m-r) - m² + 12mn`, the common radicand of `κ` and `N` scaled to an integer.
///
/// `κ = 2π / √D` and `N = π √D / (6m)`, so `κN = π²/(3m)` holds exactly.
fn radicand(params: &StackParams, n: u64) -> Result<i128, AsymptoticError> {
    let (r, m) = (i128::from(params.r()), i128::from(params.m()));
    let d = 6 * r * (m - r) - m * m + 12 * m * i128::from(n);
    if d <= 0 {
        return Err(AsymptoticError::NegativeRadicand { params: *params, n });
    }
    Ok(d)
}

/// Saddle point `κ = π / √(3r(m-r)/2 - m²/4 + 3mn)`.
pub fn compute_kappa(params: &StackParams, n: u64, prec: Precision) -> Result<Float, AsymptoticError> {
    let d = radicand(params, n)?;
    let root = prec.float(d).sqrt();
    Ok(prec.pi() * 2u32 / root)
}

/// Exponent scale `N = π √(r(m-r)/(6m²) - 1/36 + n/(3m)) = π²/(3mκ)`.
pub fn compute_n(params: &StackParams, n: u64, prec: Precision) -> Result<Float, AsymptoticError> {
    let d = radicand(params, n)?;
    let root = prec.float(d).sqrt();
    Ok(prec.pi() * root / (6 * params.m()))
}

/// Everything the circle method needs for one `(params, n)`.
#[derive(Debug, Clone)]
pub struct AsymptoticContext {
    pub params: StackParams,
    pub n: u64,
    pub kappa: Float,
    pub big_n: Float,
    /// Half-width of the major arc in units of `κ`.
    pub rho: f64,
    pub prec: Precision,
}

impl AsymptoticContext {
    pub fn new(params: StackParams, n: u64, rho: f64, prec: Precision) -> Result<Self, AsymptoticError> {
        if n == 0 {
            return Err(AsymptoticError::ZeroSize);
        }
        let kappa = compute_kappa(&params, n, prec)?;
        // the arc |ν| <= ρκ must stay inside (-π, π)
        if !(rho > 0.0 && rho * kappa.to_f64() < std::f64::consts::PI) {
            return Err(AsymptoticError::BadRho(rho));
        }
        Ok(Self {
            params,
            n,
            kappa,
            big_n: compute_n(&params, n, prec)?,
            rho,
            prec,
        })
    }

    /// Coefficient `r(m-r)/(2m) - m/12 + n` of `z` in the exponent of `w(z) x^{-n}`.
    pub fn linear_coefficient(&self) -> Float {
        let (r, m) = (self.params.r(), self.params.m());
        let mut c = self.prec.float(r * (m - r));
        c /= 2 * m;
        c -= self.prec.float(m) / 12u32;
        c + self.n
    }
}
