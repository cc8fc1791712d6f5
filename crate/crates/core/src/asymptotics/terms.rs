use rug::Float;

use super::bessel::{bessel_i, BesselMethod};
use super::bigfloat::{pi, BigFloat10, LOG_BITS};
use super::context::{compute_kappa, compute_n};
use super::AsymptoticError;
use crate::params::StackParams;
use crate::precision::Precision;

fn float(v: impl Into<f64>) -> Float {
    Float::with_val(LOG_BITS, v.into())
}

fn ln_of(v: u64) -> Float {
    Float::with_val(LOG_BITS, v).ln()
}

/// `ln csc(πr/m)`.
fn ln_csc(params: &StackParams) -> Float {
    let angle = pi() * params.r() / params.m();
    -angle.sin().ln()
}

/// Leading asymptotic `csc(πr/m) / (8·3^{1/4} m^{1/4} n^{3/4}) · e^{2π√(n/(3m))}`.
pub fn main_term_x(params: &StackParams, n: u64) -> Result<BigFloat10, AsymptoticError> {
    if n == 0 {
        return Err(AsymptoticError::ZeroSize);
    }
    let m = u64::from(params.m());
    let exponent = pi() * 2u32 * Float::with_val(LOG_BITS, n).sqrt() / Float::with_val(LOG_BITS, 3 * m).sqrt();
    let ln = ln_csc(params) - ln_of(8) - ln_of(3) / 4u32 - ln_of(m) / 4u32 - ln_of(n) * float(0.75) + exponent;
    Ok(BigFloat10::from_ln(ln))
}

/// Auluck's main term for unrestricted stacks,
/// `e^{2π√(n/3)} / (8·3^{3/4} n^{5/4})`.
pub fn auluck_main_term(n: u64) -> Result<BigFloat10, AsymptoticError> {
    if n == 0 {
        return Err(AsymptoticError::ZeroSize);
    }
    let exponent = pi() * 2u32 * (Float::with_val(LOG_BITS, n) / 3u32).sqrt();
    let ln = exponent - ln_of(8) - ln_of(3) * float(0.75) - ln_of(n) * float(1.25);
    Ok(BigFloat10::from_ln(ln))
}

/// The three refinements of the `s = 0` circle-method term.
#[derive(Debug, Clone)]
pub struct RefinedH0 {
    /// `csc(πr/m) / (24 m R^{3/4}) · e^{2N}` with
    /// `R = r(m-r)/(6m²) - 1/36 + n/(3m)`: the main term keeping the
    /// lower-order corrections inside `N`.
    pub leading: BigFloat10,
    /// `(csc(πr/m)/4) κ I_{-1}(2N)` with the Bessel function evaluated exactly.
    pub bessel_form: BigFloat10,
    /// `leading` times the Hankel bracket `1 - 3/(16N) - 15/(512N²)`.
    pub bracketed: BigFloat10,
    pub big_n: Float,
}

/// Refined `h_0` approximation; needs `2N >= 10`.
pub fn refined_h0(params: &StackParams, n: u64) -> Result<RefinedH0, AsymptoticError> {
    if n == 0 {
        return Err(AsymptoticError::ZeroSize);
    }
    let prec = Precision::digits(70);
    let big_n = compute_n(params, n, prec)?;
    let two_n = Float::with_val(LOG_BITS, &big_n * 2u32);
    if two_n < 10 {
        return Err(AsymptoticError::TooSmall { n, two_n: two_n.to_f64() });
    }
    let m = params.m();
    // R = (N/π)²
    let radical = Float::with_val(LOG_BITS, &big_n / pi()).square();
    let leading_ln = ln_csc(params) - ln_of(24 * u64::from(m)) - radical.ln() * float(0.75) + &two_n;
    let leading = BigFloat10::from_ln(leading_ln);

    let kappa = compute_kappa(params, n, prec)?;
    let i1 = bessel_i(-1, &two_n, BesselMethod::Series)?;
    let bessel_ln = ln_csc(params) - ln_of(4) + kappa.ln() + i1.ln();
    let bessel_form = BigFloat10::from_ln(bessel_ln);

    let inv = Float::with_val(LOG_BITS, big_n.recip_ref());
    let bracket = float(1.0) - Float::with_val(LOG_BITS, &inv * 3u32) / 16u32
        - Float::with_val(LOG_BITS, inv.square_ref()) * 15u32 / 512u32;
    let bracketed = BigFloat10::from_ln(Float::with_val(LOG_BITS, leading.ln() + bracket.ln()));

    Ok(RefinedH0 { leading, bessel_form, bracketed, big_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn p13() -> StackParams {
        StackParams::standard(1, 3).unwrap()
    }

    fn rel(a: &BigFloat10, want: &str) -> f64 {
        let w = BigFloat10::from_float(&Float::with_val(LOG_BITS, Float::parse(want).unwrap())).unwrap();
        (a.ratio(&w) - 1u32).to_f64().abs()
    }

    #[test]
    fn main_term_matches_independent_evaluation() {
        // 1/(12 n^{3/4}) e^{2π√n/3}, evaluated independently at 45 digits
        let cases = [
            (100, "3285951.22650560972117212354194643508315161497"),
            (1000, "27189288694830093286309496.1055266660139284919"),
            (10000, "7.5725533798176602166180759687638965638328565e86"),
        ];
        for (n, want) in cases {
            assert!(rel(&main_term_x(&p13(), n).unwrap(), want) < 1e-40, "n={n}");
        }
        let x14 = main_term_x(&StackParams::standard(1, 4).unwrap(), 100).unwrap();
        assert!(rel(&x14, "226391.569857068367510273874692915627625917679") < 1e-40);
    }

    #[test]
    fn table_rounding() {
        assert_eq!(main_term_x(&p13(), 1000).unwrap().to_string(), "2.7189e25");
        assert_eq!(main_term_x(&p13(), 10000).unwrap().to_string(), "7.5726e86");
        // 3285951.2 rounds up at five digits
        assert_eq!(main_term_x(&p13(), 100).unwrap().to_string(), "3.2860e6");
    }

    #[test]
    fn auluck_value_and_log_identity() {
        let a = auluck_main_term(100).unwrap();
        assert!(rel(&a, "985213094208.328974581860051002862262881205634") < 1e-40);
        let n = 777u64;
        let a = auluck_main_term(n).unwrap();
        let lhs = Float::with_val(LOG_BITS, a.ln() - pi() * 2u32 * (Float::with_val(LOG_BITS, n) / 3u32).sqrt());
        let rhs = -(Float::with_val(LOG_BITS, 8) * Float::with_val(LOG_BITS, 3).pow(0.75f64)
            * Float::with_val(LOG_BITS, n).pow(1.25f64)).ln();
        assert!((lhs - rhs).abs() < 1e-60);
    }

    #[test]
    fn refined_agrees_with_main_term_at_large_n() {
        let p = p13();
        let ratio = refined_h0(&p, 10_000).unwrap().leading.ratio(&main_term_x(&p, 10_000).unwrap());
        assert!(ratio > 0.999 && ratio < 1.001, "{ratio}");
        for n in [1000, 5000] {
            let ratio = refined_h0(&p, n).unwrap().leading.ratio(&main_term_x(&p, n).unwrap());
            assert!((ratio - 1u32).abs() < 1e-2);
        }
    }

    #[test]
    fn refined_exponent_is_two_n() {
        let p = StackParams::standard(2, 5).unwrap();
        let h = refined_h0(&p, 400).unwrap();
        let radical = Float::with_val(LOG_BITS, &h.big_n / pi()).square();
        let prefactor = (Float::with_val(LOG_BITS, 5) * 24u32 * radical.clone().pow(0.75f64)).recip()
            / (pi() * 2u32 / 5u32).sin();
        let lhs = Float::with_val(LOG_BITS, h.leading.ln() - Float::with_val(LOG_BITS, &h.big_n * 2u32));
        assert!((lhs - prefactor.ln()).abs() < 1e-60);
    }

    #[test]
    fn refined_needs_large_enough_n() {
        assert!(matches!(refined_h0(&p13(), 1), Err(AsymptoticError::TooSmall { .. })));
    }

    #[test]
    fn bessel_form_tracks_bracket() {
        // (csc/4) κ I_1(2N) and the two-term Hankel bracket differ by O(N^{-3})
        let h = refined_h0(&p13(), 2000).unwrap();
        let gap = (h.bessel_form.ratio(&h.bracketed) - 1u32).to_f64().abs();
        assert!(gap < 1e-4, "{gap}");
    }
}
