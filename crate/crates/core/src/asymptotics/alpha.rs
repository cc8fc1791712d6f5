use rug::ops::Pow;
use rug::{Integer, Rational};

use super::AsymptoticError;
use crate::params::StackParams;

/// Highest `s` for which the cubic false-theta expansion determines `α_s`.
pub const MAX_ALPHA_INDEX: usize = 3;

/// Coefficients of the cubic approximating `f_{a,b}` in powers of `z = -2πiτ`:
/// `-1/2 + (b/8) z + (ab/32) z² + (b(6a² - b²)/384) z³`.
pub fn kks_cubic(a: i64, b: i64) -> [Rational; 4] {
    [
        Rational::from((-1, 2)),
        Rational::from((b, 8)),
        Rational::from((a * b, 32)),
        Rational::from((b * (6 * a * a - b * b), 384)),
    ]
}

/// Exact `α_0 ..= α_max_s` in `L(e^{-z}) = α_0 - Σ_{s≥1} α_s z^s + O(z^{max_s+1})`.
///
/// Uses `L(q) = -q^{2r} f_{m, -m-4r}(q)`: the series of `e^{-2rz}` times the
/// negated cubic.
pub fn alpha_coeffs(params: &StackParams, max_s: usize) -> Result<Vec<Rational>, AsymptoticError> {
    if max_s > MAX_ALPHA_INDEX {
        return Err(AsymptoticError::AlphaIndex(max_s));
    }
    let r = i64::from(params.r());
    let m = i64::from(params.m());
    let cubic = kks_cubic(m, -m - 4 * r);
    // e^{-2rz} = Σ (-2r)^k z^k / k!
    let mut exp_coeffs = Vec::with_capacity(max_s + 1);
    let mut factorial = Integer::from(1);
    for k in 0..=max_s {
        if k > 0 {
            factorial *= k as u32;
        }
        let num = Integer::from(-2 * r).pow(k as u32);
        exp_coeffs.push(Rational::from((num, factorial.clone())));
    }
    let mut out = Vec::with_capacity(max_s + 1);
    for s in 0..=max_s {
        let mut c = Rational::new();
        for i in 0..=s {
            c -= Rational::from(&exp_coeffs[i] * &cubic[s - i]);
        }
        out.push(if s == 0 { c } else { -c });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_zero_is_one_half() {
        for (r, m) in [(1, 3), (1, 4), (1, 5), (2, 5), (3, 7)] {
            let a = alpha_coeffs(&StackParams::standard(r, m).unwrap(), 3).unwrap();
            assert_eq!(a[0], Rational::from((1, 2)));
        }
    }

    #[test]
    fn alpha_one_closed_form() {
        for (r, m) in [(1, 3), (1, 4), (1, 5), (2, 5), (3, 7), (4, 9)] {
            let a = alpha_coeffs(&StackParams::standard(r, m).unwrap(), 1).unwrap();
            assert_eq!(a[1], Rational::from((4 * r as i64 - m as i64, 8)));
        }
    }

    #[test]
    fn hand_composed_values() {
        // (1,3): e^{-2z}(1/2 + 7z/8 + 21z²/32 + ...)
        let a = alpha_coeffs(&StackParams::standard(1, 3).unwrap(), 3).unwrap();
        assert_eq!(a[2], Rational::from((3, 32)));
        assert_eq!(a[3], Rational::from((53, 384)));
        // (1,4): L(q) = Σ (-1)^n q^{2n²} has no power-series corrections
        let b = alpha_coeffs(&StackParams::standard(1, 4).unwrap(), 3).unwrap();
        assert!(b[1..].iter().all(|c| *c == 0));
    }

    #[test]
    fn rejects_beyond_cubic() {
        assert!(matches!(
            alpha_coeffs(&StackParams::standard(1, 3).unwrap(), 4),
            Err(AsymptoticError::AlphaIndex(4))
        ));
    }
}
