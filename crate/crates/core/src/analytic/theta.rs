use rug::{Complex, Float};

use super::{abs, exp_pi_i, log_target, residual, work_bits, Tau};
use crate::precision::Precision;

/// Jacobi theta `Θ(w;τ) = Σ_{n ∈ ½+ℤ} e^{πin²τ + 2πin(w+½)}`.
///
/// The sum runs over `|n| <= K` with `K` chosen from the Gaussian bound
/// `|term| <= e^{-πyn² + 2π|Im w||n|}` so the tail stays below `10^{-(P+10)}`.
pub fn theta_sum(w: &Complex, tau: &Tau, prec: Precision) -> Complex {
    let bits = work_bits(prec);
    let y = tau.im_f64();
    let b = w.imag().to_f64().abs();
    let target = log_target(prec, 10) + (1.0 + 1.0 / (std::f64::consts::PI * y)).ln();
    // smallest K with πyK² - 2πbK >= target
    let pi = std::f64::consts::PI;
    let k_max = ((b + (b * b + target * y / pi).sqrt()) / y).ceil() as i64 + 1;
    let tau = Complex::with_val(bits, tau.value());
    let shift = Complex::with_val(bits, w) + Float::with_val(bits, 0.5);
    let mut sum = Complex::new(bits);
    for k in -k_max - 1..=k_max {
        let n = Float::with_val(bits, k) + 0.5f64;
        let n_sq = Float::with_val(bits, n.square_ref());
        let arg = Complex::with_val(bits, &tau * &n_sq) + Complex::with_val(bits, &shift * &n) * 2u32;
        sum += exp_pi_i(&arg, 1);
    }
    Complex::with_val(prec.bits(), sum)
}

/// Number of factors so that `|a| |q|^T < 10^{-(P+10)}` when `|a| <= e^{2π·slack}`.
fn product_length(tau: &Tau, slack: f64, prec: Precision) -> usize {
    let two_pi_y = 2.0 * std::f64::consts::PI * tau.im_f64();
    ((log_target(prec, 10) + 2.0 * std::f64::consts::PI * slack) / two_pi_y).ceil() as usize + 1
}

/// `(a;q)_T = ∏_{k<T} (1 - a q^k)`.
fn pochhammer(a: &Complex, q: &Complex, len: usize) -> Complex {
    let bits = q.prec().0;
    let mut out = Complex::with_val(bits, 1);
    let mut aq = Complex::with_val(bits, a);
    for _ in 0..len {
        out *= Complex::with_val(bits, 1) - &aq;
        aq *= q;
    }
    out
}

/// Triple-product form `-i q^{1/8} e^{-πiw} (q;q)_∞ (e^{2πiw};q)_∞ (e^{-2πiw}q;q)_∞`.
pub fn theta_product(w: &Complex, tau: &Tau, prec: Precision) -> Complex {
    let bits = work_bits(prec);
    let tau_w = tau.with_prec(bits);
    let w = Complex::with_val(bits, w);
    let len = product_length(tau, w.imag().to_f64().abs(), prec);
    let q = tau_w.q();
    let zeta = exp_pi_i(&w, 2);
    let zeta_inv_q = Complex::with_val(bits, &q / &zeta);
    let minus_i = Complex::with_val(bits, (0, -1));
    let q8 = exp_pi_i(&Complex::with_val(bits, tau_w.value() / 4u32), 1);
    let pre = minus_i * q8 * exp_pi_i(&w, -1);
    let prod = pochhammer(&q, &q, len) * pochhammer(&zeta, &q, len) * pochhammer(&zeta_inv_q, &q, len);
    Complex::with_val(prec.bits(), pre * prod)
}

fn floor(prec: Precision) -> Float {
    let mut f = prec.epsilon();
    f *= 1u32 << 10;
    f
}

/// `|Θ(-w;τ) + Θ(w;τ)| / |Θ(w;τ)|`.
pub fn check_theta_oddness(w: &Complex, tau: &Tau, prec: Precision) -> f64 {
    let plus = theta_sum(w, tau, prec);
    let minus = -theta_sum(&Complex::with_val(prec.bits(), -w), tau, prec);
    residual(&minus, &plus, &floor(prec))
}

/// Relative residual of `Θ(w/τ; -1/τ) = -i √(-iτ) e^{πiw²/τ} Θ(w;τ)`,
/// absolute when the right side vanishes.
pub fn check_theta_transform(w: &Complex, tau: &Tau, prec: Precision) -> f64 {
    let bits = work_bits(prec);
    let t = Complex::with_val(bits, tau.value());
    let w = Complex::with_val(bits, w);
    let w_over_tau = Complex::with_val(bits, &w / &t);
    let lhs = theta_sum(&w_over_tau, &tau.inverted(), prec);
    let minus_i = Complex::with_val(bits, (0, -1));
    let root = Complex::with_val(bits, &minus_i * &t).sqrt();
    let gauss = exp_pi_i(&(Complex::with_val(bits, w.square_ref()) / &t), 1);
    let rhs = minus_i * root * gauss * theta_sum(&w, tau, prec);
    residual(&lhs, &Complex::with_val(prec.bits(), rhs), &floor(prec))
}

/// Dedekind `η(τ) = e^{πiτ/12} ∏_{n>=1} (1 - q^n)`.
pub fn eta(tau: &Tau, prec: Precision) -> Complex {
    let bits = work_bits(prec);
    let t = tau.with_prec(bits);
    let q = t.q();
    let len = product_length(tau, 0.0, prec);
    let prod = pochhammer(&q, &q, len);
    let pre = exp_pi_i(&Complex::with_val(bits, t.value() / 12u32), 1);
    Complex::with_val(prec.bits(), pre * prod)
}

/// `|η(-1/τ) - √(-iτ) η(τ)| / |η(τ)|`.
pub fn check_eta_inversion(tau: &Tau, prec: Precision) -> f64 {
    let bits = work_bits(prec);
    let lhs = eta(&tau.inverted(), prec);
    let value = eta(tau, prec);
    let minus_i = Complex::with_val(bits, (0, -1));
    let root = Complex::with_val(bits, minus_i * tau.value()).sqrt();
    let rhs = Complex::with_val(prec.bits(), root * &value);
    let diff = abs(&Complex::with_val(prec.bits(), &lhs - &rhs));
    (diff / abs(&value)).to_f64()
}
