//! Named verification suites with residuals and thresholds, for reporting.

use std::fmt;

use rug::{Complex, Float};
use serde::Serialize;

use crate::analytic::{
    check_eta_inversion, check_kks_bound, check_theta_oddness, check_theta_transform, contour_check, eta,
    l_consistency, random_points, theta_product, theta_sum, transform_residual_decay, Tau,
};
use crate::asymptotics::{bessel_i, BesselMethod};
use crate::gf::{gf_gap, gf_stack, r_support, verify_decomposition};
use crate::oracle::{count_stacks_dp, enumerate_stacks_explicit, OracleMode};
use crate::params::{StackParams, Variant};
use crate::precision::Precision;

/// Seed for the randomized theta and eta points.
pub const DEFAULT_SEED: u64 = 0x5eed_57ac;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn below(suite: &'static str, name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        let status = if residual <= threshold { Status::Pass } else { Status::Fail };
        Self { suite, name: name.into(), residual, threshold, status, detail: String::new() }
    }

    fn flag(suite: &'static str, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            suite,
            name: name.into(),
            residual: if ok { 0.0 } else { 1.0 },
            threshold: 0.0,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(suite: &'static str, name: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            suite,
            name: name.into(),
            residual: f64::NAN,
            threshold: f64::NAN,
            status: Status::Skipped,
            detail: why.into(),
        }
    }

    fn error(suite: &'static str, name: impl Into<String>, err: impl fmt::Display) -> Self {
        Self::flag(suite, name, false, err.to_string())
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        write!(f, "[{tag}] {}/{}", self.suite, self.name)?;
        if self.status != Status::Skipped && self.threshold > 0.0 {
            write!(f, "  residual={:.3e} threshold={:.1e}", self.residual, self.threshold)?;
        }
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub precision: Precision,
    pub rho: f64,
    /// Order for the decomposition identity.
    pub order: usize,
    /// Largest `n` for the oracle comparison.
    pub max_n: u64,
    pub points: usize,
    pub seed: u64,
    /// Relative tolerance for the contour quadrature.
    pub contour_tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            precision: Precision::default(),
            rho: 0.5,
            order: 500,
            max_n: 40,
            points: 20,
            seed: DEFAULT_SEED,
            contour_tolerance: 1e-3,
        }
    }
}

impl VerifyOptions {
    /// `10^{-(P-10)}`.
    pub fn identity_tolerance(&self) -> f64 {
        10f64.powi(-(self.precision.decimal_digits() as i32 - 10))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Decomposition,
    Theta,
    Eta,
    Transform,
    FalseTheta,
    Bessel,
    Contour,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Decomposition,
        Suite::Theta,
        Suite::Eta,
        Suite::Transform,
        Suite::FalseTheta,
        Suite::Bessel,
        Suite::Contour,
        Suite::Oracle,
    ];

    pub fn run(self, params: &StackParams, opts: &VerifyOptions) -> Vec<Check> {
        match self {
            Suite::Decomposition => decomposition(params, opts),
            Suite::Theta => theta(opts),
            Suite::Eta => eta_suite(opts),
            Suite::Transform => transform(params, opts),
            Suite::FalseTheta => false_theta(params, opts),
            Suite::Bessel => bessel(opts),
            Suite::Contour => contour(params, opts),
            Suite::Oracle => oracle(params, opts),
        }
    }
}

/// Runs `suites` in order; the report keeps that order.
pub fn run_suites(suites: &[Suite], params: &StackParams, opts: &VerifyOptions) -> Vec<Check> {
    suites.iter().flat_map(|s| s.run(params, opts)).collect()
}

fn decomposition(params: &StackParams, opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "decomposition";
    if params.variant() == Variant::Gap {
        return vec![Check::skipped(S, "identity", "S = F*L + R is stated for 2r < m only")];
    }
    let mut out = Vec::new();
    match verify_decomposition(params, opts.order) {
        Ok(report) => {
            let detail = match report.first_mismatch() {
                Some(m) => format!("first mismatch at q^{}: {} vs {}", m.exponent, m.stack, m.decomposed),
                None => format!("zero through order {}", opts.order),
            };
            out.push(Check::flag(S, "identity", report.is_identity(), detail));
        }
        Err(e) => out.push(Check::error(S, "identity", e)),
    }
    match r_support(params, opts.order) {
        Ok(support) => out.push(Check::flag(
            S,
            "r-coefficients",
            true,
            format!("{} nonzero terms, all +-1", support.len()),
        )),
        Err(e) => out.push(Check::error(S, "r-coefficients", e)),
    }
    out
}

fn theta(opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "theta";
    let tol = opts.identity_tolerance();
    let prec = opts.precision;
    let pts = random_points(opts.seed, opts.points, prec);
    let worst = |f: &dyn Fn(&Complex, &Tau) -> f64| pts.iter().map(|(w, t)| f(w, t)).fold(0.0, f64::max);
    let floor = {
        let mut f = prec.epsilon();
        f *= 1024u32;
        f
    };
    let sum_product = worst(&|w, t| {
        let s = theta_sum(w, t, prec);
        let p = theta_product(w, t, prec);
        crate::analytic::relative_residual(&s, &p, &floor)
    });
    let n = pts.len();
    vec![
        Check::below(S, "sum-vs-product", sum_product, tol).with_detail(format!("worst of {n} random points")),
        Check::below(S, "oddness", worst(&|w, t| check_theta_oddness(w, t, prec)), tol)
            .with_detail(format!("worst of {n} random points")),
        Check::below(S, "modular-transform", worst(&|w, t| check_theta_transform(w, t, prec)), tol)
            .with_detail(format!("worst of {n} random points")),
    ]
}

fn eta_suite(opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "eta";
    let tol = opts.identity_tolerance();
    let prec = opts.precision;
    let pts = random_points(opts.seed ^ 0xe7a, opts.points, prec);
    let worst = pts.iter().map(|(_, t)| check_eta_inversion(t, prec)).fold(0.0, f64::max);
    let i = Tau::from_f64(0.0, 1.0, prec).expect("i is in the upper half-plane");
    let at_i = eta(&i, prec);
    // Γ(1/4) / (2π^{3/4})
    let gamma = Float::with_val(prec.bits(), 0.25).gamma();
    let pi = prec.pi();
    let want = gamma / (Float::with_val(prec.bits(), pi.sqrt_ref()) * pi.sqrt().sqrt() * 2u32);
    let gap = Float::with_val(prec.bits(), at_i.real() - &want).abs() / &want;
    vec![
        Check::below(S, "inversion", worst, tol).with_detail(format!("worst of {} random points", pts.len())),
        Check::below(S, "value-at-i", gap.to_f64(), tol),
    ]
}

/// Point list for the `F` decay fit.
pub const DECAY_Z: [f64; 7] = [0.3, 0.25, 0.2, 0.15, 0.1, 0.075, 0.05];

fn transform(params: &StackParams, opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "transform";
    match transform_residual_decay(params, &DECAY_Z, opts.precision) {
        Ok(fit) => {
            let mut detail = format!("slope {:.4} vs {:.4}", fit.slope, fit.theoretical);
            if !fit.excluded.is_empty() {
                let zs: Vec<String> = fit.excluded.iter().map(|p| p.z.to_string()).collect();
                detail.push_str(&format!("; below precision floor at z = {}", zs.join(", ")));
            }
            vec![Check::below(S, "decay-slope", fit.relative_deviation(), 0.1).with_detail(detail)]
        }
        Err(e) => vec![Check::error(S, "decay-slope", e)],
    }
}

/// `τ = x + iy` samples inside `|x| <= y <= √3/8`.
pub fn bound_region_samples(count: usize) -> Vec<(f64, f64)> {
    let top = 3f64.sqrt() / 8.0;
    (0..count)
        .map(|k| {
            let y = top * (k + 1) as f64 / count as f64;
            let x = y * (2.0 * (k as f64 + 0.5) / count as f64 - 1.0);
            (x, y)
        })
        .collect()
}

fn false_theta(params: &StackParams, opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "falsetheta";
    if params.variant() == Variant::Gap {
        return vec![Check::skipped(S, "bound", "L(q) = -q^{2r} f_{m,-m-4r} needs 2r < m")];
    }
    let prec = opts.precision;
    let (r, m) = (i64::from(params.r()), i64::from(params.m()));
    let (a, b) = (m, -m - 4 * r);
    let mut out = Vec::new();
    let mut worst_margin = f64::INFINITY;
    let mut all = true;
    for (x, y) in bound_region_samples(10) {
        let tau = Tau::from_f64(x, y, prec).expect("y > 0");
        match check_kks_bound(a, b, &tau, prec) {
            Ok(c) => {
                all &= c.passed;
                worst_margin = worst_margin.min(c.margin_decades());
            }
            Err(e) => return vec![Check::error(S, "bound", e)],
        }
    }
    out.push(Check::flag(
        S,
        format!("bound (a={a}, b={b})"),
        all,
        format!("10 points, smallest margin {worst_margin:.1} decades"),
    ));
    let tau = Tau::from_f64(0.0, 0.1, prec).expect("y > 0");
    match l_consistency(params, &tau, prec) {
        Ok(res) => out.push(Check::below(S, "l-consistency", res, opts.identity_tolerance())),
        Err(e) => out.push(Check::error(S, "l-consistency", e)),
    }
    out
}

fn bessel(opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "bessel";
    let bits = opts.precision.bits();
    let mut worst: f64 = 0.0;
    for x in [30.0, 45.0, 60.0, 100.0, 200.0] {
        let xf = Float::with_val(bits, x);
        for k in 0..=4 {
            let series = bessel_i(k, &xf, BesselMethod::Series);
            let hankel = bessel_i(k, &xf, BesselMethod::Hankel);
            match (series, hankel) {
                (Ok(s), Ok(h)) => worst = worst.max(((h - &s) / s).abs().to_f64()),
                (Err(e), _) | (_, Err(e)) => return vec![Check::error(S, "series-vs-hankel", e)],
            }
        }
    }
    let symmetric = [0.5, 7.0, 42.0].iter().all(|&x| {
        let xf = Float::with_val(bits, x);
        bessel_i(-1, &xf, BesselMethod::Series).ok() == bessel_i(1, &xf, BesselMethod::Series).ok()
    });
    vec![
        Check::below(S, "series-vs-hankel", worst, 1e-8).with_detail("x in {30,45,60,100,200}, orders 0..4"),
        Check::flag(S, "negative-order", symmetric, "I_{-1} = I_1"),
    ]
}

/// Sizes for the shrinking-gap sequence.
pub const CONTOUR_NS: [u64; 4] = [50, 100, 200, 500];

fn contour(params: &StackParams, opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "contour";
    let mut gaps = Vec::new();
    for n in CONTOUR_NS {
        match contour_check(params, n, opts.rho, opts.precision) {
            Ok(c) => gaps.push(c),
            Err(e) => return vec![Check::error(S, format!("n={n}"), e)],
        }
    }
    let at200 = gaps.iter().find(|c| c.n == 200).expect("200 is in the list");
    let shrinking = gaps.windows(2).all(|w| w[1].relative_gap < w[0].relative_gap);
    let list: Vec<String> = gaps.iter().map(|c| format!("{}:{:.2e}", c.n, c.relative_gap)).collect();
    vec![
        Check::below(S, "h0-vs-bessel n=200", at200.relative_gap, opts.contour_tolerance).with_detail(format!(
            "rho={} raw ratio {:.6}",
            opts.rho, at200.raw_ratio
        )),
        Check::flag(S, "gap-shrinks", shrinking, list.join(" ")),
    ]
}

fn oracle(params: &StackParams, opts: &VerifyOptions) -> Vec<Check> {
    const S: &str = "oracle";
    let order = opts.max_n as usize;
    let series = match params.variant() {
        Variant::Standard => gf_stack(params, order),
        Variant::Gap => gf_gap(params, order),
    };
    let series = match series {
        Ok(s) => s,
        Err(e) => return vec![Check::error(S, "series-vs-dp", e)],
    };
    let mode = OracleMode::Congruence(*params);
    let first_bad = (1..=opts.max_n).find(|&n| series.coeff(n as usize) != Some(&count_stacks_dp(mode, n)));
    let explicit_max = opts.max_n.min(20);
    let explicit_bad = (1..=explicit_max).find(|&n| {
        let listed = enumerate_stacks_explicit(mode, n).map(|v| v.len()).unwrap_or(usize::MAX);
        count_stacks_dp(mode, n) != listed as u64
    });
    vec![
        Check::flag(
            S,
            "series-vs-dp",
            first_bad.is_none(),
            match first_bad {
                Some(n) => format!("differs at n = {n}"),
                None => format!("1 <= n <= {}", opts.max_n),
            },
        ),
        Check::flag(
            S,
            "dp-vs-explicit",
            explicit_bad.is_none(),
            match explicit_bad {
                Some(n) => format!("differs at n = {n}"),
                None => format!("1 <= n <= {explicit_max}"),
            },
        ),
    ]
}
