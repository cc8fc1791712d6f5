//! `mcstack`: counts, asymptotic tables and numerical checks for
//! congruence-restricted stacks.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mcstack_core::asymptotics::{self, error_table, main_term_x, refined_h0, BigFloat10, EXACT_CEILING};
use mcstack_core::checks::{run_suites, Check, Status, Suite, VerifyOptions, DEFAULT_SEED};
use mcstack_core::export::series_to_json;
use mcstack_core::gf::{gf_gap, gf_stack};
use mcstack_core::{Precision, StackParams, TruncatedSeries, Variant};
use rug::Float;
use serde_json::json;

#[derive(Parser)]
#[command(name = "mcstack", version, about = "Stacks with congruence-restricted parts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact count for one size, or every coefficient up to an order.
    Count(CountArgs),
    /// Exact counts next to the leading asymptotic.
    Table(TableArgs),
    /// Run numerical verification suites.
    Verify(VerifyArgs),
    /// Leading asymptotic (and refinements) for one size.
    Asym(AsymArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    m: u32,
    /// Defaults to `standard` when 2r < m and `gap` when 2r > m.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Working precision in decimal digits.
    #[arg(long, env = "MCSTACK_PRECISION", default_value_t = 50, value_parser = clap::value_parser!(u32).range(30..))]
    precision: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Standard,
    Gap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("size").required(true))]
struct CountArgs {
    #[command(flatten)]
    common: Common,
    #[arg(short = 'n', group = "size")]
    n: Option<u64>,
    /// Print coefficients 0..=ORDER.
    #[arg(long, group = "size")]
    order: Option<u64>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
    /// Strictly increasing sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    which: Which,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 500)]
    order: usize,
    #[arg(long, default_value_t = 40)]
    max_n: u64,
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    /// Random points for the theta and eta checks.
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Relative tolerance for the contour check.
    #[arg(long, default_value_t = 1e-3)]
    contour_tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Decomposition,
    Theta,
    Eta,
    Transform,
    Falsetheta,
    Bessel,
    Contour,
    Oracle,
    All,
}

impl Which {
    fn suites(self) -> Vec<Suite> {
        match self {
            Which::Decomposition => vec![Suite::Decomposition],
            Which::Theta => vec![Suite::Theta],
            Which::Eta => vec![Suite::Eta],
            Which::Transform => vec![Suite::Transform],
            Which::Falsetheta => vec![Suite::FalseTheta],
            Which::Bessel => vec![Suite::Bessel],
            Which::Contour => vec![Suite::Contour],
            Which::Oracle => vec![Suite::Oracle],
            Which::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Args)]
struct AsymArgs {
    #[command(flatten)]
    common: Common,
    #[arg(short = 'n')]
    n: u64,
    /// Also print the refined s = 0 term.
    #[arg(long)]
    refined: bool,
    /// Show 40 significant digits instead of 5.
    #[arg(long)]
    full: bool,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    VerificationFailed,
}

impl Common {
    fn params(&self) -> Result<StackParams> {
        let p = match self.variant {
            None => StackParams::infer(self.r, self.m),
            Some(VariantArg::Standard) => StackParams::standard(self.r, self.m),
            Some(VariantArg::Gap) => StackParams::gap(self.r, self.m),
        };
        Ok(p?)
    }

    fn precision(&self) -> Precision {
        Precision::digits(self.precision)
    }

    fn emit(&self, payload: &str) -> Result<()> {
        match &self.output {
            Some(path) => {
                let mut f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
                f.write_all(payload.as_bytes())?;
            }
            None => io::stdout().lock().write_all(payload.as_bytes())?,
        }
        Ok(())
    }
}

fn series(params: &StackParams, order: u64) -> Result<TruncatedSeries> {
    if order > EXACT_CEILING {
        bail!("order {order} is above the supported ceiling {EXACT_CEILING}");
    }
    let s = match params.variant() {
        Variant::Standard => gf_stack(params, order as usize)?,
        Variant::Gap => gf_gap(params, order as usize)?,
    };
    Ok(s)
}

fn csv_string(rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn cmd_count(args: &CountArgs) -> Result<Outcome> {
    let c = &args.common;
    let params = c.params()?;
    let payload = match (args.n, args.order) {
        (Some(n), _) => {
            let value = series(&params, n)?.coeff(n as usize).cloned().unwrap_or_default().to_string();
            match c.format {
                Format::Text => format!("{value}\n"),
                Format::Json => {
                    let v = json!({"r": params.r(), "m": params.m(), "variant": params.variant(), "n": n, "count": value});
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
                Format::Csv => csv_string(&[vec!["n".into(), "count".into()], vec![n.to_string(), value]])?,
            }
        }
        (None, Some(order)) => {
            let s = series(&params, order)?;
            match c.format {
                Format::Text => s.coeffs().iter().enumerate().map(|(n, v)| format!("{n} {v}\n")).collect(),
                Format::Json => format!("{}\n", series_to_json(&params, &s)),
                Format::Csv => {
                    let mut rows = vec![vec!["n".to_string(), "count".to_string()]];
                    rows.extend(s.coeffs().iter().enumerate().map(|(n, v)| vec![n.to_string(), v.to_string()]));
                    csv_string(&rows)?
                }
            }
        }
        (None, None) => unreachable!("clap requires one of -n or --order"),
    };
    c.emit(&payload)?;
    Ok(Outcome::Ok)
}

fn cmd_table(args: &TableArgs) -> Result<Outcome> {
    let c = &args.common;
    let params = c.params()?;
    if args.values.windows(2).any(|w| w[0] >= w[1]) {
        bail!("--values must be strictly increasing");
    }
    let records = error_table(&params, &args.values)?;
    let payload = match c.format {
        Format::Text => {
            let mut out = format!("{:>8}  {:>12}  {:>12}  {:>10}\n", "n", "exact", "asymptotic", "rel. error");
            for rec in &records {
                let exact = mcstack_core::asymptotics::SciRounded::from_integer(&rec.exact, 5);
                out += &format!(
                    "{:>8}  {:>12}  {:>12}  {:>10.5}\n",
                    rec.n,
                    exact.to_string(),
                    rec.asymptotic.to_string(),
                    rec.relative_error
                );
            }
            out
        }
        Format::Json => format!("{}\n", asymptotics::to_json(&records)?),
        Format::Csv => {
            let mut buf = Vec::new();
            asymptotics::write_csv(&records, &mut buf)?;
            String::from_utf8(buf)?
        }
    };
    c.emit(&payload)?;
    Ok(Outcome::Ok)
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let c = &args.common;
    let params = c.params()?;
    if !(args.rho > 0.0 && args.rho.is_finite()) {
        bail!("--rho must be positive, got {}", args.rho);
    }
    if args.points == 0 {
        bail!("--points must be at least 1");
    }
    if args.contour_tol.is_nan() || args.contour_tol <= 0.0 {
        bail!("--contour-tol must be positive");
    }
    let opts = VerifyOptions {
        precision: c.precision(),
        rho: args.rho,
        order: args.order,
        max_n: args.max_n,
        points: args.points,
        seed: args.seed,
        contour_tolerance: args.contour_tol,
    };
    let checks = run_suites(&args.which.suites(), &params, &opts);
    let first_failure = checks.iter().find(|c| c.failed()).map(|c| format!("{}/{}", c.suite, c.name));
    let payload = match c.format {
        Format::Text => {
            let mut out = String::new();
            if let Some(name) = &first_failure {
                out += &format!("FAILED: {name}\n");
            }
            for check in &checks {
                out += &format!("{check}\n");
            }
            let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
            let failed = checks.iter().filter(|c| c.failed()).count();
            out += &format!("{passed} passed, {failed} failed, {} skipped\n", checks.len() - passed - failed);
            out
        }
        Format::Json => {
            let v = json!({
                "r": params.r(),
                "m": params.m(),
                "variant": params.variant(),
                "passed": first_failure.is_none(),
                "first_failure": first_failure,
                "checks": checks,
            });
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        Format::Csv => {
            let mut rows = vec![["suite", "name", "status", "residual", "threshold", "detail"].map(String::from).to_vec()];
            rows.extend(checks.iter().map(|c: &Check| {
                vec![
                    c.suite.to_string(),
                    c.name.clone(),
                    status_str(c.status).to_string(),
                    format!("{:e}", c.residual),
                    format!("{:e}", c.threshold),
                    c.detail.clone(),
                ]
            }));
            csv_string(&rows)?
        }
    };
    c.emit(&payload)?;
    if let Some(name) = first_failure {
        eprintln!("verification failed: {name}");
        return Ok(Outcome::VerificationFailed);
    }
    Ok(Outcome::Ok)
}

fn ln_string(x: &BigFloat10) -> String {
    Float::with_val(x.ln().prec(), x.ln()).to_string_radix(10, Some(25))
}

fn shown(x: &BigFloat10, full: bool) -> String {
    if full {
        let (mantissa, exp10) = x.to_parts();
        format!("{mantissa}e{exp10}")
    } else {
        x.to_string()
    }
}

fn value_json(x: &BigFloat10) -> serde_json::Value {
    let (mantissa, exp10) = x.to_parts();
    json!({"display": x.to_string(), "mantissa": mantissa, "exp10": exp10, "ln": ln_string(x)})
}

fn cmd_asym(args: &AsymArgs) -> Result<Outcome> {
    let c = &args.common;
    let params = c.params()?;
    let x = main_term_x(&params, args.n)?;
    let mut named = vec![("main_term", x)];
    if args.refined {
        let h = refined_h0(&params, args.n)?;
        named.push(("refined_leading", h.leading));
        named.push(("refined_bessel", h.bessel_form));
        named.push(("refined_bracketed", h.bracketed));
    }
    let payload = match c.format {
        Format::Text => named
            .iter()
            .map(|(name, v)| format!("{name:<18} {:>22}  ln {}\n", shown(v, args.full), ln_string(v)))
            .collect(),
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("r".into(), json!(params.r()));
            obj.insert("m".into(), json!(params.m()));
            obj.insert("variant".into(), json!(params.variant()));
            obj.insert("n".into(), json!(args.n));
            for (name, v) in &named {
                obj.insert((*name).into(), value_json(v));
            }
            format!("{}\n", serde_json::to_string_pretty(&obj)?)
        }
        Format::Csv => {
            let mut rows = vec![["quantity", "mantissa", "exp10", "ln"].map(String::from).to_vec()];
            for (name, v) in &named {
                let (mantissa, exp10) = v.to_parts();
                rows.push(vec![name.to_string(), mantissa, exp10.to_string(), ln_string(v)]);
            }
            csv_string(&rows)?
        }
    };
    c.emit(&payload)?;
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asym(a) => cmd_asym(a),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
