use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rigidity::braiding::BraidingSpec;
use rigidity::error::Error;
use rigidity::lie::{LieType, Series};
use rigidity::rigidity::{
    defect_51, kappa_table, mu_sign_spectrum_check, render, render_identities, render_weights,
    rigidity_report, run_suite, Backend, Format, IdentityRecord, RunConfig, SpectrumCheck, Status,
    Suite,
};
use rigidity::scalars::{fmt_rational, parse_rational, BigRational};

#[derive(Parser)]
#[command(
    name = "rigidity",
    version,
    about = "kappa-invariant rigidity checks for deformed classical quantum groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: weight sweep, identity suites, braiding defect, spectrum check.
    Report(Common),
    /// Casimir exponents and kappa moduli of the dominant weights.
    KappaTable(Common),
    /// One identity suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Norm of the capped braiding difference at the fundamental representation.
    Defect51(Common),
    /// Spectra of the kappa word under mu and -mu.
    SpectrumSignCheck(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long = "type", default_value = "A", value_parser = parse_series)]
    series: Series,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    #[arg(long, default_value = "1/2", value_parser = parse_mu, allow_hyphen_values = true)]
    mu: BigRational,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    omega: i64,
    #[arg(long, default_value_t = 3)]
    max_height: u32,
    #[arg(long, default_value_t = 3)]
    max_power: usize,
    #[arg(long, default_value = "cyclotomic", value_parser = parse_backend)]
    backend: Backend,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    #[arg(long, default_value_t = 4096)]
    threshold: usize,
}

fn parse_series(s: &str) -> Result<Series, String> {
    Series::parse(s).ok_or_else(|| format!("expected one of A, B, C, D, got {s:?}"))
}

fn parse_mu(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("expected a rational P/Q, got {s:?}"))
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    match s.parse() {
        Ok(Suite::Lie) | Err(_) => Err(format!(
            "expected one of hecke, braiding, tl, kw, got {s:?}"
        )),
        Ok(suite) => Ok(suite),
    }
}

const EXIT_IDENTITY: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_CONFIG: u8 = 5;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::Config(_)
        | Error::InvalidRank { .. }
        | Error::InvalidWeight { .. }
        | Error::Unrepresentable { .. } => EXIT_CONFIG,
        _ => EXIT_IDENTITY,
    }
}

impl Common {
    fn config(&self) -> Result<RunConfig, Error> {
        let cfg = RunConfig {
            lie_type: LieType::new(self.series, self.rank)?,
            mu: self.mu.clone(),
            omega_index: self.omega,
            max_height: self.max_height,
            max_power: self.max_power,
            backend: self.backend,
            threshold: self.threshold,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Serialize)]
struct DefectOutput {
    d: usize,
    mu: String,
    omega: String,
    defect_51: f64,
}

#[derive(Serialize)]
struct SpectrumOutput {
    d: usize,
    mu: String,
    negated_mu: String,
    checks: Vec<SpectrumCheck>,
}

fn identities_code(records: &[IdentityRecord]) -> u8 {
    if records.iter().any(|r| r.status == Status::Fail) {
        EXIT_IDENTITY
    } else if records.iter().any(|r| r.status == Status::Skipped) {
        EXIT_RESOURCE
    } else {
        0
    }
}

fn emit_serialized<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        ),
        _ => print!("{}", text()),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Report(c) => {
            let report = rigidity_report(&c.config()?)?;
            print!("{}", render(&report, c.format));
            Ok(report.verdict.exit_code as u8)
        }
        Command::KappaTable(c) => {
            print!("{}", render_weights(&kappa_table(&c.config()?)?, c.format));
            Ok(0)
        }
        Command::Verify { suite, common } => {
            let records = run_suite(&common.config()?, suite)?;
            print!("{}", render_identities(&records, common.format));
            Ok(identities_code(&records))
        }
        Command::Defect51(c) => {
            let cfg = c.config()?;
            let spec = BraidingSpec::new(cfg.hecke_params()?, cfg.omega_index);
            let value = defect_51(&spec, &cfg.limits())?;
            let out = DefectOutput {
                d: spec.d(),
                mu: fmt_rational(&cfg.mu),
                omega: spec.omega().to_string(),
                defect_51: value,
            };
            emit_serialized(&out, c.format, || match c.format {
                Format::Csv => format!(
                    "d,mu,omega,defect_51\n{},{},{},{:e}\n",
                    out.d, out.mu, out.omega, out.defect_51
                ),
                _ => format!(
                    "defect_51 (d={}, mu={}, omega={}) = {:.6e}\n",
                    out.d, out.mu, out.omega, out.defect_51
                ),
            });
            Ok(0)
        }
        Command::SpectrumSignCheck(c) => {
            let cfg = c.config()?;
            let p = cfg.hecke_params()?;
            let checks = (2..=cfg.max_power.min(p.d()))
                .map(|n| mu_sign_spectrum_check(&p, n, &cfg.limits()))
                .collect::<Result<Vec<_>, _>>()?;
            let code = if checks.iter().all(|c| c.passed) {
                0
            } else {
                EXIT_IDENTITY
            };
            let out = SpectrumOutput {
                d: p.d(),
                mu: fmt_rational(&cfg.mu),
                negated_mu: fmt_rational(&-cfg.mu.clone()),
                checks,
            };
            emit_serialized(&out, c.format, || {
                let mut s = match c.format {
                    Format::Csv => "n,distance,passed\n".to_string(),
                    _ => String::new(),
                };
                for ch in &out.checks {
                    s += &match c.format {
                        Format::Csv => format!("{},{:e},{}\n", ch.n, ch.distance, ch.passed),
                        _ => format!(
                            "n={}: mu={} vs {} distance {:.2e} {}\n",
                            ch.n,
                            out.mu,
                            out.negated_mu,
                            ch.distance,
                            if ch.passed { "ok" } else { "MISMATCH" }
                        ),
                    };
                }
                s
            });
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
