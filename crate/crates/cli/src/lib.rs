//! Command implementations behind the `lame-floquet` binary.
//!
//! Parsing lives in [`Cli`]; [`RunConfig::from_cli`] validates the arguments and
//! [`execute`] produces the output bytes and exit status. Keeping these apart lets
//! the tests drive commands without spawning a process.

pub mod format;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use lame_floquet::closedform::{self, AmplificationBand};
use lame_floquet::{oracle, verify, Error, FloquetResult};

use format::{num, opt_int, render, round12, Format, Record};

#[derive(Debug, Parser)]
#[command(
    name = "lame-floquet",
    version,
    about = "Floquet exponents of the Lamé equation at k = 1/sqrt(2)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multipliers and exponents at a single coupling.
    Exponents {
        #[arg(long, allow_negative_numbers = true)]
        kappa: f64,
        /// Also integrate the ODE and report the discrepancy.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The first amplification bands and their peaks.
    Bands {
        #[arg(long, allow_negative_numbers = true)]
        n_max: i64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Growth rate on a uniform coupling grid.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        kappa_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        kappa_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the built-in consistency checks.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Integrator tolerance for oracle runs.
    #[arg(long, default_value_t = verify::DEFAULT_TOL, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    Exponents {
        kappa: f64,
        oracle: bool,
    },
    Bands {
        n_max: u32,
    },
    Sweep {
        kappa_min: f64,
        kappa_max: f64,
        steps: usize,
        oracle: bool,
    },
    Verify,
}

/// Validated command line.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub(crate) fn from_csv(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }

    /// 2 for usage and domain errors, 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (mode, common) = match cli.command {
            Command::Exponents {
                kappa,
                oracle,
                common,
            } => {
                if !(kappa >= 0.0 && kappa.is_finite()) {
                    return Err(usage(format!(
                        "--kappa must be finite and non-negative, got {kappa}"
                    )));
                }
                (Mode::Exponents { kappa, oracle }, common)
            }
            Command::Bands { n_max, common } => {
                let n_max = u32::try_from(n_max)
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| {
                        usage(format!("--n-max must be a positive integer, got {n_max}"))
                    })?;
                (Mode::Bands { n_max }, common)
            }
            Command::Sweep {
                kappa_min,
                kappa_max,
                steps,
                oracle,
                common,
            } => {
                if !(kappa_min >= 0.0 && kappa_max.is_finite()) {
                    return Err(usage(
                        "--kappa-min must be non-negative and --kappa-max finite",
                    ));
                }
                if kappa_min >= kappa_max {
                    return Err(usage(format!(
                        "--kappa-min ({kappa_min}) must be below --kappa-max ({kappa_max})"
                    )));
                }
                if steps < 2 {
                    return Err(usage(format!("--steps must be at least 2, got {steps}")));
                }
                (
                    Mode::Sweep {
                        kappa_min,
                        kappa_max,
                        steps,
                        oracle,
                    },
                    common,
                )
            }
            Command::Verify { common } => (Mode::Verify, common),
        };
        if !(common.tol > 0.0 && common.tol.is_finite()) {
            return Err(usage(format!("--tol must be positive, got {}", common.tol)));
        }
        Ok(RunConfig {
            mode,
            tol: common.tol,
            format: common.format,
            output: common.out,
        })
    }
}

/// What a command produced: bytes for the output sink and whether it succeeded.
#[derive(Debug)]
pub struct Outcome {
    pub body: Vec<u8>,
    pub passed: bool,
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let body = match config.mode {
        Mode::Exponents { kappa, oracle } => render(
            &[exponent_report(kappa, oracle, config.tol)?],
            config.format,
        )?,
        Mode::Bands { n_max } => render(&band_rows(n_max)?, config.format)?,
        Mode::Sweep {
            kappa_min,
            kappa_max,
            steps,
            oracle,
        } => {
            let kappas = uniform_grid(kappa_min, kappa_max, steps);
            render(&sweep_rows(&kappas, oracle, config.tol)?, config.format)?
        }
        Mode::Verify => {
            let report = verify::run(config.tol);
            let mut body = Vec::new();
            for check in &report.checks {
                writeln!(body, "{check}")?;
            }
            return Ok(Outcome {
                body,
                passed: report.passed(),
            });
        }
    };
    Ok(Outcome { body, passed: true })
}

/// `steps` points from `lo` to `hi` inclusive, with the last point exactly `hi`.
pub fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last
            }
        })
        .collect()
}

fn write_output(config: &RunConfig, body: &[u8]) -> io::Result<()> {
    match &config.output {
        Some(path) => fs::write(path, body),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body)?;
            stdout.flush()
        }
    }
}

/// Parses, runs and reports, returning the process exit code.
pub fn main_with(cli: Cli) -> ExitCode {
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let outcome = execute(&config)?;
        write_output(&config, &outcome.body)?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("lame-floquet: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("lame-floquet: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentReport {
    pub kappa: f64,
    pub delta: f64,
    pub lambda_re1: f64,
    pub lambda_im1: f64,
    pub lambda_re2: f64,
    pub lambda_im2: f64,
    pub rho_re1: f64,
    pub rho_im1: f64,
    pub rho_re2: f64,
    pub rho_im2: f64,
    pub mu_re1: f64,
    pub mu_im1: f64,
    pub mu_re2: f64,
    pub mu_im2: f64,
    pub mu_tilde: f64,
    pub in_band: bool,
    pub band_index: Option<u32>,
    #[serde(flatten)]
    pub oracle: Option<OracleColumns>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleColumns {
    pub oracle_rho_re1: f64,
    pub oracle_rho_im1: f64,
    pub oracle_rho_re2: f64,
    pub oracle_rho_im2: f64,
    pub oracle_mu_tilde: f64,
    pub abs_diff_rho: f64,
    pub abs_diff_mu_tilde: f64,
}

/// Largest multiplier mismatch under the better of the two pairings.
fn multiplier_distance(a: &FloquetResult, b: &FloquetResult) -> f64 {
    let straight = (a.rho1 - b.rho1).norm().max((a.rho2 - b.rho2).norm());
    let swapped = (a.rho1 - b.rho2).norm().max((a.rho2 - b.rho1).norm());
    straight.min(swapped)
}

fn split(z: Complex64) -> (f64, f64) {
    (round12(z.re), round12(z.im))
}

pub fn exponent_report(
    kappa: f64,
    with_oracle: bool,
    tol: f64,
) -> Result<ExponentReport, CliError> {
    let params = closedform::reduce_to_hypergeometric(kappa)?;
    let f = closedform::multipliers_exponents(kappa)?;
    let band_index = closedform::band_index(kappa)?;
    let oracle = if with_oracle {
        let g = oracle::numeric_exponents(kappa, tol)?;
        let (r1, i1) = split(g.rho1);
        let (r2, i2) = split(g.rho2);
        Some(OracleColumns {
            oracle_rho_re1: r1,
            oracle_rho_im1: i1,
            oracle_rho_re2: r2,
            oracle_rho_im2: i2,
            oracle_mu_tilde: round12(g.mu_tilde),
            abs_diff_rho: round12(multiplier_distance(&f, &g)),
            abs_diff_mu_tilde: round12((f.mu_tilde - g.mu_tilde).abs()),
        })
    } else {
        None
    };
    let (lambda_re1, lambda_im1) = split(f.lambda1);
    let (lambda_re2, lambda_im2) = split(f.lambda2);
    let (rho_re1, rho_im1) = split(f.rho1);
    let (rho_re2, rho_im2) = split(f.rho2);
    let (mu_re1, mu_im1) = split(f.mu1);
    let (mu_re2, mu_im2) = split(f.mu2);
    Ok(ExponentReport {
        kappa: round12(kappa),
        delta: round12(params.diff),
        lambda_re1,
        lambda_im1,
        lambda_re2,
        lambda_im2,
        rho_re1,
        rho_im1,
        rho_re2,
        rho_im2,
        mu_re1,
        mu_im1,
        mu_re2,
        mu_im2,
        mu_tilde: round12(f.mu_tilde),
        in_band: band_index.is_some(),
        band_index,
        oracle,
    })
}

impl Record for ExponentReport {
    fn header(&self) -> Vec<&'static str> {
        let mut h = vec![
            "kappa",
            "delta",
            "lambda_re1",
            "lambda_im1",
            "lambda_re2",
            "lambda_im2",
            "rho_re1",
            "rho_im1",
            "rho_re2",
            "rho_im2",
            "mu_re1",
            "mu_im1",
            "mu_re2",
            "mu_im2",
            "mu_tilde",
            "in_band",
            "band_index",
        ];
        if self.oracle.is_some() {
            h.extend([
                "oracle_rho_re1",
                "oracle_rho_im1",
                "oracle_rho_re2",
                "oracle_rho_im2",
                "oracle_mu_tilde",
                "abs_diff_rho",
                "abs_diff_mu_tilde",
            ]);
        }
        h
    }

    fn fields(&self) -> Vec<String> {
        let mut v: Vec<String> = [
            self.kappa,
            self.delta,
            self.lambda_re1,
            self.lambda_im1,
            self.lambda_re2,
            self.lambda_im2,
            self.rho_re1,
            self.rho_im1,
            self.rho_re2,
            self.rho_im2,
            self.mu_re1,
            self.mu_im1,
            self.mu_re2,
            self.mu_im2,
            self.mu_tilde,
        ]
        .into_iter()
        .map(num)
        .collect();
        v.push(self.in_band.to_string());
        v.push(opt_int(self.band_index));
        if let Some(o) = &self.oracle {
            v.extend(
                [
                    o.oracle_rho_re1,
                    o.oracle_rho_im1,
                    o.oracle_rho_re2,
                    o.oracle_rho_im2,
                    o.oracle_mu_tilde,
                    o.abs_diff_rho,
                    o.abs_diff_mu_tilde,
                ]
                .map(num),
            );
        }
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BandRow {
    pub n: u32,
    pub kappa_lo: f64,
    pub kappa_hi: f64,
    pub kappa_peak: f64,
    pub mu_peak: f64,
}

pub fn band_rows(n_max: u32) -> Result<Vec<BandRow>, CliError> {
    (1..=n_max)
        .map(|n| {
            let b = AmplificationBand::new(n)?;
            Ok(BandRow {
                n: b.n,
                kappa_lo: round12(b.kappa_lo),
                kappa_hi: round12(b.kappa_hi),
                kappa_peak: round12(b.kappa_peak),
                mu_peak: round12(b.mu_peak),
            })
        })
        .collect()
}

impl Record for BandRow {
    fn header(&self) -> Vec<&'static str> {
        vec!["n", "kappa_lo", "kappa_hi", "kappa_peak", "mu_peak"]
    }

    fn fields(&self) -> Vec<String> {
        let mut v = vec![self.n.to_string()];
        v.extend([self.kappa_lo, self.kappa_hi, self.kappa_peak, self.mu_peak].map(num));
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub kappa: f64,
    pub delta: f64,
    pub mu_re1: f64,
    pub mu_im1: f64,
    pub mu_re2: f64,
    pub mu_im2: f64,
    pub mu_tilde: f64,
    pub in_band: bool,
    pub band_index: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_mu_tilde: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_diff_mu_tilde: Option<f64>,
}

pub const SWEEP_HEADER: [&str; 9] = [
    "kappa",
    "delta",
    "mu_re1",
    "mu_im1",
    "mu_re2",
    "mu_im2",
    "mu_tilde",
    "in_band",
    "band_index",
];

fn sweep_row(kappa: f64, with_oracle: bool, tol: f64) -> Result<SweepRow, CliError> {
    let params = closedform::reduce_to_hypergeometric(kappa)?;
    let f = closedform::multipliers_exponents(kappa)?;
    let band_index = closedform::band_index(kappa)?;
    let oracle_mu_tilde = if with_oracle {
        Some(oracle::numeric_exponents(kappa, tol)?.mu_tilde)
    } else {
        None
    };
    let (mu_re1, mu_im1) = split(f.mu1);
    let (mu_re2, mu_im2) = split(f.mu2);
    Ok(SweepRow {
        kappa: round12(kappa),
        delta: round12(params.diff),
        mu_re1,
        mu_im1,
        mu_re2,
        mu_im2,
        mu_tilde: round12(f.mu_tilde),
        in_band: band_index.is_some(),
        band_index,
        oracle_mu_tilde: oracle_mu_tilde.map(round12),
        abs_diff_mu_tilde: oracle_mu_tilde.map(|g| round12((f.mu_tilde - g).abs())),
    })
}

/// Rows in grid order; points are evaluated in parallel.
pub fn sweep_rows(kappas: &[f64], with_oracle: bool, tol: f64) -> Result<Vec<SweepRow>, CliError> {
    kappas
        .par_iter()
        .map(|&k| sweep_row(k, with_oracle, tol))
        .collect()
}

impl Record for SweepRow {
    fn header(&self) -> Vec<&'static str> {
        let mut h = SWEEP_HEADER.to_vec();
        if self.oracle_mu_tilde.is_some() {
            h.extend(["oracle_mu_tilde", "abs_diff_mu_tilde"]);
        }
        h
    }

    fn fields(&self) -> Vec<String> {
        let mut v: Vec<String> = [
            self.kappa,
            self.delta,
            self.mu_re1,
            self.mu_im1,
            self.mu_re2,
            self.mu_im2,
            self.mu_tilde,
        ]
        .map(num)
        .to_vec();
        v.push(self.in_band.to_string());
        v.push(opt_int(self.band_index));
        v.extend(self.oracle_mu_tilde.map(num));
        v.extend(self.abs_diff_mu_tilde.map(num));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("lame-floquet").chain(args.iter().copied()))
            .map_err(|e| usage(e.to_string()))?;
        RunConfig::from_cli(cli)
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = uniform_grid(0.3, 9.7, 7);
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 0.3);
        assert_eq!(*g.last().unwrap(), 9.7);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_arguments() {
        for args in [
            &["exponents", "--kappa", "-1"][..],
            &["exponents", "--kappa", "2", "--tol", "0"],
            &["bands", "--n-max", "0"],
            &["bands", "--n-max", "-3"],
            &["sweep", "--kappa-min", "2", "--kappa-max", "1"],
            &[
                "sweep",
                "--kappa-min",
                "0",
                "--kappa-max",
                "1",
                "--steps",
                "1",
            ],
            &["verify", "--tol", "-1e-8"],
        ] {
            let err = parse(args).expect_err("should be rejected");
            assert_eq!(err.exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn numerical_failures_map_to_three() {
        let err = exponent_report(1.2, true, 1e-30).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn sweep_preserves_grid_order() {
        let kappas = uniform_grid(0.0, 10.0, 41);
        let rows = sweep_rows(&kappas, false, 1e-10).unwrap();
        for (row, k) in rows.iter().zip(&kappas) {
            assert_eq!(row.kappa, round12(*k));
        }
    }

    #[test]
    fn exponent_header_matches_fields() {
        for oracle in [false, true] {
            let r = exponent_report(1.5, oracle, 1e-10).unwrap();
            assert_eq!(r.header().len(), r.fields().len());
        }
    }
}
