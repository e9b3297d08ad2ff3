//! Cross-check suite comparing the closed form with the numerical oracle.
//!
//! Each check reports the largest discrepancy it measured and the limit it
//! was held to. Limits that depend on the integration tolerance scale with
//! it and never drop below the values the suite is designed around
//! (`tol = 1e-12`).

use std::f64::consts::{LN_2, PI};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::closedform::{
    growth_rate, locate_bands, peak_growth_rate, period, reduce_to_hypergeometric, stable_gaps,
    transfer_matrix, AmplificationBand,
};
use crate::error::Result;
use crate::oracle::{
    halfperiod_transfer_numeric, integrate_lame, monodromy, numeric_exponents, reconstruct_state,
    Branch,
};
use crate::specfun::{complete_elliptic_k, gamma, hyp2f1, EllipticModulus};

/// Integration tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-10;

const SEED: u64 = 0x4c41_4d45;

/// One line of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub limit: f64,
    pub passed: bool,
    /// Set when the check could not be evaluated.
    pub failure: Option<String>,
}

impl Check {
    fn measure(name: &'static str, limit: f64, measured: Result<f64>) -> Self {
        match measured {
            Ok(m) => Self {
                name,
                measured: m,
                limit,
                passed: m <= limit,
                failure: None,
            },
            Err(e) => Self {
                name,
                measured: f64::NAN,
                limit,
                passed: false,
                failure: Some(e.to_string()),
            },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        match &self.failure {
            Some(msg) => write!(f, "[{tag}] {}: {msg}", self.name),
            None => write!(
                f,
                "[{tag}] {}: measured {:.3e} (limit {:.1e})",
                self.name, self.measured, self.limit
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Largest value of `f` over `items`, computed in parallel; the first error wins.
fn par_max<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64> {
    items
        .par_iter()
        .map(f)
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max))
}

/// `count` couplings drawn uniformly from the stable gaps of `[0, kappa_max]`.
pub fn sample_stable_kappas(rng: &mut impl Rng, kappa_max: f64, count: usize) -> Vec<f64> {
    let gaps = stable_gaps(kappa_max);
    (0..count)
        .map(|_| {
            let (lo, hi) = gaps[rng.gen_range(0..gaps.len())];
            rng.gen_range(lo..hi).max(f64::MIN_POSITIVE)
        })
        .collect()
}

/// A reconstruction sample `(κ, c₁, c₂, branch, z)`.
#[derive(Debug, Clone, Copy)]
pub struct BranchSample {
    pub kappa: f64,
    pub c1: f64,
    pub c2: f64,
    pub branch: Branch,
    pub z: f64,
}

pub fn sample_branch_points(rng: &mut impl Rng, kappa_max: f64, count: usize) -> Vec<BranchSample> {
    (0..count)
        .map(|_| {
            let branch = Branch::new(rng.gen_range(-2..4));
            BranchSample {
                kappa: rng.gen_range(0.0..kappa_max),
                c1: rng.gen_range(-1.0..1.0),
                c2: rng.gen_range(-1.0..1.0),
                branch,
                z: rng.gen_range(branch.start()..branch.end()),
            }
        })
        .collect()
}

/// `{0.0, 0.1, …, 10.0}`.
pub fn kappa_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 10.0).collect()
}

/// Runs the whole suite at integration tolerance `tol`.
pub fn run(tol: f64) -> VerificationReport {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut checks = Vec::new();

    checks.extend(special_function_checks());
    checks.extend(closed_form_checks());

    let grid = kappa_grid();
    checks.push(Check::measure(
        "monodromy determinant |det M - 1| on kappa grid",
        10.0 * tol.max(1e-12),
        par_max(&grid, |&k| Ok((monodromy(k, tol)?.det() - 1.0).abs())),
    ));
    checks.push(Check::measure(
        "oracle vs closed-form growth rate on kappa grid",
        (1e3 * tol).max(1e-7),
        par_max(&grid, |&k| {
            Ok((numeric_exponents(k, tol)?.mu_tilde - growth_rate(k)?).abs())
        }),
    ));

    let kappas: Vec<f64> = (0..200).map(|_| rng.gen_range(0.0..10.0)).collect();
    checks.push(Check::measure(
        "closed-form transfer determinant |det t - 1|",
        1e-10,
        par_max(&kappas, |&k| {
            Ok((transfer_matrix(&reduce_to_hypergeometric(k)?)?.det() - 1.0).abs())
        }),
    ));
    checks.push(Check::measure(
        "numeric half-period transfer vs closed form (entrywise)",
        (100.0 * tol).max(1e-7),
        par_max(&kappas, |&k| {
            let n = halfperiod_transfer_numeric(k, tol)?;
            let e = transfer_matrix(&reduce_to_hypergeometric(k)?)?;
            Ok([n.t11 - e.t11, n.t12 - e.t12, n.t21 - e.t21, n.t22 - e.t22]
                .iter()
                .fold(0.0, |m: f64, d| m.max(d.abs())))
        }),
    ));

    let gap_kappas = sample_stable_kappas(&mut rng, 10.0, 200);
    let gap_results: Result<Vec<_>> = gap_kappas
        .par_iter()
        .map(|&k| numeric_exponents(k, tol))
        .collect();
    match gap_results {
        Ok(results) => {
            let modulus = results
                .iter()
                .flat_map(|f| [f.rho1.norm(), f.rho2.norm()])
                .fold(0.0, |m: f64, r| m.max((r - 1.0).abs()));
            let product = results
                .iter()
                .fold(0.0, |m: f64, f| m.max((f.rho1 * f.rho2 - 1.0).norm()));
            checks.push(Check::measure(
                "stable-gap multipliers ||rho| - 1|",
                1e-8,
                Ok(modulus),
            ));
            checks.push(Check::measure(
                "stable-gap multipliers |rho1 rho2 - 1|",
                1e-9,
                Ok(product),
            ));
        }
        Err(e) => {
            checks.push(Check::measure(
                "stable-gap multipliers ||rho| - 1|",
                1e-8,
                Err(e.clone()),
            ));
            checks.push(Check::measure(
                "stable-gap multipliers |rho1 rho2 - 1|",
                1e-9,
                Err(e),
            ));
        }
    }

    let samples = sample_branch_points(&mut rng, 10.0, 50);
    checks.push(Check::measure(
        "hypergeometric reconstruction vs direct integration",
        (100.0 * tol).max(1e-8),
        par_max(&samples, |s| {
            let rec = reconstruct_state(s.kappa, s.c1, s.c2, s.branch, s.z)?;
            let num = integrate_lame(s.kappa, s.branch.zero_point_state(s.c1, s.c2), s.z, tol)?;
            Ok((rec.x - num.x).abs().max((rec.xp - num.xp).abs()))
        }),
    ));

    VerificationReport { checks }
}

fn special_function_checks() -> Vec<Check> {
    let g_half = gamma(0.5).map(|g| rel(g, PI.sqrt()));
    let k = complete_elliptic_k(EllipticModulus::INV_SQRT_2);
    let f = hyp2f1(1.0, 1.0, 2.0, 0.5).map(|v| rel(v, 2.0 * LN_2));
    vec![
        Check::measure(
            "K(1/sqrt2) = 1.8540746773",
            1e-10,
            Ok((k - 1.854_074_677_3).abs()),
        ),
        Check::measure("Gamma(1/2) = sqrt(pi), relative", 1e-13, g_half),
        Check::measure("F(1,1;2;1/2) = 2 ln 2, relative", 1e-11, f),
    ]
}

fn closed_form_checks() -> Vec<Check> {
    let t = period();
    let identity = gamma(0.25).map(|g| rel(t, g * g / PI.sqrt()));
    let peaks: Result<f64> = (1..=5).try_fold(0.0, |m: f64, n| {
        let band = AmplificationBand::new(n)?;
        Ok(m.max((growth_rate(band.kappa_peak)? - peak_growth_rate()).abs()))
    });
    let edges: Result<f64> = locate_bands(10.0).iter().try_fold(0.0, |m: f64, b| {
        Ok(m.max(growth_rate(b.kappa_lo - 1e-6)?)
            .max(growth_rate(b.kappa_hi + 1e-6)?))
    });
    let midpoints: Result<f64> = locate_bands(10.0)
        .iter()
        .try_fold(f64::INFINITY, |m: f64, b| {
            Ok(m.min(growth_rate(b.midpoint())?))
        });
    vec![
        Check::measure("period T = 7.4162987", 1e-6, Ok((t - 7.416_298_7).abs())),
        Check::measure(
            "period T = Gamma(1/4)^2/sqrt(pi), relative",
            1e-12,
            identity,
        ),
        Check::measure(
            "band peaks n=1..5 reach the universal maximum",
            1e-12,
            peaks,
        ),
        Check::measure("growth rate vanishes just outside bands n=1..7", 0.0, edges),
        // reported as the shortfall below 1e-4
        Check::measure(
            "growth rate exceeds 1e-4 at band midpoints n=1..7",
            0.0,
            midpoints.map(|m| (1e-4 - m).max(0.0)),
        ),
    ]
}
