//! Direct numerical route to the same Floquet data: integrate the Lamé
//! equation, build period maps, and rebuild solutions from the
//! hypergeometric basis.

mod reconstruct;
pub mod rk;

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

pub use reconstruct::{reconstruct_solution, reconstruct_state, Branch};

use crate::closedform::{FloquetResult, TransferMatrix};
use crate::error::{Error, Result};
use crate::specfun::{AgmLadder, EllipticModulus};

/// `|tr M| − 2` below this is reported as a repeated multiplier.
pub const DEFECTIVE_TRACE_TOL: f64 = 1e-9;

/// Solution value, its derivative and the position where they hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub x: f64,
    pub xp: f64,
    pub z: f64,
}

impl State {
    pub fn new(x: f64, xp: f64, z: f64) -> Self {
        Self { x, xp, z }
    }
}

/// Right-hand side of `X'' = −κ² cn²(z, 1/√2) X` for `M` stacked solutions.
struct Lame {
    kappa_sq: f64,
    ladder: AgmLadder,
}

impl Lame {
    fn new(kappa: f64) -> Result<Self> {
        check_inputs(kappa)?;
        Ok(Self {
            kappa_sq: kappa * kappa,
            ladder: AgmLadder::new(EllipticModulus::INV_SQRT_2),
        })
    }

    fn quarter(&self) -> f64 {
        self.ladder.quarter_period()
    }

    fn rhs<const N: usize>(&self, z: f64, y: &[f64; N]) -> [f64; N] {
        let cn = self.ladder.eval(z).cn;
        let w = self.kappa_sq * cn * cn;
        let mut out = [0.0; N];
        for i in (0..N).step_by(2) {
            out[i] = y[i + 1];
            out[i + 1] = -w * y[i];
        }
        out
    }

    /// Carries two stacked solutions `[X₁, X₁', X₂, X₂']` from `z0` to `z1`.
    ///
    /// A solution oscillates about κ times per period, so the per-step
    /// tolerance is divided by `max(1, κ)` to keep the accumulated error of
    /// a period map at the `tol` level.
    fn propagate(&self, z0: f64, z1: f64, y0: [f64; 4], tol: f64) -> Result<[f64; 4]> {
        let step_tol = tol / self.kappa_sq.sqrt().max(1.0);
        rk::integrate(|z, y: &[f64; 4]| self.rhs(z, y), z0, y0, z1, step_tol).map(|(y, _)| y)
    }
}

fn check_inputs(kappa: f64) -> Result<()> {
    if !kappa.is_finite() || kappa < 0.0 {
        return Err(Error::domain(format!(
            "kappa must be finite and non-negative, got {kappa}"
        )));
    }
    Ok(())
}

/// Advances `start` to `z_end` along `X'' + κ² cn²(z, 1/√2) X = 0`.
pub fn integrate_lame(kappa: f64, start: State, z_end: f64, tol: f64) -> Result<State> {
    let lame = Lame::new(kappa)?;
    let (y, _) = rk::integrate(
        |z, y: &[f64; 2]| lame.rhs(z, y),
        start.z,
        [start.x, start.xp],
        z_end,
        tol,
    )?;
    Ok(State::new(y[0], y[1], z_end))
}

/// State-transition matrix `[[X₁, X₂], [X₁', X₂']]` over one span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyMatrix {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl MonodromyMatrix {
    fn from_columns(y: [f64; 4]) -> Self {
        Self {
            m11: y[0],
            m21: y[1],
            m12: y[2],
            m22: y[3],
        }
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }
}

/// Maps over `[0, T/2]` and `[0, T]`, from one integration with a forced
/// step boundary at `T/2`.
fn period_maps(kappa: f64, tol: f64) -> Result<(MonodromyMatrix, MonodromyMatrix)> {
    let lame = Lame::new(kappa)?;
    let half_period = 2.0 * lame.quarter();
    let half = lame.propagate(0.0, half_period, [1.0, 0.0, 0.0, 1.0], tol)?;
    let full = lame.propagate(half_period, 2.0 * half_period, half, tol)?;
    Ok((
        MonodromyMatrix::from_columns(half),
        MonodromyMatrix::from_columns(full),
    ))
}

/// Full-period state-transition matrix, starting at `z = 0` where `cn = 1`.
pub fn monodromy(kappa: f64, tol: f64) -> Result<MonodromyMatrix> {
    period_maps(kappa, tol).map(|(_, full)| full)
}

/// Roots of `r² − tr·r + 1`, larger modulus first when real.
fn unimodular_roots(trace: f64) -> (Complex64, Complex64) {
    let disc = trace * trace - 4.0;
    if disc >= 0.0 {
        let big = 0.5 * (trace + trace.signum() * disc.sqrt());
        (Complex64::new(big, 0.0), Complex64::new(1.0 / big, 0.0))
    } else {
        let im = 0.5 * (-disc).sqrt();
        (
            Complex64::new(0.5 * trace, im),
            Complex64::new(0.5 * trace, -im),
        )
    }
}

/// Multipliers as eigenvalues of the numerical monodromy (using `det = 1`),
/// exponents `μ = Log ρ / T`. The half-period eigenvalues `λ` come from the
/// intermediate map at `T/2` and are ordered so that `λ₁² ≈ ρ₁`.
pub fn numeric_exponents(kappa: f64, tol: f64) -> Result<FloquetResult> {
    let (half, full) = period_maps(kappa, tol)?;
    let period = 4.0 * Lame::new(kappa)?.quarter();
    let trace = full.trace();
    let (rho1, rho2) = if (trace.abs() - 2.0).abs() <= DEFECTIVE_TRACE_TOL {
        let r = Complex64::new(0.5 * trace, 0.0);
        (r, r)
    } else {
        unimodular_roots(trace)
    };
    let mu1 = rho1.ln() / period;
    let mu2 = rho2.ln() / period;
    let (mut lambda1, mut lambda2) = unimodular_roots(half.trace());
    if (lambda1 * lambda1 - rho1).norm() > (lambda2 * lambda2 - rho1).norm() {
        std::mem::swap(&mut lambda1, &mut lambda2);
    }
    Ok(FloquetResult {
        lambda1,
        lambda2,
        rho1,
        rho2,
        mu1,
        mu2,
        mu_tilde: mu1.re.max(mu2.re).max(0.0),
    })
}

/// Coefficient transfer over `[K, 3K]`, between consecutive zeros of `cn`.
///
/// At a zero of `cn` the coefficients of `X = c₁φ₁ + c₂φ₂` on the branch
/// that opens there (where `y = cn⁴` rises) are `c₁ = X`, `c₂ = √2 X'`.
/// Both endpoints open a rising branch, so the map is `S·Φ(3K, K)·S⁻¹` with
/// `S = diag(1, √2)`.
pub fn halfperiod_transfer_numeric(kappa: f64, tol: f64) -> Result<TransferMatrix> {
    let lame = Lame::new(kappa)?;
    let k = lame.quarter();
    let y = lame.propagate(k, 3.0 * k, [1.0, 0.0, 0.0, 1.0 / SQRT_2], tol)?;
    Ok(TransferMatrix {
        t11: y[0],
        t21: SQRT_2 * y[1],
        t12: y[2],
        t22: SQRT_2 * y[3],
    })
}
