//! Dormand–Prince 5(4) embedded Runge–Kutta pair with a PI-free step
//! controller on a mixed absolute/relative error scale.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// 5th-order weights minus 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const MAX_STEPS: usize = 1_000_000;
/// Steps this close to the spacing of representable `z` mean the requested
/// tolerance is below what rounding allows.
const MIN_STEP_ULPS: f64 = 1e3;

/// Counters from one integration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (coef, k) in terms {
        for i in 0..N {
            out[i] += h * coef * k[i];
        }
    }
    out
}

/// Integrates `dy/dz = f(z, y)` from `z0` to `z1` (either direction), with
/// `tol` used for both the absolute and the relative error scale.
pub fn integrate<const N: usize, F>(
    mut f: F,
    z0: f64,
    y0: [f64; N],
    z1: f64,
    tol: f64,
) -> Result<([f64; N], StepStats)>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !z0.is_finite() || !z1.is_finite() || y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("integration bounds and state must be finite"));
    }
    let mut stats = StepStats::default();
    if z0 == z1 {
        return Ok((y0, stats));
    }
    let dir = (z1 - z0).signum();
    let span = (z1 - z0).abs();

    let mut z = z0;
    let mut y = y0;
    let mut k1 = f(z, &y);
    stats.rhs_evals += 1;
    let mut h = initial_step(&mut f, z, &y, &k1, dir, span, tol, &mut stats);

    while (z1 - z) * dir > 0.0 {
        if stats.accepted + stats.rejected >= MAX_STEPS {
            return Err(Error::TooManySteps {
                steps: MAX_STEPS,
                z_end: z1,
            });
        }
        let remaining = (z1 - z).abs();
        let last = h >= remaining;
        let hs = dir * if last { remaining } else { h };
        if h < MIN_STEP_ULPS * f64::EPSILON * z.abs().max(1.0) {
            return Err(Error::StepSizeUnderflow { z, h });
        }

        let k2 = f(z + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]));
        let k3 = f(z + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(
            z + C4 * hs,
            &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = f(
            z + C5 * hs,
            &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            z + hs,
            &axpy(
                &y,
                hs,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = axpy(
            &y,
            hs,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let z_new = if last { z1 } else { z + hs };
        let k7 = f(z_new, &y_new);
        stats.rhs_evals += 6;

        let mut err: f64 = 0.0;
        for i in 0..N {
            let e =
                hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = tol + tol * y[i].abs().max(y_new[i].abs());
            err = err.max((e / scale).abs());
        }

        if err <= 1.0 {
            z = z_new;
            y = y_new;
            k1 = k7;
            stats.accepted += 1;
            let factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                SAFETY * err.powf(-0.2)
            };
            h = hs.abs() * factor.clamp(MIN_FACTOR, MAX_FACTOR);
        } else {
            stats.rejected += 1;
            let factor = SAFETY * err.powf(-0.2);
            h = hs.abs() * factor.clamp(MIN_FACTOR, 1.0);
        }
    }
    Ok((y, stats))
}

/// Starting step from the local scale of `y` and `y'` (Hairer, Nørsett & Wanner).
#[allow(clippy::too_many_arguments)]
fn initial_step<const N: usize, F>(
    f: &mut F,
    z: f64,
    y: &[f64; N],
    dy: &[f64; N],
    dir: f64,
    span: f64,
    tol: f64,
    stats: &mut StepStats,
) -> f64
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let norm = |v: &[f64; N]| {
        (v.iter()
            .zip(y)
            .map(|(vi, yi)| (vi / (tol + tol * yi.abs())).powi(2))
            .sum::<f64>()
            / N as f64)
            .sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(dy);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1 = axpy(y, dir * h0, &[(1.0, dy)]);
    let dy1 = f(z + dir * h0, &y1);
    stats.rhs_evals += 1;
    let diff: [f64; N] = std::array::from_fn(|i| dy1[i] - dy[i]);
    let d2 = norm(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(span)
}
