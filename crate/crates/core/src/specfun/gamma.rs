use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Above this the Lanczos sum loses accuracy; the recurrence takes over.
const LANCZOS_MAX_ARG: f64 = 8.0;

/// Largest argument for which Γ(x) is finite in `f64`.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with exact argument reduction, so integers give exact zeros.
pub fn sinpi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = reduce_mod2(x);
    if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (r - 0.5)).cos()
    } else if r <= 1.25 {
        (PI * (1.0 - r)).sin()
    } else if r <= 1.75 {
        -(PI * (r - 1.5)).cos()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// cos(πx) with exact argument reduction, so half-integers give exact zeros.
pub fn cospi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = reduce_mod2(x);
    if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        -(PI * (r - 0.5)).sin()
    } else if r <= 1.25 {
        -(PI * (r - 1.0)).cos()
    } else if r <= 1.75 {
        (PI * (r - 1.5)).sin()
    } else {
        (PI * (r - 2.0)).cos()
    }
}

/// Reduces a finite `x` into `[0, 2)`. `%` is exact for floats.
fn reduce_mod2(x: f64) -> f64 {
    let mut r = x % 2.0;
    if r < 0.0 {
        r += 2.0;
    }
    if r >= 2.0 {
        r -= 2.0;
    }
    r
}

fn lanczos(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let xm1 = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &p) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += p / (xm1 + i as f64);
    }
    let t = xm1 + LANCZOS_G + 0.5;
    // t^(x - 1/2) is split in two halves so the intermediate does not overflow
    // before the e^-t factor is applied.
    let half = t.powf(0.5 * (xm1 + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * sum
}

/// The Gamma function Γ(x).
///
/// Integers up to 171 are evaluated as exact factorial products; other
/// arguments use a Lanczos approximation, with the reflection formula
/// Γ(x)Γ(1−x) = π / sin(πx) below 1/2.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("gamma of NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(x));
    }
    if x == x.floor() {
        let n = x as u32;
        return Ok((2..n).fold(1.0, |acc, k| acc * k as f64));
    }
    if x > LANCZOS_MAX_ARG {
        // Γ(x) = Γ(f)·f(f+1)…(x−1) with f in [1, 2); every factor is exact
        // because it shares the ulp grid of x.
        let m = x.floor() - 1.0;
        let f = x - m;
        let mut g = lanczos(f);
        let mut k = 0.0;
        while k < m {
            g *= f + k;
            k += 1.0;
        }
        return if g.is_finite() {
            Ok(g)
        } else {
            Err(Error::Overflow(x))
        };
    }
    if x >= 0.5 {
        return Ok(lanczos(x));
    }
    let s = sinpi(x);
    match gamma(1.0 - x) {
        Ok(g) => Ok(PI / (s * g)),
        // 1/Γ(1−x) underflows; Γ(x) is below the smallest subnormal.
        Err(Error::Overflow(_)) => Ok(0.0_f64.copysign(s)),
        Err(e) => Err(e),
    }
}

/// 1/Γ(x), an entire function: exactly zero at 0, −1, −2, …
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        return match gamma(x) {
            Ok(g) => 1.0 / g,
            Err(_) => 0.0,
        };
    }
    let s = sinpi(x);
    match gamma(1.0 - x) {
        Ok(g) => s * g / PI,
        Err(_) => f64::INFINITY.copysign(s),
    }
}
