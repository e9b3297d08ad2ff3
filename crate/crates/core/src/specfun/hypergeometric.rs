//! Gauss hypergeometric function `₂F₁(a, b; c; y)` on the real interval `[0, 1]`.
//!
//! Below `y = 1/2` the defining series is summed directly. Above it the
//! function is re-expanded around `y = 1`:
//!
//! ```text
//! F(a,b;c;y) = Γ(c)Γ(s)/(Γ(c−a)Γ(c−b)) · F(a, b; 1−s; 1−y)
//!            + (1−y)^s Γ(c)Γ(−s)/(Γ(a)Γ(b)) · F(c−a, c−b; 1+s; 1−y),   s = c − a − b
//! ```
//!
//! which needs `s` non-integer. For integer `s` the direct series is used all
//! the way up, with a larger term budget.

use super::gamma::{gamma, reciprocal_gamma};
use crate::error::{Error, Result};

const SERIES_MAX_TERMS: usize = 5_000;
const SERIES_MAX_TERMS_SLOW: usize = 200_000;
const INTEGER_EXCESS_TOL: f64 = 1e-9;

/// Sums the defining series of `₂F₁(a, b; c; y)` until the next term no
/// longer changes the sum, or fails after `max_terms` terms.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, y: f64, max_terms: usize) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * y;
        sum += term;
        if term == 0.0 || term.abs() <= 0.5 * f64::EPSILON * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { terms: max_terms })
}

/// `₂F₁(a, b; c; y)` through the `y ↦ 1 − y` connection formula. Requires
/// `c − a − b` non-integer and `0 ≤ y < 1`; intended for `y ≥ 1/2`.
pub fn hyp2f1_reflected(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    let s = c - a - b;
    if (s - s.round()).abs() < INTEGER_EXCESS_TOL {
        return Err(Error::domain(format!(
            "connection formula needs non-integer c - a - b, got {s}"
        )));
    }
    let w = 1.0 - y;
    let gc = gamma(c)?;
    let first = gc * gamma(s)? * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    let second = gc * gamma(-s)? * reciprocal_gamma(a) * reciprocal_gamma(b);
    let mut value = 0.0;
    if first != 0.0 {
        value += first * hyp2f1_series(a, b, 1.0 - s, w, SERIES_MAX_TERMS)?;
    }
    if second != 0.0 {
        value += second * w.powf(s) * hyp2f1_series(c - a, c - b, 1.0 + s, w, SERIES_MAX_TERMS)?;
    }
    Ok(value)
}

/// Gauss hypergeometric function `₂F₁(a, b; c; y)` for `0 ≤ y ≤ 1`.
///
/// At `y = 1` Gauss's summation is used, which needs `c − a − b > 0`.
pub fn hyp2f1(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    if ![a, b, c, y].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("hyp2f1 arguments must be finite"));
    }
    if c <= 0.0 && c == c.floor() {
        return Err(Error::domain(format!("hyp2f1 undefined for c = {c}")));
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain(format!(
            "hyp2f1 evaluated only on [0, 1], got y = {y}"
        )));
    }
    if y == 0.0 {
        return Ok(1.0);
    }
    let s = c - a - b;
    if y == 1.0 {
        if s <= 0.0 {
            return Err(Error::domain(format!(
                "hyp2f1 diverges at y = 1 for c - a - b = {s}"
            )));
        }
        return Ok(gamma(c)? * gamma(s)? * reciprocal_gamma(c - a) * reciprocal_gamma(c - b));
    }
    if y <= 0.5 {
        return hyp2f1_series(a, b, c, y, SERIES_MAX_TERMS);
    }
    if (s - s.round()).abs() < INTEGER_EXCESS_TOL {
        hyp2f1_series(a, b, c, y, SERIES_MAX_TERMS_SLOW)
    } else {
        hyp2f1_reflected(a, b, c, y)
    }
}
