use std::f64::consts::SQRT_2;

use super::State;
use crate::closedform::{connection_coefficients, reduce_to_hypergeometric, HypergeometricParams};
use crate::error::{Error, Result};
use crate::specfun::{complete_elliptic_k, hyp2f1, jacobi_elliptic, EllipticModulus};

fn quarter_period() -> f64 {
    complete_elliptic_k(EllipticModulus::INV_SQRT_2)
}

/// A stretch `[jK, (j+1)K]` on which `y = cn⁴(z, 1/√2)` is monotonic.
///
/// `y` falls from 1 to 0 on even `j` and rises from 0 to 1 on odd `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Branch {
    pub index: i64,
}

impl Branch {
    pub fn new(index: i64) -> Self {
        Self { index }
    }

    /// Branch whose closed interval starts at or before `z`.
    pub fn containing(z: f64) -> Self {
        Self::new((z / quarter_period()).floor() as i64)
    }

    pub fn start(self) -> f64 {
        self.index as f64 * quarter_period()
    }

    pub fn end(self) -> f64 {
        (self.index + 1) as f64 * quarter_period()
    }

    /// `true` when `y` increases with `z` on this branch.
    pub fn rising(self) -> bool {
        self.index.rem_euclid(2) == 1
    }

    /// The endpoint where `cn = 0`, i.e. `y = 0`.
    pub fn zero_point(self) -> f64 {
        if self.rising() {
            self.start()
        } else {
            self.end()
        }
    }

    /// State at the `y = 0` end of the branch for coefficients `(c₁, c₂)`:
    /// `X = c₁`, `X' = ±c₂/√2` with the sign of `dy/dz`.
    pub fn zero_point_state(self, c1: f64, c2: f64) -> State {
        let sign = if self.rising() { 1.0 } else { -1.0 };
        State::new(c1, sign * c2 / SQRT_2, self.zero_point())
    }

    fn contains(self, z: f64) -> bool {
        let slack = 1e-12 * z.abs().max(1.0);
        z >= self.start() - slack && z <= self.end() + slack
    }
}

/// `X(z)` and `X'(z)` for `X = c₁φ₁ + c₂φ₂` on `branch`, with
/// `φ₁ = F(α, β; γ; y)` and `φ₂ = y^{1/4} F(α+1/4, β+1/4; 5/4; y)`.
///
/// Above `y = 1/2` the same solution is evaluated in the `y = 1` basis
/// through the connection coefficients, so every series is summed at an
/// argument no larger than 1/2.
pub fn reconstruct_state(kappa: f64, c1: f64, c2: f64, branch: Branch, z: f64) -> Result<State> {
    if ![c1, c2, z].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("reconstruction inputs must be finite"));
    }
    let p = reduce_to_hypergeometric(kappa)?;
    if !branch.contains(z) {
        return Err(Error::domain(format!(
            "z = {z} lies outside branch [{}, {}]",
            branch.start(),
            branch.end()
        )));
    }
    let j = jacobi_elliptic(z, EllipticModulus::INV_SQRT_2)?;
    let abs_cn = j.cn.abs();
    let cn_sq = j.cn * j.cn;
    let y = cn_sq * cn_sq;
    let sign = if branch.rising() { 1.0 } else { -1.0 };

    let (x, xp) = if y <= 0.5 {
        near_zero(&p, c1, c2, y, abs_cn)?
    } else {
        let cc = connection_coefficients(&p)?;
        let c3 = cc.a * c1 + cc.c * c2;
        let c4 = cc.b * c1 + cc.d * c2;
        // 1 − cn⁴ = sn²(1 + cn²), without the cancellation
        let sqrt_w = j.sn.abs() * (1.0 + cn_sq).sqrt();
        near_one(&p, c3, c4, sqrt_w * sqrt_w, sqrt_w, abs_cn)?
    };
    Ok(State::new(x, sign * xp, z))
}

/// Value and `|dX/dz|`-oriented derivative (for rising `y`) in the `y = 0` basis.
fn near_zero(
    p: &HypergeometricParams,
    c1: f64,
    c2: f64,
    y: f64,
    abs_cn: f64,
) -> Result<(f64, f64)> {
    let HypergeometricParams {
        alpha: a,
        beta: b,
        gamma_p: g,
        ..
    } = *p;
    let f1 = hyp2f1(a, b, g, y)?;
    let df1 = a * b / g * hyp2f1(a + 1.0, b + 1.0, g + 1.0, y)?;
    let (a2, b2) = (a + 0.25, b + 0.25);
    let f2 = hyp2f1(a2, b2, 1.25, y)?;
    let df2 = a2 * b2 / 1.25 * hyp2f1(a2 + 1.0, b2 + 1.0, 2.25, y)?;

    let x = c1 * f1 + c2 * abs_cn * f2;
    // y^{3/4} dX/dy, finite at y = 0
    let scaled = c1 * abs_cn.powi(3) * df1 + c2 * (0.25 * f2 + y * df2);
    Ok((x, 2.0 * SQRT_2 * (1.0 - y).sqrt() * scaled))
}

/// Same in the `y = 1` basis `φ₃ = F(α, β; 1/2; w)`,
/// `φ₄ = w^{1/2} F(γ−α, γ−β; 3/2; w)`, `w = 1 − y`.
fn near_one(
    p: &HypergeometricParams,
    c3: f64,
    c4: f64,
    w: f64,
    sqrt_w: f64,
    abs_cn: f64,
) -> Result<(f64, f64)> {
    let HypergeometricParams {
        alpha: a,
        beta: b,
        gamma_p: g,
        ..
    } = *p;
    let f3 = hyp2f1(a, b, 0.5, w)?;
    let df3 = 2.0 * a * b * hyp2f1(a + 1.0, b + 1.0, 1.5, w)?;
    let (a4, b4) = (g - a, g - b);
    let f4 = hyp2f1(a4, b4, 1.5, w)?;
    let df4 = a4 * b4 / 1.5 * hyp2f1(a4 + 1.0, b4 + 1.0, 2.5, w)?;

    let x = c3 * f3 + c4 * sqrt_w * f4;
    // √w dX/dw, finite at w = 0; dX/dy = −dX/dw
    let scaled = c3 * sqrt_w * df3 + c4 * (0.5 * f4 + w * df4);
    Ok((x, -2.0 * SQRT_2 * abs_cn.powi(3) * scaled))
}

/// `X(z)` on the branch containing `z`; see [`reconstruct_state`].
pub fn reconstruct_solution(kappa: f64, c1: f64, c2: f64, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain("z must be finite"));
    }
    reconstruct_state(kappa, c1, c2, Branch::containing(z), z).map(|s| s.x)
}
