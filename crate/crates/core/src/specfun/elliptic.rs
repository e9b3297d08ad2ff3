use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::error::{Error, Result};

/// Modulus `k` of the Jacobi elliptic functions, `0 ≤ k < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    /// The modulus `1/√2` of the Lamé coefficient `cn²(z, 1/√2)`.
    pub const INV_SQRT_2: Self = Self(FRAC_1_SQRT_2);

    pub fn new(k: f64) -> Result<Self> {
        if (0.0..1.0).contains(&k) {
            Ok(Self(k))
        } else {
            Err(Error::domain(format!(
                "elliptic modulus must satisfy 0 <= k < 1, got {k}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary modulus `k' = √(1 − k²)`.
    pub fn complementary(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }
}

/// Values of `sn`, `cn` and `dn` at a common argument and modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

const MAX_LADDER: usize = 16;
const LADDER_SCALE: f64 = 1e-15;

/// Descending AGM (Landen) ladder for a fixed modulus. Building it once gives
/// both the quarter period and everything `sn`, `cn`, `dn` need.
#[derive(Debug, Clone)]
pub(crate) struct AgmLadder {
    k: f64,
    a: [f64; MAX_LADDER],
    c: [f64; MAX_LADDER],
    depth: usize,
    quarter: f64,
}

impl AgmLadder {
    pub(crate) fn new(modulus: EllipticModulus) -> Self {
        let mut a = [0.0; MAX_LADDER];
        let mut c = [0.0; MAX_LADDER];
        let mut an = 1.0;
        let mut bn = modulus.complementary();
        let mut cn = modulus.value();
        a[0] = an;
        c[0] = cn;
        let mut depth = 0;
        while cn.abs() > LADDER_SCALE * an && depth + 1 < MAX_LADDER {
            let a_next = 0.5 * (an + bn);
            let b_next = (an * bn).sqrt();
            // c_{n+1} = (a_n − b_n)/2 rewritten without cancellation.
            cn = cn * cn / (4.0 * a_next);
            an = a_next;
            bn = b_next;
            depth += 1;
            a[depth] = an;
            c[depth] = cn;
        }
        Self {
            k: modulus.value(),
            a,
            c,
            depth,
            quarter: FRAC_PI_2 / an,
        }
    }

    /// Complete elliptic integral `K(k)`.
    pub(crate) fn quarter_period(&self) -> f64 {
        self.quarter
    }

    pub(crate) fn eval(&self, u: f64) -> JacobiTriple {
        let period = 4.0 * self.quarter;
        let r = u - period * (u / period).round();
        let n = self.depth;
        let mut phi = (n as f64).exp2() * self.a[n] * r;
        for i in (1..=n).rev() {
            phi = 0.5 * (phi + (self.c[i] / self.a[i] * phi.sin()).asin());
        }
        let (sn, cn) = phi.sin_cos();
        let dn = (1.0 - self.k * self.k * sn * sn).sqrt();
        JacobiTriple { sn, cn, dn }
    }
}

/// Complete elliptic integral of the first kind, `K(k) = π / (2·AGM(1, k'))`.
pub fn complete_elliptic_k(k: EllipticModulus) -> f64 {
    AgmLadder::new(k).quarter_period()
}

/// Jacobi elliptic functions `sn`, `cn`, `dn` at real argument `u`.
///
/// The argument is folded into `[−2K, 2K]` before the ladder is descended.
pub fn jacobi_elliptic(u: f64, k: EllipticModulus) -> Result<JacobiTriple> {
    if !u.is_finite() {
        return Err(Error::domain(format!(
            "jacobi_elliptic needs a finite argument, got {u}"
        )));
    }
    Ok(AgmLadder::new(k).eval(u))
}
