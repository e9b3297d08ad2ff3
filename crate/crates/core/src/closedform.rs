//! Closed-form Floquet analysis of `X'' + κ² cn²(z, 1/√2) X = 0`.
//!
//! The substitution `y = cn⁴(z, 1/√2)` turns the equation into a Gauss
//! hypergeometric equation with `γ = 3/4` and `α, β = (1 ± √(1+8κ²))/8`.
//! Matching the local bases at `y = 0` and `y = 1` over half a period of `cn`
//! gives a 2×2 transfer matrix whose eigenvalues `λ` square to the Floquet
//! multipliers. Everything is a function of `Δ = α − β = √(1+8κ²)/4` alone.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{complete_elliptic_k, cospi, gamma, reciprocal_gamma, EllipticModulus};

/// `|cos 2πΔ|` below this is treated as a band edge.
pub const BAND_EDGE_TIE: f64 = 1e-15;

/// Period `T = 4K(1/√2)` of `cn(z, 1/√2)`.
pub fn period() -> f64 {
    4.0 * complete_elliptic_k(EllipticModulus::INV_SQRT_2)
}

/// Largest growth rate reached inside any band, `(2√π/Γ²(1/4))·ln(1+√2)`.
pub fn peak_growth_rate() -> f64 {
    let g = gamma(0.25).expect("Γ(1/4) is finite");
    2.0 * PI.sqrt() / (g * g) * SQRT_2.ln_1p()
}

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa.is_finite() && kappa >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "kappa must be finite and non-negative, got {kappa}"
        )))
    }
}

/// Parameters of the reduced hypergeometric equation for a given `κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricParams {
    pub kappa: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `γ = 3/4`.
    pub gamma_p: f64,
    /// `δ = α + β = 1/4`.
    pub delta: f64,
    /// `Δ = α − β`.
    pub diff: f64,
    /// `θ = πΔ`.
    pub theta: f64,
}

pub fn reduce_to_hypergeometric(kappa: f64) -> Result<HypergeometricParams> {
    check_kappa(kappa)?;
    let diff = 0.25 * (1.0 + 8.0 * kappa * kappa).sqrt();
    let alpha = 0.125 + 0.5 * diff;
    let beta = 0.25 - alpha;
    Ok(HypergeometricParams {
        kappa,
        alpha,
        beta,
        gamma_p: 0.75,
        delta: 0.25,
        diff,
        theta: PI * diff,
    })
}

/// `A, B, C, D` in `φ₁ = Aφ₃ + Bφ₄`, `φ₂ = Cφ₃ + Dφ₄`, where `φ₁, φ₂` is
/// the basis at `y = 0` and `φ₃, φ₄` the basis at `y = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ConnectionCoefficients {
    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }
}

/// Gamma-ratio connection coefficients. Denominator poles are taken through
/// `1/Γ`, so they give exact zeros.
pub fn connection_coefficients(p: &HypergeometricParams) -> Result<ConnectionCoefficients> {
    let HypergeometricParams {
        alpha,
        beta,
        gamma_p: g,
        delta,
        ..
    } = *p;
    let gg = gamma(g)?;
    let g2 = gamma(2.0 - g)?;
    let gd = gamma(g - delta)?;
    let dg = gamma(delta - g)?;
    let rg = reciprocal_gamma;
    Ok(ConnectionCoefficients {
        a: gg * gd * rg(g - alpha) * rg(g - beta),
        b: gg * dg * rg(alpha) * rg(beta),
        c: g2 * gd * rg(1.0 - alpha) * rg(1.0 - beta),
        d: g2 * dg * rg(alpha + 1.0 - g) * rg(beta + 1.0 - g),
    })
}

/// Half-period map `(c₁, c₂) ↦ (c̃₁, c̃₂)` of the coefficients in
/// `X = c₁φ₁ + c₂φ₂`, taken between consecutive zeros of `cn`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub t11: f64,
    pub t12: f64,
    pub t21: f64,
    pub t22: f64,
}

impl TransferMatrix {
    /// Builds the map from the connection coefficients directly: go to the
    /// `y = 1` basis, flip `c₄`, come back, flip `c₂`.
    pub fn from_connection(cc: &ConnectionCoefficients) -> Self {
        let det = cc.det();
        let diag = (cc.a * cc.d + cc.b * cc.c) / det;
        Self {
            t11: diag,
            t12: 2.0 * cc.c * cc.d / det,
            t21: 2.0 * cc.a * cc.b / det,
            t22: diag,
        }
    }

    pub fn trace(&self) -> f64 {
        self.t11 + self.t22
    }

    pub fn det(&self) -> f64 {
        self.t11 * self.t22 - self.t12 * self.t21
    }

    /// Eigenvalues from the characteristic polynomial, `+` root first.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        let half_tr = 0.5 * self.trace();
        let root = Complex64::new(half_tr * half_tr - self.det(), 0.0).sqrt();
        (half_tr + root, half_tr - root)
    }

    pub fn apply(&self, c1: f64, c2: f64) -> (f64, f64) {
        (self.t11 * c1 + self.t12 * c2, self.t21 * c1 + self.t22 * c2)
    }
}

pub fn transfer_matrix(p: &HypergeometricParams) -> Result<TransferMatrix> {
    let HypergeometricParams {
        alpha,
        beta,
        gamma_p: g,
        diff,
        ..
    } = *p;
    let rg = reciprocal_gamma;
    let g2 = gamma(2.0 - g)?;
    let gg = gamma(g)?;
    let diag = SQRT_2 * cospi(diff);
    Ok(TransferMatrix {
        t11: diag,
        t12: 8.0
            * PI
            * g2
            * g2
            * rg(1.0 - alpha)
            * rg(1.0 - beta)
            * rg(1.0 + alpha - g)
            * rg(1.0 + beta - g),
        t21: 8.0 * PI * gg * gg * rg(alpha) * rg(beta) * rg(g - alpha) * rg(g - beta),
        t22: diag,
    })
}

/// Half-period eigenvalues, multipliers and characteristic exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetResult {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub rho1: Complex64,
    pub rho2: Complex64,
    pub mu1: Complex64,
    pub mu2: Complex64,
    pub mu_tilde: f64,
}

/// `λ₁,₂ = √2 cos πΔ ± √(cos 2πΔ)`, `ρ = λ²`, `μ = (2/T) Log λ`.
///
/// The square root is the principal one, so in stable gaps `λ₁,₂` are complex
/// conjugates on the unit circle. Exponents are defined modulo `2πi/T`.
pub fn multipliers_exponents(kappa: f64) -> Result<FloquetResult> {
    let p = reduce_to_hypergeometric(kappa)?;
    let t = period();
    let cos_t = cospi(p.diff);
    let mut cos_2t = cospi(2.0 * p.diff);
    if cos_2t.abs() <= BAND_EDGE_TIE {
        cos_2t = 0.0;
    }
    let root = Complex64::new(cos_2t, 0.0).sqrt();
    let lambda1 = SQRT_2 * cos_t + root;
    let lambda2 = SQRT_2 * cos_t - root;
    let mu1 = lambda1.ln() * (2.0 / t);
    let mu2 = lambda2.ln() * (2.0 / t);
    let mu_tilde = if cos_2t > 0.0 {
        mu1.re.max(mu2.re)
    } else {
        0.0
    };
    Ok(FloquetResult {
        lambda1,
        lambda2,
        rho1: lambda1 * lambda1,
        rho2: lambda2 * lambda2,
        mu1,
        mu2,
        mu_tilde,
    })
}

/// `μ̃(κ) = (2/T) ln(√2|cos θ| + √(cos 2θ))` inside a band, zero elsewhere.
pub fn growth_rate(kappa: f64) -> Result<f64> {
    let p = reduce_to_hypergeometric(kappa)?;
    let cos_2t = cospi(2.0 * p.diff);
    if cos_2t <= BAND_EDGE_TIE {
        return Ok(0.0);
    }
    let arg = SQRT_2 * cospi(p.diff).abs() + cos_2t.sqrt();
    Ok(2.0 / period() * arg.ln())
}

/// Index `n` of the amplification band strictly containing `κ`, if any.
pub fn band_index(kappa: f64) -> Result<Option<u32>> {
    if growth_rate(kappa)? > 0.0 {
        let p = reduce_to_hypergeometric(kappa)?;
        Ok(Some(p.diff.round() as u32))
    } else {
        Ok(None)
    }
}

/// The `n`-th instability band `√(n(2n−1)) < κ < √(n(2n+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationBand {
    pub n: u32,
    pub kappa_lo: f64,
    pub kappa_hi: f64,
    pub kappa_peak: f64,
    pub mu_peak: f64,
}

impl AmplificationBand {
    pub fn new(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("band index must be >= 1"));
        }
        let nf = f64::from(n);
        Ok(Self {
            n,
            kappa_lo: (nf * (2.0 * nf - 1.0)).sqrt(),
            kappa_hi: (nf * (2.0 * nf + 1.0)).sqrt(),
            kappa_peak: (2.0 * nf * nf - 0.125).sqrt(),
            mu_peak: peak_growth_rate(),
        })
    }

    /// `true` for `κ` strictly between the band edges.
    pub fn contains(&self, kappa: f64) -> bool {
        self.kappa_lo < kappa && kappa < self.kappa_hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.kappa_lo + self.kappa_hi)
    }
}

/// Takes a signed index so that `n = 0` is a domain error rather than a cast.
pub fn amplification_band(n: i64) -> Result<AmplificationBand> {
    let n =
        u32::try_from(n).map_err(|_| Error::domain(format!("band index must be >= 1, got {n}")))?;
    AmplificationBand::new(n)
}

/// All bands whose lower edge lies at or below `kappa_max`, in order.
pub fn locate_bands(kappa_max: f64) -> Vec<AmplificationBand> {
    let mut bands = Vec::new();
    if kappa_max.is_nan() || kappa_max < 0.0 {
        return bands;
    }
    let mut n = 1;
    loop {
        let band = AmplificationBand::new(n).expect("n >= 1");
        if band.kappa_lo > kappa_max {
            return bands;
        }
        bands.push(band);
        n += 1;
    }
}

/// Open stable intervals of `[0, kappa_max]`: `[0, 1)` and the gaps
/// `(√(n(2n+1)), √((n+1)(2n+1)))` between consecutive bands.
pub fn stable_gaps(kappa_max: f64) -> Vec<(f64, f64)> {
    let mut gaps = Vec::new();
    let mut lo = 0.0;
    for band in locate_bands(kappa_max) {
        gaps.push((lo, band.kappa_lo));
        lo = band.kappa_hi;
    }
    if lo < kappa_max {
        gaps.push((lo, kappa_max));
    }
    gaps
}
