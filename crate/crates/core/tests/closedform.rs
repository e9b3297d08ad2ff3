mod common;

use std::f64::consts::PI;

use lame_floquet::closedform::*;
use lame_floquet::specfun::{cospi, hyp2f1_series};
use num_complex::Complex64;
use proptest::prelude::*;

/// φ₁, φ₂ at y and φ₃, φ₄ at the same point, all by direct series.
fn bases(p: &HypergeometricParams, y: f64) -> [f64; 4] {
    let (a, b, g) = (p.alpha, p.beta, p.gamma_p);
    let w = 1.0 - y;
    [
        hyp2f1_series(a, b, g, y, 10_000).unwrap(),
        y.powf(1.0 - g) * hyp2f1_series(a + 1.0 - g, b + 1.0 - g, 2.0 - g, y, 10_000).unwrap(),
        hyp2f1_series(a, b, a + b + 1.0 - g, w, 10_000).unwrap(),
        w.powf(g - a - b) * hyp2f1_series(g - a, g - b, g + 1.0 - a - b, w, 10_000).unwrap(),
    ]
}

#[test]
fn connection_coefficients_match_the_bases_numerically() {
    for i in 0..=40 {
        let p = reduce_to_hypergeometric(0.25 * i as f64).unwrap();
        let cc = connection_coefficients(&p).unwrap();
        assert!((cc.det() + 0.5).abs() < 1e-12, "κ = {}", p.kappa);
        for &y in &[0.42, 0.5, 0.58] {
            let [f1, f2, f3, f4] = bases(&p, y);
            let scale = 1.0 + f1.abs() + f2.abs();
            assert!(
                (f1 - cc.a * f3 - cc.b * f4).abs() < 1e-11 * scale,
                "φ₁, κ = {}",
                p.kappa
            );
            assert!(
                (f2 - cc.c * f3 - cc.d * f4).abs() < 1e-11 * scale,
                "φ₂, κ = {}",
                p.kappa
            );
        }
    }
}

#[test]
fn unit_coupling_coefficient_a_from_matching() {
    // solve φ₁ = Aφ₃ + Bφ₄ from two sample points, without any Gamma values
    let p = reduce_to_hypergeometric(1.0).unwrap();
    let [f1a, _, f3a, f4a] = bases(&p, 0.45);
    let [f1b, _, f3b, f4b] = bases(&p, 0.55);
    let a = (f1a * f4b - f1b * f4a) / (f3a * f4b - f3b * f4a);
    let cc = connection_coefficients(&p).unwrap();
    assert!((a - cc.a).abs() < 1e-11, "{a} vs {}", cc.a);
    assert!((a - 0.599_070_117_367_796_1).abs() < 1e-11);
}

#[test]
fn period_identity() {
    let t = period();
    assert!((t - 7.416_298_709_2).abs() < 1e-10);
    let g = common::gamma_stirling(0.25);
    assert!(((t - g * g / PI.sqrt()) / t).abs() < 1e-12);
}

#[test]
fn transfer_determinant_and_eigenvalues_on_grid() {
    for i in 0..=1000 {
        let kappa = 0.01 * i as f64;
        let p = reduce_to_hypergeometric(kappa).unwrap();
        let t = transfer_matrix(&p).unwrap();
        assert!(
            (t.det() - 1.0).abs() < 1e-10,
            "κ = {kappa}: det = {}",
            t.det()
        );
        assert_eq!(t.t11, t.t22);
        let (e1, e2) = t.eigenvalues();
        let f = multipliers_exponents(kappa).unwrap();
        let direct = (e1 - f.lambda1).norm().max((e2 - f.lambda2).norm());
        let swapped = (e1 - f.lambda2).norm().max((e2 - f.lambda1).norm());
        assert!(
            direct.min(swapped) < 1e-9,
            "κ = {kappa}: {e1} {e2} vs {} {}",
            f.lambda1,
            f.lambda2
        );
    }
}

#[test]
fn growth_rate_positive_exactly_inside_bands() {
    let bands = locate_bands(20.0);
    for i in 0..10_000 {
        let kappa = 20.0 * i as f64 / 9_999.0;
        let near_edge = bands
            .iter()
            .any(|b| (kappa - b.kappa_lo).abs() < 1e-9 || (kappa - b.kappa_hi).abs() < 1e-9);
        if near_edge {
            continue;
        }
        let inside = bands.iter().any(|b| b.contains(kappa));
        let mu = growth_rate(kappa).unwrap();
        assert_eq!(mu > 0.0, inside, "κ = {kappa}, μ̃ = {mu}");
        assert_eq!(band_index(kappa).unwrap().is_some(), inside);
    }
}

#[test]
fn peak_value_is_band_independent() {
    let first = AmplificationBand::new(1).unwrap().mu_peak;
    assert!((first - 0.237_685_568_388_861_48).abs() < 1e-15);
    for n in 1..=50 {
        let band = AmplificationBand::new(n).unwrap();
        assert!((band.mu_peak - first).abs() <= 1e-14);
        assert!(band.kappa_lo < band.kappa_peak && band.kappa_peak < band.kappa_hi);
        let at_peak = growth_rate(band.kappa_peak).unwrap();
        assert!((at_peak - first).abs() < 1e-11, "n = {n}: {at_peak}");
        // the peak is a maximum
        for d in [-1e-3, 1e-3] {
            assert!(growth_rate(band.kappa_peak + d).unwrap() < at_peak);
        }
    }
}

#[test]
fn sweep_maximum_is_the_universal_constant() {
    let peak = peak_growth_rate();
    let max = (0..=1000)
        .map(|i| growth_rate(0.01 * i as f64).unwrap())
        .fold(0.0, f64::max);
    assert!(max <= peak + 1e-15 && max > peak - 1e-5, "max = {max}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn multiplier_algebra(kappa in 0.0f64..20.0) {
        let f = multipliers_exponents(kappa).unwrap();
        let p = reduce_to_hypergeometric(kappa).unwrap();
        let c = cospi(p.diff);
        prop_assert!((f.rho1 * f.rho2 - 1.0).norm() < 1e-10);
        prop_assert!((f.rho1 + f.rho2 - (8.0 * c * c - 2.0)).norm() < 1e-10);
        prop_assert!((f.mu_tilde - f.mu1.re.max(f.mu2.re)).abs() < 1e-14 || f.mu_tilde == 0.0);
        prop_assert!(f.mu_tilde >= 0.0);
        prop_assert!((f.mu_tilde - growth_rate(kappa).unwrap()).abs() < 1e-12);
        if f.mu_tilde == 0.0 {
            prop_assert!((f.rho1.norm() - 1.0).abs() < 1e-10);
            prop_assert!((f.rho2.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn exponent_pairs_are_symmetric(kappa in 0.0f64..20.0) {
        let f = multipliers_exponents(kappa).unwrap();
        let shift = 2.0 * PI / period();
        // μ₁ + μ₂ ≡ 0 modulo 2πi/T, in and out of bands
        let sum: Complex64 = f.mu1 + f.mu2;
        let k = (sum.im / shift).round();
        prop_assert!(sum.re.abs() < 1e-10);
        prop_assert!((sum.im - k * shift).abs() < 1e-10);
        if f.mu_tilde > 0.0 {
            prop_assert!((f.mu1.re + f.mu2.re).abs() < 1e-10);
        }
    }

    #[test]
    fn both_transfer_routes_agree(kappa in 0.0f64..20.0) {
        let p = reduce_to_hypergeometric(kappa).unwrap();
        let direct = transfer_matrix(&p).unwrap();
        let composed = TransferMatrix::from_connection(&connection_coefficients(&p).unwrap());
        for (x, y) in [(direct.t11, composed.t11), (direct.t12, composed.t12), (direct.t21, composed.t21)] {
            prop_assert!((x - y).abs() <= 1e-11 * (1.0 + x.abs()));
        }
    }
}
