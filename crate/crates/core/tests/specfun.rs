mod common;

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};

use lame_floquet::specfun::*;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn gamma_quarter_against_stirling_oracle() {
    let oracle = common::gamma_stirling(0.25);
    assert!(rel(oracle, 3.625_609_908_221_908) < 1e-14);
    assert!(rel(gamma(0.25).unwrap(), oracle) < 1e-13);
    for &x in &[0.6, 1.7, 3.3, 7.9, 12.25, 33.3, 80.1] {
        assert!(
            rel(gamma(x).unwrap(), common::gamma_stirling(x)) < 1e-13,
            "x = {x}"
        );
    }
}

#[test]
fn complete_k_against_quadrature() {
    for &k in &[0.0, 0.3, 0.5, FRAC_1_SQRT_2, 0.9] {
        // 1/√(1 − k² sin²α) has period π; K is half the integral over it
        let q = 0.5
            * common::periodic_trapezoid(|a| 1.0 / (1.0 - k * k * a.sin().powi(2)).sqrt(), PI, 256);
        let got = complete_elliptic_k(EllipticModulus::new(k).unwrap());
        assert!(rel(got, q) < 1e-14, "k = {k}: {got} vs {q}");
    }
    let k05 = complete_elliptic_k(EllipticModulus::new(0.5).unwrap());
    assert!((k05 - 1.685_750_354_8).abs() < 1e-10);
}

#[test]
fn sn_inverts_the_elliptic_integral() {
    for &k in &[0.2, FRAC_1_SQRT_2, 0.95] {
        let m = EllipticModulus::new(k).unwrap();
        for i in 1..=12 {
            let phi = 0.4 * i as f64;
            let u = common::incomplete_f(phi, k);
            let j = jacobi_elliptic(u, m).unwrap();
            assert!((j.sn - phi.sin()).abs() < 1e-12, "k = {k}, phi = {phi}");
            assert!((j.cn - phi.cos()).abs() < 1e-12, "k = {k}, phi = {phi}");
        }
    }
}

#[test]
fn hypergeometric_frozen_series_value() {
    let brute = common::hyp2f1_brute(0.5, -0.25, 0.75, 0.3, 200);
    assert!(rel(brute, 0.944_222_992_781_579_5) < 1e-15);
    assert!(rel(hyp2f1(0.5, -0.25, 0.75, 0.3).unwrap(), brute) < 1e-14);
    assert!(rel(hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap(), 2.0 * LN_2) < 1e-11);
}

#[test]
fn hypergeometric_bases_of_the_lame_reduction() {
    // parameters appearing for κ ∈ [0, 10]; brute force at y ≤ 0.6 with many terms
    for i in 0..=20 {
        let kappa = 0.5 * i as f64;
        let s = (1.0 + 8.0 * kappa * kappa).sqrt();
        let (a, b) = ((1.0 + s) / 8.0, (1.0 - s) / 8.0);
        for &(pa, pb, pc) in &[
            (a, b, 0.75),
            (a + 0.25, b + 0.25, 1.25),
            (a, b, 0.5),
            (0.75 - a, 0.75 - b, 1.5),
        ] {
            for &y in &[0.1, 0.35, 0.5, 0.6] {
                let want = common::hyp2f1_brute(pa, pb, pc, y, 4000);
                let got = hyp2f1(pa, pb, pc, y).unwrap();
                assert!(
                    (got - want).abs() <= 1e-11 * want.abs().max(1.0),
                    "κ = {kappa}, y = {y}: {got} vs {want}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn gamma_recurrence(x in 0.5f64..50.0) {
        let ratio = gamma(x + 1.0).unwrap() / gamma(x).unwrap();
        prop_assert!(rel(ratio, x) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn gamma_reflection(x in 1e-6f64..(1.0 - 1e-6)) {
        let p = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * (PI * x).sin();
        prop_assert!(rel(p, PI) < 1e-11);
    }

    #[test]
    fn reciprocal_gamma_matches_gamma(x in -30.0f64..30.0) {
        prop_assume!((x - x.round()).abs() > 1e-6 || x > 0.5);
        prop_assert!(rel(reciprocal_gamma(x) * gamma(x).unwrap(), 1.0) < 1e-13);
    }

    #[test]
    fn jacobi_identities(u in -200.0f64..200.0, k in 0.0f64..0.999) {
        let m = EllipticModulus::new(k).unwrap();
        let j = jacobi_elliptic(u, m).unwrap();
        prop_assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-12);
        prop_assert!((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs() < 1e-12);
        prop_assert!(j.sn.abs() <= 1.0 && j.cn.abs() <= 1.0);
        let half = 2.0 * complete_elliptic_k(m);
        let shifted = jacobi_elliptic(u + half, m).unwrap();
        prop_assert!((shifted.cn + j.cn).abs() < 1e-11);
    }

    #[test]
    fn cn_derivative(u in -20.0f64..20.0, k in 0.0f64..0.95) {
        let m = EllipticModulus::new(k).unwrap();
        let h = 1e-6;
        let fd = (jacobi_elliptic(u + h, m).unwrap().cn - jacobi_elliptic(u - h, m).unwrap().cn) / (2.0 * h);
        let j = jacobi_elliptic(u, m).unwrap();
        prop_assert!((fd + j.sn * j.dn).abs() < 1e-7);
    }

    #[test]
    fn hypergeometric_series_and_connection_agree(
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
        c in 0.3f64..3.0,
        y in 0.4f64..0.6,
    ) {
        let s = c - a - b;
        prop_assume!((s - s.round()).abs() > 0.05);
        let direct = hyp2f1_series(a, b, c, y, 10_000).unwrap();
        let reflected = hyp2f1_reflected(a, b, c, y).unwrap();
        prop_assert!((direct - reflected).abs() <= 1e-10 * direct.abs().max(1.0),
            "direct {direct}, reflected {reflected}");
    }
}
