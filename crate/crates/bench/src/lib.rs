//! Shared inputs for the criterion benchmarks.

use lame_floquet::closedform::AmplificationBand;

/// `count` evenly spaced couplings on `[0, kappa_max]`.
pub fn kappa_grid(kappa_max: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| kappa_max * i as f64 / (count - 1) as f64)
        .collect()
}

/// Peak couplings of the first `n` amplification bands.
pub fn band_peaks(n: u32) -> Vec<f64> {
    (1..=n)
        .map(|i| AmplificationBand::new(i).expect("n >= 1").kappa_peak)
        .collect()
}
