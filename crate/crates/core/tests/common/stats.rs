//! Percentile bootstrap for the trend criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RESAMPLES: usize = 10_000;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn percentile_interval(mut stats: Vec<f64>, level: f64) -> (f64, f64) {
    stats.sort_by(f64::total_cmp);
    let alpha = (1.0 - level) / 2.0;
    let at = |p: f64| stats[((p * (stats.len() - 1) as f64).round() as usize).min(stats.len() - 1)];
    (at(alpha), at(1.0 - alpha))
}

/// Two-sided `level` confidence interval for the mean of `xs`.
pub fn mean_ci(xs: &[f64], level: f64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stats = (0..RESAMPLES)
        .map(|_| (0..xs.len()).map(|_| xs[rng.gen_range(0..xs.len())]).sum::<f64>() / xs.len() as f64)
        .collect();
    percentile_interval(stats, level)
}

/// Interval for mean(b) − mean(a) over paired samples.
pub fn paired_difference_ci(a: &[f64], b: &[f64], level: f64, seed: u64) -> (f64, f64) {
    assert_eq!(a.len(), b.len());
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    mean_ci(&d, level, seed)
}

/// Interval for mean(b) − mean(a) over independent samples.
pub fn independent_difference_ci(a: &[f64], b: &[f64], level: f64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let resample_mean = |xs: &[f64], rng: &mut ChaCha8Rng| {
        (0..xs.len()).map(|_| xs[rng.gen_range(0..xs.len())]).sum::<f64>() / xs.len() as f64
    };
    let stats = (0..RESAMPLES)
        .map(|_| resample_mean(b, &mut rng) - resample_mean(a, &mut rng))
        .collect();
    percentile_interval(stats, level)
}
