//! Order statistics and goodness-of-fit helpers shared by the harness
//! and the test suites.

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// `samples` and a continuous reference CDF.
///
/// Sorts a copy of the input; NaNs are rejected.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    assert!(!samples.is_empty(), "ks_distance needs at least one sample");
    let mut xs = samples.to_vec();
    assert!(xs.iter().all(|x| !x.is_nan()), "NaN sample");
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let lo = (f - i as f64 / n).abs();
        let hi = ((i + 1) as f64 / n - f).abs();
        sup = sup.max(lo).max(hi);
    }
    sup
}

/// Median via sorting a copy. Even lengths average the two middle values.
pub fn median(samples: &[f64]) -> f64 {
    assert!(!samples.is_empty());
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

pub fn mean(samples: &[f64]) -> f64 {
    assert!(!samples.is_empty());
    samples.iter().sum::<f64>() / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_exact_grid_is_small() {
        // Points at (i + 0.5)/n against the uniform CDF: distance 0.5/n.
        let n = 1000;
        let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_distance(&xs, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.5 / n as f64).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn ks_of_constant_sample_is_large() {
        let xs = vec![0.5; 200];
        let d = ks_distance(&xs, |x| x.clamp(0.0, 1.0));
        assert!(d >= 0.5);
    }

    #[test]
    fn median_and_mean() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!((mean(&[1.0, 2.0, 3.0]) - 2.0).abs() < 1e-15);
    }
}
