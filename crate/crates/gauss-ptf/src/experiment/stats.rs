//! Small statistics toolbox shared by the experiments.

/// Pairwise (cascade) summation: splits recursively so rounding error grows
/// like log(n) instead of n, and the result is independent of how trials were
/// scheduled, since the input order is fixed.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Sample standard error of the mean.
pub fn standard_error(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let centered: Vec<f64> = values.iter().map(|v| (v - m) * (v - m)).collect();
    let var = pairwise_sum(&centered) / (n as f64 - 1.0);
    (var / n as f64).sqrt()
}

/// 95% half-width for a frequency estimate `hits / trials` under the normal
/// approximation: `1.96 sqrt(p(1-p)/trials)`.
pub fn binomial_ci(p_hat: f64, trials: u64) -> f64 {
    if trials == 0 {
        return 0.0;
    }
    1.96 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt()
}

/// Type-7 (linear interpolation) quantile of already-sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    assert!((0.0..=1.0).contains(&q));
    let h = q * (sorted.len() as f64 - 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        return sorted[lo];
    }
    let frac = h - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

/// Distribution-free 95% half-width for an empirical quantile: bracket the
/// order statistics at `q -/+ 1.96 sqrt(q(1-q)/n)` and take half the spread.
pub fn quantile_ci_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len() as f64;
    let r = 1.96 * (q * (1.0 - q) / n).sqrt();
    let lo = quantile_sorted(sorted, (q - r).max(0.0));
    let hi = quantile_sorted(sorted, (q + r).min(1.0));
    ((hi - lo) / 2.0).abs()
}

/// Sort a copy handling infinities deterministically.
pub fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// The threshold-function sign convention: 1 for `z >= 0`, else 0. Exact
/// zeros (possible under discrete sampled inputs) count as 1.
pub fn sign01(z: f64) -> f64 {
    if z >= 0.0 {
        1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pairwise_matches_naive_on_smooth_data() {
        let v: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = v.iter().sum();
        assert_relative_eq!(pairwise_sum(&v), naive, max_relative = 1e-12);
    }

    #[test]
    fn quantiles_interpolate() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&v, 0.0), 1.0);
        assert_eq!(quantile_sorted(&v, 1.0), 4.0);
        assert_relative_eq!(quantile_sorted(&v, 0.5), 2.5);
    }

    #[test]
    fn sign_convention_at_zero() {
        assert_eq!(sign01(0.0), 1.0);
        assert_eq!(sign01(-0.0), 1.0);
        assert_eq!(sign01(-1e-300), 0.0);
        assert_eq!(sign01(2.0), 1.0);
    }

    #[test]
    fn binomial_ci_shrinks_with_trials() {
        assert!(binomial_ci(0.5, 10_000) < binomial_ci(0.5, 100));
        assert_eq!(binomial_ci(0.0, 100), 0.0);
    }
}
