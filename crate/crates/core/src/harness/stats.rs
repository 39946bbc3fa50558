//! Small sample statistics.

/// Sample mean and standard error of the mean. One value gives SE 0.
pub fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    if v.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Median; the mean of the two central values for even lengths.
pub fn median(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    if s.len() % 2 == 1 {
        s[m]
    } else {
        0.5 * (s[m - 1] + s[m])
    }
}

/// Large-sample standard error of the median, `sqrt(pi/2) sd / sqrt(n)`.
pub fn median_se(v: &[f64]) -> f64 {
    let (_, se) = mean_se(v);
    (std::f64::consts::PI / 2.0).sqrt() * se
}

/// Binomial standard error of an exceedance frequency over `trials`,
/// evaluated at the level the bound asserts, floored at one event.
///
/// Using the bound's own level (rather than the observed frequency, which
/// is often zero) gives the noise the comparison would have if the bound
/// were tight.
pub fn binomial_se_at(level: f64, trials: usize) -> f64 {
    let n = trials as f64;
    let p = level.max(1.0 / n).min(1.0);
    (p * (1.0 - p) / n).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_se() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_se(&[2.0]), (2.0, 0.0));
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn binomial_floor_allows_three_events_in_two_thousand() {
        let m = 2000;
        let bound = 2.0 * (-10.24f64).exp();
        let allowed = bound + 3.0 * binomial_se_at(bound, m);
        assert!(3.0 / m as f64 <= allowed);
        assert!(4.0 / m as f64 > allowed);
        assert_eq!(binomial_se_at(2.0, m), 0.0);
    }
}
