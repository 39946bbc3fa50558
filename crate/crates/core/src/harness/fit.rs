//! Log-log least squares and single-constant feasibility.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl PowerLawFit {
    /// `exp(intercept) x^slope`.
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Ordinary least squares of `ln y` on `ln x`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "power-law fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    for &(x, y) in points {
        for v in [x, y] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain {
                    value: v,
                    domain: "positive finite coordinates",
                });
            }
        }
    }
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = points.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("all x coordinates are equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(PowerLawFit {
        points: points.to_vec(),
        slope,
        intercept,
        r_squared,
    })
}

/// Smallest `C` with `estimate_i <= C shape_i` at every point.
///
/// Bounds proved only up to an unspecified constant are checked by fitting
/// one constant to the whole grid; the rate itself is checked separately
/// through [`fit_power_law`].
pub fn feasible_constant(estimates: &[f64], shapes: &[f64]) -> f64 {
    estimates
        .iter()
        .zip(shapes)
        .map(|(e, s)| e / s)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn exact_inverse_square() {
        let pts: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0]
            .iter()
            .map(|&x| (x, x.powi(-2)))
            .collect();
        let f = fit_power_law(&pts).unwrap();
        assert!((f.slope + 2.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!((f.predict(3.0) - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn constant_has_zero_slope() {
        let f = fit_power_law(&[(1.0, 3.0), (2.0, 3.0), (5.0, 3.0)]).unwrap();
        assert!(f.slope.abs() < 1e-12);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn noisy_two_thirds() {
        let mut rng = RngStream::new(11, 0);
        let pts: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0, 128.0]
            .iter()
            .map(|&x: &f64| (x, x.powf(-2.0 / 3.0) * (1.0 + 0.01 * rng.normal())))
            .collect();
        let f = fit_power_law(&pts).unwrap();
        assert!(f.slope >= -0.70 && f.slope <= -0.63, "{}", f.slope);
        assert!(f.r_squared > 0.99 && f.r_squared <= 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            fit_power_law(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]),
            Err(Error::Domain { .. })
        ));
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 1.0)]).is_err());
        assert!(fit_power_law(&[(-1.0, 1.0), (2.0, 1.0), (3.0, 1.0)]).is_err());
    }

    #[test]
    fn feasibility_constant_is_tight() {
        let c = feasible_constant(&[1.0, 0.5, 0.3], &[2.0, 0.5, 1.0]);
        assert_eq!(c, 1.0);
    }
}
