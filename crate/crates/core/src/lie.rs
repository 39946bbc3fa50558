//! Gaussian sampling on the Lie algebras u(N) and su(N).
//!
//! Both algebras carry the real inner product `<A, B>_N = N Re tr(A B*)`.
//! A standard Gaussian `X` for this inner product satisfies
//! `E <X, xi>^2 = 1` for every unit vector `xi`, hence `E <X, X>_N = dim`.

use faer::{c64, Mat};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// An n x n skew-Hermitian matrix.
#[derive(Clone, Debug)]
pub struct SkewMatrix {
    entries: Mat<c64>,
}

impl SkewMatrix {
    /// Wraps `m`, checking `m + m* = 0` to within `tol` (max-abs).
    pub fn from_mat(m: Mat<c64>, tol: f64) -> Result<Self> {
        let n = m.nrows();
        if n == 0 || m.ncols() != n {
            return Err(Error::InvalidDimension(n));
        }
        let mut dev = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                dev = dev.max((m[(j, k)] + m[(k, j)].conj()).norm());
            }
        }
        if dev > tol {
            return Err(Error::InvalidInput(format!(
                "matrix is not skew-Hermitian (deviation {dev:e})"
            )));
        }
        Ok(Self { entries: m })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: Mat::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn as_mat(&self) -> &Mat<c64> {
        &self.entries
    }

    pub fn into_mat(self) -> Mat<c64> {
        self.entries
    }

    pub fn trace(&self) -> c64 {
        (0..self.n()).map(|j| self.entries[(j, j)]).sum()
    }

    /// Multiplies every entry by the real scalar `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let n = self.n();
        Self {
            entries: Mat::from_fn(n, n, |j, k| self.entries[(j, k)] * s),
        }
    }

    /// `<self, other>_N = N Re tr(self other*)`.
    pub fn metric_inner(&self, other: &SkewMatrix) -> f64 {
        metric_inner(&self.entries, &other.entries)
    }

    pub fn metric_norm_sq(&self) -> f64 {
        self.metric_inner(self)
    }

    /// Largest |X_jk + conj(X_kj)|; zero for exactly skew-Hermitian storage.
    pub fn skew_defect(&self) -> f64 {
        let n = self.n();
        let mut dev = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                dev = dev.max((self.entries[(j, k)] + self.entries[(k, j)].conj()).norm());
            }
        }
        dev
    }
}

/// `N Re tr(A B*)` for square matrices of equal size N.
pub fn metric_inner(a: &Mat<c64>, b: &Mat<c64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for k in 0..n {
        for j in 0..n {
            let (x, y) = (a[(j, k)], b[(j, k)]);
            s += x.re * y.re + x.im * y.im;
        }
    }
    n as f64 * s
}

/// The unit vector `i I / n` spanning the centre of u(n).
pub fn centre_direction(n: usize) -> SkewMatrix {
    let mut m = Mat::zeros(n, n);
    for j in 0..n {
        m[(j, j)] = c64::new(0.0, 1.0 / n as f64);
    }
    SkewMatrix { entries: m }
}

/// Standard Gaussian on `(u(n), <.,.>_N)`, built as `i H / sqrt(n)` with
/// `H` a GUE matrix (unit-variance diagonal, off-diagonal real and
/// imaginary parts of variance 1/2).
pub fn gaussian_u(n: usize, rng: &mut RngStream) -> Result<SkewMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let off = scale * std::f64::consts::FRAC_1_SQRT_2;
    let mut m = Mat::<c64>::zeros(n, n);
    for j in 0..n {
        m[(j, j)] = c64::new(0.0, rng.normal() * scale);
        for k in (j + 1)..n {
            let re = rng.normal() * off;
            let im = rng.normal() * off;
            // i (re + i im) = -im + i re
            let x = c64::new(-im, re);
            m[(j, k)] = x;
            m[(k, j)] = -x.conj();
        }
    }
    Ok(SkewMatrix { entries: m })
}

/// Standard Gaussian on `(su(n), <.,.>_N)`: the draw of [`gaussian_u`]
/// with its component along `i I / n` removed.
pub fn gaussian_su(n: usize, rng: &mut RngStream) -> Result<SkewMatrix> {
    let x = gaussian_u(n, rng)?;
    Ok(project_su(x))
}

/// Orthogonal projection of u(n) onto su(n).
pub fn project_su(mut x: SkewMatrix) -> SkewMatrix {
    let n = x.n();
    // <X, iI/n>_N = Im tr X; subtracting (Im tr X) iI/n zeroes the trace.
    let shift = x.trace().im / n as f64;
    for j in 0..n {
        x.entries[(j, j)].im -= shift;
        x.entries[(j, j)].re = 0.0;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    fn mean_se(v: &[f64]) -> (f64, f64) {
        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (var / n).sqrt())
    }

    #[test]
    fn zero_dimension_rejected() {
        let mut rng = derive_stream(0, 0);
        assert!(matches!(
            gaussian_u(0, &mut rng),
            Err(Error::InvalidDimension(0))
        ));
        assert!(matches!(
            gaussian_su(0, &mut rng),
            Err(Error::InvalidDimension(0))
        ));
    }

    #[test]
    fn skew_hermitian_exactly() {
        let mut rng = derive_stream(3, 0);
        for n in [1, 2, 5, 16] {
            let x = gaussian_u(n, &mut rng).unwrap();
            assert_eq!(x.skew_defect(), 0.0);
            let y = gaussian_su(n, &mut rng).unwrap();
            assert_eq!(y.skew_defect(), 0.0);
        }
    }

    #[test]
    fn centre_direction_is_unit() {
        for n in [1, 3, 8] {
            let xi = centre_direction(n);
            assert!((xi.metric_norm_sq() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn u_norm_matches_dimension() {
        let n = 8;
        let mut rng = derive_stream(11, 0);
        let v: Vec<f64> = (0..10_000)
            .map(|_| gaussian_u(n, &mut rng).unwrap().metric_norm_sq())
            .collect();
        let (m, se) = mean_se(&v);
        assert!((m - 64.0).abs() <= 3.0 * se, "mean {m} se {se}");
    }

    #[test]
    fn centre_coefficient_is_standard_normal() {
        let n = 8;
        let xi = centre_direction(n);
        let mut rng = derive_stream(12, 0);
        let c: Vec<f64> = (0..10_000)
            .map(|_| gaussian_u(n, &mut rng).unwrap().metric_inner(&xi))
            .collect();
        let sq: Vec<f64> = c.iter().map(|x| x * x).collect();
        let (m, se) = mean_se(&sq);
        assert!((m - 1.0).abs() <= 3.0 * se, "variance {m} se {se}");
    }

    #[test]
    fn su_is_traceless_and_orthogonal_to_centre() {
        let n = 8;
        let xi = centre_direction(n);
        let mut rng = derive_stream(13, 0);
        let mut norms = Vec::new();
        for _ in 0..10_000 {
            let x = gaussian_su(n, &mut rng).unwrap();
            assert!(x.trace().norm() < 1e-13);
            assert!(x.metric_inner(&xi).abs() < 1e-13);
            norms.push(x.metric_norm_sq());
        }
        let (m, se) = mean_se(&norms);
        assert!((m - 63.0).abs() <= 3.0 * se, "mean {m} se {se}");
    }
}
