//! Unitary matrices and the exponential map from u(N).

use faer::{c64, Mat, Side};

use crate::error::{Error, Result};
use crate::lie::SkewMatrix;

pub const DEFAULT_UNITARY_TOL: f64 = 1e-10;

/// An n x n unitary matrix, checked on construction.
#[derive(Clone, Debug)]
pub struct UnitaryMatrix {
    entries: Mat<c64>,
}

impl UnitaryMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            entries: Mat::identity(n, n),
        }
    }

    /// Wraps `m` if `max |m* m - I| <= tol`.
    pub fn new(m: Mat<c64>, tol: f64) -> Result<Self> {
        if m.nrows() == 0 || m.nrows() != m.ncols() {
            return Err(Error::InvalidDimension(m.nrows()));
        }
        let deviation = unitarity_defect(&m);
        if deviation > tol {
            return Err(Error::NotUnitary {
                deviation,
                tolerance: tol,
            });
        }
        Ok(Self { entries: m })
    }

    pub(crate) fn from_mat_unchecked(m: Mat<c64>) -> Self {
        Self { entries: m }
    }

    pub fn diagonal(phases: &[c64]) -> Result<Self> {
        let n = phases.len();
        let mut m = Mat::zeros(n, n);
        for (j, z) in phases.iter().enumerate() {
            m[(j, j)] = *z;
        }
        Self::new(m, DEFAULT_UNITARY_TOL)
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

    pub fn mul(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        Self {
            entries: &self.entries * &rhs.entries,
        }
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        Self {
            entries: self.entries.adjoint().to_owned(),
        }
    }

    pub fn trace(&self) -> c64 {
        (0..self.n()).map(|j| self.entries[(j, j)]).sum()
    }

    /// `(1/N) tr(U^k)` by repeated multiplication.
    pub fn normalized_power_trace(&self, k: usize) -> c64 {
        let n = self.n();
        if k == 0 {
            return c64::new(1.0, 0.0);
        }
        let mut p = self.entries.clone();
        for _ in 1..k {
            p = &p * &self.entries;
        }
        let tr: c64 = (0..n).map(|j| p[(j, j)]).sum();
        tr / n as f64
    }

    pub fn determinant(&self) -> c64 {
        self.entries.as_ref().determinant()
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.entries)
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        let deviation = self.unitarity_defect();
        if deviation > tol {
            Err(Error::NotUnitary {
                deviation,
                tolerance: tol,
            })
        } else {
            Ok(())
        }
    }

    /// Returns `v self v*`.
    pub fn conjugate_by(&self, v: &UnitaryMatrix) -> UnitaryMatrix {
        Self {
            entries: &(&v.entries * &self.entries) * v.entries.adjoint(),
        }
    }

    /// Multiplies every entry by the unit scalar `z`.
    pub fn scale_phase(&self, z: c64) -> UnitaryMatrix {
        let n = self.n();
        Self {
            entries: Mat::from_fn(n, n, |j, k| self.entries[(j, k)] * z),
        }
    }
}

/// `max |m* m - I|`.
pub fn unitarity_defect(m: &Mat<c64>) -> f64 {
    let n = m.nrows();
    let g = m.adjoint() * m;
    let mut dev = 0.0f64;
    for k in 0..n {
        for j in 0..n {
            let target = if j == k { 1.0 } else { 0.0 };
            dev = dev.max((g[(j, k)] - c64::new(target, 0.0)).norm());
        }
    }
    dev
}

fn max_abs(m: &Mat<c64>) -> f64 {
    m.as_ref().norm_max()
}

/// `exp(X)` for skew-Hermitian `X`, via the eigendecomposition of the
/// Hermitian matrix `-iX = V diag(lambda) V*`, so `exp(X) = V diag(e^{i lambda}) V*`.
pub fn expm_skew(x: &SkewMatrix) -> Result<UnitaryMatrix> {
    let n = x.n();
    let xm = x.as_mat();
    let h = Mat::<c64>::from_fn(n, n, |j, k| {
        let z = xm[(j, k)];
        c64::new(z.im, -z.re)
    });
    let evd = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::Eigensolver {
            n,
            max_abs: max_abs(&h),
        })?;
    let v = evd.U();
    let s = evd.S();
    let mut vp = v.to_owned();
    for k in 0..n {
        let lam = s[k].re;
        let ph = c64::new(lam.cos(), lam.sin());
        for j in 0..n {
            vp[(j, k)] *= ph;
        }
    }
    Ok(UnitaryMatrix::from_mat_unchecked(&vp * v.adjoint()))
}

/// Nearest unitary matrix in Frobenius norm: `m (m* m)^{-1/2}`.
pub fn polar_unitary(m: &Mat<c64>) -> Result<UnitaryMatrix> {
    let n = m.nrows();
    let gram = m.adjoint() * m;
    let evd = gram
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::Eigensolver {
            n,
            max_abs: max_abs(m),
        })?;
    let v = evd.U();
    let s = evd.S();
    let mut vs = v.to_owned();
    for k in 0..n {
        let lam = s[k].re;
        if lam <= 0.0 {
            return Err(Error::Eigensolver {
                n,
                max_abs: max_abs(m),
            });
        }
        let w = 1.0 / lam.sqrt();
        for j in 0..n {
            vs[(j, k)] *= w;
        }
    }
    let inv_sqrt = &vs * v.adjoint();
    Ok(UnitaryMatrix::from_mat_unchecked(m * &inv_sqrt))
}
