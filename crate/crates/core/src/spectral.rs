//! Eigenvalue angles, spectral measures on the circle, trace moments.

use std::f64::consts::PI;

use faer::c64;

use crate::error::{Error, Result};
use crate::unitary::{UnitaryMatrix, DEFAULT_UNITARY_TOL};

/// Angles closer than this are merged into one atom.
pub const MERGE_TOL: f64 = 1e-12;

/// Maps any real angle onto the principal branch (-pi, pi].
pub fn wrap_angle(theta: f64) -> f64 {
    let mut a = theta.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    if a <= -PI {
        a = PI;
    }
    a
}

/// Sorted principal arguments of the eigenvalues of a unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSample {
    angles: Vec<f64>,
}

impl AngleSample {
    /// Wraps, then sorts, the given angles.
    pub fn new(angles: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut angles: Vec<f64> = angles.into_iter().map(wrap_angle).collect();
        if angles.is_empty() {
            return Err(Error::InvalidInput("empty angle sample".into()));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidInput("non-finite angle".into()));
        }
        angles.sort_by(f64::total_cmp);
        Ok(Self { angles })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// A finitely supported probability measure on the circle, atoms sorted in (-pi, pi].
#[derive(Clone, Debug, PartialEq)]
pub struct CircleMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

impl CircleMeasure {
    /// Builds a measure from arbitrary (angle, weight) pairs: angles are
    /// wrapped, sorted and merged; weights must be positive and sum to 1
    /// within 1e-9, and are renormalized exactly.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut pairs: Vec<(f64, f64)> =
            pairs.into_iter().map(|(a, w)| (wrap_angle(a), w)).collect();
        if pairs.is_empty() {
            return Err(Error::InvalidInput("measure has no atoms".into()));
        }
        if let Some(&(_, w)) = pairs.iter().find(|(a, w)| !(*w > 0.0) || !a.is_finite()) {
            return Err(Error::InvalidInput(format!("non-positive weight {w}")));
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "weights sum to {total}, not 1"
            )));
        }
        let (atoms, weights) = merge_sorted(&pairs, total);
        Ok(Self { atoms, weights })
    }

    pub fn point_mass(angle: f64) -> Self {
        Self {
            atoms: vec![wrap_angle(angle)],
            weights: vec![1.0],
        }
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| w * f(a))
            .sum()
    }

    /// `int z^k d mu`.
    pub fn moment(&self, k: i64) -> c64 {
        self.atoms
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| {
                let p = k as f64 * a;
                c64::new(w * p.cos(), w * p.sin())
            })
            .sum()
    }

    /// The measure pushed forward by rotation through `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        Self::from_pairs(
            self.atoms
                .iter()
                .zip(&self.weights)
                .map(|(&a, &w)| (a + angle, w)),
        )
        .expect("rotation preserves validity")
    }
}

/// Merges sorted (angle, weight) pairs closer than [`MERGE_TOL`], including
/// across the branch cut, and divides weights by `total`.
fn merge_sorted(pairs: &[(f64, f64)], total: f64) -> (Vec<f64>, Vec<f64>) {
    let mut atoms: Vec<f64> = Vec::with_capacity(pairs.len());
    let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
    for &(a, w) in pairs {
        match atoms.last() {
            Some(&last) if a - last <= MERGE_TOL => *weights.last_mut().unwrap() += w,
            _ => {
                atoms.push(a);
                weights.push(w);
            }
        }
    }
    if atoms.len() > 1 && atoms[0] + 2.0 * PI - atoms[atoms.len() - 1] <= MERGE_TOL {
        let w0 = weights.remove(0);
        atoms.remove(0);
        *weights.last_mut().unwrap() += w0;
    }
    for w in &mut weights {
        *w /= total;
    }
    (atoms, weights)
}

/// Principal eigenangles of `u`, sorted ascending.
pub fn eigenangles(u: &UnitaryMatrix) -> Result<AngleSample> {
    u.check(DEFAULT_UNITARY_TOL)?;
    let n = u.n();
    let ev = u.as_mat().eigenvalues().map_err(|_| Error::Eigensolver {
        n,
        max_abs: u.as_mat().as_ref().norm_max(),
    })?;
    AngleSample::new(ev.iter().map(|z| z.im.atan2(z.re)))
}

/// `(1/n) sum_j delta_{theta_j}`, duplicates merged.
pub fn empirical_measure(s: &AngleSample) -> CircleMeasure {
    let w = 1.0 / s.len() as f64;
    let pairs: Vec<(f64, f64)> = s.angles().iter().map(|&a| (a, w)).collect();
    let total = w * s.len() as f64;
    let (atoms, weights) = merge_sorted(&pairs, total);
    CircleMeasure { atoms, weights }
}

/// Equal-weight mixture of the given measures.
pub fn pool_measures(measures: &[CircleMeasure]) -> Result<CircleMeasure> {
    if measures.is_empty() {
        return Err(Error::InvalidInput(
            "cannot pool an empty list of measures".into(),
        ));
    }
    let share = 1.0 / measures.len() as f64;
    let mut pairs: Vec<(f64, f64)> = measures
        .iter()
        .flat_map(|m| {
            m.atoms
                .iter()
                .zip(&m.weights)
                .map(move |(&a, &w)| (a, w * share))
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let (atoms, weights) = merge_sorted(&pairs, total);
    Ok(CircleMeasure { atoms, weights })
}

/// `(1/n) sum_j e^{i k theta_j}`.
pub fn trace_moment(s: &AngleSample, k: i64) -> c64 {
    let n = s.len() as f64;
    let sum: c64 = s
        .angles()
        .iter()
        .map(|&a| {
            let p = k as f64 * a;
            c64::new(p.cos(), p.sin())
        })
        .sum();
    sum / n
}

/// Bi-invariant geodesic distance from `u` to the identity under
/// `<.,.>_N`: `sqrt(N sum_j theta_j^2)` over principal eigenangles.
pub fn geodesic_distance_identity(u: &UnitaryMatrix) -> Result<f64> {
    let s = eigenangles(u)?;
    Ok(angles_distance(&s))
}

pub(crate) fn angles_distance(s: &AngleSample) -> f64 {
    let n = s.len() as f64;
    (n * s.angles().iter().map(|a| a * a).sum::<f64>()).sqrt()
}
