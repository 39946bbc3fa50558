//! Wasserstein-1 distances between probability measures on the circle.
//!
//! Arc-length (geodesic) cost is computed exactly by the median formula in
//! O(m log m). Chordal cost `|e^{ia} - e^{ib}|` is solved exactly as a
//! transport LP for small supports; at scale it is bracketed by
//! `(2/pi) W1_geo <= W1_chord <= W1_geo`.

pub mod circle;
pub mod simplex;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::CircleMeasure;

pub use circle::{arc_distance, chord_distance, w1_geodesic};
pub use simplex::{solve_transport, TransportPlan};

/// Default total-atom cap for the exact chordal LP.
pub const CHORDAL_ATOM_CAP: usize = 512;

/// Smallest atom count accepted by [`w1_to_continuous`].
pub const MIN_CONTINUOUS_ATOMS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CostKind {
    #[default]
    Geodesic,
    ChordalExact,
    ChordalSandwich,
}

impl std::str::FromStr for CostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geodesic" => Ok(Self::Geodesic),
            "chordal" | "chordal_exact" => Ok(Self::ChordalExact),
            "chordal_sandwich" | "sandwich" => Ok(Self::ChordalSandwich),
            other => Err(Error::InvalidConfig(format!("unknown cost {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportResult {
    pub value: f64,
    pub cost_kind: CostKind,
    pub lower: f64,
    pub upper: f64,
    pub discretization_error: f64,
}

impl TransportResult {
    fn exact(value: f64, cost_kind: CostKind) -> Self {
        Self {
            value,
            cost_kind,
            lower: value,
            upper: value,
            discretization_error: 0.0,
        }
    }

    /// Widens the bracket by a discretization error on either side.
    fn with_discretization(mut self, err: f64) -> Self {
        self.discretization_error += err;
        self.lower = (self.lower - err).max(0.0);
        self.upper += err;
        self
    }
}

/// W1 between two atomic circle measures.
pub fn w1_discrete(
    mu: &CircleMeasure,
    nu: &CircleMeasure,
    cost_kind: CostKind,
) -> Result<TransportResult> {
    w1_discrete_with_cap(mu, nu, cost_kind, CHORDAL_ATOM_CAP)
}

pub fn w1_discrete_with_cap(
    mu: &CircleMeasure,
    nu: &CircleMeasure,
    cost_kind: CostKind,
    cap: usize,
) -> Result<TransportResult> {
    match cost_kind {
        CostKind::Geodesic => Ok(TransportResult::exact(w1_geodesic(mu, nu), cost_kind)),
        CostKind::ChordalSandwich => {
            let g = w1_geodesic(mu, nu);
            Ok(TransportResult {
                value: g,
                cost_kind,
                lower: 2.0 / PI * g,
                upper: g,
                discretization_error: 0.0,
            })
        }
        CostKind::ChordalExact => {
            let atoms = mu.len() + nu.len();
            if atoms > cap {
                return Err(Error::AtomCapExceeded { atoms, cap });
            }
            let plan = lp_transport(mu, nu, chord_distance)?;
            Ok(TransportResult::exact(plan.cost, cost_kind))
        }
    }
}

/// Exact transport LP between two atomic measures under `cost(a, b)`.
pub fn lp_transport(
    mu: &CircleMeasure,
    nu: &CircleMeasure,
    cost: impl Fn(f64, f64) -> f64,
) -> Result<TransportPlan> {
    let c: Vec<f64> = mu
        .atoms()
        .iter()
        .flat_map(|&a| nu.atoms().iter().map(move |&b| (a, b)))
        .map(|(a, b)| cost(a, b))
        .collect();
    solve_transport(mu.weights(), nu.weights(), &c)
}

/// A probability measure on the circle accessed through its quantile
/// function on the cut (-pi, pi]. `quantile(0)` and `quantile(1)` are the
/// ends of the support within [-pi, pi].
pub trait QuantileSource {
    fn quantile(&self, p: f64) -> f64;
}

/// The uniform (Haar) probability measure on the circle.
#[derive(Clone, Copy, Debug, Default)]
pub struct UniformCircle;

impl QuantileSource for UniformCircle {
    fn quantile(&self, p: f64) -> f64 {
        -PI + 2.0 * PI * p
    }
}

impl<F: Fn(f64) -> f64> QuantileSource for F {
    fn quantile(&self, p: f64) -> f64 {
        self(p)
    }
}

#[derive(Clone, Debug)]
pub struct Discretization {
    pub measure: CircleMeasure,
    /// Upper bound on the geodesic W1 between the source and `measure`.
    pub error: f64,
}

/// `m` equal-mass atoms at the mid-quantiles `q((j - 1/2)/m)`.
///
/// Moving the mass of quantile cell `j` onto its mid-quantile costs at most
/// `(1/m) max(q(j/m) - q_mid, q_mid - q((j-1)/m))`; the sum over cells is
/// returned as the error bound.
pub fn quantile_discretize(q: &dyn QuantileSource, m: usize) -> Result<Discretization> {
    if m == 0 {
        return Err(Error::InvalidInput("atom count must be >= 1".into()));
    }
    let mf = m as f64;
    let mut prev = q.quantile(0.0);
    let mut pairs = Vec::with_capacity(m);
    let mut error = 0.0;
    for j in 1..=m {
        let p_mid = (j as f64 - 0.5) / mf;
        let p_hi = j as f64 / mf;
        let mid = q.quantile(p_mid);
        let hi = q.quantile(p_hi);
        if !(mid >= prev - 1e-12) || !(hi >= mid - 1e-12) || mid < -PI - 1e-12 || hi > PI + 1e-12 {
            return Err(Error::InvalidQuantile(p_mid));
        }
        error += (hi - mid).max(mid - prev).max(0.0) / mf;
        pairs.push((mid, 1.0 / mf));
        prev = hi;
    }
    Ok(Discretization {
        measure: CircleMeasure::from_pairs(pairs)?,
        error,
    })
}

/// W1 from an atomic measure to a continuous target via an `m`-atom
/// quantile discretization of the target.
pub fn w1_to_continuous(
    mu: &CircleMeasure,
    target: &dyn QuantileSource,
    m: usize,
    cost_kind: CostKind,
) -> Result<TransportResult> {
    if m < MIN_CONTINUOUS_ATOMS {
        return Err(Error::InvalidInput(format!(
            "at least {MIN_CONTINUOUS_ATOMS} atoms required, got {m}"
        )));
    }
    let disc = quantile_discretize(target, m)?;
    Ok(w1_discrete(mu, &disc.measure, cost_kind)?.with_discretization(disc.error))
}

/// W1 between two continuous targets through their `m`-atom discretizations.
pub fn w1_between_continuous(
    a: &dyn QuantileSource,
    b: &dyn QuantileSource,
    m: usize,
) -> Result<TransportResult> {
    if m < MIN_CONTINUOUS_ATOMS {
        return Err(Error::InvalidInput(format!(
            "at least {MIN_CONTINUOUS_ATOMS} atoms required, got {m}"
        )));
    }
    let da = quantile_discretize(a, m)?;
    let db = quantile_discretize(b, m)?;
    Ok(w1_discrete(&da.measure, &db.measure, CostKind::Geodesic)?
        .with_discretization(da.error + db.error))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(pairs: &[(f64, f64)]) -> CircleMeasure {
        CircleMeasure::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn identical_measures_zero() {
        let a = pm(&[(0.3, 0.25), (-2.0, 0.75)]);
        for kind in [
            CostKind::Geodesic,
            CostKind::ChordalExact,
            CostKind::ChordalSandwich,
        ] {
            let r = w1_discrete(&a, &a, kind).unwrap();
            assert!(r.value.abs() < 1e-14, "{kind:?}");
        }
    }

    #[test]
    fn antipodal_point_masses() {
        let a = CircleMeasure::point_mass(0.0);
        let b = CircleMeasure::point_mass(PI);
        assert!((w1_discrete(&a, &b, CostKind::Geodesic).unwrap().value - PI).abs() < 1e-14);
        assert!((w1_discrete(&a, &b, CostKind::ChordalExact).unwrap().value - 2.0).abs() < 1e-14);
        let s = w1_discrete(&a, &b, CostKind::ChordalSandwich).unwrap();
        assert!((s.lower - 2.0).abs() < 1e-14 && (s.upper - PI).abs() < 1e-14);
    }

    #[test]
    fn two_point_quarter_turn() {
        let a = pm(&[(0.0, 0.5), (PI, 0.5)]);
        let b = pm(&[(PI / 2.0, 0.5), (-PI / 2.0, 0.5)]);
        let r = w1_discrete(&a, &b, CostKind::Geodesic).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn rotated_lattice() {
        for m in 1..=8usize {
            let shift = PI / m as f64 * 0.7;
            let a = CircleMeasure::from_pairs(
                (0..m).map(|j| (2.0 * PI * j as f64 / m as f64, 1.0 / m as f64)),
            )
            .unwrap();
            let b = a.rotated(shift);
            let g = w1_discrete(&a, &b, CostKind::Geodesic).unwrap().value;
            assert!((g - shift).abs() < 1e-12, "m={m}: {g} vs {shift}");
            let lp = lp_transport(&a, &b, arc_distance).unwrap().cost;
            assert!((lp - shift).abs() < 1e-12);
        }
    }

    #[test]
    fn cap_exceeded() {
        let a =
            CircleMeasure::from_pairs((0..300).map(|j| (j as f64 * 0.01, 1.0 / 300.0))).unwrap();
        let b = a.rotated(0.5);
        assert!(matches!(
            w1_discrete(&a, &b, CostKind::ChordalExact),
            Err(Error::AtomCapExceeded {
                atoms: 600,
                cap: 512
            })
        ));
    }

    #[test]
    fn uniform_quantile_atoms() {
        let d = quantile_discretize(&UniformCircle, 4).unwrap();
        let expect = [-3.0 * PI / 4.0, -PI / 4.0, PI / 4.0, 3.0 * PI / 4.0];
        for (a, e) in d.measure.atoms().iter().zip(expect) {
            assert!((a - e).abs() < 1e-14);
        }
        assert!((d.error - PI / 4.0).abs() < 1e-14);
        let d8 = quantile_discretize(&UniformCircle, 8).unwrap();
        let ratio = d8.error / d.error;
        assert!((ratio - 0.5).abs() < 0.05);
    }

    #[test]
    fn single_atom_at_median() {
        let q = |p: f64| (2.0 * p - 1.0) * 2.0;
        let d = quantile_discretize(&q, 1).unwrap();
        assert_eq!(d.measure.atoms(), &[0.0]);
    }

    #[test]
    fn non_monotone_quantile_rejected() {
        let q = |p: f64| -p;
        assert!(matches!(
            quantile_discretize(&q, 4),
            Err(Error::InvalidQuantile(_))
        ));
    }

    #[test]
    fn point_mass_to_uniform() {
        let r = w1_to_continuous(
            &CircleMeasure::point_mass(0.0),
            &UniformCircle,
            4096,
            CostKind::Geodesic,
        )
        .unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-3);
        assert!(r.lower <= PI / 2.0 && PI / 2.0 <= r.upper);
    }

    #[test]
    fn own_discretization_is_zero() {
        let d = quantile_discretize(&UniformCircle, 128).unwrap();
        let r = w1_to_continuous(&d.measure, &UniformCircle, 128, CostKind::Geodesic).unwrap();
        assert!(r.value.abs() < 1e-12);
        assert!((r.upper - d.error).abs() < 1e-12);
        assert!(w1_to_continuous(&d.measure, &UniformCircle, 32, CostKind::Geodesic).is_err());
    }
}
