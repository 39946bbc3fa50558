//! Circle transport against brute-force references and metric axioms.

mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use ubmlab::rng::RngStream;
use ubmlab::spectral::CircleMeasure;
use ubmlab::transport::{
    arc_distance, chord_distance, quantile_discretize, w1_discrete, w1_to_continuous, CostKind,
    UniformCircle,
};

fn geo(a: &CircleMeasure, b: &CircleMeasure) -> f64 {
    w1_discrete(a, b, CostKind::Geodesic).unwrap().value
}

/// Up to 8 atoms with positive weights, normalized.
fn measure() -> impl Strategy<Value = CircleMeasure> {
    prop::collection::vec((-PI + 1e-9..PI, 0.01f64..1.0), 1..=8).prop_map(|pairs| {
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        CircleMeasure::from_pairs(pairs.into_iter().map(|(a, w)| (a, w / total))).unwrap()
    })
}

#[test]
fn lattice_measures_match_assignment_enumeration() {
    let mut rng = RngStream::new(99, 3);
    for _ in 0..50 {
        let (mu, mu_units) = common::random_lattice_measure(&mut rng);
        let (nu, nu_units) = common::random_lattice_measure(&mut rng);
        let g = common::brute_force_w1(&mu_units, &nu_units, arc_distance);
        let c = common::brute_force_w1(&mu_units, &nu_units, chord_distance);
        assert!((geo(&mu, &nu) - g).abs() < 1e-9);
        let exact = w1_discrete(&mu, &nu, CostKind::ChordalExact).unwrap().value;
        assert!((exact - c).abs() < 1e-9);
    }
}

#[test]
fn point_masses_cost_their_distance() {
    for (a, b) in [(0.0, 1.0), (3.0, -3.0), (-PI + 0.1, PI - 0.1), (0.5, 0.5)] {
        let (x, y) = (CircleMeasure::point_mass(a), CircleMeasure::point_mass(b));
        assert!((geo(&x, &y) - arc_distance(a, b)).abs() < 1e-12);
        let c = w1_discrete(&x, &y, CostKind::ChordalExact).unwrap().value;
        assert!((c - chord_distance(a, b)).abs() < 1e-12);
    }
}

#[test]
fn antipodal_halves() {
    // Half the mass at 0 and half at pi, against the rotation by pi/2:
    // every unit must travel a quarter circle.
    let mu = CircleMeasure::from_pairs([(0.0, 0.5), (PI, 0.5)]).unwrap();
    let nu = mu.rotated(PI / 2.0);
    assert!((geo(&mu, &nu) - PI / 2.0).abs() < 1e-12);
}

#[test]
fn discretized_uniform_approaches_uniform() {
    // m evenly spaced atoms are at W1 distance pi / (2m) from uniform.
    for m in [64, 256, 1024] {
        let disc = quantile_discretize(&UniformCircle, m).unwrap();
        let spread: Vec<(f64, f64)> = (0..m)
            .map(|j| (-PI + 2.0 * PI * j as f64 / m as f64, 1.0 / m as f64))
            .collect();
        let lattice = CircleMeasure::from_pairs(spread).unwrap();
        // shifted lattices differ by half a cell everywhere
        assert!((geo(&disc.measure, &lattice) - PI / m as f64).abs() < 1e-9);
        let r = w1_to_continuous(&lattice, &UniformCircle, m, CostKind::Geodesic).unwrap();
        assert!(r.lower <= PI / (2.0 * m as f64) + 1e-12);
        assert!(r.upper >= PI / (2.0 * m as f64) - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn symmetric_and_nonnegative(a in measure(), b in measure()) {
        let ab = geo(&a, &b);
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - geo(&b, &a)).abs() < 1e-12);
        prop_assert!(geo(&a, &a) < 1e-12);
        prop_assert!(ab <= PI + 1e-12);
    }

    #[test]
    fn triangle_inequality(a in measure(), b in measure(), c in measure()) {
        prop_assert!(geo(&a, &c) <= geo(&a, &b) + geo(&b, &c) + 1e-12);
    }

    #[test]
    fn rotation_equivariant(a in measure(), b in measure(), phi in -10.0f64..10.0) {
        let d = geo(&a, &b);
        let dr = geo(&a.rotated(phi), &b.rotated(phi));
        prop_assert!((d - dr).abs() < 1e-10, "{} vs {}", d, dr);
    }

    #[test]
    fn rotation_of_a_measure_costs_at_most_the_angle(a in measure(), phi in -PI..PI) {
        prop_assert!(geo(&a, &a.rotated(phi)) <= phi.abs() + 1e-12);
    }

    #[test]
    fn chordal_sandwich(a in measure(), b in measure()) {
        let g = geo(&a, &b);
        let c = w1_discrete(&a, &b, CostKind::ChordalExact).unwrap().value;
        prop_assert!(2.0 / PI * g <= c + 1e-12);
        prop_assert!(c <= g + 1e-12);
        let s = w1_discrete(&a, &b, CostKind::ChordalSandwich).unwrap();
        prop_assert!(s.lower <= c + 1e-12 && c <= s.upper + 1e-12);
    }

    /// Kantorovich duality: no 1-Lipschitz test function separates the
    /// measures by more than W1.
    #[test]
    fn lipschitz_tests_bounded_by_w1(a in measure(), b in measure(), k in 1i32..6, phase in -PI..PI) {
        let f = move |x: f64| (k as f64 * x + phase).sin() / k as f64;
        let g = move |x: f64| arc_distance(x, phase);
        let w = geo(&a, &b);
        prop_assert!((a.integrate(f) - b.integrate(f)).abs() <= w + 1e-12);
        prop_assert!((a.integrate(g) - b.integrate(g)).abs() <= w + 1e-12);
        let c = w1_discrete(&a, &b, CostKind::ChordalExact).unwrap().value;
        let h = move |x: f64| chord_distance(x, phase);
        prop_assert!((a.integrate(h) - b.integrate(h)).abs() <= c + 1e-12);
    }
}
