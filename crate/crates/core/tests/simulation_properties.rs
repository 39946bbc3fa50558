//! Simulator and spectral-measure properties that hold for every path or
//! follow from exact identities of the diffusion.

use faer::c64;
use proptest::prelude::*;
use ubmlab::harness::stats::mean_se;
use ubmlab::harness::{run_exact_mean, Settings};
use ubmlab::lie::{gaussian_su, gaussian_u};
use ubmlab::rng::RngStream;
use ubmlab::simulate::{
    sample_coupled_parts, sample_endpoint, sample_endpoint_coupled, sample_path, Integrator,
    SimConfig,
};
use ubmlab::spectral::{eigenangles, empirical_measure, geodesic_distance_identity, trace_moment};
use ubmlab::transport::{w1_discrete, CostKind};
use ubmlab::unitary::expm_skew;

fn haar_like(n: usize, seed: u64) -> ubmlab::unitary::UnitaryMatrix {
    // exp of a large Lie algebra element: an arbitrary fixed unitary
    expm_skew(
        &gaussian_u(n, &mut RngStream::new(seed, 77))
            .unwrap()
            .scaled(5.0),
    )
    .unwrap()
}

#[test]
fn endpoints_stay_unitary() {
    for integrator in [Integrator::Geodesic, Integrator::EulerProjected] {
        let cfg = SimConfig::new(12, 3.0)
            .with_integrator(integrator)
            .with_seed(4);
        for id in 0..4 {
            let u = sample_endpoint(&cfg, id).unwrap();
            assert!(u.unitarity_defect() < 1e-10, "{integrator:?}");
        }
    }
}

#[test]
fn coupled_factor_has_unit_determinant() {
    let cfg = SimConfig::new(6, 1.0).with_seed(2);
    let (z, v) = sample_coupled_parts(&cfg, 0).unwrap();
    assert!((z.norm() - 1.0).abs() < 1e-12);
    assert!((v.determinant() - c64::new(1.0, 0.0)).norm() < 1e-9);
    let u = sample_endpoint_coupled(&cfg, 0).unwrap();
    assert!((u.determinant() - z.powi(6)).norm() < 1e-9);
}

#[test]
fn spectrum_is_conjugation_invariant() {
    let cfg = SimConfig::new(10, 1.5).with_seed(8);
    let u = sample_endpoint(&cfg, 3).unwrap();
    let v = haar_like(10, 1);
    let a = empirical_measure(&eigenangles(&u).unwrap());
    let b = empirical_measure(&eigenangles(&u.conjugate_by(&v)).unwrap());
    assert!(w1_discrete(&a, &b, CostKind::Geodesic).unwrap().value < 1e-9);
}

#[test]
fn trace_moments_match_matrix_powers() {
    let cfg = SimConfig::new(9, 2.0).with_seed(5);
    let u = sample_endpoint(&cfg, 0).unwrap();
    let s = eigenangles(&u).unwrap();
    for k in 1..=5usize {
        let direct = u.normalized_power_trace(k);
        let spectral = trace_moment(&s, k as i64);
        assert!((direct - spectral).norm() < 1e-10, "k={k}");
    }
    // k = 0 and negative powers
    assert!((trace_moment(&s, 0) - c64::new(1.0, 0.0)).norm() < 1e-14);
    let back = trace_moment(&s, -2);
    let fwd = trace_moment(&s, 2);
    assert!((back - fwd.conj()).norm() < 1e-12);
}

#[test]
fn same_stream_same_path() {
    let cfg = SimConfig::new(5, 1.0).with_seed(17);
    let a = sample_endpoint(&cfg, 9).unwrap();
    let b = sample_endpoint(&cfg, 9).unwrap();
    assert_eq!(a.as_mat(), b.as_mat());
    let c = sample_endpoint(&cfg, 10).unwrap();
    assert_ne!(a.as_mat(), c.as_mat());
    let other_seed = sample_endpoint(&cfg.clone().with_seed(18), 9).unwrap();
    assert_ne!(a.as_mat(), other_seed.as_mat());
}

#[test]
fn path_endpoint_matches_grid_refinement() {
    // A path observed on a coarse grid still ends at a unitary matrix
    // whose distance from I is bounded by the diameter.
    let cfg = SimConfig::new(6, 2.0).with_seed(1);
    let grid = [0.0, 0.25, 1.0, 2.0];
    let p = sample_path(&cfg, &grid, 0).unwrap();
    assert_eq!(p.states.len(), grid.len());
    assert!(geodesic_distance_identity(&p.states[0]).unwrap() < 1e-12);
    for u in &p.states {
        assert!(geodesic_distance_identity(u).unwrap() <= 6.0 * std::f64::consts::PI + 1e-9);
    }
}

#[test]
fn small_time_squared_distance_is_diffusive() {
    // d_g(U_t, I)^2 ~ |W_t|^2 with E|W_t|^2 = dim u(N) t = N^2 t.
    let (n, t, reps) = (4usize, 1e-4, 2000);
    let cfg = SimConfig::new(n, t).with_seed(3);
    let d2: Vec<f64> = (0..reps)
        .map(|id| {
            geodesic_distance_identity(&sample_endpoint(&cfg, id).unwrap())
                .unwrap()
                .powi(2)
        })
        .collect();
    let (m, se) = mean_se(&d2);
    let expect = (n * n) as f64 * t;
    assert!(
        (m - expect).abs() < 0.05 * expect,
        "{m} vs {expect} (se {se})"
    );
}

#[test]
fn integrators_agree_on_the_mean_trace() {
    let (n, t, reps) = (6usize, 1.0, 600);
    let mean = |integrator| {
        let cfg = SimConfig::new(n, t)
            .with_integrator(integrator)
            .with_seed(21);
        let v: Vec<f64> = (0..reps)
            .map(|id| sample_endpoint(&cfg, id).unwrap().trace().re / n as f64)
            .collect();
        mean_se(&v)
    };
    let (mg, sg) = mean(Integrator::Geodesic);
    let (me, se) = mean(Integrator::EulerProjected);
    let exact = (-t / 2.0).exp();
    assert!((mg - exact).abs() < 3.0 * sg + 0.01 * t, "{mg}");
    assert!((me - exact).abs() < 3.0 * se + 0.01 * t, "{me}");
}

#[test]
fn standard_error_scales_with_replicas() {
    let s = Settings::default().with_seed(6);
    let se = |reps| run_exact_mean(&s, &[4], &[1.0], reps).unwrap().records[0].std_error;
    let ratio = se(250) / se(1000);
    assert!((1.8..=2.2).contains(&ratio), "{ratio}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gaussians_are_skew_and_su_is_traceless(n in 1usize..10, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed, 0);
        let x = gaussian_u(n, &mut rng).unwrap();
        prop_assert!(x.skew_defect() < 1e-12);
        let y = gaussian_su(n, &mut rng).unwrap();
        prop_assert!(y.trace().norm() < 1e-10);
    }

    #[test]
    fn exponential_of_skew_is_unitary(n in 1usize..12, seed in any::<u64>(), scale in 0.0f64..20.0) {
        let x = gaussian_u(n, &mut RngStream::new(seed, 1)).unwrap().scaled(scale);
        let u = expm_skew(&x).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-10);
        // det exp(X) = exp(tr X)
        let tr = x.trace();
        let det = c64::new(tr.re.exp() * tr.im.cos(), tr.re.exp() * tr.im.sin());
        prop_assert!((u.determinant() - det).norm() < 1e-8);
    }

    #[test]
    fn eigenangles_principal_and_distance_bounded(n in 1usize..10, seed in any::<u64>()) {
        let u = haar_like(n, seed);
        let s = eigenangles(&u).unwrap();
        prop_assert_eq!(s.len(), n);
        prop_assert!(s.angles().iter().all(|&a| a > -std::f64::consts::PI && a <= std::f64::consts::PI));
        prop_assert!(s.angles().windows(2).all(|w| w[0] <= w[1]));
        let d = geodesic_distance_identity(&u).unwrap();
        prop_assert!(d <= n as f64 * std::f64::consts::PI + 1e-9);
    }
}
