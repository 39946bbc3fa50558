//! Brownian motion on U(N): endpoints, paths, and the exact mean trace.
//!
//! `E tr(U_t)/N = e^{-t/2}` for every N, which makes the first moment an
//! exact check on the integrator. The product construction `z_t V_t`
//! (a phase times an SU(N) Brownian motion) has the same law.
//!
//! ```text
//! cargo run --release --example brownian_paths
//! ```

use ubmlab::harness::stats::mean_se;
use ubmlab::simulate::{
    sample_endpoint, sample_endpoint_coupled, sample_path, Integrator, SimConfig,
};
use ubmlab::spectral::geodesic_distance_identity;

fn main() -> ubmlab::Result<()> {
    let (n, replicas) = (8, 1000);
    println!("mean of Re tr(U_t)/N over {replicas} replicas, N = {n}");
    for t in [0.5, 1.0, 2.0] {
        for integrator in [Integrator::Geodesic, Integrator::EulerProjected] {
            let cfg = SimConfig::new(n, t)
                .with_integrator(integrator)
                .with_seed(3);
            let traces: Vec<f64> = (0..replicas)
                .map(|id| Ok(sample_endpoint(&cfg, id)?.trace().re / n as f64))
                .collect::<ubmlab::Result<_>>()?;
            let (mean, se) = mean_se(&traces);
            println!(
                "  t={t:<4} {:<16} {mean:.4} +- {se:.4}   exact {:.4}",
                format!("{integrator:?}"),
                (-t / 2.0).exp()
            );
        }
        let cfg = SimConfig::new(n, t).with_seed(3);
        let traces: Vec<f64> = (0..replicas)
            .map(|id| Ok(sample_endpoint_coupled(&cfg, id)?.trace().re / n as f64))
            .collect::<ubmlab::Result<_>>()?;
        let (mean, se) = mean_se(&traces);
        println!("  t={t:<4} {:<16} {mean:.4} +- {se:.4}", "circle x SU(N)");
    }

    // One path observed on a grid: distance from the identity grows like
    // sqrt(N^2 t) at first and saturates below the diameter N pi.
    let cfg = SimConfig::new(n, 4.0).with_seed(11);
    let grid: Vec<f64> = (0..=8).map(|i| i as f64 * 0.5).collect();
    let path = sample_path(&cfg, &grid, 0)?;
    println!("\none path, N = {n}: t, d(U_t, I), sqrt(N^2 t)");
    for (t, u) in grid.iter().zip(&path.states) {
        println!(
            "  {t:>4.1}  {:>7.3}  {:>7.3}",
            geodesic_distance_identity(u)?,
            (n as f64 * n as f64 * t).sqrt()
        );
    }
    Ok(())
}
