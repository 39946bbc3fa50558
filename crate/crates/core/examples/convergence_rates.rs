//! Convergence of the empirical spectral measure in Wasserstein-1.
//!
//! Each replica's spectral measure is compared with the pool of all
//! replicas (a proxy for the mean spectral measure) and the pool with the
//! large-N limit. The mean distance decays like `N^{-2/3}`.
//!
//! ```text
//! cargo run --release --example convergence_rates
//! ```

use ubmlab::harness::{run_avg_to_limit, run_rate_avg_to_avg, Settings};

fn main() -> ubmlab::Result<()> {
    let s = Settings::default().with_seed(7);
    let rates = run_rate_avg_to_avg(&s, &[4, 8, 16, 32], &[1.0], 200)?;
    for r in &rates.report.records {
        println!("{}", r.summary_line());
    }
    for (t, fit) in &rates.fits {
        println!(
            "t = {t}: fitted exponent {:.3} (r^2 = {:.3})",
            fit.slope, fit.r_squared
        );
    }
    println!();
    let limit = run_avg_to_limit(&s, &rates.samples, 1024)?;
    for r in &limit.records {
        println!("{}", r.summary_line());
    }
    Ok(())
}
