//! Concentration of the spectral distance, the supremum along a path, and
//! the small-time excursion from the identity.
//!
//! ```text
//! cargo run --release --example tails_and_paths
//! ```

use ubmlab::harness::{run_bm_tail, run_concentration_tail, run_path_sup, Settings, TailOffset};

fn main() -> ubmlab::Result<()> {
    let s = Settings::default().with_seed(13);

    println!("exceedance of mean + x, N = 8, t = 1:");
    let conc = run_concentration_tail(&s, 8, 1.0, &[0.02, 0.05, 0.1], 400)?;
    for r in &conc.records {
        println!("  {}", r.summary_line());
    }

    println!("\nsup over t in [0.5, 2] of W1(mu_t, nu_t), 8 paths:");
    let paths = run_path_sup(&s, &[4, 16], 2.0, 20, 8, 512)?;
    for r in &paths.report.records {
        println!("  {}", r.summary_line());
    }

    println!("\nsup over t < delta of d(U_t, I), N = 3:");
    let tail = run_bm_tail(
        &s,
        3,
        &[0.01, 0.04],
        &[1.0, 2.0],
        TailOffset::FractionOfR(0.5),
        200,
        20,
    )?;
    for r in &tail.records {
        println!("  {}", r.summary_line());
    }
    for w in &tail.warnings {
        println!("  warning: {w}");
    }
    Ok(())
}
