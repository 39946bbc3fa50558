//! Eigenangles, empirical spectral measures and their pooled average.
//!
//! Trace moments of the empirical measure approach the moments of the
//! large-N limit as N grows.
//!
//! ```text
//! cargo run --release --example spectral_measures
//! ```

use ubmlab::free::moment;
use ubmlab::harness::sample_spectra;
use ubmlab::simulate::SimConfig;
use ubmlab::spectral::{empirical_measure, pool_measures, trace_moment};

fn main() -> ubmlab::Result<()> {
    let t = 1.0;
    let cfg = SimConfig::new(6, t).with_seed(5).with_replicas(1);
    let one = &sample_spectra(&cfg, 0)?[0];
    println!("eigenangles of one U_1, N = 6: {:.3?}", one.angles());

    println!("\nmean Re tr(U^k)/N at t = {t} versus the limit moment:");
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10}",
        "N", "k=1", "k=2", "k=3", "k=4"
    );
    for n in [4usize, 8, 16, 32] {
        let cfg = SimConfig::new(n, t).with_seed(5).with_replicas(400);
        let spectra = sample_spectra(&cfg, 0)?;
        let row: Vec<String> = (1..=4)
            .map(|k| {
                let m: f64 = spectra.iter().map(|s| trace_moment(s, k).re).sum::<f64>()
                    / spectra.len() as f64;
                format!("{m:>10.5}")
            })
            .collect();
        println!("{n:>5} {}", row.join(" "));
        if n == 32 {
            let pooled = pool_measures(&spectra.iter().map(empirical_measure).collect::<Vec<_>>())?;
            println!(
                "      pooled measure over {} replicas has {} atoms",
                spectra.len(),
                pooled.len()
            );
        }
    }
    let limit: Vec<String> = (1..=4)
        .map(|k| Ok(format!("{:>10.5}", moment(k, t)?)))
        .collect::<ubmlab::Result<_>>()?;
    println!("{:>5} {}", "limit", limit.join(" "));
    Ok(())
}
