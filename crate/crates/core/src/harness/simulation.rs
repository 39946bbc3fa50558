//! Checks on the simulator itself: the exact first moment, equivalence of
//! the direct and circle x SU(N) constructions, and convergence of trace
//! moments to their large-N limits.

use faer::c64;

use super::record::ExperimentRecord;
use super::stats::mean_se;
use super::{par_replicas, sample_spectra, Report, Settings};
use crate::error::Result;
use crate::free::moment;
use crate::simulate::{sample_endpoint, sample_endpoint_coupled};
use crate::spectral::trace_moment;

/// `|mean Re tr(U_t)/N - e^{-t/2}|` against a time-discretization
/// allowance of `0.01 t`.
pub fn run_exact_mean(
    s: &Settings,
    n_grid: &[usize],
    t_grid: &[f64],
    replicas: usize,
) -> Result<Report> {
    let mut report = Report::default();
    for &n in n_grid {
        for &t in t_grid {
            let clock = s.clock();
            let cfg = s.sim(n, t, replicas);
            cfg.validate()?;
            let traces = par_replicas(replicas, 0, |id| {
                Ok(sample_endpoint(&cfg, id)?.trace().re / n as f64)
            })?;
            let (mean, se) = mean_se(&traces);
            report.records.push(
                ExperimentRecord::upper_bound(
                    "exact_mean",
                    Some(n),
                    t,
                    replicas,
                    (mean - (-t / 2.0).exp()).abs(),
                    se,
                    0.01 * t,
                    s.seed,
                )
                .with_wall_time(clock.elapsed()),
            );
            report.sim_configs.push(cfg);
        }
    }
    Ok(report)
}

fn power_traces(u: &crate::unitary::UnitaryMatrix, k_max: usize) -> Vec<c64> {
    (1..=k_max).map(|k| u.normalized_power_trace(k)).collect()
}

/// Two-sample comparison of `tr(U_t^k)/N`, k = 1..k_max, between the
/// direct simulator (streams `0..M`) and the product construction
/// `z_t V_t` (streams `M..2M`). Each component is a separate row with
/// bound 0, so a row passes when the difference is within three pooled
/// standard errors.
pub fn run_coupling_check(
    s: &Settings,
    n: usize,
    t_grid: &[f64],
    k_max: usize,
    replicas: usize,
) -> Result<Report> {
    let mut report = Report::default();
    for &t in t_grid {
        let clock = s.clock();
        let cfg = s.sim(n, t, replicas);
        cfg.validate()?;
        let direct = par_replicas(replicas, 0, |id| {
            Ok(power_traces(&sample_endpoint(&cfg, id)?, k_max))
        })?;
        let coupled = par_replicas(replicas, replicas as u64, |id| {
            Ok(power_traces(&sample_endpoint_coupled(&cfg, id)?, k_max))
        })?;
        let start = report.records.len();
        for k in 0..k_max {
            for (part, get) in [
                ("re", (|z: c64| z.re) as fn(c64) -> f64),
                ("im", |z: c64| z.im),
            ] {
                let a: Vec<f64> = direct.iter().map(|v| get(v[k])).collect();
                let b: Vec<f64> = coupled.iter().map(|v| get(v[k])).collect();
                let (ma, sa) = mean_se(&a);
                let (mb, sb) = mean_se(&b);
                report.records.push(ExperimentRecord::upper_bound(
                    format!("coupling_{part}_k{}", k + 1),
                    Some(n),
                    t,
                    replicas,
                    (ma - mb).abs(),
                    sa.hypot(sb),
                    0.0,
                    s.seed,
                ));
            }
        }
        report.stamp(start, clock.elapsed());
        report.sim_configs.push(cfg);
    }
    Ok(report)
}

/// `|E tr(U_t^k)/N - int z^k d nu_t|` against `t^2 k^4 / N^2`.
pub fn run_moment_convergence(
    s: &Settings,
    n_grid: &[usize],
    t_grid: &[f64],
    k_max: usize,
    replicas: usize,
) -> Result<Report> {
    let mut report = Report::default();
    for &n in n_grid {
        for &t in t_grid {
            let clock = s.clock();
            let cfg = s.sim(n, t, replicas);
            let spectra = sample_spectra(&cfg, 0)?;
            let start = report.records.len();
            for k in 1..=k_max {
                let z: Vec<c64> = spectra.iter().map(|a| trace_moment(a, k as i64)).collect();
                let re: Vec<f64> = z.iter().map(|z| z.re).collect();
                let im: Vec<f64> = z.iter().map(|z| z.im).collect();
                let (mr, sr) = mean_se(&re);
                let (mi, si) = mean_se(&im);
                let target = moment(k, t)?;
                let kf = k as f64;
                report.records.push(ExperimentRecord::upper_bound(
                    format!("moment_k{k}"),
                    Some(n),
                    t,
                    replicas,
                    (mr - target).hypot(mi),
                    sr.hypot(si),
                    t * t * kf.powi(4) / (n * n) as f64,
                    s.seed,
                ));
            }
            report.stamp(start, clock.elapsed());
            report.sim_configs.push(cfg);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_mean_small() {
        let r = run_exact_mean(&Settings::default().with_seed(1), &[4], &[0.0, 0.5], 200).unwrap();
        assert_eq!(r.records.len(), 2);
        assert_eq!(r.records[0].estimate, 0.0);
        assert!(r.all_satisfied(), "{:?}", r.records);
    }

    #[test]
    fn coupling_rows() {
        let r = run_coupling_check(&Settings::default(), 4, &[0.5], 2, 200).unwrap();
        let names: Vec<&str> = r.records.iter().map(|r| r.experiment.as_str()).collect();
        assert_eq!(
            names,
            [
                "coupling_re_k1",
                "coupling_im_k1",
                "coupling_re_k2",
                "coupling_im_k2"
            ]
        );
        assert!(r.records.iter().all(|r| r.std_error > 0.0));
    }

    #[test]
    fn moment_rows_and_trivial_bound() {
        let r = run_moment_convergence(&Settings::default(), &[8], &[1.0], 4, 100).unwrap();
        assert_eq!(r.records.len(), 4);
        // k = 4: bound 256/64 exceeds any possible difference
        assert!(r.records[3].paper_bound >= 2.0 && r.records[3].bound_satisfied);
    }

    #[test]
    fn timing_is_opt_in() {
        let r = run_exact_mean(&Settings::default(), &[2], &[0.1], 10).unwrap();
        assert!(r.records[0].wall_time.is_none());
        let s = Settings {
            timing: true,
            ..Settings::default()
        };
        let r = run_exact_mean(&s, &[2], &[0.1], 10).unwrap();
        assert!(r.records[0].wall_time.is_some());
    }
}
