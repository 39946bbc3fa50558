//! Distances between empirical spectral measures, their pooled average and
//! the limit `nu_t`.

use super::fit::{feasible_constant, fit_power_law, PowerLawFit};
use super::record::ExperimentRecord;
use super::stats::{binomial_se_at, mean_se};
use super::{sample_spectra, Report, Settings};
use crate::error::Result;
use crate::free::model::MIN_MODEL_TIME;
use crate::free::{w1_to_uniform, FreeMeasureModel};
use crate::spectral::{empirical_measure, pool_measures, AngleSample, CircleMeasure};
use crate::transport::{
    quantile_discretize, w1_discrete, CostKind, TransportResult, UniformCircle,
};

/// Fitted slopes of mean `W1(mu, mu_bar)` against N must not exceed this:
/// the bound's exponent -2/3 with room for Monte Carlo noise.
pub const RATE_SLOPE_THRESHOLD: f64 = -0.6;

/// Replica spectra at one grid point, reusable across experiments.
#[derive(Clone, Debug)]
pub struct SpectraSet {
    pub n: usize,
    pub t: f64,
    pub spectra: Vec<AngleSample>,
}

impl SpectraSet {
    pub fn measures(&self) -> Vec<CircleMeasure> {
        self.spectra.iter().map(empirical_measure).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct RateReport {
    pub report: Report,
    pub samples: Vec<SpectraSet>,
    /// Per-replica `W1(mu_i, mu_bar)` for each entry of `samples`.
    pub distances: Vec<Vec<f64>>,
    /// Slope fits against N, one per time with at least three dimensions.
    pub fits: Vec<(f64, PowerLawFit)>,
    /// Single constant `c` making `c (t/N^2)^{1/3}` dominate every mean.
    pub constant: f64,
}

/// `W1(mu_i, pool)` for every measure.
pub fn distances_to_pool(
    measures: &[CircleMeasure],
    pool: &CircleMeasure,
    cost: CostKind,
) -> Result<Vec<f64>> {
    super::par_replicas(measures.len(), 0, |i| {
        Ok(w1_discrete(&measures[i as usize], pool, cost)?.value)
    })
}

/// Smallest time at which the long-time rate `N^{-2/3}` applies.
pub fn long_time_threshold(n: usize) -> f64 {
    8.0 * (n as f64).ln().powi(2)
}

/// Mean distance from each replica's spectral measure to the pool of all
/// replicas, the pooled proxy for the mean spectral measure.
pub fn run_rate_avg_to_avg(
    s: &Settings,
    n_grid: &[usize],
    t_grid: &[f64],
    replicas: usize,
) -> Result<RateReport> {
    let mut out = RateReport::default();
    let mut means = Vec::new();
    for &t in t_grid {
        for &n in n_grid {
            let clock = s.clock();
            let cfg = s.sim(n, t, replicas);
            let spectra = sample_spectra(&cfg, 0)?;
            let set = SpectraSet { n, t, spectra };
            let measures = set.measures();
            let pool = pool_measures(&measures)?;
            let d = distances_to_pool(&measures, &pool, s.cost)?;
            let (mean, se) = mean_se(&d);
            means.push((n, t, mean, se, clock.elapsed()));
            out.samples.push(set);
            out.distances.push(d);
            out.report.sim_configs.push(cfg);
        }
    }
    let shape = |n: usize, t: f64| (t / (n * n) as f64).cbrt();
    let est: Vec<f64> = means.iter().map(|m| m.2).collect();
    let shapes: Vec<f64> = means.iter().map(|m| shape(m.0, m.1)).collect();
    let c = feasible_constant(&est, &shapes);
    out.constant = c;
    for &(n, t, mean, se, wall) in &means {
        out.report.records.push(
            ExperimentRecord::upper_bound(
                "avg_to_avg",
                Some(n),
                t,
                replicas,
                mean,
                se,
                c * shape(n, t),
                s.seed,
            )
            .with_wall_time(wall),
        );
    }
    // Long-time regime t >= 8 (ln N)^2, where the rate loses its t
    // dependence: one constant against N^{-2/3} over those points only.
    let long: Vec<_> = means
        .iter()
        .filter(|m| m.1 >= long_time_threshold(m.0))
        .collect();
    if !long.is_empty() {
        let shape = |n: usize| (n as f64).powf(-2.0 / 3.0);
        let est: Vec<f64> = long.iter().map(|m| m.2).collect();
        let shapes: Vec<f64> = long.iter().map(|m| shape(m.0)).collect();
        let c_long = feasible_constant(&est, &shapes);
        for &&(n, t, mean, se, wall) in &long {
            out.report.records.push(
                ExperimentRecord::upper_bound(
                    "avg_to_avg_long_t",
                    Some(n),
                    t,
                    replicas,
                    mean,
                    se,
                    c_long * shape(n),
                    s.seed,
                )
                .with_wall_time(wall),
            );
        }
    }
    for &t in t_grid {
        let pts: Vec<(f64, f64)> = means
            .iter()
            .filter(|m| m.1 == t)
            .map(|m| (m.0 as f64, m.2))
            .collect();
        if pts.len() >= 3 && pts.iter().all(|p| p.1 > 0.0) {
            let fit = fit_power_law(&pts)?;
            out.report.records.push(ExperimentRecord::upper_bound(
                "avg_to_avg_slope",
                None,
                t,
                replicas,
                fit.slope,
                0.0,
                RATE_SLOPE_THRESHOLD,
                s.seed,
            ));
            out.fits.push((t, fit));
        }
    }
    Ok(out)
}

/// Effect of the pool size: mean distance of replicas `0..M` to the pool
/// of the first `M` replicas versus the pool of all `2M`. The row passes
/// when the shift is below one standard error of the mean.
pub fn run_pool_bias(s: &Settings, n: usize, t: f64, replicas: usize) -> Result<Report> {
    let clock = s.clock();
    let cfg = s.sim(n, t, 2 * replicas);
    let spectra = sample_spectra(&cfg, 0)?;
    let measures: Vec<CircleMeasure> = spectra.iter().map(empirical_measure).collect();
    let small = pool_measures(&measures[..replicas])?;
    let large = pool_measures(&measures)?;
    let d_small = distances_to_pool(&measures[..replicas], &small, s.cost)?;
    let d_large = distances_to_pool(&measures[..replicas], &large, s.cost)?;
    let (m_small, se) = mean_se(&d_small);
    let (m_large, _) = mean_se(&d_large);
    let rec = ExperimentRecord::upper_bound(
        "pool_bias",
        Some(n),
        t,
        replicas,
        (m_small - m_large).abs(),
        0.0,
        se,
        s.seed,
    )
    .with_wall_time(clock.elapsed());
    Ok(Report {
        records: vec![rec],
        sim_configs: vec![cfg],
        warnings: Vec::new(),
    })
}

fn to_target(mu: &CircleMeasure, target: &CircleMeasure, err: f64) -> Result<TransportResult> {
    let r = w1_discrete(mu, target, CostKind::Geodesic)?;
    Ok(TransportResult {
        discretization_error: err,
        lower: (r.value - err).max(0.0),
        upper: r.value + err,
        ..r
    })
}

/// Geodesic W1 between the pooled measure and an `m`-atom discretization
/// of `nu_t`, for every sample with `t >= 0.5`.
///
/// The estimate is the upper end of the bracket (value plus discretization
/// error); its standard error comes from the spread between the pools of
/// the two halves of the replicas. For `t >= 8` the route through the
/// uniform measure is also recorded, with its `o(1)` term dropped.
pub fn run_avg_to_limit(s: &Settings, samples: &[SpectraSet], m_atoms: usize) -> Result<Report> {
    let mut report = Report::default();
    let mut rows = Vec::new();
    let uniform = quantile_discretize(&UniformCircle, m_atoms)?;
    for set in samples.iter().filter(|x| x.t >= MIN_MODEL_TIME) {
        let clock = s.clock();
        let (n, t) = (set.n, set.t);
        let model = FreeMeasureModel::new(t)?;
        let target = quantile_discretize(&model, m_atoms)?;
        let measures = set.measures();
        let pool = pool_measures(&measures)?;
        let half = measures.len() / 2;
        let w = to_target(&pool, &target.measure, target.error)?;
        let se = if half >= 1 {
            let a = to_target(&pool_measures(&measures[..half])?, &target.measure, 0.0)?;
            let b = to_target(&pool_measures(&measures[half..])?, &target.measure, 0.0)?;
            (a.value - b.value).abs() / 2.0
        } else {
            0.0
        };
        rows.push((n, t, set.spectra.len(), w, se, clock.elapsed()));
        if t >= 8.0 {
            let pu = to_target(&pool, &uniform.measure, uniform.error)?;
            let nf = n as f64;
            report.records.push(ExperimentRecord::upper_bound(
                "avg_to_uniform",
                Some(n),
                t,
                set.spectra.len(),
                pu.upper,
                0.0,
                (-t / (8.0 * nf.ln())).exp() + 2.0 * std::f64::consts::PI / nf,
                s.seed,
            ));
            let un = w1_to_uniform(t, m_atoms.max(crate::free::MIN_UNIFORM_ATOMS))?;
            report.records.push(ExperimentRecord::upper_bound(
                "avg_to_limit_triangle",
                Some(n),
                t,
                set.spectra.len(),
                w.lower,
                0.0,
                pu.upper + un.upper,
                s.seed,
            ));
        }
    }
    let shape = |n: usize, t: f64| t.powf(0.4) * (n as f64).ln() / (n as f64).powf(0.4);
    let est: Vec<f64> = rows.iter().map(|r| r.3.upper).collect();
    let shapes: Vec<f64> = rows.iter().map(|r| shape(r.0, r.1)).collect();
    let c = feasible_constant(&est, &shapes);
    let mut records = Vec::new();
    for &(n, t, m, w, se, wall) in &rows {
        records.push(
            ExperimentRecord::upper_bound(
                "avg_to_limit",
                Some(n),
                t,
                m,
                w.upper,
                se,
                c * shape(n, t),
                s.seed,
            )
            .with_wall_time(wall),
        );
    }
    // Rate between the smallest and largest dimension at each time:
    // exponent -2/5 relaxed to -0.3.
    let mut times: Vec<f64> = rows.iter().map(|r| r.1).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    for t in times {
        let at: Vec<_> = rows.iter().filter(|r| r.1 == t).collect();
        let lo = at.iter().min_by_key(|r| r.0);
        let hi = at.iter().max_by_key(|r| r.0);
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if hi.0 > lo.0 && lo.3.value > 0.0 {
                records.push(ExperimentRecord::upper_bound(
                    "avg_to_limit_ratio",
                    Some(hi.0),
                    t,
                    hi.2,
                    hi.3.value / lo.3.value,
                    0.0,
                    (lo.0 as f64 / hi.0 as f64).powf(0.3),
                    s.seed,
                ));
            }
        }
    }
    records.append(&mut report.records);
    report.records = records;
    Ok(report)
}

/// Exceedance frequency of `W1(mu_i, mu_bar) > mean + x` against
/// `2 exp(-N^2 x^2 / t)`.
///
/// The standard error is binomial at the bound's level, floored at one
/// event. The transport cost is geodesic; a second row per `x` uses
/// `(2/pi) W1` as a stand-in for the chordal distance, which moves the
/// threshold to `mean + (pi/2) x`.
pub fn run_concentration_tail(
    s: &Settings,
    n: usize,
    t: f64,
    x_grid: &[f64],
    replicas: usize,
) -> Result<Report> {
    let clock = s.clock();
    let cfg = s.sim(n, t, replicas);
    let spectra = sample_spectra(&cfg, 0)?;
    let measures: Vec<CircleMeasure> = spectra.iter().map(empirical_measure).collect();
    let pool = pool_measures(&measures)?;
    let d = distances_to_pool(&measures, &pool, CostKind::Geodesic)?;
    let (mean, se) = mean_se(&d);
    let mut report = Report::default();
    report.records.push(ExperimentRecord::descriptive(
        "concentration_mean",
        Some(n),
        t,
        replicas,
        mean,
        se,
        s.seed,
    ));
    let m = replicas as f64;
    let nf = n as f64;
    for &x in x_grid {
        let bound = 2.0 * (-nf * nf * x * x / t).exp();
        let se_b = binomial_se_at(bound, replicas);
        let freq = d.iter().filter(|&&w| w > mean + x).count() as f64 / m;
        report.records.push(ExperimentRecord::upper_bound(
            format!("concentration_x{x}"),
            Some(n),
            t,
            replicas,
            freq,
            se_b,
            bound,
            s.seed,
        ));
        let threshold = mean + std::f64::consts::FRAC_PI_2 * x;
        let freq = d.iter().filter(|&&w| w > threshold).count() as f64 / m;
        report.records.push(ExperimentRecord::upper_bound(
            format!("concentration_chordal_x{x}"),
            Some(n),
            t,
            replicas,
            freq,
            se_b,
            bound,
            s.seed,
        ));
    }
    report.stamp(0, clock.elapsed());
    report.sim_configs.push(cfg);
    Ok(report)
}
