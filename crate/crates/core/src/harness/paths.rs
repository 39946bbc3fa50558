//! Whole-path statistics: the supremum over time of `W1(mu_t, nu_t)` and
//! the small-time excursion of `U_t` away from the identity.

use std::collections::BTreeMap;

use super::fit::feasible_constant;
use super::record::ExperimentRecord;
use super::stats::{binomial_se_at, median, median_se};
use super::{par_replicas, Report, Settings};
use crate::error::{Error, Result};
use crate::free::model::MIN_MODEL_TIME;
use crate::free::FreeMeasureModel;
use crate::simulate::sample_path;
use crate::spectral::{eigenangles, empirical_measure, CircleMeasure};
use crate::transport::{quantile_discretize, w1_discrete, CostKind};

/// `{0} U {i T / P : i = 1..P}`.
pub fn path_grid(t_final: f64, points: usize) -> Vec<f64> {
    (0..=points)
        .map(|i| t_final * i as f64 / points as f64)
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct PathSupReport {
    pub report: Report,
    /// Per dimension, each path's `sup_{t >= 0.5} W1(mu_t, nu_t)`.
    pub sups: Vec<(usize, Vec<f64>)>,
    /// Per dimension, each path's sup over `0 < t < 0.5` against `nu_{0.5}`.
    pub early_sups: Vec<(usize, Vec<f64>)>,
}

impl PathSupReport {
    pub fn median_sup(&self, n: usize) -> Option<f64> {
        self.sups.iter().find(|s| s.0 == n).map(|s| median(&s.1))
    }
}

/// Supremum over a time grid of the geodesic `W1(mu_t, nu_t)` along
/// independent paths.
///
/// `nu_t` is only modelled from `t = 0.5`; earlier grid times are compared
/// against `nu_{0.5}` and reported separately.
pub fn run_path_sup(
    s: &Settings,
    n_grid: &[usize],
    t_final: f64,
    grid_points: usize,
    paths: usize,
    m_atoms: usize,
) -> Result<PathSupReport> {
    if grid_points == 0 {
        return Err(Error::InvalidGrid("need at least one grid point".into()));
    }
    let grid = path_grid(t_final, grid_points);
    // One discretized target per grid time, shared by every path.
    let targets: Vec<(f64, CircleMeasure)> = {
        let times: Vec<f64> = grid
            .iter()
            .map(|&t| t.max(MIN_MODEL_TIME).to_bits())
            .collect::<std::collections::BTreeSet<u64>>()
            .into_iter()
            .map(f64::from_bits)
            .collect();
        par_replicas(times.len(), 0, |i| {
            let t = times[i as usize];
            let model = FreeMeasureModel::new(t)?;
            Ok((t, quantile_discretize(&model, m_atoms)?.measure))
        })?
    };
    let target_of: BTreeMap<u64, &CircleMeasure> =
        targets.iter().map(|(t, m)| (t.to_bits(), m)).collect();
    let targets_on_grid: Vec<&CircleMeasure> = grid
        .iter()
        .map(|&t| target_of[&t.max(MIN_MODEL_TIME).to_bits()])
        .collect();

    let mut out = PathSupReport::default();
    let mut rows = Vec::new();
    for &n in n_grid {
        let clock = s.clock();
        let cfg = s.sim(n, t_final, paths);
        cfg.validate()?;
        let per_path = par_replicas(paths, 0, |id| {
            let path = sample_path(&cfg, &grid, id)?;
            let (mut main, mut early) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
            for ((u, &t), target) in path.states.iter().zip(&grid).zip(&targets_on_grid) {
                let mu = empirical_measure(&eigenangles(u)?);
                let w = w1_discrete(&mu, target, CostKind::Geodesic)?.value;
                // t = 0 is the identity on every path and carries no information.
                if t >= MIN_MODEL_TIME {
                    main = main.max(w);
                } else if t > 0.0 {
                    early = early.max(w);
                }
            }
            Ok((main, early))
        })?;
        let main: Vec<f64> = per_path
            .iter()
            .map(|p| p.0)
            .filter(|x| x.is_finite())
            .collect();
        let early: Vec<f64> = per_path
            .iter()
            .map(|p| p.1)
            .filter(|x| x.is_finite())
            .collect();
        rows.push((n, main.clone(), early.clone(), clock.elapsed()));
        out.sups.push((n, main));
        out.early_sups.push((n, early));
        out.report.sim_configs.push(cfg);
    }

    let shape = |n: usize| t_final.powf(0.4) * (n as f64).ln() / (n as f64).powf(0.4);
    let medians: Vec<f64> = rows.iter().map(|r| median(&r.1)).collect();
    let shapes: Vec<f64> = rows.iter().map(|r| shape(r.0)).collect();
    let c = feasible_constant(&medians, &shapes);
    for (i, (n, main, early, wall)) in rows.iter().enumerate() {
        let start = out.report.records.len();
        if !main.is_empty() {
            out.report.records.push(ExperimentRecord::upper_bound(
                "path_sup_median",
                Some(*n),
                t_final,
                paths,
                medians[i],
                median_se(main),
                c * shapes[i],
                s.seed,
            ));
            out.report.records.push(ExperimentRecord::descriptive(
                "path_sup_max",
                Some(*n),
                t_final,
                paths,
                main.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                0.0,
                s.seed,
            ));
        }
        if !early.is_empty() {
            out.report.records.push(ExperimentRecord::descriptive(
                "path_sup_early_median",
                Some(*n),
                t_final.min(MIN_MODEL_TIME),
                paths,
                median(early),
                median_se(early),
                s.seed,
            ));
        }
        out.report.stamp(start, *wall);
    }
    let lo = rows.iter().filter(|r| !r.1.is_empty()).min_by_key(|r| r.0);
    let hi = rows.iter().filter(|r| !r.1.is_empty()).max_by_key(|r| r.0);
    if let (Some(lo), Some(hi)) = (lo, hi) {
        if hi.0 > lo.0 {
            out.report.records.push(ExperimentRecord::upper_bound(
                "path_sup_ordering",
                Some(hi.0),
                t_final,
                paths,
                median(&hi.1) / median(&lo.1),
                0.0,
                1.0,
                s.seed,
            ));
        }
    }
    Ok(out)
}

/// How the slack `s` in the event `sup d_g >= r + 2s` is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailOffset {
    Absolute(f64),
    /// `s = fraction * r`.
    FractionOfR(f64),
}

impl TailOffset {
    pub fn resolve(self, r: f64) -> f64 {
        match self {
            Self::Absolute(s) => s,
            Self::FractionOfR(f) => f * r,
        }
    }
}

/// `ln(16 (1 + r/s)^{N^2} e^{-r^2 / (2 delta)})`.
pub fn ln_bm_tail_bound(n: usize, delta: f64, r: f64, s: f64) -> f64 {
    let n2 = (n * n) as f64;
    16f64.ln() + n2 * (r / s).ln_1p() - r * r / (2.0 * delta)
}

/// Empirical tail of `sup_{t < delta} d_g(U_t, I)` over a grid against the
/// exponential bound. A grid only under-estimates the supremum, so the
/// comparison errs on the safe side. Rows whose bound is at least 1 are
/// named `bm_tail_vacuous_*`.
///
/// Distances use the exact metric, under which `-I` is at distance `N pi`;
/// the bound is applied as stated, without renormalizing its constants.
pub fn run_bm_tail(
    s: &Settings,
    n: usize,
    delta_grid: &[f64],
    r_grid: &[f64],
    offset: TailOffset,
    paths: usize,
    grid_points: usize,
) -> Result<Report> {
    let mut report = Report::default();
    let mut medians = Vec::new();
    for &delta in delta_grid {
        if !(delta > 0.0) {
            return Err(Error::Domain {
                value: delta,
                domain: "delta > 0",
            });
        }
        let clock = s.clock();
        let start = report.records.len();
        let cfg = s.sim(n, delta, paths);
        cfg.validate()?;
        let grid = path_grid(delta, grid_points.max(1));
        let sups = par_replicas(paths, 0, |id| {
            let path = sample_path(&cfg, &grid, id)?;
            path.states.iter().try_fold(0.0f64, |m, u| {
                Ok(m.max(crate::spectral::geodesic_distance_identity(u)?))
            })
        })?;
        let med = median(&sups);
        medians.push((delta, med));
        report.records.push(ExperimentRecord::descriptive(
            "bm_tail_median",
            Some(n),
            delta,
            paths,
            med,
            median_se(&sups),
            s.seed,
        ));
        let mut any_informative = false;
        for &r in r_grid {
            let sl = offset.resolve(r);
            if !(sl > 0.0) || !(r > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "need r > 0 and s > 0, got r={r} s={sl}"
                )));
            }
            let ln_b = ln_bm_tail_bound(n, delta, r, sl);
            let bound = ln_b.exp();
            let vacuous = ln_b >= 0.0;
            any_informative |= !vacuous;
            let level = r + 2.0 * sl;
            let freq = sups.iter().filter(|&&x| x >= level).count() as f64 / paths as f64;
            let name = if vacuous {
                format!("bm_tail_vacuous_r{r}")
            } else {
                format!("bm_tail_r{r}")
            };
            report.records.push(ExperimentRecord::upper_bound(
                name,
                Some(n),
                delta,
                paths,
                freq,
                binomial_se_at(bound, paths),
                bound,
                s.seed,
            ));
        }
        if !any_informative {
            report.warnings.push(format!(
                "every tail bound is vacuous for N={n}, delta={delta}; choose larger r or smaller delta"
            ));
        }
        report.stamp(start, clock.elapsed());
        report.sim_configs.push(cfg);
    }
    if let (Some(first), Some(last)) = (medians.first(), medians.last()) {
        if last.0 != first.0 && first.1 > 0.0 {
            // Diffusive scaling predicts sqrt(delta ratio).
            report.records.push(ExperimentRecord::descriptive(
                "bm_tail_median_ratio",
                Some(n),
                last.0,
                paths,
                last.1 / first.1,
                0.0,
                s.seed,
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        assert_eq!(path_grid(4.0, 4), vec![0.0, 1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn tail_bound_value() {
        // 16 * 3^16 * e^{-200}
        let ln_b = ln_bm_tail_bound(4, 0.01, 2.0, 1.0);
        let expect = 16f64.ln() + 16.0 * 3f64.ln() - 200.0;
        assert!((ln_b - expect).abs() < 1e-12);
        assert!(ln_b < (1e-78f64).ln());
    }

    #[test]
    fn vacuous_rows_flagged() {
        let r = run_bm_tail(
            &Settings::default(),
            4,
            &[0.01],
            &[0.1, 2.0],
            TailOffset::FractionOfR(0.5),
            20,
            10,
        )
        .unwrap();
        assert!(r.select("bm_tail_vacuous_r0.1").next().is_some());
        let informative = r.select("bm_tail_r2").next().unwrap();
        assert_eq!(informative.estimate, 0.0);
        assert!(r.warnings.is_empty());
        let r = run_bm_tail(
            &Settings::default(),
            4,
            &[1.0],
            &[0.1],
            TailOffset::Absolute(0.05),
            5,
            5,
        )
        .unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert!(r.all_satisfied());
    }

    #[test]
    fn early_window_only() {
        let r = run_path_sup(&Settings::default(), &[4], 0.25, 5, 3, 128).unwrap();
        assert!(r.sups[0].1.is_empty());
        assert_eq!(r.early_sups[0].1.len(), 3);
    }

    #[test]
    fn single_point_at_floor() {
        // grid {0, 0.5}: the main sup is the single-time distance at 0.5
        let r = run_path_sup(&Settings::default(), &[4], 0.5, 1, 4, 128).unwrap();
        assert_eq!(r.sups[0].1.len(), 4);
        assert!(r.sups[0].1.iter().all(|&x| x > 0.0 && x < 1.0));
    }
}
