//! The `ubmlab` command line: parse flags and an optional flat TOML config,
//! run one experiment family, write `<out>/<command>.csv` and
//! `<out>/<command>.json`, print one line per record.
//!
//! Exit codes: 0 when every bound holds, 1 when any bound is violated,
//! 2 on usage errors, 3 on runtime errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::harness::{
    self, run_avg_to_limit, run_biane_decay, run_bm_tail, run_concentration_tail,
    run_coupling_check, run_exact_mean, run_free_continuity, run_moment_convergence, run_path_sup,
    run_pool_bias, run_qk_bound, run_rate_avg_to_avg, Report, RunManifest, Settings, TailOffset,
};
use crate::simulate::Integrator;
use crate::transport::CostKind;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IntegratorArg {
    Euler,
    Geodesic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CostArg {
    Geodesic,
    Chordal,
}

/// Flags shared by every subcommand. Each one may also be given as a key
/// of the same name in the `--config` file; flags win.
#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    /// Matrix dimension(s), comma separated.
    #[arg(long)]
    pub n: Option<String>,
    /// Time(s), comma separated; the horizon T for `paths`.
    #[arg(long)]
    pub t: Option<String>,
    /// Time grid; takes precedence over --t.
    #[arg(long = "t-grid")]
    pub t_grid: Option<String>,
    /// Integrator steps per simulation (default: max(100, ceil(100 t))).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Replicas (paths for `paths` and `tail`).
    #[arg(long)]
    pub replicas: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub integrator: Option<IntegratorArg>,
    /// Transport cost for replica-to-pool distances.
    #[arg(long, value_enum)]
    pub cost: Option<CostArg>,
    #[arg(long = "k-max")]
    pub k_max: Option<usize>,
    /// Atoms in quantile discretizations of continuous targets.
    #[arg(long)]
    pub atoms: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat TOML file whose keys mirror these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Excess levels x for `concentration`.
    #[arg(long = "x-grid")]
    pub x_grid: Option<String>,
    /// Path grid points for `paths` and `tail`.
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Horizons delta for `tail`.
    #[arg(long)]
    pub delta: Option<String>,
    /// Radii r for `tail`.
    #[arg(long = "r-grid")]
    pub r_grid: Option<String>,
    /// Absolute slack s for `tail`; overrides --s-fraction.
    #[arg(long)]
    pub s: Option<f64>,
    /// Slack s as a fraction of r for `tail` (default 0.5).
    #[arg(long = "s-fraction")]
    pub s_fraction: Option<f64>,
    /// Fill the wall_time_s column (makes the CSV run-dependent).
    #[arg(long)]
    pub timing: bool,
    /// `rates`: also measure the effect of doubling the pool.
    #[arg(long = "pool-bias")]
    pub pool_bias: bool,
    /// `simulate`: also compare with the circle x SU(N) construction.
    #[arg(long)]
    pub coupling: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Exact first moment (and optionally the coupling check).
    Simulate(Flags),
    /// Replica-to-pool distances, their N-slope, and the pool against nu_t.
    Rates(Flags),
    /// Trace moments against their large-N limits.
    Moments(Flags),
    /// Tail of replica-to-pool distances.
    Concentration(Flags),
    /// Supremum over a path of the distance to nu_t.
    Paths(Flags),
    /// nu_t against uniform, continuity in t, moment polynomial bound.
    Biane(Flags),
    /// Small-time excursion of U_t from the identity.
    Tail(Flags),
}

#[derive(Debug, Parser)]
#[command(
    name = "ubmlab",
    version,
    about = "Spectral measure of unitary Brownian motion: experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcommandKind {
    Simulate,
    Rates,
    Moments,
    Concentration,
    Paths,
    Biane,
    Tail,
}

impl SubcommandKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Simulate => "simulate",
            Self::Rates => "rates",
            Self::Moments => "moments",
            Self::Concentration => "concentration",
            Self::Paths => "paths",
            Self::Biane => "biane",
            Self::Tail => "tail",
        }
    }

    /// Keys that must be present after merging the config file and flags.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            Self::Simulate => &["n", "t", "replicas"],
            Self::Rates => &["n", "t", "replicas"],
            Self::Moments => &["n", "t", "k-max", "replicas"],
            Self::Concentration => &["n", "t", "replicas"],
            Self::Paths => &["n", "t", "replicas", "grid-points"],
            Self::Biane => &["t"],
            Self::Tail => &["n", "delta", "r-grid", "replicas"],
        }
    }
}

/// Keys accepted in a config file (and as flags).
pub const KNOWN_KEYS: &[&str] = &[
    "n",
    "t",
    "t-grid",
    "steps",
    "replicas",
    "seed",
    "integrator",
    "cost",
    "k-max",
    "atoms",
    "out",
    "x-grid",
    "grid-points",
    "delta",
    "r-grid",
    "s",
    "s-fraction",
    "timing",
    "pool-bias",
    "coupling",
];

/// A parsed command line.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub subcommand: SubcommandKind,
    pub config_path: Option<PathBuf>,
    /// Values given as flags, keyed by flag name without dashes.
    pub overrides: BTreeMap<String, String>,
    pub out_dir: PathBuf,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::Runtime(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Runtime(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

fn flag_map(f: &Flags) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            m.insert(k.to_string(), v);
        }
    };
    put("n", f.n.clone());
    put("t", f.t.clone());
    put("t-grid", f.t_grid.clone());
    put("steps", f.steps.map(|v| v.to_string()));
    put("replicas", f.replicas.map(|v| v.to_string()));
    put("seed", f.seed.map(|v| v.to_string()));
    put(
        "integrator",
        f.integrator.map(|v| match v {
            IntegratorArg::Euler => "euler".into(),
            IntegratorArg::Geodesic => "geodesic".into(),
        }),
    );
    put(
        "cost",
        f.cost.map(|v| match v {
            CostArg::Geodesic => "geodesic".into(),
            CostArg::Chordal => "chordal".into(),
        }),
    );
    put("k-max", f.k_max.map(|v| v.to_string()));
    put("out", f.out.as_ref().map(|p| p.display().to_string()));
    put("atoms", f.atoms.map(|v| v.to_string()));
    put("x-grid", f.x_grid.clone());
    put("grid-points", f.grid_points.map(|v| v.to_string()));
    put("delta", f.delta.clone());
    put("r-grid", f.r_grid.clone());
    put("s", f.s.map(|v| v.to_string()));
    put("s-fraction", f.s_fraction.map(|v| v.to_string()));
    for (k, on) in [
        ("timing", f.timing),
        ("pool-bias", f.pool_bias),
        ("coupling", f.coupling),
    ] {
        if on {
            m.insert(k.to_string(), "true".into());
        }
    }
    m
}

/// Parses `argv` (program name first). Errors carry clap's usage text and
/// exit code 2.
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (kind, flags) = match cli.command {
        Command::Simulate(f) => (SubcommandKind::Simulate, f),
        Command::Rates(f) => (SubcommandKind::Rates, f),
        Command::Moments(f) => (SubcommandKind::Moments, f),
        Command::Concentration(f) => (SubcommandKind::Concentration, f),
        Command::Paths(f) => (SubcommandKind::Paths, f),
        Command::Biane(f) => (SubcommandKind::Biane, f),
        Command::Tail(f) => (SubcommandKind::Tail, f),
    };
    Ok(CliConfig {
        subcommand: kind,
        config_path: flags.config.clone(),
        overrides: flag_map(&flags),
        out_dir: flags
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from("results")),
    })
}

fn toml_to_string(v: &toml::Value) -> Result<String, CliError> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(x) => x.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(a) => a
            .iter()
            .map(toml_to_string)
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
        other => return Err(CliError::Usage(format!("unsupported config value {other}"))),
    })
}

/// Reads a flat config file into key/value strings.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (k, v) in &table {
        let key = k.replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("unknown config key {k:?}")));
        }
        out.insert(key, toml_to_string(v)?);
    }
    Ok(out)
}

/// Merged settings with typed accessors.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub kind: SubcommandKind,
    pub values: BTreeMap<String, String>,
    pub out_dir: PathBuf,
}

impl Resolved {
    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parse_one<T: std::str::FromStr>(&self, key: &str, s: &str) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        s.trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("--{key}: cannot parse {s:?}: {e}")))
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        self.raw(key).map(|s| self.parse_one(key, s)).transpose()
    }

    pub fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        self.get(key)?
            .ok_or_else(|| CliError::Usage(format!("missing --{key}")))
    }

    pub fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, CliError>
    where
        T::Err: fmt::Display,
    {
        self.raw(key)
            .map(|s| {
                s.split(',')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| self.parse_one(key, p))
                    .collect::<Result<Vec<T>, _>>()
            })
            .transpose()
    }

    pub fn require_list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        match self.list(key)? {
            Some(v) if !v.is_empty() => Ok(v),
            _ => Err(CliError::Usage(format!("missing --{key}"))),
        }
    }

    /// `t-grid` if present, otherwise `t`.
    pub fn times(&self) -> Result<Vec<f64>, CliError> {
        match self.list::<f64>("t-grid")? {
            Some(v) if !v.is_empty() => Ok(v),
            _ => self.require_list("t"),
        }
    }

    pub fn flag(&self, key: &str) -> Result<bool, CliError> {
        Ok(self.get::<bool>(key)?.unwrap_or(false))
    }

    pub fn settings(&self) -> Result<Settings, CliError> {
        let integrator = match self.raw("integrator") {
            None => Integrator::default(),
            Some(s) => s
                .parse()
                .map_err(|e: Error| CliError::Usage(e.to_string()))?,
        };
        let cost = match self.raw("cost") {
            None => CostKind::default(),
            Some(s) => s
                .parse()
                .map_err(|e: Error| CliError::Usage(e.to_string()))?,
        };
        Ok(Settings {
            seed: self.get("seed")?.unwrap_or(0),
            integrator,
            steps: self.get("steps")?,
            cost,
            timing: self.flag("timing")?,
        })
    }
}

/// Merges the config file under the flags and checks required keys.
pub fn resolve(cfg: &CliConfig) -> Result<Resolved, CliError> {
    let mut values = match &cfg.config_path {
        Some(p) => read_config(p)?,
        None => BTreeMap::new(),
    };
    let file_out = values.remove("out");
    values.extend(cfg.overrides.clone());
    let kind = cfg.subcommand;
    let has_times = values.contains_key("t") || values.contains_key("t-grid");
    let missing: Vec<&str> = kind
        .required()
        .iter()
        .copied()
        .filter(|k| !(values.contains_key(*k) || (*k == "t" && has_times)))
        .collect();
    if !missing.is_empty() {
        let list: Vec<String> = kind.required().iter().map(|k| format!("--{k}")).collect();
        return Err(CliError::Usage(format!(
            "`{}` is missing {}; required: {}",
            kind.name(),
            missing
                .iter()
                .map(|k| format!("--{k}"))
                .collect::<Vec<_>>()
                .join(", "),
            list.join(" ")
        )));
    }
    // An explicit --out flag wins over the file; otherwise the file's value.
    let out_dir = match file_out {
        Some(path) if !cfg.overrides.contains_key("out") => PathBuf::from(path),
        _ => cfg.out_dir.clone(),
    };
    Ok(Resolved {
        kind,
        values,
        out_dir,
    })
}

/// Records and manifest of one invocation, before anything is written.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub manifest: RunManifest,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.all_satisfied() {
            EXIT_OK
        } else {
            EXIT_VIOLATED
        }
    }
}

fn f64s(v: &[usize]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

/// Runs the experiments selected by `r` without touching the filesystem.
pub fn execute(r: &Resolved) -> Result<Outcome, CliError> {
    let s = r.settings()?;
    let mut m = RunManifest::new(r.kind.name());
    m.settings = r.values.clone();
    m.settings
        .insert("out".into(), r.out_dir.display().to_string());
    let label = |v: serde_json::Value| v.as_str().unwrap_or_default().to_string();
    let cost = label(serde_json::to_value(s.cost).map_err(Error::from)?);
    let integrator = label(serde_json::to_value(s.integrator).map_err(Error::from)?);
    m.settings.insert("seed".into(), s.seed.to_string());
    m.settings.insert("integrator".into(), integrator);
    m.settings.insert("cost".into(), cost.clone());
    m.settings
        .entry("steps".into())
        .or_insert_with(|| "default".into());
    m.cost_kind = Some(cost);
    let mut report = Report::default();
    match r.kind {
        SubcommandKind::Simulate => {
            let ns: Vec<usize> = r.require_list("n")?;
            let ts = r.times()?;
            let reps: usize = r.require("replicas")?;
            m.grids.insert("n".into(), f64s(&ns));
            m.grids.insert("t".into(), ts.clone());
            report.extend(run_exact_mean(&s, &ns, &ts, reps)?);
            if r.flag("coupling")? {
                let k_max = r.get("k-max")?.unwrap_or(3);
                m.k_max = Some(k_max);
                for &n in &ns {
                    report.extend(run_coupling_check(&s, n, &ts, k_max, reps)?);
                }
            }
        }
        SubcommandKind::Rates => {
            let ns: Vec<usize> = r.require_list("n")?;
            let ts = r.times()?;
            let reps: usize = r.require("replicas")?;
            let atoms = r.get("atoms")?.unwrap_or(1024);
            m.grids.insert("n".into(), f64s(&ns));
            m.grids.insert("t".into(), ts.clone());
            m.m_atoms = Some(atoms);
            let rates = run_rate_avg_to_avg(&s, &ns, &ts, reps)?;
            let limit = run_avg_to_limit(&s, &rates.samples, atoms)?;
            report.extend(rates.report);
            report.extend(limit);
            if r.flag("pool-bias")? {
                for &t in &ts {
                    for &n in &ns {
                        report.extend(run_pool_bias(&s, n, t, reps)?);
                    }
                }
            }
        }
        SubcommandKind::Moments => {
            let ns: Vec<usize> = r.require_list("n")?;
            let ts = r.times()?;
            let reps: usize = r.require("replicas")?;
            let k_max: usize = r.require("k-max")?;
            m.grids.insert("n".into(), f64s(&ns));
            m.grids.insert("t".into(), ts.clone());
            m.k_max = Some(k_max);
            report.extend(run_moment_convergence(&s, &ns, &ts, k_max, reps)?);
        }
        SubcommandKind::Concentration => {
            let ns: Vec<usize> = r.require_list("n")?;
            let ts = r.times()?;
            let reps: usize = r.require("replicas")?;
            let xs = r.list("x-grid")?.unwrap_or_else(|| vec![0.05, 0.1, 0.2]);
            m.grids.insert("n".into(), f64s(&ns));
            m.grids.insert("t".into(), ts.clone());
            m.grids.insert("x".into(), xs.clone());
            for &n in &ns {
                for &t in &ts {
                    report.extend(run_concentration_tail(&s, n, t, &xs, reps)?);
                }
            }
        }
        SubcommandKind::Paths => {
            let ns: Vec<usize> = r.require_list("n")?;
            let horizon: f64 = r.require("t")?;
            let reps: usize = r.require("replicas")?;
            let points: usize = r.require("grid-points")?;
            let atoms = r.get("atoms")?.unwrap_or(1024);
            m.grids.insert("n".into(), f64s(&ns));
            m.grids
                .insert("t".into(), harness::path_grid(horizon, points));
            m.m_atoms = Some(atoms);
            report.extend(run_path_sup(&s, &ns, horizon, points, reps, atoms)?.report);
        }
        SubcommandKind::Biane => {
            let ts = r.times()?;
            let atoms = r.get("atoms")?.unwrap_or(4096);
            m.grids.insert("t".into(), ts.clone());
            m.m_atoms = Some(atoms);
            report.extend(run_biane_decay(&s, &ts, atoms)?);
            let supported: Vec<f64> = ts.iter().copied().filter(|&t| t >= 0.5).collect();
            if supported.len() >= 2 {
                report.extend(run_free_continuity(&s, &supported, atoms)?);
            }
            if let Some(k_max) = r.get::<usize>("k-max")? {
                m.k_max = Some(k_max);
                report.extend(run_qk_bound(&s, k_max, &ts)?);
            }
        }
        SubcommandKind::Tail => {
            let n: usize = r.require("n")?;
            let deltas: Vec<f64> = r.require_list("delta")?;
            let rs: Vec<f64> = r.require_list("r-grid")?;
            let reps: usize = r.require("replicas")?;
            let points = r.get("grid-points")?.unwrap_or(100);
            let offset = match r.get::<f64>("s")? {
                Some(v) => TailOffset::Absolute(v),
                None => TailOffset::FractionOfR(r.get("s-fraction")?.unwrap_or(0.5)),
            };
            m.grids.insert("delta".into(), deltas.clone());
            m.grids.insert("r".into(), rs.clone());
            report.extend(run_bm_tail(&s, n, &deltas, &rs, offset, reps, points)?);
        }
    }
    m.sim_configs = report.sim_configs.clone();
    Ok(Outcome {
        report,
        manifest: m,
    })
}

/// Runs a parsed command line: writes the CSV and JSON sidecar, prints a
/// line per record and returns the exit code.
pub fn run(cfg: &CliConfig) -> i32 {
    match run_inner(cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn run_inner(cfg: &CliConfig) -> Result<i32, CliError> {
    let resolved = resolve(cfg)?;
    let outcome = execute(&resolved)?;
    std::fs::create_dir_all(&resolved.out_dir).map_err(Error::from)?;
    let name = resolved.kind.name();
    harness::write_csv(
        &resolved.out_dir.join(format!("{name}.csv")),
        &outcome.report.records,
    )?;
    outcome
        .manifest
        .write(&resolved.out_dir.join(format!("{name}.json")))?;
    for w in &outcome.report.warnings {
        eprintln!("warning: {w}");
    }
    for rec in &outcome.report.records {
        println!("{}", rec.summary_line());
    }
    Ok(outcome.exit_code())
}

/// Full entry point: parse, run, and map every failure to its exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<CliConfig, clap::Error> {
        parse_args(std::iter::once("ubmlab").chain(args.iter().copied()))
    }

    #[test]
    fn rates_example_parses() {
        let c = parse(&[
            "rates",
            "--n",
            "8,16,32",
            "--t",
            "1",
            "--replicas",
            "500",
            "--seed",
            "7",
            "--out",
            "./r",
        ])
        .unwrap();
        assert_eq!(c.subcommand, SubcommandKind::Rates);
        assert_eq!(c.out_dir, PathBuf::from("./r"));
        assert_eq!(c.overrides["n"], "8,16,32");
        let r = resolve(&c).unwrap();
        assert_eq!(r.require_list::<usize>("n").unwrap(), vec![8, 16, 32]);
        assert_eq!(r.settings().unwrap().seed, 7);
    }

    #[test]
    fn usage_errors_exit_two() {
        for args in [
            &["simulate", "--integrator", "rk4"][..],
            &[],
            &["rates", "--bogus", "1"],
        ] {
            let e = parse(args).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn missing_required_lists_all() {
        let c = parse(&["moments", "--n", "16"]).unwrap();
        match resolve(&c) {
            Err(CliError::Usage(m)) => {
                assert!(
                    m.contains("--t") && m.contains("--k-max") && m.contains("--replicas"),
                    "{m}"
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn config_file_under_flags() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.toml");
        std::fs::write(
            &p,
            "n = [8, 16]\nt = 1.0\nreplicas = 10\nseed = 3\nk_max = 2\n",
        )
        .unwrap();
        let c = parse(&["moments", "--config", p.to_str().unwrap(), "--seed", "9"]).unwrap();
        let r = resolve(&c).unwrap();
        assert_eq!(r.require_list::<usize>("n").unwrap(), vec![8, 16]);
        assert_eq!(r.settings().unwrap().seed, 9);
        std::fs::write(&p, "mystery = 1\n").unwrap();
        let c = parse(&["moments", "--config", p.to_str().unwrap()]).unwrap();
        assert!(matches!(resolve(&c), Err(CliError::Usage(_))));
    }

    #[test]
    fn bad_list_value_is_usage_error() {
        let c = parse(&["simulate", "--n", "8,x", "--t", "1", "--replicas", "2"]).unwrap();
        let r = resolve(&c).unwrap();
        let e = execute(&r).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn runtime_error_exit_three() {
        // too few atoms for a continuous target
        let c = parse(&["biane", "--t", "8", "--atoms", "16"]).unwrap();
        let r = resolve(&c).unwrap();
        assert_eq!(execute(&r).unwrap_err().exit_code(), EXIT_RUNTIME);
    }
}
