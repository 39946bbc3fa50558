//! Result rows, the CSV table and the JSON run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::simulate::SimConfig;

/// Column header of every results table.
pub const CSV_HEADER: [&str; 10] = [
    "experiment",
    "n",
    "t",
    "replicas",
    "estimate",
    "std_error",
    "paper_bound",
    "bound_satisfied",
    "seed",
    "wall_time_s",
];

/// One row of a results table.
///
/// `paper_bound` is an upper bound on `estimate`; descriptive rows that
/// carry no bound use `f64::INFINITY`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    /// Matrix dimension, `None` for rows that aggregate over dimensions or
    /// involve no simulation.
    pub n: Option<usize>,
    pub t: f64,
    pub replicas: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub paper_bound: f64,
    pub bound_satisfied: bool,
    pub seed: u64,
    /// Seconds spent producing the row; `None` unless timing was requested.
    pub wall_time: Option<f64>,
}

impl ExperimentRecord {
    /// A row whose verdict is `estimate <= paper_bound + 3 std_error`.
    #[allow(clippy::too_many_arguments)]
    pub fn upper_bound(
        experiment: impl Into<String>,
        n: Option<usize>,
        t: f64,
        replicas: usize,
        estimate: f64,
        std_error: f64,
        paper_bound: f64,
        seed: u64,
    ) -> Self {
        let std_error = std_error.max(0.0);
        Self {
            experiment: experiment.into(),
            n,
            t,
            replicas,
            estimate,
            std_error,
            paper_bound,
            bound_satisfied: estimate <= paper_bound + 3.0 * std_error,
            seed,
            wall_time: None,
        }
    }

    /// A row with no bound attached.
    pub fn descriptive(
        experiment: impl Into<String>,
        n: Option<usize>,
        t: f64,
        replicas: usize,
        estimate: f64,
        std_error: f64,
        seed: u64,
    ) -> Self {
        Self::upper_bound(
            experiment,
            n,
            t,
            replicas,
            estimate,
            std_error,
            f64::INFINITY,
            seed,
        )
    }

    pub fn with_wall_time(mut self, seconds: Option<f64>) -> Self {
        self.wall_time = seconds;
        self
    }

    fn csv_fields(&self) -> [String; 10] {
        [
            self.experiment.clone(),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            self.t.to_string(),
            self.replicas.to_string(),
            self.estimate.to_string(),
            self.std_error.to_string(),
            self.paper_bound.to_string(),
            self.bound_satisfied.to_string(),
            self.seed.to_string(),
            self.wall_time.map(|w| w.to_string()).unwrap_or_default(),
        ]
    }

    /// Single human-readable line.
    pub fn summary_line(&self) -> String {
        let n = self.n.map(|n| format!(" N={n}")).unwrap_or_default();
        let verdict = if self.bound_satisfied {
            "ok"
        } else {
            "VIOLATED"
        };
        if self.paper_bound.is_infinite() {
            format!(
                "{}{n} t={} estimate={:.6e} se={:.2e}",
                self.experiment, self.t, self.estimate, self.std_error
            )
        } else {
            format!(
                "{}{n} t={} estimate={:.6e} se={:.2e} bound={:.6e} [{verdict}]",
                self.experiment, self.t, self.estimate, self.std_error, self.paper_bound
            )
        }
    }
}

/// Serializes records as CSV text. Floats use Rust's shortest round-trip
/// formatting, so equal values always produce equal bytes.
pub fn records_to_csv(records: &[ExperimentRecord]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    w.flush()?;
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

pub fn write_csv(path: &Path, records: &[ExperimentRecord]) -> Result<()> {
    let bytes = records_to_csv(records)?;
    fs::File::create(path)?.write_all(&bytes)?;
    Ok(())
}

/// Reads back a table written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.records() {
        let row = row?;
        let f = |i: usize| row.get(i).unwrap_or("");
        let num = |i: usize| -> Result<f64> {
            f(i).parse::<f64>()
                .map_err(|e| crate::Error::InvalidInput(format!("column {i}: {e}")))
        };
        fn opt(s: &str) -> Option<&str> {
            if s.is_empty() {
                None
            } else {
                Some(s)
            }
        }
        out.push(ExperimentRecord {
            experiment: f(0).to_string(),
            n: opt(f(1))
                .map(|s| s.parse::<usize>())
                .transpose()
                .map_err(|e| crate::Error::InvalidInput(format!("n: {e}")))?,
            t: num(2)?,
            replicas: f(3)
                .parse()
                .map_err(|e| crate::Error::InvalidInput(format!("replicas: {e}")))?,
            estimate: num(4)?,
            std_error: num(5)?,
            paper_bound: num(6)?,
            bound_satisfied: f(7) == "true",
            seed: f(8)
                .parse()
                .map_err(|e| crate::Error::InvalidInput(format!("seed: {e}")))?,
            wall_time: opt(f(9)).map(|_| num(9)).transpose()?,
        });
    }
    Ok(out)
}

/// Everything needed to rerun an invocation exactly.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub code_version: String,
    /// Every resolved setting, as given on the command line or in the
    /// config file, after defaults.
    pub settings: BTreeMap<String, String>,
    pub sim_configs: Vec<SimConfig>,
    pub grids: BTreeMap<String, Vec<f64>>,
    pub cost_kind: Option<String>,
    pub k_max: Option<usize>,
    pub m_atoms: Option<usize>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            ..Self::default()
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut f = fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        f.write_all(b"\n")?;
        Ok(())
    }
}
