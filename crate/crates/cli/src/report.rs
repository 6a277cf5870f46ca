//! Report assembly and emission.
//!
//! Every subcommand produces one [`Report`]: a single JSON document with
//! a version field, the resolved configuration, a table of rows, the
//! verdicts and obstruction classes that were computed, and a list of
//! consistency flags pairing independent computations of the same claim.
//! Tables are additionally written as a sidecar CSV next to the JSON
//! file. Reports carry deterministic work counters instead of wall-clock
//! times, so two runs with the same configuration and seed emit
//! byte-identical documents.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use universal_subspaces::obstruction::ObstructionReport;
use universal_subspaces::{Verdict, VerdictKind};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "USUB_OUT_DIR";

/// One independently checkable claim and whether the computations that
/// touched it agree.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyFlag {
    pub claim: String,
    pub agrees: bool,
}

/// Deterministic effort counters (reproducible stand-in for timing).
#[derive(Debug, Clone, Default, Serialize)]
pub struct WorkCounters {
    /// Orbit searches launched (one per verdict sample or witness check).
    pub searches: u64,
    /// Objective evaluations summed over all searches.
    pub objective_evaluations: u64,
    /// Obstruction classes computed exactly.
    pub obstruction_classes: u64,
    /// Constructive certificates produced.
    pub certificates: u64,
}

/// A labeled universality verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictEntry {
    pub label: String,
    pub verdict: Verdict,
}

/// A labeled obstruction class.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionEntry {
    pub label: String,
    pub report: ObstructionReport,
}

/// A table row that knows its CSV shape.
pub trait TableRow: Serialize {
    const HEADERS: &'static [&'static str];
    fn record(&self) -> Vec<String>;
}

/// The single document a subcommand emits.
#[derive(Debug, Serialize)]
pub struct Report<R: TableRow> {
    pub schema_version: u32,
    pub command: String,
    /// Echo of the fully resolved configuration, seed included.
    pub config: serde_json::Value,
    pub rows: Vec<R>,
    pub verdicts: Vec<VerdictEntry>,
    pub obstructions: Vec<ObstructionEntry>,
    pub consistency_flags: Vec<ConsistencyFlag>,
    /// True when some search hit its iteration budget without either
    /// reaching the subspace or converging to a stationary point.
    pub budget_exhausted: bool,
    pub work: WorkCounters,
}

/// Where and how to emit the report.
#[derive(Debug, Clone)]
pub struct OutputOptions {
    /// Explicit report path; when absent, the `USUB_OUT_DIR` directory
    /// (if set) receives `<command>.json`.
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Value of the output-directory environment variable at startup.
    pub out_dir_env: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl<R: TableRow> Report<R> {
    pub fn new(command: &str, config: serde_json::Value) -> Report<R> {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            rows: Vec::new(),
            verdicts: Vec::new(),
            obstructions: Vec::new(),
            consistency_flags: Vec::new(),
            budget_exhausted: false,
            work: WorkCounters::default(),
        }
    }

    pub fn flag(&mut self, claim: impl Into<String>, agrees: bool) {
        self.consistency_flags.push(ConsistencyFlag {
            claim: claim.into(),
            agrees,
        });
    }

    pub fn add_verdict(&mut self, label: impl Into<String>, verdict: Verdict) {
        self.work.searches += verdict.samples as u64;
        self.work.objective_evaluations += verdict.objective_evaluations;
        self.verdicts.push(VerdictEntry {
            label: label.into(),
            verdict,
        });
    }

    pub fn add_obstruction(&mut self, label: impl Into<String>, report: ObstructionReport) {
        self.work.obstruction_classes += 1;
        self.obstructions.push(ObstructionEntry {
            label: label.into(),
            report,
        });
    }

    /// 0 = consistent; 2 = some consistency flag is false; 3 = a search
    /// exhausted its budget without reaching a decision. A false flag
    /// wins over an exhausted budget.
    pub fn exit_code(&self) -> u8 {
        if self.consistency_flags.iter().any(|f| !f.agrees) {
            return 2;
        }
        let inconclusive = self
            .verdicts
            .iter()
            .any(|v| matches!(v.verdict.kind, VerdictKind::Inconclusive { .. }));
        if inconclusive || self.budget_exhausted {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(R::HEADERS).expect("csv header");
        for row in &self.rows {
            w.write_record(row.record()).expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
    }

    /// Write the JSON document (and the CSV sidecar when the table is
    /// non-empty) to the resolved destination, then print the document in
    /// the requested format on stdout.
    pub fn emit(&self, opts: &OutputOptions) -> std::io::Result<()> {
        if let Some(path) = self.resolve_path(opts) {
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            write_atomic(&path, self.to_json().as_bytes())?;
            if !self.rows.is_empty() {
                write_atomic(&path.with_extension("csv"), self.to_csv().as_bytes())?;
            }
        }
        match opts.format {
            OutputFormat::Json => print!("{}", self.to_json()),
            OutputFormat::Csv => print!("{}", self.to_csv()),
        }
        Ok(())
    }

    fn resolve_path(&self, opts: &OutputOptions) -> Option<PathBuf> {
        if let Some(p) = &opts.out {
            return Some(p.clone());
        }
        opts.out_dir_env
            .as_ref()
            .map(|dir| dir.join(format!("{}.json", self.command)))
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    f.flush()
}

/// Human-readable label for a verdict kind.
pub fn verdict_label(kind: &VerdictKind) -> &'static str {
    match kind {
        VerdictKind::Universal { .. } => "universal",
        VerdictKind::NotUniversal { certified: true, .. } => "not universal (certified)",
        VerdictKind::NotUniversal { .. } => "not universal",
        VerdictKind::Inconclusive { .. } => "inconclusive",
    }
}

/// The worst minimum distance the verdict is based on.
pub fn verdict_distance(kind: &VerdictKind) -> f64 {
    match kind {
        VerdictKind::Universal { max_min_distance } => *max_min_distance,
        VerdictKind::NotUniversal { lower_bound, .. } => *lower_bound,
        VerdictKind::Inconclusive { worst_min_distance } => *worst_min_distance,
    }
}
