//! The threshold sweep harness: generate instances over a parameter grid,
//! measure minimum degree, `alpha_l`, the cover property and the factor
//! outcome per seeded instance, and persist the records.
//!
//! Determinism contract: `records.csv` and `records.json` are byte-identical
//! across reruns of the same config. Timings are real measurements and land
//! in a separate `timings.csv` sidecar that is excluded from that contract.
//! Progress checkpoints stream to `checkpoint.jsonl`, keyed by a hash of the
//! config, so an interrupted sweep resumes without recomputing.

use kfactor_core::budget::Budget;
use kfactor_core::constructions::{complete_multipartite, core_c5_blowup, core_edgeless, figure1};
use kfactor_core::exec;
use kfactor_core::factor::{cover_check, has_kr_factor, FactorOutcome};
use kfactor_core::format::to_graph6;
use kfactor_core::graph::{gnp, Graph, VertexSet};
use kfactor_core::independence::{alpha_ell_bounds, alpha_ell_exact, BoundsEffort, EXACT_LIMIT};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Instance family a sweep draws from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SweepFamily {
    /// Extremal apex instances; `core` is `edgeless` or `c5-blowup`.
    Figure1 { r: usize, x: f64, core: String },
    /// Balanced complete r-partite graphs (requires `r | n`).
    Multipartite { r: usize },
    /// Seeded `G(n, p)`, optionally resampled until a minimum-degree
    /// fraction holds (bounded attempts; the record keeps the actual value).
    Gnp {
        r: usize,
        p: f64,
        #[serde(default)]
        min_degree_frac: Option<f64>,
    },
}

impl SweepFamily {
    fn r(&self) -> usize {
        match self {
            SweepFamily::Figure1 { r, .. }
            | SweepFamily::Multipartite { r }
            | SweepFamily::Gnp { r, .. } => *r,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            SweepFamily::Figure1 { .. } => "figure1",
            SweepFamily::Multipartite { .. } => "multipartite",
            SweepFamily::Gnp { .. } => "gnp",
        }
    }
}

/// A sweep: one family, a grid of `n` values, several seeds per cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub version: u32,
    pub family: SweepFamily,
    pub ns: Vec<usize>,
    pub ell: usize,
    pub seeds_per_cell: u64,
    /// Node budget for each factor search (determinism-bearing; no
    /// wall-clock budgets in sweeps).
    pub budget_nodes: u64,
    /// Restarts for the alpha bounds when `n` exceeds the exact limit.
    #[serde(default = "default_alpha_restarts")]
    pub alpha_restarts: usize,
}

fn default_alpha_restarts() -> usize {
    32
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.version != 1 {
            return Err(SweepError::Config(format!(
                "unsupported config version {}",
                self.version
            )));
        }
        if self.ns.is_empty() {
            return Err(SweepError::Config("empty grid: no n values".into()));
        }
        if self.seeds_per_cell == 0 {
            return Err(SweepError::Config("seeds_per_cell must be positive".into()));
        }
        if self.budget_nodes == 0 {
            return Err(SweepError::Config("budget_nodes must be positive".into()));
        }
        if self.ell < 2 {
            return Err(SweepError::Config("ell must be at least 2".into()));
        }
        Ok(())
    }

    /// Stable fingerprint used to key checkpoint entries (FNV-1a over the
    /// canonical JSON).
    pub fn fingerprint(&self) -> u64 {
        let json = serde_json::to_string(self).expect("config serializes");
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        for b in json.bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash
    }
}

#[derive(Debug)]
pub enum SweepError {
    Config(String),
    Io(std::io::Error),
    Json(String),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::Config(msg) => write!(f, "bad sweep config: {msg}"),
            SweepError::Io(e) => write!(f, "sweep I/O error: {e}"),
            SweepError::Json(msg) => write!(f, "sweep JSON error: {msg}"),
        }
    }
}

impl std::error::Error for SweepError {}

impl From<std::io::Error> for SweepError {
    fn from(e: std::io::Error) -> Self {
        SweepError::Io(e)
    }
}

/// One measured instance. Every field is deterministic given the config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family: String,
    pub cell: String,
    pub n: usize,
    pub r: usize,
    pub ell: usize,
    pub seed: u64,
    /// Replayable instance payload.
    pub graph6: String,
    pub delta: usize,
    pub delta_frac: f64,
    pub alpha_lower: usize,
    pub alpha_upper: usize,
    pub alpha_exact: bool,
    pub cover_violations: usize,
    /// `factor`, `no-factor` or `unknown`.
    pub outcome: String,
    pub search_nodes: u64,
}

/// Wall-clock diagnostics, one row per record; excluded from determinism.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TimingRow {
    pub cell: String,
    pub seed: u64,
    pub total_ms: u128,
}

/// Output artifact paths under one directory.
pub struct SweepPaths {
    pub records_csv: PathBuf,
    pub records_json: PathBuf,
    pub timings_csv: PathBuf,
    pub checkpoint: PathBuf,
}

impl SweepPaths {
    pub fn in_dir(dir: &Path) -> SweepPaths {
        SweepPaths {
            records_csv: dir.join("records.csv"),
            records_json: dir.join("records.json"),
            timings_csv: dir.join("timings.csv"),
            checkpoint: dir.join("checkpoint.jsonl"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CheckpointLine {
    config: u64,
    record: SweepRecord,
}

/// Generates one instance. Seeds thread through a splitmix derivation so
/// cells are independent of execution order.
fn generate(family: &SweepFamily, n: usize, seed: u64) -> Result<Graph, SweepError> {
    match family {
        SweepFamily::Figure1 { r, x, core } => {
            let c = (x * n as f64).floor() as usize;
            let core_graph = match core.as_str() {
                "edgeless" => core_edgeless(c),
                "c5-blowup" => core_c5_blowup(c),
                other => {
                    return Err(SweepError::Config(format!(
                        "unknown figure1 core recipe {other:?}"
                    )))
                }
            };
            figure1(n, *r, *x, None, &core_graph)
                .map(|inst| inst.graph)
                .map_err(|e| SweepError::Config(e.to_string()))
        }
        SweepFamily::Multipartite { r } => {
            if !n.is_multiple_of(*r) {
                return Err(SweepError::Config(format!(
                    "multipartite cell needs r | n, got n = {n}, r = {r}"
                )));
            }
            let sizes = vec![n / r; *r];
            complete_multipartite(&sizes)
                .map(|inst| inst.graph)
                .map_err(|e| SweepError::Config(e.to_string()))
        }
        SweepFamily::Gnp {
            p, min_degree_frac, ..
        } => {
            let attempts = if min_degree_frac.is_some() { 1_000 } else { 1 };
            let mut last = None;
            for attempt in 0..attempts {
                let g = gnp(n, *p, exec::derive_seed(seed, attempt));
                match min_degree_frac {
                    Some(frac) => {
                        let ok = g.min_degree().map(|d| d as f64 >= frac * n as f64);
                        if ok.unwrap_or(false) {
                            return Ok(g);
                        }
                        last = Some(g);
                    }
                    None => return Ok(g),
                }
            }
            // Conditioning failed within the attempt budget: keep the last
            // draw; the record carries its true minimum degree.
            Ok(last.expect("at least one attempt"))
        }
    }
}

fn measure(
    config: &SweepConfig,
    n: usize,
    seed: u64,
) -> Result<(SweepRecord, TimingRow), SweepError> {
    let started = Instant::now();
    let family = &config.family;
    let r = family.r();
    let cell = format!("n={n}");
    let g = generate(family, n, seed)?;

    let delta = g
        .min_degree()
        .map_err(|e| SweepError::Config(e.to_string()))?;
    let (alpha_lower, alpha_upper, alpha_exact) = if g.n() <= EXACT_LIMIT {
        let a = alpha_ell_exact(&g, config.ell).expect("within exact limit");
        (a.lower, a.upper, true)
    } else {
        let a = alpha_ell_bounds(
            &g,
            config.ell,
            &BoundsEffort {
                restarts: config.alpha_restarts,
                seed,
            },
        );
        (a.lower, a.upper, false)
    };
    let violations = cover_check(&g, r, &VertexSet::new());
    let budget = Budget::with_nodes(config.budget_nodes);
    let cert = has_kr_factor(&g, r, &budget);
    let outcome = match cert.outcome {
        FactorOutcome::Factor { .. } => "factor",
        FactorOutcome::NoFactor { .. } => "no-factor",
        FactorOutcome::Unknown { .. } => "unknown",
    };

    let record = SweepRecord {
        family: family.name().to_string(),
        cell: cell.clone(),
        n,
        r,
        ell: config.ell,
        seed,
        graph6: to_graph6(&g),
        delta,
        delta_frac: delta as f64 / n as f64,
        alpha_lower,
        alpha_upper,
        alpha_exact,
        cover_violations: violations.len(),
        outcome: outcome.to_string(),
        search_nodes: cert.stats.nodes,
    };
    let timing = TimingRow {
        cell,
        seed,
        total_ms: started.elapsed().as_millis(),
    };
    Ok((record, timing))
}

/// Runs (or resumes) a sweep, writing all artifacts under `out_dir`.
/// Returns the records in canonical `(cell, seed)` order.
pub fn run_sweep(config: &SweepConfig, out_dir: &Path) -> Result<Vec<SweepRecord>, SweepError> {
    config.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let paths = SweepPaths::in_dir(out_dir);
    // Surface unwritable outputs before any computation.
    probe_writable(&paths.records_csv)?;

    let fingerprint = config.fingerprint();
    let done = load_checkpoint(&paths.checkpoint, fingerprint)?;

    // Work items in canonical order.
    let jobs: Vec<(usize, u64)> = config
        .ns
        .iter()
        .flat_map(|&n| (0..config.seeds_per_cell).map(move |s| (n, s)))
        .collect();
    let pending: Vec<(usize, u64)> = jobs
        .iter()
        .copied()
        .filter(|(n, s)| !done.iter().any(|r| r.n == *n && r.seed == *s))
        .collect();

    let computed = exec::map_indexed(pending.len(), |i| {
        let (n, seed) = pending[i];
        measure(config, n, seed)
    });

    let mut checkpoint = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&paths.checkpoint)?;
    let mut timings: Vec<TimingRow> = Vec::new();
    let mut records = done;
    for result in computed {
        let (record, timing) = result?;
        let line = serde_json::to_string(&CheckpointLine {
            config: fingerprint,
            record: record.clone(),
        })
        .map_err(|e| SweepError::Json(e.to_string()))?;
        writeln!(checkpoint, "{line}")?;
        records.push(record);
        timings.push(timing);
    }
    checkpoint.flush()?;

    // Canonical (cell-in-grid-order, seed) ordering for all artifacts.
    records.sort_by_key(|r| {
        (
            config
                .ns
                .iter()
                .position(|&n| n == r.n)
                .unwrap_or(usize::MAX),
            r.seed,
        )
    });

    std::fs::write(&paths.records_csv, records_to_csv(&records))?;
    std::fs::write(
        &paths.records_json,
        serde_json::to_string_pretty(&records).map_err(|e| SweepError::Json(e.to_string()))?,
    )?;
    append_timings(&paths.timings_csv, &timings)?;
    Ok(records)
}

fn probe_writable(path: &Path) -> Result<(), SweepError> {
    std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map(|_| ())
        .map_err(SweepError::Io)
}

fn load_checkpoint(path: &Path, fingerprint: u64) -> Result<Vec<SweepRecord>, SweepError> {
    let Ok(text) = std::fs::read_to_string(path) else {
        return Ok(Vec::new());
    };
    let mut records = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: CheckpointLine =
            serde_json::from_str(line).map_err(|e| SweepError::Json(e.to_string()))?;
        // Entries from other configs are ignored, not errors.
        if parsed.config == fingerprint {
            records.push(parsed.record);
        }
    }
    Ok(records)
}

/// Versioned CSV schema; the comment header names it, and timings are kept
/// out so reruns are byte-identical.
pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::new();
    out.push_str("# sweep records schema v1 (timings live in timings.csv)\n");
    out.push_str(
        "family,cell,n,r,ell,seed,graph6,delta,delta_frac,alpha_lower,alpha_upper,\
         alpha_exact,cover_violations,outcome,search_nodes\n",
    );
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{:.6},{},{},{},{},{},{}\n",
            r.family,
            r.cell,
            r.n,
            r.r,
            r.ell,
            r.seed,
            r.graph6,
            r.delta,
            r.delta_frac,
            r.alpha_lower,
            r.alpha_upper,
            r.alpha_exact,
            r.cover_violations,
            r.outcome,
            r.search_nodes,
        ));
    }
    out
}

fn append_timings(path: &Path, timings: &[TimingRow]) -> Result<(), SweepError> {
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    if file.metadata()?.len() == 0 {
        writeln!(file, "cell,seed,total_ms")?;
    }
    for t in timings {
        writeln!(file, "{},{},{}", t.cell, t.seed, t.total_ms)?;
    }
    Ok(())
}

/// Per-cell aggregate: factor rate over decided instances, unknowns counted
/// separately, mean measured fractions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: String,
    pub instances: usize,
    pub factor: usize,
    pub no_factor: usize,
    pub unknown: usize,
    /// `factor / (factor + no_factor)`; NaN-free: 0 when nothing decided.
    pub factor_rate: f64,
    pub mean_delta_frac: f64,
    pub mean_alpha_frac: f64,
}

/// Aggregates records per cell in first-appearance order.
pub fn report(records: &[SweepRecord]) -> Vec<CellSummary> {
    let mut order: Vec<String> = Vec::new();
    for r in records {
        if !order.contains(&r.cell) {
            order.push(r.cell.clone());
        }
    }
    order
        .into_iter()
        .map(|cell| {
            let rows: Vec<&SweepRecord> = records.iter().filter(|r| r.cell == cell).collect();
            let factor = rows.iter().filter(|r| r.outcome == "factor").count();
            let no_factor = rows.iter().filter(|r| r.outcome == "no-factor").count();
            let unknown = rows.iter().filter(|r| r.outcome == "unknown").count();
            let decided = factor + no_factor;
            let mean = |f: &dyn Fn(&SweepRecord) -> f64| -> f64 {
                rows.iter().map(|r| f(r)).sum::<f64>() / rows.len() as f64
            };
            CellSummary {
                cell,
                instances: rows.len(),
                factor,
                no_factor,
                unknown,
                factor_rate: if decided == 0 {
                    0.0
                } else {
                    factor as f64 / decided as f64
                },
                mean_delta_frac: mean(&|r| r.delta_frac),
                mean_alpha_frac: mean(&|r| r.alpha_lower as f64 / r.n as f64),
            }
        })
        .collect()
}

/// Text table for a report; header-only when there are no records.
pub fn report_table(summaries: &[CellSummary]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<10} {:>9} {:>7} {:>10} {:>8} {:>12} {:>12} {:>12}\n",
        "cell",
        "instances",
        "factor",
        "no-factor",
        "unknown",
        "factor_rate",
        "mean_delta",
        "mean_alpha"
    ));
    for s in summaries {
        out.push_str(&format!(
            "{:<10} {:>9} {:>7} {:>10} {:>8} {:>12.4} {:>12.4} {:>12.4}\n",
            s.cell,
            s.instances,
            s.factor,
            s.no_factor,
            s.unknown,
            s.factor_rate,
            s.mean_delta_frac,
            s.mean_alpha_frac
        ));
    }
    out
}

/// CSV form of a report.
pub fn report_csv(summaries: &[CellSummary]) -> String {
    let mut out = String::new();
    out.push_str(
        "cell,instances,factor,no_factor,unknown,factor_rate,mean_delta_frac,mean_alpha_frac\n",
    );
    for s in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{:.6},{:.6},{:.6}\n",
            s.cell,
            s.instances,
            s.factor,
            s.no_factor,
            s.unknown,
            s.factor_rate,
            s.mean_delta_frac,
            s.mean_alpha_frac
        ));
    }
    out
}
