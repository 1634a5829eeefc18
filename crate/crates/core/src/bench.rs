//! Timing harness for the identity variants against a full eigendecomposition.
//!
//! For every size one seeded matrix is generated and shared by all variants and
//! repetitions. Each variant gets one untimed warm-up run per size, then
//! `repetitions` timed runs measured with [`Instant`] around the computation only.
//! Every run produces a checksum; a size whose variants disagree fails the whole
//! benchmark rather than reporting timings for unequal outputs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::eigensolve::{eigendecomposition, EigenDecomposition};
use crate::error::{Error, Result};
use crate::identity::{default_workers, Engine, Evaluation, IdentityConfig, DEFAULT_BATCH_SIZE};
use crate::io::format_f64;
use crate::matrix::{self, Distribution, SymmetricMatrix};

pub const DEFAULT_REPETITIONS: usize = 10;
pub const DEFAULT_SIZES: [usize; 6] = [2, 100, 250, 500, 1000, 2000];
/// Absolute checksum agreement, scaled by `max(1, |reference|)`.
pub const CHECKSUM_TOL: f64 = 1e-8;

pub const BENCH_CSV_HEADER: &str = "n,variant,task,run,seconds,checksum";
pub const PLOT_CSV_HEADER: &str = "n,variant,mean_seconds,stddev_seconds";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Baseline,
    VectorizedBatched,
    BatchedParallel,
    LogDomain,
    OracleFull,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Baseline,
        Variant::VectorizedBatched,
        Variant::BatchedParallel,
        Variant::LogDomain,
        Variant::OracleFull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Baseline => "baseline",
            Variant::VectorizedBatched => "vectorized-batched",
            Variant::BatchedParallel => "batched-parallel",
            Variant::LogDomain => "log-domain",
            Variant::OracleFull => "oracle-full",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown variant `{s}`")))
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Task {
    /// Component `j = 0` of the eigenvector for the middle eigenvalue `i = n / 2`.
    SingleComponent,
    /// All components of the eigenvector for `i = n / 2`.
    SingleVector,
    AllVectors,
}

impl Task {
    pub const ALL: [Task; 3] = [Task::SingleComponent, Task::SingleVector, Task::AllVectors];

    pub fn name(self) -> &'static str {
        match self {
            Task::SingleComponent => "single-component",
            Task::SingleVector => "single-vector",
            Task::AllVectors => "all-vectors",
        }
    }

    /// Eigenvalue solves the cached identity path needs at size `n`.
    pub fn expected_solves(self, n: usize) -> usize {
        match self {
            Task::SingleComponent => 2,
            Task::SingleVector | Task::AllVectors => n + 1,
        }
    }
}

impl std::str::FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown task `{s}`")))
    }
}

impl std::fmt::Display for Task {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub variants: Vec<Variant>,
    pub task: Task,
    pub seed: u64,
    pub distribution: Distribution,
    pub batch_size: usize,
    pub workers: usize,
    pub output_path: Option<PathBuf>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: DEFAULT_SIZES.to_vec(),
            repetitions: DEFAULT_REPETITIONS,
            variants: vec![
                Variant::VectorizedBatched,
                Variant::BatchedParallel,
                Variant::OracleFull,
            ],
            task: Task::SingleComponent,
            seed: 0,
            distribution: Distribution::Gaussian,
            batch_size: DEFAULT_BATCH_SIZE,
            workers: default_workers(),
            output_path: None,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::Config("at least one size is required".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!("size {n} is below the minimum of 2")));
        }
        if self.variants.is_empty() {
            return Err(Error::Config("at least one variant is required".into()));
        }
        if self.batch_size == 0 || self.workers == 0 {
            return Err(Error::Config(
                "batch size and workers must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub variant: Variant,
    pub task: Task,
    pub run: usize,
    pub seconds: f64,
    pub checksum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanEntry {
    pub n: usize,
    pub variant: Variant,
    pub task: Task,
    pub runs: usize,
    pub mean_seconds: f64,
    pub stddev_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub means: Vec<MeanEntry>,
    /// How the benchmark matrices were drawn, e.g. `symmetrized gaussian, seed 0`.
    pub matrices: String,
}

impl BenchReport {
    /// Builds a report from raw records; means are grouped by `(task, variant, n)`
    /// in first-seen order.
    pub fn from_records(records: Vec<BenchRecord>, matrices: impl Into<String>) -> Self {
        let mut keys: Vec<(Task, Variant, usize)> = Vec::new();
        for r in &records {
            let key = (r.task, r.variant, r.n);
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
        let means = keys
            .into_iter()
            .map(|(task, variant, n)| {
                let secs: Vec<f64> = records
                    .iter()
                    .filter(|r| r.task == task && r.variant == variant && r.n == n)
                    .map(|r| r.seconds)
                    .collect();
                let (mean_seconds, stddev_seconds) = mean_stddev(&secs);
                MeanEntry {
                    n,
                    variant,
                    task,
                    runs: secs.len(),
                    mean_seconds,
                    stddev_seconds,
                }
            })
            .collect();
        Self {
            records,
            means,
            matrices: matrices.into(),
        }
    }

    pub fn mean(&self, task: Task, variant: Variant, n: usize) -> Option<f64> {
        self.means
            .iter()
            .find(|m| m.task == task && m.variant == variant && m.n == n)
            .map(|m| m.mean_seconds)
    }

    /// `mean(oracle-full) / mean(variant)`, when both ran.
    pub fn speedup(&self, task: Task, variant: Variant, n: usize) -> Option<f64> {
        Some(self.mean(task, Variant::OracleFull, n)? / self.mean(task, variant, n)?)
    }

    pub fn tasks(&self) -> Vec<Task> {
        let mut tasks: Vec<Task> = self.means.iter().map(|m| m.task).collect();
        tasks.sort();
        tasks.dedup();
        tasks
    }
}

/// Arithmetic mean and sample standard deviation (zero for a single run).
fn mean_stddev(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

struct Runner {
    matrix: SymmetricMatrix,
    task: Task,
}

impl Runner {
    fn target(&self) -> (usize, usize) {
        (self.matrix.n() / 2, 0)
    }

    /// `Σ_j (j + 1) m_j / n`: discriminates between vectors while staying O(1).
    fn vector_checksum(values: impl Iterator<Item = f64>, n: usize) -> f64 {
        values
            .enumerate()
            .map(|(j, m)| (j + 1) as f64 * m)
            .sum::<f64>()
            / n as f64
    }

    fn matrix_checksum(values: &[f64], n: usize) -> f64 {
        Self::vector_checksum(values.iter().copied(), n * n)
    }

    fn run_engine(&self, engine: &Engine) -> Result<f64> {
        let a = &self.matrix;
        let n = a.n();
        let (i, j) = self.target();
        let before = engine.solve_count();
        let checksum = match self.task {
            Task::SingleComponent => engine.component_magnitude(a, i, j, None, None)?.value,
            Task::SingleVector => {
                let v = engine.vector_magnitudes(a, i)?;
                Self::vector_checksum(v.iter().map(|r| r.value), n)
            }
            Task::AllVectors => Self::matrix_checksum(engine.all_magnitudes(a)?.as_slice(), n),
        };
        let solves = engine.solve_count() - before;
        let expected = self.task.expected_solves(n);
        if solves != expected {
            return Err(Error::InternalInconsistency(format!(
                "{} at n={n} used {solves} eigenvalue solves, expected {expected}",
                self.task
            )));
        }
        Ok(checksum)
    }

    fn run_baseline(&self, engine: &Engine) -> Result<f64> {
        let a = &self.matrix;
        let n = a.n();
        let (i, j) = self.target();
        Ok(match self.task {
            Task::SingleComponent => engine.component_magnitude_baseline(a, i, j)?.value,
            Task::SingleVector => {
                let v = (0..n)
                    .map(|j| {
                        engine
                            .component_magnitude_baseline(a, i, j)
                            .map(|r| r.value)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::vector_checksum(v.into_iter(), n)
            }
            Task::AllVectors => {
                let mut values = vec![0.0; n * n];
                for j in 0..n {
                    for i in 0..n {
                        values[j * n + i] = engine.component_magnitude_baseline(a, i, j)?.value;
                    }
                }
                Self::matrix_checksum(&values, n)
            }
        })
    }

    fn oracle_checksum(&self, d: &EigenDecomposition) -> f64 {
        let n = self.matrix.n();
        let (i, j) = self.target();
        match self.task {
            Task::SingleComponent => d.component(i, j).powi(2),
            Task::SingleVector => Self::vector_checksum(d.vector(i).iter().map(|x| x * x), n),
            Task::AllVectors => Self::matrix_checksum(&d.squared_components(), n),
        }
    }
}

struct Engines {
    sequential: Engine,
    parallel: Engine,
    log_domain: Engine,
}

impl Engines {
    fn new(cfg: &BenchConfig) -> Result<Self> {
        let base = IdentityConfig {
            batch_size: cfg.batch_size,
            workers: cfg.workers,
            ..IdentityConfig::default()
        };
        Ok(Self {
            sequential: Engine::new(IdentityConfig { workers: 1, ..base })?,
            parallel: Engine::new(base)?,
            log_domain: Engine::new(IdentityConfig {
                evaluation: Evaluation::LogDomain,
                ..base
            })?,
        })
    }
}

fn run_variant(variant: Variant, runner: &Runner, engines: &Engines) -> Result<f64> {
    match variant {
        Variant::Baseline => runner.run_baseline(&engines.sequential),
        Variant::VectorizedBatched => runner.run_engine(&engines.sequential),
        Variant::BatchedParallel => runner.run_engine(&engines.parallel),
        Variant::LogDomain => runner.run_engine(&engines.log_domain),
        Variant::OracleFull => Ok(runner.oracle_checksum(&eigendecomposition(&runner.matrix)?)),
    }
}

/// Runs every `(size, variant, repetition)` and checks checksum agreement per size.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let mut variants = cfg.variants.clone();
    variants.dedup();
    let engines = Engines::new(cfg)?;
    let mut records = Vec::new();
    for &n in &cfg.sizes {
        let runner = Runner {
            matrix: matrix::random(cfg.seed, cfg.distribution, n)?,
            task: cfg.task,
        };
        let mut reference: Option<(Variant, f64)> = None;
        for &variant in &variants {
            // Warm-up.
            run_variant(variant, &runner, &engines)?;
            for run in 0..cfg.repetitions {
                let start = Instant::now();
                let checksum = run_variant(variant, &runner, &engines)?;
                let seconds = start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE);
                match reference {
                    None => reference = Some((variant, checksum)),
                    Some((ref_variant, expected)) => {
                        // Written so that a NaN checksum never counts as agreement.
                        let agrees =
                            (checksum - expected).abs() <= CHECKSUM_TOL * expected.abs().max(1.0);
                        if !agrees {
                            return Err(Error::VariantDisagreement {
                                n,
                                variant: variant.name().into(),
                                reference: ref_variant.name().into(),
                                expected,
                                found: checksum,
                            });
                        }
                    }
                }
                records.push(BenchRecord {
                    n,
                    variant,
                    task: cfg.task,
                    run,
                    seconds,
                    checksum,
                });
            }
        }
    }
    let report = BenchReport::from_records(
        records,
        format!("symmetrized {}, seed {}", cfg.distribution.name(), cfg.seed),
    );
    if let Some(path) = &cfg.output_path {
        std::fs::write(path, write_bench_csv(&report))?;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpeedupRow {
    pub task: Task,
    pub n: usize,
    pub reference_seconds: f64,
    /// `(variant, mean seconds, speedup over the reference)`.
    pub variants: Vec<(Variant, f64, f64)>,
}

/// One row per `(task, n)` with the oracle-full mean and every other variant's speedup.
pub fn speedup_rows(report: &BenchReport) -> Result<Vec<SpeedupRow>> {
    let mut rows = Vec::new();
    for task in report.tasks() {
        let mut sizes: Vec<usize> = report
            .means
            .iter()
            .filter(|m| m.task == task)
            .map(|m| m.n)
            .collect();
        sizes.sort_unstable();
        sizes.dedup();
        for n in sizes {
            let Some(reference_seconds) = report.mean(task, Variant::OracleFull, n) else {
                continue;
            };
            let variants: Vec<(Variant, f64, f64)> = report
                .means
                .iter()
                .filter(|m| m.task == task && m.n == n && m.variant != Variant::OracleFull)
                .map(|m| {
                    (
                        m.variant,
                        m.mean_seconds,
                        reference_seconds / m.mean_seconds,
                    )
                })
                .collect();
            if variants.is_empty() {
                continue;
            }
            rows.push(SpeedupRow {
                task,
                n,
                reference_seconds,
                variants,
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::MissingReference);
    }
    Ok(rows)
}

/// Text table: size, reference mean, each variant's mean and its speedup.
pub fn speedup_table(report: &BenchReport) -> Result<String> {
    let rows = speedup_rows(report)?;
    let mut out = String::new();
    let _ = writeln!(out, "matrices: {}", report.matrices);
    let mut current: Option<Task> = None;
    for row in &rows {
        if current != Some(row.task) {
            current = Some(row.task);
            let _ = writeln!(out, "\ntask: {}", row.task);
            let _ = write!(out, "{:>8}  {:>14}", "n", Variant::OracleFull.name());
            for (v, _, _) in &row.variants {
                let _ = write!(out, "  {:>18}  {:>8}", v.name(), "speedup");
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>8}  {:>14.6}", row.n, row.reference_seconds);
        for (_, mean, speedup) in &row.variants {
            let _ = write!(out, "  {mean:>18.6}  {:>7.2}x", speedup);
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_bench_csv(report: &BenchReport) -> String {
    let mut out = format!("{BENCH_CSV_HEADER}\n");
    for r in &report.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{}",
            r.n,
            r.variant,
            r.task,
            r.run,
            r.seconds,
            format_f64(r.checksum)
        );
    }
    out
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_field<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T> {
    token
        .trim()
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what} `{}`", token.trim())))
}

fn csv_body<'a>(
    text: &'a str,
    header: &str,
) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        _ => return Err(parse_error(1, format!("expected header `{header}`"))),
    }
    Ok(lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| (k, l.split(',').collect())))
}

pub fn parse_bench_csv(text: &str) -> Result<Vec<BenchRecord>> {
    csv_body(text, BENCH_CSV_HEADER)?
        .map(|(line, fields)| {
            let [n, variant, task, run, seconds, checksum] = fields[..] else {
                return Err(parse_error(line, "expected 6 fields"));
            };
            Ok(BenchRecord {
                n: parse_field(n, line, "size")?,
                variant: variant
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(line, "unknown variant"))?,
                task: task
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(line, "unknown task"))?,
                run: parse_field(run, line, "run index")?,
                seconds: parse_field(seconds, line, "seconds")?,
                checksum: parse_field(checksum, line, "checksum")?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotRow {
    pub n: usize,
    pub variant: Variant,
    pub mean_seconds: f64,
    pub stddev_seconds: f64,
}

pub fn write_plot_csv(report: &BenchReport, task: Task) -> String {
    let mut entries: Vec<&MeanEntry> = report.means.iter().filter(|m| m.task == task).collect();
    entries.sort_by_key(|m| (m.variant, m.n));
    let mut out = format!("{PLOT_CSV_HEADER}\n");
    for m in entries {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            m.n,
            m.variant,
            format_f64(m.mean_seconds),
            format_f64(m.stddev_seconds)
        );
    }
    out
}

pub fn parse_plot_csv(text: &str) -> Result<Vec<PlotRow>> {
    csv_body(text, PLOT_CSV_HEADER)?
        .map(|(line, fields)| {
            let [n, variant, mean, stddev] = fields[..] else {
                return Err(parse_error(line, "expected 4 fields"));
            };
            Ok(PlotRow {
                n: parse_field(n, line, "size")?,
                variant: variant
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(line, "unknown variant"))?,
                mean_seconds: parse_field(mean, line, "mean")?,
                stddev_seconds: parse_field(stddev, line, "stddev")?,
            })
        })
        .collect()
}

/// Writes `plot-<task>.csv` into `dir` for every task in the report.
pub fn emit_plot_data(report: &BenchReport, dir: &Path) -> Result<Vec<PathBuf>> {
    if report.records.is_empty() {
        return Err(Error::Config(
            "cannot emit plot data for an empty report".into(),
        ));
    }
    std::fs::create_dir_all(dir)?;
    report
        .tasks()
        .into_iter()
        .map(|task| {
            let path = dir.join(format!("plot-{task}.csv"));
            std::fs::write(&path, write_plot_csv(report, task))?;
            Ok(path)
        })
        .collect()
}
