//! Command-line front end: CSV ingestion, clustering runs, evaluation,
//! synthetic data generation, and timing benchmarks.
//!
//! Four subcommands cover the full experimental loop:
//!
//! ```text
//! kanmi cluster -i data.csv -k 2 --header --class-column class
//! kanmi eval --labels labels.txt --classes classes.txt
//! kanmi gen --rows 1000 --attrs 10 --classes 10 --seed 5 -o synthetic.csv
//! kanmi bench -i synthetic.csv --header --class-column class --ks 2,3,4
//! ```
//!
//! Every command is deterministic for fixed inputs (timings aside), exits
//! nonzero with a diagnostic on any error, and emits machine-readable JSON
//! next to the human-readable summary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::algorithm::KAnmi;
use crate::error::{Error, Result};
use crate::experiments::{
    accuracy, generate, squeezer, squeezer_targeting, Algorithm, EvaluationReport, GeneratorSpec,
};
use crate::information::dataset_anmi;
use crate::model::{Dataset, Labeling};

impl clap::ValueEnum for Algorithm {
    fn value_variants<'a>() -> &'a [Self] {
        &[Algorithm::KAnmi, Algorithm::Squeezer]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(match self {
            Algorithm::KAnmi => clap::builder::PossibleValue::new("k-anmi"),
            Algorithm::Squeezer => clap::builder::PossibleValue::new("squeezer"),
        })
    }
}

/// A column picked either by 0-based position or by header name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl std::str::FromStr for ColumnRef {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            if let Ok(index) = s.parse() {
                return Ok(ColumnRef::Index(index));
            }
        }
        Ok(ColumnRef::Name(s.to_string()))
    }
}

impl std::fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnRef::Index(i) => write!(f, "{i}"),
            ColumnRef::Name(n) => write!(f, "{n}"),
        }
    }
}

/// Everything one clustering run needs: where the data lives, how to parse
/// it, which algorithm to drive, and where outputs go. The class column,
/// when given, is held out as ground truth and never clustered on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub input: PathBuf,
    pub delimiter: char,
    pub has_header: bool,
    pub class_column: Option<ColumnRef>,
    pub algorithm: Algorithm,
    pub k: usize,
    /// Fixed similarity threshold for the baseline; `None` searches for
    /// one that yields `k` clusters.
    pub threshold: Option<f64>,
    pub max_sweeps: usize,
    pub improvement_epsilon: f64,
    pub labels_out: Option<PathBuf>,
    pub report_out: Option<PathBuf>,
}

/// Machine-readable outcome of `kanmi cluster`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub algorithm: Algorithm,
    pub input: PathBuf,
    /// Records clustered — also identifies which variant of a dataset was
    /// used when several circulate.
    pub records: usize,
    pub attributes: usize,
    pub k_requested: usize,
    pub clusters_found: usize,
    pub anmi: f64,
    pub seconds: f64,
    pub sweeps_run: Option<usize>,
    pub anmi_history: Option<Vec<f64>>,
    pub moves_per_sweep: Option<Vec<usize>>,
    pub converged: Option<bool>,
    /// Similarity threshold the baseline ran with.
    pub threshold: Option<f64>,
    /// Present when the input had a class column.
    pub evaluation: Option<EvaluationReport>,
}

/// What a benchmark sweeps over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMode {
    /// Fixed `k`, growing row prefixes — runtime vs. data size.
    RowScaling,
    /// Fixed rows, growing `k` — runtime and error vs. cluster count.
    ClusterScaling,
}

/// One timed clustering run inside a benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchCell {
    pub rows: usize,
    pub k: usize,
    pub clusters_found: usize,
    pub seconds: f64,
    pub anmi: f64,
    pub sweeps: Option<usize>,
    pub error: Option<f64>,
}

/// Machine-readable outcome of `kanmi bench`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub algorithm: Algorithm,
    pub mode: BenchMode,
    pub cells: Vec<BenchCell>,
    pub average_error: Option<f64>,
}

#[derive(Debug, Parser)]
#[command(
    name = "kanmi",
    version,
    about = "Categorical data clustering by mutual-information search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a CSV dataset; write per-row labels and a JSON report
    Cluster(ClusterArgs),
    /// Score a label file against a class file
    Eval(EvalArgs),
    /// Generate a synthetic labeled dataset as CSV
    Gen(GenArgs),
    /// Time clustering over growing row counts or cluster counts
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Input CSV file
    #[arg(short, long)]
    pub input: PathBuf,
    /// Number of clusters
    #[arg(short, long)]
    pub k: usize,
    /// Field delimiter
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// Treat the first row as a header
    #[arg(long)]
    pub header: bool,
    /// Ground-truth column (0-based index or header name); excluded from
    /// clustering, used for the accuracy report
    #[arg(long)]
    pub class_column: Option<ColumnRef>,
    /// Clustering algorithm
    #[arg(long, value_enum, default_value_t = Algorithm::KAnmi)]
    pub algorithm: Algorithm,
    /// Fixed similarity threshold for the squeezer baseline (default:
    /// search for one producing k clusters)
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Cap on refinement sweeps
    #[arg(long, default_value_t = 100)]
    pub max_sweeps: usize,
    /// Minimal ANMI gain to accept a move
    #[arg(long, default_value_t = 1e-12)]
    pub epsilon: f64,
    /// Write one cluster label per input row here
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
    /// Write the JSON report here
    #[arg(long)]
    pub report_out: Option<PathBuf>,
}

impl ClusterArgs {
    pub fn into_manifest(self) -> RunManifest {
        RunManifest {
            input: self.input,
            delimiter: self.delimiter,
            has_header: self.header,
            class_column: self.class_column,
            algorithm: self.algorithm,
            k: self.k,
            threshold: self.threshold,
            max_sweeps: self.max_sweeps,
            improvement_epsilon: self.epsilon,
            labels_out: self.labels_out,
            report_out: self.report_out,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// File with one cluster label per row
    #[arg(long)]
    pub labels: PathBuf,
    /// File with one class label per row, same order
    #[arg(long)]
    pub classes: PathBuf,
    /// Write the JSON report here
    #[arg(long)]
    pub report_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of records
    #[arg(long)]
    pub rows: usize,
    /// Number of attributes
    #[arg(long)]
    pub attrs: usize,
    /// Number of classes
    #[arg(long)]
    pub classes: usize,
    /// Distinct values per attribute (default: max(classes, 2))
    #[arg(long)]
    pub values: Option<usize>,
    /// Probability of a class's preferred value, in (0, 1]
    #[arg(long, default_value_t = 0.9)]
    pub skew: f64,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV path
    #[arg(short, long)]
    pub output: PathBuf,
}

impl GenArgs {
    pub fn spec(&self) -> GeneratorSpec {
        GeneratorSpec {
            rows: self.rows,
            attributes: self.attrs,
            classes: self.classes,
            values_per_attribute: self.values.unwrap_or_else(|| self.classes.max(2)),
            skew: self.skew,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Input CSV file
    #[arg(short, long)]
    pub input: PathBuf,
    /// Field delimiter
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// Treat the first row as a header
    #[arg(long)]
    pub header: bool,
    /// Ground-truth column, for per-run errors
    #[arg(long)]
    pub class_column: Option<ColumnRef>,
    /// Clustering algorithm
    #[arg(long, value_enum, default_value_t = Algorithm::KAnmi)]
    pub algorithm: Algorithm,
    /// Cluster counts to try (fixed rows)
    #[arg(long, value_delimiter = ',')]
    pub ks: Vec<usize>,
    /// Row prefixes to time (fixed k)
    #[arg(long, value_delimiter = ',')]
    pub row_counts: Vec<usize>,
    /// Cluster count used with --row-counts
    #[arg(short, long, default_value_t = 2)]
    pub k: usize,
    /// Write the JSON report here
    #[arg(long)]
    pub report_out: Option<PathBuf>,
    /// Write a CSV table of the cells here
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

/// Entry point for the binary: parse arguments from the process, run,
/// print human summaries to stdout.
pub fn main() -> Result<()> {
    run(Cli::parse())
}

/// Executes one parsed command.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cluster(args) => {
            let manifest = args.into_manifest();
            let report = cmd_cluster(&manifest)?;
            print_cluster_report(&manifest, &report);
        }
        Command::Eval(args) => {
            let report = cmd_eval(&args.labels, &args.classes)?;
            if let Some(path) = &args.report_out {
                write_json(path, &report)?;
            }
            print_evaluation(&report);
        }
        Command::Gen(args) => {
            let spec = args.spec();
            cmd_gen(&spec, &args.output)?;
            println!(
                "wrote {} rows x {} attributes ({} classes, skew {}, seed {}) to {}",
                spec.rows,
                spec.attributes,
                spec.classes,
                spec.skew,
                spec.seed,
                args.output.display()
            );
        }
        Command::Bench(args) => {
            let report = cmd_bench(&args)?;
            print_bench_report(&report);
            if let Some(path) = &args.report_out {
                write_json(path, &report)?;
            }
            if let Some(path) = &args.csv_out {
                write_text(path, &bench_csv(&report))?;
            }
        }
    }
    Ok(())
}

/// Clusters per the manifest; writes label/report files when asked.
pub fn cmd_cluster(manifest: &RunManifest) -> Result<ClusterReport> {
    let dataset = load_dataset(
        &manifest.input,
        manifest.delimiter,
        manifest.has_header,
        manifest.class_column.as_ref(),
    )?;
    let started = Instant::now();
    let (labeling, anmi, sweeps_run, anmi_history, moves_per_sweep, converged, threshold) =
        match manifest.algorithm {
            Algorithm::KAnmi => {
                let result = KAnmi::new(manifest.k)
                    .max_sweeps(manifest.max_sweeps)
                    .improvement_epsilon(manifest.improvement_epsilon)
                    .fit(&dataset)?;
                (
                    result.labels,
                    result.final_anmi,
                    Some(result.sweeps_run),
                    Some(result.anmi_history),
                    Some(result.moves_per_sweep),
                    Some(result.converged),
                    None,
                )
            }
            Algorithm::Squeezer => {
                let (labeling, threshold) = match manifest.threshold {
                    Some(t) => (squeezer(&dataset, t)?, t),
                    None => squeezer_targeting(&dataset, manifest.k)?,
                };
                let anmi = dataset_anmi(&dataset, &labeling)?;
                (labeling, anmi, None, None, None, None, Some(threshold))
            }
        };
    let seconds = started.elapsed().as_secs_f64();
    let evaluation = dataset
        .ground_truth()
        .map(|classes| accuracy(&labeling, classes))
        .transpose()?;
    if let Some(path) = &manifest.labels_out {
        write_labels(path, &labeling)?;
    }
    let report = ClusterReport {
        algorithm: manifest.algorithm,
        input: manifest.input.clone(),
        records: dataset.len(),
        attributes: dataset.num_attributes(),
        k_requested: manifest.k,
        clusters_found: labeling.num_labels(),
        anmi,
        seconds,
        sweeps_run,
        anmi_history,
        moves_per_sweep,
        converged,
        threshold,
        evaluation,
    };
    if let Some(path) = &manifest.report_out {
        write_json(path, &report)?;
    }
    Ok(report)
}

/// Scores a label file against a class file (one token per line each).
pub fn cmd_eval(labels_path: &Path, classes_path: &Path) -> Result<EvaluationReport> {
    let label_tokens = read_column(labels_path)?;
    let class_tokens = read_column(classes_path)?;
    if label_tokens.len() != class_tokens.len() {
        return Err(Error::LengthMismatch {
            left: label_tokens.len(),
            right: class_tokens.len(),
        });
    }
    let (labels, _) = Labeling::from_tokens(&label_tokens)?;
    let (classes, _) = Labeling::from_tokens(&class_tokens)?;
    accuracy(&labels, &classes)
}

/// Generates a synthetic dataset and writes it as CSV with a header row
/// `a1..ar,class`. Byte-identical output for identical specs.
pub fn cmd_gen(spec: &GeneratorSpec, output: &Path) -> Result<()> {
    let dataset = generate(spec)?;
    let classes = dataset.ground_truth().expect("generated data has classes");
    let names = dataset.class_names().expect("generated classes are named");
    let mut text = String::new();
    for i in 1..=dataset.num_attributes() {
        text.push_str(&format!("a{i},"));
    }
    text.push_str("class\n");
    for (t, rec) in dataset.records().iter().enumerate() {
        for i in 0..dataset.num_attributes() {
            text.push_str(dataset.value_token(i, rec.value(i)));
            text.push(',');
        }
        text.push_str(&names[classes.label(t) as usize]);
        text.push('\n');
    }
    write_text(output, &text)
}

/// Times one clustering run per requested cell, over row prefixes
/// (`--row-counts`, fixed `k`) or cluster counts (`--ks`, all rows).
pub fn cmd_bench(args: &BenchArgs) -> Result<BenchReport> {
    let mode = match (args.ks.is_empty(), args.row_counts.is_empty()) {
        (false, true) => BenchMode::ClusterScaling,
        (true, false) => BenchMode::RowScaling,
        _ => {
            return Err(Error::InvalidConfig(
                "pass exactly one of --ks and --row-counts".to_string(),
            ))
        }
    };
    let (header, rows) = read_rows(&args.input, args.delimiter, args.header)?;
    let width = rows.first().map_or(0, Vec::len);
    let class_index = args
        .class_column
        .as_ref()
        .map(|c| resolve_column(c, header.as_deref(), width))
        .transpose()?;

    let mut cells = Vec::new();
    match mode {
        BenchMode::RowScaling => {
            for &count in &args.row_counts {
                if count == 0 || count > rows.len() {
                    return Err(Error::InvalidConfig(format!(
                        "row count {count} out of range (file has {} data rows)",
                        rows.len()
                    )));
                }
                let dataset = assemble_dataset(rows[..count].to_vec(), class_index)?;
                cells.push(timed_run(&dataset, args.algorithm, args.k)?);
            }
        }
        BenchMode::ClusterScaling => {
            let dataset = assemble_dataset(rows, class_index)?;
            for &k in &args.ks {
                cells.push(timed_run(&dataset, args.algorithm, k)?);
            }
        }
    }
    let average_error = if cells.iter().all(|c| c.error.is_some()) {
        Some(cells.iter().filter_map(|c| c.error).sum::<f64>() / cells.len() as f64)
    } else {
        None
    };
    Ok(BenchReport {
        algorithm: args.algorithm,
        mode,
        cells,
        average_error,
    })
}

fn timed_run(dataset: &Dataset, algorithm: Algorithm, k: usize) -> Result<BenchCell> {
    let started = Instant::now();
    let (labeling, anmi, sweeps) = match algorithm {
        Algorithm::KAnmi => {
            let result = KAnmi::new(k).fit(dataset)?;
            (result.labels, result.final_anmi, Some(result.sweeps_run))
        }
        Algorithm::Squeezer => {
            let (labeling, _) = squeezer_targeting(dataset, k)?;
            let anmi = dataset_anmi(dataset, &labeling)?;
            (labeling, anmi, None)
        }
    };
    let seconds = started.elapsed().as_secs_f64();
    let error = dataset
        .ground_truth()
        .map(|classes| accuracy(&labeling, classes).map(|r| r.error))
        .transpose()?;
    Ok(BenchCell {
        rows: dataset.len(),
        k,
        clusters_found: labeling.num_labels(),
        seconds,
        anmi,
        sweeps,
        error,
    })
}

/// Header row (when one was requested) plus the data rows of a delimited file.
type RawTable = (Option<Vec<String>>, Vec<Vec<String>>);

/// Reads a delimited file into a header (if requested) plus data rows.
/// Rows whose field count differs from the first data row fail with the
/// 1-based file line number.
fn read_rows(path: &Path, delimiter: char, has_header: bool) -> Result<RawTable> {
    if !delimiter.is_ascii() {
        return Err(Error::InvalidManifest(format!(
            "delimiter {delimiter:?} is not an ASCII character"
        )));
    }
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter as u8)
        .has_headers(false)
        .flexible(true)
        .from_reader(file);

    let mut header = None;
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut expected: Option<usize> = None;
    for (index, record) in reader.records().enumerate() {
        let record = record?;
        let line = record
            .position()
            .map_or(index + 1, |p| p.line() as usize);
        let fields: Vec<String> = record.iter().map(str::to_string).collect();
        if index == 0 && has_header {
            header = Some(fields);
            continue;
        }
        match expected {
            None => expected = Some(fields.len()),
            Some(width) if width != fields.len() => {
                return Err(Error::RaggedRow {
                    row: line,
                    expected: width,
                    found: fields.len(),
                });
            }
            Some(_) => {}
        }
        rows.push(fields);
    }
    Ok((header, rows))
}

fn resolve_column(
    reference: &ColumnRef,
    header: Option<&[String]>,
    width: usize,
) -> Result<usize> {
    match reference {
        ColumnRef::Index(index) => {
            if *index >= width {
                Err(Error::InvalidManifest(format!(
                    "class column {index} out of range (rows have {width} fields)"
                )))
            } else {
                Ok(*index)
            }
        }
        ColumnRef::Name(name) => {
            let header = header.ok_or_else(|| {
                Error::InvalidManifest(format!(
                    "class column {name:?} given by name, but the file was read without --header"
                ))
            })?;
            header.iter().position(|h| h == name).ok_or_else(|| {
                Error::InvalidManifest(format!("class column {name:?} not found in the header"))
            })
        }
    }
}

/// Splits off the class column (if any) and builds the dataset with ground
/// truth attached.
fn assemble_dataset(mut rows: Vec<Vec<String>>, class_index: Option<usize>) -> Result<Dataset> {
    match class_index {
        None => Dataset::from_rows(&rows),
        Some(index) => {
            let mut class_tokens = Vec::with_capacity(rows.len());
            for row in &mut rows {
                class_tokens.push(row.remove(index));
            }
            let mut dataset = Dataset::from_rows(&rows)?;
            let (classes, names) = Labeling::from_tokens(&class_tokens)?;
            dataset.set_ground_truth(classes, Some(names))?;
            Ok(dataset)
        }
    }
}

/// Loads a CSV file as a dataset, holding out the class column when given.
pub fn load_dataset(
    path: &Path,
    delimiter: char,
    has_header: bool,
    class_column: Option<&ColumnRef>,
) -> Result<Dataset> {
    let (header, rows) = read_rows(path, delimiter, has_header)?;
    let width = rows.first().map_or(0, Vec::len);
    let class_index = class_column
        .map(|c| resolve_column(c, header.as_deref(), width))
        .transpose()?;
    assemble_dataset(rows, class_index)
}

fn read_column(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .split_terminator('\n')
        .map(|line| line.trim_end_matches('\r').to_string())
        .collect())
}

fn write_labels(path: &Path, labeling: &Labeling) -> Result<()> {
    let mut text = String::with_capacity(labeling.len() * 2);
    for label in labeling.iter() {
        text.push_str(&label.to_string());
        text.push('\n');
    }
    write_text(path, &text)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

fn print_cluster_report(manifest: &RunManifest, report: &ClusterReport) {
    println!(
        "clustered {} records x {} attributes into {} clusters ({})",
        report.records, report.attributes, report.clusters_found, report.algorithm
    );
    print!("anmi {:.6}  {:.3}s", report.anmi, report.seconds);
    if let Some(sweeps) = report.sweeps_run {
        print!("  sweeps {sweeps}");
    }
    if let Some(threshold) = report.threshold {
        print!("  threshold {threshold:.4}");
    }
    println!();
    if let Some(eval) = &report.evaluation {
        println!(
            "error {:.4}  accuracy {:.4} (against the held-out class column)",
            eval.error, eval.accuracy
        );
    }
    if let Some(path) = &manifest.labels_out {
        println!("labels -> {}", path.display());
    }
    if let Some(path) = &manifest.report_out {
        println!("report -> {}", path.display());
    }
}

fn print_evaluation(report: &EvaluationReport) {
    println!(
        "{} clusters: accuracy {:.4}, error {:.4}",
        report.k, report.accuracy, report.error
    );
    println!("{:>8} {:>8} {:>16} {:>10}", "cluster", "size", "dominant class", "count");
    for row in &report.per_cluster {
        println!(
            "{:>8} {:>8} {:>16} {:>10}",
            row.cluster, row.cluster_size, row.dominant_class, row.dominant_count
        );
    }
}

fn bench_csv(report: &BenchReport) -> String {
    let mut text = String::from("rows,k,clusters_found,seconds,anmi,error\n");
    for cell in &report.cells {
        let error = cell
            .error
            .map_or_else(String::new, |e| format!("{e}"));
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            cell.rows, cell.k, cell.clusters_found, cell.seconds, cell.anmi, error
        ));
    }
    text
}

fn print_bench_report(report: &BenchReport) {
    println!(
        "{} benchmark, {} mode",
        report.algorithm,
        match report.mode {
            BenchMode::RowScaling => "row-scaling",
            BenchMode::ClusterScaling => "cluster-scaling",
        }
    );
    println!(
        "{:>9} {:>4} {:>9} {:>9} {:>9}",
        "rows", "k", "seconds", "anmi", "error"
    );
    for cell in &report.cells {
        let error = cell
            .error
            .map_or_else(|| "-".to_string(), |e| format!("{e:.4}"));
        println!(
            "{:>9} {:>4} {:>9.3} {:>9.4} {:>9}",
            cell.rows, cell.k, cell.seconds, cell.anmi, error
        );
    }
    if let Some(avg) = report.average_error {
        println!("average error {avg:.4}");
    }
}
