// The k = 2..9 benchmark protocol on a labeled CSV, with published error
// rates for the classic datasets shown alongside when recognized.
//
//   cargo run --release --example uci_benchmark -- data/votes.csv 0
//   cargo run --release --example uci_benchmark -- data/mushroom.csv 0
//   cargo run --release --example uci_benchmark -- path/to/file.csv class
//
// The second argument names the ground-truth column: a number means a
// 0-based index into a headerless file, anything else means a header name.
// With no arguments a synthetic stand-in is generated so the example is
// runnable out of the box.
//
// Protocol: run each algorithm once per k in 2..=9, score each labeling by
// clustering error (1 - accuracy), and average the eight errors.

use std::path::PathBuf;

use kanmi::cli::{ColumnRef, load_dataset};
use kanmi::experiments::{
    Algorithm, BenchmarkReport, GeneratorSpec, benchmark, generate, reference,
};
use kanmi::model::Dataset;

fn print_report(report: &BenchmarkReport) {
    println!("{}:", report.algorithm);
    println!("{:>4} {:>9} {:>8} {:>10} {:>9}", "k", "clusters", "error", "objective", "seconds");
    for run in &report.runs {
        println!(
            "{:>4} {:>9} {:>8.4} {:>10.6} {:>9.3}",
            run.k, run.clusters_found, run.error, run.anmi, run.seconds
        );
    }
    println!("average error: {:.4}", report.average_error);
    println!();
}

fn load(args: &[String]) -> kanmi::Result<(Dataset, String)> {
    match args {
        [] => {
            println!("no input given; benchmarking a generated 500-record dataset\n");
            let spec = GeneratorSpec::new(500, 10, 3).with_seed(7).with_skew(0.7);
            Ok((generate(&spec)?, String::from("synthetic")))
        }
        [path, class] => {
            let path = PathBuf::from(path);
            let column: ColumnRef = class.parse().expect("column parsing is infallible");
            // Numeric column references address headerless files; named ones
            // imply a header row.
            let has_header = matches!(column, ColumnRef::Name(_));
            let dataset = load_dataset(&path, ',', has_header, Some(&column))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((dataset, name))
        }
        _ => {
            eprintln!("usage: uci_benchmark [file.csv class-column]");
            std::process::exit(2);
        }
    }
}

fn main() -> kanmi::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (dataset, name) = load(&args)?;
    println!(
        "{name}: {} records, {} attributes, {} classes",
        dataset.len(),
        dataset.num_attributes(),
        dataset.ground_truth().map_or(0, |t| t.num_labels())
    );
    println!();

    let ks: Vec<usize> = (2..=9).collect();
    for algorithm in [Algorithm::KAnmi, Algorithm::Squeezer] {
        print_report(&benchmark(&dataset, algorithm, &ks)?);
    }

    let published = [reference::VOTES, reference::MUSHROOM, reference::CANCER]
        .into_iter()
        .find(|r| name.contains(r.dataset));
    if let Some(r) = published {
        println!("published average errors for {}:", r.dataset);
        println!(
            "  squeezer {:.3}, gaclust {:.3}, ccdByEnsemble {:.3}, this search {:.3}",
            r.squeezer, r.gaclust, r.ccd_by_ensemble, r.k_anmi
        );
    }
    Ok(())
}
