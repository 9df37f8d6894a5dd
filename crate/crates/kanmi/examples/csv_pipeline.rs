// File-level round trip: synthesize a labeled CSV, cluster it, score the
// labels against the held-out class column.
//
//   cargo run --release --example csv_pipeline
//
// This drives the same functions the `kanmi` binary dispatches to, so the
// files it writes are exactly what the command line produces.

use std::fs;

use kanmi::cli::{ColumnRef, RunManifest, cmd_cluster, cmd_eval, cmd_gen};
use kanmi::experiments::{Algorithm, GeneratorSpec};

fn main() -> kanmi::Result<()> {
    let dir = std::env::temp_dir().join("kanmi_csv_pipeline");
    fs::create_dir_all(&dir).map_err(|e| kanmi::Error::io(&dir, e))?;
    let input = dir.join("synthetic.csv");
    let labels_out = dir.join("labels.txt");
    let report_out = dir.join("report.json");

    // Step 1: a 300-row, 6-attribute table with 3 planted classes. The
    // last column is the class; the header names it.
    let spec = GeneratorSpec::new(300, 6, 3).with_seed(11).with_skew(0.8);
    cmd_gen(&spec, &input)?;
    let preview = fs::read_to_string(&input).map_err(|e| kanmi::Error::io(&input, e))?;
    println!("wrote {}:", input.display());
    for line in preview.lines().take(4) {
        println!("  {line}");
    }
    println!("  ...");
    println!();

    // Step 2: cluster, holding the class column out of the feature set by
    // name. The JSON report and one-label-per-line file land next to the
    // input.
    let manifest = RunManifest {
        input: input.clone(),
        delimiter: ',',
        has_header: true,
        class_column: Some(ColumnRef::Name("class".into())),
        algorithm: Algorithm::KAnmi,
        k: 3,
        threshold: None,
        max_sweeps: 100,
        improvement_epsilon: 1e-12,
        labels_out: Some(labels_out.clone()),
        report_out: Some(report_out.clone()),
    };
    let report = cmd_cluster(&manifest)?;
    println!(
        "clustered {} records into {} clusters in {:.3}s (objective {:.6})",
        report.records, report.clusters_found, report.seconds, report.anmi
    );
    if let Some(eval) = &report.evaluation {
        println!("clustering error vs planted classes: {:.4}", eval.error);
    }
    println!();

    // Step 3: the standalone scorer reads the label file back and compares
    // it against any other single-column labeling — here, the class column
    // extracted from the CSV.
    let classes_path = dir.join("classes.txt");
    let classes: Vec<&str> = preview
        .lines()
        .skip(1)
        .map(|line| line.rsplit(',').next().expect("generated rows are non-empty"))
        .collect();
    fs::write(&classes_path, classes.join("\n")).map_err(|e| kanmi::Error::io(&classes_path, e))?;

    let evaluation = cmd_eval(&labels_out, &classes_path)?;
    println!("standalone evaluation: accuracy {:.4}, error {:.4}", evaluation.accuracy, evaluation.error);
    for row in &evaluation.per_cluster {
        println!(
            "  cluster {}: {} records, dominant class {} ({} records)",
            row.cluster, row.cluster_size, row.dominant_class, row.dominant_count
        );
    }
    Ok(())
}
