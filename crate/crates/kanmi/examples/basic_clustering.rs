// Cluster a small inline table and inspect the result.
//
//   cargo run --release --example basic_clustering

use kanmi::KAnmi;
use kanmi::model::Dataset;

fn main() -> kanmi::Result<()> {
    // Eight legislators, three recorded votes each. The first four tend to
    // vote one way, the last four the other, with one defector per bloc.
    let rows = vec![
        vec!["yes", "yes", "no"],
        vec!["yes", "yes", "no"],
        vec!["yes", "no", "no"],
        vec!["yes", "yes", "yes"],
        vec!["no", "no", "yes"],
        vec!["no", "no", "yes"],
        vec!["no", "yes", "yes"],
        vec!["no", "no", "no"],
    ];
    let rows: Vec<Vec<String>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(String::from).collect())
        .collect();
    let dataset = Dataset::from_rows(&rows)?;

    let result = KAnmi::new(2).fit(&dataset)?;

    println!("records:   {}", dataset.len());
    println!("clusters:  {}", result.labels.num_labels());
    println!("sweeps:    {}", result.sweeps_run);
    println!("converged: {}", result.converged);
    println!("objective: {:.6}", result.final_anmi);
    println!();

    // The objective history has one entry per sweep boundary, starting from
    // the seeded assignment, and never decreases.
    println!("objective per sweep: {:?}", result.anmi_history);
    println!("moves per sweep:     {:?}", result.moves_per_sweep);
    println!();

    for (i, label) in result.labels.iter().enumerate() {
        let votes: Vec<&str> = (0..dataset.num_attributes())
            .map(|a| dataset.value_token(a, dataset.record(i).value(a)))
            .collect();
        println!("legislator {i}: cluster {label}  votes {votes:?}");
    }
    Ok(())
}
