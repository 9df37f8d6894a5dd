// Frequency histograms and the distance family built on them.
//
//   cargo run --release --example histograms_and_metrics
//
// Shows that the expensive record-to-set distance (average Hamming against
// every member) collapses to a single lookup per attribute once the set is
// summarized by per-attribute histograms, and that distance + similarity
// always sum to the attribute count.

use kanmi::metrics::{hamming, histogram_distance, histogram_similarity, mean_hamming};
use kanmi::model::Dataset;

fn main() -> kanmi::Result<()> {
    let rows: Vec<Vec<String>> = [
        ["red", "small", "smooth"],
        ["red", "large", "smooth"],
        ["green", "small", "rough"],
        ["red", "small", "rough"],
        ["green", "large", "smooth"],
    ]
    .iter()
    .map(|r| r.iter().map(|s| s.to_string()).collect())
    .collect();
    let dataset = Dataset::from_rows(&rows)?;
    let hists = dataset.histograms();

    println!("value frequencies per attribute:");
    for attribute in 0..dataset.num_attributes() {
        let h = hists.get(attribute);
        let pairs: Vec<String> = h
            .iter()
            .map(|(v, c)| format!("{}={c}", dataset.value_token(attribute, v)))
            .collect();
        println!("  attribute {attribute}: {}", pairs.join(", "));
    }
    println!();

    let probe = dataset.record(0);

    // Pairwise Hamming distances from the probe to each record.
    for (i, other) in dataset.records().iter().enumerate() {
        println!("hamming(record 0, record {i}) = {}", hamming(probe, other)?);
    }
    println!();

    // The set-level distance two ways: averaging the pairwise distances,
    // and reading mismatched mass out of the histograms. Same number.
    let averaged = mean_hamming(probe, dataset.records())?;
    let from_hists = histogram_distance(probe, &hists)?;
    println!("mean hamming (pairwise):    {averaged}");
    println!("mean hamming (histograms):  {from_hists}");
    assert_eq!(averaged.to_bits(), from_hists.to_bits());

    let similarity = histogram_similarity(probe, &hists)?;
    println!("similarity  (histograms):   {similarity}");
    println!(
        "distance + similarity = {} = number of attributes",
        from_hists + similarity
    );
    Ok(())
}
