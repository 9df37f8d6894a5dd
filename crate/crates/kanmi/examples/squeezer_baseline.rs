// The one-pass baseline: threshold-driven cluster growth, and bisection
// to hit a requested cluster count.
//
//   cargo run --release --example squeezer_baseline
//
// The baseline reads each record once. A record joins the existing cluster
// it matches best if the per-attribute match rate clears a threshold;
// otherwise it founds a new cluster. Low thresholds are permissive (few
// clusters), high thresholds are strict (many clusters).

use kanmi::KAnmi;
use kanmi::experiments::{GeneratorSpec, accuracy, generate, squeezer, squeezer_targeting};

fn main() -> kanmi::Result<()> {
    let spec = GeneratorSpec::new(400, 8, 4).with_seed(3).with_skew(0.75);
    let dataset = generate(&spec)?;
    let truth = dataset.ground_truth().expect("generator plants classes");

    println!("threshold sweep on {} records, {} attributes:", dataset.len(), dataset.num_attributes());
    for threshold in [1.0, 2.0, 3.0, 4.0, 5.0, 6.0] {
        let labels = squeezer(&dataset, threshold)?;
        let eval = accuracy(&labels, truth)?;
        println!(
            "  threshold {threshold:>4.1}: {:>3} clusters, error {:.4}",
            labels.num_labels(),
            eval.error
        );
    }
    println!();

    // Bisection finds the threshold whose cluster count is closest to the
    // request; one-pass growth can't always hit the count exactly.
    let want = spec.classes;
    let (labels, threshold) = squeezer_targeting(&dataset, want)?;
    let eval = accuracy(&labels, truth)?;
    println!(
        "targeting {want} clusters: threshold {threshold:.4} gives {} clusters, error {:.4}",
        labels.num_labels(),
        eval.error
    );

    let kanmi_eval = accuracy(&KAnmi::new(want).fit(&dataset)?.labels, truth)?;
    println!("iterative search at k = {want}: error {:.4}", kanmi_eval.error);
    Ok(())
}
