// Contingency tables, normalized mutual information, and the averaged
// score that the clustering search maximizes.
//
//   cargo run --release --example information_scores

use kanmi::information::{anmi, contingency, nmi, nmi_from_table};
use kanmi::model::{Dataset, Labeling};

fn main() -> kanmi::Result<()> {
    let rows: Vec<Vec<String>> = [
        ["M", "A"],
        ["M", "B"],
        ["F", "B"],
        ["F", "A"],
        ["M", "C"],
        ["F", "C"],
        ["M", "C"],
        ["F", "C"],
        ["F", "A"],
        ["M", "B"],
    ]
    .iter()
    .map(|r| r.iter().map(|s| s.to_string()).collect())
    .collect();
    let dataset = Dataset::from_rows(&rows)?;

    // A candidate split of the ten records into two groups.
    let candidate = Labeling::new(vec![0, 0, 1, 1, 0, 1, 0, 1, 1, 0])?;

    // Each attribute of a categorical table is itself a partition: records
    // that share a value share a group.
    let attr_partitions = dataset.attribute_labelings();

    let table = contingency(&candidate, &attr_partitions[0])?;
    println!(
        "contingency of candidate vs attribute 0 ({} x {}):",
        table.rows(),
        table.cols()
    );
    print!("{:>12}", "");
    for col in 0..table.cols() {
        print!("{:>8}", dataset.value_token(0, col as u32));
    }
    println!("{:>8}", "sum");
    for row in 0..table.rows() {
        print!("{:>12}", format!("cluster {row}"));
        for col in 0..table.cols() {
            print!("{:>8}", table.count(row, col));
        }
        println!("{:>8}", table.row_sum(row));
    }
    println!();

    // NMI from the table and from the labelings agree; the score is
    // symmetric in its two arguments bit for bit.
    let from_table = nmi_from_table(&table);
    let forward = nmi(&candidate, &attr_partitions[0])?;
    let backward = nmi(&attr_partitions[0], &candidate)?;
    println!("nmi(candidate, attribute 0) = {forward:.12}");
    assert_eq!(forward.to_bits(), from_table.to_bits());
    assert_eq!(forward.to_bits(), backward.to_bits());

    for (i, attr) in attr_partitions.iter().enumerate() {
        println!("nmi(candidate, attribute {i}) = {:.12}", nmi(&candidate, attr)?);
    }

    // The clustering objective: the candidate's average NMI against every
    // attribute partition.
    let score = anmi(&candidate, &attr_partitions)?;
    println!("average nmi over attributes  = {score:.12}");

    // Agreement with each single attribute is a different question from
    // agreement with all of them at once.
    let copy_of_attr0 = attr_partitions[0].clone();
    println!(
        "a verbatim copy of attribute 0 scores {:.12}",
        anmi(&copy_of_attr0, &attr_partitions)?
    );
    Ok(())
}
