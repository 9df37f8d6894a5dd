// Drive the move engine by hand: score every relocation of one record,
// apply the best, then let full sweeps finish the job.
//
//   cargo run --release --example incremental_moves
//
// `evaluate_move` answers "what would the objective be if this record moved
// there?" by shifting two histogram cells per attribute and shifting them
// back — no rescan of the dataset, no rebuild of the state.

use kanmi::ClusterState;
use kanmi::model::Dataset;

fn main() -> kanmi::Result<()> {
    let rows: Vec<Vec<String>> = [
        ["a", "x"],
        ["a", "x"],
        ["a", "y"],
        ["b", "y"],
        ["b", "y"],
        ["b", "x"],
        ["a", "y"],
        ["b", "x"],
    ]
    .iter()
    .map(|r| r.iter().map(|s| s.to_string()).collect())
    .collect();
    let dataset = Dataset::from_rows(&rows)?;

    let mut state = ClusterState::initialize(&dataset, 2)?;
    println!("seeded assignment: {:?}", state.labels());
    println!("cluster sizes:     {:?}", state.cluster_sizes());
    println!("objective:         {:.12}", state.anmi());
    println!();

    // Score each destination for record 6. Staying put is target == current,
    // which must reproduce the present objective exactly.
    let record = 6;
    let current = state.labels()[record] as usize;
    println!("candidate moves for record {record} (currently cluster {current}):");
    let mut best: Option<(u32, f64)> = None;
    for target in 0..state.k() as u32 {
        let score = state.evaluate_move(record, target)?;
        let marker = if target as usize == current { " (stay)" } else { "" };
        println!("  -> cluster {target}: {score:.12}{marker}");
        if target as usize != current && best.is_none_or(|(_, s)| score > s) {
            best = Some((target, score));
        }
    }

    let (target, score) = best.expect("k >= 2 always offers an alternative");
    if score > state.anmi() {
        state.apply_move(record, target)?;
        println!("moved record {record} to cluster {target}, objective now {:.12}", state.anmi());
    } else {
        println!("record {record} is already placed as well as it can be");
    }
    println!();

    // Full sweeps visit every record in order; each one stops improving
    // eventually, and a sweep with zero moves means a local optimum.
    let mut pass = 1;
    loop {
        let moves = state.sweep(0.0);
        println!("sweep {pass}: {moves} moves, objective {:.12}", state.anmi());
        if moves == 0 {
            break;
        }
        pass += 1;
    }
    println!("final assignment: {:?}", state.labels());
    Ok(())
}
