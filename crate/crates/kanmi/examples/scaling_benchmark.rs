// Runtime as a function of dataset size: per-sweep work touches each
// record a constant number of times, so doubling the rows should roughly
// double the wall time.
//
//   cargo run --release --example scaling_benchmark            # up to 100k rows
//   cargo run --release --example scaling_benchmark -- 400000  # up to 400k rows

use std::time::Instant;

use kanmi::KAnmi;
use kanmi::experiments::{GeneratorSpec, generate};

/// Least-squares line through (x, y) points, as (slope, intercept, r²).
fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let var_x: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let slope = cov / var_x;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    (slope, intercept, 1.0 - ss_res / ss_tot)
}

fn main() -> kanmi::Result<()> {
    let max_rows: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("row count must be a positive integer"))
        .unwrap_or(100_000);

    let sizes = [max_rows / 8, max_rows / 4, max_rows / 2, max_rows];
    let mut points = Vec::new();

    println!("{:>9} {:>9} {:>7} {:>10}", "rows", "seconds", "sweeps", "objective");
    for rows in sizes {
        let spec = GeneratorSpec::new(rows, 10, 10).with_seed(5).with_skew(0.9);
        let dataset = generate(&spec)?;
        let start = Instant::now();
        let result = KAnmi::new(2).fit(&dataset)?;
        let seconds = start.elapsed().as_secs_f64();
        println!(
            "{rows:>9} {seconds:>9.3} {:>7} {:>10.6}",
            result.sweeps_run, result.final_anmi
        );
        points.push((rows as f64, seconds));
    }

    let (slope, _, r_squared) = linear_fit(&points);
    println!();
    println!("fit: {:.2} microseconds per row, r² = {r_squared:.4}", slope * 1e6);
    Ok(())
}
