//! The acceptance gate: ten numbered criteria, one test (and therefore one
//! pass/fail line) each.
//!
//!  1. distance identities on random data
//!  2. histogram-path and contingency-path information scores agree
//!  3. exact contingency quantities on a hand-checkable table
//!  4. monotone convergence of the search
//!  5. incremental histogram state matches a scratch rebuild after
//!     a thousand random move operations
//!  6. congressional-votes error band          (needs a local data file)
//!  7. mushroom error band                     (needs a local data file)
//!  8. breast-cancer error band                (needs a local data file)
//!  9. runtime grows linearly with row count
//! 10. planted classes with no noise are recovered exactly
//!
//! Criteria 6-8 replay published benchmarks on the classic UCI tables,
//! which are not redistributed with this repository. Those tests are
//! `#[ignore]`d so the default suite is self-contained; place the files
//! under `data/` (or point `KANMI_DATA_DIR` at them) and run
//!
//! ```bash
//! cargo test -p kanmi --test acceptance -- --include-ignored
//! ```
//!
//! to execute the full gate. See `data/README.md` for file names and
//! formats. The tests fail with placement instructions when a file is
//! missing rather than silently passing.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use kanmi::experiments::{self, Algorithm, GeneratorSpec, accuracy, benchmark, generate};
use kanmi::information::{contingency, nmi, nmi_from_histograms};
use kanmi::metrics::{histogram_distance, histogram_similarity, mean_hamming};
use kanmi::model::{Dataset, Histogram, Labeling};
use kanmi::{ClusterState, KAnmi};

// ---------------------------------------------------------------------------
// helpers

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random categorical table: `n` rows, `r` attributes, and a per-attribute
/// alphabet of at most `max_p` symbols.
fn random_dataset(rng: &mut ChaCha8Rng, n: usize, r: usize, max_p: usize) -> Dataset {
    let arities: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=max_p)).collect();
    let rows: Vec<Vec<String>> = (0..n)
        .map(|_| {
            arities
                .iter()
                .map(|&p| format!("v{}", rng.gen_range(0..p)))
                .collect()
        })
        .collect();
    Dataset::from_rows(&rows).expect("generated rows are rectangular and non-empty")
}

/// A uniformly random labeling of `n` records that uses all `k` labels.
fn random_labeling(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Labeling {
    assert!(n >= k);
    let mut labels: Vec<u32> = (0..n).map(|i| (i % k) as u32).collect();
    labels.shuffle(rng);
    Labeling::new(labels).expect("all k labels are present by construction")
}

/// The ten-record, two-attribute reference table used by criterion 3. Its
/// first attribute splits 5/5 and its second 3/3/4, so every contingency
/// quantity can be checked by hand.
fn reference_table() -> Dataset {
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
    Dataset::from_rows(&rows).unwrap()
}

/// Directory holding the UCI files: `$KANMI_DATA_DIR` if set, else `data/`
/// at the workspace root.
fn data_dir() -> PathBuf {
    match std::env::var_os("KANMI_DATA_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

/// Finds the first of `names` under the data directory, or panics with
/// placement instructions (a missing benchmark input is a red result, not
/// a silent pass).
fn find_data_file(names: &[&str]) -> PathBuf {
    let dir = data_dir();
    for name in names {
        let candidate = dir.join(name);
        if candidate.is_file() {
            return candidate;
        }
    }
    panic!(
        "benchmark input not found: expected one of {names:?} in {} \
         (override with KANMI_DATA_DIR); see data/README.md for the \
         download locations and formats",
        dir.display()
    );
}

fn read_csv_rows(path: &PathBuf) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| line.split(',').map(str::to_string).collect())
        .collect()
}

/// Loads a headerless CSV whose first column is the class label.
fn load_class_first(path: &PathBuf) -> Dataset {
    let mut rows = read_csv_rows(path);
    let classes: Vec<String> = rows.iter_mut().map(|row| row.remove(0)).collect();
    let mut dataset = Dataset::from_rows(&rows).unwrap();
    let (truth, names) = Labeling::from_tokens(&classes).unwrap();
    dataset.set_ground_truth(truth, Some(names)).unwrap();
    dataset
}

/// Loads the original breast-cancer table: sample id in column 0 (dropped),
/// nine feature columns, class in column 10. Records with missing values
/// (`?`) are dropped, leaving 683 of the 699.
fn load_cancer(path: &PathBuf) -> Dataset {
    let rows = read_csv_rows(path);
    let mut features = Vec::new();
    let mut classes = Vec::new();
    for mut row in rows {
        if row.iter().any(|field| field == "?") {
            continue;
        }
        assert_eq!(row.len(), 11, "expected id + 9 attributes + class");
        let class = row.pop().unwrap();
        row.remove(0);
        features.push(row);
        classes.push(class);
    }
    let mut dataset = Dataset::from_rows(&features).unwrap();
    let (truth, names) = Labeling::from_tokens(&classes).unwrap();
    dataset.set_ground_truth(truth, Some(names)).unwrap();
    dataset
}

/// The published protocol: one run per k in 2..=9, errors averaged.
fn average_error_over_ks(dataset: &Dataset) -> f64 {
    let ks: Vec<usize> = (2..=9).collect();
    benchmark(dataset, Algorithm::KAnmi, &ks)
        .unwrap()
        .average_error
}

/// Least-squares coefficient of determination for y against x.
fn r_squared(points: &[(f64, f64)]) -> f64 {
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
    1.0 - ss_res / ss_tot
}

// ---------------------------------------------------------------------------
// criteria

/// Over 200 random datasets and probes: the averaged pairwise Hamming
/// distance equals the histogram-derived distance, and distance plus
/// similarity equals the attribute count — each to 1e-12, in under 5 s.
#[test]
fn criterion_01_distance_identities() {
    let start = Instant::now();
    let mut rng = rng(0xD15);
    for _ in 0..200 {
        let n = rng.gen_range(1..=50);
        let r = rng.gen_range(1..=6);
        let dataset = random_dataset(&mut rng, n, r, 5);
        let hists = dataset.histograms();
        for _ in 0..3 {
            let probe = dataset.record(rng.gen_range(0..n));
            let averaged = mean_hamming(probe, dataset.records()).unwrap();
            let from_hists = histogram_distance(probe, &hists).unwrap();
            let similarity = histogram_similarity(probe, &hists).unwrap();
            assert!(
                (averaged - from_hists).abs() <= 1e-12,
                "pairwise {averaged} vs histogram {from_hists}"
            );
            assert!(
                (from_hists + similarity - r as f64).abs() <= 1e-12,
                "distance {from_hists} + similarity {similarity} != {r}"
            );
        }
    }
    assert!(
        start.elapsed() < Duration::from_secs(5),
        "took {:?}, budget 5 s",
        start.elapsed()
    );
}

/// Over 200 random (cluster state, attribute) pairs: the score computed
/// from the state's histograms matches the raw contingency-table
/// computation on labelings to 1e-12, is symmetric, and stays in [0, 1].
/// Budget 10 s.
#[test]
fn criterion_02_information_score_equivalence() {
    let start = Instant::now();
    let mut rng = rng(0x1F0);
    for _ in 0..200 {
        let n = rng.gen_range(2..=50);
        let r = rng.gen_range(1..=6);
        let dataset = random_dataset(&mut rng, n, r, 5);
        let k = rng.gen_range(2..=n.min(6));
        let labeling = random_labeling(&mut rng, n, k);
        let state = ClusterState::from_labeling(&dataset, &labeling).unwrap();

        let attribute = rng.gen_range(0..r);
        let clusters: Vec<Histogram> = (0..k)
            .map(|c| state.cluster_histogram(c, attribute).clone())
            .collect();
        let from_histograms =
            nmi_from_histograms(state.attribute_histogram(attribute), &clusters).unwrap();

        let attr_partition = dataset.attribute_labeling(attribute).unwrap();
        let from_labelings = nmi(&labeling, &attr_partition).unwrap();

        assert!(
            (from_histograms - from_labelings).abs() <= 1e-12,
            "histogram path {from_histograms} vs contingency path {from_labelings}"
        );
        let reversed = nmi(&attr_partition, &labeling).unwrap();
        assert_eq!(
            from_labelings.to_bits(),
            reversed.to_bits(),
            "score must not depend on argument order"
        );
        assert!(
            (-1e-12..=1.0 + 1e-12).contains(&from_labelings),
            "score {from_labelings} outside [0, 1]"
        );
    }
    assert!(
        start.elapsed() < Duration::from_secs(10),
        "took {:?}, budget 10 s",
        start.elapsed()
    );
}

/// On the reference table split into first-half/second-half clusters, every
/// contingency quantity the engine reports is exact: 10 records, 2 groups
/// on each side, a first cluster of 5, 5 records sharing the first value of
/// attribute 0 overall, and 3 of them inside the first cluster.
#[test]
fn criterion_03_contingency_quantities() {
    let dataset = reference_table();
    assert_eq!(dataset.len(), 10);

    let halves = Labeling::new(vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1]).unwrap();
    assert_eq!(halves.num_labels(), 2);

    let attr0 = dataset.attribute_labeling(0).unwrap();
    assert_eq!(attr0.num_labels(), 2);

    let state = ClusterState::from_labeling(&dataset, &halves).unwrap();
    assert_eq!(state.cluster_sizes()[0], 5);
    // Value ids follow first appearance, so "M" is value 0 of attribute 0.
    assert_eq!(state.attribute_histogram(0).count(0), 5);
    assert_eq!(state.cluster_histogram(0, 0).count(0), 3);

    // The same quantities straight from the contingency table.
    let table = contingency(&halves, &attr0).unwrap();
    assert_eq!(table.total(), 10);
    assert_eq!(table.row_sum(0), 5);
    assert_eq!(table.col_sum(0), 5);
    assert_eq!(table.count(0, 0), 3);
}

/// On a battery of random datasets: the per-sweep objective history never
/// decreases, any sweep that moved a record strictly improved it, the run
/// ends with a zero-move sweep inside the sweep budget, and (replaying the
/// search by hand) every individual accepted move strictly improves the
/// objective.
#[test]
fn criterion_04_monotone_convergence() {
    let mut rng = rng(0xC0);
    for round in 0..40 {
        let n = rng.gen_range(2..=60);
        let r = rng.gen_range(1..=6);
        let dataset = random_dataset(&mut rng, n, r, 5);
        let k = rng.gen_range(2..=n.min(6));

        let result = KAnmi::new(k).fit(&dataset).unwrap();
        assert_eq!(result.anmi_history.len(), result.sweeps_run + 1);
        assert_eq!(result.moves_per_sweep.len(), result.sweeps_run);
        for window in result.anmi_history.windows(2) {
            assert!(window[1] >= window[0], "objective decreased in round {round}");
        }
        for (sweep, &moves) in result.moves_per_sweep.iter().enumerate() {
            if moves > 0 {
                assert!(
                    result.anmi_history[sweep + 1] > result.anmi_history[sweep],
                    "sweep {sweep} moved {moves} records without improving"
                );
            }
        }
        assert!(result.converged, "round {round} should settle well within the budget");
        assert_eq!(result.moves_per_sweep.last(), Some(&0));
        assert!(result.sweeps_run <= kanmi::algorithm::DEFAULT_MAX_SWEEPS);
    }

    // Per-move check: replay the sweep policy one move at a time and watch
    // the objective after every accepted move.
    let mut rng = self::rng(0xC1);
    for _ in 0..8 {
        let n = rng.gen_range(4..=40);
        let r = rng.gen_range(1..=5);
        let dataset = random_dataset(&mut rng, n, r, 4);
        let k = rng.gen_range(2..=n.min(5));
        let mut state = ClusterState::initialize(&dataset, k).unwrap();
        let mut guard = 0;
        loop {
            let mut moved = false;
            for record in 0..n {
                let from = state.labels()[record];
                if state.cluster_sizes()[from as usize] == 1 {
                    continue;
                }
                let mut best: Option<(u32, f64)> = None;
                for target in (0..k as u32).filter(|&t| t != from) {
                    let score = state.evaluate_move(record, target).unwrap();
                    if best.is_none_or(|(_, s)| score > s) {
                        best = Some((target, score));
                    }
                }
                let (target, score) = best.unwrap();
                let current = state.anmi();
                if score > current {
                    state.apply_move(record, target).unwrap();
                    assert!(
                        state.anmi() > current,
                        "accepted move did not strictly improve the objective"
                    );
                    moved = true;
                }
            }
            if !moved {
                break;
            }
            guard += 1;
            assert!(guard <= 1000, "search failed to reach a local optimum");
        }
    }
}

/// After 1,000 random move evaluations — some applied, some merely probed
/// and reverted — the incrementally maintained state is bitwise identical
/// to one rebuilt from scratch off the same labeling.
#[test]
fn criterion_05_incremental_histogram_consistency() {
    let mut rng = rng(0x1157);
    let dataset = random_dataset(&mut rng, 120, 5, 5);
    let k = 4;
    let mut state = ClusterState::initialize(&dataset, k).unwrap();

    for _ in 0..1_000 {
        let record = rng.gen_range(0..dataset.len());
        let target = rng.gen_range(0..k as u32);
        if rng.gen_bool(0.5) {
            // Probe only: evaluate_move shifts the histograms and must shift
            // them back.
            let _ = state.evaluate_move(record, target);
        } else {
            // Apply when legal; moves out of singleton clusters are refused
            // and must leave the state untouched.
            let _ = state.apply_move(record, target);
        }
    }

    let rebuilt = ClusterState::from_labeling(&dataset, &state.labeling()).unwrap();
    assert_eq!(state.cluster_sizes(), rebuilt.cluster_sizes());
    for attribute in 0..dataset.num_attributes() {
        assert_eq!(
            state.attribute_histogram(attribute),
            rebuilt.attribute_histogram(attribute)
        );
        for cluster in 0..k {
            assert_eq!(
                state.cluster_histogram(cluster, attribute),
                rebuilt.cluster_histogram(cluster, attribute),
                "cluster {cluster}, attribute {attribute} diverged"
            );
        }
    }
    assert_eq!(
        state.anmi().to_bits(),
        rebuilt.anmi().to_bits(),
        "cached objective diverged from scratch recomputation"
    );
    // The cached per-cluster terms feed move evaluation; spot-check that
    // both states would score the same candidate moves bit for bit.
    let mut rebuilt = rebuilt;
    for _ in 0..20 {
        let record = rng.gen_range(0..dataset.len());
        let target = rng.gen_range(0..k as u32);
        let live = state.evaluate_move(record, target);
        let fresh = rebuilt.evaluate_move(record, target);
        match (live, fresh) {
            (Ok(a), Ok(b)) => assert_eq!(a.to_bits(), b.to_bits()),
            (Err(_), Err(_)) => {}
            (a, b) => panic!("evaluation disagreement: {a:?} vs {b:?}"),
        }
    }
}

/// Congressional-votes replay: average error over k = 2..9 within
/// 0.092 ± 0.05, in under 60 s. Needs data/house-votes-84.data.
#[test]
#[ignore = "needs the congressional-votes data file; see data/README.md, then run with --include-ignored"]
fn criterion_06_votes_error_band() {
    let start = Instant::now();
    let path = find_data_file(&["house-votes-84.data", "votes.csv"]);
    let dataset = load_class_first(&path);
    assert_eq!(dataset.len(), 435, "votes should have 435 records");
    assert_eq!(dataset.num_attributes(), 16);

    let average = average_error_over_ks(&dataset);
    let published = experiments::reference::VOTES.k_anmi;
    println!("votes: average error {average:.4} (published {published:.3})");
    assert!(
        (average - published).abs() <= 0.05,
        "average error {average:.4} outside {published} ± 0.05"
    );
    assert!(
        start.elapsed() < Duration::from_secs(60),
        "took {:?}, budget 60 s",
        start.elapsed()
    );
}

/// Mushroom replay: average error over k = 2..9 within 0.165 ± 0.07, in
/// under 15 min. Needs data/agaricus-lepiota.data.
#[test]
#[ignore = "needs the mushroom data file; see data/README.md, then run with --include-ignored"]
fn criterion_07_mushroom_error_band() {
    let start = Instant::now();
    let path = find_data_file(&["agaricus-lepiota.data", "mushroom.csv"]);
    let dataset = load_class_first(&path);
    assert_eq!(dataset.len(), 8124, "mushroom should have 8124 records");
    assert_eq!(dataset.num_attributes(), 22);

    let average = average_error_over_ks(&dataset);
    let published = experiments::reference::MUSHROOM.k_anmi;
    println!("mushroom: average error {average:.4} (published {published:.3})");
    assert!(
        (average - published).abs() <= 0.07,
        "average error {average:.4} outside {published} ± 0.07"
    );
    assert!(
        start.elapsed() < Duration::from_secs(15 * 60),
        "took {:?}, budget 15 min",
        start.elapsed()
    );
}

/// Breast-cancer replay: average error over k = 2..9 within 0.039 ± 0.05,
/// and the k = 2 error specifically must clear the 0.345 single-cluster
/// baseline by a wide margin (≤ 0.15). Needs
/// data/breast-cancer-wisconsin.data.
#[test]
#[ignore = "needs the breast-cancer data file; see data/README.md, then run with --include-ignored"]
fn criterion_08_cancer_error_band() {
    let path = find_data_file(&["breast-cancer-wisconsin.data", "cancer.csv"]);
    let dataset = load_cancer(&path);
    assert_eq!(dataset.len(), 683, "683 complete records after dropping 16");
    assert_eq!(dataset.num_attributes(), 9);

    let ks: Vec<usize> = (2..=9).collect();
    let report = benchmark(&dataset, Algorithm::KAnmi, &ks).unwrap();
    let average = report.average_error;
    let published = experiments::reference::CANCER.k_anmi;
    println!("cancer: average error {average:.4} (published {published:.3})");
    assert!(
        (average - published).abs() <= 0.05,
        "average error {average:.4} outside {published} ± 0.05"
    );
    let at_two = report.runs.iter().find(|run| run.k == 2).unwrap();
    assert!(
        at_two.error <= 0.15,
        "k = 2 error {:.4} does not beat the 0.345 single-cluster baseline convincingly",
        at_two.error
    );
}

/// Runtimes at k = 2 over 12.5k/25k/50k/100k generated rows (10 attributes,
/// 10 classes) fit a line with R² ≥ 0.9.
#[test]
fn criterion_09_linear_runtime_scaling() {
    let sizes = [12_500usize, 25_000, 50_000, 100_000];
    let mut points = Vec::new();
    for rows in sizes {
        let spec = GeneratorSpec::new(rows, 10, 10).with_seed(5);
        let dataset = generate(&spec).unwrap();
        // Best of two runs, to keep scheduler noise out of the fit.
        let mut best = f64::INFINITY;
        for _ in 0..2 {
            let start = Instant::now();
            let result = KAnmi::new(2).fit(&dataset).unwrap();
            best = best.min(start.elapsed().as_secs_f64());
            assert!(result.converged);
        }
        points.push((rows as f64, best));
    }
    let fit = r_squared(&points);
    println!("scaling points {points:?}, r² = {fit:.4}");
    assert!(fit >= 0.9, "runtime vs rows fit r² = {fit:.4} < 0.9");
}

/// With skew 1.0 every record is its class's prototype row, so clustering
/// at k = c must recover the planted classes with zero error.
#[test]
fn criterion_10_pure_class_recovery() {
    for classes in 2..=5 {
        for (rows, seed) in [(100, 1), (500, 2), (1_000, 3)] {
            let spec = GeneratorSpec::new(rows, 6, classes)
                .with_seed(seed)
                .with_skew(1.0);
            let dataset = generate(&spec).unwrap();
            let result = KAnmi::new(classes).fit(&dataset).unwrap();
            let truth = dataset.ground_truth().unwrap();
            let eval = accuracy(&result.labels, truth).unwrap();
            assert_eq!(
                eval.error, 0.0,
                "c = {classes}, n = {rows}, seed {seed}: error {}",
                eval.error
            );
        }
    }
}
