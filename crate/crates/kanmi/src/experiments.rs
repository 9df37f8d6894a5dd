//! Evaluation against ground truth, the Squeezer baseline, a synthetic
//! data generator, and a small benchmark harness.
//!
//! These are the pieces needed to reproduce the standard experimental
//! protocol for categorical clusterers: cluster a labeled dataset at
//! several values of `k`, score each run by how well clusters line up with
//! the held-out classes, and average the errors.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algorithm::KAnmi;
use crate::error::{Error, Result};
use crate::information::{contingency, ContingencyTable};
use crate::metrics::matched_mass;
use crate::model::{Dataset, Histogram, Labeling};

/// Published average clustering errors from the literature for the three
/// UCI benchmarks, for annotating reports. Nothing in this crate computes
/// them; the GAClust and ccdByEnsemble algorithms are not implemented here.
pub mod reference {
    /// Average clustering error over k = 2..9 for one dataset, per
    /// algorithm.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct ReferenceErrors {
        pub dataset: &'static str,
        pub squeezer: f64,
        pub gaclust: f64,
        pub ccd_by_ensemble: f64,
        pub k_anmi: f64,
    }

    /// Congressional votes (435 records, 16 attributes, 2 classes).
    pub const VOTES: ReferenceErrors = ReferenceErrors {
        dataset: "votes",
        squeezer: 0.163,
        gaclust: 0.136,
        ccd_by_ensemble: 0.115,
        k_anmi: 0.092,
    };

    /// Mushroom (8124 records, 22 attributes, 2 classes).
    pub const MUSHROOM: ReferenceErrors = ReferenceErrors {
        dataset: "mushroom",
        squeezer: 0.206,
        gaclust: 0.393,
        ccd_by_ensemble: 0.315,
        k_anmi: 0.165,
    };

    /// Wisconsin breast cancer (683 records after dropping the 16 with
    /// missing values, 9 attributes, 2 classes).
    pub const CANCER: ReferenceErrors = ReferenceErrors {
        dataset: "cancer",
        squeezer: 0.091,
        gaclust: 0.117,
        ccd_by_ensemble: 0.071,
        k_anmi: 0.039,
    };
}

/// The dominant class inside one cluster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDominant {
    pub cluster: u32,
    /// Class id that occurs most often in the cluster (lowest id on ties).
    pub dominant_class: u32,
    /// How many of the cluster's records carry that class.
    pub dominant_count: u64,
    pub cluster_size: u64,
}

/// How well a clustering recovers known classes.
///
/// Accuracy is the share of records whose cluster's dominant class is
/// their own: sum the dominant-class count over clusters, divide by n.
/// Error is its complement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    /// Number of clusters evaluated.
    pub k: usize,
    pub accuracy: f64,
    pub error: f64,
    pub per_cluster: Vec<ClusterDominant>,
    /// Clusters × classes cross-tabulation.
    pub confusion: ContingencyTable,
}

/// Scores a clustering against ground-truth classes.
///
/// Both label vectors must cover the same records in the same order. The
/// score is invariant under renaming of cluster ids and of class ids.
pub fn accuracy(labels: &Labeling, classes: &Labeling) -> Result<EvaluationReport> {
    let confusion = contingency(labels, classes)?;
    let k = confusion.rows();
    let mut per_cluster = Vec::with_capacity(k);
    let mut dominant_mass: u64 = 0;
    for cluster in 0..k {
        let mut dominant_class = 0usize;
        let mut dominant_count = 0u64;
        for class in 0..confusion.cols() {
            let count = confusion.count(cluster, class);
            if count > dominant_count {
                dominant_count = count;
                dominant_class = class;
            }
        }
        dominant_mass += dominant_count;
        per_cluster.push(ClusterDominant {
            cluster: cluster as u32,
            dominant_class: dominant_class as u32,
            dominant_count,
            cluster_size: confusion.row_sum(cluster),
        });
    }
    let accuracy = dominant_mass as f64 / confusion.total() as f64;
    Ok(EvaluationReport {
        k,
        accuracy,
        error: 1.0 - accuracy,
        per_cluster,
        confusion,
    })
}

/// One-pass threshold clustering, as a baseline.
///
/// The first record founds cluster 0. Each later record is compared to
/// every existing cluster by mean per-attribute match share against the
/// cluster's histograms ([`crate::metrics::histogram_similarity`]); it
/// joins the most similar cluster if that similarity reaches `threshold`
/// (ties to the lowest cluster id), otherwise it founds a new cluster.
///
/// Similarities range over `[0, r]` for `r` attributes, so thresholds at 0
/// yield one cluster and thresholds above `r` yield all singletons.
pub fn squeezer(dataset: &Dataset, threshold: f64) -> Result<Labeling> {
    if !threshold.is_finite() || threshold < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "similarity threshold must be finite and non-negative (got {threshold})"
        )));
    }
    let r = dataset.num_attributes();
    // cluster-major flattened histograms, r per cluster, grown as clusters
    // are founded
    let mut hists: Vec<Histogram> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    let mut labels: Vec<u32> = Vec::with_capacity(dataset.len());

    for rec in dataset.records() {
        // best existing cluster by exact rational comparison of
        // mass / size, ties to the lowest id
        let mut best: Option<(usize, u64)> = None;
        for h in 0..sizes.len() {
            let mass = matched_mass(rec, &hists[h * r..(h + 1) * r]);
            match best {
                Some((bh, bmass))
                    if (mass as u128) * u128::from(sizes[bh])
                        <= (bmass as u128) * u128::from(sizes[h]) => {}
                _ => best = Some((h, mass)),
            }
        }
        let target = match best {
            Some((h, mass)) if mass as f64 / sizes[h] as f64 >= threshold => h,
            _ => {
                // found a new cluster
                hists.extend((0..r).map(|i| Histogram::new(i, dataset.value_count(i))));
                sizes.push(0);
                sizes.len() - 1
            }
        };
        for i in 0..r {
            hists[target * r + i].add(rec.value(i));
        }
        sizes[target] += 1;
        labels.push(target as u32);
    }
    Labeling::new(labels)
}

/// Searches for a similarity threshold at which [`squeezer`] yields `k`
/// clusters, by bisection over `[0, r]`.
///
/// The cluster count is not strictly monotone in the threshold, so an
/// exact hit may not exist; the labeling whose cluster count lands closest
/// to `k` is returned, together with the threshold that produced it.
pub fn squeezer_targeting(dataset: &Dataset, k: usize) -> Result<(Labeling, f64)> {
    if k < 1 || k > dataset.len() {
        return Err(Error::InvalidConfig(format!(
            "cluster target {k} out of range for {} records",
            dataset.len()
        )));
    }
    let mut lo = 0.0f64;
    let mut hi = dataset.num_attributes() as f64 + 1.0;
    let mut best: Option<(Labeling, f64, usize)> = None;
    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        let labeling = squeezer(dataset, mid)?;
        let found = labeling.num_labels();
        let distance = found.abs_diff(k);
        if best.as_ref().is_none_or(|(_, _, d)| distance < *d) {
            best = Some((labeling, mid, distance));
        }
        if distance == 0 {
            break;
        }
        if found < k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (labeling, threshold, _) = best.expect("at least one bisection step ran");
    Ok((labeling, threshold))
}

/// Shape of a synthetic categorical dataset with known classes.
///
/// Classes are assigned in rotation (record `i` gets class `i mod
/// classes`), so class sizes stay balanced and any window of `classes`
/// consecutive records covers every class — in particular the records a
/// clusterer seeds from. Each attribute then draws its value from the
/// record's class distribution, which puts probability `skew` on one
/// class-specific preferred value and spreads the rest uniformly. With
/// `skew = 1.0` every class becomes a fixed prototype vector — recoverable
/// exactly by a clusterer — and lower skew blurs the classes into each
/// other. Distinct prototypes for all classes require
/// `values_per_attribute >= classes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub rows: usize,
    pub attributes: usize,
    pub classes: usize,
    pub values_per_attribute: usize,
    /// Probability mass on the preferred value, in `(0, 1]`.
    pub skew: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    /// Spec with `values_per_attribute` matching the class count, skew 0.9
    /// and seed 0; adjust fields directly for anything else.
    pub fn new(rows: usize, attributes: usize, classes: usize) -> Self {
        GeneratorSpec {
            rows,
            attributes,
            classes,
            values_per_attribute: classes.max(2),
            skew: 0.9,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_skew(mut self, skew: f64) -> Self {
        self.skew = skew;
        self
    }

    fn validate(&self) -> Result<()> {
        let complain = |msg: String| Err(Error::InvalidGeneratorSpec(msg));
        if self.classes < 1 {
            return complain("need at least one class".to_string());
        }
        if self.rows < self.classes {
            return complain(format!(
                "need at least as many rows as classes ({} < {})",
                self.rows, self.classes
            ));
        }
        if self.attributes < 1 {
            return complain("need at least one attribute".to_string());
        }
        if self.values_per_attribute < 2 {
            return complain(format!(
                "need at least two values per attribute (got {})",
                self.values_per_attribute
            ));
        }
        if !(self.skew > 0.0 && self.skew <= 1.0) {
            return complain(format!("skew must lie in (0, 1] (got {})", self.skew));
        }
        Ok(())
    }
}

/// Generates a dataset from the spec, with the class column attached as
/// ground truth. Deterministic: the same spec always produces the same
/// dataset.
pub fn generate(spec: &GeneratorSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let p = spec.values_per_attribute;
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(spec.rows);
    let mut class_tokens: Vec<String> = Vec::with_capacity(spec.rows);
    for row_index in 0..spec.rows {
        let class = row_index % spec.classes;
        let mut row = Vec::with_capacity(spec.attributes);
        for attribute in 0..spec.attributes {
            let preferred = (class + attribute) % p;
            let value = if rng.gen::<f64>() < spec.skew {
                preferred
            } else {
                // uniform over the other p - 1 values
                (preferred + rng.gen_range(1..p)) % p
            };
            row.push(format!("v{value}"));
        }
        rows.push(row);
        class_tokens.push(format!("c{class}"));
    }
    let mut dataset = Dataset::from_rows(&rows)?;
    let (classes, names) = Labeling::from_tokens(&class_tokens)?;
    dataset.set_ground_truth(classes, Some(names))?;
    Ok(dataset)
}

/// Which clusterer a benchmark run drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    KAnmi,
    Squeezer,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::KAnmi => write!(f, "k-anmi"),
            Algorithm::Squeezer => write!(f, "squeezer"),
        }
    }
}

/// One clustering run at one value of `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRun {
    pub k: usize,
    /// Clusters actually produced (the threshold baseline may miss `k`).
    pub clusters_found: usize,
    pub error: f64,
    pub accuracy: f64,
    /// Objective value of the produced labeling.
    pub anmi: f64,
    /// Wall-clock seconds for the clustering call alone.
    pub seconds: f64,
    /// Sweep count, where the algorithm has one.
    pub sweeps: Option<usize>,
}

/// Per-`k` errors plus their average — one column of the usual comparison
/// tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub algorithm: Algorithm,
    pub runs: Vec<BenchmarkRun>,
    pub average_error: f64,
}

/// Runs one clustering per requested `k` against a dataset with ground
/// truth and reports per-`k` errors and their average. Each `k` gets a
/// single run — no restarts.
pub fn benchmark(dataset: &Dataset, algorithm: Algorithm, ks: &[usize]) -> Result<BenchmarkReport> {
    let classes = dataset.ground_truth().ok_or(Error::MissingGroundTruth)?;
    if ks.is_empty() {
        return Err(Error::InvalidConfig(
            "benchmark needs at least one value of k".to_string(),
        ));
    }
    let mut runs = Vec::with_capacity(ks.len());
    let mut error_sum = 0.0;
    for &k in ks {
        let started = Instant::now();
        let (labeling, sweeps) = match algorithm {
            Algorithm::KAnmi => {
                let result = KAnmi::new(k).fit(dataset)?;
                (result.labels, Some(result.sweeps_run))
            }
            Algorithm::Squeezer => {
                let (labeling, _threshold) = squeezer_targeting(dataset, k)?;
                (labeling, None)
            }
        };
        let seconds = started.elapsed().as_secs_f64();
        let evaluation = accuracy(&labeling, classes)?;
        let anmi = crate::information::dataset_anmi(dataset, &labeling)?;
        error_sum += evaluation.error;
        runs.push(BenchmarkRun {
            k,
            clusters_found: labeling.num_labels(),
            error: evaluation.error,
            accuracy: evaluation.accuracy,
            anmi,
            seconds,
            sweeps,
        });
    }
    Ok(BenchmarkReport {
        algorithm,
        average_error: error_sum / ks.len() as f64,
        runs,
    })
}
