//! The clustering algorithm: greedy label-move search that maximizes
//! average normalized mutual information (ANMI) against the dataset's
//! attribute partitions.
//!
//! The search never looks at raw records after setup. A [`ClusterState`]
//! keeps one histogram per (cluster, attribute) plus one per attribute over
//! the whole dataset; moving a record between clusters touches exactly two
//! histograms per attribute, so candidate moves are scored by updating
//! those, reading off the objective, and reverting.
//!
//! [`KAnmi`] is the front door:
//!
//! ```
//! use kanmi::{Dataset, KAnmi};
//!
//! let rows = vec![
//!     vec!["young", "urban"],
//!     vec!["young", "urban"],
//!     vec!["old", "rural"],
//!     vec!["old", "rural"],
//! ];
//! let dataset = Dataset::from_rows(&rows)?;
//! let result = KAnmi::new(2).fit(&dataset)?;
//! assert_eq!(result.labels.label(0), result.labels.label(1));
//! assert_ne!(result.labels.label(0), result.labels.label(3));
//! # Ok::<(), kanmi::Error>(())
//! ```

use crate::error::{Error, Result};
use crate::information::{cluster_term_sum, nmi_value};
use crate::metrics::matched_mass;
use crate::model::{Dataset, Histogram, HistogramSet, Labeling};

/// Default cap on refinement sweeps.
pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Default minimal ANMI gain for a move to be accepted. Large enough to
/// absorb float noise, far below any genuine improvement.
pub const DEFAULT_IMPROVEMENT_EPSILON: f64 = 1e-12;

/// Configured clustering run. Build with [`KAnmi::new`], adjust the
/// optional knobs, then call [`KAnmi::fit`].
#[derive(Debug, Clone)]
pub struct KAnmi {
    k: usize,
    max_sweeps: usize,
    improvement_epsilon: f64,
}

impl KAnmi {
    /// A run that will produce exactly `k` clusters.
    pub fn new(k: usize) -> Self {
        KAnmi {
            k,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            improvement_epsilon: DEFAULT_IMPROVEMENT_EPSILON,
        }
    }

    /// Caps the number of refinement sweeps (default 100). The search
    /// normally stops much earlier, at the first sweep with no moves.
    pub fn max_sweeps(mut self, max_sweeps: usize) -> Self {
        self.max_sweeps = max_sweeps;
        self
    }

    /// Minimal ANMI gain for a move to be accepted (default `1e-12`).
    /// Raising it trades solution quality for earlier termination.
    pub fn improvement_epsilon(mut self, epsilon: f64) -> Self {
        self.improvement_epsilon = epsilon;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidK { k: self.k });
        }
        if self.max_sweeps < 1 {
            return Err(Error::InvalidConfig(
                "max_sweeps must be at least 1".to_string(),
            ));
        }
        if !self.improvement_epsilon.is_finite() || self.improvement_epsilon < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "improvement_epsilon must be finite and non-negative (got {})",
                self.improvement_epsilon
            )));
        }
        Ok(())
    }

    /// Clusters the dataset: seed the first `k` records into clusters
    /// `0..k`, assign every later record to the most similar cluster, then
    /// sweep until no record wants to move.
    pub fn fit(&self, dataset: &Dataset) -> Result<KAnmiResult> {
        self.validate()?;
        let mut state = ClusterState::initialize(dataset, self.k)?;
        Ok(self.drive(&mut state))
    }

    /// Like [`KAnmi::fit`], but starts from a caller-supplied labeling
    /// (which must already have exactly `k` groups) instead of the built-in
    /// seeding.
    pub fn refine(&self, dataset: &Dataset, initial: &Labeling) -> Result<KAnmiResult> {
        self.validate()?;
        if initial.num_labels() != self.k {
            return Err(Error::InvalidConfig(format!(
                "initial labeling has {} groups, expected k = {}",
                initial.num_labels(),
                self.k
            )));
        }
        let mut state = ClusterState::from_labeling(dataset, initial)?;
        Ok(self.drive(&mut state))
    }

    fn drive(&self, state: &mut ClusterState) -> KAnmiResult {
        let mut anmi_history = vec![state.anmi()];
        let mut moves_per_sweep = Vec::new();
        let mut converged = false;
        for _ in 0..self.max_sweeps {
            let moves = state.sweep(self.improvement_epsilon);
            moves_per_sweep.push(moves);
            anmi_history.push(state.anmi());
            if moves == 0 {
                converged = true;
                break;
            }
        }
        KAnmiResult {
            labels: state.labeling(),
            final_anmi: *anmi_history.last().expect("history is never empty"),
            sweeps_run: moves_per_sweep.len(),
            anmi_history,
            moves_per_sweep,
            converged,
        }
    }
}

/// Outcome of a clustering run.
#[derive(Debug, Clone, PartialEq)]
pub struct KAnmiResult {
    /// Final cluster assignment, one label per record.
    pub labels: Labeling,
    /// Objective value of `labels`.
    pub final_anmi: f64,
    /// Number of sweeps executed.
    pub sweeps_run: usize,
    /// ANMI after initialization, then after each sweep
    /// (`sweeps_run + 1` entries, non-decreasing).
    pub anmi_history: Vec<f64>,
    /// Accepted moves in each sweep; the last entry is 0 unless the sweep
    /// cap cut the search short.
    pub moves_per_sweep: Vec<usize>,
    /// Whether the search reached a sweep with no moves (a local optimum)
    /// rather than the sweep cap.
    pub converged: bool,
}

/// A live clustering of a dataset, maintained entirely as histograms.
///
/// Holds the label vector, the per-cluster sizes, one histogram per
/// (cluster, attribute), the whole-dataset histogram per attribute, and a
/// cache of each cluster's mutual-information contribution. All mutation
/// goes through [`ClusterState::apply_move`], which keeps every view
/// consistent; rebuilding the state from its own labels reproduces it
/// exactly, including the float cache.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState<'a> {
    dataset: &'a Dataset,
    k: usize,
    labels: Vec<u32>,
    sizes: Vec<u64>,
    /// Cluster-major: entry `cluster * r + attribute`.
    cluster_hists: Vec<Histogram>,
    attr_hists: HistogramSet,
    /// Attribute-major: entry `attribute * k + cluster` holds that
    /// cluster's term sum against the attribute's base histogram.
    term_sums: Vec<f64>,
}

impl<'a> ClusterState<'a> {
    /// Seeds the first `k` records into clusters `0..k`, then assigns each
    /// remaining record, in order, to the cluster whose current histograms
    /// are most similar to it (mean per-attribute match share; ties go to
    /// the lowest cluster id).
    pub fn initialize(dataset: &'a Dataset, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK { k });
        }
        if dataset.len() < k {
            return Err(Error::TooFewRecords {
                n: dataset.len(),
                k,
            });
        }
        let r = dataset.num_attributes();
        let mut cluster_hists: Vec<Histogram> = (0..k)
            .flat_map(|_| (0..r).map(|i| Histogram::new(i, dataset.value_count(i))))
            .collect();
        let mut sizes = vec![0u64; k];
        let mut labels = Vec::with_capacity(dataset.len());

        for (t, rec) in dataset.records().iter().enumerate() {
            let target = if t < k {
                t
            } else {
                // Argmax of matched_mass / size over clusters, compared as
                // exact rationals so ties break on the index, not on float
                // rounding.
                let mut best = 0usize;
                let mut best_mass = matched_mass(rec, &cluster_hists[..r]);
                for h in 1..k {
                    let mass = matched_mass(rec, &cluster_hists[h * r..(h + 1) * r]);
                    if (mass as u128) * u128::from(sizes[best])
                        > (best_mass as u128) * u128::from(sizes[h])
                    {
                        best = h;
                        best_mass = mass;
                    }
                }
                best
            };
            for i in 0..r {
                cluster_hists[target * r + i].add(rec.value(i));
            }
            sizes[target] += 1;
            labels.push(target as u32);
        }

        Ok(Self::build(dataset, labels, k))
    }

    /// Wraps an existing labeling of the dataset in a consistent state.
    pub fn from_labeling(dataset: &'a Dataset, labeling: &Labeling) -> Result<Self> {
        if labeling.len() != dataset.len() {
            return Err(Error::LengthMismatch {
                left: dataset.len(),
                right: labeling.len(),
            });
        }
        Ok(Self::build(
            dataset,
            labeling.labels().to_vec(),
            labeling.num_labels(),
        ))
    }

    /// Builds sizes, histograms and the term cache from a label vector
    /// known to be dense over `0..k`.
    fn build(dataset: &'a Dataset, labels: Vec<u32>, k: usize) -> Self {
        let r = dataset.num_attributes();
        let n = dataset.len() as u64;
        let attr_hists = dataset.histograms();
        let mut cluster_hists: Vec<Histogram> = (0..k)
            .flat_map(|_| (0..r).map(|i| Histogram::new(i, dataset.value_count(i))))
            .collect();
        let mut sizes = vec![0u64; k];
        for (rec, &l) in dataset.records().iter().zip(&labels) {
            let l = l as usize;
            for i in 0..r {
                cluster_hists[l * r + i].add(rec.value(i));
            }
            sizes[l] += 1;
        }
        let mut term_sums = vec![0.0; r * k];
        for i in 0..r {
            for h in 0..k {
                term_sums[i * k + h] =
                    cluster_term_sum(&cluster_hists[h * r + i], attr_hists.get(i), n);
            }
        }
        ClusterState {
            dataset,
            k,
            labels,
            sizes,
            cluster_hists,
            attr_hists,
            term_sums,
        }
    }

    pub fn dataset(&self) -> &'a Dataset {
        self.dataset
    }

    /// Number of clusters.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// The current assignment as a validated labeling.
    pub fn labeling(&self) -> Labeling {
        Labeling::new(self.labels.clone()).expect("cluster labels stay dense over 0..k")
    }

    pub fn cluster_sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Histogram of one attribute inside one cluster.
    pub fn cluster_histogram(&self, cluster: usize, attribute: usize) -> &Histogram {
        &self.cluster_hists[cluster * self.dataset.num_attributes() + attribute]
    }

    /// Whole-dataset histogram of one attribute.
    pub fn attribute_histogram(&self, attribute: usize) -> &Histogram {
        self.attr_hists.get(attribute)
    }

    /// Current objective value: the mean, over attributes, of the
    /// normalized mutual information between the clustering and the
    /// partition the attribute induces.
    pub fn anmi(&self) -> f64 {
        let n = self.dataset.len() as u64;
        let r = self.dataset.num_attributes();
        let mut sum = 0.0;
        for i in 0..r {
            let mut term = 0.0;
            for h in 0..self.k {
                term += self.term_sums[i * self.k + h];
            }
            sum += nmi_value(term, n, self.k, self.dataset.value_count(i));
        }
        sum / r as f64
    }

    fn check_move(&self, record: usize, target: u32) -> Result<(usize, usize)> {
        if record >= self.labels.len() {
            return Err(Error::RecordOutOfRange {
                index: record,
                len: self.labels.len(),
            });
        }
        let target = target as usize;
        if target >= self.k {
            return Err(Error::ClusterOutOfRange {
                id: target as u32,
                k: self.k,
            });
        }
        let from = self.labels[record] as usize;
        if from != target && self.sizes[from] == 1 {
            return Err(Error::WouldEmptyCluster {
                record,
                cluster: from,
            });
        }
        Ok((from, target))
    }

    /// Shifts `record`'s mass between two clusters' histograms.
    fn shift(&mut self, record: usize, out_of: usize, into: usize) {
        let r = self.dataset.num_attributes();
        let rec = self.dataset.record(record);
        for i in 0..r {
            let v = rec.value(i);
            self.cluster_hists[out_of * r + i].remove(v);
            self.cluster_hists[into * r + i].add(v);
        }
        self.sizes[out_of] -= 1;
        self.sizes[into] += 1;
    }

    /// ANMI the state would have after moving `record` to cluster `target`,
    /// leaving the state unchanged.
    ///
    /// Works by applying the move to the two affected clusters' histograms,
    /// reading the objective off the refreshed terms, and reverting —
    /// cheaper by a factor of `k` than rebuilding, and producing the exact
    /// same float as a rebuilt state would.
    ///
    /// Fails if the move would empty the record's current cluster.
    pub fn evaluate_move(&mut self, record: usize, target: u32) -> Result<f64> {
        let (from, target) = self.check_move(record, target)?;
        if from == target {
            return Ok(self.anmi());
        }
        self.shift(record, from, target);

        let n = self.dataset.len() as u64;
        let r = self.dataset.num_attributes();
        let mut sum = 0.0;
        for i in 0..r {
            let mut term = 0.0;
            for h in 0..self.k {
                term += if h == from || h == target {
                    cluster_term_sum(&self.cluster_hists[h * r + i], self.attr_hists.get(i), n)
                } else {
                    self.term_sums[i * self.k + h]
                };
            }
            sum += nmi_value(term, n, self.k, self.dataset.value_count(i));
        }
        let candidate = sum / r as f64;

        self.shift(record, target, from);
        Ok(candidate)
    }

    /// Moves `record` to cluster `target` and refreshes every affected
    /// view. Fails if the move would empty the record's current cluster.
    pub fn apply_move(&mut self, record: usize, target: u32) -> Result<()> {
        let (from, target) = self.check_move(record, target)?;
        if from == target {
            return Ok(());
        }
        self.shift(record, from, target);
        self.labels[record] = target as u32;

        let n = self.dataset.len() as u64;
        let r = self.dataset.num_attributes();
        for i in 0..r {
            for h in [from, target] {
                self.term_sums[i * self.k + h] =
                    cluster_term_sum(&self.cluster_hists[h * r + i], self.attr_hists.get(i), n);
            }
        }
        Ok(())
    }

    /// One pass over all records in order. Each record is offered every
    /// other cluster; it moves to the best one if that improves the
    /// objective by more than `improvement_epsilon` (ties prefer the lowest
    /// cluster id), and the objective baseline is refreshed after every
    /// accepted move. Records alone in their cluster stay put. Returns the
    /// number of accepted moves.
    pub fn sweep(&mut self, improvement_epsilon: f64) -> usize {
        let n = self.labels.len();
        let mut moves = 0;
        let mut current = self.anmi();
        for record in 0..n {
            let from = self.labels[record];
            if self.sizes[from as usize] == 1 {
                continue;
            }
            let mut best: Option<(f64, u32)> = None;
            for target in 0..self.k as u32 {
                if target == from {
                    continue;
                }
                let candidate = self
                    .evaluate_move(record, target)
                    .expect("in-range, non-emptying move");
                if best.is_none_or(|(b, _)| candidate > b) {
                    best = Some((candidate, target));
                }
            }
            if let Some((candidate, target)) = best {
                if candidate - current > improvement_epsilon {
                    self.apply_move(record, target)
                        .expect("evaluated move stays valid");
                    moves += 1;
                    current = self.anmi();
                }
            }
        }
        moves
    }
}
