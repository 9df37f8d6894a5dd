//! Mutual-information agreement between partitions.
//!
//! [`nmi`] scores how much two labelings of the same records agree, on a
//! 0-to-1 scale that is invariant to label renaming. [`anmi`] averages that
//! score against a set of base partitions; with the base set taken to be a
//! dataset's attribute-induced partitions it becomes the objective the
//! clustering loop maximizes.
//!
//! Two computation paths produce the same quantity: a contingency table
//! between two explicit labelings, and a frequency-only path
//! ([`nmi_from_histograms`]) that needs just the per-cluster and
//! whole-dataset value histograms. The second is what makes incremental
//! cluster moves cheap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Dataset, Histogram, Labeling};

/// Cross-tabulation of two labelings: cell `(h, g)` counts the records
/// labeled `h` by the first and `g` by the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    /// Row-major cell counts.
    counts: Vec<u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn count(&self, row: usize, col: usize) -> u64 {
        self.counts[row * self.cols + col]
    }

    pub fn row_sum(&self, row: usize) -> u64 {
        self.row_sums[row]
    }

    pub fn col_sum(&self, col: usize) -> u64 {
        self.col_sums[col]
    }

    /// Number of records tabulated.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The same table with the two labelings' roles swapped.
    pub fn transposed(&self) -> ContingencyTable {
        let mut counts = vec![0u64; self.counts.len()];
        for h in 0..self.rows {
            for g in 0..self.cols {
                counts[g * self.rows + h] = self.counts[h * self.cols + g];
            }
        }
        ContingencyTable {
            rows: self.cols,
            cols: self.rows,
            counts,
            row_sums: self.col_sums.clone(),
            col_sums: self.row_sums.clone(),
            total: self.total,
        }
    }
}

/// Cross-tabulates two labelings of the same records.
pub fn contingency(a: &Labeling, b: &Labeling) -> Result<ContingencyTable> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let rows = a.num_labels();
    let cols = b.num_labels();
    let mut counts = vec![0u64; rows * cols];
    for (la, lb) in a.iter().zip(b.iter()) {
        counts[la as usize * cols + lb as usize] += 1;
    }
    let mut row_sums = vec![0u64; rows];
    let mut col_sums = vec![0u64; cols];
    for h in 0..rows {
        for g in 0..cols {
            let c = counts[h * cols + g];
            row_sums[h] += c;
            col_sums[g] += c;
        }
    }
    Ok(ContingencyTable {
        rows,
        cols,
        counts,
        row_sums,
        col_sums,
        total: a.len() as u64,
    })
}

/// Final assembly of a mutual-information sum into the normalized score:
/// scales by `2 / (n * ln(ka * kb))`. Two single-group partitions carry no
/// information either way and count as perfect agreement.
pub(crate) fn nmi_value(term_sum: f64, total: u64, ka: usize, kb: usize) -> f64 {
    if ka == 1 && kb == 1 {
        return 1.0;
    }
    let ln_base = ((ka * kb) as f64).ln();
    2.0 * term_sum / (total as f64 * ln_base)
}

/// One group's contribution to the mutual-information sum against a base
/// partition, read off histograms: for each value the group contains,
/// `count * ln(count * n / (group_size * base_count))`. Zero-count values
/// contribute nothing and are skipped.
pub(crate) fn cluster_term_sum(cluster: &Histogram, base: &Histogram, total: u64) -> f64 {
    let n = total as f64;
    let group_size = cluster.total() as f64;
    let mut sum = 0.0;
    for (value, count) in cluster.iter() {
        let base_count = base.count(value) as f64;
        sum += count as f64 * ((count as f64 * n) / (group_size * base_count)).ln();
    }
    sum
}

fn nmi_oriented(t: &ContingencyTable) -> f64 {
    let n = t.total as f64;
    let mut term_sum = 0.0;
    for h in 0..t.rows {
        let row_size = t.row_sums[h] as f64;
        let mut row = 0.0;
        for g in 0..t.cols {
            let c = t.counts[h * t.cols + g];
            if c == 0 {
                continue;
            }
            let col_size = t.col_sums[g] as f64;
            row += c as f64 * ((c as f64 * n) / (row_size * col_size)).ln();
        }
        term_sum += row;
    }
    nmi_value(term_sum, t.total, t.rows, t.cols)
}

/// Normalized mutual information of the two labelings behind a table.
///
/// The score is symmetric by definition; to make it symmetric to the last
/// bit despite non-associative float addition, the table is first put into
/// a canonical orientation, so both argument orders sum identical terms in
/// identical order.
pub fn nmi_from_table(table: &ContingencyTable) -> f64 {
    let t = table.transposed();
    let original_key = (table.rows, table.cols, &table.counts);
    let transposed_key = (t.rows, t.cols, &t.counts);
    if original_key <= transposed_key {
        nmi_oriented(table)
    } else {
        nmi_oriented(&t)
    }
}

/// Normalized mutual information between two labelings of the same records.
///
/// Ranges over `[0, 1]`: 0 for independent partitions, 1 for identical
/// partitions with equal-sized groups. Exactly symmetric in its arguments.
pub fn nmi(a: &Labeling, b: &Labeling) -> Result<f64> {
    Ok(nmi_from_table(&contingency(a, b)?))
}

/// Normalized mutual information between a grouping and a base partition,
/// computed from frequencies alone: `base` is one attribute's histogram
/// over all records, `clusters` the same attribute's histogram inside each
/// group.
///
/// Equivalent to [`nmi`] between the group labeling and the partition the
/// base attribute induces, but needs no per-record data. The cluster
/// histograms must add up to the base histogram value by value.
pub fn nmi_from_histograms(base: &Histogram, clusters: &[Histogram]) -> Result<f64> {
    let total = base.total();
    if total == 0 {
        return Err(Error::ZeroTotal);
    }
    if clusters.is_empty() {
        return Err(Error::InconsistentTotals(
            "no cluster histograms were provided".to_string(),
        ));
    }
    let mut cluster_mass: u64 = 0;
    for (h, cluster) in clusters.iter().enumerate() {
        if cluster.is_empty() {
            return Err(Error::InconsistentTotals(format!(
                "cluster {h} has an empty histogram"
            )));
        }
        cluster_mass += cluster.total();
    }
    if cluster_mass != total {
        return Err(Error::InconsistentTotals(format!(
            "cluster histograms cover {cluster_mass} records, base covers {total}"
        )));
    }
    for (value, base_count) in base.iter() {
        let spread: u64 = clusters.iter().map(|c| c.count(value)).sum();
        if spread != base_count {
            return Err(Error::InconsistentTotals(format!(
                "value {value} appears {spread} times across clusters but {base_count} times in the base histogram"
            )));
        }
    }

    let mut term_sum = 0.0;
    for cluster in clusters {
        term_sum += cluster_term_sum(cluster, base, total);
    }
    Ok(nmi_value(term_sum, total, clusters.len(), base.num_values()))
}

/// Average normalized mutual information of a candidate labeling against a
/// set of base partitions: the plain mean of the pairwise scores.
pub fn anmi(candidate: &Labeling, base_partitions: &[Labeling]) -> Result<f64> {
    if base_partitions.is_empty() {
        return Err(Error::EmptyBaseSet);
    }
    let mut sum = 0.0;
    for base in base_partitions {
        sum += nmi(candidate, base)?;
    }
    Ok(sum / base_partitions.len() as f64)
}

/// [`anmi`] against a dataset's attribute-induced partitions — the
/// objective that clustering maximizes.
pub fn dataset_anmi(dataset: &Dataset, candidate: &Labeling) -> Result<f64> {
    anmi(candidate, &dataset.attribute_labelings())
}
