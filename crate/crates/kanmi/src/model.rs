//! Core data model: categorical datasets, value histograms and labelings.
//!
//! Value tokens are interned to dense per-attribute ids at load time, in
//! first-occurrence order. Everything downstream (distances, histograms,
//! mutual information) works on those ids; the original tokens stay
//! available for reports and file output.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// One row of a dataset: interned value ids, one per attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    values: Vec<u32>,
}

impl Record {
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    /// Value id of the given attribute.
    pub fn value(&self, attribute: usize) -> u32 {
        self.values[attribute]
    }
}

/// A partition of n records, stored as a label vector.
///
/// Label ids are dense: every id in `0..num_labels` occurs at least once.
/// The same type represents candidate clusterings, attribute-induced
/// partitions and ground-truth classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<u32>,
    num_labels: usize,
}

impl Labeling {
    /// Builds a labeling from a raw label vector, validating that the ids
    /// form a gap-free range starting at 0.
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyLabeling);
        }
        let max = *labels.iter().max().expect("non-empty") as usize;
        let mut seen = vec![false; max + 1];
        for &l in &labels {
            seen[l as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::NonContiguousLabels {
                missing: missing as u32,
            });
        }
        Ok(Labeling {
            labels,
            num_labels: max + 1,
        })
    }

    /// Interns arbitrary tokens into dense label ids, assigned in
    /// first-occurrence order. Returns the labeling together with the token
    /// that names each label id.
    pub fn from_tokens<S: AsRef<str>, I: IntoIterator<Item = S>>(
        tokens: I,
    ) -> Result<(Self, Vec<String>)> {
        let mut ids: HashMap<String, u32> = HashMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut labels = Vec::new();
        for tok in tokens {
            let tok = tok.as_ref();
            let id = match ids.get(tok) {
                Some(&id) => id,
                None => {
                    let id = names.len() as u32;
                    ids.insert(tok.to_string(), id);
                    names.push(tok.to_string());
                    id
                }
            };
            labels.push(id);
        }
        if labels.is_empty() {
            return Err(Error::EmptyLabeling);
        }
        let num_labels = names.len();
        Ok((Labeling { labels, num_labels }, names))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of distinct labels actually present.
    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, record: usize) -> u32 {
        self.labels[record]
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.labels.iter().copied()
    }

    /// Size of each label's block, indexed by label id.
    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_labels];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

/// Frequency table of one attribute's values over some record set.
///
/// Backed by a dense vector over the attribute's value universe; entries
/// whose count drops to zero are treated as deleted (`iter` skips them,
/// `num_values` does not count them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    attribute_index: usize,
    counts: Vec<u64>,
    distinct: usize,
    total: u64,
}

impl Histogram {
    /// Empty histogram for an attribute with `universe` distinct values.
    pub fn new(attribute_index: usize, universe: usize) -> Self {
        Histogram {
            attribute_index,
            counts: vec![0; universe],
            distinct: 0,
            total: 0,
        }
    }

    pub fn attribute_index(&self) -> usize {
        self.attribute_index
    }

    /// Sum of all stored frequencies.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of values with a nonzero count (the histogram's size).
    pub fn num_values(&self) -> usize {
        self.distinct
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Frequency of a value id, zero if the value has no entry.
    pub fn count(&self, value: u32) -> u64 {
        self.counts.get(value as usize).copied().unwrap_or(0)
    }

    /// Increments the frequency of `value` by one.
    pub fn add(&mut self, value: u32) {
        let slot = &mut self.counts[value as usize];
        if *slot == 0 {
            self.distinct += 1;
        }
        *slot += 1;
        self.total += 1;
    }

    /// Decrements the frequency of `value` by one, deleting the entry when
    /// it reaches zero.
    ///
    /// Removing a value with no entry is a state-consistency bug and panics.
    pub fn remove(&mut self, value: u32) {
        let slot = &mut self.counts[value as usize];
        assert!(
            *slot > 0,
            "removed value {} absent from histogram of attribute {}",
            value,
            self.attribute_index
        );
        *slot -= 1;
        if *slot == 0 {
            self.distinct -= 1;
        }
        self.total -= 1;
    }

    /// Nonzero entries as `(value id, frequency)`, ascending by value id.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v as u32, c))
    }
}

/// One histogram per attribute, all sharing the same total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramSet {
    histograms: Vec<Histogram>,
    total: u64,
}

impl HistogramSet {
    pub(crate) fn from_parts(histograms: Vec<Histogram>) -> Self {
        let total = histograms.first().map_or(0, Histogram::total);
        debug_assert!(histograms.iter().all(|h| h.total() == total));
        HistogramSet { histograms, total }
    }

    pub fn histograms(&self) -> &[Histogram] {
        &self.histograms
    }

    pub fn get(&self, attribute: usize) -> &Histogram {
        &self.histograms[attribute]
    }

    /// Number of attributes covered.
    pub fn len(&self) -> usize {
        self.histograms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.histograms.is_empty()
    }

    /// Common total of all member histograms.
    pub fn total(&self) -> u64 {
        self.total
    }
}

/// An immutable categorical dataset: n records over r attributes, with the
/// per-attribute value universes and an optional held-out class column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    records: Vec<Record>,
    num_attributes: usize,
    value_universe: Vec<Vec<String>>,
    ground_truth: Option<Labeling>,
    class_names: Option<Vec<String>>,
}

impl Dataset {
    /// Builds a dataset from rows of string tokens, interning values per
    /// attribute in first-occurrence order.
    ///
    /// Fails on an empty input, a row with no fields, or a row whose arity
    /// differs from the first row (the offending 0-based row index is
    /// reported).
    pub fn from_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyDataset)?;
        let num_attributes = first.len();
        if num_attributes == 0 {
            return Err(Error::EmptyDataset);
        }

        let mut intern: Vec<HashMap<String, u32>> = vec![HashMap::new(); num_attributes];
        let mut universe: Vec<Vec<String>> = vec![Vec::new(); num_attributes];
        let mut records = Vec::with_capacity(rows.len());

        for (row_idx, row) in rows.iter().enumerate() {
            if row.len() != num_attributes {
                return Err(Error::RaggedRow {
                    row: row_idx,
                    expected: num_attributes,
                    found: row.len(),
                });
            }
            let mut values = Vec::with_capacity(num_attributes);
            for (i, tok) in row.iter().enumerate() {
                let tok = tok.as_ref();
                let id = match intern[i].get(tok) {
                    Some(&id) => id,
                    None => {
                        let id = universe[i].len() as u32;
                        intern[i].insert(tok.to_string(), id);
                        universe[i].push(tok.to_string());
                        id
                    }
                };
                values.push(id);
            }
            records.push(Record { values });
        }

        Ok(Dataset {
            records,
            num_attributes,
            value_universe: universe,
            ground_truth: None,
            class_names: None,
        })
    }

    /// Attaches a ground-truth class labeling (held out of clustering).
    pub fn set_ground_truth(
        &mut self,
        classes: Labeling,
        class_names: Option<Vec<String>>,
    ) -> Result<()> {
        if classes.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: classes.len(),
            });
        }
        self.ground_truth = Some(classes);
        self.class_names = class_names;
        Ok(())
    }

    /// Number of records, n.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of attributes, r.
    pub fn num_attributes(&self) -> usize {
        self.num_attributes
    }

    /// Number of distinct values of attribute `i` (p_i).
    pub fn value_count(&self, attribute: usize) -> usize {
        self.value_universe[attribute].len()
    }

    /// Original token of a value id.
    pub fn value_token(&self, attribute: usize, value: u32) -> &str {
        &self.value_universe[attribute][value as usize]
    }

    pub fn record(&self, index: usize) -> &Record {
        &self.records[index]
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn ground_truth(&self) -> Option<&Labeling> {
        self.ground_truth.as_ref()
    }

    pub fn class_names(&self) -> Option<&[String]> {
        self.class_names.as_deref()
    }

    /// Partition induced by a single attribute: two records share a label
    /// iff they share that attribute's value. Label ids follow
    /// first-occurrence order, so they coincide with the interned value ids.
    pub fn attribute_labeling(&self, attribute: usize) -> Result<Labeling> {
        if attribute >= self.num_attributes {
            return Err(Error::AttributeOutOfRange {
                index: attribute,
                num_attributes: self.num_attributes,
            });
        }
        let labels: Vec<u32> = self.records.iter().map(|rec| rec.value(attribute)).collect();
        Ok(Labeling {
            labels,
            num_labels: self.value_count(attribute),
        })
    }

    /// All r attribute-induced partitions, in attribute order.
    pub fn attribute_labelings(&self) -> Vec<Labeling> {
        (0..self.num_attributes)
            .map(|i| self.attribute_labeling(i).expect("attribute in range"))
            .collect()
    }

    /// Full-dataset histograms, one per attribute; each totals n.
    pub fn histograms(&self) -> HistogramSet {
        let mut hists: Vec<Histogram> = (0..self.num_attributes)
            .map(|i| Histogram::new(i, self.value_count(i)))
            .collect();
        for rec in &self.records {
            for (i, h) in hists.iter_mut().enumerate() {
                h.add(rec.value(i));
            }
        }
        HistogramSet::from_parts(hists)
    }
}
