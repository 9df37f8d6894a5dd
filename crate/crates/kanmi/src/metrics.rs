//! Distances and similarities between categorical records and record sets.
//!
//! The key pair is [`histogram_distance`] / [`histogram_similarity`]: the
//! mean Hamming distance from a record to every member of a set can be read
//! off the set's value histograms alone, without touching the members. That
//! reduction is what lets the clustering loop in [`crate::algorithm`] run on
//! frequency tables instead of raw records.
//!
//! All set-level quantities are accumulated as integer masses and divided
//! exactly once, so results are deterministic across record orderings.

use crate::error::{Error, Result};
use crate::model::{Histogram, HistogramSet, Record};

/// 0/1 indicator of whether two value ids differ.
pub fn mismatch(a: u32, b: u32) -> u64 {
    u64::from(a != b)
}

/// Hamming distance: the number of attributes on which two records disagree.
pub fn hamming(x: &Record, y: &Record) -> Result<u64> {
    if x.arity() != y.arity() {
        return Err(Error::ArityMismatch {
            left: x.arity(),
            right: y.arity(),
        });
    }
    Ok(x.values()
        .iter()
        .zip(y.values())
        .map(|(&a, &b)| mismatch(a, b))
        .sum())
}

/// Mean Hamming distance from `x` to each record in `set`.
pub fn mean_hamming(x: &Record, set: &[Record]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptyRecordSet);
    }
    let mut mass: u64 = 0;
    for y in set {
        mass += hamming(x, y)?;
    }
    Ok(mass as f64 / set.len() as f64)
}

/// Total frequency mass the histograms place on `x`'s own values: one
/// summand per attribute, each the count of `x`'s value there. `hists` is
/// indexed by attribute, parallel to the record.
pub(crate) fn matched_mass(x: &Record, hists: &[Histogram]) -> u64 {
    x.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| hists[i].count(v))
        .sum()
}

fn check_against(x: &Record, hists: &HistogramSet) -> Result<()> {
    if x.arity() != hists.len() {
        return Err(Error::ArityMismatch {
            left: x.arity(),
            right: hists.len(),
        });
    }
    if hists.total() == 0 {
        return Err(Error::ZeroTotal);
    }
    Ok(())
}

/// Mean Hamming distance from `x` to the set summarized by `hists`,
/// computed from frequencies alone.
///
/// Equals [`mean_hamming`] against the underlying records exactly.
pub fn histogram_distance(x: &Record, hists: &HistogramSet) -> Result<f64> {
    check_against(x, hists)?;
    let total = hists.total();
    let mismatched = x.arity() as u64 * total - matched_mass(x, hists.histograms());
    Ok(mismatched as f64 / total as f64)
}

/// Mean per-attribute match count between `x` and the set summarized by
/// `hists`; the complement of [`histogram_distance`] (they sum to the
/// attribute count).
///
/// Higher means more similar, which makes this the natural score for
/// deciding which cluster a record fits best.
pub fn histogram_similarity(x: &Record, hists: &HistogramSet) -> Result<f64> {
    check_against(x, hists)?;
    Ok(matched_mass(x, hists.histograms()) as f64 / hists.total() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Dataset;
    use crate::test_support::sample_dataset;

    #[test]
    fn hamming_counts_disagreements() {
        let ds = sample_dataset();
        // (M,A) vs (M,B): one attribute differs
        assert_eq!(hamming(ds.record(0), ds.record(1)).unwrap(), 1);
        // (M,A) vs (F,B): both differ
        assert_eq!(hamming(ds.record(0), ds.record(2)).unwrap(), 2);
        // self-distance is zero
        assert_eq!(hamming(ds.record(0), ds.record(0)).unwrap(), 0);
    }

    #[test]
    fn hamming_rejects_arity_mismatch() {
        let a = Dataset::from_rows(&[vec!["x", "y"]]).unwrap();
        let b = Dataset::from_rows(&[vec!["x", "y", "z"]]).unwrap();
        assert!(matches!(
            hamming(a.record(0), b.record(0)),
            Err(Error::ArityMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn mean_hamming_over_whole_fixture() {
        // (M,A) against all ten records: 5 sex mismatches + 7 grade
        // mismatches = 12 total, mean 1.2
        let ds = sample_dataset();
        let d = mean_hamming(ds.record(0), ds.records()).unwrap();
        assert_eq!(d, 1.2);
    }

    #[test]
    fn mean_hamming_rejects_empty_set() {
        let ds = sample_dataset();
        assert!(matches!(
            mean_hamming(ds.record(0), &[]),
            Err(Error::EmptyRecordSet)
        ));
    }

    #[test]
    fn histogram_distance_matches_hand_value() {
        let ds = sample_dataset();
        let hists = ds.histograms();
        let d = histogram_distance(ds.record(0), &hists).unwrap();
        assert_eq!(d, 1.2);
    }

    #[test]
    fn histogram_similarity_matches_hand_value() {
        // (M,A): 5 records match M, 3 match A -> (5 + 3) / 10 = 0.8
        let ds = sample_dataset();
        let hists = ds.histograms();
        let s = histogram_similarity(ds.record(0), &hists).unwrap();
        assert_eq!(s, 0.8);
    }

    #[test]
    fn distance_and_similarity_partition_the_arity() {
        let ds = sample_dataset();
        let hists = ds.histograms();
        for rec in ds.records() {
            let d = histogram_distance(rec, &hists).unwrap();
            let s = histogram_similarity(rec, &hists).unwrap();
            assert!((d + s - ds.num_attributes() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn histogram_distance_equals_mean_hamming_exactly() {
        let ds = sample_dataset();
        let hists = ds.histograms();
        for rec in ds.records() {
            let via_records = mean_hamming(rec, ds.records()).unwrap();
            let via_hists = histogram_distance(rec, &hists).unwrap();
            assert_eq!(via_records.to_bits(), via_hists.to_bits());
        }
    }

    #[test]
    fn empty_histograms_are_rejected() {
        let ds = sample_dataset();
        let empty = crate::model::HistogramSet::from_parts(vec![
            crate::model::Histogram::new(0, 2),
            crate::model::Histogram::new(1, 3),
        ]);
        assert!(matches!(
            histogram_similarity(ds.record(0), &empty),
            Err(Error::ZeroTotal)
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_rows() -> impl Strategy<Value = Vec<Vec<String>>> {
            (1usize..5, 1usize..16).prop_flat_map(|(r, n)| {
                proptest::collection::vec(
                    proptest::collection::vec("[a-d]", r..=r),
                    n..=n,
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn hamming_is_a_metric(rows in arb_rows()) {
                let ds = Dataset::from_rows(&rows).unwrap();
                let recs = ds.records();
                for x in recs {
                    prop_assert_eq!(hamming(x, x).unwrap(), 0);
                    for y in recs {
                        prop_assert_eq!(hamming(x, y).unwrap(), hamming(y, x).unwrap());
                        for z in recs {
                            let xz = hamming(x, z).unwrap();
                            let xy = hamming(x, y).unwrap();
                            let yz = hamming(y, z).unwrap();
                            prop_assert!(xz <= xy + yz);
                        }
                    }
                }
            }

            // the histogram shortcut computes the same mean distance as
            // walking the records, bit for bit
            #[test]
            fn histogram_distance_agrees_with_records(rows in arb_rows()) {
                let ds = Dataset::from_rows(&rows).unwrap();
                let hists = ds.histograms();
                for rec in ds.records() {
                    let direct = mean_hamming(rec, ds.records()).unwrap();
                    let shortcut = histogram_distance(rec, &hists).unwrap();
                    prop_assert_eq!(direct.to_bits(), shortcut.to_bits());
                }
            }

            #[test]
            fn similarity_and_distance_are_complements(rows in arb_rows()) {
                let ds = Dataset::from_rows(&rows).unwrap();
                let hists = ds.histograms();
                let r = ds.num_attributes() as f64;
                for rec in ds.records() {
                    let d = histogram_distance(rec, &hists).unwrap();
                    let s = histogram_similarity(rec, &hists).unwrap();
                    prop_assert!((d + s - r).abs() < 1e-9);
                    prop_assert!((0.0..=r).contains(&s));
                    prop_assert!((0.0..=r).contains(&d));
                }
            }
        }
    }
}
