//! Clustering for categorical data, driven by mutual information.
//!
//! Records made of unordered symbolic values (colors, votes, mushroom cap
//! shapes) have no geometry for k-means to average over. This crate
//! clusters them by treating each attribute as a vote: every attribute
//! already partitions the records by value, and a good clustering is one
//! that agrees with all those partitions at once. The objective is the
//! average normalized mutual information (ANMI) between the clustering and
//! the attribute partitions, and the search is k-means-like: seed `k`
//! clusters, then sweep over records, moving each to the cluster that
//! raises ANMI most, until nothing wants to move.
//!
//! The trick that makes this fast is that ANMI is a function of value
//! frequencies only. The engine keeps one histogram per (cluster,
//! attribute) and one per attribute over the whole dataset; evaluating a
//! candidate move touches two histograms per attribute instead of the raw
//! data, and the arithmetic is organized so an incremental evaluation is
//! bit-for-bit identical to rebuilding from scratch.
//!
//! # Quick start
//!
//! ```
//! use kanmi::{Dataset, KAnmi};
//!
//! let rows = vec![
//!     vec!["sunny", "warm", "dry"],
//!     vec!["sunny", "warm", "dry"],
//!     vec!["rainy", "cold", "wet"],
//!     vec!["rainy", "cold", "wet"],
//!     vec!["sunny", "cold", "dry"],
//!     vec!["rainy", "warm", "wet"],
//! ];
//! let dataset = Dataset::from_rows(&rows)?;
//! let result = KAnmi::new(2).fit(&dataset)?;
//!
//! assert_eq!(result.labels.len(), 6);
//! assert!(result.converged);
//! println!("ANMI {:.4} after {} sweeps", result.final_anmi, result.sweeps_run);
//! # Ok::<(), kanmi::Error>(())
//! ```
//!
//! # Examples directory
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! examples/
//! ├── basic_clustering.rs      # fit a small dataset, inspect the result
//! ├── histograms_and_metrics.rs# record/set distances from histograms
//! ├── information_scores.rs    # contingency tables, NMI and ANMI
//! ├── incremental_moves.rs     # the evaluate/apply move engine
//! ├── csv_pipeline.rs          # file in, labels + JSON report out
//! ├── squeezer_baseline.rs     # the one-pass threshold baseline
//! ├── synthetic_recovery.rs    # generate labeled data, recover classes
//! ├── uci_benchmark.rs         # k = 2..9 protocol on a labeled CSV
//! └── scaling_benchmark.rs     # runtime vs. row count
//! ```
//!
//! ```bash
//! cargo run --release --example basic_clustering
//! cargo run --release --example uci_benchmark -- path/to/votes.csv class
//! cargo run --release --example scaling_benchmark -- 100000
//! ```
//!
//! # Module map
//!
//! - [`model`] — datasets, value interning, histograms, labelings
//! - [`metrics`] — record-to-record and record-to-set distances
//! - [`information`] — contingency tables, NMI, ANMI
//! - [`algorithm`] — the clustering search itself
//! - [`experiments`] — accuracy scoring, baseline, generator, benchmarks
//! - [`cli`] — the `kanmi` binary's commands and file formats

pub mod algorithm;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod information;
pub mod metrics;
pub mod model;

#[cfg(test)]
pub(crate) mod test_support;

pub use algorithm::{ClusterState, KAnmi, KAnmiResult};
pub use error::{Error, Result};
pub use model::{Dataset, Histogram, HistogramSet, Labeling, Record};
