//! Shared fixtures for unit tests.

use crate::model::Dataset;

/// Ten records over two attributes (sex in {M, F}, grade in {A, B, C}).
/// Small enough to evaluate every distance and information quantity by
/// hand; used as the common oracle fixture across modules.
pub(crate) fn sample_dataset() -> Dataset {
    let rows = [
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
    ];
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    Dataset::from_rows(&rows).expect("fixture is well formed")
}
