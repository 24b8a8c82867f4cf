//! Post-processing of complete rectangles: divisibility of the proposed
//! orbit size, row partitions, and aggregate summaries.

use std::collections::BTreeMap;

use crate::cover::ExactCover;

use super::{Rectangle, Truncation};

/// What one rectangle says about a candidate orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleRecord {
    /// the orbit size the rectangle proposes (its number of rows)
    pub size: usize,
    /// whether the subloop order divides that size
    pub divisible: bool,
    /// row labels whose symbol sets partition all symbols, when some
    /// selection of rows does; ascending
    pub partition_rows: Option<Vec<usize>>,
}

/// Checks divisibility and searches for a set of rows whose entries
/// partition the symbols — the shape a decomposition into cosets of the
/// subloop would take.
pub fn analyze(rect: &Rectangle) -> RectangleRecord {
    let size = rect.size();
    let width = rect.rows().first().map_or(1, Vec::len);
    let divisible = size % width == 0;
    let blocks: Vec<Vec<usize>> = rect.rows().to_vec();
    let partition_rows = ExactCover::new(size, blocks).solve().map(|mut rows| {
        rows.sort_unstable();
        rows
    });
    RectangleRecord {
        size,
        divisible,
        partition_rows,
    }
}

/// Aggregate of one enumeration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub records: Vec<RectangleRecord>,
    /// (orbit size, number of rectangles of that size), sizes ascending
    pub lengths: Vec<(usize, usize)>,
    /// every rectangle admits a row partition; when false the verdict
    /// is open, not refuted — the partition search is exact but a
    /// truncated enumeration may have missed rectangles either way
    pub all_partitioned: bool,
    pub truncation: Truncation,
}

pub fn summarize(records: Vec<RectangleRecord>, truncation: Truncation) -> OrbitSummary {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for record in &records {
        *counts.entry(record.size).or_default() += 1;
    }
    let all_partitioned = records.iter().all(|r| r.partition_rows.is_some());
    OrbitSummary {
        lengths: counts.into_iter().collect(),
        all_partitioned,
        records,
        truncation,
    }
}

/// Relabels a complete action table into the canonical form the search
/// emits. `rows[x]` lists the images of `x` under the subloop's right
/// translations; entries must be smaller than `rows.len()` and every row
/// must be reachable from `root` (the table describes one orbit). The
/// root becomes symbol 0 and the remaining symbols are named in order of
/// first appearance when reading the rows row-major, rows following
/// their labels.
pub fn canonical_action_table(rows: &[Vec<usize>], root: usize) -> Rectangle {
    let n = rows.len();
    assert!(root < n, "the root must label a row");
    let mut new_of_old = vec![usize::MAX; n];
    let mut old_of_new = Vec::with_capacity(n);
    new_of_old[root] = 0;
    old_of_new.push(root);
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut next = 0;
    while next < old_of_new.len() {
        let old_row = old_of_new[next];
        next += 1;
        let mut new_row = Vec::with_capacity(rows[old_row].len());
        for &old in &rows[old_row] {
            assert!(old < n, "table entries name rows");
            if new_of_old[old] == usize::MAX {
                new_of_old[old] = old_of_new.len();
                old_of_new.push(old);
            }
            new_row.push(new_of_old[old]);
        }
        out.push(new_row);
    }
    assert_eq!(out.len(), n, "every row must be reachable from the root");
    Rectangle::new(out)
}
