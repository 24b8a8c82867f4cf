//! Latin rectangles: distinct-representative extraction, completion to
//! squares, embeddability bounds, and the construction that realizes a
//! symmetric design as the coset geometry of a loop.

use super::{DesignError, IncidenceStructure};
use crate::loops::LoopTable;
use crate::matching::{hall_violator, max_matching};
use crate::symset::SymSet;

/// A rectangular array over symbols `0..n` with no repeat in any row or
/// column. Rows need not use every symbol; columns of a full-height
/// rectangle necessarily do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinRectangle {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl LatinRectangle {
    pub fn new(n: usize, rows: Vec<Vec<usize>>) -> Result<LatinRectangle, DesignError> {
        let width = rows.first().map_or(0, |r| r.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(DesignError::RaggedRows {
                    row: i,
                    len: row.len(),
                    expected: width,
                });
            }
        }
        for row in &rows {
            for &sym in row {
                if sym >= n {
                    return Err(DesignError::SymbolOutOfRange { symbol: sym, n });
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &sym in row {
                if seen[sym] {
                    return Err(DesignError::NotLatin {
                        axis: "row",
                        index: i,
                        symbol: sym,
                    });
                }
                seen[sym] = true;
            }
        }
        for j in 0..width {
            let mut seen = vec![false; n];
            for row in &rows {
                if seen[row[j]] {
                    return Err(DesignError::NotLatin {
                        axis: "column",
                        index: j,
                        symbol: row[j],
                    });
                }
                seen[row[j]] = true;
            }
        }
        Ok(LatinRectangle { n, rows })
    }

    /// Size of the symbol universe `0..n`.
    pub fn symbols(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    /// How many cells hold the symbol.
    pub fn frequency(&self, symbol: usize) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|&&s| s == symbol).count())
            .sum()
    }

    pub fn is_square(&self) -> bool {
        self.num_rows() == self.n && self.num_cols() == self.n
    }
}

/// Extracts `k` pairwise-disjoint systems of distinct representatives from
/// uniform blocks of size `k`: each system picks one point per block, no
/// point twice, and no block hands the same point to two systems. Exists
/// exactly when every point lies in `k` of the `n = |points|` blocks.
///
/// Each returned system lists its representatives in block order. Fails
/// with the deficient block set when some extraction round has no
/// perfect matching left.
pub fn disjoint_sdrs(blocks: &[SymSet]) -> Result<Vec<Vec<usize>>, DesignError> {
    let Some(first) = blocks.first() else {
        return Ok(Vec::new());
    };
    let k = first.len();
    if blocks.iter().any(|b| b.len() != k) {
        let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        return Err(DesignError::NonuniformBlocks { sizes });
    }

    let universe = blocks
        .iter()
        .fold(SymSet::EMPTY, |acc, b| acc.union(*b))
        .to_vec();
    let index_of = |p: usize| universe.binary_search(&p).expect("point is in the universe");

    let mut remaining: Vec<SymSet> = blocks.to_vec();
    let mut systems = Vec::with_capacity(k);
    for _ in 0..k {
        let adj: Vec<Vec<usize>> = remaining
            .iter()
            .map(|b| b.iter().map(index_of).collect())
            .collect();
        let matching = max_matching(universe.len(), &adj);
        if matching.iter().any(|m| m.is_none()) {
            let deficient =
                hall_violator(universe.len(), &adj).expect("imperfect matching has a violator");
            let union = deficient
                .iter()
                .fold(SymSet::EMPTY, |acc, &b| acc.union(remaining[b]))
                .len();
            return Err(DesignError::HallViolation {
                blocks: deficient,
                union,
            });
        }
        let system: Vec<usize> = matching.iter().map(|m| universe[m.unwrap()]).collect();
        for (b, &rep) in system.iter().enumerate() {
            remaining[b] = remaining[b].difference(SymSet::singleton(rep));
        }
        systems.push(system);
    }
    Ok(systems)
}

/// Lays uniform blocks out as a latin rectangle: row `i` is a permutation
/// of block `i`, with column `j` formed by the `j`-th of the disjoint
/// representative systems.
pub fn blocks_to_rectangle(blocks: &[SymSet]) -> Result<LatinRectangle, DesignError> {
    let systems = disjoint_sdrs(blocks)?;
    let n = blocks
        .iter()
        .flat_map(|b| b.iter())
        .max()
        .map_or(0, |m| m + 1);
    let rows: Vec<Vec<usize>> = (0..blocks.len())
        .map(|i| systems.iter().map(|s| s[i]).collect())
        .collect();
    Ok(LatinRectangle::new(n, rows).expect("disjoint representative systems form a rectangle"))
}

/// Extends a full-height rectangle (`n` rows, `k ≤ n` columns, symbols
/// `0..n`) to an `n × n` latin square, one column at a time; a perfect
/// matching between rows and their missing symbols always exists. The
/// zero-column rectangle completes to the cyclic square `(i + j) mod n`.
pub fn complete_rectangle(rect: &LatinRectangle) -> LatinRectangle {
    let n = rect.symbols();
    assert_eq!(rect.num_rows(), n, "completion needs a full-height rectangle");
    if rect.num_cols() == 0 {
        let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        return LatinRectangle::new(n, rows).expect("the cyclic square is latin");
    }

    let mut rows = rect.rows.clone();
    for _ in rect.num_cols()..n {
        let adj: Vec<Vec<usize>> = rows
            .iter()
            .map(|row| (0..n).filter(|s| !row.contains(s)).collect())
            .collect();
        let matching = max_matching(n, &adj);
        for (i, m) in matching.iter().enumerate() {
            rows[i].push(m.expect("a full-height latin rectangle always extends"));
        }
    }
    LatinRectangle::new(n, rows).expect("column extension preserves the latin property")
}

/// Whether an `r × s` latin rectangle can sit inside some `n × n` latin
/// square: every symbol of `0..n` must already occur at least `r + s − n`
/// times (symbols absent from the rectangle count zero).
pub fn ryser_feasible(rect: &LatinRectangle, n: usize) -> bool {
    let (r, s) = (rect.num_rows(), rect.num_cols());
    if r > n || s > n {
        return false;
    }
    if rect.rows.iter().flatten().any(|&sym| sym >= n) {
        return false;
    }
    let threshold = (r + s).saturating_sub(n);
    (0..n).all(|sym| rect.frequency(sym) >= threshold)
}

/// Whether a loop of order `n` can contain a subloop of order `m`: only
/// the whole loop or orders at most `⌊n/2⌋` are possible.
pub fn order_feasible(m: usize, n: usize) -> bool {
    m >= 1 && (m == n || 2 * m <= n)
}

/// The `(n−m) × m` rectangle over symbols `0..n−m` whose row `i` reads
/// `i, i+1, …, i+m−1` modulo `n−m`. Rows are pairwise distinct as
/// sequences, and distinct as sets whenever `m < n − m`; when `3m ≤ n`,
/// rows `i` and `i+m−1` share exactly the symbol `(i+m−1) mod (n−m)`.
/// Used to pad a subloop of order `m` out to a loop of order `n`, which
/// needs `2m ≤ n`.
pub fn max_distinct_construction(n: usize, m: usize) -> Result<LatinRectangle, DesignError> {
    if m == 0 || 2 * m > n {
        return Err(DesignError::InfeasibleOrders { m, n });
    }
    let width = n - m;
    let rows = (0..width)
        .map(|i| (0..m).map(|j| (i + j) % width).collect())
        .collect();
    Ok(LatinRectangle::new(width, rows).expect("shifted windows form a rectangle"))
}

/// Builds a loop of order `n` whose restriction to `0..m` is exactly the
/// given loop of order `m`. Possible precisely when `m = n` or
/// `2m ≤ n`: the subloop rows are padded with the shifted-window
/// rectangle, completed to a square, and the completion columns reordered
/// so that element 0 stays the identity.
pub fn embed_subloop(s: &LoopTable, n: usize) -> Result<LoopTable, DesignError> {
    let m = s.order();
    if m == n {
        return Ok(s.clone());
    }
    if !order_feasible(m, n) {
        return Err(DesignError::InfeasibleOrders { m, n });
    }

    let pad = max_distinct_construction(n, m)?;
    let mut rows = s.rows();
    rows.extend(
        pad.rows()
            .iter()
            .map(|row| row.iter().map(|&sym| sym + m).collect::<Vec<usize>>()),
    );
    let stacked = LatinRectangle::new(n, rows).expect("subloop rows and padding share no symbol");
    let square = complete_rectangle(&stacked);
    let cells = reorder_identity_row(square.rows().to_vec(), m);
    let table = LoopTable::validate(cells).expect("normalized completion is a loop");
    Ok(match s.name() {
        Some(name) => table.with_name(format!("{name} in order {n}")),
        None => table,
    })
}

/// Reorders the completion columns `m..` so that row 0 reads `0..n`.
/// Columns below `m` are left alone; callers guarantee they already give
/// row 0 the prefix `0..m` and column 0 the entries `0..n` in order.
fn reorder_identity_row(rows: Vec<Vec<usize>>, m: usize) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut col_of = vec![0usize; n];
    for (j, &sym) in rows[0].iter().enumerate() {
        col_of[sym] = j;
    }
    let order: Vec<usize> = (0..m).chain((m..n).map(|sym| col_of[sym])).collect();
    rows.into_iter()
        .map(|row| order.iter().map(|&j| row[j]).collect())
        .collect()
}

/// Builds a loop realizing a symmetric design as its coset geometry: the
/// points become the elements outside a copy of `inner`, and the block
/// multiset becomes the multiset of cosets of that copy. Requires the
/// design to be symmetric with every point on exactly `k` blocks, and an
/// inner loop of order `k`. The copy of `inner` sits on `0..k`, so the
/// extracted design of the result matches the input after the points are
/// relabeled in ascending order onto `k..k+v`.
pub fn realize_design(
    d: &IncidenceStructure,
    inner: &LoopTable,
) -> Result<LoopTable, DesignError> {
    let (v, b) = (d.v(), d.b());
    if v != b {
        return Err(DesignError::NotSymmetric {
            reason: format!("{v} points but {b} blocks"),
        });
    }
    if b == 0 {
        return Ok(inner.clone());
    }
    let k = d.blocks()[0].len();
    if d.blocks().iter().any(|blk| blk.len() != k) {
        let mut sizes: Vec<usize> = d.blocks().iter().map(|blk| blk.len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        return Err(DesignError::NonuniformBlocks { sizes });
    }
    for &p in d.points() {
        let deg = d.degree(p);
        if deg != k {
            return Err(DesignError::NotSymmetric {
                reason: format!("point {p} lies on {deg} blocks, expected {k}"),
            });
        }
    }
    let m = inner.order();
    if m != k {
        return Err(DesignError::BlockSizeMismatch { inner: m, k });
    }

    let n = m + v;
    let rank = |p: usize| d.points().binary_search(&p).expect("point is in the design") + m;
    let relabeled: Vec<SymSet> = d
        .blocks()
        .iter()
        .map(|blk| blk.iter().map(rank).collect())
        .collect();
    let coset_rows = blocks_to_rectangle(&relabeled)?;

    let mut rows = inner.rows();
    rows.extend(coset_rows.rows().iter().cloned());
    let stacked = LatinRectangle::new(n, rows).expect("inner rows and coset rows share no symbol");
    let square = complete_rectangle(&stacked);

    let mut cells = reorder_identity_row(square.rows().to_vec(), m);
    // Coset rows land wherever their representative system put them; move
    // each to the position its column-0 entry names so 0 is an identity.
    cells[m..].sort_unstable_by_key(|row| row[0]);
    let table = LoopTable::validate(cells).expect("normalized realization is a loop");
    Ok(table)
}
