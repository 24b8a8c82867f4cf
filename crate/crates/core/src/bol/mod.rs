//! Enumeration of the ways a subloop can act on a set by its right
//! translations, assuming only the right Bol identity
//! `x·((y·z)·y) = ((x·y)·z)·y` for the ambient multiplication.
//!
//! Given a right Bol loop `S` of order `m`, the right translations by
//! elements of `S` restricted to one orbit form a latin rectangle with a
//! column per element of `S`: row `x` lists the images `x·s`. Because the
//! ambient loop is unknown, the orbit size is unknown too; the search
//! grows the rectangle row by row, introducing a fresh symbol whenever no
//! existing one fits, and the right Bol identity prunes the growth: any
//! two cells that agree force two more cells to agree (see
//! [`PartialOrbit::propagate`]). The complete rectangles the search emits
//! are exactly the candidate orbit tables, each labeled canonically by
//! first appearance, in a deterministic depth-first order.

mod analyze;
mod enumerate;
mod state;

pub use analyze::{analyze, canonical_action_table, summarize, OrbitSummary, RectangleRecord};
pub use state::{Contradiction, PartialOrbit};

use std::time::Duration;

use thiserror::Error;

use crate::loops::LoopTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BolError {
    /// The right Bol identity `x·((y·z)·y) = ((x·y)·z)·y` fails at the
    /// recorded triple.
    #[error("the right Bol identity fails at x = {x}, y = {y}, z = {z}")]
    NotRightBol { x: usize, y: usize, z: usize },
}

/// A right Bol loop packaged with the lookup tables the forcing rule
/// needs: inverses, and `triple[i][j] = (s_i·s_j⁻¹)·s_i`.
#[derive(Debug, Clone)]
pub struct BolContext {
    table: LoopTable,
    inv: Vec<usize>,
    triple: Vec<Vec<usize>>,
}

/// Checks the right Bol identity over all triples and precomputes the
/// derived tables. Right Bol loops have two-sided inverses, so the
/// inverse lookup cannot fail once the identity holds.
pub fn build_context(table: LoopTable) -> Result<BolContext, BolError> {
    let m = table.order();
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let lhs = table.mul(x, table.mul(table.mul(y, z), y));
                let rhs = table.mul(table.mul(table.mul(x, y), z), y);
                if lhs != rhs {
                    return Err(BolError::NotRightBol { x, y, z });
                }
            }
        }
    }
    let inv: Vec<usize> = (0..m)
        .map(|x| {
            table
                .inverse(x)
                .expect("right Bol loops have two-sided inverses")
        })
        .collect();
    let triple = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| table.mul(table.mul(i, inv[j]), i))
                .collect()
        })
        .collect();
    Ok(BolContext { table, inv, triple })
}

impl BolContext {
    pub fn m(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &LoopTable {
        &self.table
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// `(s_i·s_j⁻¹)·s_i`, the column index the forcing rule pairs with
    /// an agreement between columns `i` and `j`.
    pub fn triple(&self, i: usize, j: usize) -> usize {
        self.triple[i][j]
    }
}

/// Search limits. `max_symbols` caps how many distinct symbols (and so
/// rows) a branch may introduce; `max_rectangles` caps how many complete
/// rectangles are collected; `time_budget` aborts long runs (at the cost
/// of deterministic output); `threads` parallelizes the search without
/// changing the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_symbols: usize,
    pub max_rectangles: usize,
    pub time_budget: Option<Duration>,
    pub threads: usize,
}

impl EnumConfig {
    /// Defaults for a subloop of order `m`: symbols capped at `64·m`,
    /// a million rectangles, no time budget, single-threaded.
    pub fn for_order(m: usize) -> EnumConfig {
        assert!(m >= 1, "loops are nonempty");
        EnumConfig {
            max_symbols: 64 * m,
            max_rectangles: 1_000_000,
            time_budget: None,
            threads: 1,
        }
    }
}

/// Which limits the search ran into. A set flag means the rectangle list
/// may be incomplete for that reason.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Truncation {
    /// some branch wanted more symbols than allowed and was pruned
    pub symbol_cap: bool,
    /// the rectangle limit stopped the search
    pub rectangle_cap: bool,
    /// the time budget expired
    pub time_exceeded: bool,
}

impl Truncation {
    pub fn any(&self) -> bool {
        self.symbol_cap || self.rectangle_cap || self.time_exceeded
    }
}

/// A complete rectangle: one row per symbol, one column per subloop
/// element, row `x` listing the images of `x` under right translation.
/// Symbols are canonical first-appearance labels, so row `j` belongs to
/// symbol `j` and row 0 is `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    rows: Vec<Vec<usize>>,
}

impl Rectangle {
    pub fn new(rows: Vec<Vec<usize>>) -> Rectangle {
        Rectangle { rows }
    }

    /// Number of rows, i.e. the orbit size the rectangle proposes.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }
}

/// Everything a search run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub rectangles: Vec<Rectangle>,
    pub truncation: Truncation,
}

pub use enumerate::enumerate;

/// Runs the forcing rule on a state until nothing more is implied,
/// consuming the state and returning the updated one (or the
/// contradiction that killed the branch).
pub fn propagate(ctx: &BolContext, mut p: PartialOrbit) -> Result<PartialOrbit, Contradiction> {
    p.propagate(ctx)?;
    Ok(p)
}
