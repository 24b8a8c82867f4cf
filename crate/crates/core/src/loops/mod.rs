//! Finite loops as Cayley tables, subloops, and structural predicates.

use crate::symset::SymSet;
use thiserror::Error;

pub mod catalog;
mod iso;
pub mod properties;

pub use iso::is_isomorphic;
pub use properties::{check_properties, element_order, PropertyReport};

/// Which translation family a coset-style operation uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {symbol} at row {row}, column {col} is outside 0..{n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        n: usize,
    },
    #[error("symbol {symbol} repeats in {axis} {index} (first clash at row {row}, column {col})")]
    LatinViolation {
        axis: &'static str,
        index: usize,
        symbol: usize,
        row: usize,
        col: usize,
    },
    #[error("0 is not a two-sided identity: entry at row {row}, column {col} is {symbol}")]
    IdentityViolation {
        row: usize,
        col: usize,
        symbol: usize,
    },
    #[error("order {n} exceeds the supported maximum of 64")]
    OrderTooLarge { n: usize },
    #[error("empty table")]
    Empty,
    #[error("{set:?} is not a subloop: {witness}")]
    NotASubloop { set: Vec<usize>, witness: String },
    #[error("element {element} does not generate a group; powers are ambiguous")]
    NotPowerAssociative { element: usize },
    #[error("unknown catalog name {name:?}")]
    UnknownName { name: String },
}

/// Cayley table of a finite loop on symbols `0..n`, with `0` the identity.
///
/// Rows index the left factor: the entry at `(x, y)` is `x * y`. Both
/// division tables are precomputed on construction, so `mul`, `left_div`
/// and `right_div` are O(1) lookups.
#[derive(Clone)]
pub struct LoopTable {
    n: usize,
    cells: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
    name: Option<String>,
}

impl PartialEq for LoopTable {
    fn eq(&self, other: &LoopTable) -> bool {
        // names are labels, not structure
        self.n == other.n && self.cells == other.cells
    }
}

impl Eq for LoopTable {}

impl LoopTable {
    /// Checks the latin-square and identity invariants and builds the table.
    pub fn validate(raw: Vec<Vec<usize>>) -> Result<LoopTable, LoopError> {
        let n = raw.len();
        if n == 0 {
            return Err(LoopError::Empty);
        }
        if n > 64 {
            return Err(LoopError::OrderTooLarge { n });
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(LoopError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            for (col, &symbol) in r.iter().enumerate() {
                if symbol >= n {
                    return Err(LoopError::EntryOutOfRange {
                        row,
                        col,
                        symbol,
                        n,
                    });
                }
            }
        }
        for (row, r) in raw.iter().enumerate() {
            let mut seen = vec![false; n];
            for (col, &symbol) in r.iter().enumerate() {
                if seen[symbol] {
                    return Err(LoopError::LatinViolation {
                        axis: "row",
                        index: row,
                        symbol,
                        row,
                        col,
                    });
                }
                seen[symbol] = true;
            }
        }
        for col in 0..n {
            let mut seen = vec![false; n];
            for (row, r) in raw.iter().enumerate() {
                let symbol = r[col];
                if seen[symbol] {
                    return Err(LoopError::LatinViolation {
                        axis: "column",
                        index: col,
                        symbol,
                        row,
                        col,
                    });
                }
                seen[symbol] = true;
            }
        }
        for y in 0..n {
            if raw[0][y] != y {
                return Err(LoopError::IdentityViolation {
                    row: 0,
                    col: y,
                    symbol: raw[0][y],
                });
            }
        }
        for x in 0..n {
            if raw[x][0] != x {
                return Err(LoopError::IdentityViolation {
                    row: x,
                    col: 0,
                    symbol: raw[x][0],
                });
            }
        }

        let mut cells = Vec::with_capacity(n * n);
        for r in &raw {
            cells.extend_from_slice(r);
        }
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = cells[x * n + y];
                // x * y = p, so x \ p = y and p / y = x
                ldiv[x * n + p] = y;
                rdiv[x * n + y] = p; // placeholder, fixed below
            }
        }
        for x in 0..n {
            for y in 0..n {
                let p = cells[x * n + y];
                rdiv[p * n + y] = x;
            }
        }
        Ok(LoopTable {
            n,
            cells,
            ldiv,
            rdiv,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LoopTable {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    /// `x \ y`: the unique `z` with `x * z = y`.
    pub fn left_div(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y]
    }

    /// `x / y`: the unique `z` with `z * y = x`.
    pub fn right_div(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.n + y]
    }

    /// Two-sided inverse of `x` if the left and right inverses agree.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        // x * (x \ 0) = 0 and (0 / x) * x = 0
        let right = self.left_div(x, 0);
        let left = self.right_div(0, x);
        (left == right).then_some(right)
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    /// Left translation `L_x: y -> x * y`.
    pub fn left_translation(&self, x: usize) -> crate::perm::Perm {
        crate::perm::Perm::new(self.row(x).to_vec())
    }

    /// Right translation `R_x: y -> y * x`.
    pub fn right_translation(&self, x: usize) -> crate::perm::Perm {
        crate::perm::Perm::new((0..self.n).map(|y| self.mul(y, x)).collect())
    }

    pub fn translation(&self, x: usize, side: Side) -> crate::perm::Perm {
        match side {
            Side::Left => self.left_translation(x),
            Side::Right => self.right_translation(x),
        }
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// The opposite loop: `x *' y = y * x`.
    pub fn opposite(&self) -> LoopTable {
        let n = self.n;
        let raw: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| self.mul(y, x)).collect())
            .collect();
        let mut op = LoopTable::validate(raw).expect("transpose of a loop table is a loop table");
        if let Some(name) = &self.name {
            op.name = Some(format!("{name}^op"));
        }
        op
    }

    /// Smallest subloop containing `generators`: the fixpoint of closing
    /// under multiplication and both divisions (always contains 0).
    pub fn subloop_closure(&self, generators: &[usize]) -> Subloop<'_> {
        let mut set = SymSet::singleton(0);
        for &g in generators {
            assert!(g < self.n, "generator out of range");
            set.insert(g);
        }
        loop {
            let mut next = set;
            for x in set.iter() {
                for y in set.iter() {
                    next.insert(self.mul(x, y));
                    next.insert(self.left_div(x, y));
                    next.insert(self.right_div(x, y));
                }
            }
            if next == set {
                break;
            }
            set = next;
        }
        Subloop {
            parent: self,
            elements: set,
        }
    }

    /// Every subloop, ordered by size and then lexicographically.
    pub fn all_subloops(&self) -> Vec<Subloop<'_>> {
        let mut known: Vec<SymSet> = vec![self.subloop_closure(&[]).elements];
        let mut frontier = known.clone();
        while let Some(base) = frontier.pop() {
            for x in 0..self.n {
                if base.contains(x) {
                    continue;
                }
                let mut gens = base.to_vec();
                gens.push(x);
                let bigger = self.subloop_closure(&gens).elements;
                if !known.contains(&bigger) {
                    known.push(bigger);
                    frontier.push(bigger);
                }
            }
        }
        known.sort_by(SymSet::cmp_size_lex);
        known
            .into_iter()
            .map(|elements| Subloop {
                parent: self,
                elements,
            })
            .collect()
    }
}

impl std::fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.name {
            Some(name) => writeln!(f, "LoopTable {name} (order {})", self.n)?,
            None => writeln!(f, "LoopTable (order {})", self.n)?,
        }
        for x in 0..self.n {
            for y in 0..self.n {
                if y > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.mul(x, y))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A subset of a loop closed under multiplication and both divisions.
#[derive(Clone, Copy)]
pub struct Subloop<'a> {
    parent: &'a LoopTable,
    elements: SymSet,
}

impl<'a> Subloop<'a> {
    /// Validates closure of `elements` inside `parent`.
    pub fn new(parent: &'a LoopTable, elements: SymSet) -> Result<Subloop<'a>, LoopError> {
        let witness = |x: usize, op: &str, y: usize, z: usize| LoopError::NotASubloop {
            set: elements.to_vec(),
            witness: format!("{x} {op} {y} = {z} escapes the set"),
        };
        if elements.is_empty() {
            return Err(LoopError::NotASubloop {
                set: vec![],
                witness: "a subloop is nonempty".into(),
            });
        }
        if let Some(bad) = elements.iter().find(|&x| x >= parent.order()) {
            return Err(LoopError::NotASubloop {
                set: elements.to_vec(),
                witness: format!("{bad} is outside the parent loop"),
            });
        }
        for x in elements.iter() {
            for y in elements.iter() {
                let m = parent.mul(x, y);
                if !elements.contains(m) {
                    return Err(witness(x, "*", y, m));
                }
                let l = parent.left_div(x, y);
                if !elements.contains(l) {
                    return Err(witness(x, "\\", y, l));
                }
                let r = parent.right_div(x, y);
                if !elements.contains(r) {
                    return Err(witness(x, "/", y, r));
                }
            }
        }
        debug_assert!(elements.contains(0));
        Ok(Subloop { parent, elements })
    }

    pub fn from_elements(
        parent: &'a LoopTable,
        elements: &[usize],
    ) -> Result<Subloop<'a>, LoopError> {
        Subloop::new(parent, elements.iter().copied().collect())
    }

    pub fn parent(&self) -> &'a LoopTable {
        self.parent
    }

    pub fn elements(&self) -> SymSet {
        self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.elements.iter()
    }

    pub fn is_whole_loop(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// The subloop as a standalone table, relabeled so that the k-th
    /// smallest member becomes symbol k. Returns the table and the member
    /// list (new symbol -> parent symbol).
    pub fn to_table(&self) -> (LoopTable, Vec<usize>) {
        let members = self.elements.to_vec();
        let index_of = |x: usize| members.binary_search(&x).unwrap();
        let raw: Vec<Vec<usize>> = members
            .iter()
            .map(|&x| {
                members
                    .iter()
                    .map(|&y| index_of(self.parent.mul(x, y)))
                    .collect()
            })
            .collect();
        let table = LoopTable::validate(raw).expect("a subloop restricts to a loop table");
        (table, members)
    }
}

impl std::fmt::Debug for Subloop<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subloop{:?}", self.elements)
    }
}
