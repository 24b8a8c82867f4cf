//! The growable partially-filled action table and its forcing rule.

use super::BolContext;

/// Backtrack signal: a forced entry clashed with an existing one or with
/// the latin constraint. Not a failure — the search simply abandons the
/// branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contradiction;

/// Undo log entries for backtracking.
#[derive(Clone, Copy, Debug)]
enum Step {
    Fill { row: usize, col: usize, sym: usize },
    NewRow,
}

/// A partial latin rectangle with `m` columns (one per subloop element,
/// column 0 = identity) and one row per symbol introduced so far. Row
/// `j`'s column-0 entry is `j`; row 0 is fully filled with `0..m`. Cells
/// are filled one at a time, feeding a work queue that the forcing rule
/// drains; a trail records every change so the search can rewind.
#[derive(Clone, Debug)]
pub struct PartialOrbit {
    m: usize,
    /// rows[r][c] = value of the cell, row label = index
    rows: Vec<Vec<Option<usize>>>,
    /// positions[s] = filled cells currently holding symbol s
    positions: Vec<Vec<(usize, usize)>>,
    /// col_rows[c][s] = row holding symbol s in column c, if any
    col_rows: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
    trail: Vec<Step>,
}

impl PartialOrbit {
    /// The starting state: the identity row fully labeled `0..m`, and one
    /// stub row per symbol carrying only its identity-column entry.
    pub fn initial(ctx: &BolContext) -> PartialOrbit {
        let m = ctx.m();
        let mut p = PartialOrbit {
            m,
            rows: Vec::new(),
            positions: Vec::new(),
            col_rows: vec![Vec::new(); m],
            pending: Vec::new(),
            trail: Vec::new(),
        };
        for sym in 0..m {
            p.push_row();
            debug_assert_eq!(p.rows.len(), sym + 1);
            p.fill(sym, 0, sym).expect("identity column entries are fresh");
        }
        for col in 1..m {
            p.fill(0, col, col).expect("the identity row is latin");
        }
        p
    }

    /// Rebuilds a state from explicit cells (for checking and for
    /// resuming from an externally supplied rectangle). Rows must have
    /// `m` entries each; symbols must be smaller than the number of rows.
    /// Latin violations report a contradiction. All filled cells join the
    /// work queue, so a following propagation revisits everything.
    pub fn from_cells(
        ctx: &BolContext,
        cells: &[Vec<Option<usize>>],
    ) -> Result<PartialOrbit, Contradiction> {
        let m = ctx.m();
        let n = cells.len();
        assert!(n >= m, "need at least one row per subloop element");
        for row in cells {
            assert_eq!(row.len(), m, "every row needs one cell per column");
        }
        let mut p = PartialOrbit {
            m,
            rows: Vec::new(),
            positions: Vec::new(),
            col_rows: vec![Vec::new(); m],
            pending: Vec::new(),
            trail: Vec::new(),
        };
        for _ in 0..n {
            p.push_row();
        }
        for (r, row) in cells.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                let Some(sym) = cell else { continue };
                if sym >= n {
                    return Err(Contradiction);
                }
                p.fill(r, c, sym)?;
            }
        }
        // structural invariants of a usable state
        for (r, row) in p.rows.iter().enumerate() {
            if row[0] != Some(r) {
                return Err(Contradiction);
            }
        }
        if (0..m).any(|c| p.rows[0][c] != Some(c)) {
            return Err(Contradiction);
        }
        Ok(p)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Symbols introduced so far; every symbol owns the row of its index.
    pub fn symbol_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<usize> {
        self.rows[row][col]
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// First empty cell in row-major order.
    pub fn first_empty(&self) -> Option<(usize, usize)> {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if cell.is_none() {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Existing symbols usable at the cell: absent from its row and its
    /// column, ascending. The fresh symbol is not included.
    pub fn existing_candidates(&self, row: usize, col: usize) -> Vec<usize> {
        (0..self.symbol_count())
            .filter(|&s| self.col_rows[col][s].is_none() && !self.row_contains(row, s))
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|c| c.expect("state is complete")).collect())
            .collect()
    }

    /// A marker for the current trail position, for later rewind.
    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    /// Rewinds all fills and row creations back to the marker and clears
    /// the work queue.
    pub fn rewind(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail is longer than the mark") {
                Step::Fill { row, col, sym } => {
                    self.rows[row][col] = None;
                    let last = self.positions[sym].pop();
                    debug_assert_eq!(last, Some((row, col)));
                    self.col_rows[col][sym] = None;
                }
                Step::NewRow => {
                    self.rows.pop();
                    self.positions.pop();
                    for col in &mut self.col_rows {
                        col.pop();
                    }
                }
            }
        }
        self.pending.clear();
    }

    fn push_row(&mut self) {
        self.rows.push(vec![None; self.m]);
        self.positions.push(Vec::new());
        for col in &mut self.col_rows {
            col.push(None);
        }
        self.trail.push(Step::NewRow);
    }

    fn row_contains(&self, row: usize, sym: usize) -> bool {
        self.rows[row].iter().any(|&c| c == Some(sym))
    }

    /// Writes a symbol into an empty cell, keeping the latin constraint,
    /// and queues the cell for rule processing. A symbol equal to the
    /// current count is fresh and brings its own new row.
    pub fn place(&mut self, row: usize, col: usize, sym: usize) -> Result<(), Contradiction> {
        if sym == self.symbol_count() {
            let label = sym;
            self.push_row();
            self.fill(label, 0, label)?;
        }
        self.fill(row, col, sym)
    }

    fn fill(&mut self, row: usize, col: usize, sym: usize) -> Result<(), Contradiction> {
        debug_assert!(sym < self.symbol_count());
        match self.rows[row][col] {
            Some(existing) if existing == sym => return Ok(()),
            Some(_) => return Err(Contradiction),
            None => {}
        }
        if self.col_rows[col][sym].is_some() || self.row_contains(row, sym) {
            return Err(Contradiction);
        }
        self.rows[row][col] = Some(sym);
        self.positions[sym].push((row, col));
        self.col_rows[col][sym] = Some(row);
        self.pending.push((row, col));
        self.trail.push(Step::Fill { row, col, sym });
        Ok(())
    }

    /// Cells `(b, i)` and `(a, k)` are forced equal: copy the known value
    /// across, verify agreement when both are known, and leave untouched
    /// when neither is.
    fn force_equal(
        &mut self,
        b: usize,
        i: usize,
        a: usize,
        k: usize,
    ) -> Result<(), Contradiction> {
        match (self.rows[b][i], self.rows[a][k]) {
            (Some(u), Some(v)) => {
                if u == v {
                    Ok(())
                } else {
                    Err(Contradiction)
                }
            }
            (Some(u), None) => self.fill(a, k, u),
            (None, Some(v)) => self.fill(b, i, v),
            (None, None) => Ok(()),
        }
    }

    /// Runs the forcing rule to its fixpoint.
    ///
    /// Whenever two filled cells agree — `a·s_i = b·s_j` — right division
    /// gives `b = (a·s_i)·s_j⁻¹`, and the right Bol identity turns
    /// `b·s_i = ((a·s_i)·s_j⁻¹)·s_i` into `a·((s_i·s_j⁻¹)·s_i)`; so the
    /// cells `(b, i)` and `(a, k)` with `s_k = (s_i·s_j⁻¹)·s_i` must
    /// agree. Each newly filled cell is examined in all four positions it
    /// can occupy in that pattern: as either of the two agreeing cells,
    /// and as either of the two forced cells (an agreement noticed
    /// earlier may have left both forced cells empty; a later fill must
    /// revive it). The rule only ever adds entries, so the fixpoint does
    /// not depend on processing order.
    pub fn propagate(&mut self, ctx: &BolContext) -> Result<(), Contradiction> {
        while let Some((r, c)) = self.pending.pop() {
            let w = self.rows[r][c].expect("queued cells are filled");

            // as an agreeing cell, in both orders
            let partners = self.positions[w].clone();
            for (y, q) in partners {
                if (y, q) == (r, c) {
                    continue;
                }
                self.force_equal(y, c, r, ctx.triple(c, q))?;
                self.force_equal(r, q, y, ctx.triple(q, c))?;
            }

            // as the first forced cell: agreements (x, c) = (r, q) force
            // (r, c) against (x, triple(c, q))
            for x in 0..self.symbol_count() {
                if x == r {
                    continue;
                }
                let Some(v) = self.rows[x][c] else { continue };
                let Some(&(_, q)) = self.positions[v].iter().find(|&&(row, _)| row == r) else {
                    continue;
                };
                self.force_equal(r, c, x, ctx.triple(c, q))?;
            }

            // as the second forced cell: agreements (r, p) = (y, q) with
            // triple(p, q) = c force (y, p) against (r, c)
            for p in 0..self.m {
                let Some(v) = self.rows[r][p] else { continue };
                let partners = self.positions[v].clone();
                for (y, q) in partners {
                    if (y, q) == (r, p) {
                        continue;
                    }
                    if ctx.triple(p, q) == c {
                        self.force_equal(y, p, r, c)?;
                    }
                }
            }
        }
        Ok(())
    }
}
