//! Shared generators for the integration-test suites: exhaustive and
//! pseudorandom loop tables, and seeded relabelings.

use loopcosets::loops::LoopTable;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod suites;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every loop of order `n`, i.e. every latin square with row 0 and
/// column 0 in natural order. Feasible through `n = 6` (9408 tables).
pub fn all_loops(n: usize) -> Vec<LoopTable> {
    let mut rows: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut out = Vec::new();
    fill(n, &mut rows, &mut out, None);
    out
}

/// One pseudorandom loop of order `n`, drawn by filling rows in a
/// shuffled candidate order and backtracking on dead ends.
pub fn random_loop(n: usize, rng: &mut ChaCha8Rng) -> LoopTable {
    let mut rows: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut out = Vec::new();
    fill(n, &mut rows, &mut out, Some(rng));
    out.pop().expect("every order admits a loop")
}

/// Row-by-row backtracking over normalized latin squares. With an RNG the
/// search stops at the first (randomized) solution; without one it
/// collects every solution.
fn fill(
    n: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<LoopTable>,
    mut rng: Option<&mut ChaCha8Rng>,
) -> bool {
    if rows.len() == n {
        out.push(LoopTable::validate(rows.clone()).expect("the search preserves latin-ness"));
        return rng.is_some();
    }
    let r = rows.len();
    let mut row = vec![r];
    extend_row(n, rows, &mut row, 1, &mut rng, out)
}

fn extend_row(
    n: usize,
    rows: &mut Vec<Vec<usize>>,
    row: &mut Vec<usize>,
    col: usize,
    rng: &mut Option<&mut ChaCha8Rng>,
    out: &mut Vec<LoopTable>,
) -> bool {
    if col == n {
        rows.push(row.clone());
        let done = fill(n, rows, out, rng.as_deref_mut());
        rows.pop();
        return done;
    }
    let mut candidates: Vec<usize> = (0..n)
        .filter(|s| !row.contains(s) && !rows.iter().any(|prev| prev[col] == *s))
        .collect();
    if let Some(rng) = rng.as_deref_mut() {
        candidates.shuffle(rng);
    }
    for s in candidates {
        row.push(s);
        let done = extend_row(n, rows, row, col + 1, rng, out);
        row.pop();
        if done {
            return true;
        }
    }
    false
}

/// Relabels a loop by a random permutation fixing the identity, producing
/// an isomorphic copy on the same symbols.
pub fn random_relabel(q: &LoopTable, rng: &mut ChaCha8Rng) -> LoopTable {
    let n = q.order();
    let mut pi: Vec<usize> = (1..n).collect();
    pi.shuffle(rng);
    pi.insert(0, 0);
    let mut rows = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            rows[pi[x]][pi[y]] = pi[q.mul(x, y)];
        }
    }
    LoopTable::validate(rows).expect("relabeling preserves the loop axioms")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_counts_match_the_normalized_latin_square_sequence() {
        assert_eq!(
            (1..=6).map(|n| all_loops(n).len()).collect::<Vec<_>>(),
            vec![1, 1, 1, 4, 56, 9408]
        );
    }

    #[test]
    fn random_loops_are_reproducible_per_seed() {
        let a = random_loop(7, &mut rng(11));
        let b = random_loop(7, &mut rng(11));
        let c = random_loop(7, &mut rng(12));
        assert_eq!(a.rows(), b.rows());
        assert_ne!(a.rows(), c.rows());
    }
}
