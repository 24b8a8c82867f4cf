//! Bulk generated-input suites. Each function sweeps a corpus built from
//! exhaustive small loops, catalog tables, and seeded random loops,
//! panics on the first violation, and returns how many generated cases
//! it covered so callers can assert coverage floors.

use std::collections::HashMap;

use loopcosets::bol::{self, build_context, enumerate, BolContext, EnumConfig, PartialOrbit};
use loopcosets::cosets::{
    coset_family, intersection_closure, semilattice_extension_test, MeetSemilattice,
};
use loopcosets::designs::{
    blocks_to_rectangle, complete_rectangle, disjoint_sdrs, max_distinct_construction,
    ryser_feasible, LatinRectangle,
};
use loopcosets::loops::{catalog, LoopTable, Side};
use loopcosets::SymSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{all_loops, random_loop, random_relabel, rng};

/// Quasigroup axioms on every loop of order ≤ 6, seeded random loops of
/// orders 7–8, and relabeled catalog tables: unique divisions, identity,
/// and inverse coherence.
pub fn quasigroup_axiom_cases() -> usize {
    let mut r = rng(0xA1);
    let mut corpus: Vec<LoopTable> = (1..=6).flat_map(all_loops).collect();
    for n in [7, 8] {
        corpus.extend((0..25).map(|_| random_loop(n, &mut r)));
    }
    for q in catalog::test_catalog() {
        corpus.push(random_relabel(&q, &mut r));
        corpus.push(random_relabel(&q, &mut r));
        corpus.push(q);
    }

    for q in &corpus {
        let n = q.order();
        for a in 0..n {
            assert_eq!(q.mul(0, a), a, "0 is a left identity");
            assert_eq!(q.mul(a, 0), a, "0 is a right identity");
            if let Some(i) = q.inverse(a) {
                assert_eq!(q.mul(a, i), 0);
                assert_eq!(q.mul(i, a), 0);
            }
            for b in 0..n {
                assert_eq!(q.mul(a, q.left_div(a, b)), b, "a·(a\\b) = b");
                assert_eq!(q.left_div(a, q.mul(a, b)), b, "a\\(a·b) = b");
                assert_eq!(q.mul(q.right_div(a, b), b), a, "(a/b)·b = a");
                assert_eq!(q.right_div(q.mul(a, b), b), a, "(a·b)/b = a");
            }
        }
    }
    corpus.len()
}

/// Forcing-rule properties on states derived from complete enumerated
/// rectangles: complete states are fixpoints, single interior blanks are
/// restored, and every propagation is monotone, idempotent, and sound
/// with respect to the known completion.
pub fn propagate_cases() -> usize {
    let mut r = rng(0xB2);
    let mut cases = 0;
    let contexts = [
        catalog::cyclic(2),
        catalog::cyclic(3),
        catalog::cyclic(4),
        catalog::cyclic(5),
        catalog::cyclic(6),
        catalog::cyclic(7),
        catalog::klein4(),
        catalog::symmetric_group3(),
    ];
    for table in contexts {
        let m = table.order();
        let ctx = build_context(table).expect("groups are right Bol");
        let found = enumerate(&ctx, &EnumConfig::for_order(m));
        assert!(!found.truncation.any());
        for rect in &found.rectangles {
            let truth = rect.rows().to_vec();
            let cells: Vec<Vec<Option<usize>>> = truth
                .iter()
                .map(|row| row.iter().map(|&v| Some(v)).collect())
                .collect();

            // a complete consistent state is a fixpoint
            let complete = PartialOrbit::from_cells(&ctx, &cells).expect("the rectangle is valid");
            let after = checked_propagation(&ctx, complete, &cells, &truth);
            assert_eq!(after.to_rows(), truth);
            cases += 1;

            // every single interior blank is restored by propagation alone
            for row in 1..truth.len() {
                for col in 1..m {
                    let mut blanked = cells.clone();
                    blanked[row][col] = None;
                    let Ok(p) = PartialOrbit::from_cells(&ctx, &blanked) else {
                        continue;
                    };
                    let after = checked_propagation(&ctx, p, &blanked, &truth);
                    assert_eq!(
                        after.cell(row, col),
                        Some(truth[row][col]),
                        "cell ({row},{col}) of a {}-row rectangle",
                        truth.len()
                    );
                    cases += 1;
                }
            }

            // seeded multi-blanks: propagation may stall but stays sound
            let interior: Vec<(usize, usize)> = (1..truth.len())
                .flat_map(|row| (1..m).map(move |col| (row, col)))
                .collect();
            for trial in 0..12 {
                let k = 2 + trial % 4;
                let mut holes = interior.clone();
                holes.shuffle(&mut r);
                holes.truncate(k);
                let mut blanked = cells.clone();
                for &(row, col) in &holes {
                    blanked[row][col] = None;
                }
                let Ok(p) = PartialOrbit::from_cells(&ctx, &blanked) else {
                    continue;
                };
                checked_propagation(&ctx, p, &blanked, &truth);
                cases += 1;
            }
        }
    }
    cases
}

/// Propagates and asserts the three safety properties against the known
/// completion `truth`: no erasure, fixpoint stability, and agreement with
/// `truth` on every derived cell.
fn checked_propagation(
    ctx: &BolContext,
    state: PartialOrbit,
    before: &[Vec<Option<usize>>],
    truth: &[Vec<usize>],
) -> PartialOrbit {
    let after = bol::propagate(ctx, state).expect("a sub-state of a valid rectangle propagates");
    assert_eq!(after.symbol_count(), truth.len(), "no invented symbols");
    for (r, row) in truth.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if let Some(set) = before[r][c] {
                assert_eq!(after.cell(r, c), Some(set), "propagation never erases");
            }
            if let Some(derived) = after.cell(r, c) {
                assert_eq!(derived, v, "derived cells agree with the completion");
            }
        }
    }
    let again = bol::propagate(ctx, after.clone()).expect("a fixpoint propagates");
    for r in 0..truth.len() {
        for c in 0..after.m() {
            assert_eq!(again.cell(r, c), after.cell(r, c), "propagation is idempotent");
        }
    }
    after
}

/// The polynomial extension criterion against the exponential
/// subset-meet condition, on the intersection closures of every loop of
/// order ≤ 6 with every subloop, plus catalog and random loops of
/// orders 7–8.
pub fn extension_criterion_cases() -> usize {
    let mut r = rng(0xC3);
    let mut corpus: Vec<LoopTable> = (2..=6).flat_map(all_loops).collect();
    corpus.extend([
        catalog::cyclic(7),
        catalog::cyclic(8),
        catalog::quaternion8(),
        catalog::dihedral(8),
        catalog::by_name("c2xc4").expect("catalog name"),
        catalog::by_name("c2xc2xc2").expect("catalog name"),
    ]);
    for n in [7, 8] {
        corpus.extend((0..20).map(|_| random_loop(n, &mut r)));
    }

    let mut cases = 0;
    for q in &corpus {
        for s in q.all_subloops() {
            let left = intersection_closure(&coset_family(&s, Side::Left));
            let right = intersection_closure(&coset_family(&s, Side::Right));
            for (p, p2) in [(&left, &left), (&right, &right), (&left, &right)] {
                cases += cross_validate(p, p2, &mut r);
            }
        }
    }
    cases
}

/// Runs the polynomial criterion and the exponential condition on a few
/// maximal-element bijections between `p` and `q`, requiring them to
/// agree, and validates any returned isomorphism element by element.
fn cross_validate(p: &MeetSemilattice, q: &MeetSemilattice, r: &mut ChaCha8Rng) -> usize {
    let mp = p.maximal();
    let mq = q.maximal();
    if mp.len() != mq.len() {
        return 0;
    }
    let mut images: Vec<Vec<SymSet>> = vec![mq.to_vec()];
    for _ in 0..3 {
        let mut shuffled = mq.to_vec();
        shuffled.shuffle(r);
        if !images.contains(&shuffled) {
            images.push(shuffled);
        }
    }

    let mut cases = 0;
    for img in images {
        let map: Vec<(SymSet, SymSet)> = mp.iter().copied().zip(img).collect();
        let extension =
            semilattice_extension_test(p, q, &map).expect("closures are meet-dense");
        assert_eq!(
            extension.is_some(),
            subset_meet_condition(&map),
            "criterion disagrees with the subset-meet condition on {map:?}"
        );
        if let Some(iso) = extension {
            assert_is_isomorphism(p, q, &iso);
        }
        cases += 1;
    }
    cases
}

/// The exponential condition: over every nonempty subset of the paired
/// maximal elements, the meet on the left determines the meet on the
/// right and vice versa.
fn subset_meet_condition(map: &[(SymSet, SymSet)]) -> bool {
    let t = map.len();
    assert!(t < 32, "subset enumeration needs small maximal families");
    let mut forward: HashMap<SymSet, SymSet> = HashMap::new();
    let mut backward: HashMap<SymSet, SymSet> = HashMap::new();
    for mask in 1u32..(1 << t) {
        let members = (0..t).filter(|i| mask & (1 << i) != 0);
        let (a, b) = members
            .map(|i| map[i])
            .reduce(|(a, b), (x, y)| (a.intersection(x), b.intersection(y)))
            .expect("the mask is nonempty");
        if *forward.entry(a).or_insert(b) != b {
            return false;
        }
        if *backward.entry(b).or_insert(a) != a {
            return false;
        }
    }
    true
}

/// Checks that `iso` really is a semilattice isomorphism `p → q`.
fn assert_is_isomorphism(p: &MeetSemilattice, q: &MeetSemilattice, iso: &[(SymSet, SymSet)]) {
    assert_eq!(iso.len(), p.len());
    assert_eq!(iso.len(), q.len());
    let image = |x: SymSet| -> SymSet {
        iso.iter()
            .find(|&&(a, _)| a == x)
            .expect("the domain covers p")
            .1
    };
    let mut targets: Vec<SymSet> = iso.iter().map(|&(_, b)| b).collect();
    targets.sort_by(SymSet::cmp_size_lex);
    let mut elements = q.elements().to_vec();
    elements.sort_by(SymSet::cmp_size_lex);
    assert_eq!(targets, elements, "the image covers q exactly once");
    for &(x, fx) in iso {
        assert!(p.contains(x));
        for &(y, fy) in iso {
            assert_eq!(
                image(x.intersection(y)),
                fx.intersection(fy),
                "meets are preserved"
            );
        }
    }
}

/// Representative-system extraction on full coset families: the systems
/// exist, are individually injective, pairwise disagree on every block,
/// and lay out as a latin rectangle; engineered-infeasible families fail.
pub fn sdr_cases() -> usize {
    let mut r = rng(0xD4);
    let mut corpus: Vec<LoopTable> = all_loops(4);
    corpus.extend(all_loops(5));
    corpus.extend(all_loops(6).into_iter().step_by(6));
    for n in [7, 8] {
        corpus.extend((0..15).map(|_| random_loop(n, &mut r)));
    }
    corpus.extend([catalog::intro10(), catalog::chein12(), catalog::example6()]);

    let mut cases = 0;
    for q in &corpus {
        for s in q.all_subloops() {
            let k = s.order();
            for side in [Side::Left, Side::Right] {
                let blocks = coset_family(&s, side).all().to_vec();
                let systems =
                    disjoint_sdrs(&blocks).expect("every point lies in |S| of the cosets");
                assert_eq!(systems.len(), k);
                for sys in &systems {
                    assert_eq!(sys.len(), blocks.len());
                    let mut sorted = sys.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    assert_eq!(sorted.len(), sys.len(), "representatives are distinct");
                    for (i, &point) in sys.iter().enumerate() {
                        assert!(blocks[i].contains(point), "representatives come from blocks");
                    }
                }
                for (i, block) in blocks.iter().enumerate() {
                    let mut handed: Vec<usize> = systems.iter().map(|sys| sys[i]).collect();
                    handed.sort_unstable();
                    assert_eq!(handed, block.to_vec(), "each block hands out all its points");
                }

                let rect = blocks_to_rectangle(&blocks).expect("the same matching succeeds");
                assert_eq!(rect.num_rows(), blocks.len());
                assert_eq!(rect.num_cols(), k);
                for (i, row) in rect.rows().iter().enumerate() {
                    let mut sorted = row.clone();
                    sorted.sort_unstable();
                    assert_eq!(sorted, blocks[i].to_vec(), "row {i} permutes block {i}");
                }
                cases += 1;
            }

            // more copies of one block than it has points: always deficient
            let copies = vec![s.elements(); k + 1];
            assert!(disjoint_sdrs(&copies).is_err());
            cases += 1;
        }
    }

    let mixed = vec![SymSet::full(2), SymSet::singleton(0)];
    assert!(disjoint_sdrs(&mixed).is_err(), "mixed block sizes are rejected");
    cases + 1
}

/// Latin completion and feasibility on seeded column selections of real
/// latin squares, plus the shifted-window construction's documented
/// shape.
pub fn completion_cases() -> usize {
    let mut r = rng(0xE5);
    let mut corpus: Vec<LoopTable> = all_loops(4);
    corpus.extend(all_loops(5));
    for n in 6..=10 {
        corpus.extend((0..12).map(|_| random_loop(n, &mut r)));
    }
    corpus.push(random_relabel(&catalog::intro10(), &mut r));
    corpus.push(random_relabel(&catalog::chein12(), &mut r));

    let mut cases = 0;
    for q in &corpus {
        let n = q.order();
        let square = q.rows();
        for _ in 0..3 {
            let k = r.random_range(0..=n);
            let mut cols: Vec<usize> = (0..n).collect();
            cols.shuffle(&mut r);
            cols.truncate(k);
            let rows: Vec<Vec<usize>> = square
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect();
            let rect =
                LatinRectangle::new(n, rows.clone()).expect("columns of a latin square are latin");

            let full = complete_rectangle(&rect);
            assert!(full.is_square());
            assert_eq!(full.num_cols(), n);
            let natural: Vec<usize> = (0..n).collect();
            for (row, prefix) in full.rows().iter().zip(&rows) {
                assert_eq!(&row[..k], &prefix[..], "completion keeps the given columns");
                let mut sorted = row.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, natural, "completed rows are permutations");
            }
            cases += 1;

            // a rectangle cut from an actual square always passes the count test
            let m = r.random_range(1..=n);
            let sub = LatinRectangle::new(n, rows[..m].to_vec()).expect("still latin");
            assert!(ryser_feasible(&sub, n));
            cases += 1;
        }
    }

    // symbol 2 absent from a 2×2 corner: cannot extend into a 3×3 square
    let corner = LatinRectangle::new(3, vec![vec![0, 1], vec![1, 0]]).expect("latin");
    assert!(!ryser_feasible(&corner, 3));
    cases += 1;

    for n in 2..=14 {
        for m in 1..=n {
            let built = max_distinct_construction(n, m);
            if 2 * m > n {
                assert!(built.is_err(), "({n}, {m}) is infeasible");
                cases += 1;
                continue;
            }
            let rect = built.expect("2m ≤ n is constructible");
            let width = n - m;
            assert_eq!(rect.num_rows(), width);
            assert_eq!(rect.num_cols(), m);
            assert_eq!(rect.symbols(), width);
            let sets: Vec<SymSet> = rect
                .rows()
                .iter()
                .map(|row| row.iter().fold(SymSet::EMPTY, |acc, &s| acc.union(SymSet::singleton(s))))
                .collect();
            for (i, a) in sets.iter().enumerate() {
                for b in &sets[i + 1..] {
                    if m < width {
                        assert_ne!(a, b, "windows are distinct as sets when m < n−m");
                    }
                }
                if 3 * m <= n && m >= 1 {
                    let j = (i + m - 1) % width;
                    if j != i {
                        let shared = a.intersection(sets[j]);
                        assert_eq!(
                            shared.to_vec(),
                            vec![(i + m - 1) % width],
                            "windows {i} and {j} overlap in one symbol"
                        );
                    }
                }
            }
            cases += 1;
        }
    }
    cases
}
