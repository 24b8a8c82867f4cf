//! Block designs carried by coset families, and their realization.
//!
//! The distinct-or-not left cosets of a subloop, read over the points
//! outside the subloop, always form a symmetric 1-design; conversely every
//! symmetric design arises this way from some loop. This module extracts
//! the design, measures its parameters, compares designs up to
//! isomorphism, and searches for designs among translates of arbitrary
//! subsets. The latin-rectangle machinery behind the converse direction
//! lives in [`latin`].

use std::collections::BTreeMap;

use itertools::Itertools;
use thiserror::Error;

use crate::loops::{LoopTable, Side, Subloop};
use crate::symset::SymSet;

mod latin;

pub use latin::{
    blocks_to_rectangle, complete_rectangle, disjoint_sdrs, embed_subloop,
    max_distinct_construction, order_feasible, realize_design, ryser_feasible, LatinRectangle,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("the subloop is the whole loop, leaving no points")]
    SubloopIsWhole,
    #[error("block {index} contains {symbol}, which is not a point")]
    BlockOutsidePoints { index: usize, symbol: usize },
    #[error("blocks have different sizes {sizes:?}")]
    NonuniformBlocks { sizes: Vec<usize> },
    #[error("blocks {blocks:?} hold only {union} distinct points, so no distinct representatives exist")]
    HallViolation { blocks: Vec<usize>, union: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("symbol {symbol} outside 0..{n} in the rectangle")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("symbol {symbol} repeats in {axis} {index} of the rectangle")]
    NotLatin {
        axis: &'static str,
        index: usize,
        symbol: usize,
    },
    #[error("no loop of order {n} has a subloop of order {m}")]
    InfeasibleOrders { m: usize, n: usize },
    #[error("not a symmetric design: {reason}")]
    NotSymmetric { reason: String },
    #[error("inner loop has order {inner} but the blocks have size {k}")]
    BlockSizeMismatch { inner: usize, k: usize },
}

/// A point set with a multiset of blocks over it. Point labels are
/// arbitrary symbols (coset designs keep the ambient loop's labels);
/// blocks may repeat and their order is preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    points: Vec<usize>,
    blocks: Vec<SymSet>,
}

impl IncidenceStructure {
    pub fn new(points: Vec<usize>, blocks: Vec<SymSet>) -> Result<IncidenceStructure, DesignError> {
        let mut points = points;
        points.sort_unstable();
        points.dedup();
        let universe: SymSet = points.iter().copied().collect();
        for (index, b) in blocks.iter().enumerate() {
            if !b.is_subset(universe) {
                let symbol = b
                    .iter()
                    .find(|&x| !universe.contains(x))
                    .expect("a non-subset has an outside element");
                return Err(DesignError::BlockOutsidePoints { index, symbol });
            }
        }
        Ok(IncidenceStructure { points, blocks })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn blocks(&self) -> &[SymSet] {
        &self.blocks
    }

    pub fn v(&self) -> usize {
        self.points.len()
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Number of blocks containing the point.
    pub fn degree(&self, point: usize) -> usize {
        self.blocks.iter().filter(|b| b.contains(point)).count()
    }
}

/// Parameters of a uniform-block-size incidence structure.
///
/// `max_t` is the largest t such that the structure is a t-design; the
/// lambda vector lists the constants λ₁..λ_max_t. A structure that is not
/// even a 1-design gets `max_t = 0`, an empty lambda vector and no
/// replication number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: Option<usize>,
    pub max_t: usize,
    pub lambda: Vec<usize>,
    pub symmetric: bool,
    pub simple: bool,
}

/// The design carried by the cosets of `s` outside `s`: points are the
/// loop elements not in the subloop, and each such element contributes
/// its own coset as a block (so blocks repeat exactly as cosets do).
pub fn extract_design(s: &Subloop<'_>, side: Side) -> Result<IncidenceStructure, DesignError> {
    if s.is_whole_loop() {
        return Err(DesignError::SubloopIsWhole);
    }
    let q = s.parent();
    let family = crate::cosets::coset_family(s, side);
    let outside: Vec<usize> = (0..q.order()).filter(|&x| !s.contains(x)).collect();
    let blocks: Vec<SymSet> = outside.iter().map(|&x| family.coset(x)).collect();
    IncidenceStructure::new(outside, blocks)
}

/// Largest t with the t-design property, λ values, and the derived flags.
pub fn design_params(d: &IncidenceStructure) -> Result<DesignParams, DesignError> {
    let sizes: Vec<usize> = d.blocks.iter().map(|b| b.len()).collect();
    let k = match sizes.first() {
        Some(&k) if sizes.iter().all(|&s| s == k) => k,
        Some(_) => {
            let mut distinct = sizes.clone();
            distinct.sort_unstable();
            distinct.dedup();
            return Err(DesignError::NonuniformBlocks { sizes: distinct });
        }
        None => 0,
    };

    let mut max_t = 0;
    let mut lambda = Vec::new();
    for t in 1..=k {
        match coverage_constant(d, t) {
            Some(l) if l > 0 => {
                max_t = t;
                lambda.push(l);
            }
            _ => break,
        }
    }

    let r = (max_t >= 1).then(|| lambda[0]);
    let mut simple = true;
    for (i, b) in d.blocks.iter().enumerate() {
        if d.blocks[i + 1..].contains(b) {
            simple = false;
            break;
        }
    }
    Ok(DesignParams {
        v: d.v(),
        b: d.b(),
        k,
        r,
        max_t,
        lambda,
        symmetric: d.b() == d.v(),
        simple,
    })
}

/// The common number of blocks covering every t-subset of the points, or
/// None when the count varies.
fn coverage_constant(d: &IncidenceStructure, t: usize) -> Option<usize> {
    if d.points.len() < t {
        return None;
    }
    let mut common: Option<usize> = None;
    for subset in d.points.iter().copied().combinations(t) {
        let set: SymSet = subset.into_iter().collect();
        let count = d.blocks.iter().filter(|b| set.is_subset(**b)).count();
        match common {
            None => common = Some(count),
            Some(c) if c != count => return None,
            _ => {}
        }
    }
    common
}

/// Blocks covering each unordered point pair, keyed by (smaller, larger).
pub fn pair_coverage(d: &IncidenceStructure) -> BTreeMap<(usize, usize), usize> {
    let mut map = BTreeMap::new();
    for (i, &p) in d.points.iter().enumerate() {
        for &q in &d.points[i + 1..] {
            let count = d
                .blocks
                .iter()
                .filter(|b| b.contains(p) && b.contains(q))
                .count();
            map.insert((p, q), count);
        }
    }
    map
}

/// Searches for a point bijection carrying the block multiset of `a` onto
/// the block multiset of `b`. Candidates are pruned by per-point degree
/// and pair-coverage profiles before the backtracking begins, and partial
/// maps are checked pairwise as they grow.
pub fn designs_isomorphic(
    a: &IncidenceStructure,
    b: &IncidenceStructure,
) -> Option<Vec<(usize, usize)>> {
    if a.v() != b.v() || a.b() != b.b() {
        return None;
    }
    let mut sizes_a: Vec<usize> = a.blocks.iter().map(|s| s.len()).collect();
    let mut sizes_b: Vec<usize> = b.blocks.iter().map(|s| s.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return None;
    }
    if a.v() == 0 {
        return Some(Vec::new());
    }

    let cov_a = pair_coverage(a);
    let cov_b = pair_coverage(b);
    let profile = |d: &IncidenceStructure,
                   cov: &BTreeMap<(usize, usize), usize>,
                   p: usize|
     -> (usize, Vec<usize>) {
        let mut pairs: Vec<usize> = d
            .points
            .iter()
            .filter(|&&q| q != p)
            .map(|&q| cov[&(p.min(q), p.max(q))])
            .collect();
        pairs.sort_unstable();
        (d.degree(p), pairs)
    };
    let prof_a: Vec<_> = a.points.iter().map(|&p| profile(a, &cov_a, p)).collect();
    let prof_b: Vec<_> = b.points.iter().map(|&p| profile(b, &cov_b, p)).collect();

    let candidates: Vec<Vec<usize>> = prof_a
        .iter()
        .map(|pa| {
            (0..b.points.len())
                .filter(|&j| prof_b[j] == *pa)
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut order: Vec<usize> = (0..a.points.len()).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    struct Search<'s> {
        a: &'s IncidenceStructure,
        b: &'s IncidenceStructure,
        cov_a: &'s BTreeMap<(usize, usize), usize>,
        cov_b: &'s BTreeMap<(usize, usize), usize>,
        candidates: &'s [Vec<usize>],
        order: &'s [usize],
        assigned: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn pairs_match(&self, i: usize, j: usize) -> bool {
            let p = self.a.points[i];
            let q = self.b.points[j];
            for (x, slot) in self.assigned.iter().enumerate() {
                let Some(y) = *slot else { continue };
                let px = self.a.points[x];
                let qy = self.b.points[y];
                let ca = self.cov_a[&(p.min(px), p.max(px))];
                let cb = self.cov_b[&(q.min(qy), q.max(qy))];
                if ca != cb {
                    return false;
                }
            }
            true
        }

        fn blocks_map(&self) -> bool {
            let image: Vec<usize> = self
                .assigned
                .iter()
                .map(|s| self.b.points[s.unwrap()])
                .collect();
            let index_of = |p: usize| self.a.points.binary_search(&p).unwrap();
            let mut mapped: Vec<SymSet> = self
                .a
                .blocks
                .iter()
                .map(|blk| blk.iter().map(|p| image[index_of(p)]).collect())
                .collect();
            let mut target = self.b.blocks.clone();
            mapped.sort_by(SymSet::cmp_size_lex);
            target.sort_by(SymSet::cmp_size_lex);
            mapped == target
        }

        fn extend(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return self.blocks_map();
            }
            let i = self.order[depth];
            for &j in &self.candidates[i] {
                if self.used[j] || !self.pairs_match(i, j) {
                    continue;
                }
                self.assigned[i] = Some(j);
                self.used[j] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.assigned[i] = None;
                self.used[j] = false;
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        cov_a: &cov_a,
        cov_b: &cov_b,
        candidates: &candidates,
        order: &order,
        assigned: vec![None; a.points.len()],
        used: vec![false; b.points.len()],
    };
    search.extend(0).then(|| {
        search
            .assigned
            .iter()
            .enumerate()
            .map(|(i, j)| (a.points[i], b.points[j.unwrap()]))
            .collect()
    })
}

/// All k-subsets A of the loop, in lexicographic order, whose left
/// translates {xA : x ∈ Q} form a t-(n, k, λ) design over all of Q.
/// Requires k < n (the whole loop gives only a degenerate design) and
/// stops after `max_results` hits when a cap is given.
pub fn translate_design_search(
    q: &LoopTable,
    k: usize,
    t: usize,
    lambda: usize,
    max_results: Option<usize>,
) -> Vec<SymSet> {
    let n = q.order();
    if k == 0 || k >= n || t > k || lambda == 0 {
        return Vec::new();
    }
    let mut found = Vec::new();
    for subset in (0..n).combinations(k) {
        if translates_form_design(q, &subset, t, lambda) {
            found.push(subset.into_iter().collect());
            if max_results.is_some_and(|cap| found.len() >= cap) {
                break;
            }
        }
    }
    found
}

fn translates_form_design(q: &LoopTable, base: &[usize], t: usize, lambda: usize) -> bool {
    let n = q.order();
    let blocks: Vec<Vec<usize>> = (0..n)
        .map(|x| base.iter().map(|&a| q.mul(x, a)).collect())
        .collect();
    let mut coverage: std::collections::HashMap<SymSet, usize> = std::collections::HashMap::new();
    for block in &blocks {
        for sub in block.iter().copied().combinations(t) {
            let key: SymSet = sub.into_iter().collect();
            let c = coverage.entry(key).or_insert(0);
            *c += 1;
            if *c > lambda {
                return false;
            }
        }
    }
    coverage.len() == binomial(n, t) && coverage.values().all(|&c| c == lambda)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out as usize
}

/// The projective plane of order 2 as a design on points 0..6: blocks are
/// the translates of the difference set {0, 1, 3} modulo 7.
pub fn fano_plane() -> IncidenceStructure {
    let blocks = (0..7)
        .map(|i| [i, (i + 1) % 7, (i + 3) % 7].into_iter().collect())
        .collect();
    IncidenceStructure::new((0..7).collect(), blocks).expect("fano blocks lie on 0..6")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::catalog;

    fn subloop<'a>(q: &'a LoopTable, elems: &[usize]) -> Subloop<'a> {
        Subloop::from_elements(q, elems).unwrap()
    }

    #[test]
    fn whole_subloop_leaves_no_points() {
        let q = catalog::cyclic(4);
        let s = subloop(&q, &[0, 1, 2, 3]);
        assert_eq!(
            extract_design(&s, Side::Left),
            Err(DesignError::SubloopIsWhole)
        );
    }

    #[test]
    fn intro10_extracts_the_plane_of_order_two() {
        let q = catalog::intro10();
        let s = subloop(&q, &[0, 1, 2]);
        for side in [Side::Left, Side::Right] {
            let d = extract_design(&s, side).unwrap();
            let p = design_params(&d).unwrap();
            assert_eq!(
                p,
                DesignParams {
                    v: 7,
                    b: 7,
                    k: 3,
                    r: Some(3),
                    max_t: 2,
                    lambda: vec![3, 1],
                    symmetric: true,
                    simple: true,
                }
            );
            let iso = designs_isomorphic(&d, &fano_plane()).expect("unique 2-(7,3,1)");
            assert_eq!(iso.len(), 7);
        }
    }

    #[test]
    fn chein12_design_is_a_near_2_design() {
        let q = catalog::chein12();
        let s = subloop(&q, &[0, 1, 6, 7]);
        let d = extract_design(&s, Side::Left).unwrap();
        let p = design_params(&d).unwrap();
        assert_eq!((p.v, p.b, p.k, p.r), (8, 8, 4, Some(4)));
        assert_eq!(p.max_t, 1);
        assert!(p.symmetric && p.simple);

        let coverage = pair_coverage(&d);
        let uncovered = [(2, 4), (3, 5), (8, 10), (9, 11)];
        for (&pair, &count) in &coverage {
            if uncovered.contains(&pair) {
                assert_eq!(count, 0, "{pair:?}");
            } else {
                assert_eq!(count, 2, "{pair:?}");
            }
        }
        assert_eq!(coverage.len(), 28);
    }

    #[test]
    fn group_design_repeats_blocks() {
        let q = catalog::cyclic(6);
        let s = subloop(&q, &[0, 3]);
        let d = extract_design(&s, Side::Left).unwrap();
        let expect: Vec<SymSet> = [vec![1, 4], vec![2, 5], vec![1, 4], vec![2, 5]]
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
        assert_eq!(d.blocks(), &expect[..]);
        let p = design_params(&d).unwrap();
        assert_eq!(
            p,
            DesignParams {
                v: 4,
                b: 4,
                k: 2,
                r: Some(2),
                max_t: 1,
                lambda: vec![2],
                symmetric: true,
                simple: false,
            }
        );
    }

    #[test]
    fn single_block_is_a_full_design() {
        let d = IncidenceStructure::new(vec![4, 7, 9], vec![[4, 7, 9].into_iter().collect()])
            .unwrap();
        let p = design_params(&d).unwrap();
        assert_eq!(p.max_t, 3);
        assert_eq!(p.lambda, vec![1, 1, 1]);
        assert!(!p.symmetric);
    }

    #[test]
    fn nonuniform_blocks_are_reported() {
        let d = IncidenceStructure::new(
            vec![0, 1, 2],
            vec![[0, 1].into_iter().collect(), [2].into_iter().collect()],
        )
        .unwrap();
        assert_eq!(
            design_params(&d),
            Err(DesignError::NonuniformBlocks { sizes: vec![1, 2] })
        );
    }

    #[test]
    fn blocks_must_lie_on_the_points() {
        let err = IncidenceStructure::new(vec![0, 1], vec![[0, 2].into_iter().collect()]);
        assert_eq!(
            err,
            Err(DesignError::BlockOutsidePoints {
                index: 0,
                symbol: 2
            })
        );
    }

    #[test]
    fn every_catalog_coset_design_is_a_symmetric_1_design() {
        for q in catalog::test_catalog() {
            for s in q.all_subloops() {
                if s.is_whole_loop() {
                    continue;
                }
                for side in [Side::Left, Side::Right] {
                    let d = extract_design(&s, side).unwrap();
                    let p = design_params(&d).unwrap();
                    let (n, m) = (q.order(), s.order());
                    assert_eq!((p.v, p.b, p.k, p.r), (n - m, n - m, m, Some(m)));
                    assert!(p.symmetric);
                    assert!(p.max_t >= 1 && p.lambda[0] == m);
                }
            }
        }
    }

    #[test]
    fn fano_is_isomorphic_to_itself_in_other_labels() {
        let fano = fano_plane();
        let relabel = [3usize, 5, 0, 6, 1, 4, 2];
        let blocks = fano
            .blocks()
            .iter()
            .map(|b| b.iter().map(|p| relabel[p]).collect())
            .collect();
        let other = IncidenceStructure::new((0..7).collect(), blocks).unwrap();
        let iso = designs_isomorphic(&fano, &other).unwrap();
        // the plane has many automorphisms, so the map found need not be
        // the relabeling above — but it must carry blocks onto blocks
        let image: Vec<usize> = iso.iter().map(|&(_, q)| q).collect();
        let mut mapped: Vec<SymSet> = fano
            .blocks()
            .iter()
            .map(|b| b.iter().map(|p| image[p]).collect())
            .collect();
        let mut target = other.blocks().to_vec();
        mapped.sort_by(SymSet::cmp_size_lex);
        target.sort_by(SymSet::cmp_size_lex);
        assert_eq!(mapped, target);
    }

    #[test]
    fn designs_with_different_coverage_are_not_isomorphic() {
        // same parameters 1-(4,2,2), different pair structure
        let a = IncidenceStructure::new(
            (0..4).collect(),
            vec![
                [0, 1].into_iter().collect(),
                [0, 1].into_iter().collect(),
                [2, 3].into_iter().collect(),
                [2, 3].into_iter().collect(),
            ],
        )
        .unwrap();
        let b = IncidenceStructure::new(
            (0..4).collect(),
            vec![
                [0, 1].into_iter().collect(),
                [1, 2].into_iter().collect(),
                [2, 3].into_iter().collect(),
                [3, 0].into_iter().collect(),
            ],
        )
        .unwrap();
        assert_eq!(designs_isomorphic(&a, &b), None);
        assert!(designs_isomorphic(&a, &a).is_some());
    }

    #[test]
    fn translate_search_finds_the_difference_set() {
        let q = catalog::cyclic(7);
        let found = translate_design_search(&q, 3, 2, 1, None);
        assert!(!found.is_empty());
        assert_eq!(found[0], [0, 1, 3].into_iter().collect::<SymSet>());
        for a in &found {
            assert!(translates_form_design(&q, &a.to_vec(), 2, 1));
        }
    }

    #[test]
    fn translate_search_respects_counting_obstructions() {
        let q = catalog::cyclic(6);
        assert!(translate_design_search(&q, 2, 2, 1, None).is_empty());
    }

    #[test]
    fn translate_search_excludes_the_whole_loop() {
        let q = catalog::cyclic(5);
        assert!(translate_design_search(&q, 5, 1, 5, None).is_empty());
    }

    #[test]
    fn translate_search_cap_is_respected() {
        let q = catalog::cyclic(7);
        let found = translate_design_search(&q, 3, 2, 1, Some(2));
        assert_eq!(found.len(), 2);
    }
}
