//! Orbits of the relative right multiplication group: the permutations of
//! the loop generated by right translations with subloop elements.

use crate::cover::ExactCover;
use crate::loops::Subloop;
use crate::symset::SymSet;

/// The orbits of `⟨R_s : s ∈ S⟩` on a loop, sorted by least element.
/// They partition the loop; the orbit of 0 is exactly the subloop, and
/// every left coset xS lies inside the orbit of x.
#[derive(Clone, Debug)]
pub struct OrbitPartition<'a> {
    subloop: Subloop<'a>,
    orbits: Vec<SymSet>,
}

impl<'a> OrbitPartition<'a> {
    pub fn subloop(&self) -> Subloop<'a> {
        self.subloop
    }

    pub fn orbits(&self) -> &[SymSet] {
        &self.orbits
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    pub fn orbit_of(&self, x: usize) -> SymSet {
        *self
            .orbits
            .iter()
            .find(|o| o.contains(x))
            .expect("orbits cover the loop")
    }
}

/// Computes the orbits by forward search along the edges `x → xs`.
///
/// Forward edges alone suffice for any loop: each right translation is a
/// permutation of finite order, so its inverse is one of its own powers
/// and every edge can be walked back by going forward long enough.
pub fn relative_orbits<'a>(s: &Subloop<'a>) -> OrbitPartition<'a> {
    let q = s.parent();
    let n = q.order();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut orbit = SymSet::EMPTY;
        let mut queue = vec![root];
        seen[root] = true;
        while let Some(x) = queue.pop() {
            orbit = orbit.union(SymSet::singleton(x));
            for t in s.iter() {
                let y = q.mul(x, t);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        orbits.push(orbit);
    }
    OrbitPartition {
        subloop: *s,
        orbits,
    }
}

/// One orbit's size, its remainder modulo the subloop order, and an exact
/// decomposition of the orbit into disjoint left cosets when one exists
/// (as the sorted least representatives of the chosen cosets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbit: SymSet,
    pub size: usize,
    pub remainder: usize,
    pub coset_cover: Option<Vec<usize>>,
}

/// Divisibility and coset-decomposition verdicts for every orbit.
pub fn lagrange_report(s: &Subloop<'_>) -> Vec<OrbitReport> {
    let q = s.parent();
    let m = s.order();
    relative_orbits(s)
        .orbits()
        .iter()
        .map(|&orbit| {
            let points = orbit.to_vec();
            let point_index = |p: usize| points.binary_search(&p).expect("point is in the orbit");

            // distinct cosets with representatives inside the orbit; every
            // such coset stays inside the orbit, since its elements are
            // reachable from the representative by single translations
            let mut reps: Vec<usize> = Vec::new();
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            let mut seen: Vec<SymSet> = Vec::new();
            for &x in &points {
                let coset: SymSet = s.iter().map(|t| q.mul(x, t)).collect();
                if !seen.contains(&coset) {
                    seen.push(coset);
                    reps.push(x);
                    blocks.push(coset.iter().map(point_index).collect());
                }
            }
            let coset_cover = ExactCover::new(points.len(), blocks).solve().map(|chosen| {
                let mut cover: Vec<usize> = chosen.into_iter().map(|b| reps[b]).collect();
                cover.sort_unstable();
                cover
            });
            OrbitReport {
                orbit,
                size: orbit.len(),
                remainder: orbit.len() % m,
                coset_cover,
            }
        })
        .collect()
}

/// The right-translation action on one orbit as a table of orbit-local
/// indices: one row per orbit element (ascending), one column per subloop
/// element (ascending), entry = position of `x·s` within the orbit. The
/// column order matches the subloop's own rank-relabeled table, so after
/// canonical relabeling these rows are directly comparable with
/// enumerated rectangles.
pub fn orbit_action_rows(s: &Subloop<'_>, orbit: SymSet) -> Vec<Vec<usize>> {
    let q = s.parent();
    let points = orbit.to_vec();
    let index = |p: usize| {
        points
            .binary_search(&p)
            .expect("orbits are closed under right translation")
    };
    points
        .iter()
        .map(|&x| s.iter().map(|t| index(q.mul(x, t))).collect())
        .collect()
}

/// Whether every actual orbit length appears among the enumerated
/// potential lengths.
pub fn orbit_lengths_in_enumerated(s: &Subloop<'_>, enumerated: &[usize]) -> bool {
    relative_orbits(s)
        .sizes()
        .iter()
        .all(|len| enumerated.contains(len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{catalog, LoopTable};

    fn subloop<'a>(q: &'a LoopTable, elems: &[usize]) -> Subloop<'a> {
        Subloop::from_elements(q, elems).unwrap()
    }

    /// Orbit computation that also walks division edges, for cross-checks.
    fn bidirectional_orbits(s: &Subloop<'_>) -> Vec<SymSet> {
        let q = s.parent();
        let n = q.order();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            let mut orbit = SymSet::EMPTY;
            let mut queue = vec![root];
            seen[root] = true;
            while let Some(x) = queue.pop() {
                orbit = orbit.union(SymSet::singleton(x));
                for t in s.iter() {
                    for y in [q.mul(x, t), q.right_div(x, t)] {
                        if !seen[y] {
                            seen[y] = true;
                            queue.push(y);
                        }
                    }
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Orbits of the full permutation group generated by the right
    /// translations, built by explicit closure.
    fn group_closure_orbits(s: &Subloop<'_>) -> Vec<SymSet> {
        let q = s.parent();
        let n = q.order();
        let generators: Vec<Vec<usize>> = s
            .iter()
            .map(|t| (0..n).map(|x| q.mul(x, t)).collect())
            .collect();
        let mut group: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        group.insert((0..n).collect());
        let mut frontier: Vec<Vec<usize>> = group.iter().cloned().collect();
        while let Some(g) = frontier.pop() {
            for gen in &generators {
                let composed: Vec<usize> = g.iter().map(|&x| gen[x]).collect();
                if group.insert(composed.clone()) {
                    frontier.push(composed);
                }
            }
        }

        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            let orbit: SymSet = group.iter().map(|g| g[root]).collect();
            for x in orbit.iter() {
                seen[x] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    #[test]
    fn the_whole_loop_is_one_orbit() {
        let q = catalog::chein12();
        let s = subloop(&q, &(0..12).collect::<Vec<_>>());
        let p = relative_orbits(&s);
        assert_eq!(p.orbits(), &[SymSet::full(12)]);
    }

    #[test]
    fn group_orbits_are_the_cosets() {
        let q = catalog::cyclic(6);
        let s = subloop(&q, &[0, 3]);
        let p = relative_orbits(&s);
        let expect: Vec<SymSet> = [vec![0, 3], vec![1, 4], vec![2, 5]]
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
        assert_eq!(p.orbits(), &expect[..]);
    }

    #[test]
    fn the_orbit_of_the_identity_is_the_subloop() {
        for q in catalog::test_catalog() {
            for s in q.all_subloops() {
                let p = relative_orbits(&s);
                assert_eq!(p.orbit_of(0), s.elements(), "{:?}", q.name());
            }
        }
    }

    #[test]
    fn left_cosets_stay_inside_their_orbit() {
        let q = catalog::intro10();
        let s = subloop(&q, &[0, 1, 2]);
        let p = relative_orbits(&s);
        for x in 0..q.order() {
            let coset: SymSet = s.iter().map(|t| q.mul(x, t)).collect();
            assert!(coset.is_subset(p.orbit_of(x)));
        }
    }

    #[test]
    fn chein12_symmetric_subloop_splits_into_two_sixes() {
        let q = catalog::chein12();
        let s = subloop(&q, &[0, 1, 2, 3, 4, 5]);
        let p = relative_orbits(&s);
        for size in p.sizes() {
            assert_eq!(size % 6, 0);
            assert!([6, 18].contains(&size));
        }
        // inside an order-12 loop that forces exactly two orbits of six
        assert_eq!(p.sizes(), vec![6, 6]);
    }

    #[test]
    fn forward_search_matches_bidirectional_search() {
        for q in catalog::test_catalog() {
            for s in q.all_subloops() {
                assert_eq!(
                    relative_orbits(&s).orbits(),
                    &bidirectional_orbits(&s)[..],
                    "{:?}",
                    q.name()
                );
            }
        }
    }

    #[test]
    fn forward_search_matches_group_closure() {
        for q in catalog::test_catalog() {
            if q.order() > 16 {
                continue;
            }
            for s in q.all_subloops() {
                // the whole loop acting on itself is transitive and is
                // asserted separately; its generated group can be huge
                if s.is_whole_loop() {
                    continue;
                }
                assert_eq!(
                    relative_orbits(&s).orbits(),
                    &group_closure_orbits(&s)[..],
                    "{:?}",
                    q.name()
                );
            }
        }
    }

    #[test]
    fn group_orbits_are_single_cosets_in_reports() {
        let q = catalog::dihedral(4);
        for s in q.all_subloops() {
            for report in lagrange_report(&s) {
                assert_eq!(report.size, s.order());
                assert_eq!(report.remainder, 0);
                let cover = report.coset_cover.expect("one coset covers its orbit");
                assert_eq!(cover, vec![report.orbit.min().unwrap()]);
            }
        }
    }

    #[test]
    fn cyclic_subloops_of_right_bol_loops_have_coset_sized_orbits() {
        for q in catalog::test_catalog() {
            if !crate::loops::properties::check_properties(&q).right_bol {
                continue;
            }
            for s in q.all_subloops() {
                let generated_by_one = s
                    .iter()
                    .any(|x| q.subloop_closure(&[x]).elements() == s.elements());
                if !generated_by_one {
                    continue;
                }
                for report in lagrange_report(&s) {
                    assert_eq!(report.size, s.order(), "{:?}", q.name());
                    assert_eq!(
                        report.coset_cover,
                        Some(vec![report.orbit.min().unwrap()])
                    );
                }
            }
        }
    }

    #[test]
    fn chein12_divisibility_holds_throughout() {
        let q = catalog::chein12();
        let s = subloop(&q, &[0, 1, 6, 7]);
        for report in lagrange_report(&s) {
            assert_eq!(report.remainder, 0);
        }
    }

    #[test]
    fn per_orbit_covers_assemble_into_a_partition() {
        let q = catalog::chein12();
        let s = subloop(&q, &[0, 1, 6, 7]);
        let reports = lagrange_report(&s);
        let mut union = SymSet::EMPTY;
        let mut total = 0;
        for report in &reports {
            for &x in report.coset_cover.as_ref().expect("cover exists here") {
                let coset: SymSet = s.iter().map(|t| q.mul(x, t)).collect();
                assert!(union.intersection(coset).is_empty());
                union = union.union(coset);
                total += coset.len();
            }
        }
        assert_eq!(union, SymSet::full(q.order()));
        assert_eq!(total, q.order());
    }

    #[test]
    fn enumerated_length_membership() {
        let q = catalog::chein12();
        let s = subloop(&q, &[0, 1, 2, 3, 4, 5]);
        assert!(orbit_lengths_in_enumerated(&s, &[6, 18]));
        assert!(!orbit_lengths_in_enumerated(&s, &[18]));

        // the subloop acting on itself realizes its own order
        let s3 = catalog::symmetric_group3();
        let whole = subloop(&s3, &(0..6).collect::<Vec<_>>());
        assert!(orbit_lengths_in_enumerated(&whole, &[6, 18]));

        let prod = catalog::direct_product(&catalog::symmetric_group3(), &catalog::cyclic(2));
        let elems: Vec<usize> = (0..prod.order())
            .filter(|&x| {
                // first-factor embedding: pairs with trivial second part
                x % 2 == 0
            })
            .collect();
        let embedded = subloop(&prod, &elems);
        assert!(orbit_lengths_in_enumerated(&embedded, &[6, 18]));
    }

    #[test]
    fn coverless_orbits_are_reported_when_sizes_do_not_divide() {
        let q = catalog::intro10();
        let s = subloop(&q, &[0, 1, 2]);
        for report in lagrange_report(&s) {
            if report.orbit.contains(0) {
                assert_eq!(report.size, 3);
                assert_eq!(report.coset_cover, Some(vec![0]));
            } else {
                // the other orbit has the remaining seven elements
                assert_eq!(report.size, 7);
                assert_eq!(report.remainder, 1);
                assert_eq!(report.coset_cover, None);
            }
        }
    }

    #[test]
    fn group_orbit_rows_relabel_to_the_subloop_table() {
        let q = catalog::cyclic(6);
        let s = subloop(&q, &[0, 3]);
        let p = relative_orbits(&s);
        let orbit = p.orbit_of(1);
        let rows = orbit_action_rows(&s, orbit);
        assert_eq!(rows, vec![vec![0, 1], vec![1, 0]]);
        for root in 0..orbit.len() {
            let canon = crate::bol::canonical_action_table(&rows, root);
            assert_eq!(canon.rows(), &catalog::cyclic(2).rows()[..]);
        }
    }

    #[test]
    fn chein12_orbit_tables_appear_among_the_enumerated_rectangles() {
        let q = catalog::chein12();
        let s = subloop(&q, &[0, 1, 2, 3, 4, 5]);
        let (table, _) = s.to_table();
        let ctx = crate::bol::build_context(table).unwrap();
        let enumerated =
            crate::bol::enumerate(&ctx, &crate::bol::EnumConfig::for_order(s.order()));
        for orbit in relative_orbits(&s).orbits() {
            let rows = orbit_action_rows(&s, *orbit);
            for root in 0..orbit.len() {
                let canon = crate::bol::canonical_action_table(&rows, root);
                assert!(enumerated.rectangles.contains(&canon));
            }
        }
    }

    #[test]
    fn side_convention_is_right_translations() {
        // in the order-6 loop from the worked coset example, left and
        // right cosets differ, so the orbit structure pins the convention
        let q = catalog::example6();
        let s = subloop(&q, &[0, 1]);
        let p = relative_orbits(&s);
        assert_eq!(p.orbit_of(2).len(), 4, "left cosets {{2,3}},{{2,5}} chain up");
    }
}
