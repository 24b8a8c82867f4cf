//! Coset families of a subloop and their partition behavior.
//!
//! In a loop, the left cosets xS of a subloop S need not partition Q, need
//! not be equal in number to the right cosets, and two cosets may overlap
//! partially. This module computes the full family (one coset per element,
//! so multiplicity is visible), decides whether the family is a partition,
//! and searches for partitions by exact cover.

use crate::cover::ExactCover;
use crate::loops::{Side, Subloop};
use crate::symset::SymSet;

mod semilattice;

pub use semilattice::{
    aaip_map_check, semilattice_extension_test, semilattices_isomorphic, AaipCheck,
    MeetSemilattice, SemilatticeError,
};

/// All cosets of a subloop, indexed by representative: entry x holds xS
/// (or Sx on the right side). Equal cosets with different representatives
/// are kept, so the family always has exactly `Q.order()` entries.
#[derive(Clone)]
pub struct CosetFamily<'a> {
    subloop: Subloop<'a>,
    side: Side,
    cosets: Vec<SymSet>,
}

pub fn coset_family<'a>(s: &Subloop<'a>, side: Side) -> CosetFamily<'a> {
    let q = s.parent();
    let cosets = (0..q.order())
        .map(|x| {
            s.iter()
                .map(|m| match side {
                    Side::Left => q.mul(x, m),
                    Side::Right => q.mul(m, x),
                })
                .collect()
        })
        .collect();
    CosetFamily {
        subloop: *s,
        side,
        cosets,
    }
}

impl<'a> CosetFamily<'a> {
    pub fn subloop(&self) -> &Subloop<'a> {
        &self.subloop
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Coset of representative x.
    pub fn coset(&self, x: usize) -> SymSet {
        self.cosets[x]
    }

    pub fn all(&self) -> &[SymSet] {
        &self.cosets
    }

    /// Distinct cosets with their least representatives, ascending.
    pub fn distinct(&self) -> Vec<(usize, SymSet)> {
        let mut seen: Vec<SymSet> = Vec::new();
        let mut out = Vec::new();
        for (x, &c) in self.cosets.iter().enumerate() {
            if !seen.contains(&c) {
                seen.push(c);
                out.push((x, c));
            }
        }
        out
    }

    pub fn distinct_sets(&self) -> Vec<SymSet> {
        self.distinct().into_iter().map(|(_, c)| c).collect()
    }

    /// How many representatives produce each distinct coset, keyed by least
    /// representative.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        self.distinct()
            .iter()
            .map(|&(rep, c)| (rep, self.cosets.iter().filter(|&&d| d == c).count()))
            .collect()
    }

    /// True when distinct cosets are pairwise disjoint; together with every
    /// element lying in its own coset this makes the family a partition.
    pub fn is_partition(&self) -> bool {
        let distinct = self.distinct_sets();
        for (i, a) in distinct.iter().enumerate() {
            for b in &distinct[i + 1..] {
                if !a.intersection(*b).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether the coset family of `s` on the given side partitions the loop.
pub fn decomposition_holds(s: &Subloop<'_>, side: Side) -> bool {
    coset_family(s, side).is_partition()
}

/// Searches for a set of pairwise disjoint cosets covering Q. The subloop
/// itself is always one of them (every other coset either equals S or
/// avoids it), so the search runs over Q \ S. Returns the least
/// representatives of the chosen cosets, starting with 0 for S.
pub fn find_partition(s: &Subloop<'_>, side: Side) -> Option<Vec<usize>> {
    let q = s.parent();
    let family = coset_family(s, side);
    let outside: Vec<usize> = (0..q.order()).filter(|&x| !s.contains(x)).collect();
    let index_of: std::collections::BTreeMap<usize, usize> = outside
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i))
        .collect();

    // distinct cosets with representatives outside S; cosets meeting S are
    // S itself and never useful here
    let mut reps = Vec::new();
    let mut blocks = Vec::new();
    for (rep, c) in family.distinct() {
        if s.contains(rep) {
            continue;
        }
        debug_assert!(c.intersection(s.elements()).is_empty() || c == s.elements());
        reps.push(rep);
        blocks.push(c.iter().map(|p| index_of[&p]).collect());
    }

    let cover = ExactCover::new(outside.len(), blocks).solve()?;
    let mut rest: Vec<usize> = cover.into_iter().map(|b| reps[b]).collect();
    rest.sort_unstable();
    let mut chosen = vec![0];
    chosen.append(&mut rest);
    Some(chosen)
}

/// Meet-semilattice of all nonempty-family intersections of distinct
/// cosets, plus the empty set whenever two cosets are disjoint.
pub fn intersection_closure(family: &CosetFamily<'_>) -> MeetSemilattice {
    MeetSemilattice::close_under_intersection(family.distinct_sets())
}
