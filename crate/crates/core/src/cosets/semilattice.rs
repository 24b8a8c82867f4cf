//! Meet-semilattices of coset intersections.
//!
//! Closing a coset family under pairwise intersection yields a finite
//! meet-semilattice ordered by inclusion, with the distinct cosets as its
//! maximal elements. Since the maximal elements determine every other
//! element (each is the intersection of the maximals above it), a map
//! defined on maximal elements alone can be tested for extension to a full
//! isomorphism without ever searching the lower layers.

use thiserror::Error;

use crate::loops::{Side, Subloop};
use crate::symset::SymSet;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SemilatticeError {
    #[error("not closed under intersection: {a} meet {b} is {meet}, which is absent")]
    NotClosed { a: SymSet, b: SymSet, meet: SymSet },
    #[error("maximal elements are not meet-dense: {element} is not the intersection of the maximal elements above it")]
    NotMeetDense { element: SymSet },
    #[error("the given map is not a bijection between the maximal element families")]
    NotAMaximalBijection,
    #[error("loop lacks the antiautomorphic inverse property: {witness}")]
    NotAaip { witness: String },
}

/// A finite family of sets closed under pairwise intersection, ordered by
/// inclusion. Elements are kept sorted by size then lexicographically, so
/// two equal semilattices have identical element slices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeetSemilattice {
    elements: Vec<SymSet>,
    maximal: Vec<SymSet>,
}

impl MeetSemilattice {
    /// The smallest intersection-closed family containing the generators.
    /// The empty set appears exactly when two members are disjoint.
    pub fn close_under_intersection(generators: Vec<SymSet>) -> MeetSemilattice {
        let mut elements: Vec<SymSet> = Vec::new();
        for g in generators {
            if !elements.contains(&g) {
                elements.push(g);
            }
        }
        let mut frontier = elements.clone();
        while let Some(a) = frontier.pop() {
            let mut fresh = Vec::new();
            for &b in &elements {
                let meet = a.intersection(b);
                if !elements.contains(&meet) && !fresh.contains(&meet) {
                    fresh.push(meet);
                }
            }
            elements.extend_from_slice(&fresh);
            frontier.extend_from_slice(&fresh);
        }
        MeetSemilattice::finish(elements)
    }

    /// Wraps an already-closed family, verifying closure.
    pub fn from_elements(elements: Vec<SymSet>) -> Result<MeetSemilattice, SemilatticeError> {
        let mut distinct: Vec<SymSet> = Vec::new();
        for e in elements {
            if !distinct.contains(&e) {
                distinct.push(e);
            }
        }
        for (i, &a) in distinct.iter().enumerate() {
            for &b in &distinct[i + 1..] {
                let meet = a.intersection(b);
                if !distinct.contains(&meet) {
                    return Err(SemilatticeError::NotClosed { a, b, meet });
                }
            }
        }
        Ok(MeetSemilattice::finish(distinct))
    }

    fn finish(mut elements: Vec<SymSet>) -> MeetSemilattice {
        elements.sort_by(SymSet::cmp_size_lex);
        let maximal = elements
            .iter()
            .copied()
            .filter(|&e| {
                !elements
                    .iter()
                    .any(|&other| other != e && e.is_subset(other))
            })
            .collect();
        MeetSemilattice { elements, maximal }
    }

    pub fn elements(&self) -> &[SymSet] {
        &self.elements
    }

    pub fn maximal(&self) -> &[SymSet] {
        &self.maximal
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: SymSet) -> bool {
        self.elements.contains(&s)
    }

    /// Intersection of the maximal elements containing `p` (every element
    /// lies under at least one maximal element, so this is never an empty
    /// intersection for `p` in the family).
    fn hull(&self, p: SymSet) -> SymSet {
        self.maximal
            .iter()
            .copied()
            .filter(|&m| p.is_subset(m))
            .reduce(|a, b| a.intersection(b))
            .expect("every element lies under some maximal element")
    }

    /// True when every element equals the intersection of the maximal
    /// elements above it. Intersection closures of equal-sized cosets
    /// always are; hand-built families need not be.
    pub fn is_meet_dense(&self) -> bool {
        self.elements.iter().all(|&p| self.hull(p) == p)
    }
}

fn check_meet_dense(lat: &MeetSemilattice) -> Result<(), SemilatticeError> {
    for &p in lat.elements() {
        if lat.hull(p) != p {
            return Err(SemilatticeError::NotMeetDense { element: p });
        }
    }
    Ok(())
}

fn is_maximal_bijection(
    p: &MeetSemilattice,
    q: &MeetSemilattice,
    map: &[(SymSet, SymSet)],
) -> bool {
    if map.len() != p.maximal().len() || map.len() != q.maximal().len() {
        return false;
    }
    let mut sources: Vec<SymSet> = map.iter().map(|&(a, _)| a).collect();
    let mut images: Vec<SymSet> = map.iter().map(|&(_, b)| b).collect();
    sources.sort_by(SymSet::cmp_size_lex);
    images.sort_by(SymSet::cmp_size_lex);
    sources == p.maximal() && images == q.maximal()
}

/// Tests whether a bijection between the maximal elements of two
/// meet-semilattices extends to an isomorphism of the whole structures.
///
/// The only possible extension sends each element to the intersection of
/// the images of the maximal elements above it; the map extends exactly
/// when the two families have the same size and that candidate is
/// injective and preserves pairwise intersections. On success the full
/// element-by-element isomorphism is returned.
///
/// Both inputs must be meet-dense (true of any coset intersection
/// closure), and `map` must pair off the maximal families exactly.
pub fn semilattice_extension_test(
    p: &MeetSemilattice,
    q: &MeetSemilattice,
    map: &[(SymSet, SymSet)],
) -> Result<Option<Vec<(SymSet, SymSet)>>, SemilatticeError> {
    check_meet_dense(p)?;
    check_meet_dense(q)?;
    if !is_maximal_bijection(p, q, map) {
        return Err(SemilatticeError::NotAMaximalBijection);
    }
    if p.len() != q.len() {
        return Ok(None);
    }

    let image = |x: SymSet| -> SymSet {
        map.iter()
            .filter(|&&(m, _)| x.is_subset(m))
            .map(|&(_, fm)| fm)
            .reduce(|a, b| a.intersection(b))
            .expect("every element lies under some maximal element")
    };

    let candidates: Vec<SymSet> = p.elements().iter().map(|&x| image(x)).collect();
    for (i, a) in candidates.iter().enumerate() {
        if candidates[i + 1..].contains(a) {
            return Ok(None);
        }
    }
    for (i, &x) in p.elements().iter().enumerate() {
        for (j, &y) in p.elements().iter().enumerate().skip(i) {
            let meet = x.intersection(y);
            let pos = p
                .elements()
                .iter()
                .position(|&e| e == meet)
                .expect("closed under intersection");
            if candidates[pos] != candidates[i].intersection(candidates[j]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(
        p.elements()
            .iter()
            .copied()
            .zip(candidates)
            .collect(),
    ))
}

/// Searches for an isomorphism between two meet-semilattices by matching
/// up maximal elements and testing extension.
///
/// Maximal elements are compared by how many elements sit below them and
/// how their pairwise intersections relate, which prunes most mismatches
/// before the full extension test runs at the leaves. Note that an
/// isomorphism is a map of inclusion orders: corresponding elements need
/// not have equal sizes as sets.
pub fn semilattices_isomorphic(
    p: &MeetSemilattice,
    q: &MeetSemilattice,
) -> Result<Option<Vec<(SymSet, SymSet)>>, SemilatticeError> {
    check_meet_dense(p)?;
    check_meet_dense(q)?;
    if p.len() != q.len() || p.maximal().len() != q.maximal().len() {
        return Ok(None);
    }
    if p.is_empty() {
        return Ok(Some(Vec::new()));
    }

    let below = |lat: &MeetSemilattice, s: SymSet| -> usize {
        lat.elements().iter().filter(|&&e| e.is_subset(s)).count()
    };
    let pm = p.maximal().to_vec();
    let qm = q.maximal().to_vec();
    // order-invariant fingerprint of one maximal element: the count below
    // it, plus the sorted counts below its meets with every other maximal
    let profile = |lat: &MeetSemilattice, all: &[SymSet], m: SymSet| -> (usize, Vec<usize>) {
        let mut meets: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&k| k != m)
            .map(|k| below(lat, m.intersection(k)))
            .collect();
        meets.sort_unstable();
        (below(lat, m), meets)
    };
    let p_profiles: Vec<_> = pm.iter().map(|&m| profile(p, &pm, m)).collect();
    let q_profiles: Vec<_> = qm.iter().map(|&m| profile(q, &qm, m)).collect();
    let candidates: Vec<Vec<usize>> = p_profiles
        .iter()
        .map(|prof| {
            (0..qm.len())
                .filter(|&j| q_profiles[j] == *prof)
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }

    // assign scarcest maximal elements first
    let mut order: Vec<usize> = (0..pm.len()).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    struct Search<'s> {
        p: &'s MeetSemilattice,
        q: &'s MeetSemilattice,
        pm: &'s [SymSet],
        qm: &'s [SymSet],
        candidates: &'s [Vec<usize>],
        order: &'s [usize],
        assigned: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, depth: usize) -> Option<Vec<(SymSet, SymSet)>> {
            if depth == self.order.len() {
                let map: Vec<(SymSet, SymSet)> = self
                    .assigned
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (self.pm[i], self.qm[j.unwrap()]))
                    .collect();
                return match semilattice_extension_test(self.p, self.q, &map) {
                    Ok(Some(full)) => Some(full),
                    _ => None,
                };
            }
            let i = self.order[depth];
            for &j in &self.candidates[i] {
                if self.used[j] {
                    continue;
                }
                if !self.meets_agree(i, j) {
                    continue;
                }
                self.assigned[i] = Some(j);
                self.used[j] = true;
                if let Some(found) = self.extend(depth + 1) {
                    return Some(found);
                }
                self.assigned[i] = None;
                self.used[j] = false;
            }
            None
        }

        // against every already-assigned maximal, equal meets must map to
        // equal meets and distinct meets to distinct meets
        fn meets_agree(&self, i: usize, j: usize) -> bool {
            let mut seen: Vec<(SymSet, SymSet)> = Vec::new();
            for (a, slot) in self.assigned.iter().enumerate() {
                let Some(b) = *slot else { continue };
                let meet = self.pm[i].intersection(self.pm[a]);
                let image = self.qm[j].intersection(self.qm[b]);
                for &(m, im) in &seen {
                    if (m == meet) != (im == image) {
                        return false;
                    }
                }
                seen.push((meet, image));
            }
            true
        }
    }

    let mut search = Search {
        p,
        q,
        pm: &pm,
        qm: &qm,
        candidates: &candidates,
        order: &order,
        assigned: vec![None; pm.len()],
        used: vec![false; qm.len()],
    };
    Ok(search.extend(0))
}

/// Result of checking the elementwise-inversion map between the left and
/// right coset semilattices of a subloop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AaipCheck {
    /// Each distinct left coset paired with its elementwise inverse.
    pub maximal_map: Vec<(SymSet, SymSet)>,
    /// The full isomorphism, when the map extends to one.
    pub extension: Option<Vec<(SymSet, SymSet)>>,
}

/// When inversion reverses products, the elementwise inverse of a left
/// coset is a right coset. This builds that map on the distinct cosets of
/// `s` and tests whether it extends to an isomorphism between the two
/// intersection semilattices.
///
/// The ambient loop must have the antiautomorphic inverse property:
/// two-sided inverses with (xy)⁻¹ = y⁻¹x⁻¹.
pub fn aaip_map_check(s: &Subloop<'_>) -> Result<AaipCheck, SemilatticeError> {
    let q = s.parent();
    let n = q.order();
    let inv: Vec<usize> = (0..n)
        .map(|x| {
            q.inverse(x).ok_or_else(|| SemilatticeError::NotAaip {
                witness: format!("element {x} has no two-sided inverse"),
            })
        })
        .collect::<Result<_, _>>()?;
    for x in 0..n {
        for y in 0..n {
            if inv[q.mul(x, y)] != q.mul(inv[y], inv[x]) {
                return Err(SemilatticeError::NotAaip {
                    witness: format!("({x}*{y})^-1 differs from {y}^-1 * {x}^-1"),
                });
            }
        }
    }

    let left = super::coset_family(s, Side::Left);
    let right = super::coset_family(s, Side::Right);
    let right_sets = right.distinct_sets();

    let mut maximal_map = Vec::new();
    for coset in left.distinct_sets() {
        let image: SymSet = coset.iter().map(|x| inv[x]).collect();
        assert!(
            right_sets.contains(&image),
            "inverse of a left coset must be a right coset once the \
             inverse property is verified; got {image} from {coset}"
        );
        maximal_map.push((coset, image));
    }

    let left_lat = MeetSemilattice::close_under_intersection(left.distinct_sets());
    let right_lat = MeetSemilattice::close_under_intersection(right_sets);
    let extension = semilattice_extension_test(&left_lat, &right_lat, &maximal_map)?;
    Ok(AaipCheck {
        maximal_map,
        extension,
    })
}
