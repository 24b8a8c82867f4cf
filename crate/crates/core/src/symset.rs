//! Bitmask-backed sets of loop symbols.

use std::fmt;

/// Set of symbols drawn from `0..64`, stored as a `u64` bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SymSet(u64);

/// Largest symbol a [`SymSet`] can hold.
pub const MAX_SYMBOL: usize = 63;

impl SymSet {
    pub const EMPTY: SymSet = SymSet(0);

    /// Set `{0, 1, ..., n-1}`. Panics if `n > 64`.
    pub fn full(n: usize) -> SymSet {
        assert!(n <= 64, "symbol universe capped at 64");
        if n == 64 {
            SymSet(!0)
        } else {
            SymSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> SymSet {
        assert!(x <= MAX_SYMBOL);
        SymSet(1u64 << x)
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x <= MAX_SYMBOL);
        self.0 |= 1u64 << x;
    }

    pub fn remove(&mut self, x: usize) {
        assert!(x <= MAX_SYMBOL);
        self.0 &= !(1u64 << x);
    }

    pub fn contains(&self, x: usize) -> bool {
        x <= MAX_SYMBOL && self.0 >> x & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: SymSet) -> SymSet {
        SymSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: SymSet) -> SymSet {
        SymSet(self.0 & other.0)
    }

    pub fn difference(&self, other: SymSet) -> SymSet {
        SymSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: SymSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending iterator over the members.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(x)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Order used throughout for printing and canonical listings:
    /// by size first, then lexicographically on the sorted member sequence.
    pub fn cmp_size_lex(&self, other: &SymSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.reverse_bits().cmp(&other.0.reverse_bits()).reverse())
    }
}

impl FromIterator<usize> for SymSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> SymSet {
        let mut s = SymSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
