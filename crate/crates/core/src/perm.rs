//! Permutations of `0..n` in one-line notation.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    /// Wraps a one-line image vector; panics unless it is a bijection.
    pub fn new(map: Vec<usize>) -> Perm {
        let n = map.len();
        let mut seen = vec![false; n];
        for &y in &map {
            assert!(y < n && !seen[y], "not a permutation");
            seen[y] = true;
        }
        Perm { map }
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// `self.then(g)` maps `x` to `g(self(x))`.
    pub fn then(&self, g: &Perm) -> Perm {
        assert_eq!(self.len(), g.len());
        Perm {
            map: self.map.iter().map(|&y| g.map[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Perm { map: inv }
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.map[x];
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.map[x];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, y) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{y}")?;
        }
        write!(f, "]")
    }
}
