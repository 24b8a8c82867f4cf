//! Loop isomorphism by backtracking with translation cycle-type pruning.

use super::LoopTable;

/// Searches for a bijection f with f(0) = 0 and f(xy) = f(x)f(y), returning
/// the image vector of the first one found in lexicographic assignment
/// order.
///
/// Candidates are prefiltered by the cycle types of the left and right
/// translations: an isomorphism conjugates L_x to L_{f(x)} and R_x to
/// R_{f(x)}, so the types must agree. Partial maps are closed under
/// multiplication as they grow, which fails fast on incompatible tables.
pub fn is_isomorphic(a: &LoopTable, b: &LoopTable) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let key = |q: &LoopTable, x: usize| {
        (
            q.left_translation(x).cycle_type(),
            q.right_translation(x).cycle_type(),
        )
    };
    let keys_a: Vec<_> = (0..n).map(|x| key(a, x)).collect();
    let keys_b: Vec<_> = (0..n).map(|x| key(b, x)).collect();
    {
        let mut sa = keys_a.clone();
        let mut sb = keys_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| keys_b[y] == keys_a[x]).collect())
        .collect();

    let mut search = Search {
        a,
        b,
        candidates,
        image: vec![None; n],
        used: vec![false; n],
        trail: Vec::new(),
    };
    if !search.assign(0, 0) {
        return None;
    }
    search
        .extend()
        .then(|| search.image.iter().map(|y| y.unwrap()).collect())
}

struct Search<'a> {
    a: &'a LoopTable,
    b: &'a LoopTable,
    candidates: Vec<Vec<usize>>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl Search<'_> {
    /// Records f(x) = y and closes the partial map under products.
    /// Returns false (leaving the trail for the caller to roll back) on any
    /// clash.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        match self.image[x] {
            Some(cur) => return cur == y,
            None => {
                if self.used[y] {
                    return false;
                }
            }
        }
        self.image[x] = Some(y);
        self.used[y] = true;
        self.trail.push(x);
        let defined: Vec<usize> = (0..self.a.order())
            .filter(|&z| self.image[z].is_some())
            .collect();
        for &z in &defined {
            let fz = self.image[z].unwrap();
            if !self.assign(self.a.mul(x, z), self.b.mul(y, fz)) {
                return false;
            }
            if !self.assign(self.a.mul(z, x), self.b.mul(fz, y)) {
                return false;
            }
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.image[x].take().unwrap();
            self.used[y] = false;
        }
    }

    fn extend(&mut self) -> bool {
        let x = match (0..self.a.order()).find(|&x| self.image[x].is_none()) {
            Some(x) => x,
            None => return true,
        };
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.used[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.extend() {
                return true;
            }
            self.rollback(mark);
        }
        false
    }
}
