//! Exact cover: select pairwise disjoint blocks whose union is the whole
//! point set. Branches on the point with the fewest remaining candidate
//! blocks (ties to the smallest point), trying blocks in input order, so
//! the first solution found is deterministic.

pub struct ExactCover {
    n_points: usize,
    blocks: Vec<Vec<usize>>,
    point_blocks: Vec<Vec<usize>>,
}

impl ExactCover {
    /// Points are `0..n_points`; each block lists the points it covers.
    pub fn new(n_points: usize, blocks: Vec<Vec<usize>>) -> ExactCover {
        let mut point_blocks = vec![Vec::new(); n_points];
        for (bi, block) in blocks.iter().enumerate() {
            for &p in block {
                assert!(p < n_points, "block point out of range");
                point_blocks[p].push(bi);
            }
        }
        ExactCover {
            n_points,
            blocks,
            point_blocks,
        }
    }

    /// First exact cover in branch order, as block indices, or None.
    pub fn solve(&self) -> Option<Vec<usize>> {
        let mut covered = vec![false; self.n_points];
        let mut block_dead = vec![0u32; self.blocks.len()]; // overlap count with covered points
        let mut chosen = Vec::new();
        self.search(&mut covered, &mut block_dead, &mut chosen)
            .then_some(chosen)
    }

    fn search(
        &self,
        covered: &mut [bool],
        block_dead: &mut [u32],
        chosen: &mut Vec<usize>,
    ) -> bool {
        // pick the uncovered point with the fewest live candidate blocks
        let mut best: Option<(usize, usize)> = None;
        for p in 0..self.n_points {
            if covered[p] {
                continue;
            }
            let live = self.point_blocks[p]
                .iter()
                .filter(|&&b| block_dead[b] == 0)
                .count();
            if best.map_or(true, |(_, n)| live < n) {
                best = Some((p, live));
                if live == 0 {
                    return false;
                }
            }
        }
        let (point, _) = match best {
            None => return true, // everything covered
            Some(b) => b,
        };
        let candidates: Vec<usize> = self.point_blocks[point]
            .iter()
            .copied()
            .filter(|&b| block_dead[b] == 0)
            .collect();
        for b in candidates {
            chosen.push(b);
            for &p in &self.blocks[b] {
                covered[p] = true;
                for &ob in &self.point_blocks[p] {
                    block_dead[ob] += 1;
                }
            }
            if self.search(covered, block_dead, chosen) {
                return true;
            }
            for &p in &self.blocks[b] {
                covered[p] = false;
                for &ob in &self.point_blocks[p] {
                    block_dead[ob] -= 1;
                }
            }
            chosen.pop();
        }
        false
    }
}
