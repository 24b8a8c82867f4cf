//! Maximum bipartite matching by augmenting paths, with deterministic
//! vertex order so that downstream constructions are reproducible.

/// Matches left vertices `0..adj.len()` into right vertices `0..n_right`.
/// Returns `match_of_left`; unmatched entries are `None`. Left vertices are
/// processed in ascending order and neighbors tried in adjacency order.
pub fn max_matching(n_right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut match_left: Vec<Option<usize>> = vec![None; n_left];
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    let mut visited = vec![false; n_right];

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &v in &adj[u] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let free = match match_right[v] {
                None => true,
                Some(w) => augment(w, adj, match_left, match_right, visited),
            };
            if free {
                match_left[u] = Some(v);
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    for u in 0..n_left {
        visited.iter_mut().for_each(|v| *v = false);
        augment(u, adj, &mut match_left, &mut match_right, &mut visited);
    }
    match_left
}

/// A left vertex set violating Hall's condition, if the matching is not
/// perfect: vertices alternating-reachable from some unmatched left vertex.
/// Their joint neighborhood is strictly smaller than the set itself.
pub fn hall_violator(n_right: usize, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let match_left = max_matching(n_right, adj);
    let start = match_left.iter().position(|m| m.is_none())?;
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    for (u, m) in match_left.iter().enumerate() {
        if let Some(v) = m {
            match_right[*v] = Some(u);
        }
    }
    let mut in_set = vec![false; adj.len()];
    let mut right_seen = vec![false; n_right];
    let mut stack = vec![start];
    in_set[start] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if right_seen[v] {
                continue;
            }
            right_seen[v] = true;
            if let Some(w) = match_right[v] {
                if !in_set[w] {
                    in_set[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    Some((0..adj.len()).filter(|&u| in_set[u]).collect())
}
