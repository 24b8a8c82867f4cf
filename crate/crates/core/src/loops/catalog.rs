//! Built-in loops: parametric group builders plus three hardcoded
//! nonassociative tables used as fixtures throughout the crate.

use super::{LoopError, LoopTable};

/// Cyclic group of order `n` on symbols `0..n` with addition mod `n`.
pub fn cyclic(n: usize) -> LoopTable {
    assert!(n >= 1 && n <= 64);
    let raw = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    LoopTable::validate(raw)
        .unwrap()
        .with_name(format!("c{n}"))
}

/// Dihedral group of order `order` (which must be even and at least 2).
/// Symbols `0..k` are the rotations `r^i`, symbols `k..2k` the reflections
/// `s r^(i-k)`, where `k = order / 2`.
pub fn dihedral(order: usize) -> LoopTable {
    assert!(order >= 2 && order % 2 == 0 && order <= 64);
    let k = order / 2;
    let idx = |refl: bool, i: usize| if refl { k + i % k } else { i % k };
    let mut raw = vec![vec![0; order]; order];
    for x in 0..order {
        for y in 0..order {
            let (rx, ix) = (x >= k, x % k);
            let (ry, iy) = (y >= k, y % k);
            raw[x][y] = match (rx, ry) {
                (false, false) => idx(false, ix + iy),
                (false, true) => idx(true, k + iy - ix),
                (true, false) => idx(true, ix + iy),
                (true, true) => idx(false, k + iy - ix),
            };
        }
    }
    LoopTable::validate(raw)
        .unwrap()
        .with_name(format!("d{order}"))
}

/// Dicyclic group of order `order = 4m`: generated by `a` of order `2m` and
/// `b` with `b^2 = a^m`, `b a b^-1 = a^-1`. Symbols `0..2m` are `a^i`,
/// symbols `2m..4m` are `a^(i-2m) b`.
pub fn dicyclic(order: usize) -> LoopTable {
    assert!(order >= 4 && order % 4 == 0 && order <= 64);
    let m = order / 4;
    let h = 2 * m;
    let mut raw = vec![vec![0; order]; order];
    for x in 0..order {
        for y in 0..order {
            let (bx, ix) = (x >= h, x % h);
            let (by, iy) = (y >= h, y % h);
            raw[x][y] = match (bx, by) {
                (false, false) => (ix + iy) % h,
                (false, true) => h + (ix + iy) % h,
                (true, false) => h + (ix + h - iy) % h,
                (true, true) => (ix + h - iy + m) % h,
            };
        }
    }
    LoopTable::validate(raw)
        .unwrap()
        .with_name(format!("dic{order}"))
}

/// The quaternion group of order 8.
pub fn quaternion8() -> LoopTable {
    dicyclic(8).with_name("q8")
}

/// The dicyclic group of order 12: the unique group of that order which is
/// neither abelian, nor dihedral, nor alternating.
pub fn dicyclic12() -> LoopTable {
    dicyclic(12)
}

/// Direct product, with pairs `(a, b)` encoded as `a * |B| + b`.
pub fn direct_product(a: &LoopTable, b: &LoopTable) -> LoopTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    assert!(n <= 64);
    let mut raw = vec![vec![0; n]; n];
    for xa in 0..na {
        for xb in 0..nb {
            for ya in 0..na {
                for yb in 0..nb {
                    raw[xa * nb + xb][ya * nb + yb] = a.mul(xa, ya) * nb + b.mul(xb, yb);
                }
            }
        }
    }
    let mut t = LoopTable::validate(raw).unwrap();
    if let (Some(an), Some(bn)) = (a.name(), b.name()) {
        t = t.with_name(format!("{an}x{bn}"));
    }
    t
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    // all permutations of 0..n in lexicographic order
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

fn group_of_perms(elems: Vec<Vec<usize>>, name: &str) -> LoopTable {
    let n = elems.len();
    let index_of = |p: &[usize]| elems.iter().position(|q| q == p).unwrap();
    let mut raw = vec![vec![0; n]; n];
    for (i, p) in elems.iter().enumerate() {
        for (j, q) in elems.iter().enumerate() {
            // (p * q)(x) = p(q(x))
            let prod: Vec<usize> = (0..p.len()).map(|x| p[q[x]]).collect();
            raw[i][j] = index_of(&prod);
        }
    }
    LoopTable::validate(raw).unwrap().with_name(name)
}

/// Symmetric group on three letters; elements are the permutations of
/// `{0,1,2}` in lexicographic one-line order, so 0 is the identity.
pub fn symmetric_group3() -> LoopTable {
    group_of_perms(perms(3), "s3")
}

/// Alternating group on four letters, elements ordered lexicographically.
pub fn alternating_group4() -> LoopTable {
    let evens = perms(4).into_iter().filter(|p| parity(p) == 0).collect();
    group_of_perms(evens, "a4")
}

/// Klein four-group.
pub fn klein4() -> LoopTable {
    direct_product(&cyclic(2), &cyclic(2)).with_name("v4")
}

/// Commutative order-10 loop whose coset designs over {0,1,2} are projective
/// planes of order 2.
pub fn intro10() -> LoopTable {
    let raw = vec![
        vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        vec![1, 2, 0, 4, 5, 6, 7, 8, 9, 3],
        vec![2, 0, 1, 6, 7, 8, 9, 3, 4, 5],
        vec![3, 4, 6, 2, 0, 7, 5, 9, 1, 8],
        vec![4, 5, 7, 0, 3, 9, 8, 1, 6, 2],
        vec![5, 6, 8, 7, 9, 3, 1, 4, 2, 0],
        vec![6, 7, 9, 5, 8, 1, 3, 2, 0, 4],
        vec![7, 8, 3, 9, 1, 4, 2, 0, 5, 6],
        vec![8, 9, 4, 1, 6, 2, 0, 5, 3, 7],
        vec![9, 3, 5, 8, 2, 0, 4, 6, 7, 1],
    ];
    LoopTable::validate(raw).unwrap().with_name("intro10")
}

/// Smallest nonassociative Moufang loop (order 12).
pub fn chein12() -> LoopTable {
    let raw = vec![
        vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        vec![1, 0, 3, 2, 5, 4, 7, 6, 11, 10, 9, 8],
        vec![2, 5, 4, 1, 0, 3, 8, 9, 10, 11, 6, 7],
        vec![3, 4, 5, 0, 1, 2, 9, 8, 7, 6, 11, 10],
        vec![4, 3, 0, 5, 2, 1, 10, 11, 6, 7, 8, 9],
        vec![5, 2, 1, 4, 3, 0, 11, 10, 9, 8, 7, 6],
        vec![6, 7, 10, 9, 8, 11, 0, 1, 4, 3, 2, 5],
        vec![7, 6, 11, 8, 9, 10, 1, 0, 3, 4, 5, 2],
        vec![8, 11, 6, 7, 10, 9, 2, 3, 0, 5, 4, 1],
        vec![9, 10, 7, 6, 11, 8, 3, 2, 5, 0, 1, 4],
        vec![10, 9, 8, 11, 6, 7, 4, 5, 2, 1, 0, 3],
        vec![11, 8, 9, 10, 7, 6, 5, 4, 1, 2, 3, 0],
    ];
    LoopTable::validate(raw).unwrap().with_name("chein12")
}

/// Smallest loop in which a subloop has different numbers of left and right
/// cosets (H = {0,1}: five left cosets, three right).
pub fn example6() -> LoopTable {
    let raw = vec![
        vec![0, 1, 2, 3, 4, 5],
        vec![1, 0, 3, 2, 5, 4],
        vec![2, 3, 4, 5, 0, 1],
        vec![3, 4, 5, 0, 1, 2],
        vec![4, 5, 0, 1, 2, 3],
        vec![5, 2, 1, 4, 3, 0],
    ];
    LoopTable::validate(raw).unwrap().with_name("example6")
}

/// Resolves a catalog name. Atoms: `cN`, `dN` (dihedral of order N),
/// `dicN` (dicyclic of order N), `q8`, `v4`, `s3`, `a4`, `intro10`,
/// `chein12`, `example6`. Atoms joined by `x` form direct products,
/// e.g. `c2xc4` or `s3xc2`. Case-insensitive. A whole name that is
/// itself an atom wins over the product reading, so `example6` is the
/// order-6 loop, not a product split at its `x`.
pub fn by_name(name: &str) -> Result<LoopTable, LoopError> {
    let unknown = || LoopError::UnknownName { name: name.into() };
    let lower = name.trim().to_ascii_lowercase();
    if let Some(q) = atom(&lower) {
        return Ok(q.with_name(lower));
    }
    let mut parts = lower.split('x');
    let first = atom(parts.next().ok_or_else(unknown)?).ok_or_else(unknown)?;
    let product = parts.try_fold(first, |acc, part| {
        let next = atom(part).ok_or_else(unknown)?;
        if acc.order() * next.order() > 64 {
            return Err(LoopError::OrderTooLarge {
                n: acc.order() * next.order(),
            });
        }
        Ok(direct_product(&acc, &next))
    })?;
    Ok(product.with_name(lower))
}

fn atom(part: &str) -> Option<LoopTable> {
    match part {
        "q8" => return Some(quaternion8()),
        "v4" => return Some(klein4()),
        "s3" => return Some(symmetric_group3()),
        "a4" => return Some(alternating_group4()),
        "intro10" => return Some(intro10()),
        "chein12" => return Some(chein12()),
        "example6" => return Some(example6()),
        _ => {}
    }
    let parametric = |prefix: &str| -> Option<usize> {
        part.strip_prefix(prefix)?.parse().ok().filter(|&n| n <= 64)
    };
    if let Some(n) = parametric("dic") {
        return (n >= 4 && n % 4 == 0).then(|| dicyclic(n));
    }
    if let Some(n) = parametric("c") {
        return (n >= 1).then(|| cyclic(n));
    }
    if let Some(n) = parametric("d") {
        return (n >= 2 && n % 2 == 0).then(|| dihedral(n));
    }
    None
}

/// Names the CLI catalog listing advertises.
pub fn listing() -> Vec<(&'static str, &'static str)> {
    vec![
        ("intro10", "commutative order-10 loop carrying the Fano plane"),
        ("chein12", "smallest nonassociative Moufang loop"),
        ("example6", "order-6 loop with 5 left but 3 right cosets of {0,1}"),
        ("cN", "cyclic group of order N"),
        ("dN", "dihedral group of order N (N even)"),
        ("dicN", "dicyclic group of order N (N divisible by 4)"),
        ("q8", "quaternion group"),
        ("v4", "Klein four-group"),
        ("s3", "symmetric group on 3 letters"),
        ("a4", "alternating group on 4 letters"),
        ("AxB", "direct product of atoms, e.g. c2xc4 or s3xc2"),
    ]
}

/// Fixed family of loops the test suites sweep over.
pub fn test_catalog() -> Vec<LoopTable> {
    vec![
        cyclic(2),
        cyclic(3),
        cyclic(4),
        cyclic(5),
        cyclic(6),
        cyclic(8),
        cyclic(12),
        klein4(),
        direct_product(&cyclic(2), &cyclic(4)),
        direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2))),
        direct_product(&cyclic(3), &cyclic(3)),
        direct_product(&cyclic(3), &klein4()),
        symmetric_group3(),
        direct_product(&symmetric_group3(), &cyclic(2)),
        dihedral(8),
        dihedral(10),
        dihedral(12),
        dihedral(14),
        quaternion8(),
        dicyclic12(),
        alternating_group4(),
        intro10(),
        chein12(),
        example6(),
    ]
}
