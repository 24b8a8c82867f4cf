//! Variety membership flags, element orders, and inner mappings.

use super::{LoopError, LoopTable};
use crate::perm::Perm;

/// Identity-by-identity census of a loop, every flag decided by exhaustive
/// checking over the table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PropertyReport {
    pub commutative: bool,
    pub two_sided_inverses: bool,
    /// Inversion is an antiautomorphism: `(xy)^-1 = y^-1 x^-1`.
    pub aaip: bool,
    pub left_inverse_property: bool,
    pub right_inverse_property: bool,
    pub left_bol: bool,
    pub right_bol: bool,
    pub moufang: bool,
    pub extra: bool,
    pub power_associative: bool,
    pub right_power_alternative: bool,
    /// Every generator `L(x,y)` of the left inner mapping group is an
    /// automorphism.
    pub left_automorphic: bool,
}

pub fn check_properties(q: &LoopTable) -> PropertyReport {
    let n = q.order();

    let commutative = (0..n).all(|x| (x..n).all(|y| q.mul(x, y) == q.mul(y, x)));

    let two_sided_inverses = (0..n).all(|x| q.inverse(x).is_some());

    let aaip = two_sided_inverses
        && (0..n).all(|x| {
            (0..n).all(|y| {
                q.inverse(q.mul(x, y)).unwrap()
                    == q.mul(q.inverse(y).unwrap(), q.inverse(x).unwrap())
            })
        });

    // x^-1 (xy) = y with x^-1 the left inverse 0/x
    let left_inverse_property = two_sided_inverses
        && (0..n).all(|x| {
            let xl = q.right_div(0, x);
            (0..n).all(|y| q.mul(xl, q.mul(x, y)) == y)
        });

    // (yx) x^-1 = y with x^-1 the right inverse x\0
    let right_inverse_property = two_sided_inverses
        && (0..n).all(|x| {
            let xr = q.left_div(x, 0);
            (0..n).all(|y| q.mul(q.mul(y, x), xr) == y)
        });

    let left_bol = (0..n).all(|x| {
        (0..n).all(|y| {
            let x_yx = q.mul(x, q.mul(y, x));
            (0..n).all(|z| q.mul(x, q.mul(y, q.mul(x, z))) == q.mul(x_yx, z))
        })
    });

    let right_bol = (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = q.mul(x, y);
            (0..n).all(|z| q.mul(x, q.mul(q.mul(y, z), y)) == q.mul(q.mul(xy, z), y))
        })
    });

    let moufang = (0..n).all(|x| {
        (0..n).all(|y| {
            let xyx = q.mul(q.mul(x, y), x);
            (0..n).all(|z| q.mul(xyx, z) == q.mul(x, q.mul(y, q.mul(x, z))))
        })
    });

    let extra = (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = q.mul(x, y);
            (0..n).all(|z| q.mul(x, q.mul(y, q.mul(z, x))) == q.mul(q.mul(xy, z), x))
        })
    });

    let power_associative = (0..n).all(|x| generates_group(q, x));

    // R_{y^i} = R_y^i for every i up to the order of y; combined with
    // power-associativity this is (x y^i) y^j = x y^(i+j) for all integers.
    let right_power_alternative = power_associative
        && (0..n).all(|y| {
            let mut power = y; // y^i
            let mut ok = true;
            while power != 0 {
                let next = q.mul(power, y);
                ok &= (0..n).all(|x| q.mul(x, next) == q.mul(q.mul(x, power), y));
                power = next;
                if !ok {
                    break;
                }
            }
            ok
        });

    let left_automorphic = (0..n).all(|x| {
        (0..n).all(|y| {
            let map = left_inner_mapping(q, x, y);
            is_automorphism(q, &map)
        })
    });

    PropertyReport {
        commutative,
        two_sided_inverses,
        aaip,
        left_inverse_property,
        right_inverse_property,
        left_bol,
        right_bol,
        moufang,
        extra,
        power_associative,
        right_power_alternative,
        left_automorphic,
    }
}

fn generates_group(q: &LoopTable, x: usize) -> bool {
    let t = q.subloop_closure(&[x]).elements();
    t.iter().all(|a| {
        t.iter().all(|b| {
            let ab = q.mul(a, b);
            t.iter().all(|c| q.mul(ab, c) == q.mul(a, q.mul(b, c)))
        })
    })
}

/// Least `k >= 1` with `x^k = 0`. Errors unless `x` generates a group,
/// since otherwise `x^k` depends on bracketing.
pub fn element_order(q: &LoopTable, x: usize) -> Result<usize, LoopError> {
    if !generates_group(q, x) {
        return Err(LoopError::NotPowerAssociative { element: x });
    }
    let mut k = 1;
    let mut p = x;
    while p != 0 {
        p = q.mul(p, x);
        k += 1;
    }
    Ok(k)
}

/// The left inner mapping `L(x,y) = L_{xy}^{-1} L_x L_y`, which fixes 0.
pub fn left_inner_mapping(q: &LoopTable, x: usize, y: usize) -> Perm {
    let xy = q.mul(x, y);
    Perm::new(
        (0..q.order())
            .map(|z| q.left_div(xy, q.mul(x, q.mul(y, z))))
            .collect(),
    )
}

/// All generators `L(x,y)` of the left inner mapping group, in row-major
/// `(x, y)` order.
pub fn inner_left_generators(q: &LoopTable) -> Vec<Perm> {
    let n = q.order();
    let mut gens = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            gens.push(left_inner_mapping(q, x, y));
        }
    }
    gens
}

pub fn is_automorphism(q: &LoopTable, map: &Perm) -> bool {
    let n = q.order();
    map.len() == n
        && (0..n).all(|x| (0..n).all(|y| map.apply(q.mul(x, y)) == q.mul(map.apply(x), map.apply(y))))
}
