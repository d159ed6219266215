//! Isomorphism testing of small abstract groups.

use crate::error::{Error, Result};
use crate::permcore::{FiniteGroup, GroupExt};
use crate::util::prime_divisors;

/// Largest order accepted by [`is_isomorphic`] by default.
pub const DEFAULT_ISO_CAP: usize = 512;

/// Isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub order_profile: Vec<u64>,
    /// `(class size, element order)` pairs, sorted.
    pub classes: Vec<(usize, u64)>,
    pub center: usize,
    pub derived: usize,
    /// `(ℓ, rank)` for each prime dividing the order.
    pub abelian_ranks: Vec<(u64, u32)>,
}

pub fn fingerprint(g: &(impl FiniteGroup + ?Sized)) -> Fingerprint {
    let mut order_profile: Vec<u64> = (0..g.order()).map(|a| g.element_order(a)).collect();
    order_profile.sort_unstable();
    let mut classes: Vec<(usize, u64)> =
        g.conjugacy_classes().iter().map(|c| (c.len(), g.element_order(c[0]))).collect();
    classes.sort_unstable();
    let abelian_ranks =
        prime_divisors(g.order() as u64).into_iter().map(|p| (p, g.abelianization_rank(p).expect("prime"))).collect();
    Fingerprint {
        order: g.order(),
        order_profile,
        classes,
        center: g.center().count_ones(..),
        derived: g.derived_subgroup().count_ones(..),
        abelian_ranks,
    }
}

/// An isomorphism `G₁ → G₂` as a table of images, if one exists.
pub fn is_isomorphic(g1: &(impl FiniteGroup + ?Sized), g2: &(impl FiniteGroup + ?Sized)) -> Result<Option<Vec<usize>>> {
    is_isomorphic_with_cap(g1, g2, DEFAULT_ISO_CAP)
}

pub fn is_isomorphic_with_cap(
    g1: &(impl FiniteGroup + ?Sized),
    g2: &(impl FiniteGroup + ?Sized),
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    if g1.order() > cap || g2.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    if g1.order() != g2.order() || fingerprint(g1) != fingerprint(g2) {
        return Ok(None);
    }
    let gens = g1.subgroup_generators(&g1.full_set());
    let orders2: Vec<u64> = (0..g2.order()).map(|a| g2.element_order(a)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g1.element_order(s);
            (0..g2.order()).filter(|&t| orders2[t] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g1, g2, &gens, &candidates, &mut images))
}

fn search(
    g1: &(impl FiniteGroup + ?Sized),
    g2: &(impl FiniteGroup + ?Sized),
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    if k > 0 {
        let map = extend(g1, g2, &gens[..k], images)?;
        if k == gens.len() {
            return Some(map);
        }
    }
    for &t in &candidates[k] {
        images.push(t);
        if let Some(found) = search(g1, g2, gens, candidates, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] ↦ images[i]` over `⟨gens⟩` by walking the Cayley graph;
/// `None` if the assignment is not an injective homomorphism there.
fn extend(
    g1: &(impl FiniteGroup + ?Sized),
    g2: &(impl FiniteGroup + ?Sized),
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = g1.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; g2.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g1.mul(x, s);
            let fy = g2.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Checks that `map` is a bijective homomorphism, pair by pair.
pub fn is_isomorphism(g1: &(impl FiniteGroup + ?Sized), g2: &(impl FiniteGroup + ?Sized), map: &[usize]) -> bool {
    let n = g1.order();
    if n != g2.order() || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..n).all(|a| (0..n).all(|b| map[g1.mul(a, b)] == g2.mul(map[a], map[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dihedral, elementary, quaternion};
    use crate::permcore::TableGroup;

    #[test]
    fn reflexive_with_identity_like_witness() {
        let q8 = quaternion(8);
        let map = is_isomorphic(&q8, &q8).unwrap().unwrap();
        assert!(is_isomorphism(&q8, &q8, &map));
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        let (q8, d4) = (quaternion(8), dihedral(4));
        assert_ne!(fingerprint(&q8), fingerprint(&d4));
        assert!(is_isomorphic(&q8, &d4).unwrap().is_none());
    }

    #[test]
    fn exponent_separates_c4xc2_from_c2_cubed() {
        let a = TableGroup::direct_product(&TableGroup::cyclic(4), &TableGroup::cyclic(2));
        assert!(is_isomorphic(&a, &elementary(2, 3)).unwrap().is_none());
    }

    #[test]
    fn relabelled_groups_are_found() {
        // C6 ≅ C2 × C3 and D3 relabelled via a different generator order
        let c6 = TableGroup::cyclic(6);
        let c2c3 = TableGroup::direct_product(&TableGroup::cyclic(2), &TableGroup::cyclic(3));
        let map = is_isomorphic(&c6, &c2c3).unwrap().unwrap();
        assert!(is_isomorphism(&c6, &c2c3, &map));
        let d8 = dihedral(8);
        let d8b = dihedral(8).with_generators(vec![9, 1]);
        assert!(is_isomorphic(&d8, &d8b).unwrap().is_some());
    }

    #[test]
    fn fingerprint_ties_are_resolved_by_search() {
        // C4 × C4 and C4 ⋊ C4 share an order profile but not commutativity
        let abelian = TableGroup::direct_product(&TableGroup::cyclic(4), &TableGroup::cyclic(4));
        let twisted = TableGroup::from_fn(16, vec![1, 4], |a, b| {
            let (i, j) = (a % 4, a / 4);
            let (k, l) = (b % 4, b / 4);
            let k2 = if j % 2 == 1 { (4 - k) % 4 } else { k };
            (i + k2) % 4 + 4 * ((j + l) % 4)
        });
        assert!(twisted.is_valid());
        assert!(is_isomorphic(&abelian, &twisted).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let big = TableGroup::cyclic(600);
        assert_eq!(is_isomorphic(&big, &big), Err(Error::CapExceeded { cap: 512 }));
    }
}
