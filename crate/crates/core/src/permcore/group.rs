//! Abstract finite groups addressed by element ids `0..order`.
//!
//! Every group in the crate exposes the same small interface: elements are
//! dense indices, the identity is `0`, and products are looked up or computed
//! by [`FiniteGroup::mul`]. Algorithms that only need the group law live on
//! [`GroupExt`] and work for permutation groups and Cayley tables alike.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::util::is_prime;

/// A subset of a group, indexed by element id.
pub type ElementSet = FixedBitSet;

pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> &[usize];

    fn identity(&self) -> usize {
        0
    }
}

/// Derived operations available on every [`FiniteGroup`].
pub trait GroupExt: FiniteGroup {
    fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn exponent(&self) -> u64 {
        (0..self.order()).fold(1u64, |acc, a| acc.lcm(&self.element_order(a)))
    }

    /// `b⁻¹ a b`.
    fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `a⁻¹ b⁻¹ a b`.
    fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    fn full_set(&self) -> ElementSet {
        let mut s = ElementSet::with_capacity(self.order());
        s.insert_range(..);
        s
    }

    fn singleton(&self, a: usize) -> ElementSet {
        let mut s = ElementSet::with_capacity(self.order());
        s.insert(a);
        s
    }

    /// The subgroup generated by `seeds`.
    fn closure(&self, seeds: &[usize]) -> ElementSet {
        let mut set = self.singleton(self.identity());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !set.put(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// The subgroup generated by a subgroup `base` together with `extra`.
    fn closure_with(&self, base: &ElementSet, extra: &[usize]) -> ElementSet {
        let mut seeds = self.subgroup_generators(base);
        seeds.extend_from_slice(extra);
        self.closure(&seeds)
    }

    /// A generating set of the subgroup `set`, chosen greedily in id order.
    fn subgroup_generators(&self, set: &ElementSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.singleton(self.identity());
        for x in set.ones() {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn is_subgroup(&self, set: &ElementSet) -> bool {
        if !set.contains(self.identity()) {
            return false;
        }
        let elems: Vec<usize> = set.ones().collect();
        elems.iter().all(|&a| elems.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    fn is_normal(&self, set: &ElementSet) -> bool {
        self.generators().iter().all(|&g| set.ones().all(|n| set.contains(self.conjugate(n, g))))
    }

    /// Smallest normal subgroup containing `seeds`.
    fn normal_closure(&self, seeds: &[usize]) -> ElementSet {
        let mut gens: Vec<usize> = seeds.to_vec();
        loop {
            let sub = self.closure(&gens);
            let mut grew = false;
            for x in sub.ones().collect::<Vec<_>>() {
                for &g in self.generators() {
                    let c = self.conjugate(x, g);
                    if !sub.contains(c) && !gens.contains(&c) {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    fn is_central(&self, a: usize) -> bool {
        self.generators().iter().all(|&g| self.mul(a, g) == self.mul(g, a))
    }

    fn center(&self) -> ElementSet {
        let mut z = ElementSet::with_capacity(self.order());
        for a in 0..self.order() {
            if self.is_central(a) {
                z.insert(a);
            }
        }
        z
    }

    fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes as sorted id lists, ordered by smallest member.
    fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = ElementSet::with_capacity(n);
        let mut classes = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut class = vec![start];
            let mut i = 0;
            while i < class.len() {
                let x = class[i];
                for &g in self.generators() {
                    let y = self.conjugate(x, g);
                    if !seen.put(y) {
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Map from element id to the index of its class in `conjugacy_classes()`.
    fn class_index(&self, classes: &[Vec<usize>]) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (c, members) in classes.iter().enumerate() {
            for &m in members {
                idx[m] = c;
            }
        }
        idx
    }

    fn derived_subgroup(&self) -> ElementSet {
        let gens = self.generators();
        let mut comms = Vec::new();
        for &a in gens {
            for &b in gens {
                let c = self.commutator(a, b);
                if c != self.identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `[G,G]·G^ℓ`, the kernel of the largest elementary abelian ℓ-quotient.
    fn elementary_kernel(&self, ell: u64) -> ElementSet {
        let derived = self.derived_subgroup();
        let powers: Vec<usize> = (0..self.order()).map(|a| self.pow(a, ell)).collect();
        let mut seeds = self.subgroup_generators(&derived);
        for p in powers {
            if !seeds.contains(&p) {
                seeds.push(p);
            }
        }
        // generated by a characteristic set, hence normal
        self.closure(&seeds)
    }

    /// ℓ-rank of the abelianization `G/[G,G]`.
    fn abelianization_rank(&self, ell: u64) -> Result<u32> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let kernel = self.elementary_kernel(ell);
        let mut index = (self.order() / kernel.count_ones(..)) as u64;
        let mut r = 0;
        while index > 1 {
            debug_assert_eq!(index % ell, 0);
            index /= ell;
            r += 1;
        }
        Ok(r)
    }

    /// Right cosets `N·g`: returns (coset label per element, representative per coset).
    ///
    /// Cosets are labelled in order of their smallest member.
    fn coset_labels(&self, normal: &ElementSet) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let members: Vec<usize> = normal.ones().collect();
        for g in 0..n {
            if label[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &m in &members {
                label[self.mul(m, g)] = c;
            }
        }
        (label, reps)
    }

    /// `G/N` as a Cayley table, with the projection map.
    fn quotient_table(&self, normal: &ElementSet) -> Result<(TableGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let (label, reps) = self.coset_labels(normal);
        let q = reps.len();
        let mut gens: Vec<usize> = self.generators().iter().map(|&g| label[g]).filter(|&c| c != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let table = TableGroup::from_fn(q, gens, |a, b| label[self.mul(reps[a], reps[b])]);
        Ok((table, label))
    }

    fn set_order(&self, set: &ElementSet) -> usize {
        set.count_ones(..)
    }
}

impl<G: FiniteGroup + ?Sized> GroupExt for G {}

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct TableGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    gens: Vec<usize>,
}

impl TableGroup {
    /// Builds a table from a product function; element `0` must be the identity.
    pub fn from_fn(order: usize, gens: Vec<usize>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = mul(a, b) as u32;
            }
        }
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverses[a] = row.iter().position(|&x| x == 0).expect("table has no inverse") as u32;
        }
        TableGroup { order, table, inverses, gens }
    }

    /// Copies the multiplication of any finite group.
    pub fn from_group(g: &(impl FiniteGroup + ?Sized)) -> Self {
        let mut t = Self::from_fn(g.order(), g.generators().to_vec(), |a, b| g.mul(a, b));
        t.gens.retain(|&x| x != 0);
        t
    }

    pub fn trivial() -> Self {
        Self::from_fn(1, vec![], |_, _| 0)
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n > 1 { vec![1] } else { vec![] };
        Self::from_fn(n, gens, |a, b| (a + b) % n)
    }

    /// `A × B` with element `(a, b)` stored at `a·|B| + b`.
    pub fn direct_product(a: &TableGroup, b: &TableGroup) -> Self {
        let nb = b.order;
        let mut gens: Vec<usize> = a.gens.iter().map(|&x| x * nb).collect();
        gens.extend(b.gens.iter().copied());
        Self::from_fn(a.order * nb, gens, |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
    }

    /// Restricts to a subgroup, relabelling its elements in id order.
    pub fn subgroup(&self, set: &ElementSet) -> (TableGroup, Vec<usize>) {
        let members: Vec<usize> = set.ones().collect();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let gens: Vec<usize> = self.subgroup_generators(set).into_iter().map(|g| pos[g]).collect();
        let t = TableGroup::from_fn(members.len(), gens, |x, y| pos[self.mul(members[x], members[y])]);
        (t, members)
    }

    /// Recomputes a small generating set (greedy, id order).
    pub fn with_minimal_generators(mut self) -> Self {
        let all = self.full_set();
        self.gens = self.subgroup_generators(&all);
        self
    }

    pub fn with_generators(mut self, gens: Vec<usize>) -> Self {
        self.gens = gens;
        self
    }

    /// Checks associativity and the identity/inverse laws; `O(n³)`.
    pub fn is_valid(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a)
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            })
            && self.closure(&self.gens).count_ones(..) == n
    }
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn generators(&self) -> &[usize] {
        &self.gens
    }
}

impl std::fmt::Debug for TableGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TableGroup(order {}, gens {:?})", self.order, self.gens)
    }
}
