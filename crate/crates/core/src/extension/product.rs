//! Group extensions, fiber products and semidirect products as Cayley tables.

use crate::error::{Error, Result};
use crate::permcore::{ElementSet, FiniteGroup, GroupExt, PermGroup, TableGroup};

/// `1 → A → G →κ H → 1` with `κ` given pointwise.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub group: TableGroup,
    pub kernel: ElementSet,
    pub quotient: TableGroup,
    /// `κ(g)` for every element id `g`.
    pub projection: Vec<usize>,
    pub central: bool,
}

impl ExtensionData {
    /// The extension of `G/A` by a normal subgroup `A`.
    pub fn new(group: TableGroup, kernel: ElementSet) -> Result<Self> {
        let (quotient, projection) = group.quotient_table(&kernel)?;
        let central = kernel.ones().all(|a| group.is_central(a));
        Ok(ExtensionData { group, kernel, quotient, projection, central })
    }

    pub fn from_perm_group(group: &PermGroup, kernel: ElementSet) -> Result<Self> {
        Self::new(TableGroup::from_group(group.table()?), kernel)
    }

    /// An extension with an explicit surjection onto `quotient`.
    pub fn with_projection(group: TableGroup, quotient: TableGroup, projection: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if projection.len() != n || projection.iter().any(|&h| h >= quotient.order()) {
            return Err(Error::VerificationFailed("projection has the wrong shape".into()));
        }
        let hom =
            (0..n).all(|a| (0..n).all(|b| projection[group.mul(a, b)] == quotient.mul(projection[a], projection[b])));
        let mut hit = vec![false; quotient.order()];
        projection.iter().for_each(|&h| hit[h] = true);
        if !hom || !hit.iter().all(|&x| x) {
            return Err(Error::VerificationFailed("projection is not a surjective homomorphism".into()));
        }
        let mut kernel = ElementSet::with_capacity(n);
        (0..n).filter(|&g| projection[g] == 0).for_each(|g| kernel.insert(g));
        let central = kernel.ones().all(|a| group.is_central(a));
        Ok(ExtensionData { group, kernel, quotient, projection, central })
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel.count_ones(..)
    }

    /// Some element of `G` over each `h ∈ H`.
    pub fn lifts(&self) -> Vec<usize> {
        let mut lift = vec![usize::MAX; self.quotient.order()];
        for (g, &h) in self.projection.iter().enumerate() {
            if lift[h] == usize::MAX {
                lift[h] = g;
            }
        }
        lift
    }

    /// The kernel as its own table, with member ids in `G`.
    pub fn kernel_group(&self) -> (TableGroup, Vec<usize>) {
        self.group.subgroup(&self.kernel)
    }

    /// `Ψ(h)(a) = g a g⁻¹` for a lift `g` of `h`, on kernel positions.
    /// Requires an abelian kernel.
    pub fn conjugation_action(&self) -> Result<Vec<Vec<usize>>> {
        let (a, members) = self.kernel_group();
        if !a.is_abelian() {
            return Err(Error::NotAction("kernel is not abelian".into()));
        }
        let mut pos = vec![usize::MAX; self.group.order()];
        members.iter().enumerate().for_each(|(i, &m)| pos[m] = i);
        Ok(self
            .lifts()
            .into_iter()
            .map(|g| members.iter().map(|&u| pos[self.group.conjugate(u, self.group.inv(g))]).collect())
            .collect())
    }
}

/// `G₁ ×_H G₂` with the pairs it is built from.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub group: TableGroup,
    pub pairs: Vec<(usize, usize)>,
}

impl FiberProduct {
    pub fn id_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.pairs.binary_search(&pair).ok()
    }
}

pub fn fiber_product(e1: &ExtensionData, e2: &ExtensionData) -> Result<FiberProduct> {
    if e1.quotient != e2.quotient {
        return Err(Error::QuotientMismatch);
    }
    let (n1, n2) = (e1.group.order(), e2.group.order());
    let pairs: Vec<(usize, usize)> = (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .filter(|&(a, b)| e1.projection[a] == e2.projection[b])
        .collect();
    let id = |p: (usize, usize)| pairs.binary_search(&p).expect("closed under products");
    let group = TableGroup::from_fn(pairs.len(), vec![], |x, y| {
        let (a1, b1) = pairs[x];
        let (a2, b2) = pairs[y];
        id((e1.group.mul(a1, a2), e2.group.mul(b1, b2)))
    })
    .with_minimal_generators();
    Ok(FiberProduct { group, pairs })
}

/// `A ⋊_Ψ H` with `(u₁,h₁)(u₂,h₂) = (u₁·Ψ(h₁)(u₂), h₁h₂)`, element `(u, h)` at `h·|A| + u`.
///
/// `psi[h][u]` is the image of `u` under `Ψ(h)`.
pub fn semidirect(a: &TableGroup, h: &TableGroup, psi: &[Vec<usize>]) -> Result<TableGroup> {
    let (na, nh) = (a.order(), h.order());
    if psi.len() != nh || psi.iter().any(|p| p.len() != na) {
        return Err(Error::NotAction("Ψ has the wrong shape".into()));
    }
    for (x, p) in psi.iter().enumerate() {
        let mut seen = vec![false; na];
        for &y in p {
            if y >= na || std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotAction(format!("Ψ({x}) is not a bijection")));
            }
        }
        if !(0..na).all(|u| (0..na).all(|v| p[a.mul(u, v)] == a.mul(p[u], p[v]))) {
            return Err(Error::NotAction(format!("Ψ({x}) is not a homomorphism")));
        }
    }
    if !(0..na).all(|u| psi[0][u] == u) {
        return Err(Error::NotAction("Ψ(1) is not the identity".into()));
    }
    for x in 0..nh {
        for y in 0..nh {
            let xy = h.mul(x, y);
            if !(0..na).all(|u| psi[xy][u] == psi[x][psi[y][u]]) {
                return Err(Error::NotAction(format!("Ψ({x})Ψ({y}) ≠ Ψ({x}·{y})")));
            }
        }
    }
    Ok(TableGroup::from_fn(na * nh, vec![], |s, t| {
        let (u1, h1) = (s % na, s / na);
        let (u2, h2) = (t % na, t / na);
        h.mul(h1, h2) * na + a.mul(u1, psi[h1][u2])
    })
    .with_minimal_generators())
}

/// The trivial action of `h` on `a`.
pub fn trivial_action(a: &TableGroup, h: &TableGroup) -> Vec<Vec<usize>> {
    vec![(0..a.order()).collect(); h.order()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dihedral, quaternion};
    use crate::extension::iso::is_isomorphic;

    fn center_ext(g: TableGroup) -> ExtensionData {
        let z = g.center();
        ExtensionData::new(g, z).unwrap()
    }

    #[test]
    fn self_fiber_product_is_diagonal() {
        let g = dihedral(4);
        let e = ExtensionData::new(g.clone(), g.singleton(0)).unwrap();
        let f = fiber_product(&e, &e).unwrap();
        assert_eq!(f.group.order(), 8);
        assert!(f.pairs.iter().all(|&(a, b)| a == b));
        assert!(is_isomorphic(&f.group, &g).unwrap().is_some());
    }

    #[test]
    fn fiber_product_orders() {
        let e = center_ext(quaternion(8));
        assert_eq!(e.quotient.order(), 4);
        let f = fiber_product(&e, &e).unwrap();
        assert_eq!(f.group.order(), 16);
        assert!(f.group.is_valid());

        let s3 = dihedral(3);
        let c3 = s3.closure(&[1]);
        let e = ExtensionData::new(s3, c3).unwrap();
        assert!(!e.central);
        let f = fiber_product(&e, &e).unwrap();
        assert_eq!(f.group.order(), 18);
        // explicit pair enumeration
        let count = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).filter(|&(a, b)| (a < 3) == (b < 3)).count();
        assert_eq!(count, 18);
    }

    #[test]
    fn mismatched_quotients_are_rejected() {
        let a = center_ext(quaternion(8));
        let b = ExtensionData::new(TableGroup::cyclic(6), TableGroup::cyclic(6).closure(&[2])).unwrap();
        assert_eq!(fiber_product(&a, &b).unwrap_err(), Error::QuotientMismatch);
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let (a, h) = (TableGroup::cyclic(3), TableGroup::cyclic(4));
        let g = semidirect(&a, &h, &trivial_action(&a, &h)).unwrap();
        assert!(g.is_abelian());
        let direct = TableGroup::direct_product(&a, &h);
        assert!(is_isomorphic(&g, &direct).unwrap().is_some());
    }

    #[test]
    fn inversion_gives_s3() {
        let (a, h) = (TableGroup::cyclic(3), TableGroup::cyclic(2));
        let psi = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let g = semidirect(&a, &h, &psi).unwrap();
        assert!(g.is_valid());
        assert!(!g.is_abelian());
        let mut orders: Vec<u64> = (0..6).map(|x| g.element_order(x)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        assert!(is_isomorphic(&g, &dihedral(3)).unwrap().is_some());
    }

    #[test]
    fn non_actions_are_rejected() {
        let (a, h) = (TableGroup::cyclic(3), TableGroup::cyclic(2));
        // not a bijection
        assert!(matches!(semidirect(&a, &h, &[vec![0, 1, 2], vec![0, 0, 0]]), Err(Error::NotAction(_))));
        let c4 = TableGroup::cyclic(4);
        // inversion by every element of C4 breaks Ψ(1)Ψ(1) = Ψ(2)
        let inv = vec![0, 2, 1];
        let psi = vec![vec![0, 1, 2], inv.clone(), inv.clone(), inv];
        assert!(matches!(semidirect(&a, &c4, &psi), Err(Error::NotAction(_))));
    }

    #[test]
    fn conjugation_action_of_a_central_kernel_is_trivial() {
        let e = center_ext(dihedral(4));
        assert!(e.central);
        let psi = e.conjugation_action().unwrap();
        let (a, _) = e.kernel_group();
        assert_eq!(psi, trivial_action(&a, &e.quotient));
    }

    #[test]
    fn explicit_projection_is_checked() {
        let g = TableGroup::cyclic(4);
        let h = TableGroup::cyclic(2);
        let e = ExtensionData::with_projection(g.clone(), h.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(e.kernel_order(), 2);
        assert!(ExtensionData::with_projection(g, h, vec![0, 1, 1, 0]).is_err());
    }
}
