//! Explicit checks of the pullback, double-quotient and solution-count identities.

use std::collections::BTreeSet;

use serde::Serialize;

use super::iso::{is_isomorphic, is_isomorphism};
use super::product::{fiber_product, semidirect, ExtensionData};
use crate::error::{Error, Result};
use crate::permcore::{ElementSet, FiniteGroup, GroupExt, TableGroup};
use crate::util::is_prime;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PullbackReport {
    pub kernel_order: usize,
    pub quotient_order: usize,
    pub fiber_order: usize,
    /// `G ×_H G ≅ G ×_H (A ⋊ H)`.
    pub fiber_iso: bool,
    /// `(G ×_H G)/{(a,a)} ≅ A ⋊ H`.
    pub quotient_iso: bool,
    /// `Φ(u,g) = (g, ug)` is an isomorphism `A ⋊ G → G ×_H G`.
    pub semidirect_map: bool,
}

impl PullbackReport {
    pub fn passed(&self) -> bool {
        self.fiber_iso
            && self.quotient_iso
            && self.semidirect_map
            && self.fiber_order == self.kernel_order * self.kernel_order * self.quotient_order
    }
}

/// Builds both sides of the pullback identities for an abelian kernel and compares them.
pub fn verify_pullback_identity(e: &ExtensionData) -> Result<PullbackReport> {
    let (a, members) = e.kernel_group();
    let na = a.order();
    let lhs = fiber_product(e, e)?;

    let psi_h = e.conjugation_action()?;
    let a_by_h = semidirect(&a, &e.quotient, &psi_h)?;
    let proj = (0..a_by_h.order()).map(|s| s / na).collect();
    let e2 = ExtensionData::with_projection(a_by_h.clone(), e.quotient.clone(), proj)?;
    let rhs = fiber_product(e, &e2)?;
    let fiber_iso = is_isomorphic(&lhs.group, &rhs.group)?.is_some();

    let mut diagonal = ElementSet::with_capacity(lhs.group.order());
    for &u in &members {
        diagonal.insert(lhs.id_of((u, u)).expect("diagonal pairs lie in the fiber product"));
    }
    let (q, _) = lhs.group.quotient_table(&diagonal)?;
    let quotient_iso = is_isomorphic(&q, &a_by_h)?.is_some();

    // A ⋊ G with G acting by conjugation, mapped by Φ(u,g) = (g, ug)
    let g = &e.group;
    let mut pos = vec![usize::MAX; g.order()];
    members.iter().enumerate().for_each(|(i, &m)| pos[m] = i);
    let psi_g: Vec<Vec<usize>> =
        (0..g.order()).map(|x| members.iter().map(|&u| pos[g.conjugate(u, g.inv(x))]).collect()).collect();
    let a_by_g = semidirect(&a, g, &psi_g)?;
    let phi: Option<Vec<usize>> = (0..a_by_g.order())
        .map(|s| {
            let (u, x) = (members[s % na], s / na);
            lhs.id_of((x, g.mul(u, x)))
        })
        .collect();
    let semidirect_map = phi.is_some_and(|m| is_isomorphism(&a_by_g, &lhs.group, &m));

    Ok(PullbackReport {
        kernel_order: na,
        quotient_order: e.quotient.order(),
        fiber_order: lhs.group.order(),
        fiber_iso,
        quotient_iso,
        semidirect_map,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DoubleQuotient {
    /// Generator of `U` as `(c, g) ∈ C_ℓ × G`.
    pub generator: (usize, usize),
    pub normal: bool,
    pub iso_to_g: bool,
    pub iso_to_c_times_h: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DoubleQuotientReport {
    pub ell: u64,
    pub central: bool,
    pub quotients: Vec<DoubleQuotient>,
}

impl DoubleQuotientReport {
    /// ℓ quotients isomorphic to `G`, the one by `1 × A` isomorphic to `C_ℓ × H`.
    pub fn passed(&self) -> bool {
        let l = self.ell as usize;
        let last = self.quotients.iter().find(|q| q.generator.0 == 0);
        self.central
            && self.quotients.len() == l + 1
            && self.quotients.iter().all(|q| q.normal)
            && last.is_some_and(|q| q.iso_to_c_times_h)
            && self.quotients.iter().filter(|q| q.generator.0 != 0).all(|q| q.iso_to_g)
    }
}

/// Quotients of `C_ℓ × G` by the order-ℓ subgroups of `C_ℓ × A`.
pub fn central_double_quotients(e: &ExtensionData) -> Result<DoubleQuotientReport> {
    let ell = e.kernel_order() as u64;
    if !e.central || !is_prime(ell) {
        return Err(Error::PropertyViolated("kernel must be central of prime order".into()));
    }
    let n = e.group.order();
    let l = ell as usize;
    let tilde = TableGroup::direct_product(&TableGroup::cyclic(l), &e.group);
    let a = e.kernel.ones().find(|&x| x != 0).expect("nontrivial kernel");
    let d = tilde.closure(&[n, a]);
    let center = tilde.center();
    let central = d.is_subset(&center);
    let c_times_h = TableGroup::direct_product(&TableGroup::cyclic(l), &e.quotient);

    let mut subgroups: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut quotients = Vec::new();
    for x in d.ones().filter(|&x| x != 0) {
        let u = tilde.closure(&[x]);
        if !subgroups.insert(u.ones().collect()) {
            continue;
        }
        let normal = tilde.is_normal(&u);
        let (iso_to_g, iso_to_c_times_h) = if normal {
            let (q, _) = tilde.quotient_table(&u)?;
            (is_isomorphic(&q, &e.group)?.is_some(), is_isomorphic(&q, &c_times_h)?.is_some())
        } else {
            (false, false)
        };
        quotients.push(DoubleQuotient { generator: (x / n, x % n), normal, iso_to_g, iso_to_c_times_h });
    }
    Ok(DoubleQuotientReport { ell, central, quotients })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SolutionClasses {
    pub ell: u64,
    pub rank: u32,
    pub trivial_class_size: u64,
    pub nontrivial_class_size: u64,
    /// Fiber multiplicities of the trivial and of every other class.
    pub multiplicities: (u64, u64),
    /// Index-ℓ subgroups of `G` containing `[G,G]G^ℓ`, enumerated.
    pub hyperplanes: u64,
    /// The same count for `G × C_ℓ`.
    pub hyperplanes_extended: u64,
}

impl SolutionClasses {
    pub fn passed(&self) -> bool {
        self.hyperplanes + 1 == self.trivial_class_size
            && self.hyperplanes_extended - self.hyperplanes == self.nontrivial_class_size
    }
}

pub fn solution_class_counts(g: &(impl FiniteGroup + ?Sized), ell: u64) -> Result<SolutionClasses> {
    let rank = g.abelianization_rank(ell)?;
    let lr = ell.pow(rank);
    let table = TableGroup::from_group(g).with_minimal_generators();
    let extended = TableGroup::direct_product(&table, &TableGroup::cyclic(ell as usize));
    Ok(SolutionClasses {
        ell,
        rank,
        trivial_class_size: (lr - 1) / (ell - 1) + 1,
        nontrivial_class_size: lr,
        multiplicities: (1, ell - 1),
        hyperplanes: count_hyperplanes(&table, ell)?,
        hyperplanes_extended: count_hyperplanes(&extended, ell)?,
    })
}

/// Subgroups of index ℓ containing `[G,G]G^ℓ`, by walking the subgroup lattice of the quotient.
fn count_hyperplanes(g: &TableGroup, ell: u64) -> Result<u64> {
    let kernel = g.elementary_kernel(ell);
    let (q, _) = g.quotient_table(&kernel)?;
    let target = q.order() / ell as usize;
    if target == 0 || q.order() == 1 {
        return Ok(0);
    }
    let mut layer: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0]]);
    let mut size = 1;
    while size < target {
        let mut next = BTreeSet::new();
        for s in &layer {
            for x in 0..q.order() {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let mut t: Vec<usize> =
                    s.iter().flat_map(|&y| (0..ell).map(move |k| (y, k))).map(|(y, k)| q.mul(y, q.pow(x, k))).collect();
                t.sort_unstable();
                t.dedup();
                next.insert(t);
            }
        }
        layer = next;
        size *= ell as usize;
    }
    Ok(layer.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dihedral, elementary, quaternion};

    fn center_ext(g: TableGroup) -> ExtensionData {
        let z = g.center();
        ExtensionData::new(g, z).unwrap()
    }

    #[test]
    fn pullback_for_quaternion_dihedral_and_s3() {
        let r = verify_pullback_identity(&center_ext(quaternion(8))).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.fiber_order, 16);
        let r = verify_pullback_identity(&center_ext(dihedral(4))).unwrap();
        assert!(r.passed(), "{r:?}");
        let s3 = dihedral(3);
        let c3 = s3.closure(&[1]);
        let r = verify_pullback_identity(&ExtensionData::new(s3, c3).unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn quaternion_semidirect_is_c2_times_v4() {
        let e = center_ext(quaternion(8));
        let (a, _) = e.kernel_group();
        let sd = semidirect(&a, &e.quotient, &e.conjugation_action().unwrap()).unwrap();
        assert!(is_isomorphic(&sd, &elementary(2, 3)).unwrap().is_some());
    }

    #[test]
    fn central_kernel_semidirect_is_direct() {
        let e = center_ext(dihedral(4));
        let (a, members) = e.kernel_group();
        let g = &e.group;
        let mut pos = [usize::MAX; 8];
        members.iter().enumerate().for_each(|(i, &m)| pos[m] = i);
        let psi: Vec<Vec<usize>> =
            (0..8).map(|x| members.iter().map(|&u| pos[g.conjugate(u, g.inv(x))]).collect()).collect();
        let sd = semidirect(&a, g, &psi).unwrap();
        assert!(is_isomorphic(&sd, &TableGroup::direct_product(&a, g)).unwrap().is_some());
    }

    #[test]
    fn double_quotients_for_q8_d4_c9() {
        for (g, ell) in [(quaternion(8), 2), (dihedral(4), 2)] {
            let r = central_double_quotients(&center_ext(g)).unwrap();
            assert_eq!(r.ell, ell);
            assert_eq!(r.quotients.len(), 3);
            assert!(r.passed(), "{r:?}");
        }
        let c9 = TableGroup::cyclic(9);
        let sub = c9.closure(&[3]);
        let r = central_double_quotients(&ExtensionData::new(c9, sub).unwrap()).unwrap();
        assert_eq!(r.quotients.len(), 4);
        assert_eq!(r.quotients.iter().filter(|q| q.iso_to_g).count(), 3);
        assert_eq!(r.quotients.iter().filter(|q| q.iso_to_c_times_h).count(), 1);
        assert!(r.passed());
    }

    #[test]
    fn double_quotients_need_central_prime_kernel() {
        let s3 = dihedral(3);
        let c3 = s3.closure(&[1]);
        assert!(central_double_quotients(&ExtensionData::new(s3, c3).unwrap()).is_err());
    }

    #[test]
    fn solution_classes() {
        let r = solution_class_counts(&quaternion(8), 2).unwrap();
        assert_eq!((r.rank, r.trivial_class_size, r.nontrivial_class_size), (2, 4, 4));
        assert_eq!(r.multiplicities, (1, 1));
        assert!(r.passed());
        let r = solution_class_counts(&TableGroup::cyclic(2), 2).unwrap();
        assert_eq!((r.trivial_class_size, r.nontrivial_class_size), (2, 2));
        assert!(r.passed());
        let r = solution_class_counts(&elementary(3, 2), 3).unwrap();
        assert_eq!((r.trivial_class_size, r.hyperplanes), (5, 4));
        assert_eq!(r.multiplicities, (1, 2));
        assert!(r.passed());
    }
}
