//! Index, `a(G)`, k-conjugacy classes and `b(k,G)`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::BaseFieldData;
use crate::permcore::{ConjClass, FiniteGroup, GroupExt, PermGroup, Permutation};

/// `n` minus the number of orbits of `g`.
pub fn ind(g: &Permutation) -> usize {
    g.degree() - g.num_orbits()
}

/// Index of every element of `group`, by element id.
pub fn index_table(group: &PermGroup) -> Vec<usize> {
    group.elements().iter().map(ind).collect()
}

/// `(ind(G), a(G))` with `a(G) = 1/ind(G)` exact.
pub fn min_index(group: &PermGroup) -> Result<(usize, Ratio<i64>)> {
    if group.order() <= 1 {
        return Err(Error::TrivialGroup);
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let m = group.elements()[1..].iter().map(ind).min().expect("nontrivial group");
    Ok((m, Ratio::new(1, m as i64)))
}

/// An orbit of conjugacy classes under the cyclotomic power action.
#[derive(Clone, Debug)]
pub struct KClass {
    pub classes: Vec<ConjClass>,
    /// Common index of the merged classes.
    pub min_index: Option<usize>,
}

impl KClass {
    pub fn size(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }
}

/// Orbits of `C ↦ C^m` for `m` in the cyclotomic image mod `exponent(G)`.
pub fn k_classes(group: &PermGroup, field: &BaseFieldData) -> Result<Vec<KClass>> {
    let classes = group.classes();
    let members: Vec<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
    let class_of = group.class_index(&members);
    let powers = field.cyclo_subgroup(group.exponent())?;

    let mut orbit_of = vec![usize::MAX; classes.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for c in 0..classes.len() {
        if orbit_of[c] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![c];
        orbit_of[c] = id;
        let mut i = 0;
        while i < orbit.len() {
            let rep = classes[orbit[i]].representative;
            for &m in &powers {
                let d = class_of[group.pow(rep, m)];
                if orbit_of[d] == usize::MAX {
                    orbit_of[d] = id;
                    orbit.push(d);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }

    Ok(orbits
        .into_iter()
        .map(|orbit| {
            let merged: Vec<ConjClass> = orbit.iter().map(|&c| classes[c].clone()).collect();
            let indices: Vec<usize> = merged.iter().map(|c| ind(group.element(c.representative))).collect();
            let min_index = indices.iter().all(|&i| i == indices[0]).then(|| indices[0]);
            KClass { classes: merged, min_index }
        })
        .collect())
}

/// Number of k-conjugacy classes of minimal index.
pub fn b_constant(group: &PermGroup, field: &BaseFieldData) -> Result<u64> {
    let (m, _) = min_index(group)?;
    Ok(k_classes(group, field)?.iter().filter(|k| k.min_index == Some(m)).count() as u64)
}

/// Number of conjugacy classes of minimal index (b over a field containing all roots of unity).
pub fn min_index_classes(group: &PermGroup) -> Result<u64> {
    let (m, _) = min_index(group)?;
    Ok(group.classes().iter().filter(|c| ind(group.element(c.representative)) == m).count() as u64)
}

/// Element ids of minimal index.
pub fn min_index_elements(group: &PermGroup) -> Result<Vec<usize>> {
    let (m, _) = min_index(group)?;
    Ok((1..group.order()).filter(|&g| ind(group.element(g)) == m).collect())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::catalog;
    use crate::field::Cyclotomic;

    fn q() -> BaseFieldData {
        BaseFieldData::rationals()
    }

    /// A field whose cyclotomic image is trivial modulo `e`.
    fn split_field(e: u64) -> BaseFieldData {
        let phi = crate::field::units_mod(e).len() as u32;
        BaseFieldData::new(phi, 0, BTreeMap::new(), Cyclotomic::Moduli(BTreeMap::from([(e, vec![])]))).unwrap()
    }

    #[test]
    fn ind_examples() {
        assert_eq!(ind(&Permutation::identity(5)), 0);
        let g = catalog::group("C4xC2_S8").unwrap();
        for p in &g.elements()[1..] {
            match p.order() {
                4 => assert_eq!(ind(p), 6),
                2 => assert_eq!(ind(p), 4),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn min_index_examples() {
        let (i, a) = min_index(&catalog::group("Q8").unwrap()).unwrap();
        assert_eq!((i, a), (4, Ratio::new(1, 4)));
        let (i, a) = min_index(&catalog::group("D4_S4").unwrap()).unwrap();
        assert_eq!((i, a), (1, Ratio::new(1, 1)));
        for ell in [2usize, 3, 5, 7] {
            let (i, _) = min_index(&catalog::group(&format!("C{ell}")).unwrap()).unwrap();
            assert_eq!(i, ell - 1);
        }
    }

    #[test]
    fn min_index_errors() {
        let triv = PermGroup::generate(&[Permutation::identity(2)], 10).unwrap();
        assert_eq!(min_index(&triv).unwrap_err(), Error::TrivialGroup);
        let intransitive = PermGroup::from_cycle_strings(4, &["(1,2)"], 10).unwrap();
        assert_eq!(min_index(&intransitive).unwrap_err(), Error::NotTransitive);
    }

    #[test]
    fn k_classes_of_c3_over_q_merge() {
        let c3 = catalog::group("C3").unwrap();
        assert_eq!(k_classes(&c3, &q()).unwrap().len(), 2);
        assert_eq!(b_constant(&c3, &q()).unwrap(), 1);
    }

    #[test]
    fn trivial_cyclotomic_action_keeps_classes() {
        for name in ["C3", "Q8", "D4_S8", "Heis27", "C5"] {
            let g = catalog::group(name).unwrap();
            let k = split_field(g.exponent());
            assert_eq!(k_classes(&g, &k).unwrap().len(), g.classes().len(), "{name}");
        }
    }

    #[test]
    fn involution_classes_stay_distinct_over_q() {
        let g = catalog::group("C4xC2_S8").unwrap();
        let kc = k_classes(&g, &q()).unwrap();
        let involution_orbits = kc.iter().filter(|k| g.element(k.classes[0].representative).order() == 2).count();
        assert_eq!(involution_orbits, 3);
        assert_eq!(b_constant(&g, &q()).unwrap(), 3);
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_constant(&catalog::group("Q8").unwrap(), &q()).unwrap(), 1);
        for ell in [3u64, 5, 7] {
            let g = catalog::group(&format!("C{ell}")).unwrap();
            // (ℓ-1)/n_ℓ over ℚ and over a field with trivial image
            assert_eq!(b_constant(&g, &q()).unwrap(), 1);
            assert_eq!(b_constant(&g, &split_field(ell)).unwrap(), ell - 1);
        }
    }

    #[test]
    fn ind_is_a_class_function_across_the_catalog() {
        for e in catalog::catalog() {
            let g = e.group().unwrap();
            for c in g.classes() {
                let i0 = ind(g.element(c.representative));
                assert!(c.members.iter().all(|&m| ind(g.element(m)) == i0), "{}", e.name);
                assert!(c.members.iter().all(|&m| g.element(m).order() == c.element_order));
            }
        }
    }

    #[test]
    fn b_is_bounded_by_classes_and_elements() {
        for e in catalog::catalog() {
            let g = e.group().unwrap();
            let b = b_constant(&g, &q()).unwrap();
            let classes = min_index_classes(&g).unwrap();
            let elems = min_index_elements(&g).unwrap().len() as u64;
            assert!(b <= classes && classes <= elems, "{}", e.name);
            let split = split_field(g.exponent());
            assert!(b <= b_constant(&g, &split).unwrap(), "{}", e.name);
        }
    }

    #[test]
    fn catalog_expectations_for_a_and_b() {
        for e in catalog::catalog() {
            let Some(exp) = &e.expected else { continue };
            let g = e.group().unwrap();
            assert_eq!(min_index(&g).unwrap().1, e.expected_a().unwrap(), "{}", e.name);
            if let Some(b) = exp.b_q {
                assert_eq!(b_constant(&g, &q()).unwrap(), b, "{}", e.name);
            }
        }
    }
}
