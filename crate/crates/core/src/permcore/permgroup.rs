use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::permcore::group::{ElementSet, FiniteGroup, GroupExt, TableGroup};
use crate::permcore::perm::Permutation;

/// Default bound on element enumeration.
pub const DEFAULT_CAP: usize = 20_000;

/// Largest order for which a Cayley table is materialized.
pub const TABLE_CAP: usize = 2048;

/// A permutation group with all of its elements enumerated.
///
/// Elements are stored in lexicographic order of their image tables, so the
/// identity has id `0` and ids are stable across equal groups.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    gen_ids: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Vec<u32>, usize>,
    table: OnceLock<TableGroup>,
}

/// A conjugacy class of a permutation group.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub element_order: u64,
}

impl PermGroup {
    /// Closes `gens` under composition, failing once more than `cap` elements appear.
    pub fn generate(gens: &[Permutation], cap: usize) -> Result<PermGroup> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::from([(id.images().to_vec(), ())]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.then(g);
                if !seen.contains_key(y.images()) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(y.images().to_vec(), ());
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_elements(degree, gens.to_vec(), elements))
    }

    fn from_elements(degree: usize, generators: Vec<Permutation>, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        let index: HashMap<Vec<u32>, usize> =
            elements.iter().enumerate().map(|(i, p)| (p.images().to_vec(), i)).collect();
        let mut gen_ids: Vec<usize> = generators.iter().map(|g| index[g.images()]).filter(|&i| i != 0).collect();
        gen_ids.sort_unstable();
        gen_ids.dedup();
        PermGroup { degree, generators, gen_ids, elements, index, table: OnceLock::new() }
    }

    /// Parses generators written in 1-based cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str], cap: usize) -> Result<PermGroup> {
        let perms = gens.iter().map(|s| Permutation::parse(s, Some(degree))).collect::<Result<Vec<_>>>()?;
        Self::generate(&perms, cap)
    }

    /// The right regular representation of an abstract group.
    pub fn regular(group: &(impl FiniteGroup + ?Sized)) -> Result<PermGroup> {
        let n = group.order();
        let gens: Vec<Permutation> = if group.generators().is_empty() {
            vec![Permutation::identity(n)]
        } else {
            group
                .generators()
                .iter()
                .map(|&g| Permutation::from_images((0..n).map(|x| group.mul(x, g) as u32).collect()))
                .collect::<Result<_>>()?
        };
        Self::generate(&gens, n.max(1))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn permutation_generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p.images()).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.id_of(p).is_some()
    }

    /// Orbit of `point` under the group, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    /// The Cayley table, built on first use; errors above [`TABLE_CAP`].
    pub fn table(&self) -> Result<&TableGroup> {
        if self.order() > TABLE_CAP {
            return Err(Error::CapExceeded { cap: TABLE_CAP });
        }
        Ok(self.table.get_or_init(|| TableGroup::from_group(self)))
    }

    pub fn classes(&self) -> Vec<ConjClass> {
        self.conjugacy_classes()
            .into_iter()
            .map(|members| ConjClass {
                representative: members[0],
                element_order: self.element_order(members[0]),
                members,
            })
            .collect()
    }

    /// `G/N` re-embedded as a permutation group via the regular action on cosets.
    pub fn quotient(&self, normal: &ElementSet) -> Result<PermGroup> {
        if !normal.contains(0) || !self.is_subgroup_fast(normal) || !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let (label, reps) = self.coset_labels(normal);
        let q = reps.len();
        let gens: Vec<Permutation> = if self.gen_ids.is_empty() {
            vec![Permutation::identity(q)]
        } else {
            self.gen_ids
                .iter()
                .map(|&g| Permutation::from_images(reps.iter().map(|&r| label[self.mul(r, g)] as u32).collect()))
                .collect::<Result<_>>()?
        };
        Self::generate(&gens, q)
    }

    /// Subgroup test using generators of the candidate set.
    fn is_subgroup_fast(&self, set: &ElementSet) -> bool {
        let gens = self.subgroup_generators(set);
        let span = self.closure(&gens);
        span == *set
    }

    pub fn subgroup(&self, set: &ElementSet) -> Result<PermGroup> {
        let gens: Vec<Permutation> =
            self.subgroup_generators(set).into_iter().map(|g| self.elements[g].clone()).collect();
        if gens.is_empty() {
            return Self::generate(&[Permutation::identity(self.degree)], 1);
        }
        Self::generate(&gens, set.count_ones(..))
    }

    /// Sorted element-order profile, e.g. `[1, 2, 4, 4]`.
    pub fn order_profile(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements.iter().map(Permutation::order).collect();
        v.sort_unstable();
        v
    }
}

impl FiniteGroup for PermGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t.mul(a, b);
        }
        let pa = &self.elements[a];
        let pb = &self.elements[b];
        let img: Vec<u32> = pa.images().iter().map(|&x| pb.images()[x as usize]).collect();
        self.index[&img]
    }

    fn inv(&self, a: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t.inv(a);
        }
        self.index[self.elements[a].inverse().images()]
    }

    fn generators(&self) -> &[usize] {
        &self.gen_ids
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree, self.order())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}
