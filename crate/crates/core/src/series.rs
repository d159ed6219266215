//! Central series refinements and the exponent `d(k,G)`.
//!
//! A refinement is a chain `E = G_r < … < G_0 = G` of normal subgroups whose
//! successive quotients have prime order and are central in `G/G_i`. Chains
//! are stored top-down (`chain[0] = G`), layers are `A_i = G_{i−1} \ G_i`.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::BaseFieldData;
use crate::malle::{index_table, min_index_elements};
use crate::nilpotent::{critical_prime_check, is_nilpotent};
use crate::permcore::{ElementSet, FiniteGroup, GroupExt, PermGroup};
use crate::util::{exact_log, is_prime};

/// Largest group order searched exhaustively by default.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// `G_0 = G, G_1, …, G_r = E`.
    pub chain: Vec<ElementSet>,
    pub orders: Vec<usize>,
    /// `ℓ_1, …, ℓ_r`.
    pub primes: Vec<u64>,
    /// `a_1, …, a_r`.
    pub layer_min_index: Vec<usize>,
    /// `m_1, …, m_r`.
    pub weights: Vec<u64>,
    pub group_index: usize,
    pub critical_prime: Option<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RefinementReport {
    pub subgroup_orders: Vec<usize>,
    pub primes: Vec<u64>,
    pub layer_min_index: Vec<usize>,
    pub weights: Vec<u64>,
    pub d_g: u64,
    pub d_k: String,
}

impl Refinement {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `A_i` for `i = 1..=r`.
    pub fn layers(&self) -> Vec<ElementSet> {
        self.chain
            .windows(2)
            .map(|w| {
                let mut a = w[0].clone();
                a.difference_with(&w[1]);
                a
            })
            .collect()
    }

    /// `Σ m_i` over layers attaining `ind(G)`.
    pub fn d_g(&self) -> u64 {
        self.layer_min_index.iter().zip(&self.weights).filter(|(&a, _)| a == self.group_index).map(|(_, &m)| m).sum()
    }

    pub fn report(&self, field: &BaseFieldData) -> Result<RefinementReport> {
        let (d_g, d_k) = d_constant(self, field)?;
        Ok(RefinementReport {
            subgroup_orders: self.orders.clone(),
            primes: self.primes.clone(),
            layer_min_index: self.layer_min_index.clone(),
            weights: self.weights.clone(),
            d_g,
            d_k: d_k.to_string(),
        })
    }
}

/// Validates `chain` (top-down) and fills in the layer data.
pub fn refinement_data(group: &PermGroup, chain: &[ElementSet]) -> Result<Refinement> {
    let _ = group.table();
    let ind = index_table(group);
    build(group, &ind, critical_prime_check(group).ok(), chain.to_vec(), true)
}

fn build(
    group: &PermGroup,
    ind: &[usize],
    critical_prime: Option<u64>,
    chain: Vec<ElementSet>,
    validate: bool,
) -> Result<Refinement> {
    let n = group.order();
    let bad = |msg: String| Err(Error::InvalidChain(msg));
    if chain.len() < 2 && n > 1 {
        return bad("chain must run from G down to E".into());
    }
    if validate {
        if chain[0].count_ones(..) != n {
            return bad("first subgroup is not G".into());
        }
        let last = chain.last().expect("nonempty");
        if last.count_ones(..) != 1 || !last.contains(0) {
            return bad("last subgroup is not trivial".into());
        }
    }
    let orders: Vec<usize> = chain.iter().map(|s| s.count_ones(..)).collect();
    let mut primes = Vec::new();
    let mut layer_min_index = Vec::new();
    for (i, w) in chain.windows(2).enumerate() {
        let (upper, lower) = (&w[0], &w[1]);
        let (hi, lo) = (orders[i], orders[i + 1]);
        if validate {
            if !lower.is_subset(upper) || hi % lo != 0 || !is_prime((hi / lo) as u64) {
                return bad(format!("step {} is not a prime-index inclusion", i + 1));
            }
            if !group.is_subgroup(lower) || !group.is_normal(lower) {
                return bad(format!("G_{} is not a normal subgroup", i + 1));
            }
            let central =
                upper.ones().all(|g| group.generators().iter().all(|&h| lower.contains(group.commutator(g, h))));
            if !central {
                return bad(format!("G_{}/G_{} is not central", i, i + 1));
            }
        }
        primes.push((hi / lo) as u64);
        let a = upper.difference(lower).map(|g| ind[g]).min().expect("nonempty layer");
        layer_min_index.push(a);
    }
    // m_i = (ℓ_i − 1)·∏_{j>i} ℓ_j
    let mut weights = vec![0u64; primes.len()];
    let mut below = 1u64;
    for i in (0..primes.len()).rev() {
        weights[i] = (primes[i] - 1) * below;
        below *= primes[i];
    }
    let group_index = ind[1..].iter().copied().min().unwrap_or(0);
    Ok(Refinement { chain, orders, primes, layer_min_index, weights, group_index, critical_prime })
}

/// `(d(G), d(k,G) = d(G)/n_ℓ)` with `ℓ` the critical prime.
pub fn d_constant(r: &Refinement, field: &BaseFieldData) -> Result<(u64, Ratio<i64>)> {
    let ell = r
        .critical_prime
        .ok_or_else(|| Error::PropertyViolated("minimal-index elements have no common prime order".into()))?;
    let d = r.d_g();
    let n_ell = field.n_ell(ell)?;
    Ok((d, Ratio::new(d as i64, n_ell as i64)))
}

/// Normal subgroups reachable by central prime steps, with memoized covers.
struct Lattice<'a> {
    group: &'a PermGroup,
    ind: Vec<usize>,
    target: usize,
    critical_prime: Option<u64>,
    covers: HashMap<ElementSet, Vec<ElementSet>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Span {
    min: u64,
    max: u64,
    chains: u128,
}

impl<'a> Lattice<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let _ = group.table();
        let ind = index_table(group);
        let target = ind[1..].iter().copied().min().unwrap_or(0);
        Lattice { group, ind, target, critical_prime: critical_prime_check(group).ok(), covers: HashMap::new() }
    }

    /// Subgroups `N' > N` with `N'/N` central of prime order, in canonical order.
    fn covers(&mut self, n: &ElementSet) -> Vec<ElementSet> {
        if let Some(c) = self.covers.get(n) {
            return c.clone();
        }
        let g = self.group;
        let mut covered = n.clone();
        let mut out = Vec::new();
        for x in 0..g.order() {
            if covered.contains(x) {
                continue;
            }
            let mut powers = vec![g.identity(), x];
            while !n.contains(*powers.last().expect("nonempty")) {
                powers.push(g.mul(powers[powers.len() - 1], x));
            }
            powers.pop();
            if !is_prime(powers.len() as u64) {
                continue;
            }
            if !g.generators().iter().all(|&h| n.contains(g.commutator(x, h))) {
                continue;
            }
            let mut next = n.clone();
            for m in n.ones() {
                for &p in &powers[1..] {
                    next.insert(g.mul(m, p));
                }
            }
            covered.union_with(&next);
            out.push(next);
        }
        out.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        self.covers.insert(n.clone(), out.clone());
        out
    }

    fn cost(&self, lower: &ElementSet, upper: &ElementSet) -> u64 {
        let layer = upper.difference(lower);
        let mut size = 0u64;
        let mut hit = false;
        for x in layer {
            size += 1;
            hit |= self.ind[x] == self.target;
        }
        if hit {
            size
        } else {
            0
        }
    }

    fn bottom(&self) -> ElementSet {
        self.group.singleton(0)
    }

    fn spans(&mut self) -> HashMap<ElementSet, Span> {
        let mut memo = HashMap::new();
        let bottom = self.bottom();
        self.span(&bottom, &mut memo);
        memo
    }

    fn span(&mut self, n: &ElementSet, memo: &mut HashMap<ElementSet, Span>) -> Span {
        if let Some(s) = memo.get(n) {
            return *s;
        }
        let s = if n.count_ones(..) == self.group.order() {
            Span { min: 0, max: 0, chains: 1 }
        } else {
            let mut acc: Option<Span> = None;
            for c in self.covers(n) {
                let cost = self.cost(n, &c);
                let sub = self.span(&c, memo);
                let here = Span { min: sub.min + cost, max: sub.max + cost, chains: sub.chains };
                acc = Some(match acc {
                    None => here,
                    Some(a) => {
                        Span { min: a.min.min(here.min), max: a.max.max(here.max), chains: a.chains + here.chains }
                    }
                });
            }
            acc.expect("a non-maximal normal subgroup of a nilpotent group has a central cover")
        };
        memo.insert(n.clone(), s);
        s
    }
}

fn require_nilpotent(group: &PermGroup) -> Result<()> {
    if group.order() <= 1 {
        return Err(Error::TrivialGroup);
    }
    if !is_nilpotent(group) {
        return Err(Error::NotNilpotent);
    }
    Ok(())
}

/// Calls `f` on every refinement, in canonical depth-first order.
pub fn for_each_refinement(group: &PermGroup, cap: usize, mut f: impl FnMut(&Refinement)) -> Result<()> {
    require_nilpotent(group)?;
    if group.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mut lat = Lattice::new(group);
    let mut stack = vec![lat.bottom()];
    walk(&mut lat, &mut stack, &mut f)
}

fn walk(lat: &mut Lattice<'_>, stack: &mut Vec<ElementSet>, f: &mut impl FnMut(&Refinement)) -> Result<()> {
    let top = stack.last().expect("nonempty").clone();
    if top.count_ones(..) == lat.group.order() {
        let chain: Vec<ElementSet> = stack.iter().rev().cloned().collect();
        f(&build(lat.group, &lat.ind, lat.critical_prime, chain, false)?);
        return Ok(());
    }
    for c in lat.covers(&top) {
        stack.push(c);
        walk(lat, stack, f)?;
        stack.pop();
    }
    Ok(())
}

pub fn enumerate_refinements(group: &PermGroup, cap: usize) -> Result<Vec<Refinement>> {
    let mut out = Vec::new();
    for_each_refinement(group, cap, |r| out.push(r.clone()))?;
    Ok(out)
}

/// Extremes of `d(G)` over all refinements and their number.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct DRange {
    pub min: u64,
    pub max: u64,
    pub chains: u128,
}

pub fn d_range(group: &PermGroup, cap: usize) -> Result<DRange> {
    require_nilpotent(group)?;
    if group.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mut lat = Lattice::new(group);
    let bottom = lat.bottom();
    let memo = lat.spans();
    let s = memo[&bottom];
    Ok(DRange { min: s.min, max: s.max, chains: s.chains })
}

#[derive(Clone, Debug)]
pub struct Optimized {
    pub refinement: Refinement,
    pub d_g: u64,
    pub d_k: Ratio<i64>,
    /// Set when the group exceeded the exhaustive cap and a greedy chain was used.
    pub heuristic_only: bool,
}

pub fn optimize_d(group: &PermGroup, field: &BaseFieldData) -> Result<Optimized> {
    optimize_d_with_cap(group, field, DEFAULT_EXHAUSTIVE_CAP)
}

/// Minimal `d(k,G)`; ties go to the chain whose subgroups come first in
/// (order, element ids) order, read from the bottom.
pub fn optimize_d_with_cap(group: &PermGroup, field: &BaseFieldData, cap: usize) -> Result<Optimized> {
    require_nilpotent(group)?;
    let mut lat = Lattice::new(group);
    let heuristic_only = group.order() > cap;
    let mut chain = vec![lat.bottom()];
    if heuristic_only {
        greedy(&mut lat, &mut chain);
    } else {
        let memo = lat.spans();
        loop {
            let n = chain.last().expect("nonempty").clone();
            if n.count_ones(..) == group.order() {
                break;
            }
            let want = memo[&n].min;
            let next = lat
                .covers(&n)
                .into_iter()
                .find(|c| lat.cost(&n, c) + memo[c].min == want)
                .expect("optimum is attained by some cover");
            chain.push(next);
        }
    }
    chain.reverse();
    let refinement = build(group, &lat.ind, lat.critical_prime, chain, false)?;
    let (d_g, d_k) = d_constant(&refinement, field)?;
    Ok(Optimized { refinement, d_g, d_k, heuristic_only })
}

/// Climbs from `E`, preferring covers whose new layer has the largest share
/// of minimal-index elements while any remain outside the current subgroup.
fn greedy(lat: &mut Lattice<'_>, chain: &mut Vec<ElementSet>) {
    let order = lat.group.order();
    let mut remaining = (1..order).filter(|&g| lat.ind[g] == lat.target).count();
    loop {
        let n = chain.last().expect("nonempty").clone();
        if n.count_ones(..) == order {
            return;
        }
        let covers = lat.covers(&n);
        let pick = if remaining == 0 {
            0
        } else {
            let share = |c: &ElementSet| {
                let layer: Vec<usize> = c.difference(&n).collect();
                let hits = layer.iter().filter(|&&g| lat.ind[g] == lat.target).count();
                Ratio::new(hits as u64, layer.len() as u64)
            };
            let best = covers.iter().map(share).max().expect("covers exist");
            covers.iter().position(|c| share(c) == best).expect("maximum attained")
        };
        let next = covers[pick].clone();
        remaining -= next.difference(&n).filter(|&g| lat.ind[g] == lat.target).count();
        chain.push(next);
    }
}

/// True iff every minimal-index element is central; then their number is `ℓ^s − 1`.
pub fn minimal_index_is_central(group: &PermGroup) -> Result<bool> {
    let elems = min_index_elements(group)?;
    if !elems.iter().all(|&g| group.is_central(g)) {
        return Ok(false);
    }
    let ell = critical_prime_check(group)?;
    if exact_log(elems.len() as u64 + 1, ell).is_none() {
        return Err(Error::PropertyViolated(format!(
            "{} central minimal-index elements is not {ell}^s - 1",
            elems.len()
        )));
    }
    Ok(true)
}
