//! Transitive nilpotent groups as natural products of their Sylow subgroups.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::malle::{ind, min_index, min_index_elements};
use crate::permcore::{FiniteGroup, GroupExt, PermGroup, Permutation};
use crate::util::{factorize, is_prime};

/// `G₁ × G₂` acting coordinatewise on the grid; point `(i, j)` is `i·n₂ + j`.
pub fn natural_product(g1: &PermGroup, g2: &PermGroup) -> Result<PermGroup> {
    if !g1.is_transitive() || !g2.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let (n1, n2) = (g1.degree(), g2.degree());
    let mut gens = Vec::new();
    for g in g1.permutation_generators() {
        let images = (0..n1 * n2).map(|x| (g.apply(x / n2) * n2 + x % n2) as u32).collect();
        gens.push(Permutation::from_images(images)?);
    }
    for h in g2.permutation_generators() {
        let images = (0..n1 * n2).map(|x| ((x / n2) * n2 + h.apply(x % n2)) as u32).collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::generate(&gens, g1.order() * g2.order())
}

/// The pair `(g₁, g₂)` as an element of the natural product.
pub fn product_element(g1: &Permutation, g2: &Permutation) -> Permutation {
    let n2 = g2.degree();
    let images = (0..g1.degree() * n2).map(|x| (g1.apply(x / n2) * n2 + g2.apply(x % n2)) as u32).collect();
    Permutation::from_images(images).expect("product of permutations")
}

/// Nilpotent iff for every prime `p`, the `p`-elements number exactly the `p`-part of `|G|`
/// (i.e. every Sylow subgroup is normal).
pub fn is_nilpotent(group: &(impl FiniteGroup + ?Sized)) -> bool {
    let n = group.order() as u64;
    let orders: Vec<u64> = (0..group.order()).map(|a| group.element_order(a)).collect();
    factorize(n).into_iter().all(|(p, e)| {
        let count = orders.iter().filter(|&&o| is_prime_power_of(o, p)).count() as u64;
        count == p.pow(e)
    })
}

fn is_prime_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

#[derive(Debug)]
pub struct SylowFactor {
    pub prime: u64,
    /// Number of blocks, the largest power of `prime` dividing the degree.
    pub degree: usize,
    /// The Sylow subgroup acting on its blocks.
    pub group: PermGroup,
    pub a: Ratio<i64>,
    /// `n_ℓ · a(G_ℓ) / n`; the largest of these is `a(G)`.
    pub contribution: Ratio<i64>,
}

#[derive(Debug)]
pub struct SylowDecomposition {
    pub factors: Vec<SylowFactor>,
    pub critical_prime: u64,
    pub a: Ratio<i64>,
}

#[derive(Debug, Serialize)]
pub struct SylowSummary {
    pub primes: Vec<u64>,
    pub degrees: Vec<usize>,
    pub orders: Vec<usize>,
    pub critical_prime: u64,
    pub a: String,
}

impl SylowDecomposition {
    pub fn summary(&self) -> SylowSummary {
        SylowSummary {
            primes: self.factors.iter().map(|f| f.prime).collect(),
            degrees: self.factors.iter().map(|f| f.degree).collect(),
            orders: self.factors.iter().map(|f| f.group.order()).collect(),
            critical_prime: self.critical_prime,
            a: self.a.to_string(),
        }
    }
}

/// `g^u` with `u ≡ 1` on the `p`-part of the order of `g` and `0` on the rest.
fn p_part(group: &PermGroup, g: usize, p: u64) -> usize {
    let o = group.element_order(g);
    let mut op = 1;
    let mut rest = o;
    while rest % p == 0 {
        rest /= p;
        op *= p;
    }
    if op == 1 {
        return 0;
    }
    // u = rest · (rest⁻¹ mod op)
    let inv = (1..op).find(|x| (rest % op) * x % op == 1).unwrap_or(1);
    group.pow(g, rest * inv)
}

/// Splits a transitive nilpotent group into its Sylow factors acting on blocks.
pub fn sylow_decompose(group: &PermGroup) -> Result<SylowDecomposition> {
    if group.order() <= 1 {
        return Err(Error::TrivialGroup);
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if !is_nilpotent(group) {
        return Err(Error::NotNilpotent);
    }
    let n = group.degree();
    let mut factors = Vec::new();
    for (p, e) in factorize(group.order() as u64) {
        let sylow_order = p.pow(e) as usize;
        // Hall complement: elements of order prime to p
        let complement: Vec<usize> = (0..group.order()).filter(|&g| group.element_order(g) % p != 0).collect();
        let blocks = orbits(group, &complement);
        let mut block_of = vec![0usize; n];
        for (b, pts) in blocks.iter().enumerate() {
            for &x in pts {
                block_of[x] = b;
            }
        }
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .map(|&g| p_part(group, g, p))
            .filter(|&x| x != 0)
            .map(|x| {
                let perm = group.element(x);
                let images = blocks.iter().map(|pts| block_of[perm.apply(pts[0])] as u32).collect();
                Permutation::from_images(images)
            })
            .collect::<Result<_>>()?;
        let gens = if gens.is_empty() { vec![Permutation::identity(blocks.len())] } else { gens };
        let sylow = PermGroup::generate(&gens, sylow_order)?;
        if sylow.order() != sylow_order {
            return Err(Error::PropertyViolated(format!(
                "Sylow {p}-subgroup acts unfaithfully on its {} blocks",
                blocks.len()
            )));
        }
        let degree = blocks.len();
        if degree == 1 {
            // a Sylow subgroup acting on a single block cannot be faithful unless trivial
            return Err(Error::PropertyViolated(format!("Sylow {p}-subgroup is not transitive")));
        }
        let (_, a) = min_index(&sylow)?;
        let contribution = a * Ratio::new(degree as i64, n as i64);
        factors.push(SylowFactor { prime: p, degree, group: sylow, a, contribution });
    }
    let degree_product: usize = factors.iter().map(|f| f.degree).product();
    if degree_product != n {
        return Err(Error::PropertyViolated(format!("block degrees multiply to {degree_product}, not {n}")));
    }
    let best = factors.iter().map(|f| f.contribution).max().expect("nonempty");
    let attaining: Vec<u64> = factors.iter().filter(|f| f.contribution == best).map(|f| f.prime).collect();
    if attaining.len() != 1 {
        return Err(Error::PropertyViolated(format!("maximum {best} attained at primes {attaining:?}")));
    }
    Ok(SylowDecomposition { factors, critical_prime: attaining[0], a: best })
}

/// Orbits on points of the subgroup given by `elements`, sorted by smallest point.
fn orbits(group: &PermGroup, elements: &[usize]) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = elements.iter().map(|&g| group.element(g).apply(start)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            seen[x] = true;
        }
        out.push(orbit);
    }
    out
}

/// The common prime order of all minimal-index elements.
pub fn critical_prime_check(group: &PermGroup) -> Result<u64> {
    let elems = min_index_elements(group)?;
    let orders: Vec<u64> = elems.iter().map(|&g| group.element(g).order()).collect();
    let ell = orders[0];
    if !is_prime(ell) || orders.iter().any(|&o| o != ell) {
        return Err(Error::PropertyViolated(format!("minimal-index elements have orders {orders:?}")));
    }
    Ok(ell)
}

/// Closed form for the index of `(g₁, g₂)` in the natural product:
/// `n₁n₂ − Σ gcd(c, d)` over pairs of cycles of lengths `c`, `d`.
pub fn product_index_formula(g1: &Permutation, g2: &Permutation) -> usize {
    let t1 = g1.cycle_type();
    let t2 = g2.cycle_type();
    let orbits: usize = t1.iter().flat_map(|&c| t2.iter().map(move |&d| c.gcd(&d))).sum();
    g1.degree() * g2.degree() - orbits
}

/// Predicted `a` of the natural product: `max(a(G₁)/n₂, a(G₂)/n₁)` for coprime orders.
pub fn coprime_product_a(g1: &PermGroup, g2: &PermGroup) -> Result<(Ratio<i64>, Ratio<i64>)> {
    let (_, a1) = min_index(g1)?;
    let (_, a2) = min_index(g2)?;
    Ok((a1 / g2.degree() as i64, a2 / g1.degree() as i64))
}

/// Index of every element of the natural product computed from its coordinates.
pub fn product_index_scan(g1: &PermGroup, g2: &PermGroup) -> Vec<usize> {
    g1.elements().iter().flat_map(|a| g2.elements().iter().map(move |b| ind(&product_element(a, b)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn coprime_cyclic_product_is_c6() {
        let c2 = catalog::group("C2").unwrap();
        let c3 = catalog::group("C3").unwrap();
        let g = natural_product(&c2, &c3).unwrap();
        assert_eq!((g.degree(), g.order()), (6, 6));
        assert!(g.is_transitive());
        assert!(g.is_abelian());
    }

    #[test]
    fn q8_times_c3() {
        let g = natural_product(&catalog::group("Q8").unwrap(), &catalog::group("C3").unwrap()).unwrap();
        assert_eq!((g.degree(), g.order()), (24, 24));
    }

    #[test]
    fn index_formula_matches_orbit_count() {
        let g1 = catalog::group("D4_S4").unwrap();
        let g2 = catalog::group("C3").unwrap();
        for a in g1.elements() {
            for b in g2.elements() {
                assert_eq!(ind(&product_element(a, b)), product_index_formula(a, b));
            }
        }
    }

    #[test]
    fn c6_decomposes_with_critical_prime_two() {
        let g = catalog::group("C6").unwrap();
        let dec = sylow_decompose(&g).unwrap();
        assert_eq!(dec.critical_prime, 2);
        // the involution of C6 has 3 orbits on 6 points: ind 3
        assert_eq!(dec.a, Ratio::new(1, 3));
        assert_eq!(min_index(&g).unwrap().1, dec.a);
        let contributions: Vec<_> = dec.factors.iter().map(|f| f.contribution).collect();
        assert_eq!(contributions, vec![Ratio::new(1, 3), Ratio::new(1, 4)]);
    }

    #[test]
    fn p_group_is_its_own_factor() {
        let g = catalog::group("Q8").unwrap();
        let dec = sylow_decompose(&g).unwrap();
        assert_eq!(dec.factors.len(), 1);
        assert_eq!(dec.factors[0].degree, 8);
        assert_eq!(dec.a, Ratio::new(1, 4));
    }

    #[test]
    fn decomposition_recovers_factors() {
        let q8 = catalog::group("Q8").unwrap();
        let c3 = catalog::group("C3").unwrap();
        let g = natural_product(&q8, &c3).unwrap();
        let dec = sylow_decompose(&g).unwrap();
        let orders: Vec<usize> = dec.factors.iter().map(|f| f.group.order()).collect();
        assert_eq!(orders, vec![8, 3]);
        assert_eq!(dec.factors[0].degree, 8);
        assert_eq!(dec.factors[1].degree, 3);
        let mut types0: Vec<_> = dec.factors[0].group.elements().iter().map(Permutation::cycle_type).collect();
        let mut types1: Vec<_> = q8.elements().iter().map(Permutation::cycle_type).collect();
        types0.sort();
        types1.sort();
        assert_eq!(types0, types1);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let s3 = catalog::group("S3").unwrap();
        assert!(!is_nilpotent(&s3));
        assert_eq!(sylow_decompose(&s3).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn critical_primes() {
        assert_eq!(critical_prime_check(&catalog::group("Q8").unwrap()).unwrap(), 2);
        assert_eq!(critical_prime_check(&catalog::group("C4xC2_S8").unwrap()).unwrap(), 2);
        assert_eq!(critical_prime_check(&catalog::group("C6").unwrap()).unwrap(), 2);
        assert_eq!(critical_prime_check(&catalog::group("Heis27").unwrap()).unwrap(), 3);
    }

    #[test]
    fn coprime_maximum_is_strict() {
        let twos = ["C2", "C4", "V4", "Q8", "D4_S4"];
        let odds = ["C3", "C5", "C9", "C3^2"];
        for x in twos {
            for y in odds {
                let g1 = catalog::group(x).unwrap();
                let g2 = catalog::group(y).unwrap();
                let (u, v) = coprime_product_a(&g1, &g2).unwrap();
                assert_ne!(u, v);
                let scan = product_index_scan(&g1, &g2);
                let m = *scan[1..].iter().min().unwrap();
                assert_eq!(Ratio::new(1, m as i64), u.max(v), "{x} x {y}");
            }
        }
    }
}
