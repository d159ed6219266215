//! Named falsification suites that exercise the structural identities and
//! bounds on concrete groups and prime sets.

use serde::Serialize;

use crate::catalog;
use crate::counting::{self, check_profile, random_profiles};
use crate::error::{Error, Result};
use crate::extension::{central_double_quotients, solution_class_counts, verify_pullback_identity, ExtensionData};
use crate::field::{BaseFieldData, Cyclotomic};
use crate::malle::{b_constant, min_index, min_index_elements};
use crate::nilpotent::{coprime_product_a, critical_prime_check, is_nilpotent, natural_product, sylow_decompose};
use crate::permcore::{ElementSet, FiniteGroup, GroupExt, PermGroup, TableGroup};
use crate::series::{d_range, minimal_index_is_central, optimize_d_with_cap};
use crate::util::{exact_log, prime_divisors};
use crate::Ratio;

/// `(slug, what the suite checks)`.
pub const SUITES: &[(&str, &str)] = &[
    ("pullback-semidirect", "G ×_H G is isomorphic to U ⋊ G via (u,g) ↦ (g,ug)"),
    ("fiber-quotient", "G ×_H G ≅ G ×_H (A ⋊ H) and (G ×_H G)/diag(A) ≅ A ⋊ H"),
    ("central-double-quotient", "quotients of C_ℓ × G by the ℓ+1 subgroups of order ℓ in C_ℓ × A"),
    ("solution-classes", "class sizes (ℓ^r−1)/(ℓ−1)+1 and ℓ^r from the ℓ-rank of the abelianization"),
    ("rank-bound", "C_ℓ-extensions unramified outside S never exceed (ℓ^s−1)/(ℓ−1)"),
    ("exact-ramification", "exact-ramification counts against ℓ^{c+|T|}(ℓ−1)^{|S|} and inclusion–exclusion"),
    ("coprime-product", "a of a natural product of coprime groups is the strict maximum of a(Gᵢ)/n_j"),
    ("sylow-product", "nilpotent groups split into Sylow factors on blocks with a = max n·a(G_ℓ)/n_ℓ"),
    ("critical-prime", "all minimal-index elements share one prime order"),
    ("fiber-bound", "biquadratic fibers of the ramification tuple map stay within the layer bound"),
    ("index-count-bounds", "#minimal-index elements ≤ d(G) ≤ |G|−1 for every refinement"),
    ("abelian-rank", "abelian ℓ-groups of rank s reach d(G) = ℓ^s−1 = d(k,G)·n_ℓ with d(k,G) = b(k,G)"),
    ("central-minimal", "central minimal-index elements give d(G) = ℓ^s−1 and d = b; otherwise b < d over k(ζ_ℓ)"),
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub profiles: usize,
    pub fiber_x: u64,
    pub exhaustive_cap: usize,
    /// Catalog names; the group suites run on each.
    pub groups: Vec<String>,
    /// Largest fiber product handed to the isomorphism search.
    pub max_fiber_order: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            profiles: 200,
            fiber_x: 1_000_000,
            exhaustive_cap: crate::series::DEFAULT_EXHAUSTIVE_CAP,
            groups: catalog::NAMES.iter().map(|s| s.to_string()).collect(),
            max_fiber_order: 512,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub description: String,
    pub cases: usize,
    pub passed: bool,
    /// Counterexamples; empty on success.
    pub failures: Vec<Witness>,
}

struct Collector {
    cases: usize,
    failures: Vec<Witness>,
}

impl Collector {
    fn new() -> Self {
        Collector { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, case: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Witness { case: case.into(), detail: detail() });
        }
    }

    fn result<T>(&mut self, case: impl Into<String>, r: Result<T>, f: impl FnOnce(&mut Self, String, T)) {
        let case = case.into();
        match r {
            Ok(v) => f(self, case, v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(Witness { case, detail: e.to_string() });
            }
        }
    }
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Runs one suite by slug.
pub fn run_suite(slug: &str, config: &VerifyConfig) -> Result<SuiteReport> {
    let description = SUITES.iter().find(|s| s.0 == slug).ok_or_else(|| Error::UnknownSuite(slug.to_string()))?.1;
    let groups = load(&config.groups)?;
    let mut c = Collector::new();
    match slug {
        "pullback-semidirect" => pullback(&mut c, &groups, config, false),
        "fiber-quotient" => pullback(&mut c, &groups, config, true),
        "central-double-quotient" => double_quotient(&mut c, &groups),
        "solution-classes" => solution_classes(&mut c, &groups),
        "rank-bound" => profiles(&mut c, config, false),
        "exact-ramification" => profiles(&mut c, config, true),
        "coprime-product" => coprime(&mut c),
        "sylow-product" => sylow(&mut c, &groups),
        "critical-prime" => critical(&mut c, &groups),
        "fiber-bound" => fibers(&mut c, config),
        "index-count-bounds" => index_bounds(&mut c, &groups, config),
        "abelian-rank" => abelian(&mut c, &groups, config),
        "central-minimal" => central_minimal(&mut c, &groups, config),
        _ => unreachable!("slug validated above"),
    }
    Ok(SuiteReport {
        suite: slug.to_string(),
        description: description.to_string(),
        cases: c.cases,
        passed: c.failures.is_empty() && c.cases > 0,
        failures: c.failures,
    })
}

pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s.0, config)).collect()
}

fn load(names: &[String]) -> Result<Vec<(String, PermGroup)>> {
    names.iter().map(|n| Ok((n.clone(), catalog::group(n)?))).collect()
}

fn nilpotent(groups: &[(String, PermGroup)]) -> impl Iterator<Item = &(String, PermGroup)> {
    groups.iter().filter(|(_, g)| g.order() > 1 && is_nilpotent(g))
}

/// A central subgroup of prime order, generated by a power of the first central element.
fn minimal_central(t: &TableGroup) -> Option<ElementSet> {
    let z = t.center().ones().find(|&g| g != 0)?;
    let o = t.element_order(z);
    let p = prime_divisors(o)[0];
    Some(t.closure(&[t.pow(z, o / p)]))
}

/// Proper nontrivial abelian normal subgroups worth testing: the center, the
/// derived subgroup and a minimal central subgroup.
fn kernels(t: &TableGroup) -> Vec<(&'static str, ElementSet)> {
    let n = t.order();
    let mut out: Vec<(&'static str, ElementSet)> = Vec::new();
    let mut push = |label, k: ElementSet| {
        let size = k.count_ones(..);
        if size > 1 && size < n && !out.iter().any(|(_, o)| *o == k) {
            out.push((label, k));
        }
    };
    push("center", t.center());
    let d = t.derived_subgroup();
    let (dt, _) = t.subgroup(&d);
    if dt.is_abelian() {
        push("derived", d);
    }
    if let Some(z) = minimal_central(t) {
        push("minimal-central", z);
    }
    out
}

fn pullback(c: &mut Collector, groups: &[(String, PermGroup)], config: &VerifyConfig, fiber: bool) {
    for (name, g) in groups {
        let t = match g.table() {
            Ok(t) => TableGroup::from_group(t),
            Err(e) => return c.check(name.clone(), false, || e.to_string()),
        };
        for (label, k) in kernels(&t) {
            let size = k.count_ones(..);
            if size * t.order() > config.max_fiber_order {
                continue;
            }
            let case = format!("{name} over {label} (order {size})");
            let r = ExtensionData::new(t.clone(), k).and_then(|e| verify_pullback_identity(&e));
            c.result(case, r, |c, case, r| {
                let ok = if fiber {
                    r.fiber_iso && r.quotient_iso
                } else {
                    r.semidirect_map && r.fiber_order == r.kernel_order * r.kernel_order * r.quotient_order
                };
                c.check(case, ok, || format!("{r:?}"));
            });
        }
    }
}

fn double_quotient(c: &mut Collector, groups: &[(String, PermGroup)]) {
    for (name, g) in nilpotent(groups) {
        let Ok(t) = g.table().map(TableGroup::from_group) else { continue };
        let Some(z) = minimal_central(&t) else { continue };
        let r = ExtensionData::new(t, z).and_then(|e| central_double_quotients(&e));
        c.result(name.clone(), r, |c, case, r| c.check(case, r.passed(), || format!("{r:?}")));
    }
}

fn solution_classes(c: &mut Collector, groups: &[(String, PermGroup)]) {
    for (name, g) in nilpotent(groups) {
        for ell in prime_divisors(g.order() as u64) {
            let r = solution_class_counts(g, ell);
            c.result(format!("{name}, ℓ = {ell}"), r, |c, case, r| c.check(case, r.passed(), || format!("{r:?}")));
        }
    }
}

fn profiles(c: &mut Collector, config: &VerifyConfig, exact: bool) {
    for (i, p) in random_profiles(config.seed, config.profiles).iter().enumerate() {
        let r = check_profile(p);
        let ok = if exact {
            let total = counting::count_unramified_outside(p.ell, p.s.iter().chain(&p.t));
            r.exact == r.exact_closed_form && r.exact <= r.exact_bound_tight && r.partition_sum == total
        } else {
            r.unramified <= r.unramified_bound
        };
        c.check(format!("profile {i}: ℓ = {}, S = {:?}, T = {:?}", p.ell, p.s, p.t), ok, || format!("{r:?}"));
    }
}

fn coprime(c: &mut Collector) {
    let twos = ["C2", "C4", "V4", "Q8", "D4_S4", "D4_S8"];
    let odds = ["C3", "C5", "C7", "C9", "C3^2"];
    for a in twos {
        for b in odds {
            let case = format!("{a} × {b}");
            let r = (|| {
                let (g1, g2) = (catalog::group(a)?, catalog::group(b)?);
                let g = natural_product(&g1, &g2)?;
                let (p1, p2) = coprime_product_a(&g1, &g2)?;
                let (_, actual) = min_index(&g)?;
                Ok((p1, p2, actual))
            })();
            c.result(case, r, |c, case, (p1, p2, actual): (Ratio<i64>, Ratio<i64>, Ratio<i64>)| {
                c.check(case, p1 != p2 && actual == p1.max(p2), || format!("a = {actual}, candidates {p1}, {p2}"));
            });
        }
    }
}

fn sylow(c: &mut Collector, groups: &[(String, PermGroup)]) {
    for (name, g) in groups {
        if !is_nilpotent(g) {
            c.check(format!("{name} rejected"), matches!(sylow_decompose(g), Err(Error::NotNilpotent)), || {
                "non-nilpotent group was decomposed".into()
            });
            continue;
        }
        let r = sylow_decompose(g).and_then(|d| Ok((d, min_index(g)?.1)));
        c.result(name.clone(), r, |c, case, (d, a)| {
            let n = g.degree();
            let degrees_ok = d.factors.iter().all(|f| exact_log(f.degree as u64, f.prime).is_some())
                && d.factors.iter().map(|f| f.degree).product::<usize>() == n;
            let orders_ok = d.factors.iter().map(|f| f.group.order()).product::<usize>() == g.order();
            let best = d.factors.iter().map(|f| f.contribution).max().unwrap_or_default();
            let unique = d.factors.iter().filter(|f| f.contribution == best).count() == 1;
            c.check(case, degrees_ok && orders_ok && unique && d.a == a && best == a, || format!("{:?}", d.summary()));
        });
    }
}

fn critical(c: &mut Collector, groups: &[(String, PermGroup)]) {
    for (name, g) in nilpotent(groups) {
        let r = critical_prime_check(g).and_then(|ell| Ok((ell, sylow_decompose(g)?.critical_prime)));
        c.result(name.clone(), r, |c, case, (ell, from_sylow)| {
            c.check(case, ell == from_sylow, || format!("orders give {ell}, Sylow factors give {from_sylow}"));
        });
    }
}

fn fibers(c: &mut Collector, config: &VerifyConfig) {
    let r = counting::v4_fiber_check(config.fiber_x);
    c.check(format!("biquadratic fields up to {}", config.fiber_x), r.passed() && r.fields > 0, || {
        format!(
            "{} violations, {} loose violations, tame failures {:?}",
            r.violations.len(),
            r.loose_violations,
            r.tame_failures
        )
    });
}

fn index_bounds(c: &mut Collector, groups: &[(String, PermGroup)], config: &VerifyConfig) {
    for (name, g) in nilpotent(groups) {
        let r = d_range(g, config.exhaustive_cap).and_then(|d| Ok((d, min_index_elements(g)?.len() as u64)));
        c.result(name.clone(), r, |c, case, (d, count)| {
            c.check(case, count <= d.min && d.max < g.order() as u64, || {
                format!("#min = {count}, d ∈ [{}, {}], |G| = {}", d.min, d.max, g.order())
            });
        });
    }
}

/// Rank and exponent of an abelian ℓ-group, `None` if not of that shape.
fn abelian_ell_rank(g: &PermGroup) -> Option<(u64, u32)> {
    let ps = prime_divisors(g.order() as u64);
    if !g.is_abelian() || ps.len() != 1 {
        return None;
    }
    let ell = ps[0];
    Some((ell, g.abelianization_rank(ell).ok()?))
}

fn abelian(c: &mut Collector, groups: &[(String, PermGroup)], config: &VerifyConfig) {
    let q = BaseFieldData::rationals();
    for (name, g) in groups {
        let Some((ell, s)) = abelian_ell_rank(g) else { continue };
        let r = optimize_d_with_cap(g, &q, config.exhaustive_cap).and_then(|o| Ok((o, b_constant(g, &q)?)));
        c.result(name.clone(), r, |c, case, (o, b)| {
            let want = ell.pow(s) - 1;
            c.check(case, o.d_g == want && o.d_k == Ratio::from_integer(b as i64), || {
                format!("d(G) = {}, want {want}; d(ℚ,G) = {}, b = {b}", o.d_g, o.d_k)
            });
        });
    }
}

/// A field with trivial cyclotomic image modulo `e`, i.e. containing `ζ_e`.
fn with_roots_of_unity(e: u64) -> Result<BaseFieldData> {
    let degree = crate::field::units_mod(e).len().max(1) as u32;
    let moduli = [(e.max(2), vec![1u64])].into_iter().collect();
    BaseFieldData::new(degree, 0, Default::default(), Cyclotomic::Moduli(moduli))
}

fn central_minimal(c: &mut Collector, groups: &[(String, PermGroup)], config: &VerifyConfig) {
    let q = BaseFieldData::rationals();
    for (name, g) in nilpotent(groups) {
        let r = (|| {
            let central = minimal_index_is_central(g)?;
            let count = min_index_elements(g)?.len() as u64;
            let o = optimize_d_with_cap(g, &q, config.exhaustive_cap)?;
            let b = b_constant(g, &q)?;
            let cyclotomic = with_roots_of_unity(g.exponent())?;
            let b_cyc = b_constant(g, &cyclotomic)?;
            let d_cyc = optimize_d_with_cap(g, &cyclotomic, config.exhaustive_cap)?.d_k;
            Ok((central, count, o, b, b_cyc, d_cyc))
        })();
        c.result(name.clone(), r, |c, case, (central, count, o, b, b_cyc, d_cyc)| {
            let ok = if central {
                o.d_g == count && o.d_k == Ratio::from_integer(b as i64)
            } else {
                Ratio::from_integer(b_cyc as i64) < d_cyc
            };
            c.check(case, ok, || {
                format!("central = {central}, #min = {count}, d(G) = {}, d(ℚ,G) = {}, b = {b}, over k(ζ): b = {b_cyc}, d = {d_cyc}", o.d_g, o.d_k)
            });
        });
    }
}
