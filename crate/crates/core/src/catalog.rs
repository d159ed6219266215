//! Named transitive groups used by the CLI and the verification suites.
//!
//! Names are fixed strings (`Q8`, `D4_S4`, `Heis27`, ...) plus a few
//! parametric families: `C<n>` (regular cyclic), `C<p>^<k>` (regular
//! elementary abelian) and `Q<2^k>` (regular generalized quaternion).

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nilpotent::natural_product;
use crate::permcore::{FiniteGroup, PermGroup, TableGroup, DEFAULT_CAP};
use crate::util::{exact_log, is_prime};

/// Invariants over ℚ that are known independently of this crate's algorithms.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Expected {
    pub a: (i64, i64),
    pub b_q: Option<u64>,
    pub d_opt: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub degree: usize,
    pub order: usize,
    /// 1-based cycle notation.
    pub generators: Vec<String>,
    pub nilpotent: bool,
    pub expected: Option<Expected>,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<PermGroup> {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        PermGroup::from_cycle_strings(self.degree, &gens, DEFAULT_CAP)
    }

    pub fn expected_a(&self) -> Option<Ratio<i64>> {
        self.expected.as_ref().map(|e| Ratio::new(e.a.0, e.a.1))
    }
}

/// Names of the fixed catalog, in display order.
pub const NAMES: &[&str] = &[
    "C2",
    "C3",
    "C4",
    "C5",
    "C7",
    "C8",
    "C9",
    "V4",
    "C2^3",
    "C2^4",
    "C4xC2_S8",
    "C4xC4",
    "C3^2",
    "C6",
    "Q8",
    "D4_S4",
    "D4_S8",
    "Q16",
    "Q32",
    "D8_S8",
    "Heis27",
    "C2xQ8",
    "Q8xC3_S24",
    "C2^6",
    "S3",
];

pub fn catalog() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| lookup(n).expect("catalog names resolve")).collect()
}

/// The nilpotent part of the catalog.
pub fn nilpotent_catalog() -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| e.nilpotent).collect()
}

pub fn group(name: &str) -> Result<PermGroup> {
    lookup(name)?.group()
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let (group, description, nilpotent, expected) = match name {
        "V4" => (regular(&elementary(2, 2)), "C2 x C2, regular".into(), true, None),
        "C4xC2_S8" => (
            regular(&TableGroup::direct_product(&TableGroup::cyclic(4), &TableGroup::cyclic(2))),
            "C4 x C2, regular on 8 points".into(),
            true,
            Some(Expected { a: (1, 4), b_q: Some(3), d_opt: Some(3) }),
        ),
        "C4xC4" => (
            regular(&TableGroup::direct_product(&TableGroup::cyclic(4), &TableGroup::cyclic(4))),
            "C4 x C4, regular".into(),
            true,
            None,
        ),
        "C6" => (
            regular(&TableGroup::cyclic(6)),
            "C6, regular".into(),
            true,
            Some(Expected { a: (1, 3), b_q: Some(1), d_opt: Some(1) }),
        ),
        "Q8" => (
            regular(&quaternion(8)),
            "quaternion group, regular".into(),
            true,
            Some(Expected { a: (1, 4), b_q: Some(1), d_opt: Some(1) }),
        ),
        "Q16" | "Q32" => {
            let n: usize = name[1..].parse().map_err(|_| unknown())?;
            (
                regular(&quaternion(n)),
                format!("generalized quaternion of order {n}, regular"),
                true,
                Some(Expected { a: (1, n as i64 / 2), b_q: Some(1), d_opt: Some(1) }),
            )
        }
        "D4_S4" => (
            PermGroup::from_cycle_strings(4, &["(1,2,3,4)", "(1,3)"], DEFAULT_CAP)?,
            "dihedral group of order 8 on 4 points".into(),
            true,
            Some(Expected { a: (1, 1), b_q: Some(1), d_opt: Some(2) }),
        ),
        "D4_S8" => (
            regular(&dihedral(4)),
            "dihedral group of order 8, regular".into(),
            true,
            Some(Expected { a: (1, 4), b_q: Some(3), d_opt: Some(5) }),
        ),
        "D8_S8" => (
            PermGroup::from_cycle_strings(8, &["(1,2,3,4,5,6,7,8)", "(2,8)(3,7)(4,6)"], DEFAULT_CAP)?,
            "dihedral group of order 16 on 8 points".into(),
            true,
            None,
        ),
        "Heis27" => (regular(&heisenberg(3)), "Heisenberg group mod 3, regular".into(), true, None),
        "C2xQ8" => (
            regular(&TableGroup::direct_product(&TableGroup::cyclic(2), &quaternion(8))),
            "C2 x Q8, regular".into(),
            true,
            None,
        ),
        "Q8xC3_S24" => {
            let q8 = regular(&quaternion(8));
            let c3 = regular(&TableGroup::cyclic(3));
            (
                natural_product(&q8, &c3)?,
                "natural product of regular Q8 and C3 on 24 points".into(),
                true,
                Some(Expected { a: (1, 12), b_q: Some(1), d_opt: Some(1) }),
            )
        }
        "S3" => (
            PermGroup::from_cycle_strings(3, &["(1,2,3)", "(1,2)"], DEFAULT_CAP)?,
            "symmetric group on 3 points".into(),
            false,
            Some(Expected { a: (1, 1), b_q: Some(1), d_opt: None }),
        ),
        _ => return parametric(name).ok_or_else(unknown)?,
    };
    Ok(entry(name, description, &group, nilpotent, expected))
}

fn entry(name: &str, description: String, g: &PermGroup, nilpotent: bool, expected: Option<Expected>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        description,
        degree: g.degree(),
        order: g.order(),
        generators: g.permutation_generators().iter().map(ToString::to_string).collect(),
        nilpotent,
        expected,
    }
}

fn parametric(name: &str) -> Option<Result<CatalogEntry>> {
    if let Some(rest) = name.strip_prefix('C') {
        if let Some((p, k)) = rest.split_once('^') {
            let p: usize = p.parse().ok()?;
            let k: u32 = k.parse().ok()?;
            if !is_prime(p as u64) || k == 0 || p.pow(k) > 4096 {
                return None;
            }
            let g = regular(&elementary(p, k));
            let m = p.pow(k) as u64 - 1;
            let expected = Expected {
                a: (1, (p.pow(k) - p.pow(k - 1)) as i64),
                b_q: Some(m / (p as u64 - 1).max(1)),
                d_opt: Some(m),
            };
            return Some(Ok(entry(name, format!("C{p}^{k}, regular"), &g, true, Some(expected))));
        }
        let n: usize = rest.parse().ok()?;
        if !(2..=4096).contains(&n) {
            return None;
        }
        let gens = [format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","))];
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        let g = match PermGroup::from_cycle_strings(n, &gens, n) {
            Ok(g) => g,
            Err(e) => return Some(Err(e)),
        };
        return Some(Ok(entry(name, format!("C{n}, regular"), &g, true, None)));
    }
    if let Some(rest) = name.strip_prefix('Q') {
        let n: usize = rest.parse().ok()?;
        if !(8..=1024).contains(&n) || exact_log(n as u64, 2).is_none() {
            return None;
        }
        let g = regular(&quaternion(n));
        let expected = Expected { a: (1, n as i64 / 2), b_q: Some(1), d_opt: Some(1) };
        return Some(Ok(entry(
            name,
            format!("generalized quaternion of order {n}, regular"),
            &g,
            true,
            Some(expected),
        )));
    }
    None
}

fn regular(t: &TableGroup) -> PermGroup {
    PermGroup::regular(t).expect("regular representation of a valid table")
}

/// `(C_p)^k` as a table; element ids are base-p digit vectors.
pub fn elementary(p: usize, k: u32) -> TableGroup {
    let mut g = TableGroup::cyclic(p);
    for _ in 1..k {
        g = TableGroup::direct_product(&g, &TableGroup::cyclic(p));
    }
    g
}

/// Generalized quaternion group of order `order = 4n`:
/// `⟨x, y | x^{2n} = y^4 = 1, x^n = y^2, y⁻¹xy = x⁻¹⟩`, element `x^i y^j` at `i + 2n·j`.
pub fn quaternion(order: usize) -> TableGroup {
    let m = order / 2; // order of x
    let n = m / 2;
    TableGroup::from_fn(order, vec![1, m], move |a, b| {
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        if j == 0 {
            (i + k) % m + m * l
        } else if l == 0 {
            // x^i y x^k = x^{i-k} y
            (i + m - k) % m + m
        } else {
            // x^i y x^k y = x^{i-k} y² = x^{i-k+n}
            (i + m - k + n) % m
        }
    })
}

/// Dihedral group of order `2n`: rotation `r^i` at `i`, reflection `r^i s` at `n + i`.
pub fn dihedral(n: usize) -> TableGroup {
    TableGroup::from_fn(2 * n, vec![1, n], move |a, b| {
        let (i, s) = (a % n, a / n);
        let (k, t) = (b % n, b / n);
        let rot = if s == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((s + t) % 2)
    })
}

/// Upper unitriangular 3×3 matrices over `F_p`, `(a, b, c)` at `a + p·b + p²·c`.
pub fn heisenberg(p: usize) -> TableGroup {
    TableGroup::from_fn(p * p * p, vec![1, p], move |x, y| {
        let (a1, b1, c1) = (x % p, (x / p) % p, x / (p * p));
        let (a2, b2, c2) = (y % p, (y / p) % p, y / (p * p));
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        let c = (c1 + c2 + a1 * b2) % p;
        a + p * b + p * p * c
    })
}
