//! Quadratic and cyclic degree-`ℓ` fields over ℚ by discriminant.

use serde::Serialize;

use crate::dirichlet::sieve::{for_each_coefficient, iroot};
use crate::dirichlet::{coefficient_sieve, FactorSpec};
use crate::error::{Error, Result};
use crate::util::is_prime;

/// One field over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldRecord {
    /// Catalog name of the Galois group.
    pub group: String,
    /// `|disc(K)|`.
    pub discriminant: u64,
    pub conductor: u64,
    /// Distinguishes fields sharing a discriminant: the quadratic discriminants
    /// for `C₂` and `V₄`, local character exponents for `C_ℓ`.
    pub key: Vec<i64>,
    /// Products of the primes first ramified at each layer of the chain.
    pub ramified_tuple: Vec<u64>,
}

impl FieldRecord {
    /// Whether `v_p(disc) = expected` at every ramified `p ≠ wild`.
    pub fn tame_valuations_are(&self, wild: u64, expected: u32) -> bool {
        crate::util::factorize(self.discriminant).iter().filter(|&&(p, _)| p != wild).all(|&(_, e)| e == expected)
    }
}

/// Whether `d` is the discriminant of a quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    quadratic_discriminant(d) == Some(d)
}

/// Discriminant of `ℚ(√n)`, or `None` when `n` is a square.
pub fn quadratic_discriminant(n: i64) -> Option<i64> {
    if n == 0 {
        return None;
    }
    let mut core = 1i64;
    for (p, e) in crate::util::factorize(n.unsigned_abs()) {
        if e % 2 == 1 {
            core *= p as i64;
        }
    }
    if n < 0 {
        core = -core;
    }
    if core == 1 {
        return None;
    }
    Some(if core.rem_euclid(4) == 1 { core } else { 4 * core })
}

/// Pushes the discriminants attached to a squarefree `n`: `n ≡ 1 mod 4`
/// gives `n, −4n`; `n ≡ 3` gives `−n, 4n`; `n ≡ 2` gives `±4n`.
fn discriminants_of(n: u64, x: u64, out: &mut Vec<i64>) {
    let s = n as i64;
    match n % 4 {
        1 => {
            if n > 1 && n <= x {
                out.push(s);
            }
            if 4 * n <= x {
                out.push(-4 * s);
            }
        }
        3 => {
            if n <= x {
                out.push(-s);
            }
            if 4 * n <= x {
                out.push(4 * s);
            }
        }
        2 if 4 * n <= x => {
            out.push(4 * s);
            out.push(-4 * s);
        }
        _ => {}
    }
}

/// All quadratic fields with `|d| ≤ x`, sorted by `(|d|, d)`.
pub fn enumerate_quadratic(x: u64) -> Result<Vec<FieldRecord>> {
    let squarefree = coefficient_sieve(&FactorSpec::new(2, 1, 1)?, x)?;
    let mut discs = Vec::new();
    for (n, &c) in squarefree.iter().enumerate().skip(1) {
        if c != 0 {
            discriminants_of(n as u64, x, &mut discs);
        }
    }
    discs.sort_by_key(|&d| (d.unsigned_abs(), d));
    Ok(discs.into_iter().map(quadratic_record).collect())
}

fn quadratic_record(d: i64) -> FieldRecord {
    let a = d.unsigned_abs();
    FieldRecord {
        group: "C2".into(),
        discriminant: a,
        conductor: a,
        key: vec![d],
        ramified_tuple: vec![crate::util::radical(a)],
    }
}

/// `Z(ℚ, C₂; x)` at each checkpoint, streamed through one squarefree sieve.
///
/// Uses `Z(x) = A(x) − 1 + A(x/4) + 2B(x/4)` with `A` counting odd and `B`
/// counting `2 mod 4` squarefree integers.
pub fn count_quadratic(checkpoints: &[u64]) -> Vec<u64> {
    let mut queries: Vec<u64> = checkpoints.iter().flat_map(|&x| [x, x / 4]).collect();
    queries.sort_unstable();
    queries.dedup();
    let mut at = Vec::with_capacity(queries.len());
    let (mut a, mut b) = (0u64, 0u64);
    let mut next = 0;
    while next < queries.len() && queries[next] == 0 {
        at.push((0, 0));
        next += 1;
    }
    let spec = FactorSpec { ell: 2, d: 1, m: 1 };
    for_each_coefficient(&spec, queries.last().copied().unwrap_or(0), |n, c| {
        if c != 0 {
            match n % 4 {
                1 | 3 => a += 1,
                2 => b += 1,
                _ => {}
            }
        }
        while next < queries.len() && queries[next] == n {
            at.push((a, b));
            next += 1;
        }
    });
    let lookup = |y: u64| at[queries.binary_search(&y).expect("queried")];
    checkpoints
        .iter()
        .map(|&x| {
            let (ax, _) = lookup(x);
            let (aq, bq) = lookup(x / 4);
            (ax + aq + 2 * bq).saturating_sub(1)
        })
        .collect()
}

/// A conductor of cyclic degree-`ℓ` fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conductor {
    pub f: u64,
    pub primes: Vec<u64>,
    /// `(ℓ−1)^{ω₁+w−1}` fields share this conductor.
    pub fields: u64,
}

fn smallest_factors(n: u64) -> Vec<u32> {
    let mut spf = vec![0u32; n as usize + 1];
    for i in 2..=n as usize {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n as usize {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn check_odd(ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if ell == 2 {
        return Err(Error::PropertyViolated("cyclic enumeration needs an odd prime".into()));
    }
    Ok(())
}

/// Conductors `f ≤ f_max`: `f = (ℓ²)^w·∏pᵢ` with distinct `pᵢ ≡ 1 mod ℓ`.
pub fn cyclic_conductors(ell: u64, f_max: u64) -> Result<Vec<Conductor>> {
    check_odd(ell)?;
    let spf = smallest_factors(f_max);
    let mut out = Vec::new();
    'f: for f in 2..=f_max {
        let mut n = f;
        let mut primes = Vec::new();
        while n > 1 {
            let p = spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            let ok = if p == ell { e == 2 } else { e == 1 && p % ell == 1 };
            if !ok {
                continue 'f;
            }
            primes.push(p);
        }
        let fields = (ell - 1).pow(primes.len() as u32 - 1);
        out.push(Conductor { f, primes, fields });
    }
    Ok(out)
}

/// All cyclic degree-`ℓ` fields with `disc = f^{ℓ−1} ≤ x`, sorted by discriminant then key.
pub fn enumerate_cyclic_ell(ell: u64, x: u64) -> Result<Vec<FieldRecord>> {
    check_odd(ell)?;
    let mut out = Vec::new();
    for c in cyclic_conductors(ell, iroot(x, ell as u32 - 1))? {
        let disc = c.f.pow(ell as u32 - 1);
        let rad: u64 = c.primes.iter().product();
        // first local exponent normalized to 1, the rest free in 1..ℓ
        let k = c.primes.len();
        for idx in 0..c.fields {
            let mut key = vec![1i64; k];
            let mut r = idx;
            for slot in key.iter_mut().skip(1) {
                *slot = (r % (ell - 1)) as i64 + 1;
                r /= ell - 1;
            }
            out.push(FieldRecord {
                group: format!("C{ell}"),
                discriminant: disc,
                conductor: c.f,
                key,
                ramified_tuple: vec![rad],
            });
        }
    }
    Ok(out)
}

/// `Z(ℚ, C_ℓ; x)` at each checkpoint.
pub fn count_cyclic_ell(ell: u64, checkpoints: &[u64]) -> Result<Vec<u64>> {
    check_odd(ell)?;
    let x_max = checkpoints.iter().copied().max().unwrap_or(0);
    let conductors = cyclic_conductors(ell, iroot(x_max, ell as u32 - 1))?;
    Ok(checkpoints
        .iter()
        .map(|&x| {
            let f_max = iroot(x, ell as u32 - 1);
            conductors.iter().take_while(|c| c.f <= f_max).map(|c| c.fields).sum()
        })
        .collect())
}

/// CSV with columns `discriminant,conductor,key,tuple`; list entries are `;`-joined.
pub fn write_records_csv<W: std::io::Write>(records: &[FieldRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Output(e.to_string());
    w.write_record(["group", "discriminant", "conductor", "key", "tuple"]).map_err(err)?;
    let join = |v: &[String]| v.join(";");
    for r in records {
        let key: Vec<String> = r.key.iter().map(ToString::to_string).collect();
        let tuple: Vec<String> = r.ramified_tuple.iter().map(ToString::to_string).collect();
        w.write_record([
            r.group.clone(),
            r.discriminant.to_string(),
            r.conductor.to_string(),
            join(&key),
            join(&tuple),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))
}

/// CSV with columns `x,Z(x),Z(x)/x^alpha`.
pub fn write_counts_csv<W: std::io::Write>(checkpoints: &[u64], counts: &[u64], alpha: f64, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Output(e.to_string());
    w.write_record(["x", "Z(x)", "Z(x)/x^alpha"]).map_err(err)?;
    for (&x, &c) in checkpoints.iter().zip(counts) {
        let norm = c as f64 / (x as f64).powf(alpha);
        w.write_record([x.to_string(), c.to_string(), format!("{norm:.8}")]).map_err(err)?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))
}
