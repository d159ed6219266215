//! Biquadratic fields and the fiber bound for the chain `E < C₂ < C₂×C₂`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::fiber_bound;
use super::fields::{is_fundamental, quadratic_discriminant, FieldRecord};
use crate::dirichlet::sieve::{iroot, isqrt};
use crate::field::BaseFieldData;
use crate::util::{prime_divisors, radical};

/// `ℚ(√d₁, √d₂)` with its three quadratic subfields ordered by `(|d|, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct V4Field {
    pub subfields: [i64; 3],
    /// `|d₁d₂d₃|`, the conductor–discriminant product.
    pub discriminant: u64,
    pub conductor: u64,
}

impl V4Field {
    /// One record per choice of the quadratic subfield `K₁` fixed by the middle
    /// group of the chain; the tuple is `(a₁, a₂)` with `a₁` the primes ramified
    /// in `K₁` and `a₂` those ramified only in `K`.
    pub fn records(&self) -> Vec<FieldRecord> {
        let all = radical(self.discriminant);
        self.subfields
            .iter()
            .map(|&d| {
                let a1 = radical(d.unsigned_abs());
                let mut key = self.subfields.to_vec();
                key.push(d);
                FieldRecord {
                    group: "C2xC2".into(),
                    discriminant: self.discriminant,
                    conductor: self.conductor,
                    key,
                    ramified_tuple: vec![a1, all / a1],
                }
            })
            .collect()
    }
}

fn order_key(d: i64) -> (u64, i64) {
    (d.unsigned_abs(), d)
}

/// All biquadratic fields with `|disc| ≤ x`, sorted by discriminant then subfields.
pub fn enumerate_v4(x: u64) -> Vec<V4Field> {
    // |d₁| ≤ |d₂| ≤ |d₃| forces |d₁| ≤ x^{1/3} and |d₂| ≤ (x/3)^{1/2}
    let d1_max = iroot(x, 3) as i64;
    let d2_max = isqrt(x / 3) as i64;
    let discs: Vec<i64> = (-d2_max..=d2_max).filter(|&d| is_fundamental(d)).collect();
    let mut out = Vec::new();
    for &d1 in discs.iter().filter(|d| d.abs() <= d1_max) {
        for &d2 in &discs {
            if order_key(d2) <= order_key(d1) {
                continue;
            }
            let d3 = quadratic_discriminant(d1 * d2).expect("distinct fields");
            if order_key(d3) <= order_key(d2) {
                continue;
            }
            let disc = d1.unsigned_abs() as u128 * d2.unsigned_abs() as u128 * d3.unsigned_abs() as u128;
            if disc <= x as u128 {
                let (a, b) = (d1.unsigned_abs(), d2.unsigned_abs());
                out.push(V4Field {
                    subfields: [d1, d2, d3],
                    discriminant: disc as u64,
                    conductor: num_integer::lcm(a, b),
                });
            }
        }
    }
    out.sort_by_key(|f| (f.discriminant, f.subfields.map(order_key)));
    out
}

/// One over-full fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberViolation {
    pub tuple: Vec<u64>,
    pub size: u64,
    pub bound: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub x: u64,
    pub fields: usize,
    /// `(K, K₁)` pairs, three per field.
    pub pairs: usize,
    pub fibers: usize,
    pub largest_fiber: u64,
    /// Largest `size / tight bound` over all fibers.
    pub max_fill: f64,
    pub smallest_discriminant: Option<u64>,
    pub violations: Vec<FiberViolation>,
    pub loose_violations: usize,
    /// Fields with `v_p(disc) ≠ 2` at some odd `p`.
    pub tame_failures: Vec<[i64; 3]>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.loose_violations == 0 && self.tame_failures.is_empty()
    }
}

/// Groups all `(K, K₁)` pairs with `|disc K| ≤ x` by `(a₁, a₂)` and compares
/// each fiber with the bound `2^{b₁}·2^{b₂}`.
pub fn v4_fiber_check(x: u64) -> FiberReport {
    let fields = enumerate_v4(x);
    let q = BaseFieldData::rationals();
    let mut fibers: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut tame_failures = Vec::new();
    let mut pairs = 0;
    for f in &fields {
        let records = f.records();
        if !records[0].tame_valuations_are(2, 2) {
            tame_failures.push(f.subfields);
        }
        for r in records {
            *fibers.entry(r.ramified_tuple).or_default() += 1;
            pairs += 1;
        }
    }
    let mut violations = Vec::new();
    let mut loose_violations = 0;
    let mut max_fill = 0f64;
    for (tuple, &size) in &fibers {
        let bound = fiber_bound(&q, &[2, 2], tuple);
        max_fill = max_fill.max(size as f64 / bound.tight as f64);
        if size as u128 > bound.tight {
            violations.push(FiberViolation { tuple: tuple.clone(), size, bound: bound.tight });
        }
        if size as u128 > bound.loose {
            loose_violations += 1;
        }
    }
    FiberReport {
        x,
        fields: fields.len(),
        pairs,
        fibers: fibers.len(),
        largest_fiber: fibers.values().copied().max().unwrap_or(0),
        max_fill,
        smallest_discriminant: fields.first().map(|f| f.discriminant),
        violations,
        loose_violations,
        tame_failures,
    }
}

/// Number of distinct primes of a squarefree tuple entry.
pub(crate) fn omega(a: u64) -> usize {
    prime_divisors(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Every pair of distinct quadratic fields, closed under the third subfield.
    fn brute(x: u64) -> BTreeSet<(u64, [i64; 3])> {
        let discs: Vec<i64> = (-(x as i64)..=x as i64).filter(|&d| is_fundamental(d)).collect();
        let mut out = BTreeSet::new();
        for (i, &a) in discs.iter().enumerate() {
            for &b in &discs[i + 1..] {
                // the third discriminant has absolute value at least 3
                if a.unsigned_abs() * b.unsigned_abs() * 3 > x {
                    continue;
                }
                let c = quadratic_discriminant(a * b).unwrap();
                let mut t = [a, b, c];
                t.sort_by_key(|&d| order_key(d));
                let disc = a.unsigned_abs() as u128 * b.unsigned_abs() as u128 * c.unsigned_abs() as u128;
                if disc <= x as u128 {
                    out.insert((disc as u64, t));
                }
            }
        }
        out
    }

    #[test]
    fn smallest_biquadratic_fields() {
        let f = enumerate_v4(441);
        let discs: Vec<u64> = f.iter().map(|f| f.discriminant).collect();
        assert_eq!(discs, vec![144, 225, 256, 400, 441]);
        assert_eq!(f[0].subfields, [-3, -4, 12]);
        assert_eq!(f[2].subfields, [-4, -8, 8]);
        assert!(enumerate_v4(143).is_empty());
    }

    #[test]
    fn enumeration_matches_all_pairs() {
        let x = 20_000;
        let got: BTreeSet<(u64, [i64; 3])> =
            enumerate_v4(x).into_iter().map(|f| (f.discriminant, f.subfields)).collect();
        assert_eq!(got, brute(x));
    }

    #[test]
    fn tuples_partition_ramification() {
        for f in enumerate_v4(50_000) {
            for r in f.records() {
                let [a1, a2] = r.ramified_tuple[..] else { panic!() };
                assert_eq!(num_integer::gcd(a1, a2), 1);
                assert_eq!(a1 * a2, radical(f.discriminant));
                assert!(a1 > 1);
            }
        }
    }

    #[test]
    fn fiber_check_small() {
        let r = v4_fiber_check(100_000);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.pairs, 3 * r.fields);
        assert_eq!(r.smallest_discriminant, Some(144));
        assert!(r.max_fill <= 1.0);
    }
}
