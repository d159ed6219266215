//! Coefficient sieves and partial sums of restricted Euler products.

use super::{predicted, FactorSpec, SumSeries};
use crate::error::{Error, Result};
use crate::util::primes_up_to;

/// Default cap on array entries for array-based convolution (`2^24`).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

const SEGMENT: u64 = 1 << 16;

/// `c[n] = m^{ω(n)}` for squarefree `n` supported on `p ≡ 0, 1 mod ℓ`, else `0`; index 0 unused.
pub fn coefficient_sieve(spec: &FactorSpec, x: u64) -> Result<Vec<u64>> {
    coefficient_sieve_with_budget(spec, x, DEFAULT_BUDGET)
}

pub fn coefficient_sieve_with_budget(spec: &FactorSpec, x: u64, budget: u64) -> Result<Vec<u64>> {
    if x > budget {
        return Err(Error::BudgetExceeded { requested: x, budget });
    }
    let mut out = Vec::with_capacity(x as usize + 1);
    out.push(0);
    for_each_coefficient(spec, x, |_, c| out.push(c));
    Ok(out)
}

/// Streams `(n, c[n])` for `n = 1..=limit` with a segmented sieve.
pub fn for_each_coefficient(spec: &FactorSpec, limit: u64, mut f: impl FnMut(u64, u64)) {
    if limit == 0 {
        return;
    }
    let primes = primes_up_to(isqrt(limit) + 1);
    let mut rem = vec![0u64; SEGMENT as usize];
    let mut val = vec![0u64; SEGMENT as usize];
    let mut lo = 1u64;
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        for i in 0..len {
            rem[i] = lo + i as u64;
            val[i] = 1;
        }
        for &p in &primes {
            if p * p > hi {
                break;
            }
            let start = lo.div_ceil(p) * p;
            if spec.allows(p) {
                let mut n = start;
                while n <= hi {
                    let i = (n - lo) as usize;
                    rem[i] /= p;
                    val[i] *= spec.m;
                    n += p;
                }
            } else {
                let mut n = start;
                while n <= hi {
                    val[(n - lo) as usize] = 0;
                    n += p;
                }
            }
            let q = p * p;
            let mut n = lo.div_ceil(q) * q;
            while n <= hi {
                val[(n - lo) as usize] = 0;
                n += q;
            }
        }
        for i in 0..len {
            let mut c = val[i];
            if c != 0 && rem[i] > 1 {
                // a single prime above the square root remains
                c = if spec.allows(rem[i]) { c * spec.m } else { 0 };
            }
            f(lo + i as u64, c);
        }
        lo = hi + 1;
    }
}

pub fn isqrt(n: u64) -> u64 {
    iroot(n, 2)
}

/// `⌊n^{1/k}⌋`.
pub fn iroot(n: u64, k: u32) -> u64 {
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u64;
    while r > 0 && pow_exceeds(r, k, n) {
        r -= 1;
    }
    while !pow_exceeds(r + 1, k, n) {
        r += 1;
    }
    r
}

fn pow_exceeds(r: u64, k: u32, n: u64) -> bool {
    match r.checked_pow(k) {
        Some(v) => v > n,
        None => true,
    }
}

/// `S(x) = Σ m₁^{ω(a₁)}⋯m_r^{ω(a_r)}` over tuples with `∏ aᵢ^{dᵢ} ≤ x`, at each checkpoint.
pub fn multi_factor_sum(specs: &[FactorSpec], checkpoints: &[u64]) -> Result<SumSeries> {
    multi_factor_sum_with_budget(specs, checkpoints, DEFAULT_BUDGET)
}

/// As [`multi_factor_sum`]; a single factor streams without a memory bound,
/// several factors are convolved in arrays of at most `budget` entries.
pub fn multi_factor_sum_with_budget(specs: &[FactorSpec], checkpoints: &[u64], budget: u64) -> Result<SumSeries> {
    if specs.is_empty() {
        return Err(Error::InsufficientData("no factor specs".into()));
    }
    let mut checkpoints = checkpoints.to_vec();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let x_max = checkpoints.last().copied().unwrap_or(0);
    let values = if specs.len() == 1 {
        single_sums(&specs[0], &checkpoints)
    } else {
        if x_max > budget {
            return Err(Error::BudgetExceeded { requested: x_max, budget });
        }
        let mut acc = reindexed(&specs[0], x_max, budget)?;
        for s in &specs[1..] {
            acc = convolve(&acc, &reindexed(s, x_max, budget)?);
        }
        prefix_at(&acc, &checkpoints)
    };
    let (alpha, beta) = predicted(specs);
    Ok(SumSeries { specs: specs.to_vec(), checkpoints, values, alpha, beta })
}

fn single_sums(spec: &FactorSpec, checkpoints: &[u64]) -> Vec<u128> {
    let roots: Vec<u64> = checkpoints.iter().map(|&x| iroot(x, spec.d)).collect();
    let limit = roots.last().copied().unwrap_or(0);
    let mut values = Vec::with_capacity(roots.len());
    let mut next = 0;
    let mut sum = 0u128;
    while next < roots.len() && roots[next] == 0 {
        values.push(0);
        next += 1;
    }
    for_each_coefficient(spec, limit, |n, c| {
        sum += c as u128;
        while next < roots.len() && roots[next] == n {
            values.push(sum);
            next += 1;
        }
    });
    values
}

/// `h[a^d] = c[a]`, zero elsewhere, up to `x`.
fn reindexed(spec: &FactorSpec, x: u64, budget: u64) -> Result<Vec<u64>> {
    let root = iroot(x, spec.d);
    let c = coefficient_sieve_with_budget(spec, root, budget)?;
    let mut h = vec![0u64; x as usize + 1];
    for (a, &v) in c.iter().enumerate().skip(1) {
        h[(a as u64).pow(spec.d) as usize] = v;
    }
    Ok(h)
}

/// Dirichlet convolution truncated to the length of `a`.
fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len() - 1;
    let mut out = vec![0u64; n + 1];
    for i in 1..=n {
        if a[i] == 0 {
            continue;
        }
        for j in 1..=n / i {
            if b[j] != 0 {
                out[i * j] += a[i] * b[j];
            }
        }
    }
    out
}

fn prefix_at(h: &[u64], checkpoints: &[u64]) -> Vec<u128> {
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut sum = 0u128;
    let mut next = 0;
    for (n, &v) in h.iter().enumerate() {
        sum += v as u128;
        while next < checkpoints.len() && checkpoints[next] == n as u64 {
            values.push(sum);
            next += 1;
        }
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::factorize;
    use proptest::prelude::*;

    fn spec(ell: u64, d: u32, m: u64) -> FactorSpec {
        FactorSpec::new(ell, d, m).unwrap()
    }

    fn oracle(s: &FactorSpec, n: u64) -> u64 {
        let f = factorize(n);
        if f.iter().any(|&(p, e)| e > 1 || !s.allows(p)) {
            0
        } else {
            s.m.pow(f.len() as u32)
        }
    }

    #[test]
    fn squarefree_indicator() {
        let c = coefficient_sieve(&spec(2, 1, 1), 10).unwrap();
        assert_eq!(c[1..].iter().sum::<u64>(), 7);
        assert_eq!(&c[1..], &[1, 1, 1, 0, 1, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn congruence_support() {
        let c = coefficient_sieve(&spec(3, 1, 1), 30).unwrap();
        assert_eq!((c[1], c[7], c[5], c[21], c[3], c[9]), (1, 1, 0, 1, 1, 0));
    }

    #[test]
    fn sieve_matches_factorization_across_segments() {
        let s = spec(5, 1, 3);
        let c = coefficient_sieve(&s, 200_000).unwrap();
        for n in (1..=200_000u64).step_by(97).chain(65_530..65_545) {
            assert_eq!(c[n as usize], oracle(&s, n), "n = {n}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = spec(2, 1, 1);
        assert_eq!(
            coefficient_sieve_with_budget(&s, 1000, 100).unwrap_err(),
            Error::BudgetExceeded { requested: 1000, budget: 100 }
        );
        let specs = [s, s];
        assert!(multi_factor_sum_with_budget(&specs, &[1000], 100).is_err());
        assert!(multi_factor_sum_with_budget(&[s], &[1000], 100).is_ok());
    }

    #[test]
    fn single_sum_counts_squarefree() {
        let s = multi_factor_sum(&[spec(2, 1, 1)], &[10, 100]).unwrap();
        assert_eq!(s.values, vec![7, 61]);
    }

    #[test]
    fn two_factor_sum_matches_double_loop() {
        let specs = [spec(2, 1, 1), spec(2, 2, 1)];
        let xs = [1u64, 10, 100, 1000, 10_000];
        let s = multi_factor_sum(&specs, &xs).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            let mut brute = 0u128;
            for a2 in 1..=isqrt(x) {
                for a1 in 1..=x / (a2 * a2) {
                    brute += (oracle(&specs[0], a1) * oracle(&specs[1], a2)) as u128;
                }
            }
            assert_eq!(s.values[i], brute, "x = {x}");
        }
        assert!(s.values[0] >= 1);
    }

    #[test]
    fn three_factor_sum_matches_triple_loop() {
        let specs = [spec(3, 1, 2), spec(5, 2, 3), spec(2, 3, 1)];
        let x = 5000u64;
        let s = multi_factor_sum(&specs, &[x]).unwrap();
        let mut brute = 0u128;
        for a3 in 1..=iroot(x, 3) {
            for a2 in 1..=isqrt(x / a3.pow(3)) {
                for a1 in 1..=x / (a3.pow(3) * a2 * a2) {
                    brute += (oracle(&specs[0], a1) * oracle(&specs[1], a2) * oracle(&specs[2], a3)) as u128;
                }
            }
        }
        assert_eq!(s.values[0], brute);
    }

    #[test]
    fn integer_roots() {
        assert_eq!(iroot(1_000_000, 2), 1000);
        assert_eq!(iroot(999_999, 2), 999);
        assert_eq!(iroot(1_000_000_000, 3), 1000);
        assert_eq!(iroot(u64::MAX, 2), 4_294_967_295);
    }

    proptest! {
        #[test]
        fn sums_are_monotone(ell in prop::sample::select(vec![2u64, 3, 5, 7]), d in 1u32..4, m in 1u64..5) {
            let s = spec(ell, d, m);
            let xs: Vec<u64> = (1..40).map(|k| k * 250).collect();
            let series = multi_factor_sum(&[s], &xs).unwrap();
            prop_assert!(series.values.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(series.values[0] >= 1);
        }

        #[test]
        fn streaming_agrees_with_array(ell in prop::sample::select(vec![2u64, 3, 5]), m in 1u64..4, x in 1u64..20_000) {
            let s = spec(ell, 1, m);
            let c = coefficient_sieve(&s, x).unwrap();
            let total: u128 = c.iter().map(|&v| v as u128).sum();
            prop_assert_eq!(multi_factor_sum(&[s], &[x]).unwrap().values[0], total);
        }
    }
}
