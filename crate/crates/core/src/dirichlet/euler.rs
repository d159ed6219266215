//! Exact Euler-factor algebra.
//!
//! The factor identity `(1+mt)(1−t)^m = 1 − C(m+1,2)t² + ⋯` is checked with
//! big integers. The decomposition `f = g·g₀·ζ_K(ds)^e·∏_{P∉Ũ₁}(1−N(P)^{−ds})^e`
//! with `K = ℚ(ζ_ℓ)` and `e = m/(ℓ−1)` is checked after raising both sides to
//! the power `ℓ−1`, which makes every exponent an integer.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::sieve::{coefficient_sieve, iroot};
use super::FactorSpec;
use crate::error::{Error, Result};
use crate::util::{mult_order, primes_up_to};

#[derive(Clone, Debug, Serialize)]
pub struct FactorIdentity {
    pub m: u64,
    /// Coefficients of `(1+mt)(1−t)^m`, constant term first.
    pub coefficients: Vec<String>,
    pub constant_is_one: bool,
    pub linear_is_zero: bool,
    pub quadratic_matches: bool,
    pub degree_matches: bool,
    /// `(−1)^m·m`.
    pub leading_matches: bool,
    /// Multiplying back by `(1−t)^{−m}` to `N` terms returns `1 + mt`.
    pub inverse_matches: bool,
}

impl FactorIdentity {
    pub fn passed(&self) -> bool {
        self.constant_is_one
            && self.linear_is_zero
            && self.quadratic_matches
            && self.degree_matches
            && self.leading_matches
            && self.inverse_matches
    }
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 − t)^k` for `k ≥ 0`.
fn one_minus_t_pow(k: u64) -> Vec<BigInt> {
    (0..=k)
        .map(|j| {
            let c = binomial(BigInt::from(k), BigInt::from(j));
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// `(1+mt)(1−t)^m`.
pub fn factor_poly(m: u64) -> Vec<BigInt> {
    poly_mul(&[BigInt::one(), BigInt::from(m)], &one_minus_t_pow(m))
}

pub fn factor_identity_check(m: u64, n_terms: usize) -> FactorIdentity {
    let p = factor_poly(m);
    let at = |i: usize| p.get(i).cloned().unwrap_or_default();
    let expected_t2 = -binomial(BigInt::from(m + 1), BigInt::from(2u32));
    let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let degree = p.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    // (1−t)^{−m} = Σ C(m+j−1, j) t^j
    let n = n_terms.max(m as usize + 2);
    let back = poly_mul(&p, &inverse_power(m, n));
    let inverse_matches = back[0].is_one() && back[1] == BigInt::from(m) && back[2..n].iter().all(Zero::is_zero);
    FactorIdentity {
        m,
        coefficients: p.iter().map(ToString::to_string).collect(),
        constant_is_one: at(0).is_one(),
        linear_is_zero: at(1).is_zero(),
        quadratic_matches: at(2) == expected_t2,
        degree_matches: degree as u64 == m + 1,
        leading_matches: at(degree) == sign * BigInt::from(m),
        inverse_matches,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DecompositionReport {
    pub spec: FactorSpec,
    pub terms: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<u64>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

type Series = Vec<i128>;

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or_else(|| Error::VerificationFailed("coefficient overflow in Euler algebra".into()))
}

fn convolve(a: &Series, b: &Series) -> Result<Series> {
    let n = a.len() - 1;
    let mut out = vec![0i128; n + 1];
    for i in 1..=n {
        if a[i] == 0 {
            continue;
        }
        for j in 1..=n / i {
            if b[j] != 0 {
                out[i * j] = checked(out[i * j].checked_add(checked(a[i].checked_mul(b[j]))?))?;
            }
        }
    }
    Ok(out)
}

fn power(a: &Series, k: u64) -> Result<Series> {
    let mut acc = vec![0i128; a.len()];
    acc[1] = 1;
    for _ in 0..k {
        acc = convolve(&acc, a)?;
    }
    Ok(acc)
}

/// Multiplies `s` by the local factor `Σ_k poly[k]·q^{−ks}` (only `q`-power terms).
fn apply_local(s: &mut Series, q: u64, poly: &[BigInt]) -> Result<()> {
    let n = (s.len() - 1) as u64;
    let mut qk = vec![1u64];
    while let Some(next) = qk.last().expect("nonempty").checked_mul(q).filter(|&v| v <= n) {
        qk.push(next);
    }
    let coeffs: Vec<i128> = (0..qk.len())
        .map(|k| {
            poly.get(k).map_or(Ok(0), |c| {
                i128::try_from(c).map_err(|_| Error::VerificationFailed("local factor overflow".into()))
            })
        })
        .collect::<Result<_>>()?;
    for idx in (1..=n).rev() {
        let mut acc = 0i128;
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if idx % qk[k] != 0 {
                break;
            }
            let src = s[(idx / qk[k]) as usize];
            acc = checked(acc.checked_add(checked(c.checked_mul(src))?))?;
        }
        s[idx as usize] = acc;
    }
    Ok(())
}

fn truncate(mut p: Vec<BigInt>, len: usize) -> Vec<BigInt> {
    p.truncate(len);
    p
}

/// `(1 − t)^{−k}` to `len` terms.
fn inverse_power(k: u64, len: usize) -> Vec<BigInt> {
    (0..len).map(|j| binomial(BigInt::from(k + j as u64) - 1, BigInt::from(j))).collect()
}

/// `(1 − t^f)^k` to `len` terms.
fn one_minus_tf_pow(f: usize, k: u64, len: usize) -> Vec<BigInt> {
    let base = one_minus_t_pow(k);
    let mut out = vec![BigInt::zero(); len];
    for (j, c) in base.into_iter().enumerate() {
        if j * f < len {
            out[j * f] = c;
        }
    }
    out
}

/// Number of ideals of norm `p^k` in `ℚ(ζ_ℓ)`.
fn ideal_count(ell: u64, p: u64, k: u32) -> i128 {
    if p == ell || ell == 2 {
        return 1;
    }
    let f = mult_order(p % ell, ell) as u32;
    let g = (ell - 1) as u32 / f;
    if k % f != 0 {
        return 0;
    }
    let j = k / f;
    binomial(BigInt::from(g + j - 1), BigInt::from(j)).try_into().expect("small binomial")
}

/// Compares `f^{ℓ−1}` with the product decomposition coefficient by coefficient up to `terms`.
pub fn decomposition_check(spec: &FactorSpec, terms: u64) -> Result<DecompositionReport> {
    let c = coefficient_sieve(spec, iroot(terms, spec.d))?;
    compare(spec, terms, &c)
}

/// The decomposition check against given sieve coefficients `c[a]`, `a ≤ terms^{1/d}`.
fn compare(spec: &FactorSpec, terms: u64, c: &[u64]) -> Result<DecompositionReport> {
    let (ell, d, m) = (spec.ell, spec.d, spec.m);
    let n = terms as usize;
    let root = iroot(terms, d);
    let primes = primes_up_to(root.max(2));

    let mut f = vec![0i128; n + 1];
    for a in 1..=root {
        f[a.pow(d) as usize] = c[a as usize] as i128;
    }
    let lhs = power(&f, ell - 1)?;

    // ζ_K(ds) from ideal counts, multiplicatively
    let mut zeta = vec![0i128; n + 1];
    zeta[1] = 1;
    for &p in primes.iter().filter(|&&p| p <= root) {
        let q = p.pow(d);
        let mut local = vec![BigInt::one()];
        let mut k = 1u32;
        while q.checked_pow(k).is_some_and(|v| v <= terms) {
            local.push(BigInt::from(ideal_count(ell, p, k)));
            k += 1;
        }
        apply_local(&mut zeta, q, &local)?;
    }
    let mut rhs = power(&zeta, m)?;

    let factor = factor_poly(m);
    for &p in primes.iter().filter(|&&p| p <= root) {
        let q = p.pow(d);
        let mut len = 1usize;
        while q.checked_pow(len as u32).is_some_and(|v| v <= terms) {
            len += 1;
        }
        let mut local = vec![BigInt::one()];
        if spec.allows(p) {
            // g^{ℓ−1}
            for _ in 0..ell - 1 {
                local = truncate(poly_mul(&local, &factor), len);
            }
        }
        if p == ell {
            // g₀^{ℓ−1} and the prime above ℓ
            local = truncate(poly_mul(&local, &inverse_power(m * (ell - 1), len)), len);
            local = truncate(poly_mul(&local, &one_minus_t_pow(m)), len);
        } else if !spec.allows(p) {
            let fdeg = mult_order(p % ell, ell) as usize;
            let g = (ell - 1) / fdeg as u64;
            local = truncate(poly_mul(&local, &one_minus_tf_pow(fdeg, g * m, len)), len);
        }
        apply_local(&mut rhs, q, &local)?;
    }

    let mismatched: Vec<u64> = (1..=n).filter(|&i| lhs[i] != rhs[i]).map(|i| i as u64).collect();
    Ok(DecompositionReport {
        spec: *spec,
        terms,
        mismatches: mismatched.len() as u64,
        first_mismatch: mismatched.first().copied(),
    })
}

/// Largest absolute coefficient of `(1+mt)(1−t)^m`; used in diagnostics.
pub fn factor_height(m: u64) -> BigInt {
    factor_poly(m).into_iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_factor_polynomials() {
        assert_eq!(ints(&factor_poly(1)), vec![1, 0, -1]);
        assert_eq!(ints(&factor_poly(2)), vec![1, 0, -3, 2]);
        assert_eq!(ints(&factor_poly(5))[2], -15);
    }

    #[test]
    fn identity_holds_up_to_fifty() {
        for m in 1..=50 {
            let r = factor_identity_check(m, 64);
            assert!(r.passed(), "m = {m}: {r:?}");
        }
    }

    #[test]
    fn leading_sign_alternates() {
        // −m only for odd m
        assert_eq!(ints(&factor_poly(2)).last(), Some(&2));
        assert_eq!(ints(&factor_poly(3)).last(), Some(&-3));
        assert!(factor_height(10) > BigInt::from(10));
    }

    #[test]
    fn ideal_counts_in_cyclotomic_fields() {
        // ℚ(i): 5 splits, 3 is inert, 2 ramifies
        assert_eq!((ideal_count(2, 5, 1), ideal_count(2, 3, 1)), (1, 1));
        // ℚ(ζ_5): 11 splits into 4, 2 has f = 4, 19 has f = 2 (g = 2)
        assert_eq!(ideal_count(5, 11, 1), 4);
        assert_eq!(ideal_count(5, 11, 2), 10);
        assert_eq!((ideal_count(5, 2, 1), ideal_count(5, 2, 4)), (0, 1));
        assert_eq!((ideal_count(5, 19, 2), ideal_count(5, 19, 4)), (2, 3));
    }

    #[test]
    fn decomposition_small_cases() {
        for ell in [2u64, 3, 5] {
            for m in 1..=3 {
                for d in 1..=2 {
                    let r = decomposition_check(&FactorSpec::new(ell, d, m).unwrap(), 2000).unwrap();
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn decomposition_detects_wrong_coefficients() {
        let spec = FactorSpec::new(3, 1, 2).unwrap();
        let wrong = coefficient_sieve(&FactorSpec::new(3, 1, 3).unwrap(), 500).unwrap();
        let r = compare(&spec, 500, &wrong).unwrap();
        assert!(!r.passed());
        assert_eq!(r.first_mismatch, Some(3));
        let mut shifted = coefficient_sieve(&spec, 500).unwrap();
        shifted[5] = 2;
        assert_eq!(compare(&spec, 500, &shifted).unwrap().first_mismatch, Some(5));
    }
}
