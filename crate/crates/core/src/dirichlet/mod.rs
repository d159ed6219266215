//! Restricted Euler products over ℚ: exact coefficient sieves, partial sums
//! and slope estimates.
//!
//! A [`FactorSpec`] `(ℓ, d, m)` stands for `∏_p (1 + m·p^{−ds})` over primes
//! `p ≡ 0, 1 mod ℓ`.

pub mod euler;
pub mod sieve;
pub mod slope;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::util::is_prime;

pub use euler::{decomposition_check, factor_identity_check, DecompositionReport, FactorIdentity};
pub use sieve::{coefficient_sieve, multi_factor_sum, multi_factor_sum_with_budget, DEFAULT_BUDGET};
pub use slope::{running_beta, slope_estimate, write_csv, SlopeEstimate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactorSpec {
    pub ell: u64,
    pub d: u32,
    pub m: u64,
}

impl FactorSpec {
    pub fn new(ell: u64, d: u32, m: u64) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if d == 0 || m == 0 {
            return Err(Error::Parse(format!("d and m must be positive in {ell}:{d}:{m}")));
        }
        Ok(FactorSpec { ell, d, m })
    }

    /// Whether `p` lies in the support `p ≡ 0, 1 mod ℓ`.
    pub fn allows(&self, p: u64) -> bool {
        let r = p % self.ell;
        r == 0 || r == 1
    }
}

/// `"ℓ:d:m"`.
impl FromStr for FactorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(format!("expected ℓ:d:m, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let ell = parts[0].trim().parse().map_err(|_| bad())?;
        let d = parts[1].trim().parse().map_err(|_| bad())?;
        let m = parts[2].trim().parse().map_err(|_| bad())?;
        FactorSpec::new(ell, d, m)
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.ell, self.d, self.m)
    }
}

/// Parses a comma-separated list of specs.
pub fn parse_specs(s: &str) -> Result<Vec<FactorSpec>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

/// `(α, β) = (1/d, e − 1)` with `d = min dᵢ` and `e = Σ_{dᵢ=d} mᵢ/(ℓᵢ−1)`.
pub fn predicted(specs: &[FactorSpec]) -> (Ratio<i64>, Ratio<i64>) {
    let d = specs.iter().map(|s| s.d).min().unwrap_or(1);
    let e: Ratio<i64> = specs.iter().filter(|s| s.d == d).map(|s| Ratio::new(s.m as i64, (s.ell - 1) as i64)).sum();
    (Ratio::new(1, d as i64), e - 1)
}

/// Partial sums `S(x)` at increasing checkpoints.
#[derive(Clone, Debug, Serialize)]
pub struct SumSeries {
    pub specs: Vec<FactorSpec>,
    pub checkpoints: Vec<u64>,
    pub values: Vec<u128>,
    #[serde(serialize_with = "ratio_string")]
    pub alpha: Ratio<i64>,
    #[serde(serialize_with = "ratio_string")]
    pub beta: Ratio<i64>,
}

fn ratio_string<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `10³, 2·10³, 4·10³, …` below `x_max`, then `x_max`.
pub fn geometric_checkpoints(x_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 1000u64;
    while x < x_max {
        out.push(x);
        x *= 2;
    }
    out.push(x_max);
    out
}

/// `count` log-evenly spaced checkpoints from `10³` (or `x_max` if smaller) to `x_max`.
pub fn log_spaced_checkpoints(x_max: u64, count: usize) -> Vec<u64> {
    let start = 1000u64.min(x_max).max(1);
    if count <= 1 || start == x_max {
        return vec![x_max];
    }
    let (a, b) = ((start as f64).ln(), (x_max as f64).ln());
    let mut out: Vec<u64> =
        (0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp().round() as u64).collect();
    *out.last_mut().expect("nonempty") = x_max;
    out.dedup();
    out
}
