//! Exact counts of cyclic extensions of ℚ with prescribed ramification, the
//! class-group bounds they are measured against, and small field databases.
//!
//! Over ℚ a `C_ℓ`-extension unramified outside a finite set `P` of primes is
//! the fixed field of an order-`ℓ` character of `(ℤ/N)^×` with `N` supported
//! on `P`. The `ℓ`-rank of that character group is `t(P) = Σ_{p∈P} t_p` with
//! `t_p = 1` for `p ≡ 1 mod ℓ`, `t_ℓ = 1` for odd `ℓ`, `t_2 = 2` for `ℓ = 2`,
//! and `t_p = 0` otherwise.

pub mod fields;
pub mod v4;

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::BaseFieldData;
use crate::util::{is_prime, primes_up_to};

pub use fields::{
    count_cyclic_ell, count_quadratic, cyclic_conductors, enumerate_cyclic_ell, enumerate_quadratic, is_fundamental,
    quadratic_discriminant, write_counts_csv, write_records_csv, Conductor, FieldRecord,
};
pub use v4::{enumerate_v4, v4_fiber_check, FiberReport, FiberViolation, V4Field};

/// A prime `ℓ` with disjoint prime sets `S` (ramification required) and `T`
/// (ramification allowed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub ell: u64,
    pub s: BTreeSet<u64>,
    pub t: BTreeSet<u64>,
}

impl RamificationProfile {
    pub fn new(ell: u64, s: impl IntoIterator<Item = u64>, t: impl IntoIterator<Item = u64>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let s: BTreeSet<u64> = s.into_iter().collect();
        let t: BTreeSet<u64> = t.into_iter().collect();
        if let Some(&p) = s.iter().chain(&t).find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        if let Some(p) = s.intersection(&t).next() {
            return Err(Error::PropertyViolated(format!("{p} lies in both S and T")));
        }
        Ok(RamificationProfile { ell, s, t })
    }

    /// `t(S)`.
    pub fn rank_s(&self) -> u32 {
        rank_t(self.ell, &self.s)
    }

    pub fn exact_count(&self) -> u128 {
        count_exactly_ramified(self.ell, &self.s, &self.t)
    }

    /// Number of primes of `S` above `ℓ`.
    pub fn s0(&self) -> usize {
        usize::from(self.s.contains(&self.ell))
    }
}

/// `ℓ`-rank of the order-`ℓ` characters of `(ℤ/p^∞)^×`.
pub fn local_rank(ell: u64, p: u64) -> u32 {
    if p == ell {
        if ell == 2 {
            2
        } else {
            1
        }
    } else {
        u32::from(p % ell == 1)
    }
}

/// `t(P) = Σ_{p∈P} t_p`.
pub fn rank_t<'a>(ell: u64, primes: impl IntoIterator<Item = &'a u64>) -> u32 {
    primes.into_iter().map(|&p| local_rank(ell, p)).sum()
}

/// `C_ℓ`-extensions of ℚ unramified outside `S`: `(ℓ^t − 1)/(ℓ − 1)`.
pub fn count_unramified_outside<'a>(ell: u64, s: impl IntoIterator<Item = &'a u64>) -> u128 {
    let t = rank_t(ell, s);
    (ell as u128).pow(t).saturating_sub(1) / (ell as u128 - 1)
}

/// `C_ℓ`-extensions ramified at every prime of `S` and unramified outside
/// `S ∪ T`, by inclusion–exclusion over subsets of `S`.
pub fn count_exactly_ramified(ell: u64, s: &BTreeSet<u64>, t: &BTreeSet<u64>) -> u128 {
    let s: Vec<u64> = s.iter().copied().collect();
    let mut plus = 0u128;
    let mut minus = 0u128;
    for mask in 0u32..(1 << s.len()) {
        let mut set: Vec<u64> = t.iter().copied().collect();
        set.extend((0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]));
        let u = count_unramified_outside(ell, &set);
        if (s.len() as u32 - mask.count_ones()) % 2 == 0 {
            plus += u;
        } else {
            minus += u;
        }
    }
    plus - minus
}

/// Closed form `∏_{p∈S}(ℓ^{t_p} − 1) · ℓ^{t(T)} / (ℓ − 1)` for nonempty `S`.
pub fn exact_product_formula(ell: u64, s: &BTreeSet<u64>, t: &BTreeSet<u64>) -> u128 {
    let l = ell as u128;
    if s.is_empty() {
        return count_unramified_outside(ell, t);
    }
    let local: u128 = s.iter().map(|&p| l.pow(local_rank(ell, p)) - 1).product();
    local * l.pow(rank_t(ell, t)) / (l - 1)
}

/// `s = rk_ℓ(Cl_k) + |S| + [k:ℚ]`, plus `r₁` when `ℓ = 2`.
pub fn rank_bound_s(field: &BaseFieldData, ell: u64, s_len: usize) -> u32 {
    let mut s = field.class_rank(ell) + s_len as u32 + field.degree();
    if ell == 2 {
        s += field.real_places();
    }
    s
}

/// Upper bound `(ℓ^s − 1)/(ℓ − 1)` on extensions unramified outside `S`.
pub fn unramified_bound(field: &BaseFieldData, ell: u64, s_len: usize) -> u128 {
    let s = rank_bound_s(field, ell, s_len);
    ((ell as u128).pow(s) - 1) / (ell as u128 - 1)
}

/// Both readings of the constant in the exact-ramification bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CConstant {
    /// `rk_ℓ(Cl_k) + [k:ℚ] + |S₀| + r₁`.
    pub tight: u32,
    /// `rk_ℓ(Cl_k) + 3[k:ℚ]`.
    pub loose: u32,
}

/// `c(k,ℓ)` where `s0` is the number of primes of `S` above `ℓ`.
pub fn c_constant(field: &BaseFieldData, ell: u64, s0: usize) -> CConstant {
    let rk = field.class_rank(ell);
    CConstant { tight: rk + field.degree() + s0 as u32 + field.real_places(), loose: rk + 3 * field.degree() }
}

/// `ℓ^{c+|T|}(ℓ − 1)^{|S|}`.
pub fn exact_bound(ell: u64, c: u32, s_len: usize, t_len: usize) -> u128 {
    (ell as u128).pow(c + t_len as u32) * (ell as u128 - 1).pow(s_len as u32)
}

/// Fiber bound `∏ ℓᵢ^{bᵢ}(ℓᵢ−1)^{ω(aᵢ)}` with `bᵢ = ω(a₁⋯a_{i−1}) + c(k,ℓᵢ)`
/// for a tuple of squarefree integers, under both readings of `c`.
///
/// Step `i` counts `C_{ℓᵢ}`-extensions ramified at every prime of `aᵢ`, so
/// `|S₀|` there is whether `ℓᵢ | aᵢ`.
pub fn fiber_bound(field: &BaseFieldData, primes: &[u64], tuple: &[u64]) -> FiberBound {
    let mut tight = 1u128;
    let mut loose = 1u128;
    let mut earlier = 0u32;
    for (&ell, &a) in primes.iter().zip(tuple) {
        let w = v4::omega(a) as u32;
        let c = c_constant(field, ell, usize::from(a % ell == 0));
        let (l, m) = (ell as u128, ell as u128 - 1);
        tight *= l.pow(earlier + c.tight) * m.pow(w);
        loose *= l.pow(earlier + c.loose) * m.pow(w);
        earlier += w;
    }
    FiberBound { tight, loose }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberBound {
    pub tight: u128,
    pub loose: u128,
}

/// Outcome of the bound checks for one profile over ℚ.
#[derive(Clone, Debug, Serialize)]
pub struct ProfileCheck {
    pub profile: RamificationProfile,
    pub unramified: u128,
    pub unramified_bound: u128,
    pub exact: u128,
    pub exact_closed_form: u128,
    pub c: CConstant,
    pub exact_bound_tight: u128,
    pub exact_bound_loose: u128,
    /// `Σ_{S'⊆S} exact(S', T)` against `unramified outside S ∪ T`.
    pub partition_sum: u128,
}

impl ProfileCheck {
    pub fn passed(&self) -> bool {
        let total = count_unramified_outside(self.profile.ell, self.profile.s.iter().chain(&self.profile.t));
        self.unramified <= self.unramified_bound
            && self.exact == self.exact_closed_form
            && self.exact <= self.exact_bound_tight
            && self.exact_bound_tight <= self.exact_bound_loose
            && self.partition_sum == total
    }
}

/// Runs every bound and identity for one profile over ℚ.
pub fn check_profile(profile: &RamificationProfile) -> ProfileCheck {
    let q = BaseFieldData::rationals();
    let ell = profile.ell;
    let c = c_constant(&q, ell, profile.s0());
    let (s_len, t_len) = (profile.s.len(), profile.t.len());
    let s: Vec<u64> = profile.s.iter().copied().collect();
    let mut partition_sum = 0u128;
    for mask in 0u32..(1 << s.len()) {
        let sub: BTreeSet<u64> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        partition_sum += count_exactly_ramified(ell, &sub, &profile.t);
    }
    ProfileCheck {
        unramified: count_unramified_outside(ell, &profile.s),
        unramified_bound: unramified_bound(&q, ell, s_len),
        exact: profile.exact_count(),
        exact_closed_form: exact_product_formula(ell, &profile.s, &profile.t),
        c,
        exact_bound_tight: exact_bound(ell, c.tight, s_len, t_len),
        exact_bound_loose: exact_bound(ell, c.loose, s_len, t_len),
        partition_sum,
        profile: profile.clone(),
    }
}

/// `count` profiles with `ℓ ∈ {2,3,5}`, `|S|, |T| ≤ 6`, primes below 200.
pub fn random_profiles(seed: u64, count: usize) -> Vec<RamificationProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = primes_up_to(199);
    (0..count)
        .map(|_| {
            let ell = *[2u64, 3, 5].choose(&mut rng).expect("nonempty");
            let (ns, nt) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
            let picked: Vec<u64> = primes.choose_multiple(&mut rng, ns + nt).copied().collect();
            RamificationProfile::new(ell, picked[..ns].to_vec(), picked[ns..].to_vec()).expect("valid profile")
        })
        .collect()
}
