//! Shared inputs for the benchmarks.

use nilbound_core::{FiniteGroup, TableGroup};

/// Same group, elements renamed by `i ↦ 1 + (i−1)·k mod (n−1)` with the
/// smallest `k ≥ 2` coprime to `n − 1`, so the identity map is not an isomorphism.
pub fn relabelled(g: &TableGroup) -> TableGroup {
    let n = g.order();
    if n <= 3 {
        return g.clone();
    }
    let k = (2..).find(|&k| gcd(k, n - 1) == 1).expect("some k is coprime");
    let fwd: Vec<usize> = (0..n).map(|i| if i == 0 { 0 } else { 1 + (i - 1) * k % (n - 1) }).collect();
    let mut back = vec![0; n];
    for (i, &j) in fwd.iter().enumerate() {
        back[j] = i;
    }
    let gens = g.generators().iter().map(|&x| fwd[x]).collect();
    TableGroup::from_fn(n, gens, |a, b| fwd[g.mul(back[a], back[b])])
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Catalog groups that are cheap enough for every benchmark.
pub const SMALL_GROUPS: &[&str] = &["Q8", "D4_S8", "C4xC2_S8", "Q16", "Heis27", "C2xQ8"];
