//! Exact regular-orbit census for the fully deleted permutation module.
//!
//! A vector is represented by `x` in `F_p^n` with zero coordinate sum (taken
//! modulo the all-ones vector when `p | n`). The pair `(g, mu)` fixes `x` iff
//! `x_{g(j)} = c x_j - t` for all `j`, where `c = mu * eps(g)` (`eps` the sign
//! character when the module is twisted) and `t = 0` unless `p | n`. So only the
//! value multiset of `x` matters, and each multiset is decided by checking the
//! affine maps `v -> c v - t` that preserve it.

use crate::gfplin::{self};
use crate::permsym::GroupKind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    /// Nonzero vectors of `V` with nontrivial stabiliser.
    pub covered: u128,
    /// Size of `V`.
    pub total: u128,
    /// A regular vector as an `n`-tuple: values `1..p-1` by multiplicity, then zeros.
    pub witness: Option<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct CensusInput<'a> {
    pub n: usize,
    pub p: u32,
    pub kind: &'a GroupKind,
    pub twisted: bool,
    pub scalars: &'a [u32],
}

fn factorials(n: usize) -> Vec<u128> {
    let mut f = vec![1u128; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i as u128;
    }
    f
}

pub fn census(input: &CensusInput) -> CensusResult {
    let (n, p) = (input.n, input.p);
    let fact = factorials(n);
    let mut counts = vec![0usize; p as usize];
    let mut covered = 0u128;
    let mut all = 0u128;
    let mut witness = None;
    enumerate(&mut counts, 0, n, &mut |counts| {
        let sum = counts.iter().enumerate().fold(0u64, |acc, (v, &c)| (acc + v as u64 * c as u64) % p as u64);
        if sum != 0 {
            return;
        }
        let ways = counts.iter().fold(fact[n], |acc, &c| acc / fact[c]);
        all += ways;
        if counts.contains(&n) {
            return;
        }
        if non_regular(input, counts) {
            covered += ways;
        } else if witness.is_none() {
            witness = Some(listing(counts));
        }
    });
    let quotient = if (n as u64).is_multiple_of(p as u64) { p as u128 } else { 1 };
    CensusResult { covered: covered / quotient, total: all / quotient, witness }
}

fn enumerate(counts: &mut Vec<usize>, v: usize, left: usize, f: &mut dyn FnMut(&[usize])) {
    if v + 1 == counts.len() {
        counts[v] = left;
        f(counts);
        return;
    }
    for c in 0..=left {
        counts[v] = c;
        enumerate(counts, v + 1, left - c, f);
    }
}

/// Values `1, ..., p-1` with multiplicity, then the zeros.
pub fn listing(counts: &[usize]) -> Vec<u32> {
    let mut x = Vec::new();
    for (v, &c) in counts.iter().enumerate().skip(1) {
        x.extend(std::iter::repeat_n(v as u32, c));
    }
    x.extend(std::iter::repeat_n(0, counts[0]));
    x
}

fn non_regular(input: &CensusInput, counts: &[usize]) -> bool {
    let p = input.p;
    let n = input.n;
    let has2 = counts.iter().any(|&c| c >= 2);
    let has3 = counts.iter().any(|&c| c >= 3);
    let two2 = counts.iter().filter(|&&c| c >= 2).count() >= 2;
    let shifts = if (n as u64).is_multiple_of(p as u64) { p } else { 1 };
    let only_even = matches!(input.kind, GroupKind::An);
    for c in 1..p {
        for t in 0..shifts {
            let phi = |v: u32| gfplin::sub_mod(gfplin::mul_mod(c, v, p), t, p);
            if (0..p).any(|v| counts[phi(v) as usize] != counts[v as usize]) {
                continue;
            }
            let fixes_support = (0..p).all(|v| counts[v as usize] == 0 || phi(v) == v);
            // parities present in the coset of permutations realising phi
            let (even, odd) = if fixes_support || has2 {
                (true, has2)
            } else {
                let odd = coset_parity_odd(counts, &phi);
                (!odd, odd)
            };
            for (available, is_odd) in [(even, false), (odd, true)] {
                if !available || (is_odd && only_even) {
                    continue;
                }
                let mu = if input.twisted && is_odd { gfplin::neg_mod(c, p) } else { c };
                if !input.scalars.contains(&mu) {
                    continue;
                }
                let nontrivial = mu != 1 || !fixes_support || if is_odd { has2 } else { has3 || two2 };
                if nontrivial {
                    return true;
                }
            }
        }
    }
    false
}

/// Parity of the unique permutation of a distinct-valued listing induced by `phi`.
fn coset_parity_odd(counts: &[usize], phi: &dyn Fn(u32) -> u32) -> bool {
    let x = listing(counts);
    let mut pos = vec![usize::MAX; counts.len()];
    for (i, &v) in x.iter().enumerate() {
        pos[v as usize] = i;
    }
    let perm: Vec<usize> = x.iter().map(|&v| pos[phi(v) as usize]).collect();
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for i in 0..perm.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
    }
    (perm.len() - cycles) % 2 == 1
}

/// Counts pairs `(g, mu)` fixing `x` by backtracking over the positions, stopping
/// once the count exceeds `limit`.
pub fn stabilizer_count(input: &CensusInput, x: &[u32], limit: u64) -> u64 {
    let (n, p) = (input.n, input.p);
    let shifts = if (n as u64).is_multiple_of(p as u64) { p } else { 1 };
    let mut count = 0u64;
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for c in 1..p {
        for t in 0..shifts {
            assign(input, x, c, t, 0, &mut image, &mut used, &mut count, limit);
            if count > limit {
                return count;
            }
        }
    }
    count
}

#[allow(clippy::too_many_arguments)]
fn assign(
    input: &CensusInput,
    x: &[u32],
    c: u32,
    t: u32,
    j: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    count: &mut u64,
    limit: u64,
) {
    let p = input.p;
    let n = x.len();
    if j == n {
        let odd = permutation_is_odd(image);
        if odd && matches!(input.kind, GroupKind::An) {
            return;
        }
        let mu = if input.twisted && odd { gfplin::neg_mod(c, p) } else { c };
        if input.scalars.contains(&mu) {
            *count += 1;
        }
        return;
    }
    let target = gfplin::sub_mod(gfplin::mul_mod(c, x[j], p), t, p);
    for i in 0..n {
        if !used[i] && x[i] == target {
            used[i] = true;
            image[j] = i;
            assign(input, x, c, t, j + 1, image, used, count, limit);
            used[i] = false;
            if *count > limit {
                return;
            }
        }
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for i in 0..perm.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}
