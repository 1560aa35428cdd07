//! Union of fixed spaces over all nontrivial prime-order elements, marked in a
//! shared bitmap over `V`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::model::{path_matrix, prime_canonical, walk_perms, walk_tasks, Model};
use super::space::{encode, VecSpace};
use super::{EngineError, Result};
use crate::gfplin::{self, FpMatrix, FpVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageResult {
    /// Nonzero vectors lying in some fixed space.
    pub covered: u64,
    /// Least nonzero vector (packed order) fixed by no nontrivial element.
    pub least_unmarked: Option<u64>,
    /// Number of fixed spaces marked.
    pub spaces: u64,
}

struct Bitmap(Vec<AtomicU64>);

impl Bitmap {
    fn new(size: u64) -> Self {
        Bitmap((0..size.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    #[inline]
    fn set(&self, i: u64) {
        self.0[(i >> 6) as usize].fetch_or(1 << (i & 63), Ordering::Relaxed);
    }
}

/// Marks every vector of the span of `basis` (row vectors over `F_p`).
fn mark_span(bits: &Bitmap, basis: &[FpVector], p: u32) {
    if basis.is_empty() {
        return;
    }
    if p == 2 {
        let words: Vec<u64> = basis.iter().map(|b| encode(b.entries(), 2)).collect();
        let mut cur = 0u64;
        bits.set(0);
        for step in 1u64..(1 << words.len()) {
            cur ^= words[step.trailing_zeros() as usize];
            bits.set(cur);
        }
        return;
    }
    let d = basis[0].len();
    let k = basis.len();
    let weights: Vec<u64> = (0..d).map(|i| (p as u64).pow(i as u32)).collect();
    let mut coeffs = vec![0u32; k];
    let mut cur = vec![0u32; d];
    let mut idx = 0u64;
    bits.set(0);
    loop {
        // odometer increment, adding basis[j] each time digit j advances
        let mut j = 0;
        loop {
            if j == k {
                return;
            }
            coeffs[j] += 1;
            let wrap = coeffs[j] == p;
            if wrap {
                coeffs[j] = 0;
            }
            for (i, (&b, c)) in basis[j].entries().iter().zip(cur.iter_mut()).enumerate() {
                if b != 0 {
                    let nc = gfplin::add_mod(*c, b, p);
                    idx = idx + nc as u64 * weights[i] - *c as u64 * weights[i];
                    *c = nc;
                }
            }
            if !wrap {
                break;
            }
            j += 1;
        }
        bits.set(idx);
    }
}

fn fixed_spaces_of(m: &FpMatrix, order: u64, scalars: &[u32], p: u32) -> Vec<Vec<FpVector>> {
    scalars
        .iter()
        .filter(|&&l| gfplin::pow_mod(l, order, p) == 1)
        .map(|&l| gfplin::left_kernel(&m.scale(l).minus_scalar(1)))
        .filter(|k| !k.is_empty())
        .collect()
}

/// Runs the coverage computation on `threads` workers.
pub fn coverage<S: VecSpace>(space: &S, model: &Model<S>, scalars: &[u32], threads: usize) -> Result<CoverageResult> {
    let p = space.modulus();
    let d = space.dim();
    let size = (p as u64).checked_pow(d as u32).ok_or_else(|| EngineError::Budget("vector space too large".into()))?;
    let bits = Bitmap::new(size);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| EngineError::Internal(e.to_string()))?;
    let spaces = AtomicU64::new(0);
    pool.install(|| match model {
        Model::Tower { tower, mats, .. } => {
            let tasks = walk_tasks(tower, 64);
            tasks.par_iter().for_each(|fixed| {
                walk_perms(tower, fixed, &mut |g, idx| {
                    let Some(r) = prime_canonical(g) else { return };
                    let m = space.to_fp_matrix(&path_matrix(space, mats, idx));
                    for basis in fixed_spaces_of(&m, r, scalars, p) {
                        mark_span(&bits, &basis, p);
                        spaces.fetch_add(1, Ordering::Relaxed);
                    }
                });
            });
        }
        Model::Explicit { elements } => {
            let fp: Vec<FpMatrix> = elements.iter().map(|m| space.to_fp_matrix(m)).collect();
            fp.par_iter().for_each(|m| {
                if m.scalar_value().is_some() {
                    return;
                }
                if matrix_prime_canonical(m).is_none() {
                    return;
                }
                let basis = gfplin::left_kernel(&m.minus_scalar(1));
                if !basis.is_empty() {
                    mark_span(&bits, &basis, p);
                    spaces.fetch_add(1, Ordering::Relaxed);
                }
            });
        }
    });
    let words: Vec<u64> = bits.0.into_iter().map(AtomicU64::into_inner).collect();
    let mut covered = 0u64;
    let mut least = None;
    for (w, &word) in words.iter().enumerate() {
        let base = w as u64 * 64;
        let valid = if base + 64 <= size { u64::MAX } else { (1u64 << (size - base)) - 1 };
        let mut word = word & valid;
        if w == 0 {
            word &= !1;
        }
        covered += word.count_ones() as u64;
        let mut missing = !word & valid;
        if w == 0 {
            missing &= !1;
        }
        if least.is_none() && missing != 0 {
            least = Some(base + missing.trailing_zeros() as u64);
        }
    }
    Ok(CoverageResult { covered, least_unmarked: least, spaces: spaces.into_inner() })
}

/// Prime order of `m` when `m` is least (by entries) among its nontrivial powers.
fn matrix_prime_canonical(m: &FpMatrix) -> Option<u64> {
    let mut powers = vec![m.clone()];
    let mut cur = m.clone();
    while !cur.is_identity() {
        cur = cur.mul(m).expect("square");
        powers.push(cur.clone());
        if powers.len() > 1 << 16 {
            return None;
        }
    }
    let r = powers.len() as u64;
    if !gfplin::is_prime(r as u32) {
        return None;
    }
    powers[..powers.len() - 1].iter().all(|q| m.data() <= q.data()).then_some(r)
}
