//! The acting group in a form suited to enumeration: a stabiliser tower for
//! `S_n`/`A_n` (times scalars) or an explicit element list for external groups.

use super::space::VecSpace;
use super::{EngineError, Result};
use crate::permsym::Permutation;
use crate::repkit::{self, Representation, Tower};

pub enum Model<S: VecSpace> {
    Tower {
        tower: Tower,
        /// Transversal matrices per level, lowest level first.
        mats: Vec<Vec<S::M>>,
        scalars: Vec<u32>,
    },
    /// Every element of `G` (scalars included), identity first.
    Explicit { elements: Vec<S::M> },
}

impl<S: VecSpace> Model<S> {
    pub fn new(rep: &Representation, space: &S, closure_budget: usize) -> Result<Self> {
        if rep.perm_generators().is_some() {
            let tower = Tower::new(rep)?;
            let mats = tower.levels().iter().map(|l| l.mats.iter().map(|m| space.mat(m)).collect()).collect();
            Ok(Model::Tower { tower, mats, scalars: rep.scalars() })
        } else {
            let elements = repkit::matrix_closure(&rep.generators, rep.p, rep.dim, closure_budget)
                .map_err(|_| EngineError::Budget(format!("group closure above {closure_budget} elements")))?;
            Ok(Model::Explicit { elements: elements.iter().map(|m| space.mat(m)).collect() })
        }
    }

    /// Number of `g` in `G` with `w g = w`, stopping once the count exceeds `limit`.
    pub fn stabilizer_count(&self, space: &S, w: &S::V, limit: u64) -> u64 {
        match self {
            Model::Explicit { elements } => {
                let mut count = 0;
                for m in elements {
                    if space.apply(w, m) == *w {
                        count += 1;
                        if count > limit {
                            break;
                        }
                    }
                }
                count
            }
            Model::Tower { mats, scalars, .. } => {
                let targets: Vec<S::V> = scalars.iter().map(|&c| space.scale(w, c)).collect();
                let mut count = 0;
                descend(space, mats, 0, w.clone(), &targets, limit, &mut count);
                count
            }
        }
    }

    /// Calls `f` with the matrix of every element of `G`.
    pub fn for_each_element(&self, space: &S, f: &mut dyn FnMut(&S::M)) {
        match self {
            Model::Explicit { elements } => elements.iter().for_each(f),
            Model::Tower { mats, scalars, .. } => {
                let top = mats.len();
                let mut stack: Vec<S::M> = vec![space.identity(); top + 1];
                walk_mats(space, mats, top, &mut stack, &mut |m| {
                    for &c in scalars {
                        if c == 1 {
                            f(m);
                        } else {
                            f(&space.scale_mat(m, c));
                        }
                    }
                });
            }
        }
    }
}

fn descend<S: VecSpace>(
    space: &S,
    mats: &[Vec<S::M>],
    level: usize,
    w: S::V,
    targets: &[S::V],
    limit: u64,
    count: &mut u64,
) {
    if *count > limit {
        return;
    }
    if level == mats.len() {
        if targets.contains(&w) {
            *count += 1;
        }
        return;
    }
    for m in &mats[level] {
        descend(space, mats, level + 1, space.apply(&w, m), targets, limit, count);
        if *count > limit {
            return;
        }
    }
}

/// Top-down walk keeping suffix products `rho(u_k) ... rho(u_top)` in `stack[k]`.
fn walk_mats<S: VecSpace>(space: &S, mats: &[Vec<S::M>], k: usize, stack: &mut Vec<S::M>, f: &mut dyn FnMut(&S::M)) {
    if k == 0 {
        f(&stack[0]);
        return;
    }
    for m in &mats[k - 1] {
        stack[k - 1] = space.mul(m, &stack[k]);
        walk_mats(space, mats, k - 1, stack, f);
    }
}

/// Enumerates `H` as permutations `u_0 * ... * u_top` with their transversal indices,
/// restricted to the elements whose top `fixed.len()` indices equal `fixed`.
pub fn walk_perms(tower: &Tower, fixed: &[usize], f: &mut dyn FnMut(&Permutation, &[usize])) {
    let levels = tower.levels();
    let top = levels.len();
    let mut idx = vec![0usize; top];
    let mut suffix = Permutation::identity(tower.degree());
    for (j, &i) in fixed.iter().enumerate() {
        let k = top - 1 - j;
        idx[k] = i;
        suffix = levels[k].perms[i].then(&suffix);
    }
    fn go(tower: &Tower, k: usize, suffix: &Permutation, idx: &mut Vec<usize>, f: &mut dyn FnMut(&Permutation, &[usize])) {
        if k == 0 {
            f(suffix, idx);
            return;
        }
        let level = &tower.levels()[k - 1];
        for (i, u) in level.perms.iter().enumerate() {
            idx[k - 1] = i;
            go(tower, k - 1, &u.then(suffix), idx, f);
        }
    }
    go(tower, top - fixed.len(), &suffix, &mut idx, f);
}

/// Index prefixes (top levels first) splitting the tower walk into at least `want` tasks.
pub fn walk_tasks(tower: &Tower, want: usize) -> Vec<Vec<usize>> {
    let levels = tower.levels();
    let mut tasks: Vec<Vec<usize>> = vec![Vec::new()];
    let mut k = levels.len();
    while tasks.len() < want && k > 1 {
        k -= 1;
        tasks = tasks
            .into_iter()
            .flat_map(|t| {
                (0..levels[k].len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    tasks
}

/// Matrix of the element with transversal indices `idx` (lowest level first).
pub fn path_matrix<S: VecSpace>(space: &S, mats: &[Vec<S::M>], idx: &[usize]) -> S::M {
    let mut m = mats[0][idx[0]].clone();
    for (level, &i) in mats.iter().zip(idx).skip(1) {
        m = space.mul(&m, &level[i]);
    }
    m
}

/// Whether `g` has prime order and is least (by image list) among its nontrivial powers.
pub fn prime_canonical(g: &Permutation) -> Option<u64> {
    let r = g.order();
    if r < 2 || !crate::gfplin::is_prime(r as u32) {
        return None;
    }
    let mut h = g.clone();
    for _ in 2..r {
        h = h.then(g);
        if h.images() < g.images() {
            return None;
        }
    }
    Some(r)
}
