//! Stabiliser chain for `S_n`/`A_n` along the points `n-1, n-2, ...`, carrying
//! transversal matrices so that `rho(g)` can be evaluated for any permutation.

use num_bigint::BigUint;

use super::{RepError, Representation, Result};
use crate::gfplin::FpMatrix;
use crate::permsym::Permutation;

/// One level of the chain: coset representatives `u_j` with `u_j(point) = j`.
#[derive(Debug, Clone)]
pub struct Level {
    pub point: usize,
    pub orbit: Vec<usize>,
    pub perms: Vec<Permutation>,
    pub mats: Vec<FpMatrix>,
    index: Vec<Option<usize>>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn index_of(&self, j: usize) -> Option<usize> {
        self.index.get(j).copied().flatten()
    }
}

/// Levels are stored lowest point first; every element is `u_low * ... * u_top`.
#[derive(Debug, Clone)]
pub struct Tower {
    n: usize,
    p: u32,
    dim: usize,
    levels: Vec<Level>,
}

impl Tower {
    pub fn new(rep: &Representation) -> Result<Self> {
        let perms = rep.perm_generators().ok_or(RepError::NotSymmetric)?;
        let mats = rep.h_generators();
        if perms.len() != mats.len() {
            return Err(RepError::GeneratorCount { expected: perms.len(), found: mats.len() });
        }
        let n = rep.n();
        let support_max = |g: &Permutation| (0..n).filter(|&i| g.image(i) != i).max().unwrap_or(0);
        let mut levels = Vec::new();
        for k in 1..n {
            let gens: Vec<usize> = (0..perms.len()).filter(|&i| support_max(&perms[i]) <= k).collect();
            let mut index = vec![None; n];
            index[k] = Some(0);
            let mut level = Level {
                point: k,
                orbit: vec![k],
                perms: vec![Permutation::identity(n)],
                mats: vec![FpMatrix::identity(rep.p, rep.dim)],
                index: Vec::new(),
            };
            let mut i = 0;
            while i < level.orbit.len() {
                for &g in &gens {
                    let j = perms[g].image(level.orbit[i]);
                    if index[j].is_none() {
                        index[j] = Some(level.orbit.len());
                        level.orbit.push(j);
                        level.perms.push(level.perms[i].then(&perms[g]));
                        level.mats.push(level.mats[i].mul(&mats[g])?);
                    }
                }
                i += 1;
            }
            level.index = index;
            if level.len() > 1 {
                levels.push(level);
            }
        }
        let size: BigUint = levels.iter().map(|l| BigUint::from(l.len())).product();
        if size != rep.group.h_order {
            return Err(RepError::TowerMismatch {
                expected: rep.group.h_order.to_string(),
                found: size.to_string(),
            });
        }
        Ok(Self { n, p: rep.p, dim: rep.dim, levels })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Transversal indices of `g`, lowest level first.
    pub fn sift(&self, g: &Permutation) -> Result<Vec<usize>> {
        if g.degree() != self.n {
            return Err(RepError::NotInGroup);
        }
        let mut h = g.clone();
        let mut out = vec![0; self.levels.len()];
        for (li, level) in self.levels.iter().enumerate().rev() {
            let j = h.image(level.point);
            let idx = level.index_of(j).ok_or(RepError::NotInGroup)?;
            h = h.then(&level.perms[idx].inverse());
            out[li] = idx;
        }
        if h.is_identity() {
            Ok(out)
        } else {
            Err(RepError::NotInGroup)
        }
    }

    pub fn matrix_of(&self, g: &Permutation) -> Result<FpMatrix> {
        let idx = self.sift(g)?;
        let mut m = FpMatrix::identity(self.p, self.dim);
        for (level, &i) in self.levels.iter().zip(&idx) {
            m = m.mul(&level.mats[i])?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repkit::restrict_to_an;
    use crate::spechtmod::{build_dmu, Partition};

    #[test]
    fn tower_is_a_homomorphism() {
        let v = build_dmu(&Partition::new(vec![4, 2]).unwrap(), 3).unwrap();
        let t = Tower::new(&v).unwrap();
        let a = Permutation::from_cycles(6, &[vec![0, 3, 5], vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let ab = t.matrix_of(&a.then(&b)).unwrap();
        assert_eq!(ab, t.matrix_of(&a).unwrap().mul(&t.matrix_of(&b).unwrap()).unwrap());
        assert_eq!(t.matrix_of(&Permutation::transposition(6, 2, 3)).unwrap(), v.generators[2]);
        let w = restrict_to_an(&v).unwrap();
        let ta = Tower::new(&w).unwrap();
        assert!(matches!(ta.matrix_of(&Permutation::transposition(6, 0, 1)), Err(RepError::NotInGroup)));
        assert!(ta.matrix_of(&a.then(&b).then(&Permutation::transposition(6, 0, 1))).is_ok());
    }
}
