//! Least `t` such that some `t`-tuple of vectors has trivial joint stabiliser;
//! the affine group `V:G` then has minimal base size `t + 1`.

use super::model::Model;
use super::space::{decode, space_size, VecSpace};
use super::{CoverageBudget, EngineError, Result};
use crate::gfplin::FpVector;
use crate::repkit::Representation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseReport {
    pub t: usize,
    pub base_size: usize,
    pub vectors: Vec<FpVector>,
    /// Tuple length reached by the greedy pass before the exhaustive search.
    pub greedy_t: usize,
}

struct Search<'a, S: VecSpace> {
    space: &'a S,
    elements: Vec<S::M>,
    size: u64,
}

impl<S: VecSpace> Search<'_, S> {
    fn vector(&self, idx: u64) -> S::V {
        self.space.digits_to_vec(&decode(idx, self.space.modulus(), self.space.dim()))
    }

    fn stabilizer(&self, k: &[usize], v: &S::V) -> Vec<usize> {
        k.iter().copied().filter(|&e| self.space.apply(v, &self.elements[e]) == *v).collect()
    }

    /// Least element (packed index) of each nonzero `K`-orbit.
    fn orbit_reps(&self, k: &[usize]) -> Vec<u64> {
        let mut seen = vec![false; self.size as usize];
        let mut reps = Vec::new();
        let p = self.space.modulus();
        for idx in 1..self.size {
            if seen[idx as usize] {
                continue;
            }
            reps.push(idx);
            let v = self.vector(idx);
            for &e in k {
                let u = self.space.apply(&v, &self.elements[e]);
                seen[super::space::encode(&self.space.to_digits(&u), p) as usize] = true;
            }
        }
        reps
    }

    fn exists(&self, k: &[usize], depth: usize, chosen: &mut Vec<u64>) -> bool {
        if k.len() == 1 {
            return true;
        }
        if depth == 0 || (k.len() as f64) > (self.size as f64).powi(depth as i32) {
            return false;
        }
        for idx in self.orbit_reps(k) {
            let stab = self.stabilizer(k, &self.vector(idx));
            if stab.len() == k.len() {
                continue;
            }
            chosen.push(idx);
            if self.exists(&stab, depth - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn greedy(&self, t_max: usize) -> Option<Vec<u64>> {
        let mut k: Vec<usize> = (0..self.elements.len()).collect();
        let mut chosen = Vec::new();
        while k.len() > 1 {
            if chosen.len() == t_max {
                return None;
            }
            let (best, stab) = self
                .orbit_reps(&k)
                .into_iter()
                .map(|idx| (idx, self.stabilizer(&k, &self.vector(idx))))
                .min_by_key(|(idx, s)| (s.len(), *idx))?;
            chosen.push(best);
            k = stab;
        }
        Some(chosen)
    }
}

pub fn min_trivializing_tuple(rep: &Representation, t_max: usize, budget: &CoverageBudget) -> Result<BaseReport> {
    let size = space_size(rep.p, rep.dim)
        .filter(|&s| s <= budget.max_vspace.min(1 << 24))
        .ok_or_else(|| EngineError::Budget("vector space too large for tuple search".into()))?;
    super::check_orbit_budget(rep, budget)?;
    with_space!(rep, |s| {
        let model = Model::new(rep, &s, budget.max_orbit as usize)?;
        let mut elements = Vec::new();
        model.for_each_element(&s, &mut |m| elements.push(m.clone()));
        let search = Search { space: &s, elements, size };
        let greedy = search.greedy(t_max).ok_or(EngineError::TupleBudget(t_max))?;
        let all: Vec<usize> = (0..search.elements.len()).collect();
        let mut best = greedy.clone();
        for t in 1..greedy.len() {
            let mut chosen = Vec::new();
            if search.exists(&all, t, &mut chosen) {
                best = chosen;
                break;
            }
        }
        let vectors = best
            .iter()
            .map(|&idx| FpVector::new(rep.p, decode(idx, rep.p, rep.dim)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(BaseReport { t: vectors.len(), base_size: vectors.len() + 1, vectors, greedy_t: greedy.len() })
    })
}
