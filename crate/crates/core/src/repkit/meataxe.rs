//! Holt–Rees MeatAxe: finds a proper submodule or certifies irreducibility
//! with Norton's criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{charpoly, degree, eval_matrix, irreducible_factors};
use super::{restrict_to_an, Origin, RepError, Representation, Result};
use crate::gfplin::{self, EchelonBasis, FpMatrix, FpVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeatAxeBudget {
    pub seed: u64,
    pub tries: usize,
}

impl Default for MeatAxeBudget {
    fn default() -> Self {
        Self { seed: 0x5eed, tries: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitReport {
    Irreducible,
    /// Basis of a proper nonzero invariant subspace.
    Splits(Vec<FpVector>),
}

/// Span of the orbit of `v` under the algebra generated by `gens`.
pub fn spin(v: &FpVector, gens: &[FpMatrix]) -> EchelonBasis {
    let mut ech = EchelonBasis::new(v.modulus(), v.len());
    let mut queue = vec![v.entries().to_vec()];
    ech.insert(v.entries());
    while let Some(w) = queue.pop() {
        if ech.is_full() {
            break;
        }
        for g in gens {
            let u = g.vec_mul(&w);
            if ech.insert(&u) {
                queue.push(u);
            }
        }
    }
    ech
}

pub fn split_or_irreducible(v: &Representation, budget: &MeatAxeBudget) -> Result<SplitReport> {
    let p = v.p;
    let d = v.dim;
    if d <= 1 {
        return Ok(SplitReport::Irreducible);
    }
    let gens = &v.generators;
    let gens_t: Vec<FpMatrix> = gens.iter().map(FpMatrix::transpose).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut pool = gens.clone();
    for _ in 0..budget.tries {
        let (i, j) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
        let prod = pool[i].mul(&pool[j])?;
        if pool.len() < gens.len() + 8 {
            pool.push(prod);
        } else {
            let k = rng.gen_range(gens.len()..pool.len());
            pool[k] = prod;
        }
        let mut theta = FpMatrix::zero(p, d, d);
        for m in &pool {
            let c = rng.gen_range(0..p);
            if c != 0 {
                theta = theta.add(&m.scale(c));
            }
        }
        let cp = charpoly(&theta);
        for f in irreducible_factors(&cp, p, &mut rng) {
            let deg = degree(&f).unwrap_or(0);
            let fm = eval_matrix(&f, &theta);
            let null = gfplin::left_kernel(&fm);
            let sub = spin(&null[0], gens);
            if !sub.is_full() {
                return Ok(SplitReport::Splits(sub.basis()));
            }
            if null.len() == deg {
                let dual_null = gfplin::kernel(&fm);
                let dual = spin(&dual_null[0], &gens_t);
                if dual.is_full() {
                    return Ok(SplitReport::Irreducible);
                }
                let w = FpMatrix::from_vectors(p, d, &dual.basis())?;
                return Ok(SplitReport::Splits(gfplin::kernel(&w)));
            }
        }
    }
    Err(RepError::Undecided { tries: budget.tries, seed: budget.seed })
}

/// Basis (in the coordinates of `v`) of an irreducible submodule.
pub fn irreducible_submodule(v: &Representation, budget: &MeatAxeBudget) -> Result<Vec<FpVector>> {
    match split_or_irreducible(v, budget)? {
        SplitReport::Irreducible => Ok((0..v.dim).map(|i| FpVector::unit(v.p, v.dim, i)).collect()),
        SplitReport::Splits(basis) => {
            let sub = v.submodule(&basis);
            let ech_basis = gfplin::span_basis(v.p, v.dim, &basis);
            let inner = irreducible_submodule(&sub, budget)?;
            Ok(inner
                .iter()
                .map(|c| {
                    let mut x = FpVector::zero(v.p, v.dim);
                    for (coef, b) in c.entries().iter().zip(&ech_basis) {
                        x = x.add(&b.scale(*coef));
                    }
                    x
                })
                .collect())
        }
    }
}

/// Irreducible constituents of the restriction of an irreducible `S_n`-module to
/// `A_n`: the restriction itself, or two conjugate pieces.
pub fn an_constituents(v: &Representation, budget: &MeatAxeBudget) -> Result<Vec<Representation>> {
    let w = restrict_to_an(v)?;
    let basis = irreducible_submodule(&w, budget)?;
    if basis.len() == w.dim {
        return Ok(vec![w]);
    }
    let s0 = &v.h_generators()[0];
    let conj: Vec<FpVector> = basis.iter().map(|b| b.mul_mat(s0)).collect();
    let mu = match &v.origin {
        Origin::Specht(mu) | Origin::Piece { mu, .. } => Some(mu.clone()),
        _ => None,
    };
    Ok([basis, conj]
        .iter()
        .enumerate()
        .map(|(index, b)| {
            let mut piece = w.submodule(b);
            piece.label = format!("{} piece {index}", w.label);
            if let Some(mu) = &mu {
                piece.origin = Origin::Piece { mu: mu.clone(), index };
            }
            piece
        })
        .collect())
}
