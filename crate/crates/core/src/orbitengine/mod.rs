//! Regular-orbit decisions: fixed spaces, the strong bound, coverage
//! certificates, orbit and stabiliser computations, and affine base sizes.

/// Dispatches to the bit-packed kernels when `p = 2` and `d <= 64`.
macro_rules! with_space {
    ($rep:expr, |$s:ident| $body:expr) => {
        if $rep.p == 2 && $rep.dim <= 64 {
            let $s = $crate::orbitengine::space::Gf2Space { d: $rep.dim };
            $body
        } else {
            let $s = $crate::orbitengine::space::FpSpace { p: $rep.p, d: $rep.dim };
            $body
        }
    };
}

mod base;
pub mod census;
pub mod coverage;
pub mod model;
pub mod space;

pub use base::{min_trivializing_tuple, BaseReport};
pub use coverage::CoverageResult;

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gfplin::{self, FpMatrix, FpVector, LinalgError};
use crate::permsym::{self, GroupKind, Permutation, SymKind};
use crate::repkit::{Origin, RepError, Representation, Tower};
use crate::spechtmod::fdpm_coordinates;
use census::CensusInput;
use model::Model;
use space::{decode, encode, VecSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("no trivialising tuple of length <= {0}")]
    TupleBudget(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, EngineError>;

/// Resource limits and seed for the search pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageBudget {
    pub max_vspace: u64,
    pub max_orbit: u64,
    pub samples: usize,
    pub seed: u64,
    pub threads: usize,
    /// Allows bitmaps up to `2^32` vectors.
    pub huge: bool,
}

impl Default for CoverageBudget {
    fn default() -> Self {
        Self {
            max_vspace: 1 << 28,
            max_orbit: 200_000_000,
            samples: 4096,
            seed: 0x5eed,
            threads: rayon::current_num_threads(),
            huge: false,
        }
    }
}

impl CoverageBudget {
    fn vspace_limit(&self) -> u64 {
        if self.huge {
            self.max_vspace.max(1 << 32)
        } else {
            self.max_vspace
        }
    }
}

/// A group element `lambda * rho(g)` acting on `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElementAction {
    pub matrix: FpMatrix,
    pub perm: Option<Permutation>,
    pub scalar: u32,
}

impl GroupElementAction {
    pub fn of_perm(rep: &Representation, g: &Permutation, scalar: u32) -> Result<Self> {
        let m = Tower::new(rep)?.matrix_of(g)?;
        Ok(Self { matrix: m.scale(scalar), perm: Some(g.clone()), scalar })
    }

    pub fn of_matrix(matrix: FpMatrix) -> Self {
        Self { matrix, perm: None, scalar: 1 }
    }
}

/// `C_V(g)` as a canonical basis.
pub fn fixed_space(g: &GroupElementAction) -> Vec<FpVector> {
    gfplin::left_kernel(&g.matrix.minus_scalar(1))
}

/// `dim [V, g] = d - dim C_V(g)`.
pub fn commutator_dim(g: &GroupElementAction) -> usize {
    g.matrix.rows() - fixed_space(g).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTerm {
    pub class: String,
    pub scalar: u32,
    pub class_size: BigUint,
    pub fixed_dim: usize,
}

/// Terms `|g^G| p^{dim C_V(g)}` over classes of non-central prime-order elements of `G`.
pub fn strong_bound_terms(rep: &Representation) -> Result<Vec<BoundTerm>> {
    let p = rep.p;
    let scalars = rep.scalars();
    match rep.group.kind {
        GroupKind::Sn | GroupKind::An => {
            let kind = if rep.group.kind == GroupKind::Sn { SymKind::Sn } else { SymKind::An };
            let tower = Tower::new(rep)?;
            let mut out = Vec::new();
            for c in permsym::prime_order_class_reps(rep.n(), kind) {
                let m = tower.matrix_of(&c.rep)?;
                for &l in scalars.iter().filter(|&&l| gfplin::pow_mod(l, c.element_order, p) == 1) {
                    out.push(BoundTerm {
                        class: c.rep.cycle_type().to_string(),
                        scalar: l,
                        class_size: c.size_in_group.clone(),
                        fixed_dim: gfplin::left_kernel(&m.scale(l).minus_scalar(1)).len(),
                    });
                }
            }
            Ok(out)
        }
        GroupKind::External(_) => {
            let elems = crate::repkit::matrix_closure(&rep.generators, p, rep.dim, 1 << 20)?;
            let mut out = Vec::new();
            for m in elems {
                if m.scalar_value().is_some() {
                    continue;
                }
                let mut k = m.clone();
                let mut order = 1u64;
                while !k.is_identity() {
                    k = k.mul(&m)?;
                    order += 1;
                }
                if gfplin::is_prime(order as u32) {
                    out.push(BoundTerm {
                        class: format!("element of order {order}"),
                        scalar: 1,
                        class_size: BigUint::one(),
                        fixed_dim: gfplin::left_kernel(&m.minus_scalar(1)).len(),
                    });
                }
            }
            Ok(out)
        }
    }
}

/// `S = sum |g^G| p^{dim C_V(g)}`; `S < p^d` implies a regular orbit.
pub fn strong_bound_sum(rep: &Representation) -> Result<BigUint> {
    Ok(strong_bound_terms(rep)?
        .iter()
        .map(|t| &t.class_size * BigUint::from(rep.p).pow(t.fixed_dim as u32))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Pigeonhole { v_size: BigUint, g_order: BigUint },
    FullCoverage { covered_count: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSummary {
    pub v_size: BigUint,
    pub g_order: BigUint,
    pub strong_bound: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Regular { witness: FpVector, orbit_size: BigUint },
    NoRegular(Certificate),
    Undecided(BoundSummary),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub seed: u64,
    pub max_vspace: u64,
    pub max_orbit: u64,
    pub threads: usize,
    pub method: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub provenance: Provenance,
    pub strong_bound: Option<BigUint>,
}

impl Verdict {
    pub fn is_regular(&self) -> bool {
        matches!(self.outcome, Outcome::Regular { .. })
    }

    pub fn is_no_regular(&self) -> bool {
        matches!(self.outcome, Outcome::NoRegular(_))
    }
}

fn is_fdpm(rep: &Representation) -> bool {
    rep.origin == Origin::Fdpm && rep.group.is_symmetric_kind()
}

fn census_input<'a>(rep: &'a Representation, scalars: &'a [u32]) -> CensusInput<'a> {
    CensusInput { n: rep.n(), p: rep.p, kind: &rep.group.kind, twisted: rep.twisted, scalars }
}

fn check_orbit_budget(rep: &Representation, budget: &CoverageBudget) -> Result<()> {
    if rep.order() > BigUint::from(budget.max_orbit) {
        return Err(EngineError::Budget(format!("|G| = {} exceeds max_orbit {}", rep.order(), budget.max_orbit)));
    }
    Ok(())
}

/// `|Stab_G(w)|`, exact.
pub fn stabilizer_order(rep: &Representation, w: &FpVector, budget: &CoverageBudget) -> Result<BigUint> {
    stabilizer_count_limited(rep, w, u64::MAX - 1, budget).map(BigUint::from)
}

fn stabilizer_count_limited(rep: &Representation, w: &FpVector, limit: u64, budget: &CoverageBudget) -> Result<u64> {
    if is_fdpm(rep) {
        let x = fdpm_lift(rep, w);
        let scalars = rep.scalars();
        return Ok(census::stabilizer_count(&census_input(rep, &scalars), &x, limit));
    }
    check_orbit_budget(rep, budget)?;
    with_space!(rep, |s| {
        let model = Model::new(rep, &s, budget.max_orbit as usize)?;
        Ok(model.stabilizer_count(&s, &s.digits_to_vec(w.entries()), limit))
    })
}

/// A zero-sum `n`-tuple whose fully deleted coordinates are `w`.
fn fdpm_lift(rep: &Representation, w: &FpVector) -> Vec<u32> {
    let n = rep.n();
    let p = rep.p;
    let mut x = vec![0u32; n];
    let k = w.len();
    x[..k].copy_from_slice(w.entries());
    let sum = x.iter().fold(0, |a, &b| gfplin::add_mod(a, b, p));
    x[n - 1] = gfplin::neg_mod(sum, p);
    x
}

/// Size of the `G`-orbit of `w`: breadth-first search for small groups, else `|G| / |Stab|`.
pub fn orbit_size(rep: &Representation, w: &FpVector, budget: &CoverageBudget) -> Result<BigUint> {
    let order = rep.order();
    if order <= BigUint::from(1u32 << 20) {
        return Ok(BigUint::from(orbit_bfs(rep, w).len()));
    }
    Ok(order / stabilizer_order(rep, w, budget)?)
}

/// The orbit of `w` by breadth-first search over generator images.
pub fn orbit_bfs(rep: &Representation, w: &FpVector) -> Vec<FpVector> {
    let mut seen = std::collections::HashSet::from([w.clone()]);
    let mut order = vec![w.clone()];
    let mut i = 0;
    while i < order.len() {
        for g in &rep.generators {
            let u = order[i].mul_mat(g);
            if seen.insert(u.clone()) {
                order.push(u);
            }
        }
        i += 1;
    }
    order
}

/// Whether `w` has trivial stabiliser.
pub fn is_regular(rep: &Representation, w: &FpVector, budget: &CoverageBudget) -> Result<bool> {
    Ok(!w.is_zero() && stabilizer_count_limited(rep, w, 1, budget)? == 1)
}

/// Runs the coverage bitmap (within `max_vspace`, or `2^32` with `huge`).
pub fn coverage_certify(rep: &Representation, budget: &CoverageBudget) -> Result<CoverageResult> {
    let size = space::space_size(rep.p, rep.dim).filter(|&s| s <= budget.vspace_limit());
    if size.is_none() {
        return Err(EngineError::Budget(format!("p^d exceeds {}", budget.vspace_limit())));
    }
    let scalars = rep.scalars();
    with_space!(rep, |s| {
        let model = Model::new(rep, &s, budget.max_orbit as usize)?;
        coverage::coverage(&s, &model, &scalars, budget.threads)
    })
}

/// Seeded random search; returns the least regular vector (packed order) of the first
/// batch that contains one.
fn sample_witness(rep: &Representation, budget: &CoverageBudget) -> Result<Option<FpVector>> {
    check_orbit_budget(rep, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let batch = 32;
    with_space!(rep, |s| {
        let model = Model::new(rep, &s, budget.max_orbit as usize)?;
        let mut drawn = 0;
        while drawn < budget.samples {
            let cands: Vec<Vec<u32>> =
                (0..batch).map(|_| (0..rep.dim).map(|_| rng.gen_range(0..rep.p)).collect()).collect();
            drawn += batch;
            let mut regular: Vec<Vec<u32>> = cands
                .par_iter()
                .filter(|c| {
                    let v = s.digits_to_vec(c);
                    !s.is_zero(&v) && model.stabilizer_count(&s, &v, 1) == 1
                })
                .cloned()
                .collect();
            regular.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
            if let Some(w) = regular.into_iter().next() {
                return Ok(Some(FpVector::new(rep.p, w)?));
            }
        }
        Ok(None)
    })
}

fn regular_outcome(rep: &Representation, w: FpVector, budget: &CoverageBudget) -> Result<Outcome> {
    if !is_regular(rep, &w, budget)? {
        return Err(EngineError::Internal(format!("candidate {w} is not regular")));
    }
    Ok(Outcome::Regular { witness: w, orbit_size: rep.order() })
}

/// The full decision pipeline.
pub fn verdict(rep: &Representation, budget: &CoverageBudget) -> Result<Verdict> {
    let start = Instant::now();
    let v_size = BigUint::from(rep.p).pow(rep.dim as u32);
    let g_order = rep.order();
    let finish = |outcome: Outcome, method: &str, strong: Option<BigUint>| Verdict {
        outcome,
        strong_bound: strong,
        provenance: Provenance {
            seed: budget.seed,
            max_vspace: budget.max_vspace,
            max_orbit: budget.max_orbit,
            threads: budget.threads,
            method: method.to_string(),
            elapsed_ms: start.elapsed().as_millis(),
        },
    };
    if v_size < g_order {
        let cert = Certificate::Pigeonhole { v_size, g_order };
        return Ok(finish(Outcome::NoRegular(cert), "pigeonhole", None));
    }
    let strong = strong_bound_sum(rep)?;
    if is_fdpm(rep) {
        let scalars = rep.scalars();
        let c = census::census(&census_input(rep, &scalars));
        let outcome = match c.witness {
            None => {
                if c.covered + 1 != c.total {
                    return Err(EngineError::Internal("census does not cover V".into()));
                }
                Outcome::NoRegular(Certificate::FullCoverage { covered_count: BigUint::from(c.covered) })
            }
            Some(x) => {
                let w = FpVector::new(rep.p, fdpm_coordinates(rep.n(), rep.p, &x))?;
                regular_outcome(rep, w, budget)?
            }
        };
        return Ok(finish(outcome, "census", Some(strong)));
    }
    let fits = space::space_size(rep.p, rep.dim).is_some_and(|s| s <= budget.vspace_limit());
    let searchable = g_order <= BigUint::from(budget.max_orbit);
    if strong < v_size && searchable {
        if let Some(w) = sample_witness(rep, budget)? {
            return Ok(finish(regular_outcome(rep, w, budget)?, "strong-bound+sampling", Some(strong)));
        }
    }
    if fits && searchable {
        let cov = coverage_certify(rep, budget)?;
        let outcome = match cov.least_unmarked {
            None => Outcome::NoRegular(Certificate::FullCoverage { covered_count: BigUint::from(cov.covered) }),
            Some(idx) => regular_outcome(rep, FpVector::new(rep.p, decode(idx, rep.p, rep.dim))?, budget)?,
        };
        return Ok(finish(outcome, "coverage", Some(strong)));
    }
    if searchable && strong >= v_size {
        if let Some(w) = sample_witness(rep, budget)? {
            return Ok(finish(regular_outcome(rep, w, budget)?, "sampling", Some(strong)));
        }
    }
    let summary = BoundSummary { v_size, g_order, strong_bound: Some(strong.clone()) };
    Ok(finish(Outcome::Undecided(summary), "undecided", Some(strong)))
}

/// Packed index of a vector, when `p^d` fits in 64 bits.
pub fn packed_index(w: &FpVector) -> Option<u64> {
    space::space_size(w.modulus(), w.len()).map(|_| encode(w.entries(), w.modulus()))
}
