//! Representation container and module toolkit: sign twist, restriction to
//! `A_n`, MeatAxe splitting, endomorphism degree, scalar extension, file
//! ingestion and cover-relation checks.

mod io;
mod meataxe;
pub mod poly;
mod tower;

pub use io::{builtin_sl2_5, format_rep, load_rep, parse_rep, save_rep, SL2_5_TEXT};
pub use meataxe::{an_constituents, irreducible_submodule, spin, split_or_irreducible, MeatAxeBudget, SplitReport};
pub use tower::{Level, Tower};

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use thiserror::Error;

use crate::gfplin::{self, EchelonBasis, FpMatrix, FpVector, LinalgError};
use crate::permsym::{self, GroupDescriptor, GroupKind, PermError, Permutation};
use crate::spechtmod::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("operation needs a representation of S_n")]
    NotSymmetric,
    #[error("no parity map available for group {0}")]
    NoParityMap(String),
    #[error("restriction needs n >= 3 (n = {0})")]
    TooSmall(usize),
    #[error("scalar order {a} does not divide p - 1 = {}", p - 1)]
    BadScalarOrder { a: u32, p: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("expected {expected} generators, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("centre metadata missing for an external group")]
    MissingCenter,
    #[error("MeatAxe undecided within budget ({tries} tries, seed {seed})")]
    Undecided { tries: usize, seed: u64 },
    #[error("matrix group closure exceeded {0} elements")]
    ClosureBudget(usize),
    #[error("permutation is not an element of the group")]
    NotInGroup,
    #[error("transversal sizes multiply to {found}, expected group order {expected}")]
    TowerMismatch { expected: String, found: String },
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub type Result<T> = std::result::Result<T, RepError>;

/// Where a representation came from; used to pick specialised algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Origin {
    Specht(Partition),
    Fdpm,
    Piece { mu: Partition, index: usize },
    External,
}

/// A matrix representation `rho` of `H` over `F_p`, optionally extended by scalars.
///
/// When `group.scalar_order > 1` the last generator is the scalar matrix `lambda I`.
#[derive(Debug, Clone)]
pub struct Representation {
    pub p: u32,
    pub dim: usize,
    pub generators: Vec<FpMatrix>,
    pub group: GroupDescriptor,
    pub label: String,
    pub origin: Origin,
    pub twisted: bool,
}

impl PartialEq for Representation {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.dim == o.dim && self.generators == o.generators && self.group == o.group
    }
}

impl Eq for Representation {}

impl Representation {
    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }

    /// Generators of `H`, excluding an appended scalar matrix.
    pub fn h_generators(&self) -> &[FpMatrix] {
        let k = self.generators.len() - usize::from(self.group.scalar_order > 1);
        &self.generators[..k]
    }

    /// The generator `lambda` of the scalar subgroup `A`.
    pub fn scalar_generator(&self) -> u32 {
        if self.group.scalar_order > 1 {
            self.generators.last().and_then(FpMatrix::scalar_value).expect("last generator is scalar")
        } else {
            1
        }
    }

    /// Elements of `A`, starting with 1.
    pub fn scalars(&self) -> Vec<u32> {
        let lambda = self.scalar_generator();
        let mut out = vec![1];
        let mut x = lambda;
        while x != 1 {
            out.push(x);
            x = gfplin::mul_mod(x, lambda, self.p);
        }
        out
    }

    /// Permutation images of the generators of `H` for symmetric and alternating groups.
    pub fn perm_generators(&self) -> Option<Vec<Permutation>> {
        match self.group.kind {
            GroupKind::Sn => Some(permsym::coxeter_generators(self.n())),
            GroupKind::An => Some(permsym::alternating_generators(self.n())),
            GroupKind::External(_) => None,
        }
    }

    /// Evaluates a word in 1-based indices of the `H` generators.
    pub fn eval_word(&self, word: &[usize]) -> Result<FpMatrix> {
        let gens = self.h_generators();
        let mut m = FpMatrix::identity(self.p, self.dim);
        for &i in word {
            let g = gens.get(i.wrapping_sub(1)).ok_or(RepError::GeneratorCount { expected: i, found: gens.len() })?;
            m = m.mul(g)?;
        }
        Ok(m)
    }

    /// Action of `H` on an invariant subspace given by a basis.
    pub fn submodule(&self, basis: &[FpVector]) -> Representation {
        let d = self.dim;
        let mut ech = EchelonBasis::new(self.p, d);
        for b in basis {
            ech.insert(b.entries());
        }
        let canon = ech.basis();
        let k = canon.len();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let mut data = Vec::with_capacity(k * k);
                for b in &canon {
                    let img = g.vec_mul(b.entries());
                    data.extend(ech.coordinates(&img).expect("subspace is invariant"));
                }
                FpMatrix::new(self.p, k, k, data).expect("square")
            })
            .collect();
        Representation {
            p: self.p,
            dim: k,
            generators,
            group: self.group.clone(),
            label: format!("{} (submodule of dim {k})", self.label),
            origin: self.origin.clone(),
            twisted: self.twisted,
        }
    }

    /// Whether the span of `basis` is closed under every generator.
    pub fn is_invariant(&self, basis: &[FpVector]) -> bool {
        let mut ech = EchelonBasis::new(self.p, self.dim);
        for b in basis {
            ech.insert(b.entries());
        }
        basis.iter().all(|b| self.generators.iter().all(|g| ech.contains(&g.vec_mul(b.entries()))))
    }
}

/// Tensor with the sign character: odd generators change sign.
pub fn tensor_sign(v: &Representation) -> Result<Representation> {
    if v.group.kind != GroupKind::Sn {
        return Err(RepError::NoParityMap(v.group.name()));
    }
    let k = v.h_generators().len();
    let generators =
        v.generators.iter().enumerate().map(|(i, g)| if i < k { g.neg() } else { g.clone() }).collect();
    Ok(Representation {
        generators,
        label: format!("{} ⊗ sgn", v.label),
        twisted: !v.twisted,
        ..v.clone()
    })
}

/// Restriction to `A_n` on the generators `s_i s_{i+1}`.
pub fn restrict_to_an(v: &Representation) -> Result<Representation> {
    if v.group.kind != GroupKind::Sn {
        return Err(RepError::NotSymmetric);
    }
    let n = v.n();
    if n < 3 {
        return Err(RepError::TooSmall(n));
    }
    let h = v.h_generators();
    let mut generators: Vec<FpMatrix> = (0..n - 2).map(|i| h[i].mul(&h[i + 1]).expect("square")).collect();
    if v.group.scalar_order > 1 {
        generators.push(v.generators.last().expect("scalar").clone());
    }
    let group = GroupDescriptor {
        kind: GroupKind::An,
        h_order: &v.group.h_order / 2u32,
        ..v.group.clone()
    };
    Ok(Representation { generators, group, label: format!("{} restricted to A{n}", v.label), ..v.clone() })
}

/// Adjoins the scalar subgroup of order `a` of `F_p^*`.
pub fn scalar_extension(v: &Representation, a: u32) -> Result<Representation> {
    let p = v.p;
    if a == 0 || !(p - 1).is_multiple_of(a) {
        return Err(RepError::BadScalarOrder { a, p });
    }
    let mut base = v.clone();
    if base.group.scalar_order > 1 {
        base.generators.pop();
        base.group.scalar_order = 1;
        base.group.scalar_overlap = 1;
    }
    if a == 1 {
        return Ok(base);
    }
    let lambda = gfplin::pow_mod(gfplin::primitive_root(p), ((p - 1) / a) as u64, p);
    let overlap = scalar_overlap(&base, a)?;
    let mut out = base;
    out.generators.push(FpMatrix::scalar(p, out.dim, lambda));
    out.group.scalar_order = a;
    out.group.scalar_overlap = overlap;
    permsym::group_order(&out.group)?;
    out.label = format!("{} with scalars of order {a}", out.label);
    Ok(out)
}

/// Order of the set of scalars `lambda I` with `lambda^a = 1` in the image of the centre.
fn scalar_overlap(v: &Representation, a: u32) -> Result<u32> {
    if v.group.center_words.is_empty() {
        return Ok(1);
    }
    let zs: Vec<FpMatrix> = v.group.center_words.iter().map(|w| v.eval_word(w)).collect::<Result<_>>()?;
    let center = matrix_closure(&zs, v.p, v.dim, 1 << 12)?;
    let count = center
        .iter()
        .filter_map(FpMatrix::scalar_value)
        .filter(|&l| gfplin::pow_mod(l, a as u64, v.p) == 1)
        .count();
    Ok(count as u32)
}

/// All elements of the matrix group generated by `gens`, by breadth-first closure.
pub fn matrix_closure(gens: &[FpMatrix], p: u32, d: usize, budget: usize) -> Result<Vec<FpMatrix>> {
    let id = FpMatrix::identity(p, d);
    let mut seen: HashSet<FpMatrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s)?;
            if !seen.contains(&h) {
                if seen.len() >= budget {
                    return Err(RepError::ClosureBudget(budget));
                }
                seen.insert(h.clone());
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(order)
}

/// Dimension over `F_p` of the commutant `{X : X g = g X}`; a field degree for irreducible input.
pub fn endo_field_degree(v: &Representation) -> usize {
    let d = v.dim;
    if d == 0 {
        return 0;
    }
    cyclic_commutant_dim(v).unwrap_or_else(|| direct_commutant_dim(v))
}

/// Commutant dimension via spinning `e_0`; `None` when `e_0` does not generate the module.
fn cyclic_commutant_dim(v: &Representation) -> Option<usize> {
    let d = v.dim;
    let p = v.p;
    let gens = &v.generators;
    let mut ech = EchelonBasis::new(p, d);
    let mut vecs: Vec<Vec<u32>> = Vec::new();
    let mut mats: Vec<FpMatrix> = Vec::new();
    let start = FpVector::unit(p, d, 0).into_entries();
    ech.insert(&start);
    vecs.push(start);
    mats.push(FpMatrix::identity(p, d));
    let mut i = 0;
    while i < vecs.len() {
        for g in gens {
            let w = g.vec_mul(&vecs[i]);
            if ech.insert(&w) {
                vecs.push(w);
                mats.push(mats[i].mul(g).expect("square"));
            }
        }
        i += 1;
    }
    if vecs.len() < d {
        return None;
    }
    // coordinates in the spin basis: solve x * B = y with B the matrix of spin vectors
    let b = FpMatrix::from_rows(p, &vecs).expect("rows");
    let b_inv = b.inverse().expect("spin basis");
    let mut blocks: Vec<FpMatrix> = Vec::new();
    for (i, vi) in vecs.iter().enumerate() {
        for g in gens {
            let img = g.vec_mul(vi);
            let coeffs = b_inv.vec_mul(&img);
            let mut m = mats[i].mul(g).expect("square");
            for (j, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    m = m.sub(&mats[j].scale(c));
                }
            }
            blocks.push(m);
        }
    }
    let mut data = Vec::with_capacity(d * d * blocks.len());
    for r in 0..d {
        for m in &blocks {
            data.extend_from_slice(m.row(r));
        }
    }
    let big = FpMatrix::new(p, d, d * blocks.len(), data).expect("shape");
    Some(d - gfplin::rank(&big))
}

fn direct_commutant_dim(v: &Representation) -> usize {
    let d = v.dim;
    let p = v.p;
    let mut ech = EchelonBasis::new(p, d * d);
    for a in &v.generators {
        for r in 0..d {
            for c in 0..d {
                let mut eq = vec![0u32; d * d];
                for k in 0..d {
                    eq[r * d + k] = gfplin::add_mod(eq[r * d + k], a.get(k, c), p);
                    eq[k * d + c] = gfplin::sub_mod(eq[k * d + c], a.get(r, k), p);
                }
                ech.insert(&eq);
            }
        }
    }
    d * d - ech.rank()
}

/// Checks the defining relations of `2.S_n^+` (`plus`) or `2.S_n^-` on the first
/// `n - 1` generators with central element `z`.
pub fn validate_cover_relations(v: &Representation, z: &FpMatrix, variant: CoverVariant, n: usize) -> Result<bool> {
    let gens = v.h_generators();
    if gens.len() != n - 1 {
        return Err(RepError::GeneratorCount { expected: n - 1, found: gens.len() });
    }
    let id = FpMatrix::identity(v.p, v.dim);
    let sq_target = match variant {
        CoverVariant::Plus => &id,
        CoverVariant::Minus => z,
    };
    let mul = |a: &FpMatrix, b: &FpMatrix| a.mul(b).expect("square");
    if !mul(z, z).is_identity() {
        return Ok(false);
    }
    for (i, g) in gens.iter().enumerate() {
        if mul(z, g) != mul(g, z) || &mul(g, g) != sq_target {
            return Ok(false);
        }
        if i + 1 < gens.len() && &mul(g, &gens[i + 1]).pow(3) != sq_target {
            return Ok(false);
        }
        for h in gens.iter().skip(i + 2) {
            if &mul(g, h).pow(2) != z {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverVariant {
    Plus,
    Minus,
}

/// Whether the representation of `H` is faithful.
pub fn faithfulness_check(v: &Representation) -> Result<bool> {
    match &v.group.kind {
        GroupKind::Sn | GroupKind::An if v.n() >= 5 => {
            let h = v.h_generators();
            Ok(match v.group.kind {
                GroupKind::Sn => !h[0].mul(&h[1])?.is_identity(),
                _ => h.iter().any(|g| !g.is_identity()),
            })
        }
        GroupKind::Sn | GroupKind::An => {
            let elems = matrix_closure(v.h_generators(), v.p, v.dim, 1 << 16)?;
            Ok(BigUint::from(elems.len()) == v.group.h_order)
        }
        GroupKind::External(_) => {
            if v.group.center_order > 1 && v.group.center_words.is_empty() {
                return Err(RepError::MissingCenter);
            }
            let zs: Vec<FpMatrix> = v.group.center_words.iter().map(|w| v.eval_word(w)).collect::<Result<_>>()?;
            if v.group.center_order == 2 {
                let minus = FpMatrix::identity(v.p, v.dim).neg();
                return Ok(zs.iter().all(|z| *z == minus));
            }
            let center = matrix_closure(&zs, v.p, v.dim, 1 << 12)?;
            Ok(center.len() as u64 == v.group.center_order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spechtmod::{build_dmu, build_fdpm};

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sign_twist_is_an_involution() {
        let v = build_dmu(&part(&[3, 3]), 5).unwrap();
        let t = tensor_sign(&v).unwrap();
        assert!(t.twisted);
        assert_eq!(tensor_sign(&t).unwrap(), v);
        let a = restrict_to_an(&v).unwrap();
        assert!(matches!(tensor_sign(&a), Err(RepError::NoParityMap(_))));
        assert_eq!(restrict_to_an(&t).unwrap().generators, a.generators);
    }

    #[test]
    fn restriction_halves_order() {
        let v = build_fdpm(6, 5).unwrap();
        let a = restrict_to_an(&v).unwrap();
        assert_eq!(v.order(), BigUint::from(720u32));
        assert_eq!(a.order(), BigUint::from(360u32));
        assert_eq!(a.generators.len(), 4);
    }

    #[test]
    fn scalar_extension_orders() {
        let v = build_fdpm(5, 3).unwrap();
        assert_eq!(scalar_extension(&v, 1).unwrap().order(), BigUint::from(120u32));
        let e = scalar_extension(&v, 2).unwrap();
        assert_eq!(e.order(), BigUint::from(240u32));
        assert_eq!(e.scalars(), vec![1, 2]);
        assert!(matches!(scalar_extension(&v, 3), Err(RepError::BadScalarOrder { .. })));
        let sl = builtin_sl2_5();
        for (a, order) in [(1u32, 120u32), (2, 120), (4, 240)] {
            let e = scalar_extension(&sl, a).unwrap();
            assert_eq!(e.order(), BigUint::from(order), "a={a}");
            let closure = matrix_closure(&e.generators, 5, 2, 10_000).unwrap();
            assert_eq!(BigUint::from(closure.len()), e.order());
        }
    }

    #[test]
    fn commutant_dimensions() {
        let v = build_fdpm(7, 3).unwrap();
        assert_eq!(endo_field_degree(&v), 1);
        assert_eq!(direct_commutant_dim(&v), 1);
        // block diagonal sum of v with a conjugated copy
        let d = v.dim;
        let perm: Vec<usize> = (0..d).rev().collect();
        let gens = v
            .generators
            .iter()
            .map(|g| {
                let mut m = FpMatrix::zero(3, 2 * d, 2 * d);
                for i in 0..d {
                    for j in 0..d {
                        m.set(i, j, g.get(i, j));
                        m.set(d + perm[i], d + perm[j], g.get(i, j));
                    }
                }
                m
            })
            .collect();
        let sum = Representation { dim: 2 * d, generators: gens, ..v.clone() };
        assert!(endo_field_degree(&sum) >= 2);
        assert_eq!(endo_field_degree(&sum), 4);
    }

    #[test]
    fn cover_relations() {
        let n = 5;
        let gens: Vec<FpMatrix> = permsym::coxeter_generators(n)
            .iter()
            .map(|s| {
                let mut m = FpMatrix::zero(7, n, n);
                for i in 0..n {
                    m.set(i, s.image(i), 1);
                }
                m
            })
            .collect();
        let v = Representation {
            p: 7,
            dim: n,
            generators: gens,
            group: GroupDescriptor::symmetric(n),
            label: "perm".into(),
            origin: Origin::External,
            twisted: false,
        };
        let id = FpMatrix::identity(7, n);
        assert!(validate_cover_relations(&v, &id, CoverVariant::Plus, n).unwrap());
        assert!(!validate_cover_relations(&v, &id.neg(), CoverVariant::Plus, n).unwrap());
        assert!(validate_cover_relations(&v, &id, CoverVariant::Minus, n).unwrap());
        assert!(!validate_cover_relations(&v, &id.neg(), CoverVariant::Minus, n).unwrap());
        assert!(validate_cover_relations(&v, &id, CoverVariant::Plus, 4).is_err());
    }

    #[test]
    fn faithfulness() {
        assert!(faithfulness_check(&build_fdpm(6, 2).unwrap()).unwrap());
        let sl = builtin_sl2_5();
        assert!(faithfulness_check(&sl).unwrap());
        let mut bad = sl.clone();
        bad.group.center_words = vec![vec![2, 2, 2, 2]];
        assert!(!faithfulness_check(&bad).unwrap());
        bad.group.center_words.clear();
        assert_eq!(faithfulness_check(&bad), Err(RepError::MissingCenter));
    }
}
