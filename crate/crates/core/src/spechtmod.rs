//! Specht modules over prime fields and the irreducibles `D^mu`.
//!
//! Tabloids are indexed lexicographically by their sorted rows; the basis of
//! `D^mu` is the image of the standard polytabloids `e_t` whose indices are the
//! pivot columns of the reduced echelon form of the Gram matrix.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gfplin::{self, check_modulus, neg_mod, FpMatrix, FpVector, LinalgError};
use crate::permsym::{self, factorial, GroupDescriptor, Permutation};
use crate::repkit::{self, Origin, Representation};

/// Default cap on the number of tabloids of a constructed permutation module.
pub const DEFAULT_TABLOID_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpechtError {
    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("partition {mu} is not {p}-regular")]
    NotRegular { mu: Partition, p: u32 },
    #[error("{count} tabloids exceed the budget of {budget}")]
    BudgetExceeded { count: String, budget: usize },
    #[error("hook formula gives {hook} but enumeration found {enumerated} standard tableaux")]
    HookMismatch { hook: String, enumerated: usize },
    #[error("fully deleted module needs n >= 5 and p <= n (n={n}, p={p})")]
    FdpmRange { n: usize, p: u32 },
    #[error("no {p}-regular partition has traces matching {mu} twisted by sign")]
    NoAssociate { mu: Partition, p: u32 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, SpechtError>;

/// Integer partition in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SpechtError::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// No part value occurs `p` or more times.
    pub fn is_p_regular(&self, p: u32) -> bool {
        p_regular(self, p)
    }

    /// Number of tabloids, `n! / prod mu_i!`.
    pub fn tabloid_count(&self) -> BigUint {
        self.parts.iter().fold(factorial(self.n()), |acc, &k| acc / factorial(k))
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        permsym::partitions(n).into_iter().map(|parts| Partition { parts }).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = SpechtError;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<usize>, _> =
            trimmed.split(',').map(|x| x.trim().parse::<usize>()).collect();
        match parts {
            Ok(parts) if !parts.is_empty() => Partition::new(parts),
            _ => Err(SpechtError::InvalidPartition(Vec::new())),
        }
    }
}

pub fn p_regular(mu: &Partition, p: u32) -> bool {
    let mut i = 0;
    while i < mu.parts.len() {
        let run = mu.parts[i..].iter().take_while(|&&x| x == mu.parts[i]).count();
        if run >= p as usize {
            return false;
        }
        i += run;
    }
    true
}

/// Number of standard tableaux by the hook length formula.
pub fn hook_length_count(mu: &Partition) -> BigUint {
    let conj = conjugate(&mu.parts);
    let mut hooks = BigUint::from(1u32);
    for (i, &row) in mu.parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            hooks *= BigUint::from(row - j + col - i - 1);
        }
    }
    factorial(mu.n()) / hooks
}

fn conjugate(parts: &[usize]) -> Vec<usize> {
    let m = parts.first().copied().unwrap_or(0);
    (0..m).map(|j| parts.iter().filter(|&&r| r > j).count()).collect()
}

/// Standard Young tableaux of shape `mu` (entries `0..n`), in generation order.
pub fn standard_tableaux(mu: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn go(mu: &[usize], next: usize, n: usize, t: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next == n {
            out.push(t.clone());
            return;
        }
        for i in 0..mu.len() {
            let len = t[i].len();
            if len < mu[i] && (i == 0 || t[i - 1].len() > len) {
                t[i].push(next);
                go(mu, next + 1, n, t, out);
                t[i].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mu.parts, 0, mu.n(), &mut vec![Vec::new(); mu.parts.len()], &mut out);
    out
}

/// Checked count of standard tableaux: hook formula and enumeration must agree.
pub fn standard_tableaux_count(mu: &Partition) -> Result<usize> {
    let hook = hook_length_count(mu);
    let enumerated = standard_tableaux(mu).len();
    if hook != BigUint::from(enumerated) {
        return Err(SpechtError::HookMismatch { hook: hook.to_string(), enumerated });
    }
    Ok(enumerated)
}

fn key_of(rows_of: &[u8]) -> u128 {
    rows_of.iter().enumerate().fold(0u128, |k, (i, &r)| k | (r as u128) << (5 * i))
}

fn all_tabloids(mu: &Partition) -> Vec<Vec<u8>> {
    fn fill(parts: &[usize], row: usize, start: usize, left: usize, assign: &mut [u8], out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            if row + 1 == parts.len() {
                out.push(assign.to_vec());
            } else {
                fill(parts, row + 1, 0, parts[row + 1], assign, out);
            }
            return;
        }
        for x in start..assign.len() {
            if assign[x] == u8::MAX {
                assign[x] = row as u8;
                fill(parts, row, x + 1, left - 1, assign, out);
                assign[x] = u8::MAX;
            }
        }
    }
    let mut out = Vec::new();
    let mut assign = vec![u8::MAX; mu.n()];
    if !mu.parts.is_empty() {
        fill(&mu.parts, 0, 0, mu.parts[0], &mut assign, &mut out);
    }
    out
}

fn permutations_with_sign(len: usize) -> Vec<(Vec<usize>, bool)> {
    let gens: Vec<Vec<usize>> = {
        fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    go(cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; len], &mut out);
        out
    };
    gens.into_iter()
        .map(|pi| {
            let even = Permutation::new(pi.clone()).expect("bijection").is_even();
            (pi, even)
        })
        .collect()
}

/// The Specht module `S^mu` inside the permutation module `M^mu`, with its Gram data.
#[derive(Debug, Clone)]
pub struct SpechtModule {
    mu: Partition,
    p: u32,
    tabloids: Vec<Vec<u8>>,
    index: HashMap<u128, u32>,
    tableaux: Vec<Vec<Vec<usize>>>,
    polytabloids: Vec<Vec<(u32, u32)>>,
    gram: FpMatrix,
    pivots: Vec<usize>,
    gram_pivot_inv: FpMatrix,
}

/// Standard tableaux with the polytabloid matrix in tabloid coordinates.
#[derive(Debug, Clone)]
pub struct SpechtBasis {
    pub standard_tableaux: Vec<Vec<Vec<usize>>>,
    pub polytabloid_matrix: FpMatrix,
}

/// Gram matrix of the standard polytabloids and its radical.
#[derive(Debug, Clone)]
pub struct GramData {
    pub gram: FpMatrix,
    pub radical_basis: Vec<FpVector>,
}

impl SpechtModule {
    pub fn new(mu: &Partition, p: u32) -> Result<Self> {
        Self::with_budget(mu, p, DEFAULT_TABLOID_BUDGET)
    }

    pub fn with_budget(mu: &Partition, p: u32, budget: usize) -> Result<Self> {
        check_modulus(p)?;
        let count = mu.tabloid_count();
        if count.to_usize().is_none_or(|c| c > budget) || mu.n() > 25 {
            return Err(SpechtError::BudgetExceeded { count: count.to_string(), budget });
        }
        standard_tableaux_count(mu)?;
        let tabloids = all_tabloids(mu);
        let index: HashMap<u128, u32> =
            tabloids.iter().enumerate().map(|(i, t)| (key_of(t), i as u32)).collect();
        let tableaux = standard_tableaux(mu);
        let polytabloids = polytabloids(mu, p, &tableaux, &index);
        let gram = gram_matrix(p, tabloids.len(), &polytabloids);
        let (_, pivots) = gram.rref();
        let gram_pivot_inv = gram.select(&pivots, &pivots).inverse()?;
        Ok(Self { mu: mu.clone(), p, tabloids, index, tableaux, polytabloids, gram, pivots, gram_pivot_inv })
    }

    pub fn partition(&self) -> &Partition {
        &self.mu
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn tabloid_count(&self) -> usize {
        self.tabloids.len()
    }

    /// Row assignment of each point for tabloid `i`.
    pub fn tabloid(&self, i: usize) -> &[u8] {
        &self.tabloids[i]
    }

    pub fn tabloid_index(&self, rows_of: &[u8]) -> Option<usize> {
        self.index.get(&key_of(rows_of)).map(|&i| i as usize)
    }

    pub fn specht_dim(&self) -> usize {
        self.tableaux.len()
    }

    /// Dimension of `D^mu`, the rank of the Gram matrix.
    pub fn dmu_dim(&self) -> usize {
        self.pivots.len()
    }

    /// Indices of the standard polytabloids spanning a complement of the radical.
    pub fn pivot_tableaux(&self) -> &[usize] {
        &self.pivots
    }

    pub fn polytabloid(&self, t: usize) -> &[(u32, u32)] {
        &self.polytabloids[t]
    }

    pub fn basis(&self) -> SpechtBasis {
        let t = self.tabloids.len();
        let mut m = FpMatrix::zero(self.p, self.tableaux.len(), t);
        for (r, e) in self.polytabloids.iter().enumerate() {
            for &(c, v) in e {
                m.set(r, c as usize, v);
            }
        }
        SpechtBasis { standard_tableaux: self.tableaux.clone(), polytabloid_matrix: m }
    }

    pub fn gram_data(&self) -> GramData {
        GramData { gram: self.gram.clone(), radical_basis: gfplin::kernel(&self.gram) }
    }

    /// Canonical basis of `S^{mu perp}`, the vectors of `M^mu` orthogonal to every polytabloid.
    pub fn perp_basis(&self) -> Vec<FpVector> {
        gfplin::kernel(&self.basis().polytabloid_matrix)
    }

    /// Tabloid index of the image of tabloid `i` under `g`.
    pub fn act_tabloid(&self, i: usize, g: &Permutation) -> usize {
        let src = &self.tabloids[i];
        let mut dst = vec![0u8; src.len()];
        for (x, &r) in src.iter().enumerate() {
            dst[g.image(x)] = r;
        }
        self.index[&key_of(&dst)] as usize
    }

    /// Image of a vector of `M^mu` (dense tabloid coordinates) under `g`.
    pub fn act_vector(&self, v: &[u32], g: &Permutation) -> Vec<u32> {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                out[self.act_tabloid(i, g)] = x;
            }
        }
        out
    }

    /// Inner products `<v, e_s>` for `s` in the pivot set, with `v` sparse.
    fn pivot_products(&self, v: &[(u32, u32)], col_index: &HashMap<u32, Vec<(usize, u32)>>) -> Vec<u32> {
        let p = self.p as u64;
        let mut acc = vec![0u64; self.pivots.len()];
        for &(tab, c) in v {
            if let Some(list) = col_index.get(&tab) {
                for &(s, e) in list {
                    acc[s] = (acc[s] + c as u64 * e as u64) % p;
                }
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    fn pivot_column_index(&self) -> HashMap<u32, Vec<(usize, u32)>> {
        let mut idx: HashMap<u32, Vec<(usize, u32)>> = HashMap::new();
        for (s, &t) in self.pivots.iter().enumerate() {
            for &(tab, c) in &self.polytabloids[t] {
                idx.entry(tab).or_default().push((s, c));
            }
        }
        idx
    }

    /// Coordinates in the `D^mu` basis of the image of `v` in `S^mu / (S^mu ∩ S^{mu perp})`.
    /// `v` is given in dense tabloid coordinates and must lie in `S^mu`.
    pub fn project(&self, v: &[u32]) -> FpVector {
        let sparse: Vec<(u32, u32)> =
            v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x)).collect();
        let b = self.pivot_products(&sparse, &self.pivot_column_index());
        FpVector::new(self.p, self.gram_pivot_inv.vec_mul(&b)).expect("reduced entries")
    }

    /// Matrix of `g` on `D^mu` in the pivot-polytabloid basis.
    pub fn dmu_matrix(&self, g: &Permutation) -> FpMatrix {
        self.dmu_matrix_with(g, &self.pivot_column_index())
    }

    fn dmu_matrix_with(&self, g: &Permutation, col_index: &HashMap<u32, Vec<(usize, u32)>>) -> FpMatrix {
        let d = self.pivots.len();
        let mut data = Vec::with_capacity(d * d);
        for &t in &self.pivots {
            let moved: Vec<(u32, u32)> =
                self.polytabloids[t].iter().map(|&(tab, c)| (self.act_tabloid(tab as usize, g) as u32, c)).collect();
            let b = self.pivot_products(&moved, col_index);
            data.extend(self.gram_pivot_inv.vec_mul(&b));
        }
        FpMatrix::new(self.p, d, d, data).expect("square")
    }

    /// `D^mu` as a representation of `S_n` on the Coxeter generators.
    pub fn dmu_representation(&self) -> Representation {
        let n = self.mu.n();
        let idx = self.pivot_column_index();
        let generators = permsym::coxeter_generators(n).iter().map(|g| self.dmu_matrix_with(g, &idx)).collect();
        Representation {
            p: self.p,
            dim: self.dmu_dim(),
            generators,
            group: GroupDescriptor::symmetric(n),
            label: format!("D{} over F{}", self.mu, self.p),
            origin: Origin::Specht(self.mu.clone()),
            twisted: false,
        }
    }
}

fn polytabloids(
    mu: &Partition,
    p: u32,
    tableaux: &[Vec<Vec<usize>>],
    index: &HashMap<u128, u32>,
) -> Vec<Vec<(u32, u32)>> {
    let n = mu.n();
    let conj = conjugate(&mu.parts);
    let col_perms: Vec<Vec<(Vec<usize>, bool)>> = conj.iter().map(|&len| permutations_with_sign(len)).collect();
    let minus_one = neg_mod(1, p);
    tableaux
        .iter()
        .map(|t| {
            let columns: Vec<Vec<usize>> =
                (0..conj.len()).map(|c| (0..conj[c]).map(|r| t[r][c]).collect()).collect();
            let mut out = Vec::new();
            let mut assign = vec![0u8; n];
            let mut choice = vec![0usize; columns.len()];
            loop {
                let mut even = true;
                for (c, col) in columns.iter().enumerate() {
                    let (pi, e) = &col_perms[c][choice[c]];
                    even ^= !e;
                    for (k, &target) in pi.iter().enumerate() {
                        assign[col[target]] = k as u8;
                    }
                }
                let tab = index[&key_of(&assign)];
                out.push((tab, if even { 1 % p } else { minus_one }));
                let mut c = 0;
                loop {
                    if c == columns.len() {
                        out.sort_unstable();
                        return out;
                    }
                    choice[c] += 1;
                    if choice[c] < col_perms[c].len() {
                        break;
                    }
                    choice[c] = 0;
                    c += 1;
                }
            }
        })
        .collect()
}

fn gram_matrix(p: u32, tabloids: usize, polys: &[Vec<(u32, u32)>]) -> FpMatrix {
    let f = polys.len();
    let mut by_tabloid: Vec<Vec<(u32, u32)>> = vec![Vec::new(); tabloids];
    for (r, e) in polys.iter().enumerate() {
        for &(t, c) in e {
            by_tabloid[t as usize].push((r as u32, c));
        }
    }
    let mut acc = vec![0u64; f * f];
    for list in &by_tabloid {
        for &(a, ca) in list {
            for &(b, cb) in list {
                acc[a as usize * f + b as usize] += ca as u64 * cb as u64 % p as u64;
            }
        }
    }
    FpMatrix::new(p, f, f, acc.into_iter().map(|x| (x % p as u64) as u32).collect()).expect("reduced")
}

/// Dimension of `D^mu` over `F_p`.
pub fn dmu_dim(mu: &Partition, p: u32) -> Result<usize> {
    if !p_regular(mu, p) {
        return Err(SpechtError::NotRegular { mu: mu.clone(), p });
    }
    Ok(SpechtModule::new(mu, p)?.dmu_dim())
}

/// The irreducible `D^mu` of `S_n` over `F_p`.
pub fn build_dmu(mu: &Partition, p: u32) -> Result<Representation> {
    build_dmu_with_budget(mu, p, DEFAULT_TABLOID_BUDGET)
}

pub fn build_dmu_with_budget(mu: &Partition, p: u32, budget: usize) -> Result<Representation> {
    if !p_regular(mu, p) {
        return Err(SpechtError::NotRegular { mu: mu.clone(), p });
    }
    Ok(SpechtModule::with_budget(mu, p, budget)?.dmu_representation())
}

/// Coordinates of a zero-sum vector of `F_p^n` in the fully deleted module basis.
///
/// The basis is `b_i = e_i - e_{n-1}`; when `p | n` only `b_0..b_{n-3}` are kept
/// and the vector is read modulo the all-ones line.
pub fn fdpm_coordinates(n: usize, p: u32, x: &[u32]) -> Vec<u32> {
    debug_assert_eq!(x.len(), n);
    if !(n as u32).is_multiple_of(p) {
        x[..n - 1].to_vec()
    } else {
        (0..n - 2).map(|i| gfplin::sub_mod(x[i], x[n - 2], p)).collect()
    }
}

/// Dimension of the fully deleted permutation module.
pub fn fdpm_dim(n: usize, p: u32) -> usize {
    if (n as u32).is_multiple_of(p) {
        n - 2
    } else {
        n - 1
    }
}

/// The fully deleted permutation module of `S_n` over `F_p`.
pub fn build_fdpm(n: usize, p: u32) -> Result<Representation> {
    check_modulus(p)?;
    if n < 5 || p as usize > n {
        return Err(SpechtError::FdpmRange { n, p });
    }
    let d = fdpm_dim(n, p);
    let generators = permsym::coxeter_generators(n)
        .iter()
        .map(|g| {
            let mut data = Vec::with_capacity(d * d);
            for i in 0..d {
                let mut x = vec![0u32; n];
                x[g.image(i)] = 1;
                x[g.image(n - 1)] = gfplin::sub_mod(x[g.image(n - 1)], 1, p);
                data.extend(fdpm_coordinates(n, p, &x));
            }
            FpMatrix::new(p, d, d, data).expect("square")
        })
        .collect();
    Ok(Representation {
        p,
        dim: d,
        generators,
        group: GroupDescriptor::symmetric(n),
        label: format!("fully deleted module n={n} over F{p}"),
        origin: Origin::Fdpm,
        twisted: false,
    })
}

fn class_traces(rep: &Representation, reps: &[Permutation]) -> Vec<u32> {
    let tower = repkit::Tower::new(rep).expect("symmetric-group representation");
    reps.iter().map(|g| tower.matrix_of(g).expect("element of S_n").trace()).collect()
}

/// The `p`-regular `lambda` with `D^lambda ≅ D^mu ⊗ sgn`, found by trace matching on all classes.
pub fn associate_partition(mu: &Partition, p: u32) -> Result<Partition> {
    if !p_regular(mu, p) {
        return Err(SpechtError::NotRegular { mu: mu.clone(), p });
    }
    if p == 2 {
        return Ok(mu.clone());
    }
    let n = mu.n();
    let twisted = repkit::tensor_sign(&build_dmu(mu, p)?).expect("S_n module");
    let reps: Vec<Permutation> =
        permsym::class_reps(n, permsym::SymKind::Sn).into_iter().map(|c| c.rep).collect();
    let target = class_traces(&twisted, &reps);
    for lambda in Partition::all(n).into_iter().filter(|l| p_regular(l, p)) {
        if dmu_dim(&lambda, p)? != twisted.dim {
            continue;
        }
        if class_traces(&build_dmu(&lambda, p)?, &reps) == target {
            return Ok(lambda);
        }
    }
    Err(SpechtError::NoAssociate { mu: mu.clone(), p })
}

/// Smallest `m` with `D^mu` in `R_n(m)`: `n - max(mu_1, m(mu)_1)`.
pub fn rn_class(mu: &Partition, p: u32) -> Result<usize> {
    let assoc = associate_partition(mu, p)?;
    Ok(mu.n() - mu.first().max(assoc.first()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn regularity() {
        assert!(!p_regular(&part(&[2, 2]), 2));
        assert!(p_regular(&part(&[3, 2]), 2));
        assert!(!p_regular(&part(&[1, 1, 1, 1, 1]), 5));
        assert!(p_regular(&part(&[1, 1, 1, 1]), 5));
    }

    #[test]
    fn tableaux_counts() {
        assert_eq!(standard_tableaux_count(&part(&[3, 2])).unwrap(), 5);
        for n in 1..=9 {
            assert_eq!(standard_tableaux_count(&part(&[n])).unwrap(), 1);
            if n >= 2 {
                assert_eq!(standard_tableaux_count(&part(&[n - 1, 1])).unwrap(), n - 1);
            }
            for mu in Partition::all(n) {
                standard_tableaux_count(&mu).unwrap();
            }
        }
    }

    #[test]
    fn tabloid_enumeration_is_lexicographic() {
        let m = SpechtModule::new(&part(&[2, 1]), 3).unwrap();
        assert_eq!(m.tabloid_count(), 3);
        assert_eq!(m.tabloid(0), &[0, 0, 1]);
        assert_eq!(m.tabloid(1), &[0, 1, 0]);
        assert_eq!(m.tabloid(2), &[1, 0, 0]);
    }

    #[test]
    fn parse_and_display() {
        let mu: Partition = "5,3,1".parse().unwrap();
        assert_eq!(mu.to_string(), "(5,3,1)");
        assert!("3,4".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
    }

    #[test]
    fn table_dimensions() {
        assert_eq!(dmu_dim(&part(&[3, 2]), 2).unwrap(), 4);
        assert_eq!(dmu_dim(&part(&[4, 1, 1]), 3).unwrap(), 6);
        assert_eq!(dmu_dim(&part(&[3, 3]), 5).unwrap(), 5);
        assert_eq!(dmu_dim(&part(&[6, 2]), 2).unwrap(), 14);
        assert!(matches!(dmu_dim(&part(&[2, 2]), 2), Err(SpechtError::NotRegular { .. })));
    }

    #[test]
    fn fdpm_dimensions() {
        assert_eq!(build_fdpm(6, 3).unwrap().dim, 4);
        assert_eq!(build_fdpm(6, 5).unwrap().dim, 5);
        let v = build_fdpm(5, 2).unwrap();
        assert_eq!(v.dim, 4);
        // a transposition fixing the last point is a reflection: trace d - 2
        assert_eq!(v.generators[0].trace(), 0);
        assert!(build_fdpm(4, 2).is_err());
        assert!(build_fdpm(5, 7).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let err = SpechtModule::with_budget(&part(&[3, 3]), 5, 10).unwrap_err();
        assert!(matches!(err, SpechtError::BudgetExceeded { .. }));
    }

    #[test]
    fn associates_and_classes() {
        assert_eq!(associate_partition(&part(&[4, 3]), 2).unwrap(), part(&[4, 3]));
        assert_eq!(associate_partition(&part(&[3, 1, 1]), 3).unwrap(), part(&[3, 1, 1]));
        assert_eq!(associate_partition(&part(&[3, 3]), 5).unwrap(), part(&[2, 2, 2]));
        assert_eq!(associate_partition(&part(&[2, 2, 2]), 5).unwrap(), part(&[3, 3]));
        assert_eq!(rn_class(&part(&[7]), 3).unwrap(), 0);
        assert_eq!(rn_class(&part(&[6, 1]), 2).unwrap(), 1);
        assert_eq!(rn_class(&part(&[4, 3]), 2).unwrap(), 3);
    }
}
