//! Permutations, cycle types and conjugacy-class data for `S_n` and `A_n`.
//!
//! Products read left to right: `a * b` applies `a` first, then `b`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("images do not form a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("cycle type {parts:?} does not sum to {n}")]
    BadCycleType { n: usize, parts: Vec<usize> },
    #[error("inconsistent group metadata: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    /// Builds a permutation from disjoint cycles; `[a, b, c]` maps a->b->c->a.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(PermError::NotBijection(n));
                }
                images[a] = c[(i + 1) % c.len()];
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut r = Self::identity(self.degree());
        for _ in 0..k {
            r = r.then(self);
        }
        r
    }

    /// `h^-1 * self * h`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.inverse().then(self).then(h)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// Multiset of cycle lengths, stored in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(n: usize, mut parts: Vec<usize>) -> Result<Self, PermError> {
        if parts.contains(&0) || parts.iter().sum::<usize>() != n {
            return Err(PermError::BadCycleType { n, parts });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn element_order(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &c| acc.lcm(&(c as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().map(|c| c - 1).sum::<usize>() % 2 == 0
    }

    /// Whether the `S_n` class splits into two `A_n` classes.
    pub fn splits_in_an(&self) -> bool {
        let mut seen = HashSet::new();
        self.0.iter().all(|&c| c % 2 == 1 && seen.insert(c))
    }

    /// Canonical representative: cycles in decreasing length, filled with ascending points.
    pub fn canonical_rep(&self) -> Permutation {
        let n = self.degree();
        let mut next = 0;
        let mut cycles = Vec::new();
        for &c in &self.0 {
            cycles.push((next..next + c).collect::<Vec<_>>());
            next += c;
        }
        Permutation::from_cycles(n, &cycles).expect("valid cycles")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of elements of `S_n` with the given cycle type: `n! / prod k^{m_k} m_k!`.
pub fn class_size_sn(n: usize, t: &CycleType) -> Result<BigUint, PermError> {
    if t.degree() != n || t.0.contains(&0) {
        return Err(PermError::BadCycleType { n, parts: t.0.clone() });
    }
    let mut denom = BigUint::one();
    let mut i = 0;
    while i < t.0.len() {
        let k = t.0[i];
        let m = t.0[i..].iter().take_while(|&&c| c == k).count();
        denom *= BigUint::from(k).pow(m as u32) * factorial(m);
        i += m;
    }
    Ok(factorial(n) / denom)
}

/// All partitions of `n`, each in decreasing order, listed in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymKind {
    Sn,
    An,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRep {
    pub rep: Permutation,
    pub size_in_group: BigUint,
    pub element_order: u64,
}

/// One representative per conjugacy class of the whole group.
pub fn class_reps(n: usize, kind: SymKind) -> Vec<ClassRep> {
    let mut out = Vec::new();
    for parts in partitions(n) {
        let t = CycleType(parts);
        let size = class_size_sn(n, &t).expect("valid type");
        let order = t.element_order();
        let rep = t.canonical_rep();
        match kind {
            SymKind::Sn => out.push(ClassRep { rep, size_in_group: size, element_order: order }),
            SymKind::An if !t.is_even() => {}
            SymKind::An if n >= 2 && t.splits_in_an() && size > BigUint::one() => {
                let half = size / 2u32;
                let swapped = rep.conjugate_by(&Permutation::transposition(n, 0, 1));
                out.push(ClassRep { rep, size_in_group: half.clone(), element_order: order });
                out.push(ClassRep { rep: swapped, size_in_group: half, element_order: order });
            }
            SymKind::An => out.push(ClassRep { rep, size_in_group: size, element_order: order }),
        }
    }
    out
}

fn is_prime_u64(x: u64) -> bool {
    x >= 2 && (2..).take_while(|k| k * k <= x).all(|k| !x.is_multiple_of(k))
}

/// Representatives of the classes of elements of prime order.
pub fn prime_order_class_reps(n: usize, kind: SymKind) -> Vec<ClassRep> {
    class_reps(n, kind).into_iter().filter(|c| is_prime_u64(c.element_order)).collect()
}

/// Adjacent transpositions `(i, i+1)` for `0 <= i < n-1`.
pub fn coxeter_generators(n: usize) -> Vec<Permutation> {
    (0..n.saturating_sub(1)).map(|i| Permutation::transposition(n, i, i + 1)).collect()
}

/// Generators `s_i * s_{i+1}` of `A_n`, the 3-cycles `(i, i+2, i+1)`.
pub fn alternating_generators(n: usize) -> Vec<Permutation> {
    let s = coxeter_generators(n);
    (0..n.saturating_sub(2)).map(|i| s[i].then(&s[i + 1])).collect()
}

/// Order of the group generated by `gens` by breadth-first closure.
pub fn closure_order(n: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Sn,
    An,
    External(String),
}

/// Describes the acting group `G = <rho(H), A>` with `A` the scalars of order `scalar_order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub n: usize,
    /// Order of `H` (the group before adjoining scalars).
    pub h_order: BigUint,
    pub center_order: u64,
    /// Words in 1-based generator indices whose values generate the centre.
    pub center_words: Vec<Vec<usize>>,
    pub scalar_order: u32,
    pub scalar_overlap: u32,
}

impl GroupDescriptor {
    pub fn symmetric(n: usize) -> Self {
        Self {
            kind: GroupKind::Sn,
            n,
            h_order: factorial(n),
            center_order: 1,
            center_words: Vec::new(),
            scalar_order: 1,
            scalar_overlap: 1,
        }
    }

    pub fn alternating(n: usize) -> Self {
        Self { kind: GroupKind::An, h_order: factorial(n) / 2u32, ..Self::symmetric(n) }
    }

    pub fn external(name: &str, order: BigUint, center_order: u64, center_words: Vec<Vec<usize>>) -> Self {
        Self {
            kind: GroupKind::External(name.to_string()),
            n: 0,
            h_order: order,
            center_order,
            center_words,
            scalar_order: 1,
            scalar_overlap: 1,
        }
    }

    pub fn order(&self) -> BigUint {
        group_order(self).expect("descriptor validated at construction")
    }

    pub fn name(&self) -> String {
        let base = match &self.kind {
            GroupKind::Sn => format!("S{}", self.n),
            GroupKind::An => format!("A{}", self.n),
            GroupKind::External(s) => s.clone(),
        };
        if self.scalar_order > 1 {
            format!("{base}xC{}", self.scalar_order)
        } else {
            base
        }
    }

    pub fn is_symmetric_kind(&self) -> bool {
        matches!(self.kind, GroupKind::Sn | GroupKind::An)
    }
}

/// `|<rho(H), A>| = |H| * |A| / |rho(Z(H)) ∩ A|`.
pub fn group_order(g: &GroupDescriptor) -> Result<BigUint, PermError> {
    if g.scalar_order == 0 || g.scalar_overlap == 0 || g.center_order == 0 {
        return Err(PermError::Inconsistent("zero order".into()));
    }
    if !g.scalar_order.is_multiple_of(g.scalar_overlap) || !g.center_order.is_multiple_of(g.scalar_overlap as u64) {
        return Err(PermError::Inconsistent(format!(
            "overlap {} must divide scalar order {} and centre order {}",
            g.scalar_overlap, g.scalar_order, g.center_order
        )));
    }
    if g.h_order.is_zero() || !(&g.h_order % BigUint::from(g.center_order)).is_zero() {
        return Err(PermError::Inconsistent("centre order must divide group order".into()));
    }
    Ok(&g.h_order * g.scalar_order / g.scalar_overlap)
}

/// Converts a small `BigUint` to `u64`, if it fits.
pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
