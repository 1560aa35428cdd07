//! Graph encodings of the permutation modules on unordered and ordered pairs,
//! and certificates for regular vectors built from them.
//!
//! For `mu = (n-2, 2)` a vector of `M^mu` is an edge-weighted simple graph; for
//! `mu = (n-2, 1, 1)` it is an edge-weighted directed graph. Vertices are `0..n`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gfplin::{mul_mod, neg_mod, FpVector};
use crate::permsym::Permutation;
use crate::spechtmod::{Partition, SpechtError, SpechtModule};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph on {0} vertices exceeds the {MAX_VERTICES}-vertex budget")]
    Budget(usize),
    #[error("no candidate for n = {n}, p = {p}: {reason}")]
    Unsupported { n: usize, p: u32, reason: &'static str },
    #[error("vertex {v} out of range for n = {n}")]
    Vertex { v: usize, n: usize },
    #[error(transparent)]
    Specht(#[from] SpechtError),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// `TwoRow` is `(n-2, 2)`, `Hook` is `(n-2, 1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    TwoRow,
    Hook,
}

impl Shape {
    pub fn partition(self, n: usize) -> Partition {
        let parts = match self {
            Shape::TwoRow => vec![n - 2, 2],
            Shape::Hook => vec![n - 2, 1, 1],
        };
        Partition::new(parts).expect("n >= 4")
    }
}

/// A vector of `M^mu` as a weighted graph. Undirected keys satisfy `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedEdgeVector {
    shape: Shape,
    n: usize,
    p: u32,
    weights: BTreeMap<(usize, usize), u32>,
}

impl WeightedEdgeVector {
    pub fn new(shape: Shape, n: usize, p: u32) -> Self {
        Self { shape, n, p, weights: BTreeMap::new() }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn key(&self, i: usize, j: usize) -> (usize, usize) {
        match self.shape {
            Shape::TwoRow if i > j => (j, i),
            _ => (i, j),
        }
    }

    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.weights.get(&self.key(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero weights in key order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    /// Adds `w` to the coordinate of the pair `(i, j)` only.
    pub fn add_raw(&mut self, i: usize, j: usize, w: u32) -> Result<()> {
        for v in [i, j] {
            if v >= self.n {
                return Err(GraphError::Vertex { v, n: self.n });
            }
        }
        if i == j {
            return Err(GraphError::Vertex { v: i, n: self.n });
        }
        let key = self.key(i, j);
        let p = self.p;
        let entry = self.weights.entry(key).or_insert(0);
        *entry = (*entry + w % p) % p;
        if *entry == 0 {
            self.weights.remove(&key);
        }
        Ok(())
    }

    /// Adds `w {i,j}`, or `w (i,j) - w (j,i)` for the hook shape.
    pub fn add_edge(&mut self, i: usize, j: usize, w: u32) -> Result<()> {
        self.add_raw(i, j, w)?;
        if self.shape == Shape::Hook {
            self.add_raw(j, i, neg_mod(w % self.p, self.p))?;
        }
        Ok(())
    }

    /// Adds `w ({c0,c1} - {c1,c2} + ... )` around the closed walk `cycle`; for the
    /// hook shape the signs are dropped, giving the directed cycle `c0 -> c1 -> ...`.
    pub fn add_alternating_cycle(&mut self, cycle: &[usize], w: u32) -> Result<()> {
        let p = self.p;
        for (k, &a) in cycle.iter().enumerate() {
            let b = cycle[(k + 1) % cycle.len()];
            let c = if k % 2 == 0 || self.shape == Shape::Hook { w % p } else { neg_mod(w % p, p) };
            self.add_edge(a, b, c)?;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// Hook vectors with `weight(j,i) = -weight(i,j)` everywhere; always true for two-row vectors.
    pub fn is_antisymmetric(&self) -> bool {
        self.shape == Shape::TwoRow
            || self.weights.iter().all(|(&(i, j), &w)| self.weight(j, i) == neg_mod(w, self.p))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::new(self.shape, self.n, self.p);
        for (&k, &w) in &self.weights {
            let x = mul_mod(w, c % self.p, self.p);
            if x != 0 {
                out.weights.insert(k, x);
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), &w) in &o.weights {
            out.add_raw(i, j, neg_mod(w, self.p)).expect("same vertex set");
        }
        out
    }

    /// Image under `g`, sending the pair `(i, j)` to `(g(i), g(j))`.
    pub fn permute(&self, g: &Permutation) -> Self {
        let mut out = Self::new(self.shape, self.n, self.p);
        for (&(i, j), &w) in &self.weights {
            out.weights.insert(out.key(g.image(i), g.image(j)), w);
        }
        out
    }

    /// Standard inner product on pair coordinates.
    pub fn inner(&self, o: &Self) -> u32 {
        let p = self.p as u64;
        let s = self.weights.iter().filter_map(|(k, &w)| o.weights.get(k).map(|&x| w as u64 * x as u64 % p)).sum::<u64>();
        (s % p) as u32
    }

    fn rows_of(&self, i: usize, j: usize) -> Vec<u8> {
        let mut rows = vec![0u8; self.n];
        match self.shape {
            Shape::TwoRow => {
                rows[i] = 1;
                rows[j] = 1;
            }
            Shape::Hook => {
                rows[i] = 1;
                rows[j] = 2;
            }
        }
        rows
    }

    /// Sparse tabloid coordinates in `module`, which must be built for this shape.
    pub fn to_tabloids(&self, module: &SpechtModule) -> Vec<(usize, u32)> {
        self.weights
            .iter()
            .map(|(&(i, j), &w)| (module.tabloid_index(&self.rows_of(i, j)).expect("pair tabloid"), w))
            .collect()
    }

    pub fn to_dense(&self, module: &SpechtModule) -> Vec<u32> {
        let mut v = vec![0; module.tabloid_count()];
        for (t, w) in self.to_tabloids(module) {
            v[t] = w;
        }
        v
    }

    pub fn underlying_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for &(i, j) in self.weights.keys() {
            g.add_edge(i, j);
        }
        g
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self { n, adj: vec![vec![false; n]; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i][j] = true;
            self.adj[j][i] = true;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn max_valency(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| (i + 1..self.n).filter(move |&j| self.adj[i][j]).map(move |j| (i, j))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        self.edges().iter().all(|&(i, j)| self.adj[g.image(i)][g.image(j)])
    }

    fn neighbour_masks(&self) -> Vec<u64> {
        self.adj.iter().map(|row| row.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |m, (j, _)| m | 1 << j)).collect()
    }
}

/// Outcome of an automorphism search; `nodes` counts search-tree nodes visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomorphismSearch {
    pub trivial: bool,
    pub nodes: u64,
}

/// Jointly refines two colourings of the same graph with shared colour names.
/// Returns false when their colour-class sizes disagree.
fn refine_pair(g: &SimpleGraph, a: &mut [usize], b: &mut [usize]) -> bool {
    let classes = |c: &[usize]| {
        let mut s = c.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len()
    };
    loop {
        let before = classes(a);
        let sig = |c: &[usize], v: usize| {
            let mut nb: Vec<usize> = (0..g.n).filter(|&u| g.adj[v][u]).map(|u| c[u]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sa: Vec<_> = (0..g.n).map(|v| sig(a, v)).collect();
        let sb: Vec<_> = (0..g.n).map(|v| sig(b, v)).collect();
        let mut all: Vec<_> = sa.iter().chain(&sb).cloned().collect();
        all.sort();
        all.dedup();
        let id: HashMap<_, usize> = all.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        for v in 0..g.n {
            a[v] = id[&sa[v]];
            b[v] = id[&sb[v]];
        }
        let (mut ha, mut hb) = (a.to_vec(), b.to_vec());
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return false;
        }
        if classes(a) == before {
            return true;
        }
    }
}

fn individualize(c: &mut [usize], v: usize) {
    c[v] = c.iter().max().map_or(0, |m| m + 1);
}

fn first_nonsingleton(c: &[usize]) -> Option<Vec<usize>> {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &x in c {
        *count.entry(x).or_default() += 1;
    }
    let best = c.iter().filter(|x| count[x] > 1).min()?;
    Some((0..c.len()).filter(|&v| c[v] == *best).collect())
}

/// Whether some automorphism carries colouring `a` to colouring `b`.
fn exists_iso(g: &SimpleGraph, mut a: Vec<usize>, mut b: Vec<usize>, nodes: &mut u64) -> bool {
    *nodes += 1;
    if !refine_pair(g, &mut a, &mut b) {
        return false;
    }
    let Some(cell) = first_nonsingleton(&a) else {
        let mut images = vec![0; g.n];
        for v in 0..g.n {
            images[v] = (0..g.n).find(|&u| b[u] == a[v]).expect("matching classes");
        }
        return g.is_automorphism(&Permutation::new(images).expect("bijection"));
    };
    let x = cell[0];
    let targets: Vec<usize> = (0..g.n).filter(|&u| b[u] == a[x]).collect();
    targets.into_iter().any(|y| {
        let (mut a2, mut b2) = (a.clone(), b.clone());
        individualize(&mut a2, x);
        individualize(&mut b2, y);
        exists_iso(g, a2, b2, nodes)
    })
}

/// Decides whether the identity is the only automorphism, by individualisation
/// and degree-seeded colour refinement. Isolated vertices count as vertices.
pub fn automorphism_search(g: &SimpleGraph) -> Result<AutomorphismSearch> {
    if g.n > MAX_VERTICES {
        return Err(GraphError::Budget(g.n));
    }
    let mut nodes = 0;
    let mut c: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    loop {
        let mut twin = c.clone();
        refine_pair(g, &mut c, &mut twin);
        nodes += 1;
        let Some(cell) = first_nonsingleton(&c) else {
            return Ok(AutomorphismSearch { trivial: true, nodes });
        };
        let u = cell[0];
        for &v in &cell[1..] {
            let (mut a, mut b) = (c.clone(), c.clone());
            individualize(&mut a, u);
            individualize(&mut b, v);
            if exists_iso(g, a, b, &mut nodes) {
                return Ok(AutomorphismSearch { trivial: false, nodes });
            }
        }
        individualize(&mut c, u);
    }
}

pub fn automorphism_trivial(g: &SimpleGraph) -> Result<bool> {
    Ok(automorphism_search(g)?.trivial)
}

/// Distinct `(v1, v2, v3, v4)` with `{v1,v2}` an edge and `{v2,v3}`, `{v3,v4}`, `{v4,v1}` non-edges.
pub fn four_point_witness(g: &SimpleGraph) -> Option<(usize, usize, usize, usize)> {
    assert!(g.n <= MAX_VERTICES, "graph exceeds the vertex budget");
    let adj = g.neighbour_masks();
    let all = if g.n == 64 { u64::MAX } else { (1u64 << g.n) - 1 };
    for (v1, v2) in g.edges().into_iter().flat_map(|(i, j)| [(i, j), (j, i)]) {
        let mut c3 = all & !adj[v2] & !(1 << v1 | 1 << v2);
        while c3 != 0 {
            let v3 = c3.trailing_zeros() as usize;
            c3 &= c3 - 1;
            let c4 = all & !adj[v3] & !adj[v1] & !(1 << v1 | 1 << v2 | 1 << v3);
            if c4 != 0 {
                return Some((v1, v2, v3, c4.trailing_zeros() as usize));
            }
        }
    }
    None
}

/// The vector `s` of the regular-orbit construction; vertices are 0-based.
///
/// For `n >= 13` it is the sum of the alternating 4-cycles on `1,2,4,5` and
/// `2,3,4,6` and the alternating cycle `5,6,...,m` with `m = 2 floor(n/2)`
/// (1-based labels). For `n = 12` and `p` odd it is a 4-cycle and two 6-cycles
/// with both scalars equal to 1.
pub fn build_regular_candidate(n: usize, shape: Shape, p: u32) -> Result<WeightedEdgeVector> {
    if n > MAX_VERTICES {
        return Err(GraphError::Budget(n));
    }
    let mut s = WeightedEdgeVector::new(shape, n, p);
    let cyc = |labels: &[usize]| labels.iter().map(|&x| x - 1).collect::<Vec<_>>();
    match n {
        13.. => {
            let m = 2 * (n / 2);
            s.add_alternating_cycle(&cyc(&[1, 2, 4, 5]), 1)?;
            s.add_alternating_cycle(&cyc(&[2, 3, 4, 6]), 1)?;
            s.add_alternating_cycle(&cyc(&(5..=m).collect::<Vec<_>>()), 1)?;
        }
        12 if p != 2 => {
            s.add_alternating_cycle(&cyc(&[1, 2, 3, 4]), 1)?;
            s.add_alternating_cycle(&cyc(&[3, 4, 5, 6, 7, 8]), 1)?;
            s.add_alternating_cycle(&cyc(&[7, 8, 9, 10, 11, 12]), 1)?;
        }
        12 => return Err(GraphError::Unsupported { n, p, reason: "n = 12 needs two nonzero scalars with nonzero sum" }),
        _ => return Err(GraphError::Unsupported { n, p, reason: "the construction needs n >= 12" }),
    }
    Ok(s)
}

/// Membership tests against a Specht module in its pair-permutation module.
#[derive(Debug, Clone)]
pub struct SpechtPairs {
    module: SpechtModule,
    perp: Vec<FpVector>,
    /// For each tabloid, the standard polytabloids containing it with their coefficients.
    columns: Vec<Vec<(usize, u32)>>,
    polytabloids: usize,
}

impl SpechtPairs {
    pub fn new(shape: Shape, n: usize, p: u32) -> Result<Self> {
        let module = SpechtModule::new(&shape.partition(n), p)?;
        let perp = module.perp_basis();
        let mut columns = vec![Vec::new(); module.tabloid_count()];
        for t in 0..module.specht_dim() {
            for &(tab, c) in module.polytabloid(t) {
                columns[tab as usize].push((t, c));
            }
        }
        let polytabloids = module.specht_dim();
        Ok(Self { module, perp, columns, polytabloids })
    }

    pub fn module(&self) -> &SpechtModule {
        &self.module
    }

    /// `s` lies in `S^mu` iff it is orthogonal to `S^{mu perp}`.
    pub fn contains(&self, s: &WeightedEdgeVector) -> bool {
        let p = self.module.modulus() as u64;
        let sparse = s.to_tabloids(&self.module);
        self.perp.iter().all(|x| {
            let e = x.entries();
            sparse.iter().map(|&(t, w)| w as u64 * e[t] as u64 % p).sum::<u64>() % p == 0
        })
    }

    /// `t` lies outside `S^{mu perp}` iff some polytabloid pairs nontrivially with it.
    pub fn outside_perp(&self, t: &WeightedEdgeVector) -> bool {
        let p = self.module.modulus() as u64;
        let mut acc = vec![0u64; self.polytabloids];
        for (tab, w) in t.to_tabloids(&self.module) {
            for &(k, c) in &self.columns[tab] {
                acc[k] = (acc[k] + w as u64 * c as u64) % p;
            }
        }
        acc.iter().any(|&x| x != 0)
    }
}

/// The hypotheses of the regular-vector criterion, each checked mechanically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub p: u32,
    pub shape: Shape,
    pub edges: Vec<(usize, usize)>,
    pub edge_count: usize,
    pub edge_bound: usize,
    pub max_valency: usize,
    pub mu_p_regular: bool,
    pub in_specht: bool,
    pub automorphism_trivial: bool,
    pub search_nodes: u64,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.n >= 12
            && self.mu_p_regular
            && self.in_specht
            && self.automorphism_trivial
            && self.max_valency <= 4
            && self.edge_count <= self.edge_bound
    }
}

pub fn edge_bound(n: usize) -> usize {
    if n == 12 {
        14
    } else {
        n + 4
    }
}

/// Checks every hypothesis; a passing certificate proves that `S_n x F_p^*`
/// has a regular orbit on `D^mu` and on `D^mu` tensored with the sign.
pub fn certify_regular(s: &WeightedEdgeVector, pairs: &SpechtPairs) -> Result<Certificate> {
    let (n, p, shape) = (s.n(), s.modulus(), s.shape());
    let g = s.underlying_graph();
    let search = automorphism_search(&g)?;
    Ok(Certificate {
        n,
        p,
        shape,
        edges: g.edges(),
        edge_count: g.edge_count(),
        edge_bound: edge_bound(n),
        max_valency: g.max_valency(),
        mu_p_regular: shape.partition(n).is_p_regular(p),
        in_specht: s.is_antisymmetric() && pairs.contains(s),
        automorphism_trivial: search.trivial,
        search_nodes: search.nodes,
    })
}

/// Result of sampling the proof obligation `s - lambda s g` outside `S^{mu perp}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObligationReport {
    pub samples: u64,
    pub violations: u64,
    /// Samples whose difference graph had no four-point witness.
    pub without_witness: u64,
}

fn random_nonidentity<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    loop {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            images.swap(i, rng.gen_range(0..=i));
        }
        let g = Permutation::new(images).expect("bijection");
        if !g.is_identity() {
            return g;
        }
    }
}

pub fn obligation_holds(s: &WeightedEdgeVector, pairs: &SpechtPairs, g: &Permutation, lambda: u32) -> (bool, bool) {
    let t = s.sub(&s.permute(g).scale(lambda));
    let witness = four_point_witness(&t.underlying_graph()).is_some();
    (pairs.outside_perp(&t), witness)
}

pub fn sample_obligation(s: &WeightedEdgeVector, pairs: &SpechtPairs, samples: u64, seed: u64) -> ObligationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = s.modulus();
    let mut report = ObligationReport { samples, violations: 0, without_witness: 0 };
    for _ in 0..samples {
        let g = random_nonidentity(s.n(), &mut rng);
        let lambda = rng.gen_range(1..p);
        let (ok, witness) = obligation_holds(s, pairs, &g, lambda);
        report.violations += u64::from(!ok);
        report.without_witness += u64::from(!witness);
    }
    report
}

/// The test vector `s'` attached to a four-point witness.
pub fn witness_vector(shape: Shape, n: usize, p: u32, w: (usize, usize, usize, usize)) -> WeightedEdgeVector {
    let mut s = WeightedEdgeVector::new(shape, n, p);
    s.add_alternating_cycle(&[w.0, w.1, w.2, w.3], 1).expect("distinct vertices");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_trivial(g: &SimpleGraph) -> bool {
        fn go(g: &SimpleGraph, cur: &mut Vec<usize>, used: &mut [bool]) -> bool {
            if cur.len() == g.n {
                let p = Permutation::new(cur.clone()).unwrap();
                return p.is_identity() || !g.is_automorphism(&p);
            }
            for x in 0..g.n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    let ok = go(g, cur, used);
                    cur.pop();
                    used[x] = false;
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        go(g, &mut Vec::new(), &mut vec![false; g.n])
    }

    #[test]
    fn underlying_graphs() {
        let mut s = WeightedEdgeVector::new(Shape::TwoRow, 5, 3);
        s.add_edge(0, 1, 2).unwrap();
        assert_eq!(s.underlying_graph().edges(), vec![(0, 1)]);
        let mut c = WeightedEdgeVector::new(Shape::TwoRow, 6, 3);
        c.add_alternating_cycle(&[0, 1, 2, 3], 1).unwrap();
        assert_eq!(c.underlying_graph().edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let mut d = WeightedEdgeVector::new(Shape::Hook, 6, 5);
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            d.add_edge(a, b, 1).unwrap();
        }
        assert!(d.is_antisymmetric());
        assert_eq!(d.underlying_graph().edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn automorphisms_match_brute_force() {
        assert!(!automorphism_trivial(&SimpleGraph::from_edges(2, &[(0, 1)])).unwrap());
        // path 0-1-2-3 with a pendant triangle 3-4-5 plus a tail 5-6
        let g = SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)]);
        assert_eq!(automorphism_trivial(&g).unwrap(), brute_trivial(&g));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let mut g = SimpleGraph::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(i, j);
                    }
                }
            }
            assert_eq!(automorphism_trivial(&g).unwrap(), brute_trivial(&g), "{:?}", g.edges());
        }
    }

    #[test]
    fn four_point_examples() {
        let k48: Vec<_> = (0..4).flat_map(|i| (4..12).map(move |j| (i, j))).collect();
        assert_eq!(four_point_witness(&SimpleGraph::from_edges(12, &k48)), None);
        let k66: Vec<_> = (0..12)
            .flat_map(|i| (i + 1..12).map(move |j| (i, j)))
            .filter(|&(i, j)| (i < 6) == (j < 6))
            .collect();
        assert_eq!(four_point_witness(&SimpleGraph::from_edges(12, &k66)), None);
        let path: Vec<_> = (0..11).map(|i| (i, i + 1)).collect();
        let g = SimpleGraph::from_edges(12, &path);
        let (a, b, c, d) = four_point_witness(&g).unwrap();
        assert!(g.has_edge(a, b) && !g.has_edge(b, c) && !g.has_edge(c, d) && !g.has_edge(d, a));
    }

    #[test]
    fn candidates_have_the_stated_shape() {
        let s = build_regular_candidate(13, Shape::TwoRow, 2).unwrap();
        let g = s.underlying_graph();
        assert_eq!((g.edge_count(), g.max_valency()), (16, 4));
        let s = build_regular_candidate(12, Shape::TwoRow, 3).unwrap();
        let g = s.underlying_graph();
        assert_eq!((g.edge_count(), g.max_valency()), (14, 3));
        assert!(build_regular_candidate(13, Shape::Hook, 5).unwrap().is_antisymmetric());
        assert!(build_regular_candidate(12, Shape::Hook, 2).is_err());
        assert!(build_regular_candidate(11, Shape::TwoRow, 3).is_err());
    }

    #[test]
    fn certificates() {
        let pairs = SpechtPairs::new(Shape::TwoRow, 13, 2).unwrap();
        let s = build_regular_candidate(13, Shape::TwoRow, 2).unwrap();
        assert!(certify_regular(&s, &pairs).unwrap().passed());
        let mut c = WeightedEdgeVector::new(Shape::TwoRow, 13, 2);
        c.add_alternating_cycle(&[0, 1, 2, 3], 1).unwrap();
        let cert = certify_regular(&c, &pairs).unwrap();
        assert!(cert.in_specht && !cert.automorphism_trivial && !cert.passed());
        let pairs = SpechtPairs::new(Shape::Hook, 12, 3).unwrap();
        let s = build_regular_candidate(12, Shape::Hook, 3).unwrap();
        assert!(certify_regular(&s, &pairs).unwrap().passed());
        let mut e = WeightedEdgeVector::new(Shape::Hook, 12, 3);
        e.add_edge(0, 1, 1).unwrap();
        assert!(!pairs.contains(&e));
        e.add_edge(1, 2, 1).unwrap();
        e.add_edge(2, 0, 1).unwrap();
        assert!(pairs.contains(&e));
    }

    #[test]
    fn witness_vector_detects_difference() {
        let pairs = SpechtPairs::new(Shape::Hook, 12, 5).unwrap();
        let s = build_regular_candidate(12, Shape::Hook, 5).unwrap();
        let g = Permutation::transposition(12, 0, 11);
        let t = s.sub(&s.permute(&g).scale(2));
        let w = four_point_witness(&t.underlying_graph()).unwrap();
        let sp = witness_vector(Shape::Hook, 12, 5, w);
        assert!(pairs.contains(&sp));
        assert_ne!(t.inner(&sp), 0);
        assert!(pairs.outside_perp(&t));
    }
}
