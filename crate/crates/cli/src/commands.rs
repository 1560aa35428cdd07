//! Report builders behind the subcommands; each returns a serialisable value.

use std::fmt::Write as _;

use regorb_core::boundlib::{self, BoundReport};
use regorb_core::graphcert::{self, Certificate, ObligationReport, Shape, SpechtPairs};
use regorb_core::orbitengine::{min_trivializing_tuple, CoverageBudget};
use regorb_core::permsym::factorial;
use regorb_core::spechtmod::{associate_partition, rn_class, Partition, SpechtModule, DEFAULT_TABLOID_BUDGET};
use serde::{Deserialize, Serialize};

use crate::job::JobSpec;
use crate::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub mu: Vec<usize>,
    pub dim: Option<usize>,
    pub rn_class: Option<usize>,
    pub m_mu: Option<Vec<usize>>,
    pub note: Option<String>,
}

/// Every `p`-regular partition of `n` with `dim D^mu`, its `R_n(m)` class and `m(mu)`.
pub fn dims(n: usize, p: u32) -> Result<Vec<DimRow>> {
    if !regorb_core::gfplin::is_prime(p) {
        return Err(CliError::Usage(format!("p = {p} is not prime")));
    }
    let mut out = Vec::new();
    for mu in Partition::all(n).into_iter().filter(|m| m.is_p_regular(p)) {
        let row = match SpechtModule::with_budget(&mu, p, DEFAULT_TABLOID_BUDGET) {
            Ok(m) => {
                let assoc = associate_partition(&mu, p).ok();
                DimRow {
                    mu: mu.parts().to_vec(),
                    dim: Some(m.dmu_dim()),
                    rn_class: assoc.as_ref().and_then(|_| rn_class(&mu, p).ok()),
                    m_mu: assoc.map(|a| a.parts().to_vec()),
                    note: None,
                }
            }
            Err(e) => DimRow { mu: mu.parts().to_vec(), dim: None, rn_class: None, m_mu: None, note: Some(e.to_string()) },
        };
        out.push(row);
    }
    Ok(out)
}

pub fn format_dims(n: usize, p: u32, rows: &[DimRow]) -> String {
    let mut s = format!("p-regular partitions of {n}, p = {p}\n");
    let show = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    for r in rows {
        let dim = r.dim.map_or("-".to_string(), |d| d.to_string());
        let class = r.rn_class.map_or("-".to_string(), |c| c.to_string());
        let assoc = r.m_mu.as_deref().map_or("-".to_string(), show);
        let _ = write!(s, "({})\tdim {dim}\tR_n({class})\tm(mu) = ({assoc})", show(&r.mu));
        if let Some(note) = &r.note {
            let _ = write!(s, "\t{note}");
        }
        s.push('\n');
    }
    s
}

fn is_prime_power(q: u64) -> bool {
    let Some(r) = (2..=q).find(|d| q.is_multiple_of(*d)) else { return false };
    let mut x = q;
    while x.is_multiple_of(r) {
        x /= r;
    }
    x == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundGroup {
    Sn,
    An,
    CoverSn,
    CoverAn,
}

impl std::str::FromStr for BoundGroup {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sn" => Ok(Self::Sn),
            "an" => Ok(Self::An),
            "2sn" | "2.sn" => Ok(Self::CoverSn),
            "2an" | "2.an" => Ok(Self::CoverAn),
            _ => Err(CliError::Usage(format!("unknown group {s:?}; expected sn, an, 2sn or 2an"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsView {
    pub n: usize,
    pub q: u64,
    pub group: BoundGroup,
    pub group_order: String,
    pub center_order: u64,
    pub eq1: (f64, u64),
    pub eq2: Option<(f64, u64)>,
    pub eq2_with_q: Option<(f64, u64)>,
    pub eq2_best_floor: Option<u64>,
    pub eq3: Option<(f64, u64)>,
    pub f: Option<String>,
    pub f_p: Option<String>,
    pub h_assoc: (f64, u64),
    pub h_spin: (f64, u64),
    pub delta: Option<u64>,
    pub kappa: u32,
}

pub fn bounds(n: usize, q: u64, group: BoundGroup) -> Result<BoundsView> {
    if n < 5 {
        return Err(CliError::Usage("bounds need n >= 5".into()));
    }
    if !is_prime_power(q) {
        return Err(CliError::Usage(format!("q = {q} is not a prime power")));
    }
    let (order, center) = match group {
        BoundGroup::Sn => (factorial(n), 1),
        BoundGroup::An => (factorial(n) / 2u32, 1),
        BoundGroup::CoverSn => (factorial(n) * 2u32, 2),
        BoundGroup::CoverAn => (factorial(n), 2),
    };
    let r: BoundReport = boundlib::bound_report(n, q, &order, center)?;
    let delta = match group {
        BoundGroup::CoverSn => r.delta_sn,
        BoundGroup::CoverAn => r.delta_an,
        _ => None,
    };
    Ok(BoundsView {
        n,
        q,
        group,
        group_order: order.to_string(),
        center_order: center,
        eq1: r.eq1,
        eq2: r.eq2,
        eq2_with_q: r.eq2_q,
        eq2_best_floor: r.eq2_best,
        eq3: r.eq3,
        f: r.f.map(|x| x.to_string()),
        f_p: r.f_p.map(|x| x.to_string()),
        h_assoc: r.h_assoc,
        h_spin: r.h_spin,
        delta,
        kappa: r.kappa,
    })
}

pub fn format_bounds(b: &BoundsView) -> String {
    let pair = |x: &Option<(f64, u64)>| x.map_or("-".to_string(), |(v, f)| format!("{v:.4} (floor {f})"));
    let mut s = format!("bounds for n = {}, q = {}, |G| = {}, |Z| = {}\n", b.n, b.q, b.group_order, b.center_order);
    let _ = writeln!(s, "eq1 (n-1) log_q |G|        {}", pair(&Some(b.eq1)));
    let _ = writeln!(s, "eq2 with |Z|               {}", pair(&b.eq2));
    let _ = writeln!(s, "eq2 with q-1 (g(q,n))      {}", pair(&b.eq2_with_q));
    let _ = writeln!(s, "eq2 smaller floor          {}", b.eq2_best_floor.map_or("-".into(), |x| x.to_string()));
    let _ = writeln!(s, "eq3 (n/2) log_q(2 n! |Z|)  {}", pair(&b.eq3));
    let _ = writeln!(s, "f(n)                       {}", b.f.as_deref().unwrap_or("-"));
    let _ = writeln!(s, "f_p(n)                     {}", b.f_p.as_deref().unwrap_or("-"));
    let _ = writeln!(s, "h assoc                    {}", pair(&Some(b.h_assoc)));
    let _ = writeln!(s, "h spin                     {}", pair(&Some(b.h_spin)));
    let _ = writeln!(s, "delta                      {}", b.delta.map_or("-".into(), |x| x.to_string()));
    let _ = writeln!(s, "kappa                      {}", b.kappa);
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCertView {
    pub n: usize,
    pub p: u32,
    pub shape: String,
    pub certified: bool,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<((usize, usize), u32)>,
    pub edge_count: usize,
    pub edge_bound: usize,
    pub max_valency: usize,
    pub mu_p_regular: bool,
    pub in_specht: bool,
    pub automorphism_trivial: bool,
    pub search_nodes: u64,
    pub samples: u64,
    pub seed: u64,
    pub violations: u64,
    pub samples_without_witness: u64,
}

pub fn parse_shape(s: &str) -> Result<Shape> {
    match s.to_ascii_lowercase().as_str() {
        "two-row" | "tworow" | "n-2,2" => Ok(Shape::TwoRow),
        "hook" | "n-2,1,1" => Ok(Shape::Hook),
        _ => Err(CliError::Usage(format!("unknown shape {s:?}; expected two-row or hook"))),
    }
}

pub fn graph_cert(n: usize, p: u32, shape: Shape, samples: u64, seed: u64) -> Result<GraphCertView> {
    if !regorb_core::gfplin::is_prime(p) {
        return Err(CliError::Usage(format!("p = {p} is not prime")));
    }
    let s = graphcert::build_regular_candidate(n, shape, p)?;
    let pairs = SpechtPairs::new(shape, n, p)?;
    let cert: Certificate = graphcert::certify_regular(&s, &pairs)?;
    let report = if samples > 0 {
        graphcert::sample_obligation(&s, &pairs, samples, seed)
    } else {
        ObligationReport { samples: 0, violations: 0, without_witness: 0 }
    };
    Ok(GraphCertView {
        n,
        p,
        shape: match shape {
            Shape::TwoRow => "two-row".into(),
            Shape::Hook => "hook".into(),
        },
        certified: cert.passed() && report.violations == 0,
        edges: cert.edges.iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
        weights: s.entries().map(|((i, j), w)| ((i + 1, j + 1), w)).collect(),
        edge_count: cert.edge_count,
        edge_bound: cert.edge_bound,
        max_valency: cert.max_valency,
        mu_p_regular: cert.mu_p_regular,
        in_specht: cert.in_specht,
        automorphism_trivial: cert.automorphism_trivial,
        search_nodes: cert.search_nodes,
        samples: report.samples,
        seed,
        violations: report.violations,
        samples_without_witness: report.without_witness,
    })
}

pub fn format_graph_cert(c: &GraphCertView) -> String {
    let mark = |b: bool| if b { "yes" } else { "no" };
    let mut s = format!("graph certificate n = {}, p = {}, shape {}\n", c.n, c.p, c.shape);
    let _ = writeln!(s, "edges (1-based)            {:?}", c.edges);
    let _ = writeln!(s, "edge count                 {} (bound {})", c.edge_count, c.edge_bound);
    let _ = writeln!(s, "max valency                {} (bound 4)", c.max_valency);
    let _ = writeln!(s, "partition p-regular        {}", mark(c.mu_p_regular));
    let _ = writeln!(s, "in Specht module           {}", mark(c.in_specht));
    let _ = writeln!(s, "automorphism group trivial {} ({} search nodes)", mark(c.automorphism_trivial), c.search_nodes);
    let _ = writeln!(s, "sampled obligations        {} (seed {}), violations {}", c.samples, c.seed, c.violations);
    let _ = writeln!(s, "certified                  {}", mark(c.certified));
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSizeView {
    pub module: String,
    pub dim: usize,
    pub group_order: String,
    /// Shortest tuple length with trivial pointwise stabiliser.
    pub t: usize,
    /// Base size of the affine group `V:G`.
    pub base_size: usize,
    pub greedy_t: usize,
    pub witness: Vec<Vec<u32>>,
}

pub fn base_size(job: &JobSpec, t_max: usize) -> Result<BaseSizeView> {
    let rep = job.build()?;
    let budget: CoverageBudget = job.coverage_budget();
    let r = min_trivializing_tuple(&rep, t_max, &budget)?;
    Ok(BaseSizeView {
        module: rep.label.clone(),
        dim: rep.dim,
        group_order: rep.order().to_string(),
        t: r.t,
        base_size: r.base_size,
        greedy_t: r.greedy_t,
        witness: r.vectors.iter().map(|v| v.entries().to_vec()).collect(),
    })
}
