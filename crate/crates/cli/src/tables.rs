//! Embedded expected results and their replay.

use std::fmt;

use rayon::prelude::*;
use regorb_core::orbitengine::{self, CoverageBudget, Outcome};
use regorb_core::permsym::GroupKind;
use regorb_core::repkit::{self, an_constituents, MeatAxeBudget, Representation};
use regorb_core::spechtmod::{associate_partition, build_dmu, build_fdpm, fdpm_dim, Partition};
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

pub const TABLES_JSON: &str = include_str!("../data/tables.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Sn,
    An,
}

/// Which scalar subgroups `F_a <= F_p^*` a row covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarRule {
    All,
    /// Only the full group `F_p^*`.
    Full,
    /// Every `a > 1`.
    Nontrivial,
}

impl ScalarRule {
    pub fn matches(self, a: u32, p: u32) -> bool {
        match self {
            ScalarRule::All => true,
            ScalarRule::Full => a == p - 1,
            ScalarRule::Nontrivial => a > 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub h: Side,
    pub d: usize,
    pub scalars: ScalarRule,
    pub mode: String,
}

/// Modules `D^mu` (or constituents of their restriction) with no regular orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpechtRow {
    pub n: usize,
    pub p: u32,
    pub mu: Vec<usize>,
    pub m_mu: Option<Vec<usize>>,
    pub entries: Vec<Entry>,
}

/// A row of the classification over all covering groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRow {
    pub n: usize,
    pub p: u32,
    pub group: String,
    pub d: Vec<usize>,
    /// `specht`, `builtin-sl2-5` or `external`.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub version: u32,
    pub no_regular_specht: Vec<SpechtRow>,
    pub no_regular_all: Vec<CoverRow>,
}

impl Tables {
    pub fn embedded() -> Self {
        serde_json::from_str(TABLES_JSON).expect("embedded tables parse")
    }

    pub fn specht_row(&self, n: usize, p: u32, mu: &[usize]) -> Option<&SpechtRow> {
        self.no_regular_specht.iter().find(|r| r.n == n && r.p == p && r.mu == mu)
    }

    /// Expected outcome for a module isomorphic to `D^label` (S side) or a constituent of
    /// `D^label` restricted to `A_n`, with scalars of order `a`.
    pub fn expects_no_regular(&self, key: &ModuleKey, side: Side, d: usize, a: u32) -> bool {
        let ModuleKey { n, p, label, assoc } = key;
        let (n, p) = (*n, *p);
        let hook = Partition::new(vec![n - 1, 1]).expect("n >= 2");
        if *label == hook || *assoc == hook {
            return !(side == Side::An && p as usize == n - 1 && a == 1);
        }
        let candidates: Vec<&Partition> = match side {
            Side::Sn => vec![label],
            Side::An => vec![label, assoc],
        };
        candidates.into_iter().any(|mu| {
            self.specht_row(n, p, mu.parts()).is_some_and(|row| {
                row.entries.iter().any(|e| e.h == side && e.d == d && e.scalars.matches(a, p))
            })
        })
    }
}

/// A module up to isomorphism: `D^label`, whose tensor with the sign is `D^assoc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleKey {
    pub n: usize,
    pub p: u32,
    pub label: Partition,
    pub assoc: Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Mismatch,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellResult {
    pub n: usize,
    pub p: u32,
    pub module: String,
    pub group: String,
    pub d: usize,
    pub expected: String,
    pub got: String,
    pub method: String,
    pub status: Status,
}

impl fmt::Display for CellResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Mismatch => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(
            f,
            "{tag} n={} p={} {} G={} d={} expected={} got={} ({})",
            self.n, self.p, self.module, self.group, self.d, self.expected, self.got, self.method
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub cells: Vec<CellResult>,
    pub passed: usize,
    pub mismatched: usize,
    pub skipped: usize,
}

impl VerifySummary {
    fn from_cells(cells: Vec<CellResult>) -> Self {
        let count = |s| cells.iter().filter(|c| c.status == s).count();
        let (passed, mismatched, skipped) = (count(Status::Pass), count(Status::Mismatch), count(Status::Skipped));
        Self { cells, passed, mismatched, skipped }
    }

    pub fn ok(&self) -> bool {
        self.mismatched == 0
    }
}

/// A module to replay, with the scalar orders to try and its expected-result key.
#[derive(Debug, Clone)]
struct ModuleJob {
    n: usize,
    p: u32,
    name: String,
    side: Side,
    key: ModuleKey,
    build: Build,
    /// Only constituents of these dimensions are replayed; all when empty.
    dims: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Build {
    Dmu { mu: Partition, sign: bool },
    Fdpm { sign: bool },
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|a| m.is_multiple_of(*a)).collect()
}

fn primes_up_to(n: usize) -> Vec<u32> {
    (2..=n as u32).filter(|&q| regorb_core::gfplin::is_prime(q)).collect()
}

fn side_modules(base: &Representation, side: Side, seed: u64) -> Result<Vec<Representation>> {
    match side {
        Side::Sn => Ok(vec![base.clone()]),
        Side::An => Ok(an_constituents(base, &MeatAxeBudget { seed, ..MeatAxeBudget::default() })?),
    }
}

impl ModuleJob {
    fn base(&self) -> Result<Representation> {
        let (rep, sign) = match &self.build {
            Build::Dmu { mu, sign } => (build_dmu(mu, self.p)?, *sign),
            Build::Fdpm { sign } => (build_fdpm(self.n, self.p)?, *sign),
        };
        Ok(if sign { repkit::tensor_sign(&rep)? } else { rep })
    }

    fn run(&self, tables: &Tables, budget: &CoverageBudget) -> Vec<CellResult> {
        let failure = |d: usize, group: String, msg: String| CellResult {
            n: self.n,
            p: self.p,
            module: self.name.clone(),
            group,
            d,
            expected: "-".into(),
            got: "error".into(),
            method: msg,
            status: Status::Mismatch,
        };
        let pieces = match self.base().and_then(|b| side_modules(&b, self.side, budget.seed)) {
            Ok(p) => p,
            Err(e) => return vec![failure(0, format!("{:?}", self.side), e.to_string())],
        };
        // two constituents are conjugate under S_n, so one suffices
        let split = pieces.len() == 2;
        let mut out = Vec::new();
        for piece in &pieces[..if split { 1 } else { pieces.len() }] {
            if !self.dims.is_empty() && !self.dims.contains(&piece.dim) {
                continue;
            }
            for a in divisors(self.p - 1) {
                let group = format!("{}{}{}", if self.side == Side::Sn { "S" } else { "A" }, self.n, scalar_suffix(a));
                let rep = match repkit::scalar_extension(piece, a) {
                    Ok(r) => r,
                    Err(e) => {
                        out.push(failure(piece.dim, group, e.to_string()));
                        continue;
                    }
                };
                let expect_none = tables.expects_no_regular(&self.key, self.side, piece.dim, a);
                let expected = if expect_none { "NoRegular" } else { "Regular" };
                let module = if split { format!("{} (one of two conjugate constituents)", self.name) } else { self.name.clone() };
                match orbitengine::verdict(&rep, budget) {
                    Ok(v) => {
                        let got = match v.outcome {
                            Outcome::Regular { .. } => "Regular",
                            Outcome::NoRegular(_) => "NoRegular",
                            Outcome::Undecided(_) => "Undecided",
                        };
                        out.push(CellResult {
                            n: self.n,
                            p: self.p,
                            module,
                            group,
                            d: rep.dim,
                            expected: expected.into(),
                            got: got.into(),
                            method: v.provenance.method.clone(),
                            status: if got == expected { Status::Pass } else { Status::Mismatch },
                        });
                    }
                    Err(e) => out.push(failure(rep.dim, group, e.to_string())),
                }
            }
        }
        out
    }
}

fn scalar_suffix(a: u32) -> String {
    if a == 1 {
        String::new()
    } else {
        format!("xC{a}")
    }
}

fn partition_name(mu: &Partition) -> String {
    format!("D({})", mu.parts().iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn exhaustive_jobs(n: usize) -> Result<Vec<ModuleJob>> {
    let mut jobs = Vec::new();
    for p in primes_up_to(n) {
        for mu in Partition::all(n) {
            if !mu.is_p_regular(p) || regorb_core::spechtmod::dmu_dim(&mu, p)? <= 1 {
                continue;
            }
            let assoc = if p == 2 { mu.clone() } else { associate_partition(&mu, p)? };
            let signs: &[bool] = if p == 2 { &[false] } else { &[false, true] };
            for &sign in signs {
                let label = if sign { assoc.clone() } else { mu.clone() };
                let name = format!("{}{}", partition_name(&mu), if sign { " x sgn" } else { "" });
                jobs.push(ModuleJob {
                    n,
                    p,
                    name,
                    side: Side::Sn,
                    key: ModuleKey { n, p, label, assoc: if sign { mu.clone() } else { assoc.clone() } },
                    build: Build::Dmu { mu: mu.clone(), sign },
                    dims: Vec::new(),
                });
            }
            jobs.push(ModuleJob {
                n,
                p,
                name: partition_name(&mu),
                side: Side::An,
                key: ModuleKey { n, p, label: mu.clone(), assoc: assoc.clone() },
                build: Build::Dmu { mu: mu.clone(), sign: false },
                dims: Vec::new(),
            });
        }
    }
    Ok(jobs)
}

fn row_jobs(tables: &Tables, n: usize, huge: bool) -> Result<Vec<ModuleJob>> {
    let mut jobs = Vec::new();
    for row in tables.no_regular_specht.iter().filter(|r| r.n == n) {
        let mu = Partition::new(row.mu.clone())?;
        let assoc = row.m_mu.clone().map(Partition::new).transpose()?.unwrap_or_else(|| mu.clone());
        for side in [Side::Sn, Side::An] {
            let entries: Vec<&Entry> = row.entries.iter().filter(|e| e.h == side).collect();
            if entries.is_empty() || (!huge && entries.iter().any(|e| e.mode.starts_with("huge"))) {
                continue;
            }
            jobs.push(ModuleJob {
                n,
                p: row.p,
                name: partition_name(&mu),
                side,
                key: ModuleKey { n, p: row.p, label: mu.clone(), assoc: assoc.clone() },
                build: Build::Dmu { mu: mu.clone(), sign: false },
                dims: entries.iter().map(|e| e.d).collect(),
            });
        }
    }
    Ok(jobs)
}

fn huge_skips(tables: &Tables, n: usize) -> Vec<CellResult> {
    let mut out = Vec::new();
    for row in tables.no_regular_specht.iter().filter(|r| r.n == n) {
        for e in row.entries.iter().filter(|e| e.mode.starts_with("huge")) {
            out.push(CellResult {
                n,
                p: row.p,
                module: partition_name(&Partition::new(row.mu.clone()).expect("embedded partition")),
                group: format!("{:?}{n}", e.h).replace("Sn", "S").replace("An", "A"),
                d: e.d,
                expected: "NoRegular".into(),
                got: "-".into(),
                method: "needs --huge".into(),
                status: Status::Skipped,
            });
        }
    }
    out
}

fn fdpm_jobs(n: usize) -> Vec<ModuleJob> {
    let hook = Partition::new(vec![n - 1, 1]).expect("n >= 2");
    let mut jobs = Vec::new();
    for p in primes_up_to(n) {
        let signs: &[bool] = if p == 2 { &[false] } else { &[false, true] };
        for &sign in signs {
            jobs.push(ModuleJob {
                n,
                p,
                name: format!("fdpm{}", if sign { " x sgn" } else { "" }),
                side: Side::Sn,
                key: ModuleKey { n, p, label: hook.clone(), assoc: hook.clone() },
                build: Build::Fdpm { sign },
                dims: Vec::new(),
            });
        }
        jobs.push(ModuleJob {
            n,
            p,
            name: "fdpm".into(),
            side: Side::An,
            key: ModuleKey { n, p, label: hook.clone(), assoc: hook.clone() },
            build: Build::Fdpm { sign: false },
            dims: vec![fdpm_dim(n, p)],
        });
    }
    jobs
}

fn cover_rows(tables: &Tables, max_n: usize, budget: &CoverageBudget) -> Vec<CellResult> {
    let mut out = Vec::new();
    for row in tables.no_regular_all.iter().filter(|r| r.n <= max_n) {
        let base = CellResult {
            n: row.n,
            p: row.p,
            module: format!("cover row d={:?}", row.d),
            group: row.group.clone(),
            d: row.d[0],
            expected: "NoRegular".into(),
            got: "-".into(),
            method: String::new(),
            status: Status::Skipped,
        };
        match row.source.as_str() {
            "external" => out.push(CellResult { method: "requires external generators".into(), ..base }),
            "specht" => {
                let listed = row.d.iter().all(|&d| {
                    tables
                        .no_regular_specht
                        .iter()
                        .any(|r| r.n == row.n && r.p == row.p && r.entries.iter().any(|e| e.d == d))
                });
                let status = if listed { Status::Pass } else { Status::Mismatch };
                out.push(CellResult { got: "listed".into(), method: "cross-reference to Specht rows".into(), status, ..base });
            }
            _ => {
                let rep = repkit::builtin_sl2_5();
                let checked = repkit::faithfulness_check(&rep).map_err(CliError::from).and_then(|faithful| {
                    let v = orbitengine::verdict(&rep, budget)?;
                    Ok((faithful, v))
                });
                let (got, method, status) = match checked {
                    Ok((faithful, v)) => {
                        let ok = faithful && v.is_no_regular() && matches!(rep.group.kind, GroupKind::External(_));
                        let got = if v.is_no_regular() { "NoRegular" } else { "Regular" };
                        (got.to_string(), format!("builtin SL2(5), faithful={faithful}, {}", v.provenance.method), if ok { Status::Pass } else { Status::Mismatch })
                    }
                    Err(e) => ("error".into(), e.to_string(), Status::Mismatch),
                };
                out.push(CellResult { got, method, status, ..base });
            }
        }
    }
    out
}

/// Replays every in-budget cell for `5 <= n <= max_n`: all modules exhaustively for
/// `n <= 6`, the listed rows and the fully deleted module law beyond that.
pub fn verify_tables(max_n: usize, budget: &CoverageBudget, jobs: usize) -> Result<VerifySummary> {
    let tables = Tables::embedded();
    let mut work = Vec::new();
    let mut skipped = Vec::new();
    for n in 5..=max_n {
        if n <= 6 {
            work.extend(exhaustive_jobs(n)?);
        } else {
            work.extend(row_jobs(&tables, n, budget.huge)?);
            work.extend(fdpm_jobs(n));
            if !budget.huge {
                skipped.extend(huge_skips(&tables, n));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Failure(e.to_string()))?;
    let mut cells: Vec<CellResult> =
        pool.install(|| work.par_iter().map(|j| j.run(&tables, budget)).collect::<Vec<_>>()).into_iter().flatten().collect();
    cells.extend(skipped);
    cells.extend(cover_rows(&tables, max_n, budget));
    Ok(VerifySummary::from_cells(cells))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse_and_expectations() {
        let t = Tables::embedded();
        assert_eq!(t.version, 1);
        let k = |n: usize, p: u32, a: &str, b: &str| ModuleKey { n, p, label: a.parse().unwrap(), assoc: b.parse().unwrap() };
        assert!(t.expects_no_regular(&k(6, 5, "3,3", "2,2,2"), Side::Sn, 5, 1));
        assert!(!t.expects_no_regular(&k(6, 5, "3,3", "2,2,2"), Side::An, 5, 1));
        assert!(t.expects_no_regular(&k(6, 5, "3,3", "2,2,2"), Side::An, 5, 2));
        assert!(!t.expects_no_regular(&k(5, 3, "3,1,1", "3,1,1"), Side::An, 6, 1));
        assert!(t.expects_no_regular(&k(5, 3, "3,1,1", "3,1,1"), Side::An, 6, 2));
        assert!(!t.expects_no_regular(&k(6, 5, "5,1", "2,1,1,1,1"), Side::An, 5, 1));
        assert!(t.expects_no_regular(&k(6, 5, "5,1", "2,1,1,1,1"), Side::An, 5, 2));
        assert!(t.expects_no_regular(&k(7, 2, "4,3", "4,3"), Side::An, 4, 1));
        assert!(!t.expects_no_regular(&k(7, 2, "4,3", "4,3"), Side::An, 8, 1));
    }
}
