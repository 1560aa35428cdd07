//! Job specifications, module construction and serialisable verdict records.

use regorb_core::gfplin::is_prime;
use regorb_core::orbitengine::{self, Certificate, CoverageBudget, Outcome, Verdict};
use regorb_core::repkit::{self, an_constituents, MeatAxeBudget, Representation};
use regorb_core::spechtmod::{build_dmu, build_fdpm, Partition};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, Result, TOOL_VERSION};

pub const BASIS_NOTE: &str = "row vectors with right action v*M; D^mu in the pivot-polytabloid basis; \
fully deleted module in the basis e_i - e_{n-1}; witnesses are least in packed order sum x_i p^i";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModuleSource {
    Dmu { mu: Vec<usize> },
    Fdpm,
    /// A generator file, identified by the SHA-256 of its contents.
    External { path: String, sha256: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupChoice {
    Sn,
    An,
    Ext,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetSpec {
    pub max_vspace: u64,
    pub max_orbit: u64,
    pub samples: usize,
    pub threads: usize,
    pub huge: bool,
}

impl From<&CoverageBudget> for BudgetSpec {
    fn from(b: &CoverageBudget) -> Self {
        Self { max_vspace: b.max_vspace, max_orbit: b.max_orbit, samples: b.samples, threads: b.threads, huge: b.huge }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub n: usize,
    pub p: u32,
    pub module: ModuleSource,
    pub group: GroupChoice,
    pub sign: bool,
    pub scalars: u32,
    pub budget: BudgetSpec,
    pub seed: u64,
}

/// Command-line description of a job before validation.
#[derive(Debug, Clone, Copy)]
pub struct JobRequest<'a> {
    pub n: Option<usize>,
    pub p: Option<u32>,
    /// `dmu`, `fdpm` or `ext:PATH`.
    pub module: &'a str,
    pub mu: Option<&'a str>,
    pub group: GroupChoice,
    pub sign: bool,
    pub scalars: u32,
}

impl JobSpec {
    /// External modules read `n` and `p` from the file.
    pub fn new(req: JobRequest<'_>, budget: &CoverageBudget) -> Result<Self> {
        let JobRequest { n, p, module, mu, group, sign, scalars } = req;
        let (module, n, p) = if let Some(path) = module.strip_prefix("ext:") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read module file {path}: {e}")))?;
            let rep = repkit::parse_rep(&text)?;
            let sha256 = hex::encode(Sha256::digest(text.as_bytes()));
            (ModuleSource::External { path: path.to_string(), sha256 }, rep.n(), rep.p)
        } else {
            let n = n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
            let p = p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
            let source = match module {
                "dmu" => {
                    let mu = mu.ok_or_else(|| CliError::Usage("--mu is required for --module dmu".into()))?;
                    let mu: Partition = mu.parse().map_err(|e| CliError::Parse(format!("--mu: {e}")))?;
                    ModuleSource::Dmu { mu: mu.parts().to_vec() }
                }
                "fdpm" => ModuleSource::Fdpm,
                other => return Err(CliError::Usage(format!("unknown module source {other:?}"))),
            };
            (source, n, p)
        };
        let job = Self {
            n,
            p,
            module,
            group,
            sign,
            scalars,
            budget: BudgetSpec::from(budget),
            seed: budget.seed,
        };
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !is_prime(self.p) {
            return usage(format!("p = {} is not prime", self.p));
        }
        if self.scalars == 0 || !(self.p - 1).is_multiple_of(self.scalars) {
            return usage(format!("scalar order {} does not divide p - 1 = {}", self.scalars, self.p - 1));
        }
        let external = matches!(self.module, ModuleSource::External { .. });
        if external != (self.group == GroupChoice::Ext) {
            return usage("--group ext goes with --module ext:PATH and only with it".into());
        }
        if self.sign && external {
            return usage("--sign needs a module of S_n".into());
        }
        if let ModuleSource::Dmu { mu } = &self.module {
            if mu.iter().sum::<usize>() != self.n {
                return usage(format!("{mu:?} is not a partition of n = {}", self.n));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form; the cache key.
    pub fn key(&self) -> String {
        let json = serde_json::to_string(self).expect("serialisable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn coverage_budget(&self) -> CoverageBudget {
        CoverageBudget {
            max_vspace: self.budget.max_vspace,
            max_orbit: self.budget.max_orbit,
            samples: self.budget.samples,
            seed: self.seed,
            threads: self.budget.threads,
            huge: self.budget.huge,
        }
    }

    /// The representation of `G`. For `A_n` with a split restriction this is the first
    /// constituent; the other is its `S_n`-conjugate and has the same orbit structure.
    pub fn build(&self) -> Result<Representation> {
        let mut rep = match &self.module {
            ModuleSource::Dmu { mu } => build_dmu(&Partition::new(mu.clone())?, self.p)?,
            ModuleSource::Fdpm => build_fdpm(self.n, self.p)?,
            ModuleSource::External { path, sha256 } => {
                let text = std::fs::read_to_string(path)?;
                if hex::encode(Sha256::digest(text.as_bytes())) != *sha256 {
                    return Err(CliError::Usage(format!("{path} changed since the job was created")));
                }
                repkit::parse_rep(&text)?
            }
        };
        if self.sign {
            rep = repkit::tensor_sign(&rep)?;
        }
        if self.group == GroupChoice::An {
            let budget = MeatAxeBudget { seed: self.seed, ..MeatAxeBudget::default() };
            rep = an_constituents(&rep, &budget)?.swap_remove(0);
        }
        if self.scalars > 1 || rep.group.scalar_order > 1 {
            rep = repkit::scalar_extension(&rep, self.scalars)?;
        }
        Ok(rep)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInfo {
    pub label: String,
    pub dim: usize,
    pub group: String,
    pub group_order: String,
}

impl ModuleInfo {
    pub fn of(rep: &Representation) -> Self {
        Self { label: rep.label.clone(), dim: rep.dim, group: rep.group.name(), group_order: rep.order().to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CertificateView {
    Pigeonhole { v_size: String, g_order: String },
    FullCoverage { covered_count: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum OutcomeView {
    Regular { witness: Vec<u32>, orbit_size: String },
    NoRegular { certificate: CertificateView },
    Undecided { v_size: String, g_order: String, strong_bound: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictView {
    #[serde(flatten)]
    pub outcome: OutcomeView,
    pub method: String,
    pub strong_bound: Option<String>,
    pub seed: u64,
    pub max_vspace: u64,
    pub max_orbit: u64,
    pub threads: usize,
    pub elapsed_ms: u128,
}

impl From<&Verdict> for VerdictView {
    fn from(v: &Verdict) -> Self {
        let outcome = match &v.outcome {
            Outcome::Regular { witness, orbit_size } => {
                OutcomeView::Regular { witness: witness.entries().to_vec(), orbit_size: orbit_size.to_string() }
            }
            Outcome::NoRegular(Certificate::Pigeonhole { v_size, g_order }) => OutcomeView::NoRegular {
                certificate: CertificateView::Pigeonhole { v_size: v_size.to_string(), g_order: g_order.to_string() },
            },
            Outcome::NoRegular(Certificate::FullCoverage { covered_count }) => OutcomeView::NoRegular {
                certificate: CertificateView::FullCoverage { covered_count: covered_count.to_string() },
            },
            Outcome::Undecided(s) => OutcomeView::Undecided {
                v_size: s.v_size.to_string(),
                g_order: s.g_order.to_string(),
                strong_bound: s.strong_bound.as_ref().map(ToString::to_string),
            },
        };
        let pr = &v.provenance;
        Self {
            outcome,
            method: pr.method.clone(),
            strong_bound: v.strong_bound.as_ref().map(ToString::to_string),
            seed: pr.seed,
            max_vspace: pr.max_vspace,
            max_orbit: pr.max_orbit,
            threads: pr.threads,
            elapsed_ms: pr.elapsed_ms,
        }
    }
}

impl VerdictView {
    pub fn label(&self) -> &'static str {
        match self.outcome {
            OutcomeView::Regular { .. } => "Regular",
            OutcomeView::NoRegular { .. } => "NoRegular",
            OutcomeView::Undecided { .. } => "Undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub key: String,
    pub job: JobSpec,
    pub module: ModuleInfo,
    pub verdict: VerdictView,
    pub tool_version: String,
    pub timestamp: String,
    pub basis_note: String,
}

pub fn run_job(job: &JobSpec) -> Result<VerdictRecord> {
    let rep = job.build()?;
    let verdict = orbitengine::verdict(&rep, &job.coverage_budget())?;
    Ok(VerdictRecord {
        key: job.key(),
        job: job.clone(),
        module: ModuleInfo::of(&rep),
        verdict: VerdictView::from(&verdict),
        tool_version: TOOL_VERSION.to_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
        basis_note: BASIS_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(mu: &str, p: u32, group: GroupChoice, a: u32) -> Result<JobSpec> {
        let n = mu.split(',').filter_map(|x| x.parse::<usize>().ok()).sum();
        let req = JobRequest { n: Some(n), p: Some(p), module: "dmu", mu: Some(mu), group, sign: false, scalars: a };
        JobSpec::new(req, &CoverageBudget::default())
    }

    #[test]
    fn key_is_stable_and_discriminating() {
        let a = job("3,2", 2, GroupChoice::Sn, 1).unwrap();
        let b = job("3,2", 2, GroupChoice::Sn, 1).unwrap();
        assert_eq!(a.key(), b.key());
        assert_ne!(a.key(), job("3,2", 3, GroupChoice::Sn, 1).unwrap().key());
        assert_eq!(a.key().len(), 64);
    }

    #[test]
    fn validation() {
        assert!(matches!(job("3,2", 3, GroupChoice::Sn, 3), Err(CliError::Usage(_))));
        assert!(matches!(job("3,2", 4, GroupChoice::Sn, 1), Err(CliError::Usage(_))));
        assert!(matches!(job("3,x", 2, GroupChoice::Sn, 1), Err(CliError::Parse(_)) | Err(CliError::Usage(_))));
    }

    #[test]
    fn scalar_sensitivity() {
        let a1 = run_job(&job("3,1,1", 3, GroupChoice::An, 1).unwrap()).unwrap();
        let a2 = run_job(&job("3,1,1", 3, GroupChoice::An, 2).unwrap()).unwrap();
        assert_eq!(a1.verdict.label(), "Regular");
        assert_eq!(a2.verdict.label(), "NoRegular");
        let back: VerdictRecord = serde_json::from_str(&serde_json::to_string(&a1).unwrap()).unwrap();
        assert_eq!(back, a1);
    }
}
