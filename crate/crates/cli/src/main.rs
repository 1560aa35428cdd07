use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regorb_cli::cache::Cache;
use regorb_cli::commands::{self, BoundGroup};
use regorb_cli::config::Config;
use regorb_cli::job::{run_job, GroupChoice, JobRequest, JobSpec};
use regorb_cli::tables::verify_tables;
use regorb_cli::{CliError, Result};
use serde::Serialize;

/// Regular orbits of symmetric and alternating groups on modules over prime fields.
#[derive(Debug, Parser)]
#[command(name = "regorb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Seed for every randomised step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON-lines verdict cache.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Allow coverage bitmaps up to 2^32 vectors.
    #[arg(long, global = true)]
    huge: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Args)]
struct ModuleArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    /// Partition for `--module dmu`, e.g. 3,2.
    #[arg(long)]
    mu: Option<String>,
    /// dmu, fdpm or ext:PATH.
    #[arg(long, default_value = "dmu")]
    module: String,
    /// sn, an or ext.
    #[arg(long, default_value = "sn")]
    group: String,
    /// Order of the scalar subgroup of F_p^*.
    #[arg(long, default_value_t = 1)]
    scalars: u32,
    /// Tensor with the sign representation.
    #[arg(long)]
    sign: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimensions of D^mu for every p-regular partition of n.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
    /// Decide whether G has a regular orbit on the module.
    Verdict(ModuleArgs),
    /// Numeric bounds with exact floors.
    Bounds {
        #[arg(long)]
        n: usize,
        /// Field size q (a prime power).
        #[arg(long)]
        p: u64,
        /// sn, an, 2sn or 2an.
        #[arg(long, default_value = "sn")]
        group: String,
    },
    /// Build and certify the graph vector for (n-2,2) or (n-2,1,1).
    GraphCert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        /// two-row or hook.
        #[arg(long, default_value = "two-row")]
        shape: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Base size of the affine group V:G.
    BaseSize {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 6)]
        t_max: usize,
    },
    /// Replay the embedded expected results.
    VerifyTables {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

fn parse_group(s: &str) -> Result<GroupChoice> {
    match s.to_ascii_lowercase().as_str() {
        "sn" => Ok(GroupChoice::Sn),
        "an" => Ok(GroupChoice::An),
        "ext" => Ok(GroupChoice::Ext),
        _ => Err(CliError::Usage(format!("unknown group {s:?}; expected sn, an or ext"))),
    }
}

fn job_of(m: &ModuleArgs, config: &Config, huge: bool) -> Result<JobSpec> {
    let req = JobRequest {
        n: m.n,
        p: m.p,
        module: &m.module,
        mu: m.mu.as_deref(),
        group: parse_group(&m.group)?,
        sign: m.sign,
        scalars: m.scalars,
    };
    JobSpec::new(req, &config.budget(huge))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text(value));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let c = &cli.common;
    let config = Config::load()?.with_overrides(c.seed, c.cache.clone(), c.jobs);
    let seed = config.budget(false).seed;
    match &cli.command {
        Command::Dims { n, p } => {
            let rows = commands::dims(*n, *p)?;
            emit(c.json, &rows, |r| commands::format_dims(*n, *p, r))
        }
        Command::Verdict(m) => {
            let job = job_of(m, &config, c.huge)?;
            let (line, record, hit) = match &config.cache_path {
                Some(path) => {
                    let r = Cache::new(path).get_or_run(&job)?;
                    (r.line, r.record, r.hit)
                }
                None => {
                    let record = run_job(&job)?;
                    (serde_json::to_string(&record)?, record, false)
                }
            };
            if c.json {
                println!("{line}");
            } else {
                let v = &record.verdict;
                println!("{} on {} (dim {}, |G| = {})", v.label(), record.module.group, record.module.dim, record.module.group_order);
                println!("module   {}", record.module.label);
                println!("method   {} ({} ms, seed {})", v.method, v.elapsed_ms, v.seed);
                println!("detail   {}", serde_json::to_string(&v.outcome)?);
                if hit {
                    println!("cache    hit {}", record.key);
                }
            }
            if record.verdict.label() == "Undecided" {
                return Err(CliError::Budget("coverage budget exhausted; rerun with --huge or larger budgets".into()));
            }
            Ok(())
        }
        Command::Bounds { n, p, group } => {
            let g: BoundGroup = group.parse()?;
            let b = commands::bounds(*n, *p, g)?;
            emit(c.json, &b, commands::format_bounds)
        }
        Command::GraphCert { n, p, shape, samples } => {
            let shape = commands::parse_shape(shape)?;
            let cert = commands::graph_cert(*n, *p, shape, *samples, seed)?;
            emit(c.json, &cert, commands::format_graph_cert)?;
            if cert.certified {
                Ok(())
            } else {
                Err(CliError::Mismatch("certificate hypotheses not met".into()))
            }
        }
        Command::BaseSize { module, t_max } => {
            let job = job_of(module, &config, c.huge)?;
            let r = commands::base_size(&job, *t_max)?;
            emit(c.json, &r, |r| {
                format!(
                    "{} (dim {}, |G| = {}): base size {} (tuple length {}, greedy {})\nwitness {:?}\n",
                    r.module, r.dim, r.group_order, r.base_size, r.t, r.greedy_t, r.witness
                )
            })
        }
        Command::VerifyTables { max_n } => {
            let budget = config.budget(c.huge);
            let summary = verify_tables(*max_n, &budget, c.jobs.unwrap_or(1))?;
            emit(c.json, &summary, |s| {
                let mut out: String = s.cells.iter().map(|c| format!("{c}\n")).collect();
                out.push_str(&format!("passed {}, mismatched {}, skipped {}\n", s.passed, s.mismatched, s.skipped));
                out
            })?;
            if summary.ok() {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!("{} cells disagree with the expected results", summary.mismatched)))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("regorb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
