//! Command-line front end: instance generation, solving, benchmarking, and
//! FASTA assembly.

use crate::cost::quantum_cost_with_reps;
use crate::hybrid::{
    solve, Solution, SolveError, SolveMode, CLASSICAL_MAX_N, HYBRID_MAX_N,
};
use crate::instance::{preprocess, InstanceError, Preprocessed};
use crate::io::{parse_fasta, parse_instance_text, write_instance_text, FormatError};
use crate::oracle::ORACLE_MAX_N;
use crate::plan::DEFAULT_ALPHA;
use crate::qmax::{Level, QMaxConfig, QMaxMode};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("oracle limit: brute mode enumerates at most {ORACLE_MAX_N} strings")]
    OracleLimit,
    #[error("{0}")]
    SizeLimit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 0 ok, 1 I/O or internal, 2 bad input, 3 oracle limit, 4 size limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::OracleLimit => 3,
            CliError::SizeLimit(_) => 4,
            CliError::Io(_) => 1,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> CliError {
        match e {
            InstanceError::TooManyStrings(_) => CliError::SizeLimit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> CliError {
        match e {
            SolveError::OracleLimit => CliError::OracleLimit,
            SolveError::TooLarge { .. } => CliError::SizeLimit(e.to_string()),
            SolveError::TotalLengthTooLarge => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ModeArg {
    Brute,
    #[default]
    Classical,
    Hybrid,
}

impl From<ModeArg> for SolveMode {
    fn from(m: ModeArg) -> SolveMode {
        match m {
            ModeArg::Brute => SolveMode::Brute,
            ModeArg::Classical => SolveMode::Classical,
            ModeArg::Hybrid => SolveMode::Hybrid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum FormatArg {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "ssp", version, about = "Exact shortest-superstring solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SolverFlags {
    /// brute enumerates permutations, classical fills the full table, hybrid
    /// runs the nested searches over a threshold-limited table
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    /// split parameter of the hybrid plan
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// inject per-invocation failures into the searches
    #[arg(long)]
    pub noisy: bool,
    /// failure probability of a single search invocation
    #[arg(long, default_value_t = 0.1)]
    pub fail_prob: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// override the 2n repetition schedule of the boosted inner levels
    #[arg(long)]
    pub boost_reps: Option<u64>,
}

impl SolverFlags {
    fn validate(&self) -> Result<(), CliError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Input(format!("alpha {} outside (0,1)", self.alpha)));
        }
        if !(0.0..=1.0).contains(&self.fail_prob) {
            return Err(CliError::Input(format!("fail-prob {} outside [0,1]", self.fail_prob)));
        }
        Ok(())
    }

    fn qmax_config(&self) -> QMaxConfig {
        QMaxConfig {
            mode: if self.noisy { QMaxMode::Noisy } else { QMaxMode::Exact },
            fail_prob: self.fail_prob,
            seed: self.seed,
            boost_reps: self.boost_reps,
            boost_final: None,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random instance file: n strings of length k
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "ACGT")]
        alphabet: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance file and print the result to stdout
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        flags: SolverFlags,
        /// output format on stdout
        #[arg(long, value_enum, default_value_t)]
        out: FormatArg,
    },
    /// Sweep instance sizes, solve each trial, and write a CSV
    Bench {
        /// sizes to run: comma-separated values or inclusive a-b ranges, e.g. 8,10-12,16
        #[arg(long)]
        n_range: String,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value = "ACGT")]
        alphabet: String,
        #[command(flatten)]
        flags: SolverFlags,
        /// CSV output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Assemble FASTA records into a superstring
    Assemble {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        flags: SolverFlags,
        /// output format on stdout
        #[arg(long, value_enum, default_value_t)]
        out: FormatArg,
    },
}

#[derive(Serialize)]
struct PerLevelOut {
    nested: u64,
    middle: u64,
    #[serde(rename = "final")]
    final_level: u64,
}

#[derive(Serialize)]
struct QueriesOut {
    quantum_charged: u64,
    classical_entries: u64,
    per_level: PerLevelOut,
}

#[derive(Serialize)]
struct SolveOut {
    superstring: String,
    length: usize,
    /// 0-based indices into the original input order.
    path: Vec<usize>,
    weight: i64,
    mode: String,
    alpha: f64,
    seed: u64,
    queries: QueriesOut,
    /// Original indices dropped by duplicate/containment filtering.
    filtered: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    records: Option<Vec<RecordOut>>,
}

#[derive(Serialize)]
struct RecordOut {
    id: String,
    index: usize,
}

fn as_u64(x: u128, what: &str) -> Result<u64, CliError> {
    u64::try_from(x).map_err(|_| CliError::Internal(format!("{what} exceeds u64")))
}

fn solve_output(
    sol: &Solution,
    pre: &Preprocessed,
    flags: &SolverFlags,
    records: Option<Vec<RecordOut>>,
) -> Result<SolveOut, CliError> {
    let path = sol
        .path
        .vertices()
        .iter()
        .map(|&v| pre.survivor_originals[v])
        .collect();
    Ok(SolveOut {
        superstring: sol.superstring.clone(),
        length: sol.length(),
        path,
        weight: sol.weight.value().ok_or_else(|| CliError::Internal("no path".into()))?,
        mode: sol.mode.name().to_string(),
        alpha: flags.alpha,
        seed: flags.seed,
        queries: QueriesOut {
            quantum_charged: as_u64(sol.ledger.quantum_queries(), "ledger")?,
            classical_entries: as_u64(sol.table_entries, "table entries")?,
            per_level: PerLevelOut {
                nested: as_u64(sol.ledger.level(Level::Nested), "ledger")?,
                middle: as_u64(sol.ledger.level(Level::Middle), "ledger")?,
                final_level: as_u64(sol.ledger.level(Level::Final), "ledger")?,
            },
        },
        filtered: pre.filtered(),
        records,
    })
}

fn render(out: &SolveOut, format: FormatArg) -> String {
    match format {
        FormatArg::Json => serde_json::to_string(out).expect("serializable"),
        FormatArg::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "superstring: {}", out.superstring);
            let _ = writeln!(s, "length: {}", out.length);
            let _ = writeln!(s, "weight: {}", out.weight);
            let path: Vec<String> = out.path.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "path: {}", path.join(" "));
            let _ = writeln!(s, "mode: {}  alpha: {}  seed: {}", out.mode, out.alpha, out.seed);
            let _ = writeln!(
                s,
                "queries: quantum={} entries={} nested={} middle={} final={}",
                out.queries.quantum_charged,
                out.queries.classical_entries,
                out.queries.per_level.nested,
                out.queries.per_level.middle,
                out.queries.per_level.final_level,
            );
            let filtered: Vec<String> = out.filtered.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "filtered: {}", filtered.join(" "));
            if let Some(records) = &out.records {
                for r in records {
                    let _ = writeln!(s, "record: {} -> {}", r.id, r.index);
                }
            }
            s.trim_end().to_string()
        }
    }
}

fn size_limit_for(mode: SolveMode) -> usize {
    match mode {
        SolveMode::Brute => ORACLE_MAX_N,
        SolveMode::Classical => CLASSICAL_MAX_N,
        SolveMode::Hybrid => HYBRID_MAX_N,
    }
}

pub fn random_strings(n: usize, k: usize, alphabet: &[char], seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (0..k).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect())
        .collect()
}

fn parse_alphabet(alphabet: &str) -> Result<Vec<char>, CliError> {
    let chars: Vec<char> = alphabet.chars().collect();
    if chars.len() < 2 {
        return Err(CliError::Input("alphabet needs at least 2 symbols".into()));
    }
    if chars.iter().any(|c| !c.is_ascii_alphanumeric()) {
        return Err(CliError::Input("alphabet must be [A-Za-z0-9]".into()));
    }
    let mut dedup = chars.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != chars.len() {
        return Err(CliError::Input("alphabet has repeated symbols".into()));
    }
    Ok(chars)
}

fn cmd_gen(n: usize, k: usize, alphabet: &str, seed: u64, out: &Path) -> Result<(), CliError> {
    if n == 0 || k == 0 {
        return Err(CliError::Input("n and k must be at least 1".into()));
    }
    let alphabet = parse_alphabet(alphabet)?;
    let strings = random_strings(n, k, &alphabet, seed);
    std::fs::write(out, write_instance_text(&strings))?;
    Ok(())
}

fn load_and_solve(
    raw: &[String],
    flags: &SolverFlags,
) -> Result<(Solution, Preprocessed), CliError> {
    flags.validate()?;
    let pre = preprocess(raw)?;
    let sol = solve(&pre.instance, flags.mode.into(), &flags.qmax_config(), flags.alpha)?;
    Ok((sol, pre))
}

fn cmd_solve(input: &Path, flags: &SolverFlags, format: FormatArg) -> Result<String, CliError> {
    let text = std::fs::read_to_string(input)?;
    let raw = parse_instance_text(&text)?;
    let (sol, pre) = load_and_solve(&raw, flags)?;
    let out = solve_output(&sol, &pre, flags, None)?;
    Ok(render(&out, format))
}

fn cmd_assemble(input: &Path, flags: &SolverFlags, format: FormatArg) -> Result<String, CliError> {
    flags.validate()?;
    let text = std::fs::read_to_string(input)?;
    let records = parse_fasta(&text)?;
    let raw: Vec<String> = records.iter().map(|r| r.sequence.clone()).collect();
    let pre = preprocess(&raw)?;

    let limit = size_limit_for(flags.mode.into());
    if pre.instance.n() > limit {
        return Err(CliError::SizeLimit(format!(
            "{} records remain after filtering; {} mode handles at most {} (try fewer reads or a coarser split)",
            pre.instance.n(),
            SolveMode::from(flags.mode).name(),
            limit,
        )));
    }

    let sol = solve(&pre.instance, flags.mode.into(), &flags.qmax_config(), flags.alpha)?;
    let record_map = records
        .iter()
        .enumerate()
        .map(|(index, r)| RecordOut { id: r.id.clone(), index })
        .collect();
    let out = solve_output(&sol, &pre, flags, Some(record_map))?;
    Ok(render(&out, format))
}

/// Parse "8,10-12,16" into sorted, deduplicated sizes.
pub fn parse_n_range(spec: &str) -> Result<Vec<usize>, CliError> {
    let mut ns = Vec::new();
    for item in spec.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        match item.split_once('-') {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad_range(spec))?;
                let b: usize = b.trim().parse().map_err(|_| bad_range(spec))?;
                if a > b {
                    return Err(bad_range(spec));
                }
                ns.extend(a..=b);
            }
            None => ns.push(item.parse().map_err(|_| bad_range(spec))?),
        }
    }
    ns.sort_unstable();
    ns.dedup();
    Ok(ns)
}

fn bad_range(spec: &str) -> CliError {
    CliError::Input(format!("cannot parse n-range {spec:?}"))
}

/// Per-trial seed derived from the base seed; splitmix64-style mixing.
fn trial_seed(base: u64, n: usize, trial: u32) -> u64 {
    let mut z = base
        .wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(1 + n as u64))
        .wrapping_add(0xbf58476d1ce4e5b9u64.wrapping_mul(1 + u64::from(trial)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    n_range: &str,
    trials: u32,
    k: usize,
    alphabet: &str,
    flags: &SolverFlags,
    out: &Path,
) -> Result<(), CliError> {
    flags.validate()?;
    if k == 0 {
        return Err(CliError::Input("k must be at least 1".into()));
    }
    let alphabet = parse_alphabet(alphabet)?;
    let ns = parse_n_range(n_range)?;
    if let Some(&max) = ns.iter().max() {
        if max > HYBRID_MAX_N {
            return Err(CliError::SizeLimit(format!(
                "bench size {max} exceeds the hybrid limit {HYBRID_MAX_N}"
            )));
        }
    }

    let mut csv = String::new();
    csv.push_str("n,alpha,trial,seed,opt_weight,classical_entries,quantum_charged,predicted_quantum,match");
    if flags.noisy {
        csv.push_str(",success");
    }
    csv.push('\n');

    for &n in &ns {
        for trial in 0..trials {
            let seed = trial_seed(flags.seed, n, trial);
            let raw = random_strings(n, k, &alphabet, seed);
            let pre = preprocess(&raw)?;
            let mut cfg = flags.qmax_config();
            cfg.seed = seed;
            let sol = solve(&pre.instance, SolveMode::Hybrid, &cfg, flags.alpha)?;

            let reps_inner = cfg.inner_reps(pre.instance.n());
            let predicted: BigUint = if sol.used_fallback {
                BigUint::zero()
            } else {
                quantum_cost_with_reps(pre.instance.n(), flags.alpha, reps_inner, 1).total()
            };
            let measured = BigUint::from(sol.ledger.quantum_queries());
            let matches = predicted == measured;

            let opt_weight = if flags.noisy {
                crate::hybrid::solve_classical(&pre.instance)?.weight
            } else {
                sol.weight
            };
            let _ = write!(
                csv,
                "{n},{alpha},{trial},{seed},{w},{entries},{measured},{predicted},{matches}",
                alpha = flags.alpha,
                w = opt_weight.expect_finite(),
                entries = sol.table_entries,
            );
            if flags.noisy {
                let _ = write!(csv, ",{}", sol.weight == opt_weight);
            }
            csv.push('\n');
        }
    }
    std::fs::write(out, csv)?;
    Ok(())
}

/// Execute a parsed command; the output string (if any) goes to stdout.
pub fn run(cli: Cli) -> Result<Option<String>, CliError> {
    match &cli.command {
        Command::Gen { n, k, alphabet, seed, out } => {
            cmd_gen(*n, *k, alphabet, *seed, out)?;
            Ok(None)
        }
        Command::Solve { input, flags, out } => cmd_solve(input, flags, *out).map(Some),
        Command::Assemble { input, flags, out } => cmd_assemble(input, flags, *out).map(Some),
        Command::Bench { n_range, trials, k, alphabet, flags, out } => {
            cmd_bench(n_range, *trials, *k, alphabet, flags, out)?;
            Ok(None)
        }
    }
}
