//! The batch experiment driver behind the `bbg` binary.
//!
//! Every subcommand builds a black box from a backend spec (`sym:6`,
//! `gl:2:3`, `sl:2:5`, `psl2:7`, `units:561`, products `A*B`, powers `A^k`),
//! runs one oracle or test, and emits a single JSON report:
//!
//! ```text
//! { "tool", "version", "config", "seed", "multiplications", "results",
//!   "side_files", "timing" }
//! ```
//!
//! `config` is the full [`ExperimentConfig`], so `bbg replay REPORT.json`
//! reruns the experiment. Wall-clock data lives only under `timing`;
//! everything else is a deterministic function of the config.
//! `multiplications` counts black-box products spent by the oracles
//! themselves, not by the brute-force analysis done afterwards.
//!
//! Element literals, with several separated by `;` in generator lists:
//!
//! * permutations: cycle notation `(1 2 3)(4 5)`, `()` for the identity, or
//!   one-line images `[2,3,1,5,4]`; points are 1-based and products of
//!   cycles compose left to right;
//! * matrices: row-major residues `[1,1,0,1]` or nested rows `[[1,1],[0,1]]`;
//! * modular units: plain integers;
//! * direct products: components joined by `|`, e.g. `(1 2) | 3`.
//!
//! With `--threads N` the trials of a sampling subcommand are split into N
//! near-equal shares (the first `trials mod N` threads take one extra) and
//! thread `t` runs its own oracle seeded with `seed ^ t`. Results are merged
//! in thread order, so a report depends on the seed and N but not on
//! scheduling.
//!
//! Censuses and distributions are written next to the report as CSV side
//! files (`encoding,count` or `encoding,mass`, hex encodings in byte order).
//!
//! Exit status: 0 success, 2 configuration error, 3 oracle starvation or
//! exhausted involution budget, 4 numeric or size guard exceeded, 1 anything
//! else.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::backends::{make_backend, BackendKind, ModularUnits, Permutation};
use crate::blackbox::{BlackBox, RandomSource, UniformSource};
use crate::centralizer::{
    find_involution, odd_order_count, odd_order_share, transposition_discard, zeta0,
    CentralizerOracle, OracleMode, ShareEstimate, DEFAULT_DISCARD, DEFAULT_REJECTION_BUDGET,
};
use crate::element::GroupElement;
use crate::enumerate::{centraliser, normal_closure, subgroup_closure};
use crate::error::{Error, Result};
use crate::membership::{contains, DEFAULT_SAMPLES};
use crate::normal_closure::ac_init;
use crate::primality::{factor_from_involution, miller_rabin_on, Witness};
use crate::randgen::{default_burn_in, default_k, pra_init, OutputMode, PraState};
use crate::stats::{
    chi_square_uniform, conjugation_invariance, convolution_power, mixing_time,
    random_transpositions, tv_distance, uniform_transpositions, Distribution, SampleCensus,
    Weight, DEFAULT_MIXING_CAP,
};

/// Largest group or subgroup the driver will enumerate for its analyses.
pub const ENUMERATION_LIMIT: usize = 100_000;

/// Groups up to this order get exact rational convolutions.
pub const EXACT_ARITHMETIC_LIMIT: usize = 5040;

/// Conjugators used for the invariance check are capped at this many.
const MAX_CONJUGATORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(
    name = "bbg",
    version,
    about = "Black-box group oracles and exact statistics on small groups",
    after_help = "Run `bbg replay REPORT.json` to rerun the experiment embedded in a report."
)]
pub struct ExperimentConfig {
    /// Master seed; falls back to $BBG_SEED, then 0.
    #[arg(long, env = "BBG_SEED", default_value_t = 0, global = true)]
    pub seed: u64,

    /// Split trials across this many independently seeded oracles.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,

    /// Report path; CSV side files are written next to it. Stdout if absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = ReportFormat::Json, global = true)]
    pub format: ReportFormat,

    #[command(subcommand)]
    pub experiment: Experiment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    /// One line of JSON.
    Json,
    /// Indented JSON.
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Experiment {
    /// Product-replacement random elements of `<gens>`.
    Pra(PraArgs),
    /// Andrews-Curtis random elements of a normal closure.
    NormalClosure(NormalClosureArgs),
    /// Random elements of the centraliser of an involution.
    Centralizer(CentralizerArgs),
    /// One-sided membership test in a normal subgroup.
    Membership(MembershipArgs),
    /// Miller-Rabin as involution hunting in (Z/nZ)*.
    MillerRabin(MillerRabinArgs),
    /// Split n from a nontrivial square root of 1.
    Factor(FactorArgs),
    /// Share of x with i i^x of odd order.
    OddOrderShare(OddOrderShareArgs),
    /// Exact total variation of a convolution power from uniform.
    TvExact(TvExactArgs),
    /// Least k with P^{*k} within a threshold of uniform.
    MixingTime(MixingTimeArgs),
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Pra(_) => "pra",
            Experiment::NormalClosure(_) => "normal-closure",
            Experiment::Centralizer(_) => "centralizer",
            Experiment::Membership(_) => "membership",
            Experiment::MillerRabin(_) => "miller-rabin",
            Experiment::Factor(_) => "factor",
            Experiment::OddOrderShare(_) => "odd-order-share",
            Experiment::TvExact(_) => "tv-exact",
            Experiment::MixingTime(_) => "mixing-time",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PraArgs {
    #[arg(long)]
    pub backend: BackendKind,
    /// Generators, separated by `;`.
    #[arg(long)]
    pub gens: String,
    /// Tuple length; default max(10, #gens + 5).
    #[arg(long)]
    pub k: Option<usize>,
    /// Steps before the first output; default max(100, 20 k).
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long, default_value = "cumulative")]
    pub mode: OutputMode,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct NormalClosureArgs {
    #[arg(long)]
    pub backend: BackendKind,
    /// Generators of the ambient group, separated by `;`.
    #[arg(long)]
    pub ambient_gens: String,
    /// Normal generators, separated by `;`.
    #[arg(long)]
    pub normal_gens: String,
    /// Tuple length; default max(10, #normal gens + 5).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    /// Outputs skipped before sampling.
    #[arg(long, default_value_t = 1000)]
    pub discard: usize,
    /// Probability of a conjugated move; 0.5 weights all eight moves equally.
    #[arg(long, default_value_t = 0.5)]
    pub conjugation_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CentralizerArgs {
    #[arg(long)]
    pub backend: BackendKind,
    /// The involution; found with i(x) on random x if absent.
    #[arg(long)]
    pub involution: Option<String>,
    /// Draw x by product replacement on these generators instead of the
    /// backend's uniform sampler.
    #[arg(long)]
    pub ambient_gens: Option<String>,
    #[arg(long, default_value = "odd")]
    pub mode: OracleMode,
    #[arg(long, default_value_t = DEFAULT_REJECTION_BUDGET)]
    pub rejection_budget: usize,
    /// Initial outputs skipped in even and mixed modes. Defaults to
    /// ceil(m ln m / 2) for a transposition in sym:n (m = n - 2), else 100.
    #[arg(long)]
    pub discard: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    /// Draws allowed when searching for an involution.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MembershipArgs {
    #[arg(long)]
    pub backend: BackendKind,
    /// Generators of the normal subgroup Y, separated by `;`.
    #[arg(long)]
    pub subgroup_gens: String,
    /// The element u to test.
    #[arg(long)]
    pub element: String,
    /// Maximum number of elements of Y drawn.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MillerRabinArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 20)]
    pub rounds: u32,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FactorArgs {
    #[arg(long)]
    pub n: u64,
    /// A residue x with x^2 = 1 (mod n), x != 1, n - 1.
    #[arg(long)]
    pub involution: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OddOrderShareArgs {
    #[arg(long)]
    pub backend: BackendKind,
    #[arg(long)]
    pub involution: Option<String>,
    #[arg(long)]
    pub ambient_gens: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Also count exactly over the whole group.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// Uniform on the transpositions of sym:n.
    Transpositions,
    /// Identity with mass 1/n, each transposition 2/n^2.
    RandomTranspositions,
    /// Uniform on the whole group.
    Uniform,
}

impl Measure {
    fn convention(self) -> &'static str {
        match self {
            Measure::Transpositions => {
                "uniform on transpositions; P^{*k} lives on the coset of sign (-1)^k, \
                 so tv_to_parity_coset compares with the uniform distribution on that coset"
            }
            Measure::RandomTranspositions => {
                "two positions swapped independently: identity 1/n, each transposition 2/n^2"
            }
            Measure::Uniform => "uniform on the whole group",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct TvExactArgs {
    #[arg(long)]
    pub backend: BackendKind,
    #[arg(long, value_enum)]
    pub dist: Measure,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MixingTimeArgs {
    #[arg(long)]
    pub backend: BackendKind,
    #[arg(long, value_enum)]
    pub dist: Measure,
    #[arg(long, default_value_t = 1.0 / std::f64::consts::E)]
    pub threshold: f64,
    #[arg(long, default_value_t = DEFAULT_MIXING_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// A CSV document attached to a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Attachment {
    /// Inserted before `.csv` in the side-file name.
    pub suffix: String,
    pub csv: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: ExperimentConfig,
    pub seed: u64,
    pub multiplications: u64,
    pub results: Value,
    pub side_files: Vec<PathBuf>,
    pub timing: Timing,
    #[serde(skip)]
    pub attachments: Vec<Attachment>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(match self.config.format {
            ReportFormat::Json => serde_json::to_string(self)?,
            ReportFormat::Pretty => serde_json::to_string_pretty(self)?,
        })
    }

    /// The report with `timing` removed; equal configs give equal values.
    pub fn deterministic_value(&self) -> Result<Value> {
        let mut v = serde_json::to_value(self)?;
        if let Some(map) = v.as_object_mut() {
            map.remove("timing");
        }
        Ok(v)
    }

    /// Writes the report and its side files to `config.output`, or the
    /// report alone to stdout.
    pub fn write(&self) -> Result<()> {
        let text = self.to_json()?;
        match &self.config.output {
            Some(path) => {
                std::fs::write(path, text + "\n")?;
                for (a, p) in self.attachments.iter().zip(&self.side_files) {
                    std::fs::write(p, &a.csv)?;
                }
            }
            None => println!("{text}"),
        }
        Ok(())
    }
}

fn side_file_path(output: &Path, suffix: &str) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    output.with_file_name(format!("{stem}.{suffix}.csv"))
}

/// Parses `bbg` arguments (including the program name).
pub fn parse_args<I, T>(args: I) -> std::result::Result<ExperimentConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    ExperimentConfig::try_parse_from(args)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::Parse { .. }
        | Error::BadEncoding { .. }
        | Error::NotAnElement(_)
        | Error::EmptyGenerators
        | Error::TupleTooSmall { .. }
        | Error::NotInvolution
        | Error::TrivialInvolution { .. }
        | Error::Singular
        | Error::Json(_) => 2,
        Error::Starvation { .. } | Error::BudgetExhausted { .. } => 3,
        Error::SizeGuard { .. }
        | Error::NonConvergence { .. }
        | Error::NotEnumerable(_)
        | Error::InsufficientSamples { .. } => 4,
        _ => 1,
    }
}

/// Reruns the config embedded in a report.
pub fn replay(report_json: &str) -> Result<Report> {
    let v: Value = serde_json::from_str(report_json)?;
    let config = v
        .get("config")
        .cloned()
        .ok_or_else(|| Error::invalid("report has no config"))?;
    run(&serde_json::from_value(config)?)
}

/// Entry point for the binary: parses `args`, runs, writes the report and
/// returns the process exit status.
pub fn main_with_args(args: Vec<String>) -> i32 {
    if args.get(1).map(String::as_str) == Some("replay") {
        let Some(path) = args.get(2) else {
            eprintln!("usage: bbg replay REPORT.json");
            return 2;
        };
        let outcome = std::fs::read_to_string(path)
            .map_err(Error::from)
            .and_then(|text| replay(&text))
            .and_then(|mut r| {
                r.config.output = None;
                r.side_files.clear();
                r.write()
            });
        return match outcome {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("bbg replay: {e}");
                exit_code(&e)
            }
        };
    }
    let config = match parse_args(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&config).and_then(|r| r.write()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("bbg {}: {e}", config.experiment.name());
            exit_code(&e)
        }
    }
}

struct Outcome {
    multiplications: u64,
    results: Value,
    attachments: Vec<Attachment>,
}

pub fn run(config: &ExperimentConfig) -> Result<Report> {
    if config.threads == 0 {
        return Err(Error::invalid("--threads must be at least 1"));
    }
    let start = Instant::now();
    let out = match &config.experiment {
        Experiment::Pra(a) => run_pra(config, a)?,
        Experiment::NormalClosure(a) => run_normal_closure(config, a)?,
        Experiment::Centralizer(a) => run_centralizer(config, a)?,
        Experiment::Membership(a) => run_membership(config, a)?,
        Experiment::MillerRabin(a) => run_miller_rabin(config, a)?,
        Experiment::Factor(a) => run_factor(a)?,
        Experiment::OddOrderShare(a) => run_odd_order_share(config, a)?,
        Experiment::TvExact(a) => run_tv_exact(a)?,
        Experiment::MixingTime(a) => run_mixing_time(a)?,
    };
    let side_files = match &config.output {
        Some(path) => out
            .attachments
            .iter()
            .map(|a| side_file_path(path, &a.suffix))
            .collect(),
        None => Vec::new(),
    };
    Ok(Report {
        tool: "bbg".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        seed: config.seed,
        multiplications: out.multiplications,
        results: out.results,
        side_files,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
        attachments: out.attachments,
    })
}

fn parse_list(bb: &BlackBox, literals: &str) -> Result<Vec<GroupElement>> {
    let out = literals
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| bb.parse(s))
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    Ok(out)
}

/// `total` split into `threads` shares, larger shares first.
fn shares(total: u64, threads: usize) -> Vec<u64> {
    let t = threads as u64;
    (0..t).map(|i| total / t + u64::from(i < total % t)).collect()
}

/// Runs `work(seed ^ t, share_t)` for each thread `t` and returns the results
/// in thread order.
fn split_trials<T, F>(seed: u64, threads: usize, total: u64, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> Result<T> + Sync,
{
    let plan = shares(total, threads);
    if threads == 1 {
        return Ok(vec![work(seed, total)?]);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = plan
            .iter()
            .enumerate()
            .map(|(t, &n)| {
                let work = &work;
                s.spawn(move || work(seed ^ t as u64, n))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

fn collect_census(
    source: &mut dyn RandomSource,
    n: u64,
) -> Result<SampleCensus> {
    let mut census = SampleCensus::new();
    for _ in 0..n {
        census.record(source.next_element()?);
    }
    Ok(census)
}

fn merged(parts: Vec<SampleCensus>) -> SampleCensus {
    let mut all = SampleCensus::new();
    for p in &parts {
        all.merge(p);
    }
    all
}

fn census_attachment(census: &SampleCensus) -> Result<Attachment> {
    let mut buf = Vec::new();
    census.write_csv(&mut buf)?;
    Ok(Attachment {
        suffix: "census".into(),
        csv: String::from_utf8(buf).expect("csv is utf-8"),
    })
}

fn distribution_attachment<W: Weight>(d: &Distribution<W>) -> Result<Attachment> {
    let mut buf = Vec::new();
    d.write_csv(&mut buf)?;
    Ok(Attachment {
        suffix: "distribution".into(),
        csv: String::from_utf8(buf).expect("csv is utf-8"),
    })
}

/// Compares a census with the uniform distribution on `target`.
fn uniformity_summary(
    bb: &BlackBox,
    census: &SampleCensus,
    target: &BTreeSet<GroupElement>,
) -> Result<Value> {
    let elements: Vec<GroupElement> = target.iter().cloned().collect();
    let uniform = Distribution::<f64>::uniform_on(bb, &elements)?;
    let tv = tv_distance(&census.distribution(bb)?, &uniform)?;
    let within = census.support().all(|g| target.contains(g));
    let chi = if within && target.len() >= 2 {
        match chi_square_uniform(census, target.len() as u64) {
            Ok(c) => serde_json::to_value(c)?,
            Err(e @ Error::InsufficientSamples { .. }) => json!({ "skipped": e.to_string() }),
            Err(e) => return Err(e),
        }
    } else {
        Value::Null
    };
    Ok(json!({
        "order": target.len(),
        "support_within_target": within,
        "tv_to_uniform": tv,
        "chi_square": chi,
    }))
}

/// `Ok(None)` when the set would exceed [`ENUMERATION_LIMIT`].
fn guarded<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::SizeGuard { .. } | Error::NotEnumerable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn sample_summary(census: &SampleCensus) -> Value {
    json!({ "samples": census.n_samples(), "distinct": census.support_len() })
}

fn run_pra(config: &ExperimentConfig, a: &PraArgs) -> Result<Outcome> {
    let bb = make_backend(&a.backend)?;
    let gens = parse_list(&bb, &a.gens)?;
    let k = a.k.unwrap_or_else(|| default_k(gens.len()));
    let burn_in = a.burn_in.unwrap_or_else(|| default_burn_in(k));
    let parts = split_trials(config.seed, config.threads, a.samples, |seed, n| {
        let mut state = pra_init(&bb, &gens, k, seed)?.with_mode(a.mode);
        state.burn_in(burn_in);
        collect_census(&mut state, n)
    })?;
    let census = merged(parts);
    let multiplications = bb.multiplications();
    let target = match guarded(subgroup_closure(&bb, &gens, ENUMERATION_LIMIT))? {
        Some(t) => uniformity_summary(&bb, &census, &t)?,
        None => Value::Null,
    };
    Ok(Outcome {
        multiplications,
        results: json!({
            "group": bb.name(),
            "k": k,
            "burn_in": burn_in,
            "mode": a.mode,
            "census": sample_summary(&census),
            "target": target,
        }),
        attachments: vec![census_attachment(&census)?],
    })
}

fn run_normal_closure(config: &ExperimentConfig, a: &NormalClosureArgs) -> Result<Outcome> {
    let bb = make_backend(&a.backend)?;
    let ambient = parse_list(&bb, &a.ambient_gens)?;
    let normal = parse_list(&bb, &a.normal_gens)?;
    let k = a.k.unwrap_or_else(|| default_k(normal.len()));
    let parts = split_trials(config.seed, config.threads, a.samples, |seed, n| {
        // The conjugator stream uses the complemented seed.
        let w = PraState::with_defaults(&bb, &ambient, !seed)?;
        let mut state =
            ac_init(&bb, w, &normal, k, seed)?.with_conjugation_probability(a.conjugation_probability)?;
        state.discard(a.discard)?;
        collect_census(&mut state, n)
    })?;
    let census = merged(parts);
    let multiplications = bb.multiplications();
    let target = match guarded(normal_closure(&bb, &ambient, &normal, ENUMERATION_LIMIT))? {
        Some(t) => uniformity_summary(&bb, &census, &t)?,
        None => Value::Null,
    };
    Ok(Outcome {
        multiplications,
        results: json!({
            "group": bb.name(),
            "k": k,
            "discard": a.discard,
            "conjugation_probability": a.conjugation_probability,
            "census": sample_summary(&census),
            "target": target,
        }),
        attachments: vec![census_attachment(&census)?],
    })
}

/// Source of the x's fed to the dihedral trick: product replacement on
/// `ambient_gens` when given, else the backend's uniform sampler.
fn x_source(bb: &BlackBox, ambient: &Option<Vec<GroupElement>>, seed: u64) -> Result<Box<dyn RandomSource>> {
    Ok(match ambient {
        Some(gens) => Box::new(PraState::with_defaults(bb, gens, seed)?),
        None => Box::new(UniformSource::new(bb, seed)),
    })
}

fn resolve_involution(
    bb: &BlackBox,
    literal: &Option<String>,
    ambient: &Option<Vec<GroupElement>>,
    seed: u64,
    budget: usize,
) -> Result<GroupElement> {
    match literal {
        Some(s) => {
            let i = bb.parse(s)?;
            if !bb.is_involution(&i) {
                return Err(Error::NotInvolution);
            }
            Ok(i)
        }
        // The search stream uses the complemented seed.
        None => find_involution(bb, &mut *x_source(bb, ambient, !seed)?, budget),
    }
}

fn is_transposition(bb: &BlackBox, i: &GroupElement) -> Option<usize> {
    let BackendKind::Permutation(n) = bb.name().parse().ok()? else {
        return None;
    };
    let p = Permutation::from_element(i);
    let cycles = p.cycles();
    (cycles.len() == 1 && cycles[0].len() == 2).then_some(n)
}

/// A small generating set of `elements`, chosen greedily in order.
fn greedy_generators(bb: &BlackBox, elements: &[GroupElement]) -> Result<Vec<GroupElement>> {
    let mut gens = Vec::new();
    let mut span: BTreeSet<GroupElement> = [bb.identity()].into();
    for c in elements {
        if gens.len() >= MAX_CONJUGATORS {
            break;
        }
        if !span.contains(c) {
            gens.push(c.clone());
            span = subgroup_closure(bb, &gens, ENUMERATION_LIMIT)?;
        }
    }
    Ok(gens)
}

fn run_centralizer(config: &ExperimentConfig, a: &CentralizerArgs) -> Result<Outcome> {
    let bb = make_backend(&a.backend)?;
    let ambient = a.ambient_gens.as_deref().map(|g| parse_list(&bb, g)).transpose()?;
    let i = resolve_involution(&bb, &a.involution, &ambient, config.seed, a.budget)?;
    let discard = a.discard.unwrap_or_else(|| match is_transposition(&bb, &i) {
        Some(n) => transposition_discard(n.saturating_sub(2)),
        None => DEFAULT_DISCARD,
    });
    let parts = split_trials(config.seed, config.threads, a.samples, |seed, n| {
        let mut oracle = CentralizerOracle::new(&bb, i.clone(), x_source(&bb, &ambient, seed)?, a.mode)?
            .with_rejection_budget(a.rejection_budget)
            .with_discard(discard);
        let census = collect_census(&mut oracle, n)?;
        Ok((census, oracle.draws()))
    })?;
    let draws: u64 = parts.iter().map(|(_, d)| d).sum();
    let census = merged(parts.into_iter().map(|(c, _)| c).collect());
    let multiplications = bb.multiplications();

    let mut analysis = Value::Null;
    if let Some(all) = guarded(bb.enumerate(ENUMERATION_LIMIT))? {
        let c = centraliser(&bb, &all, &i);
        let target: BTreeSet<GroupElement> = match a.mode {
            OracleMode::Odd | OracleMode::Mixed => c.iter().cloned().collect(),
            OracleMode::Even => {
                let values: BTreeSet<GroupElement> =
                    all.iter().filter_map(|x| zeta0(&bb, &i, x)).collect();
                let values: Vec<GroupElement> = values.into_iter().collect();
                subgroup_closure(&bb, &values, ENUMERATION_LIMIT)?
            }
        };
        let conjugators = greedy_generators(&bb, &c)?;
        analysis = json!({
            "group_order": all.len(),
            "centraliser_order": c.len(),
            "target": uniformity_summary(&bb, &census, &target)?,
            "conjugators": conjugators.len(),
            "conjugation_discrepancy": conjugation_invariance(&census, &bb, &conjugators)?,
        });
    }
    Ok(Outcome {
        multiplications,
        results: json!({
            "group": bb.name(),
            "involution": bb.format(&i),
            "mode": a.mode,
            "discard": if a.mode == OracleMode::Odd { 0 } else { discard },
            "rejection_budget": a.rejection_budget,
            "draws": draws,
            "census": sample_summary(&census),
            "analysis": analysis,
        }),
        attachments: vec![census_attachment(&census)?],
    })
}

fn run_membership(config: &ExperimentConfig, a: &MembershipArgs) -> Result<Outcome> {
    let bb = make_backend(&a.backend)?;
    let gens = parse_list(&bb, &a.subgroup_gens)?;
    let u = bb.parse(&a.element)?;
    let mut y = PraState::with_defaults(&bb, &gens, config.seed)?;
    let order = |x: &GroupElement| bb.order(x);
    let verdict = contains(&bb, &mut y, &order, &u, a.samples)?;
    Ok(Outcome {
        multiplications: bb.multiplications(),
        results: json!({
            "group": bb.name(),
            "element": bb.format(&u),
            "verdict": verdict,
        }),
        attachments: Vec::new(),
    })
}

fn run_miller_rabin(config: &ExperimentConfig, a: &MillerRabinArgs) -> Result<Outcome> {
    let units = ModularUnits::new(a.n)?;
    let bb = BlackBox::new(Box::new(units.clone()));
    let verdict = miller_rabin_on(&bb, &units, a.rounds, config.seed)?;
    let factors = match verdict.witness {
        Some(Witness::NontrivialInvolution { involution, .. }) => {
            Some(factor_from_involution(a.n, involution)?)
        }
        Some(Witness::NonUnit { gcd, .. }) => Some((gcd, a.n / gcd)),
        _ => None,
    };
    Ok(Outcome {
        multiplications: bb.multiplications(),
        results: json!({ "n": a.n, "verdict": verdict, "factors": factors }),
        attachments: Vec::new(),
    })
}

fn run_factor(a: &FactorArgs) -> Result<Outcome> {
    let (p, q) = factor_from_involution(a.n, a.involution)?;
    Ok(Outcome {
        multiplications: 0,
        results: json!({ "n": a.n, "involution": a.involution, "factors": [p, q] }),
        attachments: Vec::new(),
    })
}

fn run_odd_order_share(config: &ExperimentConfig, a: &OddOrderShareArgs) -> Result<Outcome> {
    let bb = make_backend(&a.backend)?;
    let ambient = a.ambient_gens.as_deref().map(|g| parse_list(&bb, g)).transpose()?;
    let i = resolve_involution(&bb, &a.involution, &ambient, config.seed, a.budget)?;
    let parts = split_trials(config.seed, config.threads, a.trials, |seed, n| {
        if n == 0 {
            return Ok(ShareEstimate::from_counts(0, 0));
        }
        odd_order_share(&bb, &i, &mut *x_source(&bb, &ambient, seed)?, n)
    })?;
    let odd = parts.iter().map(|p| p.odd).sum();
    let estimate = ShareEstimate::from_counts(odd, a.trials);
    let multiplications = bb.multiplications();
    let exact = if a.exact {
        let all = bb.enumerate(ENUMERATION_LIMIT)?;
        let count = odd_order_count(&bb, &i, &all);
        let share = count as f64 / all.len() as f64;
        let se = (share * (1.0 - share) / a.trials as f64).sqrt();
        let z = if se > 0.0 { (estimate.share - share) / se } else { 0.0 };
        json!({ "odd": count, "order": all.len(), "share": share, "z_score": z })
    } else {
        Value::Null
    };
    Ok(Outcome {
        multiplications,
        results: json!({
            "group": bb.name(),
            "involution": bb.format(&i),
            "estimate": estimate,
            "exact": exact,
        }),
        attachments: Vec::new(),
    })
}

fn measure<W: Weight>(bb: &BlackBox, m: Measure, elements: &[GroupElement]) -> Result<Distribution<W>> {
    match m {
        Measure::Transpositions => uniform_transpositions(bb),
        Measure::RandomTranspositions => random_transpositions(bb),
        Measure::Uniform => Distribution::uniform_on(bb, elements),
    }
}

fn tv_exact_with<W: Weight>(bb: &BlackBox, a: &TvExactArgs, elements: &[GroupElement]) -> Result<(Value, Attachment)> {
    let p = measure::<W>(bb, a.dist, elements)?;
    let pk = convolution_power(&p, a.k, bb)?;
    let uniform = Distribution::<W>::uniform_on(bb, elements)?;
    let tv = tv_distance(&pk, &uniform)?;
    let mut v = json!({
        "tv_to_uniform": tv.to_f64_lossy(),
        "tv_to_uniform_exact": tv.render(),
    });
    if a.dist == Measure::Transpositions {
        let even_k = a.k.is_multiple_of(2);
        let coset: Vec<GroupElement> = elements
            .iter()
            .filter(|g| Permutation::from_element(g).is_even() == even_k)
            .cloned()
            .collect();
        let tv_c = tv_distance(&pk, &Distribution::<W>::uniform_on(bb, &coset)?)?;
        v["tv_to_parity_coset"] = json!(tv_c.to_f64_lossy());
        v["tv_to_parity_coset_exact"] = json!(tv_c.render());
    }
    Ok((v, distribution_attachment(&pk)?))
}

fn run_tv_exact(a: &TvExactArgs) -> Result<Outcome> {
    if a.k == 0 {
        return Err(Error::invalid("--k must be at least 1"));
    }
    let bb = make_backend(&a.backend)?;
    let elements = bb.enumerate(ENUMERATION_LIMIT)?;
    let exact = elements.len() <= EXACT_ARITHMETIC_LIMIT;
    let (values, attachment) = if exact {
        tv_exact_with::<BigRational>(&bb, a, &elements)?
    } else {
        tv_exact_with::<f64>(&bb, a, &elements)?
    };
    let mut results = json!({
        "group": bb.name(),
        "order": elements.len(),
        "dist": a.dist,
        "convention": a.dist.convention(),
        "k": a.k,
        "arithmetic": if exact { "rational" } else { "float" },
    });
    merge_into(&mut results, values);
    Ok(Outcome {
        multiplications: bb.multiplications(),
        results,
        attachments: vec![attachment],
    })
}

fn merge_into(target: &mut Value, extra: Value) {
    if let (Some(t), Value::Object(e)) = (target.as_object_mut(), extra) {
        t.extend(e);
    }
}

fn mixing_with<W: Weight>(bb: &BlackBox, a: &MixingTimeArgs, elements: &[GroupElement]) -> Result<Value> {
    let p = measure::<W>(bb, a.dist, elements)?;
    let k = mixing_time(&p, bb, a.threshold, a.cap)?;
    let uniform = Distribution::<W>::uniform_on(bb, elements)?;
    let tv = tv_distance(&convolution_power(&p, k, bb)?, &uniform)?;
    Ok(json!({ "mixing_time": k, "tv_at_mixing_time": tv.to_f64_lossy() }))
}

fn run_mixing_time(a: &MixingTimeArgs) -> Result<Outcome> {
    if !(a.threshold > 0.0 && a.threshold <= 1.0) {
        return Err(Error::invalid("--threshold must lie in (0, 1]"));
    }
    let bb = make_backend(&a.backend)?;
    let elements = bb.enumerate(ENUMERATION_LIMIT)?;
    let exact = elements.len() <= EXACT_ARITHMETIC_LIMIT;
    let values = if exact {
        mixing_with::<BigRational>(&bb, a, &elements)?
    } else {
        mixing_with::<f64>(&bb, a, &elements)?
    };
    let mut results = json!({
        "group": bb.name(),
        "order": elements.len(),
        "dist": a.dist,
        "convention": a.dist.convention(),
        "threshold": a.threshold,
        "cap": a.cap,
        "arithmetic": if exact { "rational" } else { "float" },
    });
    merge_into(&mut results, values);
    Ok(Outcome {
        multiplications: bb.multiplications(),
        results,
        attachments: Vec::new(),
    })
}
