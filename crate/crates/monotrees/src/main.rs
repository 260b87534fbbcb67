//! Command-line front end for the `monotrees` library: generate and color
//! instances, solve them exactly, run the constructive partition and cover
//! algorithms, search for witness sets, run statistical random-graph checks
//! and threshold sweeps, and re-verify certificates.
//!
//! Exit codes: 0 success; 1 the requested object honestly does not exist or
//! was not found; 2 input or parameter error (including certificates that
//! fail verification); 3 a verified counterexample to a guarantee the
//! algorithms promise (the offending instance path is printed).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use monotrees::{
    adversarial_tc_lower_bound, affine_plane_coloring, anchored_coloring, aux_cover,
    check_common_neighborhoods, check_leaf_degradation, check_local_connectivity,
    complete_partition, cover_lower_bound_graph, distinct_color_cover_exists,
    distinct_cover_impossible_graph, find_witness_set, gnp_two_color_partition, hk_partition,
    mindeg_absorbing_partition, random_coloring, read_ecg, rebuild_instance, sample_gnp, tc_exact,
    tc_graph_exact, threshold_sweep, tm_experiment, tm_graph_exact, tp_exact, two_color_cover,
    verify_cover, verify_partition, witness_set_coloring, write_ecg, CertificateFile,
    ColoredGraph, ConstructionError, EcgError, Graph, GraphError, OracleError, OracleLimits,
    PartitionerError, SweepConfig, SweepRow, VertexSet, WitnessSearch,
};

const EXIT_NONE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CRITICAL: u8 = 3;

/// Environment variable overriding the oracle wall-clock budget, in seconds.
const BUDGET_ENV: &str = "MONOTREES_ORACLE_BUDGET_SECS";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Ecg(#[from] EcgError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Construction(#[from] ConstructionError),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

#[derive(Parser)]
#[command(
    name = "monotrees",
    version,
    about = "Monochromatic tree partitions and covers of edge-colored graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a benchmark instance and write it as an .ecg file.
    Gen(GenArgs),
    /// Replace an instance's coloring with a fresh seeded random one.
    Color(ColorArgs),
    /// Solve an instance exactly with the small-instance oracles.
    Solve(SolveArgs),
    /// Run one of the constructive partition or cover algorithms.
    Partition(PartitionArgs),
    /// Search for a witness set; optionally build its adversarial coloring.
    Witness(WitnessArgs),
    /// Measure the largest monochromatic component over crafted colorings.
    Tm(TmArgs),
    /// Statistical checks of degree and connectivity properties.
    Check(CheckArgs),
    /// Sweep one solver over an (n, p) grid and write a CSV report.
    Sweep(SweepArgs),
    /// Re-verify a certificate against its instance.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Affine-plane coloring of a complete graph: q^2·blowup vertices,
    /// q + 1 colors, every monochromatic component of order q·blowup.
    Affine,
    /// Complete bipartite-ish blowup whose cover number exceeds r.
    CoverLb,
    /// Dense instance admitting no cover by distinctly colored components.
    DistinctLb,
    /// Complete graph, every edge color 1.
    Complete,
    /// Erdős–Rényi sample G(n, p), every edge color 1.
    Gnp,
    /// Recolor an input graph around an independent anchor set: edges at
    /// the i-th anchor get color i, everything else the last color.
    Anchored,
    /// Recolor an input graph so a given sparse independent set forces the
    /// cover number above its size.
    WitnessSet,
}

#[derive(Args)]
struct GenArgs {
    /// Instance family.
    #[arg(long, value_enum)]
    family: Family,
    /// Prime order of the affine plane (family: affine).
    #[arg(long)]
    q: Option<usize>,
    /// Replace each plane point by this many clones (family: affine).
    #[arg(long, default_value_t = 1)]
    blowup: usize,
    /// Number of colors (families: cover-lb, distinct-lb; optional else).
    #[arg(long)]
    r: Option<usize>,
    /// Number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability (family: gnp).
    #[arg(long)]
    p: Option<f64>,
    /// Sampling seed (family: gnp).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Base instance whose graph is recolored, its old colors discarded
    /// (families: anchored, witness-set).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Comma-separated vertex list: the anchors (family: anchored) or the
    /// witness set (family: witness-set).
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<u32>>,
    /// Output .ecg path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ColorArgs {
    /// Input .ecg instance; only its underlying graph is kept.
    #[arg(long = "in")]
    input: PathBuf,
    /// Number of colors to draw uniformly per edge.
    #[arg(long)]
    r: usize,
    /// Coloring seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output .ecg path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMode {
    /// Minimum monochromatic components covering every vertex.
    Tc,
    /// Minimum vertex-disjoint monochromatic trees partitioning every vertex.
    Tp,
    /// Smallest achievable largest monochromatic component over colorings.
    Tm,
    /// Largest cover number over all colorings of the underlying graph.
    Tcr,
    /// Whether a cover by distinctly colored components exists.
    Distinct,
}

#[derive(Args)]
struct SolveArgs {
    /// What to compute exactly.
    #[arg(long, value_enum)]
    mode: SolveMode,
    /// Input .ecg instance.
    #[arg(long = "in")]
    input: PathBuf,
    /// Color count for the over-all-colorings modes (default: instance's r).
    #[arg(long)]
    r: Option<usize>,
    /// Also write the result JSON here (a manifest is written beside it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Nested-neighborhood partitioner into at most r trees of radius two.
    Hk,
    /// Absorbing partitioner for near-spanning minimum degree.
    Mindeg,
    /// Two-coloring partitioner for dense random graphs.
    Gnp2,
    /// Two-component cover search for two colorings.
    Cover2,
    /// Auxiliary-independence cover into at most r·independence parts.
    Aux,
}

#[derive(Args)]
struct PartitionArgs {
    /// Which constructive algorithm to run.
    #[arg(long, value_enum)]
    algo: Algo,
    /// Input .ecg instance.
    #[arg(long = "in")]
    input: PathBuf,
    /// Slack for the min-degree absorber, in (0, 1/(e·r!)); default half the cap.
    #[arg(long)]
    eps: Option<f64>,
    /// Bypass the absorber's minimum-size gate (hypothesis checks remain).
    #[arg(long)]
    force: bool,
    /// Recorded in the manifest; the implemented algorithms are deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the certificate JSON here (manifest written beside it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Input .ecg instance; only its underlying graph is used.
    #[arg(long = "in")]
    input: PathBuf,
    /// Number of colors the adversarial coloring may use.
    #[arg(long)]
    r: usize,
    /// Witness set size to search for (default: r).
    #[arg(long)]
    s: Option<usize>,
    /// Restart budget for the randomized search.
    #[arg(long, default_value_t = 64)]
    budget: usize,
    /// Search seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also build and structurally certify the adversarial coloring.
    #[arg(long)]
    adversarial: bool,
    /// Where to write the adversarial coloring (.ecg); implies --adversarial.
    #[arg(long)]
    coloring_out: Option<PathBuf>,
    /// Also write the result JSON here (manifest written beside it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TmArgs {
    /// Number of vertices per sampled graph.
    #[arg(long)]
    n: usize,
    /// Edge probability.
    #[arg(long)]
    p: f64,
    /// Number of colors.
    #[arg(long)]
    r: usize,
    /// Number of sampled graphs.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Slack in the (1 - eps)·n/(r - 1) comparison guarantee.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Base seed; trial t uses stream (0, t).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the statistics JSON here (manifest written beside it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// Common neighborhoods of r-sets versus the n·p^r / 2 threshold.
    Neighborhoods,
    /// Whether common neighborhoods of r-sets induce connected subgraphs.
    Connectivity,
    /// Degrees into a fixed vertex set versus the |l|·p / 2 threshold.
    Leaves,
}

#[derive(Args)]
struct CheckArgs {
    /// Which statistical property to measure.
    #[arg(long, value_enum)]
    kind: CheckKind,
    /// Input .ecg instance; only its underlying graph is used.
    #[arg(long = "in")]
    input: PathBuf,
    /// Size of the vertex sets whose common neighborhood is probed.
    #[arg(long)]
    r: Option<usize>,
    /// Edge probability the instance was sampled at (sets the thresholds).
    #[arg(long)]
    p: Option<f64>,
    /// Number of sampled vertex sets (exhaustive when fewer exist).
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Sampling seed (also seeds the reference set for kind: leaves).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Size of the seeded random reference set (kind: leaves).
    #[arg(long)]
    l_size: Option<usize>,
    /// Also write the report JSON here (manifest written beside it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep configuration JSON (grid, probability rule, trials, solver).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path (manifest written beside it).
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for this sweep (default: one per CPU).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input .ecg instance.
    #[arg(long = "in")]
    input: PathBuf,
    /// Certificate JSON to re-check against the instance.
    #[arg(long)]
    cert: PathBuf,
}

/// Sidecar written as `<output>.manifest.json` beside every file-producing
/// run, recording what produced the file.
#[derive(Serialize)]
struct RunManifest {
    subcommand: String,
    parameters: Value,
    inputs: Vec<String>,
    outputs: Vec<String>,
    base_seed: Option<u64>,
    tool_version: String,
    wall_ms: u128,
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn write_manifest(
    subcommand: &str,
    parameters: Value,
    inputs: &[&Path],
    outputs: &[&Path],
    base_seed: Option<u64>,
    started: Instant,
) -> Result<(), CliError> {
    let manifest = RunManifest {
        subcommand: subcommand.to_string(),
        parameters,
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        base_seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_ms: started.elapsed().as_millis(),
    };
    let first = outputs
        .first()
        .expect("manifest needs at least one output file");
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    fs::write(manifest_path(first), text)?;
    Ok(())
}

/// Prints a result document to stdout and, when requested, writes it to a
/// file with a manifest beside it.
#[allow(clippy::too_many_arguments)]
fn emit_json(
    doc: &Value,
    out: Option<&Path>,
    subcommand: &str,
    parameters: Value,
    inputs: &[&Path],
    base_seed: Option<u64>,
    started: Instant,
) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    print!("{text}");
    if let Some(path) = out {
        fs::write(path, &text)?;
        write_manifest(subcommand, parameters, inputs, &[path], base_seed, started)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::Gen(args) => run_gen(args),
        Cmd::Color(args) => run_color(args),
        Cmd::Solve(args) => run_solve(args),
        Cmd::Partition(args) => run_partition(args),
        Cmd::Witness(args) => run_witness(args),
        Cmd::Tm(args) => run_tm(args),
        Cmd::Check(args) => run_check(args),
        Cmd::Sweep(args) => run_sweep(args),
        Cmd::Verify(args) => run_verify(args),
    }
}

fn require<T: Copy>(value: Option<T>, what: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| invalid(format!("--{what} is required for family {family}")))
}

fn require_input(args: &GenArgs) -> Result<&Path, CliError> {
    args.input
        .as_deref()
        .ok_or_else(|| invalid(format!("--in is required for family {}", family_name(args.family))))
}

fn require_set(args: &GenArgs) -> Result<Vec<u32>, CliError> {
    match &args.set {
        Some(set) if !set.is_empty() => Ok(set.clone()),
        _ => Err(invalid(format!(
            "--set must list at least one vertex for family {}",
            family_name(args.family)
        ))),
    }
}

fn all_one_coloring(g: Graph, r: usize) -> Result<ColoredGraph, CliError> {
    if r == 0 || r > 255 {
        return Err(invalid("--r must be in 1..=255"));
    }
    let colors = vec![1u8; g.m()];
    Ok(ColoredGraph::attach_colors(g, r, &colors))
}

fn run_gen(args: GenArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    let (cg, note) = match args.family {
        Family::Affine => {
            let q = require(args.q, "q", "affine")?;
            let (cg, meta) = affine_plane_coloring(q, args.blowup)?;
            (cg, format!("family {} (min degree {})", meta.name, meta.promised_min_degree))
        }
        Family::CoverLb => {
            let r = require(args.r, "r", "cover-lb")?;
            let n = require(args.n, "n", "cover-lb")?;
            let (cg, meta) = cover_lower_bound_graph(r, n)?;
            (cg, format!(
                "family {} (min degree {}, cover number >= {})",
                meta.name, meta.promised_min_degree, meta.promised_lower_bound
            ))
        }
        Family::DistinctLb => {
            let r = require(args.r, "r", "distinct-lb")?;
            let n = require(args.n, "n", "distinct-lb")?;
            let (cg, meta) = distinct_cover_impossible_graph(r, n)?;
            (cg, format!("family {} (min degree {})", meta.name, meta.promised_min_degree))
        }
        Family::Complete => {
            let n = require(args.n, "n", "complete")?;
            let cg = all_one_coloring(Graph::complete(n), args.r.unwrap_or(1))?;
            (cg, "complete graph, single color".to_string())
        }
        Family::Gnp => {
            let n = require(args.n, "n", "gnp")?;
            let p = require(args.p, "p", "gnp")?;
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid("--p must lie in [0, 1]"));
            }
            let g = sample_gnp(n, p, args.seed);
            let cg = all_one_coloring(g, args.r.unwrap_or(1))?;
            (cg, format!("G({n}, {p}) sample, single color"))
        }
        Family::Anchored => {
            let base = read_ecg(require_input(&args)?)?;
            let set = require_set(&args)?;
            let cg = anchored_coloring(base.graph(), &set)?;
            let note = format!("anchored recoloring, {} colors", cg.r());
            (cg, note)
        }
        Family::WitnessSet => {
            let base = read_ecg(require_input(&args)?)?;
            let set = require_set(&args)?;
            let r = require(args.r, "r", "witness-set")?;
            let cg = witness_set_coloring(base.graph(), &set, r)?;
            (cg, format!("witness-set recoloring, cover number >= {}", set.len() + 1))
        }
    };
    write_ecg(&args.out, &cg)?;
    let params = json!({
        "family": family_name(args.family),
        "q": args.q,
        "blowup": args.blowup,
        "r": args.r,
        "n": args.n,
        "p": args.p,
        "seed": args.seed,
        "set": args.set,
    });
    let inputs: Vec<&Path> = args.input.iter().map(PathBuf::as_path).collect();
    write_manifest("gen", params, &inputs, &[&args.out], Some(args.seed), started)?;
    println!(
        "wrote {}: n={}, r={}, m={} ({note})",
        args.out.display(),
        cg.n(),
        cg.r(),
        cg.graph().m()
    );
    Ok(0)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Affine => "affine",
        Family::CoverLb => "cover-lb",
        Family::DistinctLb => "distinct-lb",
        Family::Complete => "complete",
        Family::Gnp => "gnp",
        Family::Anchored => "anchored",
        Family::WitnessSet => "witness-set",
    }
}

fn run_color(args: ColorArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    if args.r == 0 || args.r > 255 {
        return Err(invalid("--r must be in 1..=255"));
    }
    let cg = read_ecg(&args.input)?;
    let recolored = random_coloring(cg.graph(), args.r, args.seed);
    write_ecg(&args.out, &recolored)?;
    let params = json!({"r": args.r, "seed": args.seed});
    write_manifest(
        "color",
        params,
        &[&args.input],
        &[&args.out],
        Some(args.seed),
        started,
    )?;
    println!(
        "wrote {}: n={}, r={}, m={}",
        args.out.display(),
        recolored.n(),
        recolored.r(),
        recolored.graph().m()
    );
    Ok(0)
}

/// Oracle limits with the optional environment override for the time budget.
fn oracle_limits() -> Result<OracleLimits, CliError> {
    let mut limits = OracleLimits::default();
    if let Ok(raw) = std::env::var(BUDGET_ENV) {
        let secs: u64 = raw
            .parse()
            .map_err(|_| invalid(format!("{BUDGET_ENV} must be a whole number of seconds")))?;
        limits.time_budget = Duration::from_secs(secs);
    }
    Ok(limits)
}

fn solve_mode_name(mode: SolveMode) -> &'static str {
    match mode {
        SolveMode::Tc => "tc",
        SolveMode::Tp => "tp",
        SolveMode::Tm => "tm",
        SolveMode::Tcr => "tcr",
        SolveMode::Distinct => "distinct",
    }
}

fn run_solve(args: SolveArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    let cg = read_ecg(&args.input)?;
    let limits = oracle_limits()?;
    let mode = solve_mode_name(args.mode);
    let solve_started = Instant::now();
    let outcome: Result<Value, OracleError> = match args.mode {
        SolveMode::Tc => tc_exact(&cg, &limits).map(|sol| {
            json!({
                "mode": mode,
                "value": sol.value,
                "exact": true,
                "certificate": CertificateFile::Cover(sol.certificate),
            })
        }),
        SolveMode::Tp => tp_exact(&cg, &limits).map(|sol| {
            json!({
                "mode": mode,
                "value": sol.value,
                "exact": true,
                "certificate": CertificateFile::Partition(sol.certificate),
            })
        }),
        SolveMode::Tm => {
            let r = args.r.unwrap_or(cg.r());
            tm_graph_exact(cg.graph(), r, &limits).map(|ex| {
                json!({
                    "mode": mode,
                    "r": r,
                    "value": ex.value,
                    "exact": true,
                    "witness_colors": ex.witness_colors,
                })
            })
        }
        SolveMode::Tcr => {
            let r = args.r.unwrap_or(cg.r());
            tc_graph_exact(cg.graph(), r, &limits).map(|ex| {
                json!({
                    "mode": mode,
                    "r": r,
                    "value": ex.value,
                    "exact": true,
                    "witness_colors": ex.witness_colors,
                })
            })
        }
        SolveMode::Distinct => distinct_color_cover_exists(&cg, &limits).map(|found| match found {
            Some(cert) => json!({
                "mode": mode,
                "exists": true,
                "certificate": CertificateFile::Cover(cert),
            }),
            None => json!({"mode": mode, "exists": false}),
        }),
    };
    let params = json!({"mode": mode, "r": args.r});
    match outcome {
        Ok(mut doc) => {
            doc["millis"] = json!(solve_started.elapsed().as_millis());
            let exists_no = doc["exists"] == json!(false);
            emit_json(
                &doc,
                args.out.as_deref(),
                "solve",
                params,
                &[&args.input],
                None,
                started,
            )?;
            Ok(if exists_no { EXIT_NONE } else { 0 })
        }
        Err(OracleError::Uncoverable { vertex }) => {
            eprintln!("no cover exists: vertex {vertex} is isolated");
            Ok(EXIT_NONE)
        }
        Err(e) => Err(invalid(e.to_string())),
    }
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Hk => "hk",
        Algo::Mindeg => "mindeg",
        Algo::Gnp2 => "gnp2",
        Algo::Cover2 => "cover2",
        Algo::Aux => "aux",
    }
}

/// Exit class for a constructive-algorithm failure: parameter and hypothesis
/// defects are input errors, refuted guarantees are critical, everything
/// else is an honest not-found.
fn partitioner_exit(e: &PartitionerError) -> u8 {
    match e {
        PartitionerError::InvalidParameter { .. }
        | PartitionerError::WrongColorCount { .. }
        | PartitionerError::BelowSizeThreshold { .. }
        | PartitionerError::HypothesisViolated { .. } => EXIT_INPUT,
        PartitionerError::NotFound { critical: true } => EXIT_CRITICAL,
        _ => EXIT_NONE,
    }
}

/// Vertex count above which the nested-neighborhood partitioner is
/// guaranteed to succeed on any r-colored complete graph.
fn complete_guarantee_min(r: usize) -> usize {
    let rf: f64 = (1..=r).map(|i| i as f64).product();
    (3.0 * (r as f64).powi(2) * rf * (r as f64).ln()).ceil() as usize
}

fn run_partition(args: PartitionArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    let cg = read_ecg(&args.input)?;
    let algo = algo_name(args.algo);
    let solve_started = Instant::now();
    let result: Result<Value, PartitionerError> = match args.algo {
        Algo::Hk => hk_partition(&cg).map(|out| {
            json!({
                "algo": algo,
                "blocks": out.certificate.blocks.len(),
                "exit": format!("{:?}", out.exit),
                "certificate": CertificateFile::Partition(out.certificate),
            })
        }),
        Algo::Mindeg => {
            let rf: f64 = (1..=cg.r()).map(|i| i as f64).product();
            let eps = args.eps.unwrap_or(0.5 / (std::f64::consts::E * rf));
            mindeg_absorbing_partition(&cg, eps, args.force).map(|atp| {
                let cert = complete_partition(&cg, &atp);
                json!({
                    "algo": algo,
                    "eps": eps,
                    "blocks": cert.blocks.len(),
                    "leaves": atp.l(),
                    "certificate": CertificateFile::Partition(cert),
                })
            })
        }
        Algo::Gnp2 => gnp_two_color_partition(&cg).map(|cert| {
            json!({
                "algo": algo,
                "blocks": cert.blocks.len(),
                "certificate": CertificateFile::Partition(cert),
            })
        }),
        Algo::Cover2 => two_color_cover(&cg).map(|cert| {
            json!({
                "algo": algo,
                "parts": cert.parts.len(),
                "certificate": CertificateFile::Cover(cert),
            })
        }),
        Algo::Aux => aux_cover(&cg).map(|cert| {
            json!({
                "algo": algo,
                "parts": cert.parts.len(),
                "certificate": CertificateFile::Cover(cert),
            })
        }),
    };
    let params = json!({
        "algo": algo,
        "eps": args.eps,
        "force": args.force,
        "seed": args.seed,
    });
    match result {
        Ok(mut doc) => {
            doc["millis"] = json!(solve_started.elapsed().as_millis());
            emit_json(
                &doc,
                args.out.as_deref(),
                "partition",
                params,
                &[&args.input],
                args.seed,
                started,
            )?;
            Ok(0)
        }
        Err(e) => {
            let n = cg.n();
            let complete = n >= 2 && cg.graph().m() == n * (n - 1) / 2;
            let guaranteed =
                args.algo == Algo::Hk && complete && n >= complete_guarantee_min(cg.r());
            if guaranteed || partitioner_exit(&e) == EXIT_CRITICAL {
                eprintln!(
                    "CRITICAL: {e}; counterexample instance: {}",
                    args.input.display()
                );
                return Ok(EXIT_CRITICAL);
            }
            match partitioner_exit(&e) {
                EXIT_INPUT => Err(invalid(e.to_string())),
                _ => {
                    eprintln!("not found: {e}");
                    Ok(EXIT_NONE)
                }
            }
        }
    }
}

fn run_witness(args: WitnessArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    let cg = read_ecg(&args.input)?;
    let g = cg.graph();
    if args.r == 0 {
        return Err(invalid("--r must be at least 1"));
    }
    let s = args.s.unwrap_or(args.r);
    if s < args.r {
        return Err(invalid("--s must be at least --r"));
    }
    let adversarial = args.adversarial || args.coloring_out.is_some();
    let params = json!({
        "r": args.r,
        "s": s,
        "budget": args.budget,
        "seed": args.seed,
        "adversarial": adversarial,
    });
    let search = find_witness_set(g, args.r, s, args.budget, args.seed);
    let (mut doc, mut code) = match &search {
        WitnessSearch::Found(set) => (
            json!({"found": true, "witness": set, "r": args.r, "s": s}),
            0u8,
        ),
        WitnessSearch::NoneExists => (
            json!({"found": false, "exhausted": true, "r": args.r, "s": s}),
            EXIT_NONE,
        ),
        WitnessSearch::Inconclusive => (
            json!({"found": false, "exhausted": false, "r": args.r, "s": s}),
            EXIT_NONE,
        ),
    };
    if adversarial && code == 0 {
        match adversarial_tc_lower_bound(g, args.r, s, args.budget, args.seed) {
            Some(bound) => {
                doc["certified"] = json!(true);
                doc["cover_lower_bound"] = json!(bound.bound);
                if let Some(path) = &args.coloring_out {
                    write_ecg(path, &bound.coloring)?;
                    doc["coloring"] = json!(path.display().to_string());
                }
            }
            None => {
                doc["certified"] = json!(false);
                code = EXIT_NONE;
            }
        }
    }
    let mut outputs: Vec<&Path> = Vec::new();
    if let Some(path) = &args.out {
        outputs.push(path);
    }
    if adversarial && doc["certified"] == json!(true) {
        if let Some(path) = &args.coloring_out {
            outputs.push(path);
        }
    }
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    print!("{text}");
    if let Some(path) = &args.out {
        fs::write(path, &text)?;
    }
    if !outputs.is_empty() {
        write_manifest(
            "witness",
            params,
            &[&args.input],
            &outputs,
            Some(args.seed),
            started,
        )?;
    }
    Ok(code)
}

fn run_tm(args: TmArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    if !(0.0..=1.0).contains(&args.p) {
        return Err(invalid("--p must lie in [0, 1]"));
    }
    if args.r == 0 || args.r > 255 {
        return Err(invalid("--r must be in 1..=255"));
    }
    let stats = tm_experiment(args.n, args.p, args.r, args.trials, args.eps, args.seed);
    let doc = serde_json::to_value(&stats)?;
    let params = json!({
        "n": args.n,
        "p": args.p,
        "r": args.r,
        "trials": args.trials,
        "eps": args.eps,
        "seed": args.seed,
    });
    emit_json(
        &doc,
        args.out.as_deref(),
        "tm",
        params,
        &[],
        Some(args.seed),
        started,
    )?;
    Ok(0)
}

fn check_kind_name(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Neighborhoods => "neighborhoods",
        CheckKind::Connectivity => "connectivity",
        CheckKind::Leaves => "leaves",
    }
}

fn run_check(args: CheckArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    let cg = read_ecg(&args.input)?;
    let g = cg.graph();
    let kind = check_kind_name(args.kind);
    let doc = match args.kind {
        CheckKind::Neighborhoods => {
            let r = args.r.ok_or_else(|| invalid("--r is required for kind neighborhoods"))?;
            let p = args.p.ok_or_else(|| invalid("--p is required for kind neighborhoods"))?;
            let stats = check_common_neighborhoods(g, r, p, args.samples, args.seed);
            serde_json::to_value(&stats)?
        }
        CheckKind::Connectivity => {
            let r = args.r.ok_or_else(|| invalid("--r is required for kind connectivity"))?;
            let stats = check_local_connectivity(g, r, args.samples, args.seed);
            serde_json::to_value(&stats)?
        }
        CheckKind::Leaves => {
            let p = args.p.ok_or_else(|| invalid("--p is required for kind leaves"))?;
            let size = args.l_size.ok_or_else(|| invalid("--l-size is required for kind leaves"))?;
            if size == 0 || size > g.n() {
                return Err(invalid("--l-size must be in 1..=n"));
            }
            if !(p > 0.0 && p <= 1.0) {
                return Err(invalid("--p must lie in (0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut l = VertexSet::new(g.n());
            for v in rand::seq::index::sample(&mut rng, g.n(), size) {
                l.insert(v);
            }
            let report = check_leaf_degradation(g, &l, p);
            let mut doc = serde_json::to_value(&report)?;
            doc["l_size"] = json!(size);
            doc
        }
    };
    let params = json!({
        "kind": kind,
        "r": args.r,
        "p": args.p,
        "samples": args.samples,
        "seed": args.seed,
        "l_size": args.l_size,
    });
    emit_json(
        &doc,
        args.out.as_deref(),
        "check",
        params,
        &[&args.input],
        Some(args.seed),
        started,
    )?;
    Ok(0)
}

fn run_sweep(args: SweepArgs) -> Result<u8, CliError> {
    let started = Instant::now();
    let cfg: SweepConfig = serde_json::from_str(&fs::read_to_string(&args.config)?)?;
    let report = match args.jobs {
        Some(jobs) => {
            if jobs == 0 {
                return Err(invalid("--jobs must be at least 1"));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| invalid(e.to_string()))?
                .install(|| threshold_sweep(&cfg))
        }
        None => threshold_sweep(&cfg),
    }
    .map_err(invalid)?;
    fs::write(&args.out, report.to_csv())?;
    let params = serde_json::to_value(&cfg)?;
    write_manifest(
        "sweep",
        json!({"config": params, "jobs": args.jobs}),
        &[&args.config],
        &[&args.out],
        Some(cfg.seed),
        started,
    )?;
    let mut histogram: Vec<(String, usize)> = Vec::new();
    for row in &report.rows {
        match histogram.iter_mut().find(|(tag, _)| *tag == row.outcome) {
            Some((_, count)) => *count += 1,
            None => histogram.push((row.outcome.clone(), 1)),
        }
    }
    histogram.sort();
    let summary = histogram
        .iter()
        .map(|(tag, count)| format!("{tag}={count}"))
        .collect::<Vec<_>>()
        .join(", ");
    println!("wrote {}: {} rows ({summary})", args.out.display(), report.rows.len());
    if let Some(row) = report
        .rows
        .iter()
        .find(|row| row.outcome == "not_found_critical")
    {
        let instance = rebuild_instance(&cfg, row);
        let path = critical_instance_path(&args.out, row);
        write_ecg(&path, &instance)?;
        eprintln!(
            "CRITICAL: row n={} p={:.6} seed={} refutes a cover guarantee; counterexample instance: {}",
            row.n,
            row.p,
            row.seed,
            path.display()
        );
        return Ok(EXIT_CRITICAL);
    }
    Ok(0)
}

fn critical_instance_path(out: &Path, row: &SweepRow) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".to_string());
    out.with_file_name(format!("{stem}.critical-{}.ecg", row.seed))
}

/// Accepts either a bare certificate document or a solver result document
/// that nests one under a `certificate` key.
fn load_certificate(path: &Path) -> Result<CertificateFile, CliError> {
    let text = fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    let node = match doc.get("certificate") {
        Some(inner) if doc.get("kind").is_none() => inner.clone(),
        _ => doc,
    };
    Ok(serde_json::from_value(node)?)
}

fn run_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let cg = read_ecg(&args.input)?;
    let cert = load_certificate(&args.cert)?;
    let checked = match &cert {
        CertificateFile::Partition(c) => {
            verify_partition(&cg, c).map(|()| ("partition", c.blocks.len()))
        }
        CertificateFile::Cover(c) => verify_cover(&cg, c).map(|()| ("cover", c.parts.len())),
    };
    match checked {
        Ok((kind, k)) => {
            println!("certificate ok: {kind} with {k} parts");
            Ok(0)
        }
        Err(violation) => {
            eprintln!("certificate violation: {violation}");
            Ok(EXIT_INPUT)
        }
    }
}
