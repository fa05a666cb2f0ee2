//! `kfactor`: generate the graph families, run the solvers and predicates,
//! and drive parameter sweeps from the command line.
//!
//! Exit codes: 0 success (or positive verdict), 1 negative verdict
//! (no-factor / predicate false), 2 precondition or usage violation,
//! 3 budget exhaustion or undecided outcome, 4 I/O failure.

use clap::{Args, Parser, Subcommand};
use kfactor_cli::io_util::{load_graph, parse_fraction, parse_index_list, read_input, LoadError};
use kfactor_cli::sweep::{self, SweepConfig};
use kfactor_core::absorption::{
    index_census, reachable_packing, transferral, verify_absorber, verify_absorbing_set,
    AbsorbingCheckParams, AbsorbingOutcome, IndexCensus, IndexVector, Partition,
};
use kfactor_core::budget::{Budget, Ternary};
use kfactor_core::cliques::enumerate_r_cliques;
use kfactor_core::constructions::{
    self, blow_up, complete_multipartite, core_c5_blowup, core_edgeless, default_x_from_rho,
    degree_prune, figure1, kfree_core_search, CoreSearchParams, LabeledInstance,
};
use kfactor_core::exec;
use kfactor_core::factor::{
    cover_check, cross_tiling, has_kr_factor, max_kr_tiling, FactorOutcome,
};
use kfactor_core::format::GraphFormat;
use kfactor_core::graph::VertexSet;
use kfactor_core::independence::{
    alpha_ell_at_most, alpha_ell_bounds, alpha_ell_exact, BoundsEffort, EXACT_LIMIT,
};
use kfactor_core::weighted::{
    check_condition_e, check_inequality_one, check_inequality_one_exact, estimate_bad_probability,
    random_partition_search, InequalityOutcome, WeightedError, WeightedReducedGraph,
};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kfactor",
    version,
    about = "Clique factors, tilings, independence numbers and absorption certificates"
)]
struct Cli {
    /// Master seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock cap for exhaustive searches (off by default; caps break
    /// run-to-run reproducibility).
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Node cap for exhaustive searches.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for data-parallel stages.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph family (graph6 plus a JSON sidecar).
    Gen(Box<GenArgs>),
    /// Compute the l-independence number, exactly or by bounds.
    Alpha(AlphaArgs),
    /// Enumerate r-cliques in canonical order.
    Cliques(CliquesArgs),
    /// Decide whether the graph has a K_r-factor.
    Factor(GraphRArgs),
    /// Find a maximum K_r-tiling.
    Tiling(GraphRArgs),
    /// List vertices not covered by any K_r (after removing a set).
    Cover(CoverArgs),
    /// Cross tiling with a fixed per-side split.
    CrossTiling(CrossArgs),
    /// Absorption predicates and certificates.
    #[command(subcommand)]
    Absorb(AbsorbCommand),
    /// Weighted reduced-graph checks and searches.
    #[command(subcommand)]
    Wpart(WpartCommand),
    /// Run a parameter sweep from a config file.
    Sweep(SweepArgs),
    /// Aggregate sweep records into a per-cell table.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenArgs {
    /// multipartite | figure1 | blowup | pruned | core-search
    #[arg(long)]
    family: String,
    /// Part sizes for multipartite, e.g. 4,4,4.
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Neighborhood fraction for figure1; defaults to 1/(2 - rho).
    #[arg(long, value_parser = parse_fraction)]
    x: Option<f64>,
    /// Assumed density parameter used to derive x when x is omitted.
    #[arg(long, value_parser = parse_fraction)]
    rho: Option<f64>,
    /// figure1 core: edgeless | c5-blowup | a graph6 file path.
    #[arg(long, default_value = "edgeless")]
    core: String,
    /// Base graph file for blowup.
    #[arg(long)]
    base: Option<String>,
    /// Source graph file for pruned.
    #[arg(long)]
    source: Option<String>,
    #[arg(long, value_parser = parse_fraction)]
    epsilon: Option<f64>,
    #[arg(long, value_parser = parse_fraction)]
    delta: Option<f64>,
    #[arg(long, value_parser = parse_fraction)]
    eta: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    forbid: Option<usize>,
    #[arg(long, value_parser = parse_fraction)]
    target_mindeg: Option<f64>,
    #[arg(long)]
    alpha_cap: Option<usize>,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Write the graph6 line here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the JSON sidecar (designated sets + provenance) here.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    ell: usize,
    /// Force exact mode (refuses when n exceeds the exact limit).
    #[arg(long)]
    exact: bool,
    /// Greedy restarts in bounds mode.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Decide alpha_l <= M instead of computing the value.
    #[arg(long)]
    threshold: Option<usize>,
}

#[derive(Args)]
struct CliquesArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
    /// Stop after this many cliques (flagged as truncated).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct GraphRArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
    /// Vertices removed before the check, e.g. 0,4,7.
    #[arg(long, default_value = "")]
    remove: String,
}

#[derive(Args)]
struct CrossArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
    /// Vertices of the first side.
    #[arg(long)]
    x_side: String,
    /// Vertices of the second side.
    #[arg(long)]
    y_side: String,
    /// Vertices each part takes from the first side.
    #[arg(long)]
    a: usize,
}

#[derive(Subcommand)]
enum AbsorbCommand {
    /// Check the (S, t)-absorber predicate.
    Verify(AbsorbVerifyArgs),
    /// Build a greedy family of disjoint reachable sets for a vertex pair.
    Reach(AbsorbReachArgs),
    /// Index census over a partition.
    Census(AbsorbCensusArgs),
    /// Transferral detection on a census.
    Transferral(AbsorbTransferralArgs),
    /// Check the absorbing-set predicate (exhaustive or sampled).
    AbsorbingSet(AbsorbingSetArgs),
}

#[derive(Args)]
struct AbsorbVerifyArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
    /// The r-set S, e.g. 0,1,2.
    #[arg(long)]
    set: String,
    /// The candidate absorber A.
    #[arg(long)]
    absorber: String,
}

#[derive(Args)]
struct AbsorbReachArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    u: usize,
    #[arg(long)]
    v: usize,
}

#[derive(Args)]
struct AbsorbCensusArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
    #[arg(long, value_parser = parse_fraction)]
    beta: f64,
    /// Parts separated by '/', vertices by ',': 0,1,2/3,4,5.
    #[arg(long)]
    parts: String,
}

#[derive(Args)]
struct AbsorbTransferralArgs {
    /// Census JSON file as produced by `absorb census --json`.
    #[arg(long)]
    census: Option<String>,
    /// Inline vectors: 3,0,0;2,1,0.
    #[arg(long)]
    vectors: Option<String>,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
}

#[derive(Args)]
struct AbsorbingSetArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    set: String,
    #[arg(long, value_parser = parse_fraction)]
    xi: f64,
    #[arg(long, default_value_t = 200_000)]
    exhaustive_cap: u64,
    #[arg(long, default_value_t = 2_000)]
    samples: u64,
}

#[derive(Subcommand)]
enum WpartCommand {
    /// Check the global inequality over all ordered pairs.
    Check(WpartCheckArgs),
    /// Randomized disjoint-(t+1)-set partition search.
    Search(WpartSearchArgs),
    /// Monte-Carlo estimate of the bad-set probability.
    Estimate(WpartEstimateArgs),
}

#[derive(Args)]
struct WpartCheckArgs {
    /// Weighted graph JSON: {"k": 4, "triples": [[0,1,0.6], ...]}.
    #[arg(long)]
    input: String,
    #[arg(long, value_parser = parse_fraction)]
    c: f64,
    #[arg(long, value_parser = parse_fraction)]
    mu: f64,
    /// Decide slack comparisons in exact rational arithmetic.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct WpartSearchArgs {
    #[arg(long)]
    input: String,
    #[arg(long, value_parser = parse_fraction)]
    c: f64,
    #[arg(long, value_parser = parse_fraction)]
    mu: f64,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 64)]
    retries: usize,
}

#[derive(Args)]
struct WpartEstimateArgs {
    #[arg(long)]
    input: String,
    #[arg(long, value_parser = parse_fraction)]
    c: f64,
    #[arg(long, value_parser = parse_fraction)]
    mu: f64,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep config JSON file.
    #[arg(long)]
    config: String,
    /// Output directory for records, timings and the checkpoint.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// records.json produced by `sweep`.
    #[arg(long)]
    records: String,
    /// Print CSV instead of the text table.
    #[arg(long)]
    csv: bool,
}

struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Fail {
        Fail {
            code: EXIT_PRECONDITION,
            msg: msg.into(),
        }
    }

    fn io(msg: impl Into<String>) -> Fail {
        Fail {
            code: EXIT_IO,
            msg: msg.into(),
        }
    }

    fn undecided(msg: impl Into<String>) -> Fail {
        Fail {
            code: EXIT_UNDECIDED,
            msg: msg.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = exec::configure_threads(threads) {
            eprintln!("warning: could not set thread count: {e}");
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("error: {}", fail.msg);
            ExitCode::from(fail.code)
        }
    }
}

fn budget_from(cli: &Cli) -> Budget {
    let mut budget = Budget::default();
    if let Some(nodes) = cli.budget_nodes {
        budget.max_nodes = nodes;
    }
    budget.max_millis = cli.budget_ms;
    budget
}

fn parse_format(name: &Option<String>) -> Result<Option<GraphFormat>, Fail> {
    match name.as_deref() {
        None => Ok(None),
        Some("graph6") | Some("g6") => Ok(Some(GraphFormat::Graph6)),
        Some("edge-list") | Some("edges") => Ok(Some(GraphFormat::EdgeList)),
        Some(other) => Err(Fail::usage(format!("unknown format {other:?}"))),
    }
}

fn graph_arg(input: &str, format: &Option<String>) -> Result<kfactor_core::Graph, Fail> {
    let format = parse_format(format)?;
    load_graph(input, format).map_err(|e| match e {
        LoadError::Io(msg) => Fail::io(msg),
        LoadError::Parse(msg) => Fail::usage(msg),
    })
}

fn vertex_set_arg(text: &str) -> Result<VertexSet, Fail> {
    Ok(VertexSet::from_iter_unchecked(
        parse_index_list(text).map_err(Fail::usage)?,
    ))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn run(cli: &Cli) -> Result<u8, Fail> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(cli, args),
        Command::Alpha(args) => cmd_alpha(cli, args),
        Command::Cliques(args) => cmd_cliques(cli, args),
        Command::Factor(args) => cmd_factor(cli, args),
        Command::Tiling(args) => cmd_tiling(cli, args),
        Command::Cover(args) => cmd_cover(cli, args),
        Command::CrossTiling(args) => cmd_cross(cli, args),
        Command::Absorb(sub) => match sub {
            AbsorbCommand::Verify(args) => cmd_absorb_verify(cli, args),
            AbsorbCommand::Reach(args) => cmd_absorb_reach(cli, args),
            AbsorbCommand::Census(args) => cmd_absorb_census(cli, args),
            AbsorbCommand::Transferral(args) => cmd_absorb_transferral(cli, args),
            AbsorbCommand::AbsorbingSet(args) => cmd_absorbing_set(cli, args),
        },
        Command::Wpart(sub) => match sub {
            WpartCommand::Check(args) => cmd_wpart_check(cli, args),
            WpartCommand::Search(args) => cmd_wpart_search(cli, args),
            WpartCommand::Estimate(args) => cmd_wpart_estimate(cli, args),
        },
        Command::Sweep(args) => cmd_sweep(cli, args),
        Command::Report(args) => cmd_report(cli, args),
    }
}

#[derive(Serialize)]
struct Sidecar<'a> {
    graph6: String,
    designated: &'a std::collections::BTreeMap<String, VertexSet>,
    provenance: &'a constructions::ConstructionSpec,
}

fn emit_instance(cli: &Cli, args: &GenArgs, inst: &LabeledInstance) -> Result<u8, Fail> {
    let g6 = inst.graph6();
    let sidecar = Sidecar {
        graph6: g6.clone(),
        designated: &inst.designated,
        provenance: &inst.provenance,
    };
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{g6}\n")).map_err(|e| Fail::io(e.to_string()))?;
    }
    if let Some(path) = &args.sidecar {
        let json = serde_json::to_string_pretty(&sidecar).expect("serializable");
        std::fs::write(path, json).map_err(|e| Fail::io(e.to_string()))?;
    }
    if args.out.is_none() {
        if cli.json {
            print_json(&sidecar);
        } else {
            println!("{g6}");
        }
    }
    Ok(EXIT_OK)
}

fn require<T: Copy>(opt: Option<T>, name: &str) -> Result<T, Fail> {
    opt.ok_or_else(|| Fail::usage(format!("--{name} is required for this family")))
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<u8, Fail> {
    let to_usage = |e: constructions::ConstructionError| Fail::usage(e.to_string());
    match args.family.as_str() {
        "multipartite" => {
            let sizes_text = args
                .sizes
                .as_deref()
                .ok_or_else(|| Fail::usage("--sizes is required for multipartite"))?;
            let sizes = parse_index_list(sizes_text).map_err(Fail::usage)?;
            let inst = complete_multipartite(&sizes).map_err(to_usage)?;
            emit_instance(cli, args, &inst)
        }
        "figure1" => {
            let n = require(args.n, "n")?;
            let r = require(args.r, "r")?;
            let x = match (args.x, args.rho) {
                (Some(x), _) => x,
                (None, Some(rho)) => default_x_from_rho(rho),
                (None, None) => return Err(Fail::usage("figure1 needs --x or --rho to derive it")),
            };
            let c = (x * n as f64).floor() as usize;
            let core = match args.core.as_str() {
                "edgeless" => core_edgeless(c),
                "c5-blowup" => core_c5_blowup(c),
                path => load_graph(path, Some(GraphFormat::Graph6))
                    .map_err(|e| Fail::usage(e.to_string()))?,
            };
            let inst = figure1(n, r, x, args.rho, &core).map_err(to_usage)?;
            emit_instance(cli, args, &inst)
        }
        "blowup" => {
            let base_path = args
                .base
                .as_deref()
                .ok_or_else(|| Fail::usage("--base is required for blowup"))?;
            let base = load_graph(base_path, None).map_err(|e| Fail::usage(e.to_string()))?;
            let n = require(args.n, "n")?;
            let epsilon = require(args.epsilon, "epsilon")?;
            let inst = blow_up(&base, n, epsilon, cli.seed).map_err(to_usage)?;
            emit_instance(cli, args, &inst)
        }
        "pruned" => {
            let source_path = args
                .source
                .as_deref()
                .ok_or_else(|| Fail::usage("--source is required for pruned"))?;
            let source = load_graph(source_path, None).map_err(|e| Fail::usage(e.to_string()))?;
            let delta = require(args.delta, "delta")?;
            let eta = require(args.eta, "eta")?;
            let pruned = degree_prune(&source, delta, eta).map_err(to_usage)?;
            if !cli.json && args.out.is_none() {
                eprintln!(
                    "pruned {} vertices; {} survive",
                    pruned.deleted_in_order.len(),
                    pruned.survivors.len()
                );
            }
            emit_instance(cli, args, &pruned.instance)
        }
        "core-search" => {
            let params = CoreSearchParams {
                m: require(args.m, "m")?,
                ell: require(args.ell, "ell")?,
                forbid: require(args.forbid, "forbid")?,
                target_mindeg: require(args.target_mindeg, "target-mindeg")?,
                alpha_cap: require(args.alpha_cap, "alpha-cap")?,
                seed: cli.seed,
                iterations: args.iterations.unwrap_or(40_000),
                restarts: args.restarts.unwrap_or(4),
            };
            match kfree_core_search(&params) {
                Ok(inst) => emit_instance(cli, args, &inst),
                Err(failure) => Err(Fail::undecided(format!(
                    "{} (best min degree {}, best alpha estimate {})",
                    failure.reason, failure.best_mindeg, failure.best_alpha_estimate
                ))),
            }
        }
        other => Err(Fail::usage(format!("unknown family {other:?}"))),
    }
}

fn cmd_alpha(cli: &Cli, args: &AlphaArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    if args.ell < 2 {
        return Err(Fail::usage("--ell must be at least 2"));
    }
    if let Some(m) = args.threshold {
        let verdict = alpha_ell_at_most(&g, args.ell, m).map_err(|e| Fail::usage(e.to_string()))?;
        if cli.json {
            print_json(&serde_json::json!({ "threshold": m, "satisfied": verdict }));
        } else {
            println!("alpha_{} <= {m}: {verdict}", args.ell);
        }
        return Ok(if verdict { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let result = if args.exact || g.n() <= EXACT_LIMIT {
        alpha_ell_exact(&g, args.ell).map_err(|e| Fail::usage(e.to_string()))?
    } else {
        alpha_ell_bounds(
            &g,
            args.ell,
            &BoundsEffort {
                restarts: args.restarts,
                seed: cli.seed,
            },
        )
    };
    if cli.json {
        print_json(&result);
    } else if result.exact {
        println!(
            "alpha_{} = {} witness {}",
            args.ell, result.lower, result.witness
        );
    } else {
        println!(
            "alpha_{} in [{}, {}] witness {}",
            args.ell, result.lower, result.upper, result.witness
        );
    }
    Ok(EXIT_OK)
}

fn cmd_cliques(cli: &Cli, args: &CliquesArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    if args.r < 1 {
        return Err(Fail::usage("--r must be at least 1"));
    }
    let list = enumerate_r_cliques(&g, args.r, args.cap);
    if cli.json {
        print_json(&list);
    } else {
        for c in &list.cliques {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            println!("{}", parts.join(" "));
        }
        if list.truncated {
            eprintln!("truncated at {} cliques", list.cliques.len());
        }
    }
    Ok(if list.truncated {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    })
}

fn cmd_factor(cli: &Cli, args: &GraphRArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    if args.r < 2 {
        return Err(Fail::usage("--r must be at least 2"));
    }
    let cert = has_kr_factor(&g, args.r, &budget_from(cli));
    if cli.json {
        print_json(&cert);
    } else {
        match &cert.outcome {
            FactorOutcome::Factor { tiling } => {
                println!(
                    "factor ({} parts, {} nodes)",
                    tiling.len(),
                    cert.stats.nodes
                );
                for part in &tiling.parts {
                    println!("{part}");
                }
            }
            FactorOutcome::NoFactor { obstruction } => {
                println!("no-factor: {obstruction} ({} nodes)", cert.stats.nodes);
            }
            FactorOutcome::Unknown { note } => {
                println!("unknown: {note} ({} nodes)", cert.stats.nodes);
            }
        }
    }
    Ok(match cert.outcome {
        FactorOutcome::Factor { .. } => EXIT_OK,
        FactorOutcome::NoFactor { .. } => EXIT_NEGATIVE,
        FactorOutcome::Unknown { .. } => EXIT_UNDECIDED,
    })
}

fn cmd_tiling(cli: &Cli, args: &GraphRArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    if args.r < 2 {
        return Err(Fail::usage("--r must be at least 2"));
    }
    let search = max_kr_tiling(&g, args.r, &budget_from(cli));
    if cli.json {
        print_json(&search);
    } else {
        println!(
            "{} parts covering {} of {} vertices ({}, {} nodes)",
            search.tiling.len(),
            search.tiling.covered.len(),
            g.n(),
            if search.exact { "exact" } else { "heuristic" },
            search.stats.nodes
        );
        for part in &search.tiling.parts {
            println!("{part}");
        }
    }
    Ok(if search.exact {
        EXIT_OK
    } else {
        EXIT_UNDECIDED
    })
}

fn cmd_cover(cli: &Cli, args: &CoverArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    if args.r < 1 {
        return Err(Fail::usage("--r must be at least 1"));
    }
    let removed = vertex_set_arg(&args.remove)?;
    removed
        .check_range(g.n())
        .map_err(|e| Fail::usage(e.to_string()))?;
    let violators = cover_check(&g, args.r, &removed);
    if cli.json {
        print_json(&serde_json::json!({
            "removed": removed,
            "uncovered": violators,
        }));
    } else if violators.is_empty() {
        println!("cover holds: every vertex lies in a K_{}", args.r);
    } else {
        println!("{} uncovered: {}", violators.len(), violators);
    }
    Ok(EXIT_OK)
}

fn cmd_cross(cli: &Cli, args: &CrossArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    let x = vertex_set_arg(&args.x_side)?;
    let y = vertex_set_arg(&args.y_side)?;
    if args.a > args.r {
        return Err(Fail::usage("--a cannot exceed --r"));
    }
    if !x.is_disjoint(&y) {
        return Err(Fail::usage("sides must be disjoint"));
    }
    for side in [&x, &y] {
        side.check_range(g.n())
            .map_err(|e| Fail::usage(e.to_string()))?;
    }
    let tiling = cross_tiling(&g, &x, &y, args.r, args.a);
    if cli.json {
        print_json(&tiling);
    } else {
        println!("{} parts", tiling.len());
        for part in &tiling.parts {
            println!("{part}");
        }
    }
    Ok(EXIT_OK)
}

fn ternary_exit(t: Ternary) -> u8 {
    match t {
        Ternary::True => EXIT_OK,
        Ternary::False => EXIT_NEGATIVE,
        Ternary::Unknown => EXIT_UNDECIDED,
    }
}

fn cmd_absorb_verify(cli: &Cli, args: &AbsorbVerifyArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    let s = vertex_set_arg(&args.set)?;
    let a = vertex_set_arg(&args.absorber)?;
    if s.len() != args.r {
        return Err(Fail::usage(format!(
            "--set must have exactly r = {} vertices",
            args.r
        )));
    }
    if !s.is_disjoint(&a) {
        return Err(Fail::usage("--set and --absorber must be disjoint"));
    }
    for set in [&s, &a] {
        set.check_range(g.n())
            .map_err(|e| Fail::usage(e.to_string()))?;
    }
    let verdict = verify_absorber(&g, &s, &a, args.r, args.t, &budget_from(cli));
    if cli.json {
        print_json(&serde_json::json!({ "absorber": verdict }));
    } else {
        println!("absorber: {verdict:?}");
    }
    Ok(ternary_exit(verdict))
}

fn cmd_absorb_reach(cli: &Cli, args: &AbsorbReachArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    if args.u == args.v || args.u >= g.n() || args.v >= g.n() {
        return Err(Fail::usage(
            "--u and --v must be distinct vertices of the graph",
        ));
    }
    let family = reachable_packing(&g, args.u, args.v, args.r, args.t, &budget_from(cli));
    if cli.json {
        print_json(&family);
    } else {
        println!(
            "{} disjoint reachable sets ({})",
            family.sets.len(),
            if family.complete {
                "maximal"
            } else {
                "budget-limited"
            }
        );
        for set in &family.sets {
            println!("{set}");
        }
    }
    Ok(if family.complete {
        EXIT_OK
    } else {
        EXIT_UNDECIDED
    })
}

fn cmd_absorb_census(cli: &Cli, args: &AbsorbCensusArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    let parts: Result<Vec<VertexSet>, Fail> = args.parts.split('/').map(vertex_set_arg).collect();
    let partition = Partition::new(parts?, g.n()).map_err(Fail::usage)?;
    if args.beta * (g.n() as f64) < 1.0 {
        return Err(Fail::usage("beta * n must be at least 1"));
    }
    let census = index_census(&g, &partition, args.r, args.beta);
    if cli.json {
        print_json(&census);
    } else {
        println!(
            "{} index vectors at threshold {} ({})",
            census.entries.len(),
            census.threshold,
            if census.exact {
                "exact"
            } else {
                "greedy-only exclusions"
            }
        );
        for entry in &census.entries {
            println!("{} x{}", entry.vector, entry.packing.len());
        }
    }
    Ok(if census.exact {
        EXIT_OK
    } else {
        EXIT_UNDECIDED
    })
}

fn cmd_absorb_transferral(cli: &Cli, args: &AbsorbTransferralArgs) -> Result<u8, Fail> {
    let vectors: Vec<IndexVector> = match (&args.census, &args.vectors) {
        (Some(path), None) => {
            let text = read_input(path).map_err(|e| Fail::io(e.to_string()))?;
            let census: IndexCensus =
                serde_json::from_str(&text).map_err(|e| Fail::usage(e.to_string()))?;
            census.vectors()
        }
        (None, Some(inline)) => inline
            .split(';')
            .map(|v| parse_index_list(v).map(IndexVector).map_err(Fail::usage))
            .collect::<Result<_, _>>()?,
        _ => return Err(Fail::usage("give exactly one of --census or --vectors")),
    };
    if args.i == args.j {
        return Err(Fail::usage("--i and --j must differ"));
    }
    if let Some(first) = vectors.first() {
        if args.i >= first.0.len() || args.j >= first.0.len() {
            return Err(Fail::usage("part index out of range for these vectors"));
        }
    }
    let report = transferral(&vectors, args.i, args.j);
    if cli.json {
        print_json(&report);
    } else {
        match &report.witness {
            Some((s, t)) => println!("transferral found: {s} - {t}"),
            None => println!("no witness pair"),
        }
        println!("lattice membership: {}", report.in_lattice);
    }
    Ok(if report.found() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_absorbing_set(cli: &Cli, args: &AbsorbingSetArgs) -> Result<u8, Fail> {
    let g = graph_arg(&args.input, &args.format)?;
    let a = vertex_set_arg(&args.set)?;
    a.check_range(g.n())
        .map_err(|e| Fail::usage(e.to_string()))?;
    let params = AbsorbingCheckParams {
        exhaustive_cap: args.exhaustive_cap,
        samples: args.samples,
        seed: cli.seed,
    };
    let outcome = verify_absorbing_set(&g, &a, args.r, args.xi, &params, &budget_from(cli));
    if cli.json {
        print_json(&outcome);
    } else {
        match &outcome {
            AbsorbingOutcome::Holds { checked } => println!("holds ({checked} sets checked)"),
            AbsorbingOutcome::HoldsOnSample { checked } => {
                println!("holds on sample ({checked} sets)")
            }
            AbsorbingOutcome::Fails { counterexample } => {
                println!("fails: leftover {counterexample} has no factor")
            }
            AbsorbingOutcome::Unknown { note } => println!("unknown: {note}"),
        }
    }
    Ok(match outcome {
        AbsorbingOutcome::Holds { .. } | AbsorbingOutcome::HoldsOnSample { .. } => EXIT_OK,
        AbsorbingOutcome::Fails { .. } => EXIT_NEGATIVE,
        AbsorbingOutcome::Unknown { .. } => EXIT_UNDECIDED,
    })
}

fn weighted_arg(path: &str) -> Result<WeightedReducedGraph, Fail> {
    let text = read_input(path).map_err(|e| Fail::io(e.to_string()))?;
    WeightedReducedGraph::from_json(&text).map_err(|e| Fail::usage(e.to_string()))
}

fn cmd_wpart_check(cli: &Cli, args: &WpartCheckArgs) -> Result<u8, Fail> {
    let g = weighted_arg(&args.input)?;
    let outcome = if args.exact {
        check_inequality_one_exact(&g, args.c, args.mu)
    } else {
        check_inequality_one(&g, args.c, args.mu)
    }
    .map_err(|e| Fail::usage(e.to_string()))?;
    if cli.json {
        print_json(&outcome);
    } else {
        match &outcome {
            InequalityOutcome::Pass {
                min_slack,
                tightest,
            } => {
                println!("pass (min slack {min_slack:.6} at pair {tightest:?})")
            }
            InequalityOutcome::Fail { pair, slack } => {
                println!("fail at pair {pair:?} (slack {slack:.6})")
            }
        }
    }
    Ok(if outcome.passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_wpart_search(cli: &Cli, args: &WpartSearchArgs) -> Result<u8, Fail> {
    let g = weighted_arg(&args.input)?;
    match random_partition_search(&g, args.c, args.mu, args.t, cli.seed, args.retries) {
        Ok(family) => {
            if cli.json {
                print_json(&family);
            } else {
                println!(
                    "accepted on trial {}: Q = {} (needed {})",
                    family.trials_used, family.q, family.required
                );
                for set in &family.sets {
                    println!("{set}");
                }
            }
            // Paranoia welcome here: every returned set re-verifies.
            debug_assert!(family
                .sets
                .iter()
                .all(|s| check_condition_e(&g, s, args.c, args.mu)));
            Ok(EXIT_OK)
        }
        Err(e @ WeightedError::RetriesExhausted { .. }) => Err(Fail::undecided(e.to_string())),
        Err(e) => Err(Fail::usage(e.to_string())),
    }
}

fn cmd_wpart_estimate(cli: &Cli, args: &WpartEstimateArgs) -> Result<u8, Fail> {
    let g = weighted_arg(&args.input)?;
    let est = estimate_bad_probability(&g, args.c, args.mu, args.t, args.trials, cli.seed)
        .map_err(|e| Fail::usage(e.to_string()))?;
    if cli.json {
        print_json(&est);
    } else {
        println!(
            "bad-set probability {:.5} (95% Wilson [{:.5}, {:.5}] from {} trials; reference bound {:.5})",
            est.estimate, est.wilson_low, est.wilson_high, est.trials, est.reference_bound
        );
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs) -> Result<u8, Fail> {
    let text = read_input(&args.config).map_err(|e| Fail::io(e.to_string()))?;
    let config: SweepConfig =
        serde_json::from_str(&text).map_err(|e| Fail::usage(format!("bad config: {e}")))?;
    config.validate().map_err(|e| Fail::usage(e.to_string()))?;
    let records = sweep::run_sweep(&config, &args.out).map_err(|e| match e {
        sweep::SweepError::Io(inner) => Fail::io(inner.to_string()),
        other => Fail::usage(other.to_string()),
    })?;
    let summaries = sweep::report(&records);
    if cli.json {
        print_json(&summaries);
    } else {
        println!("{}", sweep::report_table(&summaries));
        println!("{} records -> {}", records.len(), args.out.display());
    }
    Ok(EXIT_OK)
}

fn cmd_report(cli: &Cli, args: &ReportArgs) -> Result<u8, Fail> {
    let text = read_input(&args.records).map_err(|e| Fail::io(e.to_string()))?;
    let records: Vec<sweep::SweepRecord> =
        serde_json::from_str(&text).map_err(|e| Fail::usage(format!("bad records: {e}")))?;
    let summaries = sweep::report(&records);
    if cli.json {
        print_json(&summaries);
    } else if args.csv {
        print!("{}", sweep::report_csv(&summaries));
    } else {
        print!("{}", sweep::report_table(&summaries));
    }
    Ok(EXIT_OK)
}
