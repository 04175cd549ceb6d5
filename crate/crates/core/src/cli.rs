//! Command-line front end. [`run`] parses arguments and returns the process
//! exit code; the `nsd` binary is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 failed certificate or verification, 2 invalid
//! input or unmet precondition, 3 resample cap or solver budget exhausted.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, BoundReport};
use crate::decompose::{
    decompose_by_chromatic, decompose_general, paper_part_bound, parse_partition_file, regular_decompose,
    verify_decomposition, DecomposeError, GeneralPipelineParams, PipelineResult, RegularRoute, SolveOptions,
};
use crate::graph::{generators, isolated_edges, parse_edge_list, serialize_edge_list, Graph};
use crate::report::VerificationReport;
use crate::weighting::{format_weighting_file, parse_weighting_file, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment variable overriding the default solver node budget.
pub const BUDGET_ENV: &str = "NSD_SOLVER_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "nsd", version, about = "Edge decompositions into neighbour-sum-distinguishing 3-weightable parts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a graph and write partition, weightings and report.
    Decompose(DecomposeArgs),
    /// Check a partition and per-part weightings against a graph.
    Verify(VerifyArgs),
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Print the numeric certificates.
    Certify(CertifyArgs),
    /// Decompose every graph file in a directory and summarise.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Regular dispatcher for regular graphs, chromatic split otherwise.
    Auto,
    Regular,
    Chromatic,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Desk,
    PaperFaithful,
}

#[derive(Clone, Debug, Args)]
pub struct PipelineArgs {
    #[arg(long, value_enum, default_value_t = Strategy::Auto)]
    pub strategy: Strategy,
    /// Required whenever the chosen pipeline draws random bits.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Minimum degree kept in H by the general pipeline.
    #[arg(long, default_value_t = 3)]
    pub t: u64,
    /// Degree slack of the general pipeline.
    #[arg(long, default_value_t = 2)]
    pub m: u64,
    /// Search-node budget per solver call.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Desk)]
    pub profile: ProfileArg,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub partition: PathBuf,
    /// One weighting file per part, in part order.
    pub weights: Vec<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Random d-regular graph on n vertices.
    Regular {
        n: usize,
        d: usize,
        #[arg(long)]
        seed: u64,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Petersen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Degree range to tabulate instead of the default set, e.g. `even 14..60`.
    #[arg(long, num_args = 2, value_names = ["PARITY", "FROM..TO"])]
    pub range: Option<Vec<String>>,
    /// Print JSON instead of the table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    pub dir: PathBuf,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Summary file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock times (makes the summary non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Decompose(args) => cmd_decompose(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Certify(args) => cmd_certify(&args),
        Command::Corpus(args) => cmd_corpus(&args),
    }
}

/// Why a pipeline produced no result.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn precondition(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<DecomposeError> for Failure {
    fn from(err: DecomposeError) -> Self {
        let code = if err.is_precondition() {
            EXIT_PRECONDITION
        } else if err.is_cap() {
            EXIT_CAP
        } else {
            EXIT_FAILED
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64, Failure> {
    seed.ok_or_else(|| Failure::precondition(format!("--seed is required: {what} is randomised")))
}

/// Runs the pipeline selected by `args` on `graph`.
pub fn run_pipeline(graph: &Graph, args: &PipelineArgs) -> Result<PipelineResult, Failure> {
    let isolated = isolated_edges(graph);
    if !isolated.is_empty() {
        return Err(DecomposeError::IsolatedEdges(isolated.to_vec()).into());
    }
    let options = SolveOptions { budget: args.budget };
    let strategy = match args.strategy {
        Strategy::Auto if graph.regular_degree().is_some() && graph.edge_count() > 0 => Strategy::Regular,
        Strategy::Auto => Strategy::Chromatic,
        s => s,
    };
    let result = match strategy {
        Strategy::Regular => {
            let (route, _) = RegularRoute::select(graph)?;
            let seed = match route {
                RegularRoute::TwoPart => require_seed(args.seed, "the two-part regular pipeline")?,
                _ => args.seed.unwrap_or(0),
            };
            regular_decompose(graph, seed, options)?
        }
        Strategy::Chromatic => decompose_by_chromatic(graph, options)?,
        Strategy::General => {
            let params = GeneralPipelineParams {
                t: args.t,
                m: args.m,
                solve: options,
                ..GeneralPipelineParams::default()
            };
            let seed = require_seed(args.seed, "the general pipeline")?;
            decompose_general(graph, &params, seed)?
        }
        Strategy::Auto => unreachable!("auto is resolved above"),
    };
    Ok(result)
}

#[derive(Serialize)]
struct PartSummary<'a> {
    index: usize,
    edges: usize,
    strategy: &'a str,
    weighting_file: Option<String>,
    solver_nodes: u64,
    certificate: &'a VerificationReport,
}

fn weighting_file_name(index: usize) -> String {
    format!("part-{index}.weights")
}

/// Machine-readable report of a pipeline result.
pub fn result_report(graph: &Graph, result: &PipelineResult) -> serde_json::Value {
    let parts: Vec<PartSummary<'_>> = result
        .parts
        .iter()
        .enumerate()
        .map(|(index, part)| PartSummary {
            index,
            edges: part.edges.len(),
            strategy: &part.strategy,
            weighting_file: part.weighting.as_ref().map(|_| weighting_file_name(index)),
            solver_nodes: part.solver_nodes,
            certificate: &part.certificate,
        })
        .collect();
    json!({
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "part_count": result.part_count(),
        "all_certified": result.all_certified(),
        "partition_file": "partition.txt",
        "metadata": result.metadata,
        "parts": parts,
    })
}

fn write_artifacts(out: &Path, graph: &Graph, result: &PipelineResult) -> std::io::Result<()> {
    fs::create_dir_all(out)?;
    fs::write(out.join("partition.txt"), result.partition.to_file())?;
    for (i, part) in result.parts.iter().enumerate() {
        if part.weighting.is_some() {
            fs::write(out.join(weighting_file_name(i)), format_weighting_file(part.weighted_edges()))?;
        }
    }
    let report = serde_json::to_string_pretty(&result_report(graph, result)).expect("report serialises");
    fs::write(out.join("report.json"), report + "\n")
}

fn cmd_decompose(args: &DecomposeArgs) -> i32 {
    if args.pipeline.profile == ProfileArg::PaperFaithful {
        let bound = paper_part_bound();
        let report = json!({
            "profile": "paper-faithful",
            "ran": false,
            "analytic_bound": bound.total,
            "analytic_bound_h": bound.h_parts,
            "analytic_bound_f": bound.f_parts,
        });
        let text = serde_json::to_string_pretty(&report).expect("report serialises");
        println!("{text}");
        if let Err(e) = fs::create_dir_all(&args.out).and_then(|_| fs::write(args.out.join("report.json"), text + "\n")) {
            eprintln!("error: {e}");
            return EXIT_FAILED;
        }
        return EXIT_OK;
    }
    let graph = match read_graph(&args.graph) {
        Ok(g) => g,
        Err(f) => return report_failure(f),
    };
    let result = match run_pipeline(&graph, &args.pipeline) {
        Ok(r) => r,
        Err(f) => return report_failure(f),
    };
    if let Err(e) = write_artifacts(&args.out, &graph, &result) {
        eprintln!("error: writing {}: {e}", args.out.display());
        return EXIT_FAILED;
    }
    println!(
        "{} parts ({}); artifacts in {}",
        result.part_count(),
        if result.all_certified() { "all certified" } else { "certificate failures" },
        args.out.display()
    );
    if result.all_certified() {
        EXIT_OK
    } else if result.any_budget_exhausted() {
        eprintln!("error: solver budget exhausted on some part");
        EXIT_CAP
    } else {
        EXIT_FAILED
    }
}

fn report_failure(failure: Failure) -> i32 {
    eprintln!("error: {}", failure.message);
    failure.code
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let load = || -> Result<(Graph, Vec<(usize, usize)>, Vec<Vec<(usize, u32)>>), Failure> {
        let graph = read_graph(&args.graph)?;
        let read = |p: &PathBuf| fs::read_to_string(p).map_err(|e| Failure::precondition(format!("{}: {e}", p.display())));
        let partition = parse_partition_file(&read(&args.partition)?)
            .map_err(|e| Failure::precondition(format!("{}: {e}", args.partition.display())))?;
        let weights = args
            .weights
            .iter()
            .map(|p| parse_weighting_file(&read(p)?).map_err(|e| Failure::precondition(format!("{}: {e}", p.display()))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((graph, partition, weights))
    };
    let (graph, partition, weights) = match load() {
        Ok(x) => x,
        Err(f) => return report_failure(f),
    };
    let report = verify_decomposition(&graph, &partition, &weights, args.k);
    print!("{report}");
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn cmd_generate(args: &GenerateArgs) -> i32 {
    let graph = match &args.family {
        Family::Regular { n, d, seed } => match generators::random_regular(*n, *d, *seed) {
            Ok(g) => g,
            Err(e) => return report_failure(Failure::precondition(e.to_string())),
        },
        Family::Complete { n } => generators::complete(*n),
        Family::Cycle { n } if *n < 3 => return report_failure(Failure::precondition("a cycle needs n >= 3")),
        Family::Cycle { n } => generators::cycle(*n),
        Family::Petersen => generators::petersen(),
    };
    let text = serialize_edge_list(&graph) + "\n";
    match &args.out {
        Some(path) => match fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => report_failure(Failure {
                code: EXIT_FAILED,
                message: format!("{}: {e}", path.display()),
            }),
        },
        None => {
            print!("{text}");
            EXIT_OK
        }
    }
}

/// Parses `FROM..TO` (inclusive).
fn parse_range(text: &str) -> Option<(u64, u64)> {
    let (a, b) = text.split_once("..")?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a <= b).then_some((a, b))
}

fn cmd_certify(args: &CertifyArgs) -> i32 {
    let reports: Vec<BoundReport> = match &args.range {
        None => bounds::default_certificates(),
        Some(range) => {
            let parity = Parity::from_str(&range[0], true);
            match (parity, parse_range(&range[1])) {
                (Ok(Parity::Even), Some((a, b))) => bounds::even_range(a, b),
                (Ok(Parity::Odd), Some((a, b))) => bounds::odd_range(a, b),
                _ => {
                    return report_failure(Failure::precondition(format!(
                        "--range expects `even|odd FROM..TO`, got {range:?}"
                    )))
                }
            }
        }
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialise"));
    } else {
        print!("{}", bounds::format_table(&reports));
    }
    if reports.iter().all(|r| r.satisfied) {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// Outcome of one corpus file.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub file: String,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub route: Option<String>,
    pub part_count: Option<usize>,
    pub promised_parts: Option<usize>,
    pub certified: bool,
    pub solver_nodes: u64,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

fn corpus_entry(path: &Path, args: &PipelineArgs, timings: bool) -> CorpusEntry {
    let start = Instant::now();
    let mut entry = CorpusEntry {
        file: path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
        vertices: None,
        edges: None,
        route: None,
        part_count: None,
        promised_parts: None,
        certified: false,
        solver_nodes: 0,
        error: None,
        millis: None,
    };
    match read_graph(path).and_then(|g| run_pipeline(&g, args).map(|r| (g, r))) {
        Ok((graph, result)) => {
            entry.vertices = Some(graph.vertex_count());
            entry.edges = Some(graph.edge_count());
            entry.route = result
                .metadata
                .get("route")
                .or_else(|| result.metadata.get("strategy"))
                .cloned();
            entry.part_count = Some(result.part_count());
            entry.promised_parts = result.metadata.get("promised_parts").and_then(|p| p.parse().ok());
            entry.solver_nodes = result.parts.iter().map(|p| p.solver_nodes).sum();
            entry.certified = result.all_certified() && result.audit(&graph).passed();
            if !entry.certified {
                entry.error = Some("certificate failed".to_string());
            } else if entry.promised_parts.is_some_and(|p| result.part_count() > p) {
                entry.certified = false;
                entry.error = Some("part count above promise".to_string());
            }
        }
        Err(f) => entry.error = Some(f.message),
    }
    if timings {
        entry.millis = Some(start.elapsed().as_millis());
    }
    entry
}

/// Runs the pipeline on every regular file in `dir`, in name order.
pub fn run_corpus(dir: &Path, args: &PipelineArgs, timings: bool) -> std::io::Result<Vec<CorpusEntry>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.is_file());
    files.sort();
    Ok(files.par_iter().map(|p| corpus_entry(p, args, timings)).collect())
}

fn cmd_corpus(args: &CorpusArgs) -> i32 {
    let entries = match run_corpus(&args.dir, &args.pipeline, args.timings) {
        Ok(e) => e,
        Err(e) => return report_failure(Failure::precondition(format!("{}: {e}", args.dir.display()))),
    };
    let failures = entries.iter().filter(|e| !e.certified).count();
    let mut part_histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &entries {
        if let Some(p) = e.part_count {
            *part_histogram.entry(p).or_default() += 1;
        }
    }
    let summary = json!({
        "files": entries.len(),
        "certified": entries.len() - failures,
        "failures": failures,
        "part_histogram": part_histogram,
        "results": entries,
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary serialises") + "\n";
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return report_failure(Failure {
                    code: EXIT_FAILED,
                    message: format!("{}: {e}", path.display()),
                });
            }
            println!("{} files, {} failures", entries.len(), failures);
        }
        None => print!("{text}"),
    }
    if failures == 0 {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
