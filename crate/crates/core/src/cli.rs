//! Command-line surface. Every subcommand is a thin wrapper over library
//! functions; all randomness flows from `--seed`.
//!
//! Exit codes: 0 success, 1 usage error, 2 contract violation,
//! 3 warning-level outcome (e.g. a removal loop stopped at its iteration
//! cap).

use crate::bench::{self, BenchOptions};
use crate::fourfree;
use crate::gen;
use crate::graph::{tripartite_embed, Graph, Part, TripartiteGraph, WeightedTripartiteGraph};
use crate::harness;
use crate::io;
use crate::manifest::{self, InputInfo, VerifyInput};
use crate::oracle;
use crate::reductions::{self, ReductionCertificate, TriangleToKCycle};
use crate::slicing::{self, PipelineConfig, RemovalReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_WARNING: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cyclescrub",
    about = "Short-cycle scrubbing, slicing, gadget reductions, and brute-force verification for bounded-degree graphs",
    version
)]
struct Cli {
    /// Worker threads for per-slice work (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate seeded random instances.
    Gen(GenArgs),
    /// Run the scrubbing pipeline and write a slice directory + manifest.
    Scrub(ScrubArgs),
    /// Apply a gadget reduction and write the output graph + certificate.
    Reduce(ReduceArgs),
    /// Replay a manifest or certificate against the brute-force oracles.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run a brute-force oracle directly.
    Oracle(OracleArgs),
    /// Measure the pipeline over a grid of sizes and seeds (CSV output).
    Bench(BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum GenKind {
    Random,
    Tripartite,
    Planted,
    Weighted,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum, default_value_t = GenKind::Random)]
    kind: GenKind,
    /// Vertex count.
    #[arg(long)]
    n: usize,
    /// Maximum degree.
    #[arg(long)]
    d: usize,
    /// Weight bound for weighted instances.
    #[arg(long, default_value_t = 4)]
    w: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum ScrubMode {
    /// Remove dense pieces for every cycle length up to k, then slice.
    Most,
    /// Additionally delete every remaining in-slice 4-cycle (k is fixed at 4).
    All4,
}

#[derive(Args, Debug)]
struct ScrubArgs {
    #[arg(long)]
    input: PathBuf,
    /// Read the input as a tripartite edge list instead of a plain one.
    #[arg(long)]
    tripartite: bool,
    #[arg(long, value_enum, default_value_t = ScrubMode::Most)]
    mode: ScrubMode,
    /// Flat `key = value` parameter file; explicit flags override it.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Largest cycle length scrubbed (mode `most`; default 4).
    #[arg(long)]
    k: Option<usize>,
    /// Slicing exponent; defaults to 0.1 for `most` and 0.05 for `all4`.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: PathBuf,
    /// Brute-force cycle audit of every slice up to this length.
    #[arg(long, num_args = 0..=1, default_missing_value = "4")]
    audit: Option<usize>,
    /// Run even if the input violates the degree bound.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    density_floor: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    path_samples: Option<usize>,
    #[arg(long)]
    pair_samples: Option<usize>,
    #[arg(long)]
    hit_threshold: Option<usize>,
    /// Stop each removal loop after this many pieces (warning outcome).
    #[arg(long)]
    iteration_cap: Option<usize>,
    /// Keep sampling even when the budget covers the whole population.
    #[arg(long)]
    no_exact_fallback: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Gadget {
    /// Replace every edge by a path of length t.
    Subdivide,
    /// Replace every B-C edge of a tripartite graph by a path of length t.
    SubdivideBc,
    /// Translate triangles into k-cycles (refused for powers of two).
    TriangleToKcycle,
    /// Expand a weighted instance; triangles mirror zero-weight triangles.
    ZeroTriangle,
    /// Per-slice distance instances from a scrub directory: each slice
    /// minus its queried side-pair edges, plus the query list.
    DistanceInstances,
    /// Update/query script replaying a scrub directory's slice family as
    /// one evolving graph.
    UpdateScript,
    /// Girth-gap labels (3 vs >= 5) for a strict-mode scrub directory.
    GirthGap,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long, value_enum)]
    gadget: Gadget,
    /// Source graph (or, for harness gadgets, the scrub input graph).
    #[arg(long)]
    input: PathBuf,
    /// Read the input as a tripartite edge list (harness gadgets).
    #[arg(long)]
    tripartite: bool,
    /// Output graph or script path (omitted when a gadget is refused).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Certificate output path (JSON).
    #[arg(long)]
    cert_out: Option<PathBuf>,
    /// Scrub directory the harness gadgets replay.
    #[arg(long)]
    manifest_dir: Option<PathBuf>,
    /// Output directory for per-instance files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Also write exact-BFS reference answers.
    #[arg(long)]
    with_answers: bool,
    /// Which side pair the distance instances drop and query.
    #[arg(long, value_enum, default_value_t = Orientation::Bc)]
    orientation: Orientation,
    /// Initial-graph file the update script's INIT line names.
    #[arg(long)]
    init_out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Orientation {
    Bc,
    Ab,
    Ac,
}

impl Orientation {
    fn sides(self) -> (Part, Part) {
        match self {
            Orientation::Bc => (Part::B, Part::C),
            Orientation::Ab => (Part::A, Part::B),
            Orientation::Ac => (Part::A, Part::C),
        }
    }
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Check a scrub manifest: E' soundness, no invention, exact coverage,
    /// and 4-cycle-freeness in strict mode.
    Manifest(VerifyManifestArgs),
    /// Recheck a reduction certificate's counting or existence identity.
    Reduction(VerifyReductionArgs),
    /// Feed distance answers through the candidate filter and compare the
    /// verdicts against the brute-force oracle on the queried side pair.
    Distance(VerifyDistanceArgs),
}

#[derive(Args, Debug)]
struct VerifyDistanceArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tripartite: bool,
    /// Scrub directory whose manifest pins the pipeline configuration.
    #[arg(long)]
    dir: PathBuf,
    /// Distance threshold; defaults to the manifest's k.
    #[arg(long)]
    k: Option<usize>,
    /// Answers file (`instance u v distance`, `inf` allowed).
    #[arg(long)]
    answers: Option<PathBuf>,
    /// Use the exact-BFS reference answerer instead of a file.
    #[arg(long)]
    exact: bool,
    /// Replay an update/query script to produce the answers.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Initial graph named by the script's INIT line.
    #[arg(long)]
    init: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Orientation::Bc)]
    orientation: Orientation,
}

#[derive(Args, Debug)]
struct VerifyManifestArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tripartite: bool,
    #[arg(long)]
    dir: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum SourceKind {
    Plain,
    Tripartite,
    Weighted,
}

#[derive(Args, Debug)]
struct VerifyReductionArgs {
    #[arg(long)]
    cert: PathBuf,
    #[arg(long)]
    source: PathBuf,
    #[arg(long, value_enum, default_value_t = SourceKind::Plain)]
    source_kind: SourceKind,
    #[arg(long)]
    target: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum OracleOp {
    Triangles,
    AllEdge,
    Kcycles,
    Girth,
    ZeroTriangle,
    DegreeSplit,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(value_enum)]
    op: OracleOp,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    tripartite: bool,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Print every witness, not just counts.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = ScrubMode::All4)]
    mode: ScrubMode,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    density_floor: Option<usize>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run(&args)
}

/// Parse and execute; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    if cli.jobs > 0 {
        // best effort: later calls in one process keep the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Scrub(args) => cmd_scrub(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn stringify(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Bulk stdout writer: a reader closing the pipe (`... | head`) ends the
/// command quietly instead of panicking.
fn emit_lines<I: IntoIterator<Item = String>>(lines: I) -> CmdResult {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for line in lines {
        if let Err(e) = writeln!(out, "{line}") {
            return if e.kind() == std::io::ErrorKind::BrokenPipe {
                Ok(EXIT_OK)
            } else {
                Err(e.to_string())
            };
        }
    }
    Ok(EXIT_OK)
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    if args.n == 0 {
        return Err("vertex count must be positive".to_string());
    }
    if args.d + 1 > args.n {
        return Err(format!(
            "degree bound {} exceeds n - 1 = {}",
            args.d,
            args.n - 1
        ));
    }
    match args.kind {
        GenKind::Random => {
            let g = gen::gen_random_bounded(args.n, args.d, args.seed);
            io::write_graph(&g, &args.out).map_err(stringify)?;
            println!("wrote {} vertices, {} edges", g.n(), g.m());
        }
        GenKind::Tripartite => {
            let tg = gen::gen_random_tripartite(args.n, args.d, args.seed);
            io::write_tripartite(&tg, &args.out).map_err(stringify)?;
            println!("wrote {} vertices, {} edges", tg.n(), tg.graph().m());
        }
        GenKind::Planted => {
            if args.n < 3 || args.d < 2 {
                return Err("planted instances need n >= 3 and d >= 2".to_string());
            }
            let (tg, e) = gen::gen_planted_triangle(args.n, args.d, args.seed);
            io::write_tripartite(&tg, &args.out).map_err(stringify)?;
            println!(
                "wrote {} vertices, {} edges; planted edge {} {}",
                tg.n(),
                tg.graph().m(),
                e.0,
                e.1
            );
        }
        GenKind::Weighted => {
            if args.w < 0 {
                return Err("weight bound must be nonnegative".to_string());
            }
            let wg = gen::gen_weighted_tripartite(args.n, args.d, args.w, args.seed);
            io::write_weighted_tripartite(&wg, &args.out).map_err(stringify)?;
            println!(
                "wrote {} vertices, {} edges, weight bound {}",
                wg.tripartite().n(),
                wg.tripartite().graph().m(),
                wg.weight_bound()
            );
        }
    }
    Ok(EXIT_OK)
}

fn build_config(args: &ScrubArgs) -> Result<PipelineConfig, String> {
    let default_alpha = match args.mode {
        ScrubMode::Most => 0.1,
        ScrubMode::All4 => 0.05,
    };
    let mut cfg = PipelineConfig::new(4, default_alpha, 0);
    if let Some(path) = &args.params {
        let text = std::fs::read_to_string(path).map_err(stringify)?;
        cfg.apply_flat_config(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    // explicit flags win over the config file
    if let Some(k) = args.k {
        cfg.k = k;
    }
    if let Some(alpha) = args.alpha {
        cfg.alpha = alpha;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(omega) = args.omega {
        cfg.omega = omega;
    }
    if let Some(epsilon) = args.epsilon {
        cfg.epsilon = epsilon;
    }
    if args.density_floor.is_some() {
        cfg.density_floor = args.density_floor;
    }
    if args.path_samples.is_some() {
        cfg.path_samples = args.path_samples;
    }
    if args.pair_samples.is_some() {
        cfg.pair_samples = args.pair_samples;
    }
    if args.hit_threshold.is_some() {
        cfg.hit_threshold = args.hit_threshold;
    }
    if args.iteration_cap.is_some() {
        cfg.iteration_cap = args.iteration_cap;
    }
    if args.no_exact_fallback {
        cfg.exact_fallback = false;
    }
    if args.force {
        cfg.force = true;
    }
    Ok(cfg)
}

/// Rebuild the report a scrub directory came from by rerunning the pipeline
/// with the manifest's pinned configuration; determinism makes them match,
/// and the assignment is cross-checked to catch mismatched inputs.
fn report_from_manifest(
    graph: &Path,
    tripartite: bool,
    dir: &Path,
) -> Result<(RemovalReport, manifest::Manifest, TripartiteGraph), String> {
    let man = manifest::read_manifest(dir).map_err(stringify)?;
    if man.input.tripartite != tripartite {
        return Err(format!(
            "manifest expects a {} input",
            if man.input.tripartite { "tripartite" } else { "plain" }
        ));
    }
    let cfg = man.config.clone();
    let strict = man.mode == "all4";
    let (report, tg) = if tripartite {
        let tg = io::read_tripartite(graph).map_err(stringify)?;
        let report = if strict {
            fourfree::remove_all_4cycles_tripartite(&tg, &cfg)
        } else {
            slicing::remove_most_k_cycles_tripartite(&tg, &cfg)
        }
        .map_err(stringify)?;
        (report, tg)
    } else {
        let g = io::read_graph(graph).map_err(stringify)?;
        let report = if strict {
            fourfree::remove_all_4cycles(&g, &cfg)
        } else {
            slicing::remove_most_k_cycles(&g, &cfg)
        }
        .map_err(stringify)?;
        let tg = tripartite_embed(&g);
        (report, tg)
    };
    if report.assignment.index != man.assignment || report.s() != man.s {
        return Err(
            "replayed pipeline disagrees with the manifest (wrong input graph?)".to_string(),
        );
    }
    Ok((report, man, tg))
}

fn cmd_scrub(args: ScrubArgs) -> CmdResult {
    let cfg = build_config(&args)?;
    if let Some(k) = args.audit {
        if !(4..=oracle::MAX_CYCLE_LEN).contains(&k) {
            return Err(format!(
                "audit length must lie in 4..={}",
                oracle::MAX_CYCLE_LEN
            ));
        }
    }
    let (report, input_info) = if args.tripartite {
        let tg = io::read_tripartite(&args.input).map_err(stringify)?;
        let info = InputInfo {
            n: tg.n(),
            m: tg.graph().m(),
            tripartite: true,
            embedded: false,
        };
        let report = match args.mode {
            ScrubMode::Most => slicing::remove_most_k_cycles_tripartite(&tg, &cfg),
            ScrubMode::All4 => fourfree::remove_all_4cycles_tripartite(&tg, &cfg),
        }
        .map_err(stringify)?;
        (report, info)
    } else {
        let g = io::read_graph(&args.input).map_err(stringify)?;
        let info = InputInfo {
            n: g.n(),
            m: g.m(),
            tripartite: false,
            embedded: true,
        };
        let report = match args.mode {
            ScrubMode::Most => slicing::remove_most_k_cycles(&g, &cfg),
            ScrubMode::All4 => fourfree::remove_all_4cycles(&g, &cfg),
        }
        .map_err(stringify)?;
        (report, info)
    };
    let manifest = manifest::write_report(&report, &cfg, input_info, &args.out_dir, args.audit)
        .map_err(stringify)?;
    print_scrub_summary(&report, &manifest);
    if report.stats.warnings.is_empty() {
        Ok(EXIT_OK)
    } else {
        for w in &report.stats.warnings {
            eprintln!("warning: {w}");
        }
        Ok(EXIT_WARNING)
    }
}

fn print_scrub_summary(report: &RemovalReport, manifest: &manifest::Manifest) {
    println!(
        "scrubbed: |E'| = {} ({} in input coordinates), {} slices (s = {})",
        report.e_prime.len(),
        report.e_prime_input.len(),
        report.slice_count(),
        report.s()
    );
    for phase in &report.stats.dense_phases {
        println!(
            "dense k'={}: {} pieces, {} edges removed, {} reported{}",
            phase.k,
            phase.pieces,
            phase.edges_removed,
            phase.edges_reported,
            if phase.hit_iteration_cap {
                " (iteration cap)"
            } else {
                ""
            }
        );
    }
    if report.four_cycle_free {
        println!(
            "clean-up: {} 4-cycles listed, {} slice-edge removals, {} edges certified",
            report.stats.listed_four_cycles,
            report.stats.cleanup_removed,
            report.stats.cleanup_certified
        );
    }
    if let Some(totals) = &manifest.audit_total_cycles {
        let summary: Vec<String> = totals
            .iter()
            .map(|(k, c)| format!("{k}-cycles: {c}"))
            .collect();
        println!(
            "audit: {} (triangles across slices: {})",
            summary.join(", "),
            manifest.audit_total_triangles.unwrap_or(0)
        );
    }
}

fn write_certificate(path: Option<&Path>, cert: &ReductionCertificate) -> CmdResult {
    if let Some(path) = path {
        let json = serde_json::to_string_pretty(cert).map_err(stringify)?;
        std::fs::write(path, format!("{json}\n")).map_err(stringify)?;
    }
    Ok(EXIT_OK)
}

fn cmd_reduce(args: ReduceArgs) -> CmdResult {
    match args.gadget {
        Gadget::Subdivide => {
            let t = args.t.unwrap_or(2);
            if t < 1 {
                return Err("subdivision length must be at least 1".to_string());
            }
            let g = io::read_graph(&args.input).map_err(stringify)?;
            let (out, _) = reductions::subdivide_uniform(&g, t);
            let out_path = args.out.ok_or("missing --out")?;
            io::write_graph(&out, &out_path).map_err(stringify)?;
            let cert = ReductionCertificate {
                kind: "uniform-subdivision".into(),
                forward_map: format!(
                    "an r-cycle maps to the ({t} * r)-cycle through its subdivided edges"
                ),
                k: None,
                p: None,
                r: None,
                t: Some(t),
                w: None,
            };
            println!("wrote {} vertices, {} edges", out.n(), out.m());
            write_certificate(args.cert_out.as_deref(), &cert)
        }
        Gadget::SubdivideBc => {
            let t = args.t.unwrap_or(2);
            if t < 2 {
                return Err("side subdivision length must be at least 2".to_string());
            }
            let tg = io::read_tripartite(&args.input).map_err(stringify)?;
            let (out, _) = reductions::subdivide_bc(&tg, t);
            let out_path = args.out.ok_or("missing --out")?;
            io::write_graph(&out, &out_path).map_err(stringify)?;
            let cert = ReductionCertificate {
                kind: "bc-subdivision".into(),
                forward_map: format!(
                    "a triangle maps to the ({})-cycle through its subdivided B-C edge",
                    t + 2
                ),
                k: Some(t + 2),
                p: None,
                r: None,
                t: Some(t),
                w: None,
            };
            println!("wrote {} vertices, {} edges", out.n(), out.m());
            write_certificate(args.cert_out.as_deref(), &cert)
        }
        Gadget::TriangleToKcycle => {
            let k = args.k.ok_or("missing --k")?;
            let tg = io::read_tripartite(&args.input).map_err(stringify)?;
            match reductions::triangle_to_kcycle(&tg, k).map_err(stringify)? {
                TriangleToKCycle::Reduced { graph, certificate } => {
                    let out_path = args.out.ok_or("missing --out")?;
                    io::write_graph(&graph, &out_path).map_err(stringify)?;
                    println!(
                        "wrote {} vertices, {} edges ({})",
                        graph.n(),
                        graph.m(),
                        certificate.kind
                    );
                    write_certificate(args.cert_out.as_deref(), &certificate)
                }
                TriangleToKCycle::FourCycleRoute { certificate } => {
                    println!(
                        "k = {k} is a power of two: no triangle-based gadget exists; \
                         use the 4-cycle route (uniform subdivision with t = {})",
                        k / 4
                    );
                    write_certificate(args.cert_out.as_deref(), &certificate)
                }
            }
        }
        Gadget::ZeroTriangle => {
            let wg = io::read_weighted_tripartite(&args.input).map_err(stringify)?;
            let (out, _, certificate) = reductions::zero_triangle_to_triangle(&wg);
            let out_path = args.out.ok_or("missing --out")?;
            io::write_graph(&out, &out_path).map_err(stringify)?;
            println!(
                "wrote {} vertices, {} edges (weight bound {})",
                out.n(),
                out.m(),
                wg.weight_bound()
            );
            write_certificate(args.cert_out.as_deref(), &certificate)
        }
        Gadget::DistanceInstances => {
            let dir = args.manifest_dir.as_deref().ok_or("missing --manifest-dir")?;
            let out_dir = args.out_dir.as_deref().ok_or("missing --out-dir")?;
            let (report, _, _) = report_from_manifest(&args.input, args.tripartite, dir)?;
            let instances =
                harness::make_distance_instances_for(&report, args.orientation.sides());
            std::fs::create_dir_all(out_dir).map_err(stringify)?;
            let mut queries = String::new();
            for inst in &instances {
                io::write_graph(
                    &inst.graph(),
                    out_dir.join(format!("instance_{}.txt", inst.ordinal)),
                )
                .map_err(stringify)?;
                for &(u, v) in &inst.queries {
                    queries.push_str(&format!("{} {u} {v}\n", inst.ordinal));
                }
            }
            std::fs::write(out_dir.join("queries.txt"), queries).map_err(stringify)?;
            if args.with_answers {
                let answers = harness::exact_answers(&instances);
                std::fs::write(out_dir.join("answers.txt"), harness::format_answers(&answers))
                    .map_err(stringify)?;
            }
            let total: usize = instances.iter().map(|i| i.queries.len()).sum();
            println!(
                "wrote {} instances, {total} queries{}",
                instances.len(),
                if args.with_answers { ", exact answers" } else { "" }
            );
            Ok(EXIT_OK)
        }
        Gadget::UpdateScript => {
            let dir = args.manifest_dir.as_deref().ok_or("missing --manifest-dir")?;
            let out_path = args.out.as_deref().ok_or("missing --out")?;
            let (report, _, _) = report_from_manifest(&args.input, args.tripartite, dir)?;
            let init_path = args
                .init_out
                .clone()
                .unwrap_or_else(|| out_path.with_file_name("init.txt"));
            let init_name = init_path
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or("init.txt")
                .to_string();
            let script = harness::emit_update_sequence(&report, &init_name);
            let init = Graph::from_edges(script.n, script.init_edges.iter().copied())
                .expect("instance edges are valid");
            io::write_graph(&init, &init_path).map_err(stringify)?;
            std::fs::write(out_path, script.to_text()).map_err(stringify)?;
            println!(
                "wrote {} phases to {} (initial graph: {})",
                script.phases.len(),
                out_path.display(),
                init_path.display()
            );
            Ok(EXIT_OK)
        }
        Gadget::GirthGap => {
            let dir = args.manifest_dir.as_deref().ok_or("missing --manifest-dir")?;
            let out_path = args.out.as_deref().ok_or("missing --out")?;
            let (report, _, _) = report_from_manifest(&args.input, args.tripartite, dir)?;
            let labels = harness::girth_gap_instances(&report).map_err(stringify)?;
            let mut text = String::new();
            let mut yes = 0;
            for label in &labels {
                let (j, k, l) = label.slice_index;
                yes += label.has_triangle as usize;
                text.push_str(&format!(
                    "{j} {k} {l} {}\n",
                    if label.has_triangle { "yes" } else { "no" }
                ));
            }
            std::fs::write(out_path, text).map_err(stringify)?;
            println!("wrote {} labels ({yes} yes)", labels.len());
            Ok(EXIT_OK)
        }
    }
}

fn cmd_verify(cmd: VerifyCommand) -> CmdResult {
    match cmd {
        VerifyCommand::Manifest(args) => {
            let input = if args.tripartite {
                VerifyInput::Tripartite(io::read_tripartite(&args.graph).map_err(stringify)?)
            } else {
                VerifyInput::Plain(io::read_graph(&args.graph).map_err(stringify)?)
            };
            let outcome = manifest::verify_manifest(&input, &args.dir).map_err(stringify)?;
            report_outcome(outcome)
        }
        VerifyCommand::Reduction(args) => {
            let cert: ReductionCertificate = serde_json::from_str(
                &std::fs::read_to_string(&args.cert).map_err(stringify)?,
            )
            .map_err(stringify)?;
            let mut weighted: Option<WeightedTripartiteGraph> = None;
            let source = match args.source_kind {
                SourceKind::Plain => {
                    VerifyInput::Plain(io::read_graph(&args.source).map_err(stringify)?)
                }
                SourceKind::Tripartite => {
                    VerifyInput::Tripartite(io::read_tripartite(&args.source).map_err(stringify)?)
                }
                SourceKind::Weighted => {
                    let wg = io::read_weighted_tripartite(&args.source).map_err(stringify)?;
                    weighted = Some(wg.clone());
                    VerifyInput::Tripartite(wg.tripartite().clone())
                }
            };
            let target = match &args.target {
                Some(path) => Some(io::read_graph(path).map_err(stringify)?),
                None => None,
            };
            let outcome =
                manifest::verify_certificate(&cert, &source, target.as_ref(), weighted.as_ref())
                    .map_err(stringify)?;
            report_outcome(outcome)
        }
        VerifyCommand::Distance(args) => {
            let (report, man, tg) = report_from_manifest(&args.graph, args.tripartite, &args.dir)?;
            let k = args.k.unwrap_or(man.config.k);
            let sides = args.orientation.sides();
            let instances = harness::make_distance_instances_for(&report, sides);
            let answers = if args.exact {
                harness::exact_answers(&instances)
            } else if let Some(script_path) = &args.script {
                let init_path = args.init.as_deref().ok_or("missing --init for --script")?;
                let init = io::read_graph(init_path).map_err(stringify)?;
                let script = harness::UpdateScript::parse(
                    &std::fs::read_to_string(script_path).map_err(stringify)?,
                    init.n(),
                    init.edges().collect(),
                )
                .map_err(stringify)?;
                harness::replay_update_sequence(&script)
            } else {
                let path = args
                    .answers
                    .as_deref()
                    .ok_or("need one of --answers, --exact, or --script")?;
                harness::parse_answers(&std::fs::read_to_string(path).map_err(stringify)?)
                    .map_err(stringify)?
            };
            let verdicts = harness::filter_candidates_for(&report, &answers, k, sides)
                .map_err(stringify)?;
            let mut outcome = manifest::VerifyOutcome::default();
            for ((u, v), in_tri) in oracle::all_edge_triangle(tg.graph()) {
                let (pu, pv) = (tg.part(u), tg.part(v));
                if !((pu, pv) == sides || (pv, pu) == sides) {
                    continue;
                }
                outcome.checks += 1;
                let got = verdicts.get(&(u, v)).copied().unwrap_or(false);
                if got != in_tri {
                    outcome.violations.push(format!(
                        "edge ({u}, {v}): filter says {got}, oracle says {in_tri}"
                    ));
                }
            }
            report_outcome(outcome)
        }
    }
}

fn report_outcome(outcome: manifest::VerifyOutcome) -> CmdResult {
    if outcome.passed() {
        println!("ok ({} checks)", outcome.checks);
        Ok(EXIT_OK)
    } else {
        for v in &outcome.violations {
            eprintln!("violation: {v}");
        }
        eprintln!(
            "{} violation(s) in {} checks",
            outcome.violations.len(),
            outcome.checks
        );
        Ok(EXIT_VIOLATION)
    }
}

fn load_plain(path: &Path, tripartite: bool) -> Result<Graph, String> {
    if tripartite {
        Ok(io::read_tripartite(path).map_err(stringify)?.graph().clone())
    } else {
        io::read_graph(path).map_err(stringify)
    }
}

fn cmd_oracle(args: OracleArgs) -> CmdResult {
    match args.op {
        OracleOp::Triangles => {
            let g = load_plain(&args.input, args.tripartite)?;
            let tris = oracle::enumerate_triangles(&g);
            let mut lines = vec![tris.len().to_string()];
            if args.list {
                lines.extend(tris.iter().map(|t| format!("{} {} {}", t[0], t[1], t[2])));
            }
            return emit_lines(lines);
        }
        OracleOp::AllEdge => {
            let g = load_plain(&args.input, args.tripartite)?;
            return emit_lines(
                oracle::all_edge_triangle(&g)
                    .into_iter()
                    .map(|((u, v), in_tri)| format!("{u} {v} {in_tri}")),
            );
        }
        OracleOp::Kcycles => {
            let k = args.k.ok_or("missing --k")?;
            let g = load_plain(&args.input, args.tripartite)?;
            let cycles = oracle::enumerate_k_cycles(&g, k).map_err(stringify)?;
            let mut lines = vec![cycles.len().to_string()];
            if args.list {
                lines.extend(cycles.iter().map(|c| {
                    c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                }));
            }
            return emit_lines(lines);
        }
        OracleOp::Girth => {
            let g = load_plain(&args.input, args.tripartite)?;
            match oracle::girth(&g) {
                Some(girth) => println!("{girth}"),
                None => println!("inf"),
            }
        }
        OracleOp::ZeroTriangle => {
            let wg = io::read_weighted_tripartite(&args.input).map_err(stringify)?;
            match oracle::zero_triangle_brute(&wg) {
                Some((a, b, c)) => println!("witness {a} {b} {c}"),
                None => println!("none"),
            }
        }
        OracleOp::DegreeSplit => {
            if !(0.0..1.0 / 3.0).contains(&args.delta) {
                return Err("delta must lie in [0, 1/3)".to_string());
            }
            let g = load_plain(&args.input, args.tripartite)?;
            println!("{}", oracle::triangle_detect_degree_split(&g, args.delta));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    if args.sizes.iter().any(|&n| n > bench::MAX_BENCH_N) {
        return Err(format!("bench sizes are capped at {}", bench::MAX_BENCH_N));
    }
    let opts = BenchOptions {
        k: args.k,
        alpha: args.alpha,
        four_cycle_free: args.mode == ScrubMode::All4,
        density_floor: args.density_floor,
    };
    let csv = bench::bench_pipeline(&args.sizes, &args.seeds, &opts);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(stringify)?;
            Ok(EXIT_OK)
        }
        None => emit_lines(csv.lines().map(str::to_string)),
    }
}
