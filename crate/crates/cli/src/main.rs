mod budget;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use biclique_core::biclique::{check_cover, check_partition};
use biclique_core::bounds::{conflict_graph, full_report, CoverSection, ReportOptions};
use biclique_core::chordal::clique_tree;
use biclique_core::cochordal::{
    cover_cochordal, partition_cochordal, CoverOptions, EdgePolicy, RankingMode,
};
use biclique_core::gen::{
    gen_copath, gen_cowindmill, gen_fig_graph, gen_random_chordal, gen_tree,
    gen_two_membership_uniform, random_graph, FigId, InstanceMeta, NamedInstance, TreeShape,
};
use biclique_core::io::{
    parse_cover, parse_graph, parse_tree, write_cover, write_graph, write_tree,
};
use biclique_core::oracle::{
    exact_bc, exact_bp, exact_chromatic, exact_clique_number, exact_max_matching, Window,
};
use biclique_core::tree_rank::{
    heuristic_edge_ranking, optimal_edge_ranking_capped, DEFAULT_EXACT_CAP,
};
use biclique_core::{Error, Graph, OracleBudget};

const EXIT_PARSE: u8 = 1;
const EXIT_INCONSISTENT: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "biclique",
    version,
    about = "Biclique covers, partitions and bounds"
)]
struct Cli {
    /// Oracle budget as comma-separated key=value pairs
    /// (cover_vertices, aux_vertices, edges, tree_edges, time_ms).
    #[arg(long, global = true, env = "BICLIQUE_BUDGET", value_name = "BUDGET")]
    budget: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every lower and upper bound for a graph
    Bounds(BoundsArgs),
    /// Biclique cover (or partition) of a co-chordal graph
    Cover(CoverArgs),
    /// Check a cover or partition file against a graph
    Verify(VerifyArgs),
    /// Generate instances
    #[command(subcommand)]
    Gen(GenCommand),
    /// Edge ranking of a tree
    Rank(RankArgs),
    /// Exact search for small graphs
    Oracle(OracleArgs),
    /// Clique tree of a chordal graph
    Tree(TreeArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Graph file (`-` for stdin)
    #[arg(required_unless_present = "dir", conflicts_with = "dir")]
    input: Option<PathBuf>,
    /// Analyze every *.graph file in a directory, one JSON line per file
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Skip the exact cover and partition search
    #[arg(long)]
    no_oracle: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Balanced,
    First,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ranking {
    Exact,
    Heuristic,
    Auto,
}

#[derive(Args)]
struct CoverArgs {
    input: PathBuf,
    /// Output a biclique partition instead of a cover
    #[arg(long)]
    partition: bool,
    /// Edge selection for partitions
    #[arg(long, value_enum, default_value = "balanced")]
    policy: Policy,
    #[arg(long, value_enum, default_value = "auto")]
    ranking: Ranking,
    /// Use only the search clique tree, never the separator-chained variant
    #[arg(long)]
    no_chain: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Cover,
    Partition,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    cover: PathBuf,
    #[arg(long, value_enum, default_value = "cover")]
    mode: VerifyMode,
}

#[derive(Args)]
struct GenOutput {
    /// Write to this file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write a JSON sidecar with labels and expected values
    #[arg(long)]
    meta: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Complement of the path on n vertices
    Copath {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Complement of m copies of K_k sharing one vertex
    Cowindmill {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Fixed example graphs: fig1_c4c, fig1_k5, fig2, fig3
    Fig {
        id: String,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Random chordal graph (or its complement)
    RandomChordal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        seed: u64,
        /// Emit the co-chordal complement
        #[arg(long)]
        complement: bool,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Erdos-Renyi random graph
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Co-chordal graph with every vertex in at most two maximal independent sets
    TwoMembership {
        #[arg(long, default_value = "random")]
        shape: String,
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        private: usize,
        #[arg(long, default_value_t = 1)]
        mid: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Tree file of a given shape
    Tree {
        #[arg(long, default_value = "random")]
        shape: String,
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    mode: Ranking,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Bc,
    Bp,
    Chi,
    Matching,
    Omega,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    problem: Problem,
    input: PathBuf,
    /// Keep searching below the logarithmic clique-count bound (bc only)
    #[arg(long)]
    no_log_bound: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct TreeArgs {
    input: PathBuf,
    /// Build the clique tree of the complement
    #[arg(long)]
    complement: bool,
    #[command(flatten)]
    out: Output,
}

/// A message plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Input(_) => EXIT_PARSE,
            Error::NotChordal { .. } | Error::Domain(_) => EXIT_PRECONDITION,
            Error::Size(_) | Error::Budget(_) => EXIT_BUDGET,
        };
        Failure::new(code, e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin())
            .map_err(|e| Failure::new(EXIT_PARSE, format!("stdin: {e}")));
    }
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = read_text(path)?;
    parse_graph(&text)
        .map(|f| f.graph)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, text: &str) -> CliResult {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// `key value` lines with dotted keys, scalars only; lists are rendered inline.
fn aligned_text(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, rows);
                }
            }
            Value::Null => rows.push((prefix.to_string(), "-".into())),
            Value::String(s) => rows.push((prefix.to_string(), s.clone())),
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn cover_options(ranking: Ranking, no_chain: bool) -> CoverOptions {
    CoverOptions {
        ranking: match ranking {
            Ranking::Exact => RankingMode::Exact,
            Ranking::Heuristic => RankingMode::Heuristic,
            Ranking::Auto => RankingMode::Auto,
        },
        chain_separators: !no_chain,
        ..CoverOptions::default()
    }
}

fn report_value(g: &Graph, budget: &OracleBudget, no_oracle: bool) -> (Value, bool) {
    let opts = ReportOptions {
        budget: OracleBudget {
            use_log_bound: false,
            ..*budget
        },
        cover: CoverOptions::default(),
        run_oracle: !no_oracle,
    };
    let report = full_report(g, &opts);
    let consistent = report.violations.is_empty();
    (
        serde_json::to_value(&report).expect("serializable"),
        consistent,
    )
}

fn cmd_bounds(args: &BoundsArgs, budget: &OracleBudget) -> CliResult {
    if let Some(dir) = &args.dir {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", dir.display())))?
            .filter_map(|entry| entry.ok().map(|x| x.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "graph"))
            .collect();
        files.sort();
        let rows: Vec<(String, u8)> = files
            .par_iter()
            .map(|path| {
                let name = path.display().to_string();
                match read_graph(path) {
                    Ok(g) => {
                        let (mut v, consistent) = report_value(&g, budget, args.no_oracle);
                        v["file"] = json!(name);
                        (
                            v.to_string(),
                            if consistent { 0 } else { EXIT_INCONSISTENT },
                        )
                    }
                    Err(f) => (
                        json!({ "file": name, "error": f.message }).to_string(),
                        f.code,
                    ),
                }
            })
            .collect();
        let text: String = rows.iter().map(|(line, _)| format!("{line}\n")).collect();
        emit(&args.out.output, &text)?;
        return match rows.iter().map(|r| r.1).max().unwrap_or(0) {
            0 => Ok(()),
            code => Err(Failure::new(
                code,
                "some files failed; see their JSON lines",
            )),
        };
    }
    let input = args.input.as_ref().expect("clap requires input or --dir");
    let g = read_graph(input)?;
    let (value, consistent) = report_value(&g, budget, args.no_oracle);
    let text = match args.out.format {
        Format::Json => to_json(&value),
        Format::Text => aligned_text(&value),
    };
    emit(&args.out.output, &text)?;
    if consistent {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_INCONSISTENT,
            format!(
                "certified bounds are inconsistent: {:?}",
                value["violations"]
            ),
        ))
    }
}

fn not_cochordal(e: Error) -> Failure {
    match e {
        Error::NotChordal { .. } => Failure::new(
            EXIT_PRECONDITION,
            format!("input is not co-chordal: complement {e}"),
        ),
        other => other.into(),
    }
}

fn cmd_cover(args: &CoverArgs) -> CliResult {
    let g = read_graph(&args.input)?;
    if args.partition {
        let policy = match args.policy {
            Policy::Balanced => EdgePolicy::Balanced,
            Policy::First => EdgePolicy::First,
        };
        let p = partition_cochordal(&g, policy).map_err(not_cochordal)?;
        check_partition(&g, &p).map_err(|d| {
            Failure::new(
                EXIT_INCONSISTENT,
                format!("constructed partition is invalid: {d}"),
            )
        })?;
        let text = match args.out.format {
            Format::Json => to_json(
                &json!({ "n": g.n(), "m": g.m(), "partition": { "size": p.len(), "bicliques": p } }),
            ),
            Format::Text => format!("c partition size {}\n{}", p.len(), write_cover(&p)),
        };
        return emit(&args.out.output, &text);
    }
    let outcome =
        cover_cochordal(&g, &cover_options(args.ranking, args.no_chain)).map_err(not_cochordal)?;
    check_cover(&g, &outcome.cover).map_err(|d| {
        Failure::new(
            EXIT_INCONSISTENT,
            format!("constructed cover is invalid: {d}"),
        )
    })?;
    let meta = &outcome.metadata;
    let text = match args.out.format {
        Format::Json => {
            let section = CoverSection {
                size: outcome.cover.len(),
                bicliques: outcome.cover.clone(),
                ranking_r: meta.ranking_r,
                ranking_optimal: meta.ranking_optimal,
                all_leq2_flag: meta.all_leq2_flag,
                level_sizes_before: meta.level_sizes_before.clone(),
                level_sizes_after: meta.level_sizes_after.clone(),
                chained: meta.chained,
            };
            to_json(&json!({ "n": g.n(), "m": g.m(), "cover": section, "metadata": meta }))
        }
        Format::Text => {
            let join = |xs: &[usize]| {
                xs.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!(
                "c size {}\nc ranking_r {}\nc ranking_optimal {}\nc all_leq2_flag {}\nc level_sizes_before {}\nc level_sizes_after {}\nc chained {}\n{}",
                outcome.cover.len(),
                meta.ranking_r,
                meta.ranking_optimal,
                meta.all_leq2_flag,
                join(&meta.level_sizes_before),
                join(&meta.level_sizes_after),
                meta.chained,
                write_cover(&outcome.cover)
            )
        }
    };
    emit(&args.out.output, &text)
}

fn cmd_verify(args: &VerifyArgs) -> CliResult {
    let g = read_graph(&args.graph)?;
    let text = read_text(&args.cover)?;
    let bicliques = parse_cover(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.cover.display())))?;
    let (check, what) = match args.mode {
        VerifyMode::Cover => (check_cover(&g, &bicliques), "cover"),
        VerifyMode::Partition => (check_partition(&g, &bicliques), "partition"),
    };
    match check {
        Ok(()) => {
            println!("valid {what}: {} bicliques", bicliques.len());
            Ok(())
        }
        Err(defect) => Err(Failure::new(
            EXIT_INCONSISTENT,
            format!("invalid {what}: {defect}"),
        )),
    }
}

fn write_instance(inst: &NamedInstance, out: &GenOutput) -> CliResult {
    emit(
        &out.output,
        &write_graph(&inst.graph, std::slice::from_ref(&inst.name)),
    )?;
    write_meta(&inst.meta(), out)
}

fn write_plain(name: String, g: &Graph, out: &GenOutput) -> CliResult {
    let inst = InstanceMeta {
        name: name.clone(),
        n: g.n(),
        m: g.m(),
        labels: biclique_core::gen::default_labels(g.n()),
        expected: Default::default(),
    };
    emit(&out.output, &write_graph(g, &[name]))?;
    write_meta(&inst, out)
}

fn write_meta(meta: &InstanceMeta, out: &GenOutput) -> CliResult {
    match &out.meta {
        Some(path) => emit(&Some(path.clone()), &to_json(meta)),
        None => Ok(()),
    }
}

fn cmd_gen(cmd: &GenCommand) -> CliResult {
    match cmd {
        GenCommand::Copath { n, out } => write_instance(&gen_copath(*n)?, out),
        GenCommand::Cowindmill { m, k, out } => write_instance(&gen_cowindmill(*m, *k)?, out),
        GenCommand::Fig { id, out } => write_instance(&gen_fig_graph(id.parse::<FigId>()?), out),
        GenCommand::RandomChordal {
            n,
            density,
            seed,
            complement,
            out,
        } => {
            let g = gen_random_chordal(*n, *density, *seed)?;
            let (g, kind) = if *complement {
                (g.complement(), "random_cochordal")
            } else {
                (g, "random_chordal")
            };
            write_plain(
                format!("{kind} n={n} density={density} seed={seed}"),
                &g,
                out,
            )
        }
        GenCommand::Random { n, p, seed, out } => write_plain(
            format!("random n={n} p={p} seed={seed}"),
            &random_graph(*n, *p, *seed)?,
            out,
        ),
        GenCommand::TwoMembership {
            shape,
            nodes,
            private,
            mid,
            seed,
            out,
        } => {
            let tree = gen_tree(shape.parse::<TreeShape>()?, *nodes, *seed)?;
            write_instance(
                &gen_two_membership_uniform(&tree, *private, *mid, *seed)?,
                out,
            )
        }
        GenCommand::Tree {
            shape,
            nodes,
            seed,
            output,
        } => emit(
            output,
            &write_tree(&gen_tree(shape.parse::<TreeShape>()?, *nodes, *seed)?),
        ),
    }
}

fn cmd_rank(args: &RankArgs) -> CliResult {
    let text = read_text(&args.tree)?;
    let tree = parse_tree(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.tree.display())))?;
    let exact = match args.mode {
        Ranking::Exact => true,
        Ranking::Heuristic => false,
        Ranking::Auto => tree.edge_count() <= DEFAULT_EXACT_CAP,
    };
    let ranking = if exact {
        optimal_edge_ranking_capped(&tree, DEFAULT_EXACT_CAP)?
    } else {
        heuristic_edge_ranking(&tree)
    };
    let out = match args.out.format {
        Format::Json => to_json(&json!({
            "r": ranking.r(),
            "optimal": exact,
            "edges": tree.edges(),
            "ranks": ranking.ranks,
        })),
        Format::Text => format!(
            "c r {}\nc optimal {exact}\n{}",
            ranking.r(),
            ranking.to_text(&tree)
        ),
    };
    emit(&args.out.output, &out)
}

fn window_text<C>(name: &str, w: &Window<C>, certificate: String) -> String {
    let head = if w.exact {
        format!("{name} {}\n", w.upper)
    } else {
        format!(
            "{name} in [{}, {}] (search stopped early)\n",
            w.lower, w.upper
        )
    };
    head + &certificate
}

fn cmd_oracle(args: &OracleArgs, budget: &OracleBudget) -> CliResult {
    let g = read_graph(&args.input)?;
    let budget = OracleBudget {
        use_log_bound: !args.no_log_bound,
        ..*budget
    };
    let name = match args.problem {
        Problem::Bc => "bc",
        Problem::Bp => "bp",
        Problem::Chi => "chi",
        Problem::Matching => "matching",
        Problem::Omega => "omega",
    };
    let (exact, value, text) = match args.problem {
        Problem::Bc | Problem::Bp => {
            let w = if matches!(args.problem, Problem::Bc) {
                exact_bc(&g, &budget)?
            } else {
                exact_bp(&g, &budget)?
            };
            (
                w.exact,
                json!(w),
                window_text(name, &w, write_cover(&w.certificate)),
            )
        }
        Problem::Chi => {
            let w = exact_chromatic(&g, &budget)?;
            let colors = w
                .certificate
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            (
                w.exact,
                json!(w),
                window_text(name, &w, format!("colors {colors}\n")),
            )
        }
        Problem::Matching => {
            let w = exact_max_matching(&g, &budget)?;
            let edges: String = w
                .certificate
                .iter()
                .map(|e| format!("{} {}\n", e.u, e.v))
                .collect();
            (w.exact, json!(w), window_text(name, &w, edges))
        }
        Problem::Omega => {
            let conflict = conflict_graph(&g);
            let w = exact_clique_number(&conflict, &budget)?;
            let edges = g.edges();
            let lines: String = w
                .certificate
                .iter()
                .map(|i| format!("{} {}\n", edges[i].u, edges[i].v))
                .collect();
            (w.exact, json!(w), window_text(name, &w, lines))
        }
    };
    let out = match args.out.format {
        Format::Json => {
            to_json(&json!({ "problem": name, "n": g.n(), "m": g.m(), "window": value }))
        }
        Format::Text => text,
    };
    emit(&args.out.output, &out)?;
    if exact {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_BUDGET,
            format!("{name}: budget exhausted before the search finished"),
        ))
    }
}

fn cmd_tree(args: &TreeArgs) -> CliResult {
    let g = read_graph(&args.input)?;
    let host = if args.complement { g.complement() } else { g };
    let tree = clique_tree(&host)?;
    let text = match args.out.format {
        Format::Json => to_json(&tree),
        Format::Text => tree.to_string(),
    };
    emit(&args.out.output, &text)
}

fn run(cli: Cli) -> CliResult {
    let budget = match &cli.budget {
        Some(text) => budget::parse_budget(text).map_err(|e| Failure::new(EXIT_PARSE, e))?,
        None => OracleBudget::default(),
    };
    match &cli.command {
        Command::Bounds(a) => cmd_bounds(a, &budget),
        Command::Cover(a) => cmd_cover(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(c) => cmd_gen(c),
        Command::Rank(a) => cmd_rank(a),
        Command::Oracle(a) => cmd_oracle(a, &budget),
        Command::Tree(a) => cmd_tree(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the parse exit code; clap's default 2 means inconsistency here
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
