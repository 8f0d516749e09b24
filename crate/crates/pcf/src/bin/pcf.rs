//! Command-line front end: color, check, inspect, generate, and refute.
//!
//! Exit codes: 0 success, 1 negative mathematical result (no coloring, no
//! witness), 2 input error, 3 internal contract violation, 4 budget
//! exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pcf::{
    brute_force_pcf, check_pcf, degeneracy_ordering, forest_pcf_color, gen_c5_uniform, gen_flower,
    gen_star, greedy_pcf_color, pcf_chromatic_number, refute_choosability, tree_pcf_color_traced,
    Coloring, Error, Graph, Instance, ListAssignment, PcfReport, RefuteOutcome, SearchBudget,
    SearchOutcome,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CONTRACT: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pcf",
    about = "Proper conflict-free list coloring: solvers, exact oracles, and gadget generators",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph from per-vertex lists and verify the result.
    Color(ColorArgs),
    /// Check a coloring file against the PCF conditions.
    Check(CheckArgs),
    /// Print the degeneracy and a degeneracy ordering.
    Degeneracy(GraphArg),
    /// Emit a named gadget instance as graph + lists files.
    Gen(GenArgs),
    /// Decide PCF list-colorability by exhaustive search.
    Oracle(OracleArgs),
    /// Search for a list assignment that admits no PCF coloring.
    Refute(RefuteArgs),
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file: an `n m` header then one `u v` line per edge.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long)]
    graph: PathBuf,
    /// List file: one `v: c1 c2 ...` line per vertex.
    #[arg(long)]
    lists: PathBuf,
    /// greedy (degenerate graphs, deg+d+1 lists), tree (forests, deg+1
    /// lists), or exact (exhaustive search).
    #[arg(long, value_parser = ["greedy", "tree", "exact"])]
    algo: String,
    /// Where to write the coloring (`v c` lines).
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Print the tree solver's reduction sequence.
    #[arg(long)]
    trace: bool,
    /// Node budget for --algo exact.
    #[arg(long, default_value_t = 10_000_000)]
    max_nodes: u64,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: Option<PathBuf>,
    #[arg(long)]
    coloring: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    /// star (degree+0 lists, uncolorable), flower (degree+1, uncolorable),
    /// or c5 (degree+2, uncolorable).
    #[arg(value_parser = ["star", "flower", "c5"])]
    gadget: String,
    /// Size parameter: vertex count for star, petal count for flower.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Output prefix; writes <prefix>.graph and <prefix>.lists.
    #[arg(long, short, default_value = "instance")]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000_000)]
    max_nodes: u64,
    /// Also report the PCF chromatic number up to this bound.
    #[arg(long)]
    chromatic_up_to: Option<u32>,
}

#[derive(Args)]
struct RefuteArgs {
    #[arg(long)]
    graph: PathBuf,
    /// List sizes are deg(v) + k.
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Colors are drawn from 1..=universe.
    #[arg(long)]
    universe: u32,
    /// Where to write a witness list assignment when found.
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000_000)]
    max_nodes: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_assignments: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidInput(_) | Error::Parse { .. } | Error::PartialColoring(_) => {
                    EXIT_INPUT
                }
                Error::TheoremViolation(_) | Error::Contract(_) => EXIT_CONTRACT,
            }
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Color(args) => cmd_color(args),
        Command::Check(args) => cmd_check(args),
        Command::Degeneracy(args) => cmd_degeneracy(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Refute(args) => cmd_refute(args),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Graph::parse_edge_list(&read(path)?)
}

fn load_lists(path: &Path, n: usize) -> Result<ListAssignment, Error> {
    ListAssignment::parse(&read(path)?, n)
}

fn print_report(report: &PcfReport) {
    if report.is_valid() {
        println!("valid: proper and conflict-free");
        return;
    }
    for (u, v) in &report.proper_violations {
        println!("proper violation: edge ({u}, {v}) has equal endpoint colors");
    }
    for v in &report.cf_failures {
        println!("conflict-free failure: no color occurs exactly once around vertex {v}");
    }
    for v in &report.list_violations {
        println!("list violation: vertex {v} is colored outside its list");
    }
}

fn emit_coloring(out: Option<&Path>, coloring: &Coloring) -> Result<(), Error> {
    let text = coloring.to_text();
    match out {
        Some(path) => {
            write(path, &text)?;
            println!("coloring written to {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_color(args: ColorArgs) -> Result<u8, Error> {
    let graph = load_graph(&args.graph)?;
    let lists = load_lists(&args.lists, graph.vertex_count())?;
    let coloring = match args.algo.as_str() {
        "greedy" => greedy_pcf_color(&graph, &lists, None)?,
        "tree" => {
            if graph.is_tree() {
                let (coloring, trace) = tree_pcf_color_traced(&graph, &lists)?;
                if args.trace {
                    for step in &trace.steps {
                        println!("{step}");
                    }
                }
                coloring
            } else {
                forest_pcf_color(&graph, &lists)?
            }
        }
        _ => {
            let budget = SearchBudget {
                max_nodes: args.max_nodes,
                ..SearchBudget::default()
            };
            match brute_force_pcf(&graph, &lists, &budget) {
                SearchOutcome::Solution(coloring) => coloring,
                SearchOutcome::Unsolvable => {
                    println!("unsolvable: no PCF coloring exists for these lists");
                    return Ok(EXIT_NEGATIVE);
                }
                SearchOutcome::BudgetExhausted => {
                    println!("budget exhausted after {} nodes", args.max_nodes);
                    return Ok(EXIT_BUDGET);
                }
            }
        }
    };
    // No trusted path: every solver output goes through the checker.
    let report = check_pcf(&graph, &coloring, Some(&lists))?;
    if !report.is_valid() {
        return Err(Error::Contract(
            "solver output failed verification".into(),
        ));
    }
    emit_coloring(args.out.as_deref(), &coloring)?;
    println!("verified: proper conflict-free within lists");
    Ok(EXIT_OK)
}

fn cmd_check(args: CheckArgs) -> Result<u8, Error> {
    let graph = load_graph(&args.graph)?;
    let lists = match &args.lists {
        Some(path) => Some(load_lists(path, graph.vertex_count())?),
        None => None,
    };
    let coloring = Coloring::parse(&read(&args.coloring)?, graph.vertex_count())?;
    let report = check_pcf(&graph, &coloring, lists.as_ref())?;
    print_report(&report);
    Ok(if report.is_valid() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_degeneracy(args: GraphArg) -> Result<u8, Error> {
    let graph = load_graph(&args.graph)?;
    let ord = degeneracy_ordering(&graph);
    println!("d={}", ord.degeneracy());
    let order: Vec<String> = ord.order().iter().map(usize::to_string).collect();
    println!("order: {}", order.join(" "));
    Ok(EXIT_OK)
}

fn cmd_gen(args: GenArgs) -> Result<u8, Error> {
    let Instance { graph, lists, .. } = match args.gadget.as_str() {
        "star" => gen_star(args.n)?,
        "flower" => gen_flower(args.n)?,
        _ => gen_c5_uniform(),
    };
    let graph_path = args.out.with_extension("graph");
    let lists_path = args.out.with_extension("lists");
    write(&graph_path, &graph.to_edge_list())?;
    write(&lists_path, &lists.to_text())?;
    println!(
        "wrote {} and {}",
        graph_path.display(),
        lists_path.display()
    );
    Ok(EXIT_OK)
}

fn cmd_oracle(args: OracleArgs) -> Result<u8, Error> {
    let graph = load_graph(&args.graph)?;
    let lists = load_lists(&args.lists, graph.vertex_count())?;
    let budget = SearchBudget {
        max_nodes: args.max_nodes,
        ..SearchBudget::default()
    };
    let code = match brute_force_pcf(&graph, &lists, &budget) {
        SearchOutcome::Solution(coloring) => {
            let report = check_pcf(&graph, &coloring, Some(&lists))?;
            if !report.is_valid() {
                return Err(Error::Contract("oracle output failed verification".into()));
            }
            println!("solvable");
            emit_coloring(args.out.as_deref(), &coloring)?;
            EXIT_OK
        }
        SearchOutcome::Unsolvable => {
            println!("unsolvable");
            EXIT_NEGATIVE
        }
        SearchOutcome::BudgetExhausted => {
            println!("budget exhausted after {} nodes", args.max_nodes);
            EXIT_BUDGET
        }
    };
    if let Some(max_k) = args.chromatic_up_to {
        match pcf_chromatic_number(&graph, max_k) {
            Some(k) => println!("pcf chromatic number: {k}"),
            None => println!("pcf chromatic number: > {max_k}"),
        }
    }
    Ok(code)
}

fn cmd_refute(args: RefuteArgs) -> Result<u8, Error> {
    let graph = load_graph(&args.graph)?;
    let budget = SearchBudget {
        max_nodes: args.max_nodes,
        max_assignments: args.max_assignments,
    };
    match refute_choosability(&graph, args.k, args.universe, &budget)? {
        RefuteOutcome::Witness(lists) => {
            println!(
                "witness found: lists of size deg+{} with no PCF coloring",
                args.k
            );
            match &args.out {
                Some(path) => {
                    write(path, &lists.to_text())?;
                    println!("witness written to {}", path.display());
                }
                None => print!("{}", lists.to_text()),
            }
            Ok(EXIT_OK)
        }
        RefuteOutcome::NoneExists => {
            println!(
                "no witness: every deg+{} assignment from {} colors is colorable",
                args.k, args.universe
            );
            Ok(EXIT_NEGATIVE)
        }
        RefuteOutcome::BudgetExhausted => {
            println!("budget exhausted");
            Ok(EXIT_BUDGET)
        }
    }
}
