//! Command-line front end: formula evaluation, construction emission,
//! closure and process verification, family pairs, exhaustive search, and
//! the strong-saturation comparison table.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 inconclusive search.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weaksat::families::{family_bound, FamilyPair, TheoremVariant};
use weaksat::formulas;
use weaksat::hypergraph::{
    build_g0, build_gk, build_lower_bound_gadget, greedy_closure, greedy_closure_with_order,
    verify_process, weight_process, DPartiteGraph, Edge, Mode, Pattern, SaturationProcess,
};
use weaksat::search::{
    conjecture_table, min_strong_saturation, min_weak_saturation, strong_sat_check, table_to_csv,
    SearchOptions, SearchOutcome,
};

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Environment variable supplying the default worker count for searches.
const WORKERS_ENV: &str = "WEAKSAT_WORKERS";

#[derive(Parser)]
#[command(
    name = "weaksat",
    version,
    about = "Exact weak/strong saturation numbers, extremal constructions, and brute-force certificates for d-partite d-uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed-form or enumerated count.
    Formula(FormulaArgs),
    /// Emit a construction: a graph in text form or a process in JSON.
    Construct(ConstructArgs),
    /// Run the greedy closure of a graph under a pattern.
    Closure(ClosureArgs),
    /// Verify a saturation process or a strong-saturation property.
    Verify(VerifyArgs),
    /// Build, verify, or derive two-families set-pair systems.
    Families(FamiliesArgs),
    /// Exhaustively search for the minimum saturated edge count.
    Search(SearchArgs),
    /// Tabulate oracle vs. closed-form strong saturation over a range of n.
    Table(TableArgs),
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("expr")
        .required(true)
        .args(["qn", "w", "w_directed", "l_size", "w_incexc", "w_bounds", "q", "identity"])
))]
struct FormulaArgs {
    /// Count of tuples whose sorted coordinates dominate p.
    #[arg(long)]
    qn: bool,
    /// Weak saturation number n^d - q_n(p).
    #[arg(long)]
    w: bool,
    /// Directed weak saturation number n^d - prod(n - p_i + 1).
    #[arg(long = "w-directed")]
    w_directed: bool,
    /// Level-set size |L_i(t)| (needs --index and --threshold).
    #[arg(long = "l-size")]
    l_size: bool,
    /// Weak saturation number through the inclusion-exclusion expansion.
    #[arg(long = "w-incexc")]
    w_incexc: bool,
    /// Crude lower and upper bounds sandwiching the weak saturation number.
    #[arg(long = "w-bounds")]
    w_bounds: bool,
    /// Permutation-relaxed set count Q(a, b) (needs -a and -b).
    #[arg(long)]
    q: bool,
    /// Check the identity Q(n - p, 1) = q_n(p); prints true/false.
    #[arg(long)]
    identity: bool,

    /// Host class size.
    #[arg(short, long)]
    n: Option<usize>,
    /// Pattern class sizes, comma separated (sorted ascending unless --directed).
    #[arg(short, long, value_delimiter = ',')]
    p: Option<Vec<usize>>,
    /// Arity; validated against the length of -p when both are given.
    #[arg(short, long)]
    d: Option<usize>,
    /// First cap sequence for Q, comma separated.
    #[arg(short, long, value_delimiter = ',')]
    a: Option<Vec<usize>>,
    /// Second cap sequence for Q, comma separated.
    #[arg(short, long, value_delimiter = ',')]
    b: Option<Vec<usize>>,
    /// Level index i for --l-size.
    #[arg(short, long)]
    index: Option<usize>,
    /// Threshold t for --l-size.
    #[arg(short, long)]
    threshold: Option<usize>,
    /// Evaluate by direct enumeration instead of the closed form.
    #[arg(long)]
    enumerate: bool,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("what")
        .required(true)
        .args(["g0", "gk", "weight_process", "gadget"])
))]
struct ConstructArgs {
    /// The extremal graph whose non-edges have sorted coordinates dominating p.
    #[arg(long)]
    g0: bool,
    /// The bipartite strong-saturation construction (needs -n, -p P, -q Q, -k K).
    #[arg(long)]
    gk: bool,
    /// The weight-ordered saturation process of the extremal graph, as JSON.
    #[arg(long = "weight-process")]
    weight_process: bool,
    /// The doubled host combining a graph with the complement of the
    /// extremal construction (needs --graph).
    #[arg(long)]
    gadget: bool,

    /// Host class size.
    #[arg(short, long)]
    n: Option<usize>,
    /// Pattern class sizes, comma separated.
    #[arg(short, long, value_delimiter = ',')]
    p: Option<Vec<usize>>,
    /// Arity; validated against the length of -p when both are given.
    #[arg(short, long)]
    d: Option<usize>,
    /// Column-side clique size for --gk.
    #[arg(short, long)]
    q: Option<usize>,
    /// Block size for --gk.
    #[arg(short, long, default_value_t = 0)]
    k: usize,
    /// Input graph file for --gadget (`-` or absent reads stdin).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClosureArgs {
    /// Graph file (`-` or absent reads stdin).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Pattern class sizes, comma separated.
    #[arg(short, long, value_delimiter = ',', required = true)]
    p: Vec<usize>,
    /// Arity; validated against the length of -p when both are given.
    #[arg(short, long)]
    d: Option<usize>,
    /// Pin pattern sizes to classes in the given order.
    #[arg(long)]
    directed: bool,
    /// Shuffle the candidate order with this seed before closing; the final
    /// edge set never depends on the order.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the closure process as JSON here.
    #[arg(long = "emit-process")]
    emit_process: Option<PathBuf>,
    /// Write the closed graph in text form here.
    #[arg(long = "emit-graph")]
    emit_graph: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("check").required(true).args(["process", "strong"])))]
struct VerifyArgs {
    /// Replay this saturation process JSON against the graph.
    #[arg(long)]
    process: Option<PathBuf>,
    /// Check strong saturation: every non-edge addition creates a copy.
    #[arg(long)]
    strong: bool,
    /// Graph file (`-` or absent reads stdin).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Pattern class sizes, comma separated.
    #[arg(short, long, value_delimiter = ',', required = true)]
    p: Vec<usize>,
    /// Arity; validated against the length of -p when both are given.
    #[arg(short, long)]
    d: Option<usize>,
    /// Pin pattern sizes to classes in the given order.
    #[arg(long)]
    directed: bool,
    /// Additionally require the graph itself to be copy-free (--strong).
    #[arg(long = "h-free")]
    h_free: bool,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("action")
        .required(true)
        .args(["build", "verify", "from_process"])
))]
struct FamiliesArgs {
    /// Build the extremal pair for caps -a and -b.
    #[arg(long)]
    build: bool,
    /// Verify the four conditions on a family-pair JSON file.
    #[arg(long)]
    verify: Option<PathBuf>,
    /// Derive a family pair from a graph and a saturation process.
    #[arg(long = "from-process")]
    from_process: bool,

    /// First cap sequence, comma separated.
    #[arg(short, long, value_delimiter = ',')]
    a: Option<Vec<usize>>,
    /// Second cap sequence, comma separated.
    #[arg(short, long, value_delimiter = ',')]
    b: Option<Vec<usize>>,
    /// Graph file for --from-process (`-` or absent reads stdin).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Saturation process JSON for --from-process.
    #[arg(long)]
    process: Option<PathBuf>,
    /// Pattern class sizes for --from-process, comma separated.
    #[arg(short, long, value_delimiter = ',')]
    p: Option<Vec<usize>>,
    /// Arity; validated against the length of -p when both are given.
    #[arg(short, long)]
    d: Option<usize>,
    /// Pin pattern sizes to classes in the given order.
    #[arg(long)]
    directed: bool,
    /// Check the identity-assignment cap discipline instead of the
    /// permutation-relaxed one.
    #[arg(long)]
    alon: bool,
    /// Require A_i to meet B_j for every i != j, not only i < j.
    #[arg(long)]
    nonskew: bool,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("strength").required(true).args(["weak", "strong"])))]
struct SearchArgs {
    /// Minimize over weakly saturated hosts.
    #[arg(long)]
    weak: bool,
    /// Minimize over strongly saturated hosts.
    #[arg(long)]
    strong: bool,
    /// Host class size.
    #[arg(short, long, required = true)]
    n: usize,
    /// Pattern class sizes, comma separated.
    #[arg(short, long, value_delimiter = ',', required = true)]
    p: Vec<usize>,
    /// Arity; validated against the length of -p when both are given.
    #[arg(short, long)]
    d: Option<usize>,
    /// Pin pattern sizes to classes in the given order.
    #[arg(long)]
    directed: bool,
    /// Require the witness to be copy-free (--strong only).
    #[arg(long = "h-free")]
    h_free: bool,
    /// Cap on examined candidates; exhausting it yields an inconclusive
    /// certificate and exit code 3.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (default: WEAKSAT_WORKERS, then all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Skip candidates that are not minimal under class/label relabelings.
    #[arg(long = "prune-symmetry")]
    prune_symmetry: bool,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Row-side clique size.
    #[arg(short, long, required = true)]
    p: usize,
    /// Column-side clique size.
    #[arg(short, long, required = true)]
    q: usize,
    /// First host size.
    #[arg(long = "n-from", required = true)]
    n_from: usize,
    /// Last host size (inclusive).
    #[arg(long = "n-to", required = true)]
    n_to: usize,
    /// Per-row candidate budget for the oracle.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (default: WEAKSAT_WORKERS, then all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Failures that map onto the documented exit codes.
enum CliFailure {
    Usage(String),
    Verification(String),
    Inconclusive(String),
}

impl CliFailure {
    fn report(self) -> ExitCode {
        match self {
            CliFailure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_USAGE)
            }
            CliFailure::Verification(msg) => {
                eprintln!("{msg}");
                ExitCode::from(EXIT_VERIFICATION)
            }
            CliFailure::Inconclusive(msg) => {
                eprintln!("{msg}");
                ExitCode::from(EXIT_INCONCLUSIVE)
            }
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliFailure {
    CliFailure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Formula(args) => cmd_formula(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Closure(args) => cmd_closure(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Families(args) => cmd_families(args),
        Command::Search(args) => cmd_search(args),
        Command::Table(args) => cmd_table(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliFailure> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliFailure> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliFailure> {
    value.ok_or_else(|| CliFailure::Usage(format!("missing required flag {flag}")))
}

fn check_arity(d: Option<usize>, p: &[usize]) -> Result<(), CliFailure> {
    if let Some(d) = d {
        if d != p.len() {
            return Err(CliFailure::Usage(format!(
                "-d {d} disagrees with the {} sizes in -p",
                p.len()
            )));
        }
    }
    Ok(())
}

/// Builds a pattern from CLI flags; echoes the canonical (sorted) form when
/// undirected input arrives unsorted.
fn pattern_from(n: usize, p: Vec<usize>, directed: bool) -> Result<Pattern, CliFailure> {
    let mode = if directed { Mode::Directed } else { Mode::Undirected };
    let sorted_input = p.windows(2).all(|w| w[0] <= w[1]);
    let pattern = Pattern::new(n, p, mode).map_err(usage)?;
    if !directed && !sorted_input {
        let canon: Vec<String> = pattern.p().iter().map(|x| x.to_string()).collect();
        eprintln!("note: p canonicalized to {}", canon.join(","));
    }
    Ok(pattern)
}

fn resolve_workers(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn cmd_formula(args: FormulaArgs) -> Result<(), CliFailure> {
    let print_count = |r: formulas::CountResult| println!("{} [{}]", r.value, r.method);
    if args.qn || args.w || args.w_directed || args.w_incexc || args.w_bounds || args.identity {
        let n = require(args.n, "-n")?;
        let mut p = require(args.p.clone(), "-p")?;
        check_arity(args.d, &p)?;
        // every expression here except the directed one is defined on the
        // canonical sorted form
        if !args.w_directed && p.windows(2).any(|w| w[0] > w[1]) {
            p.sort_unstable();
            let canon: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            eprintln!("note: p canonicalized to {}", canon.join(","));
        }
        if args.qn {
            let r = if args.enumerate {
                formulas::qn_enumerate(n, &p)
            } else {
                formulas::qn_formula(n, &p)
            }
            .map_err(usage)?;
            print_count(r);
        } else if args.w {
            print_count(formulas::weak_sat_number(n, &p).map_err(usage)?);
        } else if args.w_directed {
            print_count(formulas::directed_weak_sat_number(n, &p).map_err(usage)?);
        } else if args.w_incexc {
            print_count(formulas::w_inclusion_exclusion(n, &p).map_err(usage)?);
        } else if args.w_bounds {
            let (lo, hi) = formulas::w_crude_bounds(n, &p).map_err(usage)?;
            println!("lower: {} [{}]", lo.value, lo.method);
            println!("upper: {} [{}]", hi.value, hi.method);
        } else {
            let holds = formulas::identity_check(n, &p).map_err(usage)?;
            println!("{holds}");
            if !holds {
                return Err(CliFailure::Verification("identity check failed".into()));
            }
        }
    } else if args.l_size {
        let n = require(args.n, "-n")?;
        let d = require(args.d, "-d")?;
        let i = require(args.index, "--index")?;
        let t = require(args.threshold, "--threshold")?;
        print_count(formulas::l_set_size(n, d, i, t).map_err(usage)?);
    } else if args.q {
        let a = require(args.a.clone(), "-a")?;
        let b = require(args.b.clone(), "-b")?;
        check_arity(args.d, &a)?;
        let r = if args.enumerate {
            formulas::q_enumerate(&a, &b)
        } else {
            formulas::q_formula(&a, &b)
        }
        .map_err(usage)?;
        print_count(r);
    }
    Ok(())
}

fn cmd_construct(args: ConstructArgs) -> Result<(), CliFailure> {
    if let Some(p) = &args.p {
        check_arity(args.d, p)?;
    }
    if args.g0 {
        let n = require(args.n, "-n")?;
        let p = require(args.p, "-p")?;
        let pattern = pattern_from(n, p, false)?;
        let g = build_g0(&pattern).map_err(usage)?;
        write_output(args.output.as_deref(), &g.to_text())
    } else if args.gk {
        let n = require(args.n, "-n")?;
        let p = require(args.p, "-p")?;
        if p.len() != 1 {
            return Err(CliFailure::Usage(
                "--gk takes a single row-side size in -p (use -q for the column side)".into(),
            ));
        }
        let q = require(args.q, "-q")?;
        let g = build_gk(n, p[0], q, args.k).map_err(usage)?;
        write_output(args.output.as_deref(), &g.to_text())
    } else if args.weight_process {
        let n = require(args.n, "-n")?;
        let p = require(args.p, "-p")?;
        let pattern = pattern_from(n, p, false)?;
        let proc = weight_process(&pattern).map_err(usage)?;
        write_output(args.output.as_deref(), &proc.to_json())
    } else {
        let p = require(args.p, "-p")?;
        let text = read_input(args.graph.as_deref())?;
        let h = DPartiteGraph::from_text(&text).map_err(usage)?;
        let pattern = pattern_from(h.n(), p, false)?;
        let out = build_lower_bound_gadget(&h, &pattern).map_err(usage)?;
        write_output(args.output.as_deref(), &out.to_text())
    }
}

fn cmd_closure(args: ClosureArgs) -> Result<(), CliFailure> {
    check_arity(args.d, &args.p)?;
    let text = read_input(args.graph.as_deref())?;
    let g = DPartiteGraph::from_text(&text).map_err(usage)?;
    let pattern = pattern_from(g.n(), args.p, args.directed)?;
    if g.d() != pattern.d() {
        return Err(CliFailure::Usage(format!(
            "graph arity {} disagrees with the {} sizes in -p",
            g.d(),
            pattern.d()
        )));
    }
    let (closed, proc) = match args.seed {
        None => greedy_closure(&g, &pattern),
        Some(seed) => {
            let mut order: Vec<Edge> = g.non_edges().collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            greedy_closure_with_order(&g, &pattern, &order)
        }
    };
    if let Some(path) = args.emit_process {
        write_output(Some(&path), &proc.to_json())?;
    }
    if let Some(path) = args.emit_graph {
        write_output(Some(&path), &closed.to_text())?;
    }
    let status = if closed.is_complete() { "complete" } else { "incomplete" };
    println!(
        "closure: {}/{} edges, {status}, steps={}",
        closed.edge_count(),
        closed.cell_count(),
        proc.len()
    );
    if closed.is_complete() {
        Ok(())
    } else {
        Err(CliFailure::Verification(format!(
            "not weakly saturated: closure stalls at {} of {} edges",
            closed.edge_count(),
            closed.cell_count()
        )))
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliFailure> {
    check_arity(args.d, &args.p)?;
    let text = read_input(args.graph.as_deref())?;
    let g = DPartiteGraph::from_text(&text).map_err(usage)?;
    let pattern = pattern_from(g.n(), args.p, args.directed)?;
    if let Some(path) = args.process {
        let proc_text =
            fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let proc = SaturationProcess::from_json(&proc_text).map_err(usage)?;
        match verify_process(&g, &proc, &pattern) {
            Ok(()) => {
                println!("accepted: {} steps replay to the complete host", proc.len());
                Ok(())
            }
            Err(v) => Err(CliFailure::Verification(format!("rejected: {v}"))),
        }
    } else {
        if strong_sat_check(&g, &pattern, args.h_free) {
            println!("strongly saturated");
            Ok(())
        } else {
            Err(CliFailure::Verification("not strongly saturated".into()))
        }
    }
}

fn cmd_families(args: FamiliesArgs) -> Result<(), CliFailure> {
    if args.build {
        let a = require(args.a, "-a")?;
        let b = require(args.b, "-b")?;
        let fp = weaksat::families::build_extremal(&a, &b).map_err(usage)?;
        eprintln!("h = {}", fp.h());
        write_output(args.output.as_deref(), &fp.to_json())
    } else if let Some(path) = args.verify {
        let text =
            fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let fp = FamilyPair::from_json(&text).map_err(usage)?;
        let variant = if args.alon { TheoremVariant::Alon } else { TheoremVariant::New };
        match weaksat::families::verify_conditions(&fp, variant, args.nonskew) {
            Ok(()) => {
                println!("accepted: {} pairs satisfy all four conditions", fp.h());
                Ok(())
            }
            Err(v) => Err(CliFailure::Verification(format!("rejected: {v}"))),
        }
    } else {
        let p = require(args.p, "-p")?;
        check_arity(args.d, &p)?;
        let graph_text = read_input(args.graph.as_deref())?;
        let g = DPartiteGraph::from_text(&graph_text).map_err(usage)?;
        let pattern = pattern_from(g.n(), p, args.directed)?;
        let proc_path = require(args.process, "--process")?;
        let proc_text = fs::read_to_string(&proc_path)
            .map_err(|e| usage(format!("{}: {e}", proc_path.display())))?;
        let proc = SaturationProcess::from_json(&proc_text).map_err(usage)?;
        let fp = weaksat::families::saturation_to_families(&g, &proc, &pattern)
            .map_err(|e| CliFailure::Verification(format!("rejected: {e}")))?;
        let bound = family_bound(&fp.caps_a, &fp.caps_b).map_err(usage)?;
        eprintln!("h = {} <= Q = {}", fp.h(), bound);
        write_output(args.output.as_deref(), &fp.to_json())
    }
}

fn cmd_search(args: SearchArgs) -> Result<(), CliFailure> {
    check_arity(args.d, &args.p)?;
    let pattern = pattern_from(args.n, args.p, args.directed)?;
    if args.h_free && args.weak {
        return Err(CliFailure::Usage("--h-free applies to --strong only".into()));
    }
    let opts = SearchOptions {
        budget: args.budget,
        workers: resolve_workers(args.workers),
        prune_symmetry: args.prune_symmetry,
    };
    let cert = if args.weak {
        min_weak_saturation(&pattern, &opts)
    } else {
        min_strong_saturation(&pattern, args.h_free, &opts)
    }
    .map_err(usage)?;
    write_output(args.output.as_deref(), &cert.to_json())?;
    match cert.outcome {
        SearchOutcome::Exact { .. } => Ok(()),
        SearchOutcome::Inconclusive { lower_bound } => Err(CliFailure::Inconclusive(format!(
            "inconclusive: budget exhausted, minimum is at least {lower_bound}"
        ))),
    }
}

fn cmd_table(args: TableArgs) -> Result<(), CliFailure> {
    let opts = SearchOptions {
        budget: args.budget,
        workers: resolve_workers(args.workers),
        prune_symmetry: false,
    };
    let rows = conjecture_table(args.p, args.q, args.n_from..=args.n_to, &opts).map_err(usage)?;
    write_output(args.output.as_deref(), &table_to_csv(&rows))
}
