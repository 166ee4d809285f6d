//! Command-line front end: load a knot system and a target group, build the
//! representation shift graph, and run the dynamical analyses.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use repshift::dynamics::analyze;
use repshift::group::FiniteGroup;
use repshift::hnn::{builtin_catalog, HnnSystem, KnotCatalog};
use repshift::probe::{probe_knot, Conclusion, ProbeError};
use repshift::shift_graph::{build_graph, export_adjacency_csv, export_dot, prune, GraphError};
use repshift::DEFAULT_EDGE_CAP;

const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "repshift",
    version,
    about = "Representation shifts of knot groups: build the shift graph of \
             Hom(K, Sigma) for the infinite cyclic cover, measure entropy and \
             periodic points, and scan for nonfiberedness witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the shift graph, prune it, and optionally export it.
    Build {
        /// Catalog knot name or path to a knot system file.
        #[arg(long)]
        knot: String,
        /// Target group: S<k> for a symmetric group, cayley:<path> for a table file.
        #[arg(long)]
        group: String,
        /// Write the pruned graph in GraphViz DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the pruned adjacency matrix as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Entropy, countability verdict, and periodic point counts.
    Analyze {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        group: String,
        /// Count periodic points for periods 1 through this bound.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        max_r: u64,
        /// Convergence tolerance for the spectral radius iteration.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Append a machine-readable key=value block.
        #[arg(long)]
        machine: bool,
    },
    /// Scan S_2..S_max_n for a positive-entropy witness of nonfiberedness.
    Probe {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..=6))]
        max_n: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Print the normalized Alexander polynomial of the knot system.
    Alexander {
        #[arg(long)]
        knot: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn cap_error(message: impl Display) -> Failure {
    Failure {
        code: EXIT_CAP,
        message: message.to_string(),
    }
}

fn graph_failure(err: GraphError) -> Failure {
    match err {
        GraphError::EdgeCapExceeded { .. } => cap_error(err),
        GraphError::Word(_) => input_error(err),
    }
}

fn resolve_knot(spec: &str, catalog: &KnotCatalog) -> Result<HnnSystem, Failure> {
    if let Some(system) = catalog.get(spec) {
        return Ok(system.clone());
    }
    let path = Path::new(spec);
    if path.exists() {
        return HnnSystem::load(path).map_err(input_error);
    }
    Err(input_error(format!(
        "unknown knot {spec:?}: not a catalog name ({}) and no file at that path",
        catalog.names().join(", ")
    )))
}

fn resolve_group(spec: &str) -> Result<FiniteGroup, Failure> {
    if let Some(path) = spec.strip_prefix("cayley:") {
        return FiniteGroup::load_cayley(Path::new(path)).map_err(input_error);
    }
    if let Some(digits) = spec.strip_prefix('S') {
        let degree: usize = digits
            .parse()
            .map_err(|_| input_error(format!("bad symmetric group spec {spec:?}")))?;
        return FiniteGroup::symmetric(degree).map_err(input_error);
    }
    Err(input_error(format!(
        "group spec {spec:?} must be S<k> or cayley:<path>"
    )))
}

fn edge_cap() -> Result<u64, Failure> {
    match std::env::var("REPSHIFT_EDGE_CAP") {
        Ok(text) => text.trim().parse().map_err(|_| {
            input_error(format!(
                "REPSHIFT_EDGE_CAP must be a positive integer, got {text:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_EDGE_CAP),
        Err(err) => Err(input_error(format!("REPSHIFT_EDGE_CAP: {err}"))),
    }
}

fn write_output(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|err| input_error(format!("cannot write {}: {err}", path.display())))
}

fn cmd_build(
    knot: &str,
    group: &str,
    dot: Option<&Path>,
    csv: Option<&Path>,
) -> Result<(), Failure> {
    let catalog = builtin_catalog();
    let system = resolve_knot(knot, &catalog)?;
    let sigma = resolve_group(group)?;
    let cap = edge_cap()?;
    let built = build_graph(&system, &sigma, cap).map_err(graph_failure)?;
    println!(
        "built: vertices {}, edges {}",
        built.vertices.len(),
        built.edges.len()
    );
    let pruned = prune(&built);
    println!(
        "pruned: vertices {}, edges {}",
        pruned.vertices.len(),
        pruned.edges.len()
    );
    if let Some(path) = dot {
        write_output(path, &export_dot(&pruned))?;
    }
    if let Some(path) = csv {
        write_output(path, &export_adjacency_csv(&pruned))?;
    }
    Ok(())
}

fn cmd_analyze(
    knot: &str,
    group: &str,
    max_r: usize,
    tol: f64,
    machine: bool,
) -> Result<(), Failure> {
    let catalog = builtin_catalog();
    let system = resolve_knot(knot, &catalog)?;
    let sigma = resolve_group(group)?;
    let cap = edge_cap()?;
    let built = build_graph(&system, &sigma, cap).map_err(graph_failure)?;
    let report = analyze(&built, max_r, tol);

    println!("knot {}", system.name);
    println!("group {sigma}");
    println!(
        "built: vertices {}, edges {}",
        report.vertices_built, report.edges_built
    );
    println!(
        "pruned: vertices {}, edges {}",
        report.vertices_live, report.edges_live
    );
    if report.empty_shift {
        println!("empty shift: no points at all");
    }
    let expanding = report.sccs.iter().filter(|scc| scc.is_expanding()).count();
    println!(
        "components: {} strongly connected, {} expanding",
        report.sccs.len(),
        expanding
    );
    println!("entropy {}", report.entropy);
    println!("verdict {}", report.verdict);
    println!("periodic points (period r counts points of all periods dividing r):");
    for (i, count) in report.fix_counts.iter().enumerate() {
        println!("  r = {}: {}", i + 1, count);
    }
    println!("growth rate estimate {}", report.growth_rate_estimate);

    if machine {
        println!("entropy={}", report.entropy);
        println!("verdict={}", report.verdict);
        for (i, count) in report.fix_counts.iter().enumerate() {
            println!("fix_r_{}={}", i + 1, count);
        }
        println!("growth_rate_estimate={}", report.growth_rate_estimate);
    }
    Ok(())
}

fn cmd_probe(knot: &str, max_n: usize, tol: f64) -> Result<(), Failure> {
    let catalog = builtin_catalog();
    let system = resolve_knot(knot, &catalog)?;
    let cap = edge_cap()?;
    let verdict = probe_knot(&system, max_n, cap, tol).map_err(|err| match err {
        ProbeError::InvalidScanBound { .. } => input_error(err),
        ProbeError::EnumerationLimit { .. } => cap_error(err),
        other => input_error(other),
    })?;

    println!("knot {}", verdict.knot);
    for scan in &verdict.scans {
        println!(
            "S{}: vertices {}, edges {}, entropy {}",
            scan.degree, scan.vertices_live, scan.edges_live, scan.entropy
        );
    }
    for skip in &verdict.skipped {
        println!(
            "S{}: skipped, build needs {} edges (cap {cap})",
            skip.degree, skip.required_edges
        );
    }
    match verdict.conclusion {
        Conclusion::CertifiedNonfibered { degree, entropy } => {
            println!("NONFIBERED certified by S{degree}, entropy {entropy}");
        }
        Conclusion::NoWitnessFound { max_degree } => {
            println!("no witness <= {max_degree}; consistent with fibered");
        }
    }
    Ok(())
}

fn cmd_alexander(knot: &str) -> Result<(), Failure> {
    let catalog = builtin_catalog();
    let system = resolve_knot(knot, &catalog)?;
    let poly = system.alexander_poly().map_err(input_error)?;
    println!("{poly}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build {
            knot,
            group,
            dot,
            csv,
        } => cmd_build(&knot, &group, dot.as_deref(), csv.as_deref()),
        Command::Analyze {
            knot,
            group,
            max_r,
            tol,
            machine,
        } => cmd_analyze(&knot, &group, max_r as usize, tol, machine),
        Command::Probe { knot, max_n, tol } => cmd_probe(&knot, max_n as usize, tol),
        Command::Alexander { knot } => cmd_alexander(&knot),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
