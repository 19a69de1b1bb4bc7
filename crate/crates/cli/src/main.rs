use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rewire_core::harness::{run_preset, Preset};
use rewire_core::io::{
    read_edge_list, write_edge_list, write_trajectory, ReadOptions, TrajectoryFormat,
};
use rewire_core::{
    average_local_clustering, average_path_length, global_clustering, randomize_edges,
    run_rewiring, Algorithm, Error, ErrorClass, GeneratorKind, GeneratorSpec, Graph, Policy,
    PolicyMode, RewireConfig,
};

#[derive(Parser)]
#[command(
    name = "rewire",
    version,
    about = "Raise a graph's clustering coefficient with local edge swings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random or lattice graph as an edge list.
    Gen(GenArgs),
    /// Rewire a graph to a fixed point and write its trajectory.
    Run(RunArgs),
    /// Run a named experiment preset over many seeds.
    Experiment(ExperimentArgs),
    /// Print clustering, path length, and component statistics.
    Metrics(MetricsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Er,
    Ba,
    Ring,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Edge probability (er).
    #[arg(long)]
    p: Option<f64>,
    /// Edges per new vertex (ba).
    #[arg(long)]
    m: Option<usize>,
    /// Neighbors on each side (ring).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reattach this many random edges after generating.
    #[arg(long)]
    randomize: Option<usize>,
    /// Output path; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    SwingToward,
    SwingAway,
    DegreePreserving,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Greedy,
    Probabilistic,
    Random,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "swing-toward")]
    algorithm: AlgorithmArg,
    #[arg(long, value_enum, default_value = "greedy")]
    policy: PolicyArg,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    snapshot_every: usize,
    /// Skip moves that would split a component.
    #[arg(long)]
    forbid_disconnect: bool,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Rewire only the largest connected component of the input.
    #[arg(long)]
    largest_component: bool,
    /// Trajectory path (`.jsonl` for JSON lines); stdout CSV when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the rewired graph here.
    #[arg(long)]
    output_graph: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ExperimentArgs {
    #[arg(long, value_parser = parse_preset)]
    preset: Preset,
    /// Defaults to the preset's own count.
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(clap::Args)]
struct MetricsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    largest_component: bool,
    /// Print one JSON object instead of text.
    #[arg(long)]
    json: bool,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    Preset::parse(s).ok_or_else(|| format!("unknown preset {s:?} (expected fig3..fig8)"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(args) => gen(args),
        Command::Run(args) => run(args),
        Command::Experiment(args) => experiment(args),
        Command::Metrics(args) => metrics(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rewire: {e}");
            match e.class() {
                ErrorClass::Usage => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn usage(msg: &str) -> Error {
    Error::InvalidArgument(msg.to_owned())
}

fn gen(args: GenArgs) -> Result<(), Error> {
    let kind = match args.kind {
        Kind::Er => GeneratorKind::ErdosRenyi {
            n: args.n,
            p: args.p.ok_or_else(|| usage("--kind er needs --p"))?,
        },
        Kind::Ba => GeneratorKind::BarabasiAlbert {
            n: args.n,
            m: args.m.ok_or_else(|| usage("--kind ba needs --m"))?,
        },
        Kind::Ring => GeneratorKind::RingLattice {
            n: args.n,
            k: args.k.ok_or_else(|| usage("--kind ring needs --k"))?,
        },
    };
    let mut g = GeneratorSpec::new(kind, args.seed).generate()?;
    if let Some(count) = args.randomize {
        g = randomize_edges(&g, count, args.seed)?;
    }
    write_edge_list(&g, sink(args.output.as_deref())?)
}

fn load(path: &Path, largest_component: bool) -> Result<Graph, Error> {
    let file = File::open(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    let import = read_edge_list(BufReader::new(file), ReadOptions { largest_component })?;
    if import.duplicates_dropped + import.self_loops_dropped > 0 {
        eprintln!(
            "rewire: dropped {} duplicate edge(s) and {} self-loop(s)",
            import.duplicates_dropped, import.self_loops_dropped
        );
    }
    Ok(import.graph)
}

fn run(args: RunArgs) -> Result<(), Error> {
    let algorithm = match args.algorithm {
        AlgorithmArg::SwingToward => Algorithm::SwingTowardBest,
        AlgorithmArg::SwingAway => Algorithm::SwingAwayFromWorst,
        AlgorithmArg::DegreePreserving => Algorithm::DegreePreserving,
    };
    let mode = match args.policy {
        PolicyArg::Greedy => PolicyMode::Greedy,
        PolicyArg::Probabilistic => PolicyMode::Probabilistic,
        PolicyArg::Random => PolicyMode::UniformRandom,
    };
    let mut cfg = RewireConfig::new(algorithm, Policy::new(mode, args.seed));
    cfg.snapshot_every = args.snapshot_every;
    cfg.forbid_disconnect = args.forbid_disconnect;
    cfg.max_steps = args.max_steps;
    cfg.validate()?;
    let g = load(&args.input, args.largest_component)?;
    let outcome = run_rewiring(g, &cfg)?;
    let format = args
        .output
        .as_deref()
        .map(TrajectoryFormat::from_path)
        .unwrap_or(TrajectoryFormat::Csv);
    write_trajectory(&outcome.trajectory, sink(args.output.as_deref())?, format)?;
    if let Some(path) = &args.output_graph {
        write_edge_list(&outcome.graph, BufWriter::new(File::create(path)?))?;
    }
    eprintln!(
        "rewire: {} moves, {:.1}% of edges rewired",
        outcome.moves,
        100.0 * outcome.edges_rewired_fraction
    );
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<(), Error> {
    let replications = args
        .replications
        .unwrap_or(args.preset.default_replications());
    let report = run_preset(
        args.preset,
        replications,
        args.seed,
        args.jobs,
        Some(&args.output),
    )?;
    for (name, arm) in &report.arms {
        eprintln!(
            "{name}: {} runs, mean C {:.4} -> {:.4}, stops {}..{}",
            arm.runs.len(),
            arm.mean_initial_clustering(),
            arm.mean_final_clustering(),
            arm.first_stop.unwrap_or(0),
            arm.last_stop.unwrap_or(0),
        );
        for f in &arm.failures {
            eprintln!("{name}: replication {} failed: {}", f.replication, f.error);
        }
    }
    if let Some(cmp) = &report.degree_comparison {
        for v in cmp.violations() {
            eprintln!("degree comparison: {v}");
        }
    }
    Ok(())
}

fn metrics(args: MetricsArgs) -> Result<(), Error> {
    let g = load(&args.input, args.largest_component)?;
    let global = global_clustering(&g).ok();
    let local = average_local_clustering(&g).ok();
    let path = average_path_length(&g).ok();
    let swi = match (global, path) {
        (Some(c), Some(p)) => Some(c / p.mean),
        _ => None,
    };
    let components = g.component_count();
    let mut out = io::stdout().lock();
    if args.json {
        let value = serde_json::json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "global_clustering": global,
            "avg_local_clustering": local,
            "avg_path_length": path.map(|p| p.mean),
            "reachable_pairs": path.map(|p| p.reachable_pairs),
            "small_world_index": swi,
            "components": components,
        });
        writeln!(out, "{value}")?;
    } else {
        let show = |x: Option<f64>| {
            x.map(|v| format!("{v:.6}"))
                .unwrap_or_else(|| "undefined".into())
        };
        let rows = [
            ("vertices", g.vertex_count().to_string()),
            ("edges", g.edge_count().to_string()),
            ("global clustering", show(global)),
            ("avg local clustering", show(local)),
            ("avg path length", show(path.map(|p| p.mean))),
            ("small-world index", show(swi)),
            ("components", components.to_string()),
        ];
        for (label, value) in rows {
            writeln!(out, "{label:<22}{value}")?;
        }
    }
    Ok(())
}
