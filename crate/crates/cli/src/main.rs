use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use graph_stretch::generators::{generate_connected, sample_params, Family, FamilyParams};
use graph_stretch::gossip::{convergence_time, ErrorNorm, GossipConfig, DEFAULT_MAX_ROUNDS, DEFAULT_THRESHOLD};
use graph_stretch::graph::{girth, read_edge_list, write_edge_list};
use graph_stretch::harness::{run_sweep, ExperimentConfig, SweepOptions};
use graph_stretch::leafmin::{minimise_leaves, LeafMinMethod};
use graph_stretch::metrics::{evaluate, HeuristicKind};
use graph_stretch::optimizer::optimise;
use graph_stretch::seed::Seed;
use graph_stretch::stretch::{stretch, StretchMethod};
use graph_stretch::Graph;

#[derive(Parser)]
#[command(name = "graph-stretch", version, about = "Girth stretching, leaf minimisation and gossip experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a connected random graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Remove edges until the girth reaches a target.
    Stretch(StretchArgs),
    /// Add edges between leaves without dropping below a girth floor.
    Leafmin(LeafminArgs),
    /// Greedy steepest ascent on a heuristic under a girth floor.
    Optimize(OptimizeArgs),
    /// Mean gossip convergence time.
    Gossip(GossipArgs),
    /// Print girth, leaves and the four heuristics of a graph.
    Inspect(InputArgs),
    /// Run a full parameter sweep into a CSV.
    Sweep(SweepArgs),
    /// Print a sweep configuration file.
    Config {
        /// Full-size sweep instead of the quick default.
        #[arg(long)]
        full_scale: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file ("-" for stdin).
    input: PathBuf,
}

#[derive(Args)]
struct OutputArgs {
    /// Where to write the resulting edge list ("-" for stdout).
    #[arg(short, long, default_value = "-")]
    out: PathBuf,
    /// Optional CSV log of the individual steps.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value = "er")]
    family: Family,
    /// Number of vertices; sampled from --n-min..=--n-max when absent.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 10)]
    n_min: usize,
    #[arg(long, default_value_t = 40)]
    n_max: usize,
    /// Edge/rewire probability (er, ws).
    #[arg(long)]
    p: Option<f64>,
    /// Lattice half-degree (ws).
    #[arg(long)]
    k: Option<usize>,
    /// Edges per new vertex (ba).
    #[arg(long)]
    m: Option<usize>,
    /// Connection radius (geo).
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    max_attempts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct StretchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    girth: usize,
    #[arg(long, default_value = "random")]
    method: StretchMethod,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LeafminArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    floor: usize,
    #[arg(long, default_value = "closest")]
    method: LeafMinMethod,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    floor: usize,
    #[arg(long, default_value = "eigenratio")]
    heuristic: HeuristicKind,
    /// Step cap (default 10n).
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GossipArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    #[arg(long, default_value = "mean-deviation")]
    norm: ErrorNorm,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    max_rounds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML configuration; defaults are used when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV (overrides the configuration).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Continue an interrupted sweep.
    #[arg(long)]
    resume: bool,
    /// Use the full-size defaults instead of the quick ones.
    #[arg(long, conflicts_with = "config")]
    full_scale: bool,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let g = if path.as_os_str() == "-" {
        read_edge_list(io::stdin().lock())
    } else {
        let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        read_edge_list(BufReader::new(f))
    };
    g.with_context(|| format!("reading {}", path.display()))
}

fn writer(path: &Path) -> Result<Box<dyn Write>> {
    Ok(if path.as_os_str() == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        Box::new(BufWriter::new(f))
    })
}

fn write_graph(g: &Graph, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    write_edge_list(g, &mut w)?;
    w.flush()?;
    Ok(())
}

fn explicit_params(a: &GenerateArgs, n: usize) -> Result<Option<FamilyParams>> {
    let params = match a.family {
        Family::Er => a.p.map(|p| FamilyParams::Er { n, p }),
        Family::Ws => match (a.k, a.p) {
            (Some(k), Some(p)) => Some(FamilyParams::Ws { n, k, p }),
            (None, None) => None,
            _ => bail!("ws needs both --k and --p"),
        },
        Family::Ba => a.m.map(|m| FamilyParams::Ba { n, m }),
        Family::Geo => a.r.map(|r| FamilyParams::Geo { n, r }),
    };
    Ok(params)
}

fn generate_cmd(a: GenerateArgs) -> Result<()> {
    let seed = Seed::new(a.seed);
    let (n_min, n_max) = a.n.map_or((a.n_min, a.n_max), |n| (n, n));
    let params = match explicit_params(&a, n_min)? {
        Some(p) if a.n.is_some() => p,
        Some(_) => bail!("explicit family parameters need --n"),
        None => sample_params(a.family, n_min, n_max, seed.derive(0))?,
    };
    params.validate()?;
    let gen = generate_connected(&params, seed.derive(1), a.max_attempts)?;
    eprintln!("{params:?}: connected after {} attempt(s)", gen.attempts);
    write_graph(&gen.graph, &a.out)
}

fn write_log(path: &Option<PathBuf>, f: impl FnOnce(&mut dyn Write) -> graph_stretch::Result<()>) -> Result<()> {
    if let Some(p) = path {
        let mut w = writer(p)?;
        f(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn inspect(g: &Graph) {
    println!("vertices: {}", g.n());
    println!("edges: {}", g.edge_count());
    println!("girth: {}", girth(g));
    println!("leaves: {}", g.leaf_count());
    println!("connected: {}", g.is_connected());
    for kind in HeuristicKind::ALL {
        match evaluate(g, kind) {
            Ok(v) => println!("{}: {v:.6}", kind.name()),
            Err(e) => println!("{}: n/a ({e})", kind.name()),
        }
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate(a) => generate_cmd(a)?,
        Command::Stretch(a) => {
            let g = read_graph(&a.input.input)?;
            let report = stretch(&g, a.girth, a.method, Seed::new(a.seed))?;
            eprintln!(
                "girth {} -> {} after removing {} edge(s)",
                report.initial_girth,
                report.final_girth,
                report.removals.len()
            );
            write_log(&a.output.log, |w| report.write_log(w))?;
            write_graph(&report.graph, &a.output.out)?;
        }
        Command::Leafmin(a) => {
            let g = read_graph(&a.input.input)?;
            let report = minimise_leaves(&g, a.floor, a.method, Seed::new(a.seed))?;
            eprintln!(
                "leaves {} -> {} after adding {} edge(s)",
                report.leaves_before,
                report.leaves_after,
                report.additions.len()
            );
            write_log(&a.output.log, |w| report.write_log(w))?;
            write_graph(&report.graph, &a.output.out)?;
        }
        Command::Optimize(a) => {
            let g = read_graph(&a.input.input)?;
            let report = optimise(&g, a.floor, a.heuristic, Seed::new(a.seed), a.max_steps)?;
            eprintln!(
                "{} {:.6} -> {:.6} in {} move(s){}",
                a.heuristic.name(),
                report.initial_score,
                report.final_score,
                report.moves.len(),
                if report.truncated { " (step cap reached)" } else { "" }
            );
            write_log(&a.output.log, |w| report.write_log(w))?;
            write_graph(&report.graph, &a.output.out)?;
        }
        Command::Gossip(a) => {
            let g = read_graph(&a.input.input)?;
            let cfg = GossipConfig {
                threshold: a.threshold,
                norm: a.norm,
                max_rounds: a.max_rounds,
                trace_stride: None,
            };
            let t = convergence_time(&g, a.instances, &cfg, Seed::new(a.seed))?;
            println!("{t}");
        }
        Command::Inspect(a) => inspect(&read_graph(&a.input)?),
        Command::Sweep(a) => {
            let mut cfg = match (&a.config, a.full_scale) {
                (Some(path), _) => ExperimentConfig::load(path)?,
                (None, true) => ExperimentConfig::full_scale(),
                (None, false) => ExperimentConfig::default(),
            };
            if let Some(out) = a.out {
                cfg.output = out;
            }
            let s = run_sweep(
                &cfg,
                SweepOptions {
                    resume: a.resume,
                    stop_after: None,
                },
            )?;
            eprintln!(
                "{}: {} row(s) written, {} already present, {} total",
                cfg.output.display(),
                s.written,
                s.skipped,
                s.total
            );
        }
        Command::Config { full_scale } => {
            let cfg = if full_scale {
                ExperimentConfig::full_scale()
            } else {
                ExperimentConfig::default()
            };
            print!("{}", cfg.to_toml_string());
        }
    }
    Ok(())
}
