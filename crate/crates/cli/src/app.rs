//! Command-line definition and dispatch.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use helly_core::facility::{find_center, find_medians};
use helly_core::generators::{generate, Family, GenSpec, DEFAULT_MAX_CLIQUE};
use helly_core::khelly::{radius_with, DecisionOptions};
use helly_core::oracle::{apsp_summary, ApspSummary};
use helly_core::recognition::is_k_alpha_helly;
use helly_core::{CostFn, Error, Graph};

use crate::bench::{run_bench, write_csv, BenchCommand, BenchConfig};
use crate::error::CliError;
use crate::io::{parse_cost_file, parse_graph_file, write_graph};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    Fixed(u64),
    Random,
}

impl std::fmt::Display for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Seed::Fixed(s) => write!(f, "{s}"),
            Seed::Random => f.write_str("random"),
        }
    }
}

impl Seed {
    fn resolve(self) -> u64 {
        match self {
            Seed::Fixed(s) => s,
            Seed::Random => rand::random(),
        }
    }
}

fn parse_seed(s: &str) -> Result<Seed, String> {
    if s == "random" {
        return Ok(Seed::Random);
    }
    s.parse()
        .map(Seed::Fixed)
        .map_err(|_| format!("expected a non-negative integer or \"random\", got {s:?}"))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}

// Aliases keep clap from treating the lists as repeated flags.
type Sizes = Vec<usize>;
type Seeds = Vec<u64>;
type Commands = Vec<BenchCommand>;

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    parse_list(s)
}

fn parse_seeds(s: &str) -> Result<Seeds, String> {
    parse_list(s)
}

fn parse_commands(s: &str) -> Result<Commands, String> {
    parse_list(s)
}

#[derive(Debug, Parser)]
#[command(name = "helly", version, about = "Center, median and radius computation on Helly-type graphs")]
pub struct Cli {
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file ("p <n> <m>" header, then one "<u> <v>" line per edge).
    #[arg(long)]
    pub graph: PathBuf,
    /// Seed, or "random" for a fresh one.
    #[arg(long, value_parser = parse_seed, default_value_t = Seed::Fixed(DEFAULT_SEED))]
    pub seed: Seed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex of minimum cost-weighted eccentricity.
    Center {
        #[command(flatten)]
        common: GraphArgs,
        /// Cost file ("<vertex> <cost>" lines; missing vertices cost 1).
        #[arg(long)]
        costs: Option<PathBuf>,
        /// Compare with the all-pairs oracle.
        #[arg(long)]
        verify: bool,
    },
    /// All vertices of minimum cost-weighted total distance.
    Median {
        #[command(flatten)]
        common: GraphArgs,
        #[arg(long)]
        costs: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Radius of a k-Helly graph, or within +alpha on a (k, alpha)-Helly graph.
    Radius {
        #[command(flatten)]
        common: GraphArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        /// Multiplier on the default sampling accuracy.
        #[arg(long, default_value_t = 1.0)]
        eps_scale: f64,
        #[arg(long)]
        verify: bool,
    },
    /// Exact (k, alpha)-Helly test.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
    },
    /// Generate a graph file.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_seed, default_value_t = Seed::Fixed(DEFAULT_SEED))]
        seed: Seed,
        /// Output file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// King grid rows (defaults to round(sqrt(n))).
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// Largest clique of a chordal graph.
        #[arg(long, default_value_t = DEFAULT_MAX_CLIQUE)]
        max_clique: usize,
    },
    /// Seeded runs over generated graphs, one CSV row per run.
    Bench {
        #[arg(long)]
        family: Family,
        /// Comma-separated target sizes.
        #[arg(long, value_parser = parse_sizes)]
        sizes: Sizes,
        /// Comma-separated seeds.
        #[arg(long, value_parser = parse_seeds, default_value = "1")]
        seeds: Seeds,
        /// Comma-separated subset of center, median, radius, oracle.
        #[arg(long, value_parser = parse_commands, default_value = "center")]
        commands: Commands,
        /// CSV file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        #[arg(long, default_value_t = 1.0)]
        eps_scale: f64,
    },
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code; results go to `out`, diagnostics to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
            let (mut buf_out, mut buf_err) = (Vec::new(), Vec::new());
            let result = pool.install(|| dispatch(cli.command, &mut buf_out, &mut buf_err));
            out.write_all(&buf_out)?;
            err.write_all(&buf_err)?;
            result
        }
        None => dispatch(cli.command, out, err),
    }
}

fn load(common: &GraphArgs, costs: Option<&Path>, err: &mut dyn Write) -> Result<(Graph, CostFn, u64), CliError> {
    let g = parse_graph_file(&common.graph)?;
    let c = match costs {
        Some(path) => parse_cost_file(path, g.n())?,
        None => CostFn::unit(g.n()),
    };
    let seed = common.seed.resolve();
    if common.seed == Seed::Random {
        writeln!(err, "seed {seed}")?;
    }
    Ok((g, c, seed))
}

/// Oracle summary, or `None` after a note when the graph is too large.
fn oracle(g: &Graph, c: &CostFn, out: &mut dyn Write) -> Result<Option<ApspSummary>, CliError> {
    match apsp_summary(g, c) {
        Ok(s) => Ok(Some(s)),
        Err(Error::OracleTooLarge { n, limit }) => {
            writeln!(out, "oracle skipped: n = {n} exceeds {limit}")?;
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn report(out: &mut dyn Write, agree: bool, what: String) -> Result<(), CliError> {
    if agree {
        writeln!(out, "oracle agrees: {what}")?;
        Ok(())
    } else {
        writeln!(out, "oracle disagrees: {what}")?;
        Err(CliError::Disagreement(format!(
            "result differs from the all-pairs oracle ({what}); the input is probably not Helly"
        )))
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Center { common, costs, verify } => {
            let (g, c, seed) = load(&common, costs.as_deref(), err)?;
            let res = find_center(&g, &c, seed)?;
            writeln!(out, "vertex {} ecc {}", res.vertex, res.value)?;
            if verify {
                if let Some(s) = oracle(&g, &c, out)? {
                    report(out, s.radius == res.value, format!("min ecc {}", s.radius))?;
                }
            }
        }
        Command::Median { common, costs, verify } => {
            let (g, c, seed) = load(&common, costs.as_deref(), err)?;
            let res = find_medians(&g, &c, seed)?;
            writeln!(out, "medians {} td {}", join(&res.medians), res.value)?;
            if verify {
                if let Some(s) = oracle(&g, &c, out)? {
                    let agree = s.median == res.medians && s.median_value() == res.value;
                    report(out, agree, format!("medians {} td {}", join(&s.median), s.median_value()))?;
                }
            }
        }
        Command::Radius {
            common,
            k,
            alpha,
            eps_scale,
            verify,
        } => {
            if !eps_scale.is_finite() || eps_scale <= 0.0 {
                return Err(CliError::Usage(format!("--eps-scale must be positive, got {eps_scale}")));
            }
            let (g, c, seed) = load(&common, None, err)?;
            let options = DecisionOptions {
                eps_scale,
                eps: None,
            };
            let res = radius_with(&g, k, alpha, seed, &options)?;
            writeln!(out, "R {} guarantee [{}, {}]", res.radius, res.radius, res.upper())?;
            if verify {
                if let Some(s) = oracle(&g, &c, out)? {
                    let rad = s.unit_radius();
                    report(out, res.radius <= rad && rad <= res.upper(), format!("radius {rad}"))?;
                }
            }
        }
        Command::Check { graph, k, alpha } => {
            let g = parse_graph_file(&graph)?;
            let report = is_k_alpha_helly(&g, k, alpha)?;
            writeln!(out, "holds={} k={} alpha={}", report.holds, report.k, report.alpha)?;
            if let Some(w) = report.witness {
                writeln!(out, "witness {}", join(&w.subset))?;
                // One minimal radius per ball center, in vertex order.
                writeln!(out, "center-radii {}", join(&w.radii))?;
            }
        }
        Command::Gen {
            family,
            n,
            seed,
            out: path,
            rows,
            cols,
            max_clique,
        } => {
            let seed = seed.resolve();
            let spec = match (family, rows, cols) {
                (Family::KingGrid, Some(rows), Some(cols)) => GenSpec::KingGrid { rows, cols },
                (Family::KingGrid, None, None) | (_, None, None) => {
                    let n = n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
                    match family {
                        Family::Chordal => GenSpec::Chordal { n, max_clique, seed },
                        _ => GenSpec::for_family(family, n, seed),
                    }
                }
                (Family::KingGrid, _, _) => {
                    return Err(CliError::Usage("--rows and --cols go together".into()));
                }
                _ => return Err(CliError::Usage("--rows and --cols apply to king-grid only".into())),
            };
            let g = generate(&spec)?;
            let comments = vec![format!("{family} seed {seed}")];
            match path {
                Some(path) => {
                    let file = File::create(&path).map_err(|source| CliError::Io { path, source })?;
                    let mut w = BufWriter::new(file);
                    write_graph(&mut w, &g, &comments)?;
                    w.flush()?;
                }
                None => write_graph(out, &g, &comments)?,
            }
        }
        Command::Bench {
            family,
            sizes,
            seeds,
            commands,
            out: path,
            verify,
            k,
            alpha,
            eps_scale,
        } => {
            let mut config = BenchConfig::new(family, sizes, seeds);
            config.commands = commands;
            config.verify = verify;
            config.k = k;
            config.alpha = alpha;
            config.decision.eps_scale = eps_scale;
            let records = run_bench(&config)?;
            match path {
                Some(path) => {
                    let file = File::create(&path).map_err(|source| CliError::Io { path, source })?;
                    write_csv(BufWriter::new(file), &records)?;
                }
                None => write_csv(out, &records)?,
            }
        }
    }
    Ok(())
}
