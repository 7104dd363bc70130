use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spanner_cli::commands::{self, Algo, BuildArgs, GenerateArgs, Kind};
use spanner_cli::CliError;

#[derive(Parser)]
#[command(name = "spanner", version, about = "Greedy geometric spanners: build, verify, analyse crossings, separate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Uniform,
    Zigzag,
    Arrangement,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Naive,
    Fast,
}

#[derive(Subcommand)]
enum Command {
    /// Write a point set.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        columns: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Jitter every point by up to this fraction of the diameter.
        #[arg(long)]
        perturb: Option<f64>,
        #[arg(long)]
        out: String,
    },
    /// Build the greedy spanner of a point file.
    Build {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value = "fast")]
        algo: AlgoArg,
        #[arg(long)]
        out: String,
        #[arg(long)]
        stats: Option<String>,
        /// Also compute a separator for the stats file.
        #[arg(long)]
        separator: bool,
    },
    /// Check the stretch and no-shortcut properties of a graph.
    Verify {
        #[arg(long)]
        in_points: String,
        #[arg(long)]
        in_graph: String,
        #[arg(long)]
        t: f64,
    },
    /// Crossing statistics of a graph.
    Crossings {
        #[arg(long)]
        in_graph: String,
        #[arg(long)]
        in_points: Option<String>,
        /// Stretch for the bound; defaults to the graph header.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        stats: String,
    },
    /// Separator and separator hierarchy statistics.
    Separator {
        #[arg(long)]
        in_graph: String,
        #[arg(long)]
        in_points: Option<String>,
        #[arg(long)]
        cutoff: usize,
        #[arg(long)]
        stats: String,
    },
    /// Render a graph as SVG.
    Svg {
        #[arg(long)]
        in_graph: String,
        #[arg(long)]
        in_points: Option<String>,
        #[arg(long)]
        out: String,
        /// Do not mark crossing points.
        #[arg(long)]
        no_crossings: bool,
    },
    /// Time a benchmark suite: builders, crossings or separator.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SPANNER_THREADS") else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::params(format!("SPANNER_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::new("E_INTERNAL", e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Generate { kind, n, t, delta, columns, seed, perturb, out } => {
            let kind = match kind {
                KindArg::Uniform => Kind::Uniform,
                KindArg::Zigzag => Kind::Zigzag,
                KindArg::Arrangement => Kind::Arrangement,
            };
            commands::generate(&GenerateArgs { kind, n, t, delta, columns, seed, perturb, out })
        }
        Command::Build { input, t, algo, out, stats, separator } => {
            let algo = match algo {
                AlgoArg::Naive => Algo::Naive,
                AlgoArg::Fast => Algo::Fast,
            };
            commands::build(&BuildArgs { input, t, algo, out, stats, separator })
        }
        Command::Verify { in_points, in_graph, t } => {
            print!("{}", commands::verify(&in_points, &in_graph, t)?);
            Ok(())
        }
        Command::Crossings { in_graph, in_points, t, stats } => commands::crossings(&in_graph, in_points.as_deref(), t, &stats),
        Command::Separator { in_graph, in_points, cutoff, stats } => {
            commands::separator(&in_graph, in_points.as_deref(), cutoff, &stats)
        }
        Command::Svg { in_graph, in_points, out, no_crossings } => commands::svg(&in_graph, in_points.as_deref(), &out, !no_crossings),
        Command::Bench { suite, seed } => {
            print!("{}", commands::bench(&suite, seed)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::new("E_USAGE", first));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}
