//! `ambient-cycles` command-line front end.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use ambient_cycles::{SearchConfig, SurfaceKind};
use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

/// Classify one-cycles of point clouds on model surfaces by their ambient
/// first-homology class.
#[derive(Parser, Debug)]
#[command(name = "ambient-cycles", version, about)]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, env = "AMBIENT_CYCLES_THREADS")]
    threads: Option<usize>,

    /// Longest genus-two word the orbit search may produce.
    #[arg(long, global = true, default_value_t = SearchConfig::default().max_word_length)]
    max_word_length: usize,

    /// Distances within this absolute tolerance count as tied.
    #[arg(long, global = true, default_value_t = SearchConfig::default().tie_tolerance)]
    tie_tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Base distance between two points and the deck elements realising it.
    ///
    /// Coordinates are x y (torus, klein), x y z (rp2) or re im (genus2),
    /// first point then second point.
    #[command(allow_negative_numbers = true)]
    Dist {
        #[arg(long)]
        surface: SurfaceKind,
        #[arg(required = true, num_args = 1..)]
        coords: Vec<f64>,
    },
    /// Build the ε-graph on a CSV point cloud and classify its cycles.
    ///
    /// The CSV header is x,y (torus, klein), x,y,z (rp2) or re,im (genus2).
    Classify {
        #[arg(long)]
        surface: SurfaceKind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample the principal persistence measure; writes ppm.jsonl and
    /// summary.json into the output directory.
    Ppm {
        #[arg(long)]
        surface: SurfaceKind,
        /// Number of four-point samples.
        #[arg(short = 'n', long = "samples")]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long = "out")]
        out: PathBuf,
    },
    /// List the surfaces and the shape of their class vectors.
    Surfaces,
}

/// Exit codes.
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;
const IO: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<ambient_cycles::Error>() {
            return match e {
                ambient_cycles::Error::Resource(_) => RESOURCE,
                ambient_cycles::Error::Assertion(_) => 1,
                _ => USAGE,
            };
        }
        if let Some(e) = cause.downcast_ref::<csv::Error>() {
            return if e.is_io_error() { IO } else { USAGE };
        }
        if cause.is::<std::io::Error>() {
            return IO;
        }
    }
    USAGE
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if !(cli.tie_tolerance > 0.0 && cli.tie_tolerance.is_finite()) {
        bail!(ambient_cycles::Error::Input("--tie-tolerance must be positive".into()));
    }
    let config = SearchConfig {
        tie_tolerance: cli.tie_tolerance,
        max_word_length: cli.max_word_length,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("cannot start worker threads")?;
    let stdout = std::io::stdout();
    pool.install(|| match cli.command {
        Command::Dist { surface, coords } => commands::dist(surface, config, &coords, stdout.lock()),
        Command::Classify {
            surface,
            input,
            epsilon,
            output,
        } => commands::classify(surface, config, &input, epsilon, output.as_deref(), stdout.lock()),
        Command::Ppm {
            surface,
            samples,
            seed,
            out,
        } => commands::ppm(surface, config, samples, seed, &out),
        Command::Surfaces => commands::surfaces(stdout.lock()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
