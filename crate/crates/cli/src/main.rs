use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rzf_cli::commands::{
    cmd_generate, cmd_rank, cmd_simulate, cmd_verify, resolve_limit, resolve_start, Emit, MethodChoice, RankOptions,
    SimulateOptions,
};
use rzf_cli::ingest::{load_graph, write_edge_csv};
use rzf_cli::report::{emit, Format};
use rzf_cli::{CliError, Result};
use rzf_core::process::Stepping;

#[derive(Parser)]
#[command(name = "rzf", version, about = "Randomized zero forcing on weighted digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank every vertex by its expected propagation time as a lone starting vertex.
    Rank {
        /// Edge list (`source,target,weight`) or labeled square matrix.
        graph: PathBuf,
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
        #[arg(long, default_value_t = 10_000)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vertex count solved exactly (default from RZF_DP_LIMIT, else 22).
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the process from a set of starting vertices.
    Simulate {
        graph: PathBuf,
        /// Comma-separated labels of the initially blue vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        start: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "summary")]
        emit: Emit,
        /// Simulate even when some vertex can never turn blue (needs --cap).
        #[arg(long)]
        allow_infinite: bool,
        /// Stop every run after this many rounds.
        #[arg(long)]
        cap: Option<u64>,
        /// Advance one round at a time instead of skipping rounds without change.
        #[arg(long)]
        naive: bool,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in self-check suites.
    Verify {
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the edge list of a family described by a key = value config file.
    Generate {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Rank { graph, method, runs, seed, limit, format, out } => {
            let g = load_graph(&graph)?;
            let opts = RankOptions { method, runs, seed, limit: resolve_limit(limit)? };
            let report = cmd_rank(&g, &opts)?;
            emit(&report.render(format)?, out.as_deref())?;
        }
        Command::Simulate { graph, start, runs, seed, emit: mode, allow_infinite, cap, naive, format, out } => {
            let g = load_graph(&graph)?;
            let s = resolve_start(&g, &start)?;
            let stepping = if naive { Stepping::Naive } else { Stepping::Accelerated };
            let sim = cmd_simulate(&g, &s, &SimulateOptions { runs, seed, allow_infinite, cap, stepping })?;
            let text = match (mode, format) {
                (Emit::Summary, Format::Json) => sim.summary_json(),
                (Emit::Summary, Format::Csv) => {
                    return Err(CliError::Usage("the summary is only available as json".into()));
                }
                (Emit::Trajectory, Format::Json) => sim.trajectories_json()?,
                (Emit::Trajectory, Format::Csv) => sim.trajectories_csv(),
            };
            emit(&text, out.as_deref())?;
        }
        Command::Verify { scope, seed, out } => {
            let summary = cmd_verify(&scope, seed)?;
            emit(&summary.to_json()?, out.as_deref())?;
            return Ok(summary.all_passed());
        }
        Command::Generate { config, out } => {
            let text = fs::read_to_string(&config).map_err(|e| CliError::io(config.display().to_string(), e))?;
            let gen = cmd_generate(&text)?;
            let starts: Vec<String> = gen.start.iter().map(|v| gen.graph.label(v)).collect();
            eprintln!("start: {}", starts.join(","));
            let mut buf = Vec::new();
            write_edge_csv(&gen.graph, &mut buf)?;
            emit(&String::from_utf8(buf).expect("csv output is UTF-8"), out.as_deref())?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
