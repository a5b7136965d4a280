use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use asm_perm::cli::{self, Command, Format, Limits, RunConfig};
use asm_perm::Permutation;

/// Sandpile model on permutation graphs.
#[derive(Parser)]
#[command(name = "asm-perm", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format: text or structured (one JSON record per line).
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// Largest n accepted (default 8 for single permutations, 6 for sweeps).
    #[arg(long, global = true)]
    limit: Option<usize>,

    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct PermArgs {
    /// Permutation in one-line notation, e.g. 3421 or 10,1,2,...
    permutation: String,

    /// Sink vertex (default 1).
    #[arg(long)]
    sink: Option<usize>,

    /// Repeat for every sink.
    #[arg(long)]
    all_sinks: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Vertices, edges, degrees and structural flags.
    Graph(PermArgs),
    /// Recurrent configurations with level and canonical toppling.
    Recurrent(PermArgs),
    /// Level and Tutte polynomials.
    Polynomials(PermArgs),
    /// Spanning trees mapped to recurrent configurations.
    Bijection(PermArgs),
    /// Compatible ordered partitions and their minimal recurrent configurations.
    Partitions(PermArgs),
    /// Minimal-recurrent totals over all indecomposable permutations.
    Oeis {
        /// Range of n, e.g. 1..5 (inclusive).
        #[arg(long, default_value = "1..5")]
        range: String,
    },
}

fn build(cli: Cli) -> asm_perm::Result<RunConfig> {
    let (command, perm, range) = match cli.command {
        Cmd::Graph(a) => (Command::Graph, Some(a), None),
        Cmd::Recurrent(a) => (Command::Recurrent, Some(a), None),
        Cmd::Polynomials(a) => (Command::Polynomials, Some(a), None),
        Cmd::Bijection(a) => (Command::Bijection, Some(a), None),
        Cmd::Partitions(a) => (Command::Partitions, Some(a), None),
        Cmd::Oeis { range } => (Command::Oeis, None, Some(cli::parse_range(&range)?)),
    };
    let mut cfg = RunConfig::new(command);
    cfg.format = cli.format.parse::<Format>()?;
    cfg.jobs = cli.jobs;
    cfg.range = range;
    if let Some(l) = cli.limit {
        cfg.limits = Limits {
            per_permutation: l,
            sweep: l,
        };
    }
    if let Some(a) = perm {
        cfg.permutation = Some(a.permutation.parse::<Permutation>()?);
        cfg.sink = a.sink;
        cfg.all_sinks = a.all_sinks;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cfg = match build(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match cli::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = report
        .write_to(&mut out, cfg.format)
        .and_then(|_| out.flush())
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
