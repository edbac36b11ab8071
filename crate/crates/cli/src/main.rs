//! `fevac`: batch experiments on Thompson's group F automata.
//!
//! Exit codes: 0 success (including "no scheme" results), 2 invalid input or
//! a failed self-test, 3 infeasible input or a rejected certificate.

mod commands;
mod output;
mod range;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fevac::forests::DEFAULT_BUDGET;
use fevac::Exec;

use commands::{BbMode, CliError, CliResult, Done};
use output::{Format, Sink};

#[derive(Parser, Debug)]
#[command(name = "fevac", version, about = "Isoperimetry and evacuation experiments on Thompson's group F")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Maximum number of marked forests to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for the data-parallel loops.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Omit the generation time from JSON output.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ball of radius r in the Cayley graph, with its boundary report.
    Ball {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "x0,x1")]
        alphabet: String,
    },
    /// Brown-Belk set BB(n, k): enumerated automaton or exact counts.
    Bb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "x0,x1")]
        alphabet: String,
        #[arg(long, value_enum, default_value = "count")]
        mode: BbMode,
    },
    /// Density, xi and Y0 fraction over ranges of n and k.
    Sweep {
        /// e.g. `1-12` or `100,500,2000`
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
        /// Repeatable.
        #[arg(long = "alphabet", default_value = "x0,x1")]
        alphabets: Vec<String>,
        /// Add the trimmed density over {x0, x1, xb1}.
        #[arg(long)]
        trimmed: bool,
    },
    /// Evacuation scheme with edge capacity K, or a witness that none exists.
    Evac {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long = "K", short = 'K', default_value_t = 1)]
        k: u32,
    },
    /// Verify a flow certificate against an automaton.
    Certify {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Quick consistency checks across all modules.
    Selftest,
}

fn exec_for(threads: usize) -> CliResult<Exec> {
    if threads == 0 {
        return Err(CliError::Invalid("--threads must be at least 1".into()));
    }
    if threads == 1 {
        return Ok(Exec::Sequential);
    }
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(Exec::Parallel)
    }
    #[cfg(not(feature = "parallel"))]
    {
        eprintln!("warning: built without the `parallel` feature; running on one thread");
        Ok(Exec::Sequential)
    }
}

fn run(cli: &Cli) -> CliResult<Done> {
    let exec = exec_for(cli.threads)?;
    let invalid = CliError::Invalid;
    match &cli.command {
        Command::Ball { r, alphabet } => commands::cmd_ball(*r, alphabet),
        Command::Bb { n, k, alphabet, mode } => commands::cmd_bb(*n, *k, alphabet, *mode, cli.budget, exec),
        Command::Sweep { n, k, alphabets, trimmed } => {
            let ns = range::parse_range(n).map_err(invalid)?;
            let ks = range::parse_range(k).map_err(invalid)?;
            commands::cmd_sweep(&ns, &ks, alphabets, *trimmed, exec)
        }
        Command::Evac { automaton, k } => commands::cmd_evac(automaton, *k),
        Command::Certify { automaton, certificate } => commands::cmd_certify(automaton, certificate),
        Command::Selftest => commands::cmd_selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sink = Sink { out: cli.out.clone(), format: cli.format, timestamp: !cli.no_timestamp };
    match run(&cli) {
        Ok(done) => match sink.emit(&done.report) {
            Ok(()) => ExitCode::from(done.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(CliError::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Infeasible(m)) => {
            eprintln!("infeasible: {m}");
            ExitCode::from(3)
        }
    }
}
