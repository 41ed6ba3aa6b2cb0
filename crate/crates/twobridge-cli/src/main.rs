//! Command-line front end for two-bridge link invariants.

mod commands;
mod output;

use clap::{Parser, Subcommand};

use commands::{
    cmd_analyze, cmd_batch, cmd_certify, cmd_graph, cmd_present, cmd_reduce_chain, cmd_witness,
    CliError,
};

#[derive(Parser)]
#[command(
    name = "twobridge",
    version,
    about = "Invariants and bi-orderability certificates for two-bridge links L(p/q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: polynomial, presentations, reduction chain, witness,
    /// chain data and verdict
    Analyze {
        /// Fraction "p/q"
        fraction: String,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        /// Highest subgroup-chain level to check
        #[arg(long, default_value_t = 3)]
        level: i64,
    },
    /// Bi-orderability certificate
    Certify {
        fraction: String,
        #[arg(long)]
        json: bool,
    },
    /// Group presentation and the rewritten subgroup presentation
    Present {
        fraction: String,
        /// Chain level n of the truncated presentation
        #[arg(long)]
        level: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Cycle graph structure
    Graph {
        fraction: String,
        /// Emit DOT
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Reduction chain down to a base pair
    #[command(name = "reduce-chain")]
    ReduceChain {
        fraction: String,
        #[arg(long)]
        json: bool,
    },
    /// Build, verify and print the nested-subgraph witness
    Witness {
        fraction: String,
        #[arg(long)]
        json: bool,
        /// Emit one DOT graph per witness stage
        #[arg(long)]
        dot_per_stage: bool,
        /// Highest subgroup-chain level to check
        #[arg(long, default_value_t = 3)]
        level: i64,
    },
    /// Sweep all canonical pairs up to a bound (or those listed in a file)
    Batch {
        /// Largest p to sweep
        #[arg(long, default_value_t = 60)]
        max_p: i64,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
        /// File of "p/q" lines instead of a sweep
        file: Option<String>,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TBL_LOG")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { fraction, json, level } => cmd_analyze(fraction, *level, *json),
        Command::Certify { fraction, json } => cmd_certify(fraction, *json),
        Command::Present { fraction, level, json } => cmd_present(fraction, *level, *json),
        Command::Graph { fraction, dot, json } => cmd_graph(fraction, *dot, *json),
        Command::ReduceChain { fraction, json } => cmd_reduce_chain(fraction, *json),
        Command::Witness { fraction, json, dot_per_stage, level } => {
            cmd_witness(fraction, *json, *dot_per_stage, *level)
        }
        Command::Batch { max_p, jobs, json, file } => {
            cmd_batch(*max_p, file.as_deref(), *jobs, *json)
        }
    };
    match result {
        Ok(text) => {
            print!("{text}");
        }
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
        Err(e @ CliError::Verification(_)) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}
