use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ornament_cli::{
    cmd_gen, cmd_mu, cmd_sweep, cmd_track, cmd_validate, CommandOutcome, GenOptions, Kind, Method,
    TrackEnd,
};

/// Exact PL ornaments and their mu-invariant.
#[derive(Parser)]
#[command(name = "ornament", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the manifold and ornament conditions of an ornament document.
    Validate { file: PathBuf },
    /// Compute mu by preimage counting, by sweeping, or both.
    Mu {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a Borromean, trivial or random ornament document.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturb the result by at most this radius.
        #[arg(long)]
        eps: Option<String>,
        /// Box half-width for the random family.
        #[arg(long, default_value = "1")]
        spread: String,
        /// Trivial targets as "x,y;x,y;x,y".
        #[arg(long)]
        targets: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the signed triple points of a homotopy document.
    Sweep {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a generic straight-line homotopy starting at an ornament.
    Track {
        file: PathBuf,
        /// End at a perturbation of this radius instead of a trivial ornament.
        #[arg(long, conflicts_with_all = ["to", "targets"])]
        eps: Option<String>,
        /// End at the ornament in this document.
        #[arg(long, conflicts_with = "targets")]
        to: Option<PathBuf>,
        /// Trivial targets as "x,y;x,y;x,y".
        #[arg(long)]
        targets: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let outcome: CommandOutcome = match Cli::parse().command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Mu { file, method, seed } => cmd_mu(&file, method, seed),
        Command::Gen {
            kind,
            k,
            r,
            seed,
            eps,
            spread,
            targets,
            out,
        } => cmd_gen(&GenOptions {
            kind,
            k,
            r,
            seed,
            eps,
            spread,
            targets,
            out,
        }),
        Command::Sweep { file, seed } => cmd_sweep(&file, seed),
        Command::Track {
            file,
            eps,
            to,
            targets,
            seed,
            out,
        } => {
            let end = match (eps, to) {
                (Some(e), _) => TrackEnd::Perturbed(e),
                (None, Some(p)) => TrackEnd::File(p),
                (None, None) => TrackEnd::Trivial(targets),
            };
            cmd_track(&file, &end, seed, out.as_deref())
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize")
    );
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.status as u8)
}
