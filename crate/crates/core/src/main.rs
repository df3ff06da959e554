use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use damped_consensus::cli::{cmd_plot, cmd_solve, cmd_verify, Which};

#[derive(Parser)]
#[command(version, about = "Minimum-time consensus for fuel-limited damped agents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a fleet and write the JSON report.
    Solve {
        config: PathBuf,
        /// Report path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw attainable sets, the region of consensus, or trajectories.
    Plot {
        config: PathBuf,
        #[arg(long, value_parser = ["sets", "region", "phase"])]
        which: String,
        /// Time for `sets` (defaults to the consensus time).
        #[arg(long)]
        time: Option<f64>,
        #[arg(long, default_value = "plots")]
        out_dir: PathBuf,
    },
    /// Compare the analytic solution with the brute-force oracle.
    Verify {
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // usage errors share exit code 1 with other failures; 2 means infeasible
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve { config, out } => cmd_solve(&config, out.as_deref()),
        Command::Plot {
            config,
            which,
            time,
            out_dir,
        } => which
            .parse::<Which>()
            .and_then(|w| cmd_plot(&config, w, time, &out_dir))
            .map(|files| {
                for f in files {
                    println!("{}", f.display());
                }
                0
            }),
        Command::Verify { config, seed, out } => cmd_verify(&config, seed, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
