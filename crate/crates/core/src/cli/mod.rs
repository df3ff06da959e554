//! Command implementations behind the `damped-consensus` binary.
//!
//! Exit codes: 0 when a finite consensus time exists (and, for `verify`, the
//! oracle agrees), 2 when the fleet is infeasible or only asymptotically
//! feasible, 1 on any other failure.

pub mod config;
pub mod plot;
pub mod report;
pub mod verify;

use std::path::{Path, PathBuf};

use crate::consensus::Feasibility;
use crate::error::Result;

pub use config::FleetConfig;
pub use plot::Which;
pub use report::{solve_report, SolveReport};
pub use verify::{verify_report, VerifyReport};

fn exit_code(f: Feasibility) -> i32 {
    match f {
        Feasibility::FiniteTime => 0,
        _ => 2,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn cmd_solve(config: &Path, out: Option<&Path>) -> Result<i32> {
    let fleet = FleetConfig::load(config)?.fleet()?;
    let report = solve_report(&fleet)?;
    emit(&report.to_json(), out)?;
    if report.feasibility != Feasibility::FiniteTime {
        eprintln!("{}", report.message);
    }
    Ok(exit_code(report.feasibility))
}

pub fn cmd_plot(config: &Path, which: Which, time: Option<f64>, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let fleet = FleetConfig::load(config)?.fleet()?;
    plot::plot(&fleet, which, time, out_dir)
}

pub fn cmd_verify(config: &Path, seed: u64, out: Option<&Path>) -> Result<i32> {
    let cfg = FleetConfig::load(config)?;
    let fleet = cfg.fleet()?;
    let report = verify_report(&fleet, &cfg.oracle(), seed)?;
    emit(&report.to_json(), out)?;
    Ok(match report.feasibility {
        Feasibility::FiniteTime if report.pass => 0,
        Feasibility::FiniteTime => 1,
        other => exit_code(other),
    })
}
