//! Cross-check the analytic solver against the brute-force oracle on the
//! six-agent fleet and on each of its pairs.
//!
//! Run with `cargo run --release --example oracle_cross_check`.

use damped_consensus::consensus::{min_time_consensus, Fleet};
use damped_consensus::oracle::{oracle_min_time, OracleConfig};
use damped_consensus::pairwise::min_pair_time;
use damped_consensus::{AgentInit, Params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(1.0, 0.7)?;
    let agents = vec![
        AgentInit::new("a1", 0.04, 0.1),
        AgentInit::new("a2", 0.39, 1.05),
        AgentInit::new("a3", 0.3, -0.525),
        AgentInit::new("a4", 0.5, -0.525),
        AgentInit::new("a5", 0.2, -0.2),
        AgentInit::new("a6", 0.1, -0.05),
    ];
    let fleet = Fleet::new(agents, p)?;
    let xs = fleet.states();
    let cfg = OracleConfig::default();

    println!("{:<8} {:>10} {:>10} {:>10}", "agents", "analytic", "oracle", "|dt|");
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            let a = min_pair_time(xs[i], xs[j], &p)?.t_bar;
            let o = oracle_min_time(&[xs[i], xs[j]], &p, None, &cfg)?.t_star;
            println!("{:<8} {a:>10.6} {o:>10.6} {:>10.2e}", format!("a{}a{}", i + 1, j + 1), (a - o).abs());
        }
    }

    let start = std::time::Instant::now();
    let out = min_time_consensus(&fleet)?;
    let analytic = start.elapsed();
    let start = std::time::Instant::now();
    let orc = oracle_min_time(&xs, &p, Some(5.0), &cfg)?;
    let brute = start.elapsed();
    println!();
    println!("fleet    analytic t = {:.6} ({analytic:.2?})", out.t_bar_f);
    println!("         oracle   t = {:.6} ({brute:.2?})", orc.t_star);
    println!(
        "         consensus point distance to oracle set: {:.2e}",
        orc.common.distance(out.x_bar)
    );
    Ok(())
}
