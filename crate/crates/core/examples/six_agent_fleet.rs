//! The six-agent fleet: consensus time, point, and every agent's control.
//!
//! Run with `cargo run --release --example six_agent_fleet`.

use damped_consensus::consensus::{min_time_consensus, Fleet};
use damped_consensus::model::terminal_state;
use damped_consensus::{AgentInit, Params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let agents = vec![
        AgentInit::new("a1", 0.04, 0.1),
        AgentInit::new("a2", 0.39, 1.05),
        AgentInit::new("a3", 0.3, -0.525),
        AgentInit::new("a4", 0.5, -0.525),
        AgentInit::new("a5", 0.2, -0.2),
        AgentInit::new("a6", 0.1, -0.05),
    ];
    let fleet = Fleet::new(agents, Params::new(1.0, 0.7)?)?;
    let start = std::time::Instant::now();
    let out = min_time_consensus(&fleet)?;
    let elapsed = start.elapsed();

    println!("t_bar = {:.6}", out.t_bar_f);
    println!("x_bar = ({:.6}, {:.6})", out.x_bar.x1, out.x_bar.x2);
    let ids: Vec<&str> = out.critical.iter().map(|&k| fleet.agents[k].id.as_str()).collect();
    println!("critical = {:?} ({} triplets, {:?})", ids, out.triplets_examined, out.case);
    println!("{:<4} {:>8} {:>18} {:>12} {:>10}", "id", "fuel", "(t1, t2)", "signs", "miss");
    for (agent, plan) in fleet.agents.iter().zip(&out.plans) {
        let c = plan.steering.control;
        let end = terminal_state(agent.x0, &c, &fleet.params);
        println!(
            "{:<4} {:>8.4} {:>18} {:>12} {:>10.1e}",
            plan.id,
            plan.steering.fuel_used,
            format!("({:.4}, {:.4})", c.t1, c.t2),
            format!("{:?}", c.pattern()),
            end.dist(&out.x_bar)
        );
    }
    println!("solved in {elapsed:.2?}");
    Ok(())
}
