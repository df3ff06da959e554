use serde::{Deserialize, Serialize};

use crate::consensus::{feasibility, min_time_consensus, region_of_consensus, Feasibility, Fleet};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentReport {
    pub id: String,
    pub x0: [f64; 2],
    /// `(gamma1, 0, gamma2)`.
    pub sequence: [i8; 3],
    pub t1: f64,
    pub t2: f64,
    pub fuel_used: f64,
    pub critical: bool,
}

/// Machine-readable result of `solve`; the payload broadcast to every agent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub feasibility: Feasibility,
    /// `max x10 - min x10`.
    pub spread: f64,
    /// `2 beta / b`.
    pub spread_limit: f64,
    pub message: String,
    pub b: f64,
    pub beta: f64,
    pub t_bar_f: Option<f64>,
    pub x_bar: Option<[f64; 2]>,
    pub critical_triplet: Vec<String>,
    pub triplets_examined: usize,
    pub agents: Vec<AgentReport>,
    /// Vertices of the region of consensus, counterclockwise.
    pub region: Vec<[f64; 2]>,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn solve_report(fleet: &Fleet) -> Result<SolveReport> {
    let p = &fleet.params;
    let verdict = feasibility(fleet);
    let spread = fleet.spread();
    let limit = 2.0 * p.max_shift();
    let region = if verdict == Feasibility::Infeasible {
        Vec::new()
    } else {
        region_of_consensus(fleet)
            .polygon
            .vertices()
            .iter()
            .map(|v| [v.x1, v.x2])
            .collect()
    };
    let mut report = SolveReport {
        feasibility: verdict,
        spread,
        spread_limit: limit,
        message: String::new(),
        b: p.b,
        beta: p.beta,
        t_bar_f: None,
        x_bar: None,
        critical_triplet: Vec::new(),
        triplets_examined: 0,
        agents: Vec::new(),
        region,
    };
    match verdict {
        Feasibility::Infeasible => {
            report.message = format!(
                "x1 spread {spread} exceeds 2*beta/b = {limit}: consensus is impossible"
            );
            return Ok(report);
        }
        Feasibility::AsymptoticOnly => {
            report.message = format!(
                "x1 spread {spread} equals 2*beta/b = {limit}: consensus only as t -> infinity"
            );
            return Ok(report);
        }
        Feasibility::FiniteTime => {}
    }
    let out = min_time_consensus(fleet)?;
    report.message = format!("x1 spread {spread} is below 2*beta/b = {limit}");
    report.t_bar_f = Some(out.t_bar_f);
    report.x_bar = Some([out.x_bar.x1, out.x_bar.x2]);
    report.critical_triplet = out.critical.iter().map(|&k| fleet.agents[k].id.clone()).collect();
    report.triplets_examined = out.triplets_examined;
    report.agents = fleet
        .agents
        .iter()
        .zip(&out.plans)
        .map(|(a, plan)| {
            let c = plan.steering.control;
            AgentReport {
                id: a.id.clone(),
                x0: [a.x0.x1, a.x0.x2],
                sequence: c.pattern(),
                t1: c.t1,
                t2: c.t2,
                fuel_used: plan.steering.fuel_used,
                critical: plan.critical,
            }
        })
        .collect();
    Ok(report)
}
