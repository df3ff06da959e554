use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boundary::{membership, SequenceTag};
use crate::consensus::{feasibility, min_time_consensus, region_of_consensus, Feasibility, Fleet};
use crate::error::Result;
use crate::model::terminal_state;
use crate::oracle::{common_set, oracle_min_time, OracleConfig};

/// Largest tolerated gap between the analytic and brute-force times.
pub const TIME_TOLERANCE: f64 = 5e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub feasibility: Feasibility,
    pub seed: u64,
    pub t_analytic: Option<f64>,
    pub t_oracle: Option<f64>,
    pub dt: Option<f64>,
    /// Distance from the analytic point to the oracle's common set.
    pub point_distance: Option<f64>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        pass,
        detail,
    }
}

/// Run the analytic solver and the oracle side by side.
///
/// `seed` drives the random admissible controls used for the sampling check.
pub fn verify_report(fleet: &Fleet, cfg: &OracleConfig, seed: u64) -> Result<VerifyReport> {
    let p = &fleet.params;
    let verdict = feasibility(fleet);
    let mut report = VerifyReport {
        feasibility: verdict,
        seed,
        t_analytic: None,
        t_oracle: None,
        dt: None,
        point_distance: None,
        checks: Vec::new(),
        pass: false,
    };
    if verdict != Feasibility::FiniteTime {
        return Ok(report);
    }
    let xs = fleet.states();
    let out = min_time_consensus(fleet)?;
    let orc = oracle_min_time(&xs, p, None, cfg)?;
    let dt = (out.t_bar_f - orc.t_star).abs();
    let dist = orc.common.distance(out.x_bar);
    report.t_analytic = Some(out.t_bar_f);
    report.t_oracle = Some(orc.t_star);
    report.dt = Some(dt);
    report.point_distance = Some(dist);
    let checks = &mut report.checks;

    checks.push(check("time_agreement", dt <= TIME_TOLERANCE, format!("|dt| = {dt:.3e}")));
    checks.push(check("point_in_oracle_set", dist <= 1e-2, format!("distance {dist:.3e}")));

    let mut worst_miss: f64 = 0.0;
    let mut worst_fuel: f64 = 0.0;
    for (a, plan) in fleet.agents.iter().zip(&out.plans) {
        let end = terminal_state(a.x0, &plan.steering.control, p);
        worst_miss = worst_miss.max(end.dist(&out.x_bar));
        worst_fuel = worst_fuel.max(plan.steering.fuel_used - p.beta);
    }
    checks.push(check(
        "simulation_closure",
        worst_miss <= 1e-6 && worst_fuel <= 1e-9,
        format!("max miss {worst_miss:.3e}, max overspend {:.3e}", worst_fuel.max(0.0)),
    ));

    let region = region_of_consensus(fleet);
    checks.push(check(
        "point_in_region",
        region.contains(out.x_bar, p.tol.membership_eps),
        format!("distance {:.3e}", region.polygon.distance(out.x_bar)),
    ));

    let persists = [0.1, 0.5]
        .iter()
        .all(|d| !common_set(&xs, p, out.t_bar_f + d, cfg.grid).is_empty());
    checks.push(check("persistence", persists, "common set at t + 0.1 and t + 0.5".into()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = out.t_bar_f;
    let mut outside = 0;
    let mut total = 0;
    if t > 0.0 {
        let m = p.beta.min(t);
        for a in &fleet.agents {
            for _ in 0..32 {
                let tag = SequenceTag::ALL[rng.gen_range(0..4)];
                let fuel = rng.gen_range(0.0..=0.99 * m);
                let t1 = rng.gen_range(0.0..=fuel);
                let ctl = tag.schedule(t1, t - (fuel - t1), t)?;
                total += 1;
                if !membership(terminal_state(a.x0, &ctl, p), a.x0, p, t) {
                    outside += 1;
                }
            }
        }
    }
    checks.push(check(
        "random_controls_inside",
        outside == 0,
        format!("{outside} of {total} sampled terminal states outside"),
    ));

    report.pass = report.checks.iter().all(|c| c.pass);
    Ok(report)
}
