//! Fleet-level consensus: feasibility, the region of consensus, and the
//! minimum time over all triplets.
//!
//! Attainable sets are convex, so by Helly's theorem the whole fleet shares a
//! point exactly when every triplet does. Intersections persist once formed,
//! hence the fleet's minimum time is the largest triplet time.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{self, gamma, infinite_limit_arcs, LimitArcs, SequenceTag, Steering, Substitution};
use crate::error::{Error, Result};
use crate::geometry::Polygon;
use crate::model::{AgentInit, Params, State};
use crate::pairwise::{self, min_pair_time, PairResult};
use crate::triplet::{triplet_with_ids, TripletCase, TripletResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fleet {
    pub agents: Vec<AgentInit>,
    pub params: Params,
}

impl Fleet {
    pub fn new(agents: Vec<AgentInit>, params: Params) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::InvalidParams("a fleet needs at least one agent".into()));
        }
        for (k, a) in agents.iter().enumerate() {
            if !a.x0.is_finite() {
                return Err(Error::InvalidParams(format!("agent {} has a non-finite state", a.id)));
            }
            if agents[..k].iter().any(|b| b.id == a.id) {
                return Err(Error::InvalidParams(format!("duplicate agent id {:?}", a.id)));
            }
        }
        Ok(Fleet { agents, params })
    }

    pub fn states(&self) -> Vec<State> {
        self.agents.iter().map(|a| a.x0).collect()
    }

    /// `(min x10, max x10)`.
    pub fn x1_range(&self) -> (f64, f64) {
        self.agents.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), a| {
            (lo.min(a.x0.x1), hi.max(a.x0.x1))
        })
    }

    pub fn spread(&self) -> f64 {
        let (lo, hi) = self.x1_range();
        hi - lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feasibility {
    /// Spread below `2 beta / b`.
    FiniteTime,
    /// Spread equal to `2 beta / b`: the sets only meet as `t -> infinity`.
    AsymptoticOnly,
    Infeasible,
}

pub fn feasibility(fleet: &Fleet) -> Feasibility {
    match pairwise::spread_check(fleet.spread(), &fleet.params) {
        Ok(()) => Feasibility::FiniteTime,
        Err(Error::NoFiniteTime { .. }) => Feasibility::AsymptoticOnly,
        Err(_) => Feasibility::Infeasible,
    }
}

/// Where consensus can happen given unlimited time.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    /// Upper arc (from the leftmost agent) over the shared x1 interval.
    pub upper: Option<LimitArcs>,
    /// Lower arc (from the rightmost agent).
    pub lower: Option<LimitArcs>,
    pub polygon: Polygon,
}

impl Region {
    pub fn contains(&self, x: State, eps: f64) -> bool {
        self.polygon.contains(x, eps)
    }
}

pub fn region_of_consensus(fleet: &Fleet) -> Region {
    region_with_resolution(fleet, 512)
}

pub fn region_with_resolution(fleet: &Fleet, n: usize) -> Region {
    let p = &fleet.params;
    let (lo, hi) = fleet.x1_range();
    let min_agent = fleet.agents.iter().find(|a| a.x0.x1 == lo).expect("non-empty fleet");
    let max_agent = fleet.agents.iter().find(|a| a.x0.x1 == hi).expect("non-empty fleet");
    let (a, b) = (hi - p.max_shift(), lo + p.max_shift());
    let upper = infinite_limit_arcs(min_agent.x0, p.beta, p.b).restricted(a, b);
    let lower = infinite_limit_arcs(max_agent.x0, p.beta, p.b).restricted(a, b);
    let polygon = match (upper, lower) {
        (Some(u), Some(l)) => {
            let n = n.max(2);
            let pts: Vec<State> = (0..n)
                .flat_map(|k| {
                    let x = u.x1_lo + (u.x1_hi - u.x1_lo) * k as f64 / (n - 1) as f64;
                    [State::new(x, u.upper(x)), State::new(x, l.lower(x))]
                })
                .collect();
            Polygon::hull(&pts)
        }
        _ => Polygon::empty(),
    };
    Region {
        upper,
        lower,
        polygon,
    }
}

/// One agent's part of the consensus manoeuvre.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentPlan {
    pub id: String,
    pub steering: Steering,
    /// Member of the triplet (or pair) that fixes the consensus time.
    pub critical: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsensusOutcome {
    pub t_bar_f: f64,
    pub x_bar: State,
    /// Indices of the agents that fix the time (1, 2 or 3 of them).
    pub critical: Vec<usize>,
    pub case: Option<TripletCase>,
    pub triplets_examined: usize,
    pub plans: Vec<AgentPlan>,
}

/// Minimum time at which every agent can sit on one common point, and the
/// controls that get them there.
pub fn min_time_consensus(fleet: &Fleet) -> Result<ConsensusOutcome> {
    let p = &fleet.params;
    pairwise::spread_check(fleet.spread(), p)?;
    let xs = fleet.states();
    let n = xs.len();
    let plan = |k: usize, steering: Steering, critical: bool| AgentPlan {
        id: fleet.agents[k].id.clone(),
        steering,
        critical,
    };

    if n == 1 {
        return Ok(ConsensusOutcome {
            t_bar_f: 0.0,
            x_bar: xs[0],
            critical: vec![0],
            case: None,
            triplets_examined: 0,
            plans: vec![plan(0, boundary::coast(0.0), true)],
        });
    }
    if n == 2 {
        let r = min_pair_time(xs[0], xs[1], p)?;
        let [s0, s1] = r.steering(xs[0], xs[1], p)?;
        return Ok(ConsensusOutcome {
            t_bar_f: r.t_bar,
            x_bar: r.x_bar,
            critical: vec![0, 1],
            case: None,
            triplets_examined: 0,
            plans: vec![plan(0, s0, true), plan(1, s1, true)],
        });
    }

    let pair_index: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let pairs: Vec<Result<PairResult>> = pair_index
        .par_iter()
        .map(|&(i, j)| min_pair_time(xs[i], xs[j], p))
        .collect();
    let pairs: Vec<PairResult> = pairs.into_iter().collect::<Result<_>>()?;
    let pair_at = |i: usize, j: usize| {
        let k = pair_index.binary_search(&(i, j)).expect("pair present");
        &pairs[k]
    };

    let triplets: Vec<[usize; 3]> = (0..n)
        .flat_map(|i| ((i + 1)..n).flat_map(move |j| ((j + 1)..n).map(move |k| [i, j, k])))
        .collect();
    let results: Vec<Result<TripletResult>> = triplets
        .par_iter()
        .map(|&[i, j, k]| {
            triplet_with_ids(
                [xs[i], xs[j], xs[k]],
                [i, j, k],
                p,
                Some([pair_at(i, j), pair_at(j, k), pair_at(i, k)]),
            )
        })
        .collect();

    // ties within feas_tol go to the lexicographically first triplet
    let mut best: Option<(usize, TripletResult)> = None;
    for (idx, r) in results.into_iter().enumerate() {
        let r = r?;
        let better = match &best {
            None => true,
            Some((_, b)) => r.t_bar > b.t_bar + p.tol.feas_tol,
        };
        if better {
            best = Some((idx, r));
        }
    }
    let (idx, win) = best.expect("at least one triplet");
    let critical = triplets[idx];

    let plans: Vec<Result<AgentPlan>> = (0..n)
        .into_par_iter()
        .map(|k| match critical.iter().position(|&c| c == k) {
            Some(slot) => Ok(plan(k, win.steering[slot], true)),
            None => rebudget_fuel(xs[k], win.x_bar, win.t_bar, p).map(|s| plan(k, s, false)),
        })
        .collect();
    Ok(ConsensusOutcome {
        t_bar_f: win.t_bar,
        x_bar: win.x_bar,
        critical: critical.to_vec(),
        case: Some(win.case),
        triplets_examined: triplets.len(),
        plans: plans.into_iter().collect::<Result<_>>()?,
    })
}

/// Smallest budget `beta' <= beta` that puts `xbar` on the boundary of the
/// agent's attainable set at `tbar`, with the control that realizes it.
///
/// Points within `membership_eps` outside the full-budget set are accepted
/// and steered with the whole budget.
pub fn rebudget_fuel(x0: State, xbar: State, tbar: f64, p: &Params) -> Result<Steering> {
    let eps = p.tol.membership_eps;
    let unreachable = || Error::NotReachable {
        x1: xbar.x1,
        x2: xbar.x2,
    };
    if tbar <= 0.0 {
        return if xbar.dist(&x0) <= eps {
            Ok(boundary::coast(0.0))
        } else {
            Err(unreachable())
        };
    }
    let b = p.b;
    let cap = p.beta.min(tbar);
    let d = xbar.x1 - x0.x1;
    let need = b * d.abs();
    if need > cap + b * eps {
        return Err(unreachable());
    }
    let f_lo = need.min(cap);

    // x2 of the upper / lower arc above xbar.x1 for budget f
    let upper = |f: f64| {
        let sub = Substitution::new(x0.x1, xbar.x1, tbar, f, b);
        -gamma(SequenceTag::S1, &sub, x0.x2, 0.0, b).expect("positive substitution")
    };
    let lower = |f: f64| {
        let sub = Substitution::new(x0.x1, xbar.x1, tbar, f, b);
        -gamma(SequenceTag::S3, &sub, x0.x2, 0.0, b).expect("positive substitution") / sub.w_1
    };
    let x2 = xbar.x2;
    if x2 > upper(cap) + eps || x2 < lower(cap) - eps {
        return Err(unreachable());
    }

    let (u0, l0) = (upper(f_lo), lower(f_lo));
    let (tag, fuel) = if x2 <= u0 && x2 >= l0 {
        let seg = if d >= 0.0 { SequenceTag::S4 } else { SequenceTag::S2 };
        if let Ok(s) = boundary::steer(seg, x0, xbar, f_lo, p, tbar) {
            return Ok(s);
        }
        let tag = if x2 - l0 < u0 - x2 { SequenceTag::S3 } else { SequenceTag::S1 };
        (tag, f_lo)
    } else if x2 > u0 {
        (SequenceTag::S1, bisect(|f| upper(f) - x2, f_lo, cap))
    } else {
        (SequenceTag::S3, bisect(|f| x2 - lower(f), f_lo, cap))
    };
    boundary::steer(tag, x0, xbar, fuel, p, tbar)
}

/// Root of `h` on `[lo, hi]` given `h(lo) < 0`; returns `hi` if `h` never
/// turns non-negative.
fn bisect(h: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    if h(hi) < 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}
