//! Brute-force reference: sampled attainable sets, polygon clipping and a
//! bisection on the first time all sets overlap.
//!
//! Nothing here uses the boundary equations. Each set is the convex hull of
//! terminal states of gridded bang-off-bang controls, integrated by linear
//! superposition of the three constant-input legs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::geometry::Polygon;
use crate::model::{Params, State};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Grid over `(t1, t2)` per sign pattern.
    pub grid: (usize, usize),
    /// Width of the final bisection bracket.
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid: (400, 400),
            tol: 1e-6,
        }
    }
}

/// Hull of the states reachable at `tf` with controls on the grid.
///
/// `t1` sweeps `[0, m]` and `t2` sweeps `[tf - m, tf]` with `m = min(beta, tf)`;
/// every `t1` is also paired with the fuel-exhausting `t2 = t1 + tf - m`, so
/// the budget-saturated curve is sampled at full `t1` resolution.
pub fn sample_attainable(x0: State, beta: f64, b: f64, tf: f64, grid: (usize, usize)) -> Polygon {
    if tf <= 0.0 {
        return Polygon::from_ccw(vec![x0]);
    }
    let (n1, n2) = (grid.0.max(2), grid.1.max(2));
    let m = beta.min(tf);
    let q = (-b * tf).exp();
    let bb = b * b;
    // e^{-b (tf - s)} for switch instant s
    let decay = |s: f64| (-b * (tf - s)).exp();
    let t1s: Vec<(f64, f64)> = (0..n1)
        .map(|i| {
            let t = m * i as f64 / (n1 - 1) as f64;
            (t, decay(t))
        })
        .collect();
    let t2s: Vec<(f64, f64)> = (0..n2)
        .map(|j| {
            let t = tf - m + m * j as f64 / (n2 - 1) as f64;
            (t, decay(t))
        })
        .collect();
    let mut pts = Vec::with_capacity(4 * n1 * (n2 + 1));
    let mut push = |t1: f64, a1: f64, t2: f64, a2: f64| {
        for (g1, g2) in [(1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)] {
            let x1 = x0.x1 + (g1 * t1 + g2 * (tf - t2)) / b;
            let x2 = q * x0.x2 - (g1 * (a1 - q) + g2 * (1.0 - a2)) / bb;
            pts.push(State::new(x1, x2));
        }
    };
    for &(t1, a1) in &t1s {
        let t2 = t1 + tf - m;
        push(t1, a1, t2, decay(t2));
        for &(t2, a2) in &t2s {
            if t2 >= t1 && t1 + tf - t2 <= beta + 1e-12 {
                push(t1, a1, t2, a2);
            }
        }
    }
    Polygon::hull(&pts)
}

pub fn polygon_intersect(a: &Polygon, b: &Polygon) -> Polygon {
    a.intersect(b)
}

/// Intersection of all sampled sets at `t` (empty as soon as one clip is).
pub fn common_set(agents: &[State], p: &Params, t: f64, grid: (usize, usize)) -> Polygon {
    let sets: Vec<Polygon> = agents
        .par_iter()
        .map(|&x| sample_attainable(x, p.beta, p.b, t, grid))
        .collect();
    let mut acc = sets[0].clone();
    for s in &sets[1..] {
        if acc.is_empty() {
            break;
        }
        acc = acc.intersect(s);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub t_star: f64,
    /// Centroid of the common set at the top of the final bracket.
    pub witness: State,
    pub common: Polygon,
}

/// First time the sampled sets share a point, by bisection on `[0, t_hi]`.
///
/// Without `t_hi` the bracket is found by doubling from 1 (up to 2^12).
pub fn oracle_min_time(
    agents: &[State],
    p: &Params,
    t_hi: Option<f64>,
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    if agents.is_empty() {
        return Err(Error::InvalidParams("no agents".into()));
    }
    let meets = |t: f64| {
        let c = common_set(agents, p, t, cfg.grid);
        (!c.is_empty()).then_some(c)
    };
    if let Some(c) = meets(0.0) {
        return Ok(OracleResult {
            t_star: 0.0,
            witness: c.centroid().expect("non-empty"),
            common: c,
        });
    }
    let mut hi = match t_hi {
        Some(t) => t,
        None => {
            let mut t = 1.0;
            while meets(t).is_none() {
                t *= 2.0;
                if t > 4096.0 {
                    return Err(Error::NoUpperBound(t));
                }
            }
            t
        }
    };
    let mut common = meets(hi).ok_or(Error::NoUpperBound(hi))?;
    let mut lo = 0.0;
    while hi - lo > cfg.tol {
        let mid = 0.5 * (lo + hi);
        match meets(mid) {
            Some(c) => {
                hi = mid;
                common = c;
            }
            None => lo = mid,
        }
    }
    Ok(OracleResult {
        t_star: 0.5 * (lo + hi),
        witness: common.centroid().expect("non-empty"),
        common,
    })
}
