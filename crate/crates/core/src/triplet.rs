//! Minimum-time consensus of three agents.
//!
//! If the contact point of the slowest pair already lies in the third set,
//! that pair decides (case 1). Otherwise the first common point lies on all
//! three boundaries at once (case 2): every assignment of boundary families to
//! the agents is solved and the earliest feasible solution wins.

use serde::{Deserialize, Serialize};

use crate::boundary::{
    self, switching_times, w_of_x1, x1_of_w, ArcForm, Regime, SequenceTag, Steering,
};
use crate::consensus::rebudget_fuel;
use crate::error::{Error, Result};
use crate::model::{Params, State};
use crate::numerics::{resultant_eliminate, solve_2x2, BiPoly, Poly, Var};
use crate::pairwise::{self, min_pair_time, PairResult};

/// Resolution of the third agent's polygon in the case-1 test.
pub const CASE1_RESOLUTION: usize = 4096;

/// Boundary families assigned to the three agents, in one time regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scenario {
    pub tags: [SequenceTag; 3],
    pub regime: Regime,
}

impl Scenario {
    pub fn new(tags: [SequenceTag; 3], regime: Regime) -> Self {
        Scenario { tags, regime }
    }

    /// The 64 fuel-saturated assignments followed by the 8 bang-bang ones
    /// (only `S1`/`S3` exist while the budget is slack).
    pub fn all() -> Vec<Scenario> {
        let mut out = Vec::with_capacity(72);
        for a in SequenceTag::ALL {
            for b in SequenceTag::ALL {
                for c in SequenceTag::ALL {
                    out.push(Scenario::new([a, b, c], Regime::Saturated));
                }
            }
        }
        let arcs = [SequenceTag::S1, SequenceTag::S3];
        for a in arcs {
            for b in arcs {
                for c in arcs {
                    out.push(Scenario::new([a, b, c], Regime::BangBang));
                }
            }
        }
        out
    }

    fn forms(&self, agents: [State; 3], p: &Params) -> Result<[ArcForm; 3]> {
        Ok([
            ArcForm::new(self.tags[0], self.regime, agents[0], p)?,
            ArcForm::new(self.tags[1], self.regime, agents[1], p)?,
            ArcForm::new(self.tags[2], self.regime, agents[2], p)?,
        ])
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let r = match self.regime {
            Regime::Saturated => "saturated",
            Regime::BangBang => "bang-bang",
        };
        write!(f, "({},{},{}) {r}", self.tags[0], self.tags[1], self.tags[2])
    }
}

/// A point common to the three assigned boundary families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSolution {
    pub scenario: Scenario,
    pub t_f: f64,
    pub x_hat: State,
    /// Time variable (`q` or `r`, see [`Regime`]).
    pub z: f64,
    pub w_1: f64,
    /// Relative residuals of the three boundary equations.
    pub residuals: [f64; 3],
    /// Switching times per agent; `None` where the inequalities fail.
    pub switching: [Option<(f64, f64)>; 3],
    pub feasible: bool,
}

/// Two `x2`-free equations in `(w, z)` for an all-arc scenario, and the
/// univariate polynomial left after eliminating `w`.
#[derive(Debug, Clone)]
pub struct Elimination {
    pub f: BiPoly,
    pub g: BiPoly,
    pub poly: Poly,
}

fn max_coeff(p: &BiPoly) -> f64 {
    p.terms().map(|(_, _, v)| v.abs()).fold(0.0, f64::max)
}

/// Eliminate `x2` and then `w` from an all-arc scenario.
///
/// Of the three ways to pick two `x2`-eliminated equations, the one giving the
/// lowest-degree nonvanishing resultant is kept.
pub fn eliminate(s: &Scenario, agents: [State; 3], p: &Params) -> Result<Elimination> {
    if !s.tags.iter().all(|t| t.is_arc()) {
        return Err(Error::DegenerateElimination(format!(
            "{s} pins w; no elimination needed"
        )));
    }
    let [a, b, c] = s.forms(agents, p)?;
    let e01 = a.eliminate_x2(&b)?;
    let e02 = a.eliminate_x2(&c)?;
    let e12 = b.eliminate_x2(&c)?;
    let mut best: Option<Elimination> = None;
    for (f, g) in [(&e01, &e02), (&e01, &e12), (&e02, &e12)] {
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let Ok(res) = resultant_eliminate(f, g, Var::W) else {
            continue;
        };
        let df = f.degree_in(Var::W).unwrap_or(0) as i32;
        let dg = g.degree_in(Var::W).unwrap_or(0) as i32;
        let reference = max_coeff(f).powi(dg) * max_coeff(g).powi(df);
        if !(res.max_abs_coeff() > 1e-10 * reference) {
            continue;
        }
        let poly = res.trimmed(1e-13);
        let better = match &best {
            None => true,
            Some(b) => poly.degree() < b.poly.degree(),
        };
        if better {
            best = Some(Elimination {
                f: f.clone(),
                g: g.clone(),
                poly,
            });
        }
    }
    best.ok_or_else(|| Error::DegenerateElimination(format!("{s}: every resultant vanishes")))
}

/// Window of `w` where all three agents can be at full reach.
fn w_window(agents: [State; 3], p: &Params) -> (f64, f64) {
    let (lo, hi) = agents.iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(lo, hi), a| {
        (lo.max(a.x1 - p.max_shift()), hi.min(a.x1 + p.max_shift()))
    });
    let pad = 1e-9 * (1.0 + p.max_shift());
    (w_of_x1(lo - pad, p.b), w_of_x1(hi + pad, p.b))
}

fn z_window(regime: Regime, p: &Params) -> (f64, f64) {
    match regime {
        Regime::Saturated => (f64::MIN_POSITIVE, 1.0),
        Regime::BangBang => (regime.z_of_time(p.beta, p.b), 1.0),
    }
}

/// Newton steps on `f = g = 0` in `(w, z)`.
fn polish(f: &BiPoly, g: &BiPoly, mut w: f64, mut z: f64) -> (f64, f64) {
    let (fw, fz, gw, gz) = (
        f.partial(Var::W),
        f.partial(Var::Z),
        g.partial(Var::W),
        g.partial(Var::Z),
    );
    let size = |w: f64, z: f64| f.eval(w, z).abs() / f.eval_abs(w, z).max(1e-300)
        + g.eval(w, z).abs() / g.eval_abs(w, z).max(1e-300);
    for _ in 0..8 {
        let Ok((dw, dz)) = solve_2x2(
            fw.eval(w, z),
            fz.eval(w, z),
            gw.eval(w, z),
            gz.eval(w, z),
            -f.eval(w, z),
            -g.eval(w, z),
        ) else {
            break;
        };
        let (nw, nz) = (w + dw, z + dz);
        if !(nw > 0.0 && nz > 0.0) || size(nw, nz) >= size(w, z) {
            break;
        }
        w = nw;
        z = nz;
    }
    (w, z)
}

fn finish(
    s: &Scenario,
    forms: &[ArcForm; 3],
    agents: [State; 3],
    p: &Params,
    w: f64,
    z: f64,
    x2: f64,
) -> ScenarioSolution {
    let t = s.regime.time_of_z(z, p.b);
    let x = State::new(x1_of_w(w, p.b), x2);
    let mut residuals = [0.0; 3];
    for (r, form) in residuals.iter_mut().zip(forms) {
        *r = form.residual(w, x2, z).abs() / form.residual_scale(w, x2, z).max(1e-300);
    }
    let fuel = s.regime.fuel(t, p.beta);
    let tol = p.tol.feas_tol * (1.0 + t);
    let mut switching = [None; 3];
    for k in 0..3 {
        switching[k] = switching_times(s.tags[k], x, agents[k], fuel, p.b, t, tol).ok();
    }
    let in_regime = match s.regime {
        Regime::Saturated => t >= p.beta - tol,
        Regime::BangBang => t <= p.beta + tol,
    };
    let feasible = t.is_finite()
        && t > 0.0
        && in_regime
        && switching.iter().all(Option::is_some)
        && residuals.iter().all(|&r| r <= 1e-8);
    ScenarioSolution {
        scenario: *s,
        t_f: t,
        x_hat: x,
        z,
        w_1: w,
        residuals,
        switching,
        feasible,
    }
}

/// Every point where the three assigned families meet, with feasibility.
pub fn solve_scenario(s: &Scenario, agents: [State; 3], p: &Params) -> Result<Vec<ScenarioSolution>> {
    if s.regime == Regime::BangBang && !s.tags.iter().all(|t| t.is_arc()) {
        return Ok(Vec::new());
    }
    let forms = s.forms(agents, p)?;
    let pinned: Vec<usize> = (0..3).filter(|&k| !s.tags[k].is_arc()).collect();
    match pinned.len() {
        0 => solve_arcs(s, &forms, agents, p),
        1 => Ok(solve_pinned(s, &forms, agents, p, pinned[0]).into_iter().collect()),
        _ => Ok(Vec::new()),
    }
}

fn solve_arcs(
    s: &Scenario,
    forms: &[ArcForm; 3],
    agents: [State; 3],
    p: &Params,
) -> Result<Vec<ScenarioSolution>> {
    let elim = match eliminate(s, agents, p) {
        Ok(e) => e,
        Err(Error::DegenerateElimination(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    if elim.poly.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let (z_lo, z_hi) = z_window(s.regime, p);
    let (w_lo, w_hi) = w_window(agents, p);
    let mut out = Vec::new();
    for z in elim.poly.real_roots(z_lo, z_hi, 1e-14)? {
        if z <= 0.0 {
            continue;
        }
        let (lead, other) = {
            let fw = elim.f.restrict(Var::W, z);
            if fw.max_abs_coeff() > 1e-12 * max_coeff(&elim.f) && fw.degree().unwrap_or(0) > 0 {
                (fw, &elim.g)
            } else {
                (elim.g.restrict(Var::W, z), &elim.f)
            }
        };
        let Ok(ws) = lead.real_roots(w_lo, w_hi, 1e-14) else {
            continue;
        };
        for w in ws {
            if !(w > 0.0) {
                continue;
            }
            let scale = other.eval_abs(w, z).max(1e-300);
            if other.eval(w, z).abs() > 1e-6 * scale {
                continue;
            }
            let (w, z) = polish(&elim.f, &elim.g, w, z);
            let Some(x2) = forms[0].x2_at(w, z) else {
                continue;
            };
            out.push(finish(s, forms, agents, p, w, z, x2));
        }
    }
    Ok(out)
}

fn solve_pinned(
    s: &Scenario,
    forms: &[ArcForm; 3],
    agents: [State; 3],
    p: &Params,
    k: usize,
) -> Option<ScenarioSolution> {
    let w = forms[k].pinned_w()?;
    let rest: Vec<&ArcForm> = (0..3).filter(|&i| i != k).map(|i| &forms[i]).collect();
    // each remaining equation is lead(w) x2 + c0 + c1 z = 0
    let row = |f: &ArcForm| {
        if f.pinned_w().is_some() {
            return None;
        }
        let pz = f.poly().restrict(Var::Z, w);
        let c = pz.coeffs();
        Some((f.lead(w), c.get(1).copied().unwrap_or(0.0), c.first().copied().unwrap_or(0.0)))
    };
    let (a1, b1, c1) = row(rest[0])?;
    let (a2, b2, c2) = row(rest[1])?;
    let (x2, z) = solve_2x2(a1, b1, a2, b2, -c1, -c2).ok()?;
    if !(z > 0.0 && z < 1.0) {
        return None;
    }
    Some(finish(s, forms, agents, p, w, z, x2))
}

/// How a triplet's consensus point was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripletCase {
    /// The slowest pair's contact point lies in the third set.
    Pair,
    /// The point lies on all three boundaries.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripletResult {
    pub t_bar: f64,
    pub x_bar: State,
    pub case: TripletCase,
    /// Per agent, in input order.
    pub steering: [Steering; 3],
    /// Pair times for (0,1), (1,2), (0,2).
    pub pair_times: [f64; 3],
    pub scenario: Option<Scenario>,
}

/// Minimum consensus time of three agents.
pub fn min_triplet_time(agents: [State; 3], p: &Params) -> Result<TripletResult> {
    triplet_with_ids(agents, [0, 1, 2], p, None)
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// `pairs`, when given, must hold the results for (0,1), (1,2), (0,2).
pub(crate) fn triplet_with_ids(
    agents: [State; 3],
    ids: [usize; 3],
    p: &Params,
    pairs: Option<[&PairResult; 3]>,
) -> Result<TripletResult> {
    let spread = agents.iter().map(|a| a.x1).fold(f64::NEG_INFINITY, f64::max)
        - agents.iter().map(|a| a.x1).fold(f64::INFINITY, f64::min);
    if let Err(e) = pairwise::spread_check(spread, p) {
        return Err(Error::InfeasibleTriplet {
            i: ids[0],
            j: ids[1],
            k: ids[2],
            reason: e.to_string(),
        });
    }
    if agents[0] == agents[1] && agents[1] == agents[2] {
        let still = boundary::coast(0.0);
        return Ok(TripletResult {
            t_bar: 0.0,
            x_bar: agents[0],
            case: TripletCase::Pair,
            steering: [still; 3],
            pair_times: [0.0; 3],
            scenario: None,
        });
    }
    let owned: Vec<PairResult>;
    let pr: [&PairResult; 3] = match pairs {
        Some(pr) => pr,
        None => {
            owned = PAIRS
                .iter()
                .map(|&(a, b)| min_pair_time(agents[a], agents[b], p))
                .collect::<Result<_>>()?;
            [&owned[0], &owned[1], &owned[2]]
        }
    };
    let pair_times = [pr[0].t_bar, pr[1].t_bar, pr[2].t_bar];
    let mut slowest = 0;
    for k in 1..3 {
        if pair_times[k] > pair_times[slowest] {
            slowest = k;
        }
    }
    let (a, b) = PAIRS[slowest];
    let third = 3 - a - b;
    let pair = pr[slowest];
    let t_pair = pair.t_bar;

    if boundary::membership_with(pair.x_bar, agents[third], p, t_pair, CASE1_RESOLUTION) {
        let [sa, sb] = pair.steering(agents[a], agents[b], p)?;
        let sc = rebudget_fuel(agents[third], pair.x_bar, t_pair, p)?;
        let mut steering = [sc; 3];
        steering[a] = sa;
        steering[b] = sb;
        return Ok(TripletResult {
            t_bar: t_pair,
            x_bar: pair.x_bar,
            case: TripletCase::Pair,
            steering,
            pair_times,
            scenario: None,
        });
    }

    let floor = t_pair - p.tol.feas_tol * (1.0 + t_pair);
    let mut best: Option<ScenarioSolution> = None;
    let mut near: Vec<ScenarioSolution> = Vec::new();
    for s in Scenario::all() {
        for sol in solve_scenario(&s, agents, p)? {
            if sol.feasible && sol.t_f >= floor {
                if best.as_ref().is_none_or(|b| sol.t_f < b.t_f) {
                    best = Some(sol);
                }
            } else if sol.t_f.is_finite() {
                near.push(sol);
            }
        }
    }
    let Some(sol) = best else {
        near.sort_by(|x, y| x.t_f.total_cmp(&y.t_f));
        let diag: Vec<String> = near
            .iter()
            .filter(|s| s.t_f >= floor)
            .take(5)
            .map(|s| {
                format!(
                    "{} t={:.6} x=({:.6}, {:.6}) residuals={:.1e},{:.1e},{:.1e}",
                    s.scenario, s.t_f, s.x_hat.x1, s.x_hat.x2, s.residuals[0], s.residuals[1], s.residuals[2]
                )
            })
            .collect();
        return Err(Error::NoSolutionFound {
            i: ids[0],
            j: ids[1],
            k: ids[2],
            diagnostics: format!("pair bound {t_pair:.6}; near misses: [{}]", diag.join("; ")),
        });
    };
    let fuel = sol.scenario.regime.fuel(sol.t_f, p.beta);
    let mut steering = [boundary::coast(0.0); 3];
    for k in 0..3 {
        steering[k] = boundary::steer(sol.scenario.tags[k], agents[k], sol.x_hat, fuel, p, sol.t_f)?;
    }
    Ok(TripletResult {
        t_bar: sol.t_f,
        x_bar: sol.x_hat,
        case: TripletCase::Boundary,
        steering,
        pair_times,
        scenario: Some(sol.scenario),
    })
}
