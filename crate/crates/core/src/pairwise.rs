//! Earliest time at which two attainable sets meet.
//!
//! The sets first touch where the upper arc (`S1`) of one agent meets the
//! lower arc (`S3`) of the other. Eliminating `x2` between the two arc
//! equations leaves `E(w, z)`, whose sign is that of `x2_upper - x2_lower`.
//! For each `w` the largest admissible `z` with `E >= 0` is the earliest time
//! the two arcs overlap above that abscissa; maximizing over `w` gives the
//! first contact.

use serde::{Deserialize, Serialize};

use crate::boundary::{self, x1_of_w, w_of_x1, ArcForm, Regime, SequenceTag, Steering};
use crate::error::{Error, Result};
use crate::model::{Params, State};
use crate::numerics::{maximize_1d, Var};

/// Which of the two agents rides its upper arc at the contact point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pairing {
    /// `S1` for the first agent, `S3` for the second.
    FirstUpper,
    /// `S3` for the first agent, `S1` for the second.
    SecondUpper,
}

impl Pairing {
    pub fn tags(self) -> [SequenceTag; 2] {
        match self {
            Pairing::FirstUpper => [SequenceTag::S1, SequenceTag::S3],
            Pairing::SecondUpper => [SequenceTag::S3, SequenceTag::S1],
        }
    }
}

/// Contact time and point for one pairing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCandidate {
    pub pairing: Pairing,
    pub t: f64,
    pub x: State,
    pub regime: Regime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResult {
    pub t_bar: f64,
    pub x_bar: State,
    pub pairing: Pairing,
    pub regime: Regime,
    /// Both pairings, when they have a solution.
    pub candidates: Vec<PairCandidate>,
}

impl PairResult {
    fn at_rest(x0: State) -> Self {
        PairResult {
            t_bar: 0.0,
            x_bar: x0,
            pairing: Pairing::FirstUpper,
            regime: Regime::BangBang,
            candidates: Vec::new(),
        }
    }

    /// Controls steering both agents onto `x_bar` at `t_bar`.
    pub fn steering(&self, xi: State, xj: State, p: &Params) -> Result<[Steering; 2]> {
        if self.t_bar == 0.0 {
            return Ok([boundary::coast(0.0), boundary::coast(0.0)]);
        }
        let fuel = self.regime.fuel(self.t_bar, p.beta);
        let [ti, tj] = self.pairing.tags();
        Ok([
            boundary::steer(ti, xi, self.x_bar, fuel, p, self.t_bar)?,
            boundary::steer(tj, xj, self.x_bar, fuel, p, self.t_bar)?,
        ])
    }
}

/// Check the x1 spread of a group of agents against `2 beta / b`.
pub(crate) fn spread_check(spread: f64, p: &Params) -> Result<()> {
    let limit = 2.0 * p.max_shift();
    let slack = p.tol.feas_tol * (1.0 + limit);
    if spread > limit + slack {
        Err(Error::InfeasiblePair { gap: spread, limit })
    } else if spread >= limit - slack {
        Err(Error::NoFiniteTime { gap: spread, limit })
    } else {
        Ok(())
    }
}

/// Minimum consensus time of two agents.
///
/// Both pairings are solved; the later contact wins, since the sets only
/// intersect once both the upper-over-lower orderings have been achieved.
pub fn min_pair_time(xi: State, xj: State, p: &Params) -> Result<PairResult> {
    if xi == xj {
        return Ok(PairResult::at_rest(xi));
    }
    spread_check((xi.x1 - xj.x1).abs(), p)?;
    let first = pairing_contact(xi, xj, p)?.map(|(t, x, regime)| PairCandidate {
        pairing: Pairing::FirstUpper,
        t,
        x,
        regime,
    });
    let second = pairing_contact(xj, xi, p)?.map(|(t, x, regime)| PairCandidate {
        pairing: Pairing::SecondUpper,
        t,
        x,
        regime,
    });
    let candidates: Vec<PairCandidate> = first.into_iter().chain(second).collect();
    if candidates.len() < 2 {
        let limit = 2.0 * p.max_shift();
        return Err(Error::NoFiniteTime {
            gap: (xi.x1 - xj.x1).abs(),
            limit,
        });
    }
    let best = if candidates[1].t > candidates[0].t {
        candidates[1]
    } else {
        candidates[0]
    };
    Ok(PairResult {
        t_bar: best.t,
        x_bar: best.x,
        pairing: best.pairing,
        regime: best.regime,
        candidates,
    })
}

/// Earliest time the upper arc of `up` reaches the lower arc of `low`.
fn pairing_contact(up: State, low: State, p: &Params) -> Result<Option<(f64, State, Regime)>> {
    let b = p.b;
    let shift = p.max_shift();
    let x1_lo = up.x1.max(low.x1) - shift;
    let x1_hi = up.x1.min(low.x1) + shift;
    if x1_lo > x1_hi {
        return Ok(None);
    }
    let (w_lo, w_hi) = (w_of_x1(x1_lo, b), w_of_x1(x1_hi, b));
    let w_tol = 1e-13 * w_hi;

    for regime in [Regime::BangBang, Regime::Saturated] {
        if regime == Regime::BangBang && p.beta == 0.0 {
            continue;
        }
        let upper = ArcForm::new(SequenceTag::S1, regime, up, p)?;
        let lower = ArcForm::new(SequenceTag::S3, regime, low, p)?;
        let e = upper.eliminate_x2(&lower)?;
        let z_beta = regime.z_of_time(p.beta, b);
        // admissible z range at abscissa w
        let z_range = |w: f64| -> (f64, f64) {
            match regime {
                Regime::BangBang => {
                    let x1 = x1_of_w(w, b);
                    let reach = (x1 - up.x1).abs().max((x1 - low.x1).abs());
                    (z_beta, (-0.5 * b * b * reach).exp())
                }
                Regime::Saturated => (f64::MIN_POSITIVE, z_beta),
            }
        };
        let z_sup = |w: f64| -> f64 {
            let (lo, hi) = z_range(w);
            if hi < lo {
                return f64::NEG_INFINITY;
            }
            let poly = e.restrict(Var::Z, w);
            if poly.eval(hi) >= 0.0 {
                return hi;
            }
            match poly.real_roots(lo, hi, 1e-15) {
                Ok(roots) => roots.last().copied().unwrap_or(f64::NEG_INFINITY),
                Err(_) => hi,
            }
        };
        let (w, z) = maximize_1d(z_sup, w_lo, w_hi, w_tol)?;
        if z > 0.0 {
            let x2 = upper.x2_at(w, z).expect("S1 carries x2");
            return Ok(Some((regime.time_of_z(z, b), State::new(x1_of_w(w, b), x2), regime)));
        }
    }
    Ok(None)
}
