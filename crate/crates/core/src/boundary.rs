//! Boundary of the fuel-constrained attainable set `A^beta(tf, x0)`.
//!
//! With the whole budget spent (`tf - t2 + t1 = beta`) the four sign patterns
//! of a bang-off-bang input trace four arcs:
//!
//! * `S1 = (+1, 0, -1)`: the upper arc,
//! * `S3 = (-1, 0, +1)`: the lower arc,
//! * `S2 = (-1, 0, -1)` and `S4 = (+1, 0, +1)`: vertical segments at
//!   `x1 = x10 - beta/b` and `x1 = x10 + beta/b`.
//!
//! Writing `q = e^{-b tf}`, `w = e^{(b^2/2) x1}` and
//! `l1 = e^{(b/2)(beta - b x10)}`, `l2 = e^{-(b/2)(beta + b x10)}` turns the
//! arc equations into polynomials. For `tf <= beta` the fuel bound is inactive,
//! only `S1`/`S3` with `t1 = t2` remain, and the natural time variable becomes
//! `r = e^{-b tf / 2}` (see [`Regime`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Polygon;
use crate::model::{self, BangOffBang, Params, Sign, State};
use crate::numerics::BiPoly;

/// Default polygon resolution used by [`membership`].
pub const MEMBERSHIP_RESOLUTION: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SequenceTag {
    /// `(+1, 0, -1)`
    S1,
    /// `(-1, 0, -1)`
    S2,
    /// `(-1, 0, +1)`
    S3,
    /// `(+1, 0, +1)`
    S4,
}

impl SequenceTag {
    pub const ALL: [SequenceTag; 4] = [
        SequenceTag::S1,
        SequenceTag::S2,
        SequenceTag::S3,
        SequenceTag::S4,
    ];

    pub fn signs(self) -> (Sign, Sign) {
        match self {
            SequenceTag::S1 => (Sign::Plus, Sign::Minus),
            SequenceTag::S2 => (Sign::Minus, Sign::Minus),
            SequenceTag::S3 => (Sign::Minus, Sign::Plus),
            SequenceTag::S4 => (Sign::Plus, Sign::Plus),
        }
    }

    /// Arcs on which x1 varies (as opposed to the vertical segments).
    pub fn is_arc(self) -> bool {
        matches!(self, SequenceTag::S1 | SequenceTag::S3)
    }

    pub fn schedule(self, t1: f64, t2: f64, tf: f64) -> Result<BangOffBang> {
        let (g1, g2) = self.signs();
        BangOffBang::new(g1, t1, t2, g2, tf)
    }
}

impl std::fmt::Display for SequenceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SequenceTag::S1 => "s1",
            SequenceTag::S2 => "s2",
            SequenceTag::S3 => "s3",
            SequenceTag::S4 => "s4",
        };
        f.write_str(s)
    }
}

/// Exponential substitution for one agent, one budget and one query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Substitution {
    pub q_f: f64,
    pub w_1: f64,
    pub l_1: f64,
    pub l_2: f64,
    pub w_10: f64,
}

impl Substitution {
    /// `x1` is the query point's first coordinate, `fuel` the budget in force.
    pub fn new(x10: f64, x1: f64, tf: f64, fuel: f64, b: f64) -> Self {
        let (l_1, l_2, w_10) = agent_constants(x10, fuel, b);
        Substitution {
            q_f: (-b * tf).exp(),
            w_1: (0.5 * b * b * x1).exp(),
            l_1,
            l_2,
            w_10,
        }
    }
}

/// `(l1, l2, w10)` for an agent starting at `x10` with budget `fuel`.
pub fn agent_constants(x10: f64, fuel: f64, b: f64) -> (f64, f64, f64) {
    (
        (0.5 * b * (fuel - b * x10)).exp(),
        (-0.5 * b * (fuel + b * x10)).exp(),
        (-0.5 * b * b * x10).exp(),
    )
}

/// `w = e^{(b^2/2) x1}` and its inverse.
pub fn w_of_x1(x1: f64, b: f64) -> f64 {
    (0.5 * b * b * x1).exp()
}

pub fn x1_of_w(w: f64, b: f64) -> f64 {
    2.0 * w.ln() / (b * b)
}

/// Residual of the boundary equation of family `tag`.
///
/// Zero exactly when `(w_1, x2, q_f)` lies on that family's curve, ignoring
/// the switching-time inequalities.
///
/// * `S1`: `x2 - q x20 + q w l1/b^2 - q/b^2 - 1/b^2 + w l2/b^2`
/// * `S3`: `w x2 - w q x20 - q/(b^2 l2) + q w/b^2 + w/b^2 - 1/(l1 b^2)`
/// * `S2`: `w - 1/l1`
/// * `S4`: `w - 1/l2`
pub fn gamma(tag: SequenceTag, sub: &Substitution, x20: f64, x2: f64, b: f64) -> Result<f64> {
    let Substitution {
        q_f: q,
        w_1: w,
        l_1: l1,
        l_2: l2,
        ..
    } = *sub;
    if !(w > 0.0 && q > 0.0) {
        return Err(Error::Domain(format!("w1 = {w} and qf = {q} must be positive")));
    }
    let bb = b * b;
    Ok(match tag {
        SequenceTag::S1 => x2 - q * x20 + q * w * l1 / bb - q / bb - 1.0 / bb + w * l2 / bb,
        SequenceTag::S3 => {
            w * x2 - w * q * x20 - q / (bb * l2) + q * w / bb + w / bb - 1.0 / (l1 * bb)
        }
        SequenceTag::S2 => w - 1.0 / l1,
        SequenceTag::S4 => w - 1.0 / l2,
    })
}

/// Which constraint shapes the boundary at a given final time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `tf >= beta`: the budget is exhausted; time variable `q = e^{-b tf}`.
    Saturated,
    /// `tf <= beta`: only `|u| <= 1` binds, fuel used is `tf`; time variable
    /// `r = e^{-b tf / 2}`.
    BangBang,
}

impl Regime {
    pub fn of(tf: f64, beta: f64) -> Regime {
        if tf >= beta {
            Regime::Saturated
        } else {
            Regime::BangBang
        }
    }

    pub fn z_of_time(self, t: f64, b: f64) -> f64 {
        match self {
            Regime::Saturated => (-b * t).exp(),
            Regime::BangBang => (-0.5 * b * t).exp(),
        }
    }

    pub fn time_of_z(self, z: f64, b: f64) -> f64 {
        match self {
            Regime::Saturated => -z.ln() / b,
            Regime::BangBang => -2.0 * z.ln() / b,
        }
    }

    /// Fuel spent on the boundary at time `t`.
    pub fn fuel(self, t: f64, beta: f64) -> f64 {
        match self {
            Regime::Saturated => beta,
            Regime::BangBang => t,
        }
    }
}

/// A boundary equation written as `lead(w) * x2 + P(w, z) = 0`, with
/// `lead = w^k` (`k = 0` for `S1`, `k = 1` for `S3`) or absent for the
/// vertical segments, whose equation does not involve `x2` or `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcForm {
    pub tag: SequenceTag,
    pub regime: Regime,
    lead_power: Option<usize>,
    poly: BiPoly,
}

impl ArcForm {
    pub fn new(tag: SequenceTag, regime: Regime, x0: State, p: &Params) -> Result<Self> {
        let b = p.b;
        let bb = b * b;
        let x20 = x0.x2;
        let (l1, l2, w10) = agent_constants(x0.x1, p.beta, b);
        let (lead_power, terms): (Option<usize>, Vec<(usize, usize, f64)>) = match (regime, tag) {
            (Regime::Saturated, SequenceTag::S1) => (
                Some(0),
                vec![
                    (0, 1, -x20 - 1.0 / bb),
                    (1, 1, l1 / bb),
                    (0, 0, -1.0 / bb),
                    (1, 0, l2 / bb),
                ],
            ),
            (Regime::Saturated, SequenceTag::S3) => (
                Some(1),
                vec![
                    (1, 1, -x20 + 1.0 / bb),
                    (0, 1, -1.0 / (bb * l2)),
                    (1, 0, 1.0 / bb),
                    (0, 0, -1.0 / (l1 * bb)),
                ],
            ),
            (Regime::Saturated, SequenceTag::S2) => (None, vec![(1, 0, 1.0), (0, 0, -1.0 / l1)]),
            (Regime::Saturated, SequenceTag::S4) => (None, vec![(1, 0, 1.0), (0, 0, -1.0 / l2)]),
            // fuel = tf: l1 = w10 / r, l2 = r w10, q = r^2
            (Regime::BangBang, SequenceTag::S1) => (
                Some(0),
                vec![
                    (0, 2, -x20 - 1.0 / bb),
                    (1, 1, 2.0 * w10 / bb),
                    (0, 0, -1.0 / bb),
                ],
            ),
            (Regime::BangBang, SequenceTag::S3) => (
                Some(1),
                vec![
                    (1, 2, -x20 + 1.0 / bb),
                    (0, 1, -2.0 / (bb * w10)),
                    (1, 0, 1.0 / bb),
                ],
            ),
            (Regime::BangBang, _) => {
                return Err(Error::Domain(format!(
                    "{tag} has no arc while the fuel bound is inactive"
                )))
            }
        };
        Ok(ArcForm {
            tag,
            regime,
            lead_power,
            poly: BiPoly::from_terms(&terms),
        })
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    /// Coefficient of `x2` at `w` (zero for vertical segments).
    pub fn lead(&self, w: f64) -> f64 {
        self.lead_power.map_or(0.0, |k| w.powi(k as i32))
    }

    pub fn residual(&self, w: f64, x2: f64, z: f64) -> f64 {
        self.lead(w) * x2 + self.poly.eval(w, z)
    }

    /// Scale of the terms in [`Self::residual`], for relative checks.
    pub fn residual_scale(&self, w: f64, x2: f64, z: f64) -> f64 {
        (self.lead(w) * x2).abs() + self.poly.eval_abs(w, z)
    }

    /// `x2` on this arc at `(w, z)`; `None` for vertical segments.
    pub fn x2_at(&self, w: f64, z: f64) -> Option<f64> {
        self.lead_power.map(|_| -self.poly.eval(w, z) / self.lead(w))
    }

    /// Fixed `w` of a vertical segment.
    pub fn pinned_w(&self) -> Option<f64> {
        match self.lead_power {
            Some(_) => None,
            None => Some(-self.poly.coeff(0, 0) / self.poly.coeff(1, 0)),
        }
    }

    /// Eliminate `x2` between two arcs: `lead_a P_b - lead_b P_a`.
    ///
    /// With `self` the upper arc and `other` the lower one, the result has the
    /// sign of `x2_upper - x2_lower` at every `w > 0`.
    pub fn eliminate_x2(&self, other: &ArcForm) -> Result<BiPoly> {
        match (self.lead_power, other.lead_power) {
            (Some(ka), Some(kb)) => Ok(&other.poly.shift_w(ka) - &self.poly.shift_w(kb)),
            _ => Err(Error::DegenerateElimination(
                "vertical segments do not depend on x2".into(),
            )),
        }
    }
}

/// Switching times `(t1, t2)` that steer `x0` to `xhat` at `tf` under `tag`
/// while spending exactly `fuel`.
///
/// Violations of `0 <= t1 <= t2 <= tf` larger than `tol` are reported as
/// [`Error::Infeasible`]; smaller ones are snapped onto the constraint.
pub fn switching_times(
    tag: SequenceTag,
    xhat: State,
    x0: State,
    fuel: f64,
    b: f64,
    tf: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let (t1, t2) = switching_times_raw(tag, xhat, x0, fuel, b, tf)?;
    let viol = [-t1, t1 - t2, t2 - tf]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    if !(viol <= tol) {
        return Err(Error::Infeasible(format!(
            "{tag}: t1 = {t1}, t2 = {t2}, tf = {tf} (violation {viol:.3e})"
        )));
    }
    let t1 = t1.clamp(0.0, tf);
    let t2 = t2.clamp(t1, tf);
    Ok((t1, t2))
}

/// Unchecked switching-time formulas.
pub fn switching_times_raw(
    tag: SequenceTag,
    xhat: State,
    x0: State,
    fuel: f64,
    b: f64,
    tf: f64,
) -> Result<(f64, f64)> {
    let d = b * (xhat.x1 - x0.x1);
    match tag {
        SequenceTag::S1 => Ok((0.5 * (fuel + d), tf + 0.5 * (d - fuel))),
        SequenceTag::S3 => Ok((0.5 * (fuel - d), tf - 0.5 * (fuel + d))),
        SequenceTag::S2 | SequenceTag::S4 => {
            let q = (-b * tf).exp();
            let bb = b * b;
            let eb = (-b * fuel).exp();
            let arg = if tag == SequenceTag::S2 {
                (xhat.x2 * bb - q * x0.x2 * bb + q - 1.0) / (q - eb)
            } else {
                (xhat.x2 * bb - q * x0.x2 * bb - q + 1.0) / (eb - q)
            };
            if !(arg.is_finite() && arg > 0.0) {
                return Err(Error::Infeasible(format!(
                    "{tag}: logarithm argument {arg} is not positive"
                )));
            }
            let t1 = arg.ln() / b;
            Ok((t1, tf - fuel + t1))
        }
    }
}

/// Control that drives one agent to a target point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Steering {
    pub tag: SequenceTag,
    pub control: BangOffBang,
    pub fuel_used: f64,
}

/// Build the `tag` control reaching `target` at `tf` with exactly `fuel`.
pub fn steer(tag: SequenceTag, x0: State, target: State, fuel: f64, p: &Params, tf: f64) -> Result<Steering> {
    let tol = p.tol.feas_tol * (1.0 + tf);
    let (t1, t2) = switching_times(tag, target, x0, fuel, p.b, tf, tol)?;
    let control = tag.schedule(t1, t2, tf)?;
    Ok(Steering {
        tag,
        fuel_used: model::fuel(&control),
        control,
    })
}

/// Zero input for `tf` time units.
pub fn coast(tf: f64) -> Steering {
    Steering {
        tag: SequenceTag::S1,
        control: BangOffBang {
            gamma1: Sign::Plus,
            t1: 0.0,
            t2: tf,
            gamma2: Sign::Minus,
            tf,
        },
        fuel_used: 0.0,
    }
}

/// A sampled boundary point together with the control that produces it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub state: State,
    pub tag: SequenceTag,
    pub t1: f64,
    pub t2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySample {
    /// Counterclockwise.
    pub points: Vec<BoundaryPoint>,
    pub regime: Regime,
}

impl BoundarySample {
    pub fn states(&self) -> Vec<State> {
        self.points.iter().map(|p| p.state).collect()
    }

    pub fn polygon(&self) -> Polygon {
        Polygon::hull(&self.states())
    }
}

/// Sample `n` points of the boundary of `A^beta(tf, x0)`.
///
/// Each arc is swept through its full switching-time range: `t1 in [0, beta]`
/// with `t2 = t1 + tf - beta` when the budget binds, or `t1 = t2 in [0, tf]`
/// on the two bang-bang arcs when `beta >= tf`.
pub fn sample_boundary(x0: State, beta: f64, b: f64, tf: f64, n: usize) -> Result<BoundarySample> {
    if !(tf > 0.0) {
        return Err(Error::EmptyBoundary(tf));
    }
    let p = Params {
        b,
        beta,
        tol: Default::default(),
    };
    let n = n.max(16);
    let regime = Regime::of(tf, beta);
    let fuel = beta.min(tf);
    // arc order traverses the closed curve
    let legs: Vec<(SequenceTag, bool)> = match regime {
        Regime::BangBang => vec![(SequenceTag::S1, true), (SequenceTag::S3, true)],
        Regime::Saturated => vec![
            (SequenceTag::S1, true),
            (SequenceTag::S4, false),
            (SequenceTag::S3, true),
            (SequenceTag::S2, false),
        ],
    };
    let per = n / legs.len();
    let mut points = Vec::with_capacity(per * legs.len());
    for (tag, forward) in legs {
        let (g1, g2) = tag.signs();
        for k in 0..per {
            let s = k as f64 / (per - 1) as f64;
            let s = if forward { s } else { 1.0 - s };
            let t1 = fuel * s;
            let t2 = (t1 + tf - fuel).min(tf);
            let ctl = BangOffBang {
                gamma1: g1,
                t1,
                t2,
                gamma2: g2,
                tf,
            };
            points.push(BoundaryPoint {
                state: model::terminal_state(x0, &ctl, &p),
                tag,
                t1,
                t2,
            });
        }
    }
    let signed: f64 = (0..points.len())
        .map(|i| {
            let a = points[i].state;
            let c = points[(i + 1) % points.len()].state;
            a.x1 * c.x2 - c.x1 * a.x2
        })
        .sum();
    if signed < 0.0 {
        points.reverse();
    }
    Ok(BoundarySample { points, regime })
}

/// Boundary polygon of `A^beta(tf, x0)`; the singleton `{x0}` at `tf = 0`.
pub fn attainable_polygon(x0: State, p: &Params, tf: f64, n: usize) -> Polygon {
    if tf <= 0.0 {
        return Polygon::from_ccw(vec![x0]);
    }
    sample_boundary(x0, p.beta, p.b, tf, n)
        .map(|s| s.polygon())
        .unwrap_or_default()
}

/// Is `pt` in `A^beta(tf, x0)` (within `membership_eps`)?
pub fn membership(pt: State, x0: State, p: &Params, tf: f64) -> bool {
    membership_with(pt, x0, p, tf, MEMBERSHIP_RESOLUTION)
}

pub fn membership_with(pt: State, x0: State, p: &Params, tf: f64, n: usize) -> bool {
    let eps = p.tol.membership_eps;
    if tf <= 0.0 {
        return pt.dist(&x0) <= eps;
    }
    attainable_polygon(x0, p, tf, n).contains(pt, eps)
}

/// The two arcs whose convex hull is `A^beta(infinity, x0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitArcs {
    pub x1_lo: f64,
    pub x1_hi: f64,
    l1: f64,
    l2: f64,
    b: f64,
}

impl LimitArcs {
    /// Upper arc (limit of `S1`): `x2 = (1 - w l2) / b^2`.
    pub fn upper(&self, x1: f64) -> f64 {
        (1.0 - w_of_x1(x1, self.b) * self.l2) / (self.b * self.b)
    }

    /// Lower arc (limit of `S3`): `x2 = (1 / (w l1) - 1) / b^2`.
    pub fn lower(&self, x1: f64) -> f64 {
        (1.0 / (w_of_x1(x1, self.b) * self.l1) - 1.0) / (self.b * self.b)
    }

    /// Restrict both arcs to a sub-interval of x1; `None` when empty.
    pub fn restricted(&self, lo: f64, hi: f64) -> Option<LimitArcs> {
        let (lo, hi) = (lo.max(self.x1_lo), hi.min(self.x1_hi));
        (lo <= hi).then_some(LimitArcs {
            x1_lo: lo,
            x1_hi: hi,
            ..*self
        })
    }

    /// Points along both arcs (`n` each).
    pub fn sample(&self, n: usize) -> Vec<State> {
        let n = n.max(2);
        let xs = (0..n).map(|k| self.x1_lo + (self.x1_hi - self.x1_lo) * k as f64 / (n - 1) as f64);
        xs.clone()
            .map(|x| State::new(x, self.upper(x)))
            .chain(xs.map(|x| State::new(x, self.lower(x))))
            .collect()
    }

    pub fn polygon(&self, n: usize) -> Polygon {
        Polygon::hull(&self.sample(n))
    }
}

pub fn infinite_limit_arcs(x0: State, beta: f64, b: f64) -> LimitArcs {
    let (l1, l2, _) = agent_constants(x0.x1, beta, b);
    LimitArcs {
        x1_lo: x0.x1 - beta / b,
        x1_hi: x0.x1 + beta / b,
        l1,
        l2,
        b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{propagate_constant, terminal_state};
    use rand::{Rng, SeedableRng};

    fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn zero_fuel_zero_time_is_on_s1() {
        let b = 1.3;
        let x0 = State::new(0.2, -0.4);
        let sub = Substitution::new(x0.x1, x0.x1, 0.0, 0.0, b);
        let g = gamma(SequenceTag::S1, &sub, x0.x2, x0.x2, b).unwrap();
        assert!(g.abs() < 1e-14);
    }

    #[test]
    fn consensus_point_on_a1_upper_arc() {
        let sub = Substitution::new(0.04, 0.2781, 1.4918, 0.7, 1.0);
        let g = gamma(SequenceTag::S1, &sub, 0.1, 0.0941, 1.0).unwrap();
        assert!(g.abs() <= 1e-3, "{g}");
    }

    #[test]
    fn gamma_rejects_nonpositive_substitution() {
        let mut sub = Substitution::new(0.0, 0.0, 1.0, 0.5, 1.0);
        sub.w_1 = 0.0;
        assert!(gamma(SequenceTag::S1, &sub, 0.0, 0.0, 1.0).is_err());
    }

    /// Every propagated fuel-saturated control satisfies its family's equation.
    #[test]
    fn gamma_matches_propagation() {
        let mut rng = rng(11);
        for _ in 0..2000 {
            let b = rng.gen_range(0.2..3.0);
            let beta = rng.gen_range(0.05..1.5);
            let tf = beta + rng.gen_range(0.0..3.0);
            let x0 = State::new(rng.gen_range(-0.5..0.5), rng.gen_range(-1.0..1.0) / (b * b));
            let t1 = rng.gen_range(0.0..beta);
            let t2 = t1 + tf - beta;
            let tag = SequenceTag::ALL[rng.gen_range(0..4)];
            let p = Params::new(b, beta).unwrap();
            let x = terminal_state(x0, &tag.schedule(t1, t2, tf).unwrap(), &p);
            let sub = Substitution::new(x0.x1, x.x1, tf, beta, b);
            let g = gamma(tag, &sub, x0.x2, x.x2, b).unwrap();
            let scale = 1.0 + x.x2.abs() + 1.0 / (b * b);
            assert!(g.abs() <= 1e-9 * scale * sub.w_1.max(1.0), "{tag} residual {g}");
            // polynomial form agrees with the residual
            let form = ArcForm::new(tag, Regime::Saturated, x0, &p).unwrap();
            let r = form.residual(sub.w_1, x.x2, sub.q_f);
            assert!((r - g).abs() <= 1e-12 * scale * sub.w_1.max(1.0));
        }
    }

    #[test]
    fn bang_bang_forms_match_propagation() {
        let mut rng = rng(12);
        for _ in 0..1000 {
            let b = rng.gen_range(0.2..3.0);
            let tf = rng.gen_range(0.01..2.0);
            let beta = tf + rng.gen_range(0.0..1.0);
            let x0 = State::new(rng.gen_range(-0.5..0.5), rng.gen_range(-1.0..1.0));
            let s = rng.gen_range(0.0..tf);
            let tag = if rng.gen_bool(0.5) { SequenceTag::S1 } else { SequenceTag::S3 };
            let p = Params::new(b, beta).unwrap();
            let x = terminal_state(x0, &tag.schedule(s, s, tf).unwrap(), &p);
            let form = ArcForm::new(tag, Regime::BangBang, x0, &p).unwrap();
            let w = w_of_x1(x.x1, b);
            let r = Regime::BangBang.z_of_time(tf, b);
            let res = form.residual(w, x.x2, r);
            assert!(res.abs() <= 1e-10 * form.residual_scale(w, x.x2, r).max(1.0), "{res}");
            let sub = Substitution::new(x0.x1, x.x1, tf, tf, b);
            assert!(gamma(tag, &sub, x0.x2, x.x2, b).unwrap().abs() < 1e-9 * (1.0 + w));
        }
    }

    /// Vertical segment: x2 along S2/S4 follows the (sign-corrected) closed form.
    #[test]
    fn vertical_segment_x2_closed_form() {
        let (b, beta, tf) = (0.9, 0.6, 2.0);
        let x0 = State::new(0.1, 0.3);
        let p = Params::new(b, beta).unwrap();
        let q = (-b * tf).exp();
        for t1 in [0.0, 0.2, 0.45, 0.6] {
            let t2 = tf - beta + t1;
            let s2 = terminal_state(x0, &SequenceTag::S2.schedule(t1, t2, tf).unwrap(), &p);
            let e = (b * t1).exp();
            let want = q * x0.x2 + (-q + 1.0 + q * e - (-b * (beta - t1)).exp()) / (b * b);
            assert!((s2.x2 - want).abs() < 1e-13);
            assert!((s2.x1 - (x0.x1 - beta / b)).abs() < 1e-13);
            let s4 = terminal_state(x0, &SequenceTag::S4.schedule(t1, t2, tf).unwrap(), &p);
            let want4 = q * x0.x2 + (q - 1.0 - q * e + (-b * beta).exp() * e) / (b * b);
            assert!((s4.x2 - want4).abs() < 1e-13);
        }
    }

    #[test]
    fn golden_switching_pairs() {
        let xbar = State::new(0.2781, 0.0941);
        let (t1, t2) = switching_times(
            SequenceTag::S1, xbar, State::new(0.04, 0.1), 0.7, 1.0, 1.4918, 1e-9,
        )
        .unwrap();
        assert!((t1 - 0.4690).abs() < 1e-4 && (t2 - 1.2609).abs() < 1e-4);
        let (t1, t2) = switching_times(
            SequenceTag::S3, xbar, State::new(0.39, 1.05), 0.7, 1.0, 1.4918, 1e-9,
        )
        .unwrap();
        assert!((t1 - 0.4060).abs() < 1e-4 && (t2 - 1.1978).abs() < 1e-4);
    }

    #[test]
    fn zero_fuel_never_switches_on() {
        let x0 = State::new(0.3, 0.2);
        let (t1, t2) = switching_times(SequenceTag::S1, x0, x0, 0.0, 1.0, 2.0, 1e-12).unwrap();
        assert_eq!((t1, t2), (0.0, 2.0));
    }

    #[test]
    fn infeasible_switching_reported() {
        let x0 = State::new(0.0, 0.0);
        let far = State::new(2.0, 0.0);
        assert!(matches!(
            switching_times(SequenceTag::S1, far, x0, 0.5, 1.0, 2.0, 1e-9),
            Err(Error::Infeasible(_))
        ));
        // log argument of the wrong sign
        assert!(switching_times(SequenceTag::S2, State::new(-0.5, 50.0), x0, 0.5, 1.0, 2.0, 1e-9)
            .is_err());
    }

    #[test]
    fn s2_s4_switching_inverts_propagation() {
        let mut rng = rng(13);
        for _ in 0..500 {
            let b = rng.gen_range(0.2..3.0);
            let beta = rng.gen_range(0.05..1.5);
            let tf = beta + rng.gen_range(0.01..3.0);
            let x0 = State::new(rng.gen_range(-0.5..0.5), rng.gen_range(-1.0..1.0));
            let t1 = rng.gen_range(0.0..beta);
            let tag = if rng.gen_bool(0.5) { SequenceTag::S2 } else { SequenceTag::S4 };
            let p = Params::new(b, beta).unwrap();
            let x = terminal_state(x0, &tag.schedule(t1, t1 + tf - beta, tf).unwrap(), &p);
            let (s1, _) = switching_times_raw(tag, x, x0, beta, b, tf).unwrap();
            assert!((s1 - t1).abs() < 1e-7, "{tag}: {s1} vs {t1}");
        }
    }

    #[test]
    fn x1_extent_is_plus_minus_beta_over_b() {
        let s = sample_boundary(State::new(0.04, 0.1), 0.7, 1.0, 1.4918, 256).unwrap();
        let poly = s.polygon();
        let (lo, hi) = poly.bounds().unwrap();
        assert!((lo.x1 + 0.66).abs() < 1e-12 && (hi.x1 - 0.74).abs() < 1e-12);
    }

    #[test]
    fn sampled_points_lie_on_their_family() {
        let (b, beta, tf) = (1.0, 0.7, 1.4918);
        let x0 = State::new(0.04, 0.1);
        let s = sample_boundary(x0, beta, b, tf, 256).unwrap();
        let poly = s.polygon();
        for v in poly.vertices() {
            let sub = Substitution::new(x0.x1, v.x1, tf, beta, b);
            let best = SequenceTag::ALL
                .iter()
                .map(|&t| gamma(t, &sub, x0.x2, v.x2, b).unwrap().abs())
                .fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-6, "vertex {v:?} residual {best}");
        }
    }

    #[test]
    fn sample_is_ccw_and_empty_at_zero_time() {
        let s = sample_boundary(State::new(0.0, 0.0), 0.5, 2.0, 1.0, 64).unwrap();
        let pts = s.states();
        let area: f64 = (0..pts.len())
            .map(|i| {
                let (a, c) = (pts[i], pts[(i + 1) % pts.len()]);
                a.x1 * c.x2 - c.x1 * a.x2
            })
            .sum();
        assert!(area > 0.0);
        assert!(matches!(
            sample_boundary(State::new(0.0, 0.0), 0.5, 2.0, 0.0, 64),
            Err(Error::EmptyBoundary(_))
        ));
    }

    #[test]
    fn switching_recovers_generating_times() {
        let mut rng = rng(14);
        for _ in 0..50 {
            let b = rng.gen_range(0.3..2.5);
            let beta = rng.gen_range(0.1..1.5);
            let tf = rng.gen_range(0.1..3.0);
            let x0 = State::new(rng.gen_range(-0.5..0.5), rng.gen_range(-1.0..1.0));
            let s = sample_boundary(x0, beta, b, tf, 128).unwrap();
            let fuel = beta.min(tf);
            for pt in &s.points {
                let (t1, t2) = switching_times_raw(pt.tag, pt.state, x0, fuel, b, tf).unwrap();
                if pt.tag.is_arc() || pt.t1 > 1e-3 {
                    assert!((t1 - pt.t1).abs() < 1e-8, "{:?} {t1}", pt);
                    assert!((t2 - pt.t2).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let p = Params::new(1.0, 0.7).unwrap();
        let a4 = State::new(0.5, -0.525);
        assert!(membership(State::new(0.2781, 0.0941), a4, &p, 1.4918));
        let far = State::new(a4.x1 + 1.4, 0.0);
        assert!(!membership(far, a4, &p, 1.4918));
        assert!(membership(a4, a4, &p, 0.0));
        assert!(!membership(State::new(0.51, -0.525), a4, &p, 0.0));
        // any admissible control lands inside
        let x = propagate_constant(a4, 1.0, 0.3, &p);
        let x = propagate_constant(x, 0.0, 1.0, &p);
        assert!(membership(x, a4, &p, 1.3));
    }

    #[test]
    fn limit_arcs_close_with_vertical_segments() {
        let (b, beta) = (1.2, 0.8);
        let x0 = State::new(0.3, 0.5);
        let arcs = infinite_limit_arcs(x0, beta, b);
        let gap = (1.0 - (-b * beta).exp()) / (b * b);
        assert!((arcs.upper(arcs.x1_hi)).abs() < 1e-12);
        assert!((arcs.lower(arcs.x1_lo)).abs() < 1e-12);
        assert!((arcs.upper(arcs.x1_hi) - arcs.lower(arcs.x1_hi) - gap).abs() < 1e-12);
        assert!((arcs.upper(arcs.x1_lo) - arcs.lower(arcs.x1_lo) - gap).abs() < 1e-12);
    }

    #[test]
    fn limit_arcs_vanishing_fuel() {
        let x0 = State::new(0.7, 3.0);
        let arcs = infinite_limit_arcs(x0, 1e-12, 1.5);
        assert!(arcs.upper(x0.x1).abs() < 1e-10 && arcs.lower(x0.x1).abs() < 1e-10);
    }

    #[test]
    fn finite_time_sets_approach_limit() {
        let (b, beta) = (1.0, 0.7);
        let x0 = State::new(0.0, 0.0);
        let limit = infinite_limit_arcs(x0, beta, b).polygon(1024);
        let dists: Vec<f64> = [1.0, 2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&tf| sample_boundary(x0, beta, b, tf, 2048).unwrap().polygon().hausdorff(&limit))
            .collect();
        for w in dists.windows(2) {
            assert!(w[1] < w[0], "{dists:?}");
        }
        assert!(dists[4] < 1e-5);
    }

    #[test]
    fn saturation_beyond_budget() {
        let x0 = State::new(0.1, -0.2);
        let tf = 0.8;
        let bigger = sample_boundary(x0, 5.0, 1.4, tf, 1024).unwrap().polygon();
        let a = sample_boundary(x0, 1.0, 1.4, tf, 1024).unwrap().polygon();
        assert!(a.hausdorff(&bigger) < 1e-12);
        // at beta = tf the vertical segments collapse; only sampling differs
        let edge = sample_boundary(x0, tf, 1.4, tf, 4096).unwrap().polygon();
        assert!(edge.hausdorff(&bigger) < 1e-4, "{}", edge.hausdorff(&bigger));
    }
}
