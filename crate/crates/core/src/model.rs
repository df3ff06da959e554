//! Damped double-integrator agent model.
//!
//! Each agent obeys `x1' = u / b`, `x2' = -b x2 - u / b` with `|u| <= 1`.
//! The state transition matrix is `diag(1, e^{-bt})`, so every constant-input
//! leg integrates in closed form and nothing here time-steps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of samples for [`simulate`].
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Accuracy of polynomial roots and equation residuals.
    pub root_tol: f64,
    /// Slack allowed on switching-time inequalities and time comparisons.
    pub feas_tol: f64,
    /// Distance within which a point counts as a member of a sampled set.
    pub membership_eps: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root_tol: 1e-10,
            feas_tol: 1e-7,
            membership_eps: 1e-6,
        }
    }
}

/// Physical constants shared by all agents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    /// Damping coefficient, `b > 0`.
    pub b: f64,
    /// Fuel budget `beta >= 0`, in time units.
    pub beta: f64,
    pub tol: Tolerances,
}

impl Params {
    pub fn new(b: f64, beta: f64) -> Result<Self> {
        Self::with_tolerances(b, beta, Tolerances::default())
    }

    pub fn with_tolerances(b: f64, beta: f64, tol: Tolerances) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidParams(format!("damping b must be > 0, got {b}")));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "fuel budget beta must be >= 0, got {beta}"
            )));
        }
        for (name, v) in [
            ("root_tol", tol.root_tol),
            ("feas_tol", tol.feas_tol),
            ("membership_eps", tol.membership_eps),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(Params { b, beta, tol })
    }

    /// Same physics with a different fuel budget.
    pub fn with_beta(&self, beta: f64) -> Self {
        Params { beta, ..*self }
    }

    /// Largest possible x1 displacement, `beta / b`.
    pub fn max_shift(&self) -> f64 {
        self.beta / self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct State {
    pub x1: f64,
    pub x2: f64,
}

impl State {
    pub const fn new(x1: f64, x2: f64) -> Self {
        State { x1, x2 }
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    pub fn dist(&self, other: &State) -> f64 {
        (self.x1 - other.x1).hypot(self.x2 - other.x2)
    }
}

impl From<(f64, f64)> for State {
    fn from((x1, x2): (f64, f64)) -> Self {
        State { x1, x2 }
    }
}

/// Initial condition of a named agent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentInit {
    pub id: String,
    pub x0: State,
}

impl AgentInit {
    pub fn new(id: impl Into<String>, x1: f64, x2: f64) -> Self {
        AgentInit {
            id: id.into(),
            x0: State::new(x1, x2),
        }
    }
}

/// Sign of a bang leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Control `gamma1` on `[0, t1]`, zero on `[t1, t2]`, `gamma2` on `[t2, tf]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BangOffBang {
    pub gamma1: Sign,
    pub t1: f64,
    pub t2: f64,
    pub gamma2: Sign,
    pub tf: f64,
}

impl BangOffBang {
    pub fn new(gamma1: Sign, t1: f64, t2: f64, gamma2: Sign, tf: f64) -> Result<Self> {
        let ctl = BangOffBang {
            gamma1,
            t1,
            t2,
            gamma2,
            tf,
        };
        ctl.validate()?;
        Ok(ctl)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.t1.is_finite()
            && self.t2.is_finite()
            && self.tf.is_finite()
            && 0.0 <= self.t1
            && self.t1 <= self.t2
            && self.t2 <= self.tf;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSchedule(format!(
                "need 0 <= t1 <= t2 <= tf, got t1={}, t2={}, tf={}",
                self.t1, self.t2, self.tf
            )))
        }
    }

    /// Input applied at time `t` (right-continuous at the switches).
    pub fn input_at(&self, t: f64) -> f64 {
        if t < self.t1 {
            self.gamma1.value()
        } else if t < self.t2 {
            0.0
        } else if t <= self.tf {
            self.gamma2.value()
        } else {
            0.0
        }
    }

    /// `(gamma1, 0, gamma2)` as integers.
    pub fn pattern(&self) -> [i8; 3] {
        [self.gamma1.as_i8(), 0, self.gamma2.as_i8()]
    }
}

/// Exact state after holding input `u` for `dt`.
pub fn propagate_constant(x: State, u: f64, dt: f64, p: &Params) -> State {
    let b = p.b;
    let decay = (-b * dt).exp();
    // 1 - e^{-b dt} without cancellation for small dt
    let gain = -(-b * dt).exp_m1();
    State {
        x1: x.x1 + u * dt / b,
        x2: decay * x.x2 - u / (b * b) * gain,
    }
}

/// Terminal state of a bang-off-bang schedule.
pub fn terminal_state(x0: State, ctl: &BangOffBang, p: &Params) -> State {
    let x = propagate_constant(x0, ctl.gamma1.value(), ctl.t1, p);
    let x = propagate_constant(x, 0.0, ctl.t2 - ctl.t1, p);
    propagate_constant(x, ctl.gamma2.value(), ctl.tf - ctl.t2, p)
}

fn state_at(x0: State, ctl: &BangOffBang, t: f64, p: &Params) -> State {
    let legs = [
        (ctl.gamma1.value(), 0.0, ctl.t1),
        (0.0, ctl.t1, ctl.t2),
        (ctl.gamma2.value(), ctl.t2, ctl.tf),
    ];
    let mut x = x0;
    for (u, start, end) in legs {
        if t <= start {
            break;
        }
        x = propagate_constant(x, u, t.min(end) - start, p);
    }
    x
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `(time, state)` at uniform times from 0 to `tf` inclusive.
    pub points: Vec<(f64, State)>,
    pub terminal: State,
}

/// Sample the trajectory of `ctl` from `x0` at `samples` uniform times.
pub fn simulate(x0: State, ctl: &BangOffBang, p: &Params, samples: usize) -> Result<Trajectory> {
    ctl.validate()?;
    let n = samples.max(2);
    let points = (0..n)
        .map(|k| {
            let t = if k + 1 == n {
                ctl.tf
            } else {
                ctl.tf * k as f64 / (n - 1) as f64
            };
            (t, state_at(x0, ctl, t, p))
        })
        .collect();
    Ok(Trajectory {
        points,
        terminal: terminal_state(x0, ctl, p),
    })
}

/// Fuel `int |u| dt = tf - t2 + t1`.
pub fn fuel(ctl: &BangOffBang) -> f64 {
    ctl.tf - ctl.t2 + ctl.t1
}
