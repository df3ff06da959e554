//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`; the process exits non-zero if any
//! criterion fails.

mod common;

use std::process::Command;
use std::time::Instant;

use common::{golden_fleet, random_fleet, random_state, rng};
use damped_consensus::boundary::{agent_constants, attainable_polygon, membership_with, sample_boundary, Regime};
use damped_consensus::model::{fuel, terminal_state};
use damped_consensus::oracle::{oracle_min_time, OracleConfig};
use damped_consensus::triplet::eliminate;
use damped_consensus::{
    feasibility, membership, min_time_consensus, rebudget_fuel, switching_times, AgentInit,
    Feasibility, Fleet, Params, Scenario, SequenceTag, State,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// Reference values for the six-agent fleet, rounded to four places.
const T_BAR: f64 = 1.4918;
const X_BAR: (f64, f64) = (0.2781, 0.0941);
const REFERENCE: [(f64, (f64, f64), [i8; 3]); 6] = [
    (0.7000, (0.4690, 1.2609), [1, 0, -1]),
    (0.7000, (0.4060, 1.1978), [-1, 0, 1]),
    (0.7000, (0.3390, 1.1309), [1, 0, -1]),
    (0.2687, (0.0234, 1.2465), [1, 0, -1]),
    (0.6009, (0.3395, 1.2304), [1, 0, -1]),
    (0.6983, (0.4382, 1.2317), [1, 0, -1]),
];

fn golden() -> Outcome {
    let fleet = golden_fleet();
    let start = Instant::now();
    let out = match min_time_consensus(&fleet) {
        Ok(o) => o,
        Err(e) => return outcome(false, format!("solver error: {e}")),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let mut errs = Vec::new();
    if (out.t_bar_f - T_BAR).abs() > 1e-3 {
        errs.push(format!("t = {}", out.t_bar_f));
    }
    if (out.x_bar.x1 - X_BAR.0).abs() > 1e-3 || (out.x_bar.x2 - X_BAR.1).abs() > 1e-3 {
        errs.push(format!("x = {:?}", out.x_bar));
    }
    let mut crit: Vec<&str> = out.critical.iter().map(|&k| fleet.agents[k].id.as_str()).collect();
    crit.sort();
    if crit != ["a1", "a2", "a3"] {
        errs.push(format!("critical {crit:?}"));
    }
    for (k, (plan, row)) in out.plans.iter().zip(REFERENCE).enumerate() {
        let c = plan.steering.control;
        let (f, (t1, t2), pat) = row;
        if (plan.steering.fuel_used - f).abs() > 1e-3
            || (c.t1 - t1).abs() > 1e-3
            || (c.t2 - t2).abs() > 1e-3
            || c.pattern() != pat
        {
            errs.push(format!(
                "a{}: fuel {:.4} ({:.4}, {:.4}) {:?}",
                k + 1,
                plan.steering.fuel_used,
                c.t1,
                c.t2,
                c.pattern()
            ));
        }
    }
    if elapsed > 10.0 {
        errs.push(format!("runtime {elapsed:.1} s"));
    }
    outcome(
        errs.is_empty(),
        format!(
            "t = {:.6}, x = ({:.6}, {:.6}), critical {:?}, {:.3} s {}",
            out.t_bar_f,
            out.x_bar.x1,
            out.x_bar.x2,
            crit,
            elapsed,
            errs.join("; ")
        ),
    )
}

fn switching_arithmetic() -> Outcome {
    let fleet = golden_fleet();
    let xbar = State::new(X_BAR.0, X_BAR.1);
    let mut worst: f64 = 0.0;
    let mut errs = Vec::new();
    for (a, (f, (t1, t2), pat)) in fleet.agents.iter().zip(REFERENCE) {
        let tag = if pat == [1, 0, -1] { SequenceTag::S1 } else { SequenceTag::S3 };
        match switching_times(tag, xbar, a.x0, f, 1.0, T_BAR, 1e-6) {
            Ok((s1, s2)) => {
                let e = (s1 - t1).abs().max((s2 - t2).abs());
                worst = worst.max(e);
                if e > 5e-4 {
                    errs.push(format!("{}: ({s1:.5}, {s2:.5})", a.id));
                }
            }
            Err(e) => errs.push(format!("{}: {e}", a.id)),
        }
    }
    outcome(errs.is_empty(), format!("worst deviation {worst:.2e} {}", errs.join("; ")))
}

/// Analytic vs brute force over random feasible fleets.
fn oracle_sweep(seed: u64, count: usize, n_lo: usize, n_hi: usize, check_point: bool) -> Outcome {
    let cfg = OracleConfig {
        grid: (400, 100),
        tol: 1e-5,
    };
    let mut r = rng(seed);
    let start = Instant::now();
    let mut worst_dt: f64 = 0.0;
    let mut worst_d: f64 = 0.0;
    let mut errs = Vec::new();
    for it in 0..count {
        let fleet = random_fleet(&mut r, n_lo, n_hi, 0.7);
        let xs = fleet.states();
        let an = min_time_consensus(&fleet);
        let or = oracle_min_time(&xs, &fleet.params, None, &cfg);
        match (an, or) {
            (Ok(a), Ok(o)) => {
                let dt = (a.t_bar_f - o.t_star).abs();
                let d = o.common.distance(a.x_bar);
                worst_dt = worst_dt.max(dt);
                worst_d = worst_d.max(d);
                if dt > 5e-3 || (check_point && d > 1e-2) {
                    errs.push(format!("#{it}: dt {dt:.2e}, distance {d:.2e}"));
                }
            }
            (a, o) => errs.push(format!(
                "#{it}: analytic {:?}, oracle {:?}",
                a.err(),
                o.err()
            )),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut detail = format!("{count} fleets, max |dt| {worst_dt:.2e}");
    if check_point {
        detail += &format!(", max point distance {worst_d:.2e}");
    }
    detail += &format!(", {secs:.1} s");
    if !errs.is_empty() {
        detail += &format!(" {}", errs.join("; "));
    }
    outcome(errs.is_empty(), detail)
}

struct Suite {
    name: &'static str,
    checks: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 3 {
                self.failures.push(what());
            }
        }
    }

    fn ok(&self) -> bool {
        self.failed == 0 && self.checks >= 500
    }
}

fn random_params(r: &mut impl Rng) -> Params {
    Params::new(r.gen_range(0.2..3.0), r.gen_range(0.1..1.5)).unwrap()
}

fn random_terminal(r: &mut impl Rng, x0: State, p: &Params, tf: f64) -> State {
    let m = p.beta.min(tf);
    let tag = SequenceTag::ALL[r.gen_range(0..4)];
    let f = r.gen_range(0.0..=0.99 * m);
    let t1 = r.gen_range(0.0..=f);
    let ctl = tag.schedule(t1, tf - (f - t1), tf).unwrap();
    terminal_state(x0, &ctl, p)
}

fn properties() -> Outcome {
    let mut r = rng(5);
    let mut suites = Vec::new();

    let mut convex = Suite::new("convexity");
    for _ in 0..500 {
        let p = random_params(&mut r);
        let x0 = random_state(&mut r, p.b);
        let tf = r.gen_range(0.05..4.0);
        let pts = sample_boundary(x0, p.beta, p.b, tf, 256).unwrap().states();
        let n = pts.len();
        let scale = pts.iter().map(|s| s.x1.abs() + s.x2.abs()).fold(1.0, f64::max);
        let mut turns_left = true;
        for k in 0..n {
            let (a, b, c) = (pts[k], pts[(k + 1) % n], pts[(k + 2) % n]);
            let cross = (b.x1 - a.x1) * (c.x2 - b.x2) - (b.x2 - a.x2) * (c.x1 - b.x1);
            turns_left &= cross >= -1e-12 * scale * scale;
        }
        let (y1, y2) = (random_terminal(&mut r, x0, &p, tf), random_terminal(&mut r, x0, &p, tf));
        let lam = r.gen_range(0.0..=1.0);
        let mix = State::new(lam * y1.x1 + (1.0 - lam) * y2.x1, lam * y1.x2 + (1.0 - lam) * y2.x2);
        convex.check(turns_left && membership(mix, x0, &p, tf), || {
            format!("x0 {x0:?} b {} beta {} tf {tf}", p.b, p.beta)
        });
    }
    suites.push(convex);

    let mut nest = Suite::new("nesting");
    for _ in 0..500 {
        let p = random_params(&mut r);
        let x0 = random_state(&mut r, p.b);
        let tf = r.gen_range(0.05..4.0);
        let small = p.with_beta(p.beta * r.gen_range(0.1..0.9));
        let inner = attainable_polygon(x0, &small, tf, 256);
        let ok = inner
            .vertices()
            .iter()
            .all(|&v| membership_with(v, x0, &p, tf, 4096));
        nest.check(ok, || format!("x0 {x0:?} b {} beta {} / {} tf {tf}", p.b, small.beta, p.beta));
    }
    suites.push(nest);

    let mut sat = Suite::new("saturation");
    for _ in 0..500 {
        let p = random_params(&mut r);
        let x0 = random_state(&mut r, p.b);
        let tf = r.gen_range(0.05..1.5);
        let b1 = tf * r.gen_range(1.001..3.0);
        let b2 = b1 + r.gen_range(0.1..5.0);
        let a = sample_boundary(x0, b1, p.b, tf, 512).unwrap().polygon();
        let c = sample_boundary(x0, b2, p.b, tf, 512).unwrap().polygon();
        let h = a.hausdorff(&c);
        sat.check(h < 1e-12, || format!("hausdorff {h:.2e}"));
    }
    suites.push(sat);

    let mut ident = Suite::new("l1*l2 = w10^2");
    for _ in 0..1000 {
        let b = r.gen_range(0.05..5.0);
        let x10 = r.gen_range(-2.0..2.0);
        let f = r.gen_range(0.0..3.0);
        let (l1, l2, w10) = agent_constants(x10, f, b);
        let rel = (l1 * l2 - w10 * w10).abs() / (w10 * w10);
        ident.check(rel <= 1e-12, || format!("relative error {rel:.2e}"));
    }
    suites.push(ident);

    let mut trich = Suite::new("trichotomy");
    for k in 0..600 {
        let p = random_params(&mut r);
        let limit = 2.0 * p.beta / p.b;
        let lo = r.gen_range(-1.0..1.0);
        let (hi, expect) = match k % 3 {
            0 => (lo + limit * r.gen_range(0.0..0.98), Feasibility::FiniteTime),
            1 => (lo + limit, Feasibility::AsymptoticOnly),
            _ => (lo + limit * r.gen_range(1.02..3.0), Feasibility::Infeasible),
        };
        let agents = vec![
            AgentInit::new("lo", lo, r.gen_range(-1.0..1.0)),
            AgentInit::new("hi", hi, r.gen_range(-1.0..1.0)),
        ];
        let fleet = Fleet::new(agents, p).unwrap();
        let verdict = feasibility(&fleet);
        let solved = min_time_consensus(&fleet);
        // x1 moves at most beta / b, so the x1 shadows decide reachability
        let t_far = p.beta + 20.0 / p.b;
        let [a, c] = [fleet.agents[0].x0, fleet.agents[1].x0].map(|x| attainable_polygon(x, &p, t_far, 512));
        let (Some((_, a_hi)), Some((c_lo, _))) = (a.bounds(), c.bounds()) else {
            trich.check(false, || "empty polygon".into());
            continue;
        };
        let gap = c_lo.x1 - a_hi.x1;
        let ok = verdict == expect
            && match expect {
                Feasibility::FiniteTime => solved.is_ok(),
                Feasibility::AsymptoticOnly => solved.is_err() && gap.abs() < 1e-6,
                Feasibility::Infeasible => solved.is_err() && gap > 0.0,
            };
        trich.check(ok, || format!("expected {expect:?}, got {verdict:?}, gap {gap:.2e}"));
    }
    suites.push(trich);

    let mut closure = Suite::new("closure");
    let mut persist = Suite::new("persistence");
    for _ in 0..500 {
        let fleet = random_fleet(&mut r, 2, 4, 0.9);
        let p = fleet.params;
        let Ok(out) = min_time_consensus(&fleet) else {
            closure.check(false, || "solver error".into());
            continue;
        };
        for (a, plan) in fleet.agents.iter().zip(&out.plans) {
            let c = plan.steering.control;
            let miss = terminal_state(a.x0, &c, &p).dist(&out.x_bar);
            let f = fuel(&c);
            closure.check(miss <= 1e-6 && f <= p.beta + 1e-9, || {
                format!("miss {miss:.2e}, fuel {f} of {}", p.beta)
            });
        }
        // coasting from the consensus point keeps everyone together
        let d = r.gen_range(0.01..2.0);
        let later = State::new(out.x_bar.x1, (-p.b * d).exp() * out.x_bar.x2);
        let t = out.t_bar_f + d;
        let ok = fleet.agents.iter().all(|a| {
            rebudget_fuel(a.x0, later, t, &p).is_ok_and(|s| {
                terminal_state(a.x0, &s.control, &p).dist(&later) <= 1e-6 && s.fuel_used <= p.beta + 1e-9
            })
        });
        persist.check(ok, || format!("t {} + {d}", out.t_bar_f));
    }
    suites.push(persist);
    suites.push(closure);

    let pass = suites.iter().all(Suite::ok);
    let detail = suites
        .iter()
        .map(|s| {
            let mut d = format!("{} {}/{}", s.name, s.checks - s.failed, s.checks);
            if !s.failures.is_empty() {
                d += &format!(" [{}]", s.failures.join("; "));
            }
            d
        })
        .collect::<Vec<_>>()
        .join(", ");
    outcome(pass, detail)
}

fn elimination() -> Outcome {
    let fleet = golden_fleet();
    let out = match min_time_consensus(&fleet) {
        Ok(o) => o,
        Err(e) => return outcome(false, format!("solver error: {e}")),
    };
    let xs = fleet.states();
    let s = Scenario::new([SequenceTag::S1, SequenceTag::S3, SequenceTag::S1], Regime::Saturated);
    let el = match eliminate(&s, [xs[0], xs[1], xs[2]], &fleet.params) {
        Ok(e) => e,
        Err(e) => return outcome(false, format!("elimination error: {e}")),
    };
    let deg = el.poly.degree().unwrap_or(0);
    let q = (-fleet.params.b * out.t_bar_f).exp();
    let roots = el.poly.real_roots(0.0, 1.0, 1e-14).unwrap_or_default();
    let near = roots.iter().map(|z| (z - q).abs()).fold(f64::INFINITY, f64::min);
    outcome(
        deg <= 3 && near <= 1e-6,
        format!("degree {deg}, roots in (0,1) {roots:.6?}, e^(-b t) = {q:.6}, gap {near:.2e}"),
    )
}

fn cli() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_damped-consensus");
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/data/six_agents.toml");
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| Command::new(exe).args(args).output().unwrap();
    let mut reports = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("solve{k}.json"));
        let o = run(&["solve", config, "--out", path.to_str().unwrap()]);
        if !o.status.success() {
            return outcome(false, format!("solve exited {:?}", o.status.code()));
        }
        reports.push(std::fs::read(path).unwrap());
    }
    let same = reports[0] == reports[1];
    let v = run(&["verify", config, "--seed", "7"]);
    let code = v.status.code();
    outcome(
        same && code == Some(0),
        format!("solve reports identical: {same}, verify exit {code:?}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("six-agent reproduction", golden),
        ("switching-time arithmetic", switching_arithmetic),
        ("oracle equivalence (N = 2..3)", || oracle_sweep(3, 100, 2, 3, true)),
        ("triplet reduction (N = 4..7)", || oracle_sweep(4, 50, 4, 7, false)),
        ("property suites", properties),
        ("cubic elimination", elimination),
        ("cli determinism", cli),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {}. {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
