//! Three-agent consensus: the polynomial elimination behind one boundary
//! scenario, and the full triplet solve.
//!
//! Run with `cargo run --release --example triplet_elimination`.

use damped_consensus::boundary::Regime;
use damped_consensus::triplet::{eliminate, solve_scenario};
use damped_consensus::{min_triplet_time, Params, Scenario, SequenceTag, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(1.0, 0.7)?;
    let agents = [
        State::new(0.04, 0.1),
        State::new(0.39, 1.05),
        State::new(0.3, -0.525),
    ];

    let s = Scenario::new([SequenceTag::S1, SequenceTag::S3, SequenceTag::S1], Regime::Saturated);
    let el = eliminate(&s, agents, &p)?;
    println!("scenario {s}: polynomial in q = e^(-b t) of degree {:?}", el.poly.degree());
    println!("  coefficients {:?}", el.poly.coeffs());
    for q in el.poly.real_roots(0.0, 1.0, 1e-14)? {
        println!("  root q = {q:.8} -> t = {:.6}", -q.ln() / p.b);
    }
    for sol in solve_scenario(&s, agents, &p)? {
        println!(
            "  t = {:.6}, x = ({:.6}, {:.6}), feasible {}, switching {:?}",
            sol.t_f, sol.x_hat.x1, sol.x_hat.x2, sol.feasible, sol.switching
        );
    }

    let r = min_triplet_time(agents, &p)?;
    println!(
        "triplet: t = {:.6} at ({:.6}, {:.6}), {:?}, scenario {}",
        r.t_bar,
        r.x_bar.x1,
        r.x_bar.x2,
        r.case,
        r.scenario.map_or("-".to_string(), |s| s.to_string())
    );
    println!("pair times {:.6?}", r.pair_times);
    Ok(())
}
