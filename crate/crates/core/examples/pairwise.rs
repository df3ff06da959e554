//! Minimum consensus time of two agents, with both boundary pairings.
//!
//! Run with `cargo run --release --example pairwise`.

use damped_consensus::{min_pair_time, Params, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(1.0, 0.7)?;
    let a1 = State::new(0.04, 0.1);
    let pairs = [
        ("a1-a2", State::new(0.39, 1.05)),
        ("a1-a3", State::new(0.3, -0.525)),
        ("a1-a4", State::new(0.5, -0.525)),
        ("a1-a6", State::new(0.1, -0.05)),
    ];
    for (name, other) in pairs {
        let r = min_pair_time(a1, other, &p)?;
        println!(
            "{name}: t = {:.6} at ({:.6}, {:.6}), {:?} / {:?}",
            r.t_bar, r.x_bar.x1, r.x_bar.x2, r.pairing, r.regime
        );
        for c in &r.candidates {
            println!("    {:?}: t = {:.6} ({:?})", c.pairing, c.t, c.regime);
        }
        for (k, s) in r.steering(a1, other, &p)?.iter().enumerate() {
            let c = s.control;
            println!(
                "    agent {k}: {} on [0, {:.4}], off, {} on [{:.4}, {:.4}], fuel {:.4}",
                c.gamma1.value(),
                c.t1,
                c.gamma2.value(),
                c.t2,
                c.tf,
                s.fuel_used
            );
        }
    }

    // The x1 gap decides feasibility.
    let far = State::new(0.04 + 2.0 * p.beta / p.b + 0.01, 0.0);
    println!("too far apart: {}", min_pair_time(a1, far, &p).unwrap_err());
    Ok(())
}
