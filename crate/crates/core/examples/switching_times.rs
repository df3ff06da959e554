//! Switching times for each sequence towards a target point. The times only
//! depend on the target's x1; the sequence whose arc passes through the
//! target is the one that lands on it.
//!
//! Run with `cargo run --release --example switching_times`.

use damped_consensus::boundary::{steer, switching_times_raw, SequenceTag};
use damped_consensus::model::terminal_state;
use damped_consensus::{Params, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(1.0, 0.7)?;
    let tf = 1.4918;
    let target = State::new(0.2781, 0.0941);
    let agents = [("a1", State::new(0.04, 0.1)), ("a2", State::new(0.39, 1.05))];

    for (id, x0) in agents {
        println!("{id} -> ({}, {}) at tf = {tf}", target.x1, target.x2);
        for tag in SequenceTag::ALL {
            let (t1, t2) = switching_times_raw(tag, target, x0, p.beta, p.b, tf)
                .map_or((f64::NAN, f64::NAN), |v| v);
            let admissible = 0.0 <= t1 && t1 <= t2 && t2 <= tf;
            print!("  {tag}: t1 = {t1:>8.4}, t2 = {t2:>8.4}  ");
            match steer(tag, x0, target, p.beta, &p, tf) {
                Ok(s) if admissible => {
                    let miss = terminal_state(x0, &s.control, &p).dist(&target);
                    println!("in range, lands {miss:.1e} away");
                }
                _ => println!("out of range"),
            }
        }
    }
    Ok(())
}
