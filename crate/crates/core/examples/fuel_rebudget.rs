//! Non-critical agents spend less than the full budget: shrink the budget
//! until the consensus point sits on the shrunken boundary.
//!
//! Run with `cargo run --release --example fuel_rebudget`.

use damped_consensus::model::terminal_state;
use damped_consensus::{rebudget_fuel, Params, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(1.0, 0.7)?;
    let t = 1.491845;
    let xbar = State::new(0.278064, 0.094106);
    for (id, x0) in [
        ("a4", State::new(0.5, -0.525)),
        ("a5", State::new(0.2, -0.2)),
        ("a6", State::new(0.1, -0.05)),
    ] {
        let s = rebudget_fuel(x0, xbar, t, &p)?;
        let miss = terminal_state(x0, &s.control, &p).dist(&xbar);
        println!(
            "{id}: {} with fuel {:.4} of {}, switches ({:.4}, {:.4}), miss {miss:.1e}",
            s.tag, s.fuel_used, p.beta, s.control.t1, s.control.t2
        );
    }
    Ok(())
}
