//! Boundary of one agent's attainable set, arc by arc, and how it grows with
//! time and budget.
//!
//! Run with `cargo run --release --example attainable_set`.

use damped_consensus::boundary::{infinite_limit_arcs, sample_boundary, SequenceTag};
use damped_consensus::model::terminal_state;
use damped_consensus::{membership, Params, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(1.0, 0.7)?;
    let x0 = State::new(0.04, 0.1);

    for tf in [0.5, 1.0, 1.5, 3.0] {
        let sample = sample_boundary(x0, p.beta, p.b, tf, 400)?;
        let poly = sample.polygon();
        let (lo, hi) = poly.bounds().expect("non-empty");
        println!(
            "tf = {tf:.1} ({:?}): area {:.5}, x1 in [{:.4}, {:.4}], x2 in [{:.4}, {:.4}]",
            sample.regime,
            poly.area(),
            lo.x1,
            hi.x1,
            lo.x2,
            hi.x2
        );
        for tag in SequenceTag::ALL {
            let n = sample.points.iter().filter(|q| q.tag == tag).count();
            if n > 0 {
                print!("  {tag}: {n} points");
            }
        }
        println!();
    }

    // Each boundary sample replays exactly under its own schedule.
    let tf = 1.5;
    let sample = sample_boundary(x0, p.beta, p.b, tf, 64)?;
    let worst = sample
        .points
        .iter()
        .map(|q| {
            let (g1, g2) = q.tag.signs();
            let ctl = damped_consensus::BangOffBang::new(g1, q.t1, q.t2, g2, tf).unwrap();
            terminal_state(x0, &ctl, &p).dist(&q.state)
        })
        .fold(0.0, f64::max);
    println!("worst replay error at tf = {tf}: {worst:.1e}");

    let coast = State::new(x0.x1, (-p.b * tf).exp() * x0.x2);
    println!("coasting point inside: {}", membership(coast, x0, &p, tf));

    let lim = infinite_limit_arcs(x0, p.beta, p.b);
    println!(
        "t -> infinity: x1 in [{:.4}, {:.4}], thickness at x1 = x10: {:.4}",
        lim.x1_lo,
        lim.x1_hi,
        lim.upper(x0.x1) - lim.lower(x0.x1)
    );
    Ok(())
}
