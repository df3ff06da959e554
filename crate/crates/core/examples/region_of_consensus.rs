//! Where a fleet can meet given unlimited time, and the feasibility verdict
//! as agents drift apart.
//!
//! Run with `cargo run --release --example region_of_consensus`.

use damped_consensus::{feasibility, region_of_consensus, AgentInit, Fleet, Params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(1.0, 0.7)?;
    let fleet = Fleet::new(
        vec![
            AgentInit::new("a1", 0.04, 0.1),
            AgentInit::new("a2", 0.39, 1.05),
            AgentInit::new("a4", 0.5, -0.525),
        ],
        p,
    )?;
    let region = region_of_consensus(&fleet);
    let (lo, hi) = region.polygon.bounds().expect("feasible fleet");
    println!(
        "region: {} vertices, area {:.5}, x1 in [{:.4}, {:.4}]",
        region.polygon.len(),
        region.polygon.area(),
        lo.x1,
        hi.x1
    );
    if let Some(c) = region.polygon.centroid() {
        println!("centroid ({:.4}, {:.4})", c.x1, c.x2);
    }

    for gap in [0.5, 1.0, 1.2, 1.4, 1.6] {
        let f = Fleet::new(
            vec![AgentInit::new("p", 0.0, 0.0), AgentInit::new("q", gap, 0.0)],
            p,
        )?;
        println!("x1 gap {gap:.1} (limit {:.1}): {:?}", 2.0 * p.beta / p.b, feasibility(&f));
    }
    Ok(())
}
