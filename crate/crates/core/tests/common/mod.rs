#![allow(dead_code)]

use damped_consensus::{AgentInit, Fleet, Params, State};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random fleet whose x1 spread is at most `frac` of `2 beta / b`.
pub fn random_fleet(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize, frac: f64) -> Fleet {
    let b = rng.gen_range(0.2..3.0);
    let beta = rng.gen_range(0.1..1.5);
    let n = rng.gen_range(n_lo..=n_hi);
    let span = frac * 2.0 * beta / b * rng.gen_range(0.05..1.0);
    let c = rng.gen_range(-0.5..0.5);
    let agents = (0..n)
        .map(|k| {
            AgentInit::new(
                format!("a{k}"),
                c + rng.gen_range(0.0..span),
                rng.gen_range(-3.0..3.0) / (b * b),
            )
        })
        .collect();
    Fleet::new(agents, Params::new(b, beta).unwrap()).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, b: f64) -> State {
    State::new(rng.gen_range(-1.0..1.0), rng.gen_range(-2.0..2.0) / (b * b))
}

pub fn golden_fleet() -> Fleet {
    let pts = [
        (0.04, 0.1),
        (0.39, 1.05),
        (0.3, -0.525),
        (0.5, -0.525),
        (0.2, -0.2),
        (0.1, -0.05),
    ];
    let agents = pts
        .iter()
        .enumerate()
        .map(|(k, &(x1, x2))| AgentInit::new(format!("a{}", k + 1), x1, x2))
        .collect();
    Fleet::new(agents, Params::new(1.0, 0.7).unwrap()).unwrap()
}
