//! Minimum-time consensus for damped second-order agents under a fuel budget.
//!
//! Each agent follows `x1' = u / b`, `x2' = -b x2 - u / b` with `|u| <= 1`
//! and may spend at most `beta` units of `|u|` over the horizon. The crate
//! computes attainable-set boundaries in closed form, solves the pairwise and
//! three-agent minimum-time problems, and lifts them to whole fleets through
//! Helly's theorem (in the plane, convex sets share a point as soon as every
//! three of them do).
//!
//! ```
//! use damped_consensus::{min_pair_time, Params, State};
//!
//! let p = Params::new(1.0, 0.7).unwrap();
//! let r = min_pair_time(State::new(0.04, 0.1), State::new(0.5, -0.525), &p).unwrap();
//! assert!(r.t_bar > 0.0);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod cli;
pub mod consensus;
pub mod error;
pub mod geometry;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod pairwise;
pub mod triplet;

pub use error::{Error, Result};
pub use geometry::Polygon;
pub use model::{AgentInit, BangOffBang, Params, Sign, State, Tolerances};
pub use boundary::{membership, sample_boundary, switching_times, SequenceTag};
pub use consensus::{feasibility, min_time_consensus, rebudget_fuel, region_of_consensus, Feasibility, Fleet};
pub use oracle::{oracle_min_time, OracleConfig};
pub use pairwise::{min_pair_time, PairResult};
pub use triplet::{min_triplet_time, Scenario, TripletResult};
