//! Low-degree polynomial toolbox: real roots, Sylvester elimination,
//! 1-D maximization and 2x2 solves.

mod bipoly;
mod optimize;
mod poly;

pub use bipoly::{resultant_eliminate, BiPoly, Var};
pub use optimize::{maximize_1d, maximize_1d_grid, solve_2x2, DEFAULT_GRID};
pub use poly::Poly;

/// Real roots of `p` in `[lo, hi]`; see [`Poly::real_roots`].
pub fn real_roots(p: &Poly, lo: f64, hi: f64, tol: f64) -> crate::error::Result<Vec<f64>> {
    p.real_roots(lo, hi, tol)
}
