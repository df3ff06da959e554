use crate::error::{Error, Result};

/// Grid resolution used before golden-section refinement.
pub const DEFAULT_GRID: usize = 512;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn value(f: &mut impl FnMut(f64) -> f64, x: f64) -> f64 {
    let v = f(x);
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Maximize `f` on `[lo, hi]`; returns `(argmax, max)`.
///
/// A uniform scan locates the best grid cell, then golden-section search
/// refines inside the two neighbouring cells until the bracket is narrower
/// than `tol`. NaN values count as `-inf`.
pub fn maximize_1d(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
    maximize_1d_grid(&mut f, lo, hi, tol, DEFAULT_GRID)
}

pub fn maximize_1d_grid(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    grid: usize,
) -> Result<(f64, f64)> {
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if hi == lo {
        return Ok((lo, value(&mut f, lo)));
    }
    let n = grid.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n)
        .map(|k| if k + 1 == n { hi } else { lo + step * k as f64 })
        .collect();
    let mut best_k = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (k, &x) in xs.iter().enumerate() {
        let v = value(&mut f, x);
        if v > best_v {
            best_v = v;
            best_k = k;
        }
    }
    if best_v == f64::NEG_INFINITY {
        return Ok((xs[0], best_v));
    }
    let mut a = xs[best_k.saturating_sub(1)];
    let mut c = xs[(best_k + 1).min(n - 1)];
    let mut best = (xs[best_k], best_v);

    let mut x1 = c - INV_PHI * (c - a);
    let mut x2 = a + INV_PHI * (c - a);
    let mut f1 = value(&mut f, x1);
    let mut f2 = value(&mut f, x2);
    while c - a > tol {
        if f1 >= f2 {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - INV_PHI * (c - a);
            f1 = value(&mut f, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (c - a);
            f2 = value(&mut f, x2);
        }
        if c - a <= f64::EPSILON * (a.abs() + c.abs()) {
            break;
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

/// Solve `[[a11, a12], [a21, a22]] [x, y]^T = [r1, r2]^T`.
pub fn solve_2x2(a11: f64, a12: f64, a21: f64, a22: f64, r1: f64, r2: f64) -> Result<(f64, f64)> {
    let det = a11 * a22 - a12 * a21;
    let scale = (a11.abs() + a12.abs()) * (a21.abs() + a22.abs());
    if !det.is_finite() || det.abs() <= 1e-14 * scale || scale == 0.0 {
        return Err(Error::Singular);
    }
    Ok(((r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det))
}
