use std::ops::{Add, Mul, Sub};

use super::poly::Poly;
use crate::error::{Error, Result};

/// One of the two variables of a [`BiPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// The exponentiated position `w = e^{(b^2/2) x1}`.
    W,
    /// The exponentiated time (`q = e^{-bt}` or `r = e^{-bt/2}`).
    Z,
}

/// Polynomial in `(w, z)`: `sum c[i][j] w^i z^j`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BiPoly {
    c: Vec<Vec<f64>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    /// From `(i, j, coeff)` terms; repeated monomials add up.
    pub fn from_terms(terms: &[(usize, usize, f64)]) -> Self {
        let mut p = BiPoly::zero();
        for &(i, j, v) in terms {
            p.add_term(i, j, v);
        }
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, v: f64) {
        if self.c.len() <= i {
            self.c.resize(i + 1, Vec::new());
        }
        if self.c[i].len() <= j {
            self.c[i].resize(j + 1, 0.0);
        }
        self.c[i][j] += v;
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.c.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.c.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(move |(j, &v)| (i, j, v))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    pub fn degree_in(&self, var: Var) -> Option<usize> {
        self.terms()
            .map(|(i, j, _)| match var {
                Var::W => i,
                Var::Z => j,
            })
            .max()
    }

    pub fn eval(&self, w: f64, z: f64) -> f64 {
        self.c
            .iter()
            .rev()
            .fold(0.0, |acc, row| acc * w + row.iter().rev().fold(0.0, |a, &v| a * z + v))
    }

    /// `sum |c_ij| |w|^i |z|^j`.
    pub fn eval_abs(&self, w: f64, z: f64) -> f64 {
        self.terms()
            .map(|(i, j, v)| v.abs() * w.abs().powi(i as i32) * z.abs().powi(j as i32))
            .sum()
    }

    pub fn scale(&self, s: f64) -> BiPoly {
        BiPoly {
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(|v| v * s).collect())
                .collect(),
        }
    }

    /// Multiply by `w^k`.
    pub fn shift_w(&self, k: usize) -> BiPoly {
        let mut c = vec![Vec::new(); k];
        c.extend(self.c.iter().cloned());
        BiPoly { c }
    }

    pub fn partial(&self, var: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, v) in self.terms() {
            match var {
                Var::W if i > 0 => out.add_term(i - 1, j, v * i as f64),
                Var::Z if j > 0 => out.add_term(i, j - 1, v * j as f64),
                _ => {}
            }
        }
        out
    }

    /// Univariate polynomial obtained by fixing the *other* variable.
    ///
    /// `restrict(Var::W, z0)` is a polynomial in `w`.
    pub fn restrict(&self, keep: Var, other: f64) -> Poly {
        let n = self.degree_in(keep).map_or(0, |d| d + 1);
        let mut out = vec![0.0; n];
        for (i, j, v) in self.terms() {
            match keep {
                Var::W => out[i] += v * other.powi(j as i32),
                Var::Z => out[j] += v * other.powi(i as i32),
            }
        }
        Poly::new(out)
    }

    /// Coefficients of successive powers of `var`, each a polynomial in the
    /// remaining variable.
    pub fn coeffs_in(&self, var: Var) -> Vec<Poly> {
        let n = self.degree_in(var).map_or(0, |d| d + 1);
        let mut raw = vec![Vec::<f64>::new(); n];
        for (i, j, v) in self.terms() {
            let (k, m) = match var {
                Var::W => (i, j),
                Var::Z => (j, i),
            };
            if raw[k].len() <= m {
                raw[k].resize(m + 1, 0.0);
            }
            raw[k][m] += v;
        }
        raw.into_iter().map(Poly::new).collect()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, j, v) in rhs.terms() {
            out.add_term(i, j, v);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, v) in self.terms() {
            for (k, m, u) in rhs.terms() {
                out.add_term(i + k, j + m, v * u);
            }
        }
        out
    }
}

fn det(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        0 => Poly::constant(1.0),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Poly::zero();
            for row in 0..n {
                if m[row][0].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != row)
                    .map(|(_, cols)| cols[1..].to_vec())
                    .collect();
                let term = &m[row][0] * &det(&minor);
                acc = if row % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Sylvester resultant of `f` and `g` with respect to `eliminate`.
///
/// The result is a polynomial in the remaining variable that vanishes at the
/// projection of every common root of `f` and `g` (it may have extra roots).
pub fn resultant_eliminate(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<Poly> {
    let a = f.coeffs_in(eliminate);
    let b = g.coeffs_in(eliminate);
    if a.is_empty() || b.is_empty() {
        return Err(Error::DegenerateElimination("zero input polynomial".into()));
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    match (m, n) {
        (0, 0) => Err(Error::DegenerateElimination(
            "neither polynomial depends on the eliminated variable".into(),
        )),
        (0, _) => Ok(a[0].pow(n)),
        (_, 0) => Ok(b[0].pow(m)),
        _ => {
            let size = m + n;
            let mut mat = vec![vec![Poly::zero(); size]; size];
            for r in 0..n {
                for (k, c) in a.iter().rev().enumerate() {
                    mat[r][r + k] = c.clone();
                }
            }
            for r in 0..m {
                for (k, c) in b.iter().rev().enumerate() {
                    mat[n + r][r + k] = c.clone();
                }
            }
            Ok(det(&mat))
        }
    }
}
