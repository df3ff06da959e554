use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Coefficients below this fraction of the largest one are treated as zero
/// when deciding the degree.
const TRIM_REL: f64 = 1e-14;

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.strip_zeros();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// `prod (x - r)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots
            .iter()
            .fold(Poly::constant(1.0), |acc, &r| &acc * &Poly::new(vec![-r, 1.0]))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn strip_zeros(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree after exact-zero stripping; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Copy with leading coefficients below `rel * max|c|` removed.
    pub fn trimmed(&self, rel: f64) -> Poly {
        let cut = rel * self.max_abs_coeff();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.abs() <= cut) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `sum |c_i| |x|^i`, the natural scale of rounding error in `eval`.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::constant(1.0), |acc, _| &acc * self)
    }

    /// Real roots in `[lo, hi]`, sorted, multiplicities collapsed.
    ///
    /// The interval is cut at the real roots of the derivative (found
    /// recursively), so the polynomial is monotone on every piece; each piece
    /// with a sign change holds exactly one root, which is refined by
    /// bisection. Critical points where the value vanishes to rounding
    /// accuracy are reported as (even-multiplicity) roots.
    pub fn real_roots(&self, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(Error::InvalidInterval { lo, hi });
        }
        let p = self.trimmed(TRIM_REL);
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots = p.roots_rec(lo, hi);
        roots.sort_by(|a, b| a.total_cmp(b));
        roots.dedup_by(|a, b| (*a - *b).abs() <= tol);
        Ok(roots)
    }

    fn near_zero(&self, x: f64) -> bool {
        self.eval(x).abs() <= 64.0 * f64::EPSILON * self.eval_abs(x).max(f64::MIN_POSITIVE)
    }

    fn roots_rec(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self.degree() {
            None | Some(0) => Vec::new(),
            Some(1) => {
                let r = -self.coeffs[0] / self.coeffs[1];
                if r >= lo && r <= hi {
                    vec![r]
                } else {
                    Vec::new()
                }
            }
            Some(_) => {
                let d = self.derivative().trimmed(TRIM_REL);
                let mut cuts = vec![lo];
                cuts.extend(d.roots_rec(lo, hi).into_iter().filter(|&c| c > lo && c < hi));
                cuts.push(hi);
                let mut out = Vec::new();
                for w in cuts.windows(2) {
                    let (a, c) = (w[0], w[1]);
                    let (fa, fc) = (self.eval(a), self.eval(c));
                    if fa == 0.0 || self.near_zero(a) {
                        out.push(a);
                    }
                    if fa * fc < 0.0 && !self.near_zero(a) && !self.near_zero(c) {
                        out.push(self.bisect(a, c, fa));
                    }
                }
                if self.near_zero(hi) {
                    out.push(hi);
                }
                out
            }
        }
    }

    fn bisect(&self, mut a: f64, mut c: f64, fa: f64) -> f64 {
        let neg_at_a = fa < 0.0;
        for _ in 0..200 {
            let m = 0.5 * (a + c);
            if m <= a || m >= c {
                break;
            }
            let fm = self.eval(m);
            if fm == 0.0 {
                return m;
            }
            if (fm < 0.0) == neg_at_a {
                a = m;
            } else {
                c = m;
            }
        }
        0.5 * (a + c)
    }

    /// Polynomial remainder of `self / d`.
    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        let d = d.trimmed(TRIM_REL);
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let mut r = self.coeffs.clone();
        let lead = d.coeffs[dd];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = r[k] / lead;
            for i in 0..=dd {
                r[k - dd + i] -= f * d.coeffs[i];
            }
            r.pop();
        }
        Ok(Poly::new(r))
    }

    /// Number of distinct real roots in `(lo, hi]` by Sturm's theorem.
    pub fn sturm_count(&self, lo: f64, hi: f64) -> Result<usize> {
        let p0 = self.trimmed(TRIM_REL);
        if p0.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut seq = vec![p0.clone(), p0.derivative().trimmed(TRIM_REL)];
        loop {
            let n = seq.len();
            if seq[n - 1].degree().is_none_or(|d| d == 0) {
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1])?;
            let r = r.trimmed(1e-10).scale(-1.0);
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        let changes = |x: f64| {
            let signs: Vec<f64> = seq
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| *v != 0.0)
                .collect();
            signs.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
        };
        Ok(changes(lo).saturating_sub(changes(hi)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(0.0)
                        + rhs.coeffs.get(i).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}
