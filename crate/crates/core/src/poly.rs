//! Dense univariate polynomials of small degree and exhaustive real-root
//! isolation on a closed interval.
//!
//! Roots are isolated by recursing on the derivative: the real roots of `p'`
//! split `[lo, hi]` into pieces on which `p` is monotone, and every sign
//! change on a monotone piece brackets exactly one root, which is then
//! refined by bisection to full double precision. For the degrees used in
//! this crate (at most 6) the recursion is shallow and the isolation finds
//! every sign-change root. Roots of even multiplicity that only touch zero
//! are reported only when the polynomial evaluates to exactly zero there.

use serde::{Deserialize, Serialize};

/// Coefficients stored lowest degree first: `c[0] + c[1] x + c[2] x^2 + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<f64>,
}

const MAX_BISECTIONS: usize = 200;

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree of the polynomial; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Poly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Poly::new(out)
    }

    /// `p(x) + c`.
    pub fn add_constant(&self, c: f64) -> Poly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        coeffs[0] += c;
        Poly::new(coeffs)
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Sign-change roots of `p` in `[lo, hi]`, ascending. Points where `p`
    /// evaluates to exactly zero are included.
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        if !(lo <= hi) {
            return Vec::new();
        }
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
                let mut nodes = Vec::with_capacity(self.coeffs.len() + 1);
                nodes.push(lo);
                nodes.extend(
                    self.derivative()
                        .roots_in(lo, hi)
                        .into_iter()
                        .filter(|&c| c > lo && c < hi),
                );
                nodes.push(hi);
                let mut roots = Vec::new();
                let push = |r: f64, roots: &mut Vec<f64>| {
                    if roots.last().is_none_or(|&last| r > last) {
                        roots.push(r);
                    }
                };
                let mut left = nodes[0];
                let mut f_left = self.eval(left);
                if f_left == 0.0 {
                    push(left, &mut roots);
                }
                for &right in &nodes[1..] {
                    let f_right = self.eval(right);
                    if f_right == 0.0 {
                        push(right, &mut roots);
                    } else if f_left != 0.0 && (f_left < 0.0) != (f_right < 0.0) {
                        let r = bisect(|x| self.eval(x), left, right, f_left);
                        push(r, &mut roots);
                    }
                    left = right;
                    f_left = f_right;
                }
                roots
            }
        }
    }

    /// Maximum of `|p|` over `[lo, hi]`, attained at an endpoint or a
    /// critical point.
    pub fn max_abs_on(&self, lo: f64, hi: f64) -> f64 {
        let mut m = self.eval(lo).abs().max(self.eval(hi).abs());
        for c in self.derivative().roots_in(lo, hi) {
            m = m.max(self.eval(c).abs());
        }
        m
    }
}

/// Bisection on a bracket where `f(lo)` has sign of `f_lo` and `f(hi)` the
/// opposite sign. Runs until the bracket cannot be split further in double
/// precision and returns the endpoint with the smaller residual.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_neg = f_lo < 0.0;
    let mut v_lo = f_lo;
    let mut v_hi = f(hi);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == lo_neg {
            lo = mid;
            v_lo = v;
        } else {
            hi = mid;
            v_hi = v;
        }
    }
    if v_lo.abs() <= v_hi.abs() {
        lo
    } else {
        hi
    }
}
