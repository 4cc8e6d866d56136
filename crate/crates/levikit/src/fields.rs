//! Analytic scalar fields with exact second-order jets.
//!
//! Scenario inputs (caps, coordinate functions, moduli) are built from
//! these so operator evaluations can be checked at analytically known
//! jets, independent of any grid.

use crate::grid::{ScalarGrid, MAX_DIMS};
use crate::jet::Jet2;

pub trait AnalyticField: Send + Sync {
    fn dims(&self) -> usize;
    fn eval(&self, x: &[f64]) -> f64;
    fn jet(&self, x: &[f64]) -> Jet2;
}

/// Real multivariate polynomial, term list (coefficient, exponents).
#[derive(Debug, Clone)]
pub struct Polynomial {
    dims: usize,
    terms: Vec<(f64, [u32; MAX_DIMS])>,
}

impl Polynomial {
    pub fn new(dims: usize, terms: Vec<(f64, [u32; MAX_DIMS])>) -> Self {
        Polynomial { dims, terms }
    }

    pub fn constant(dims: usize, c: f64) -> Self {
        Polynomial::new(dims, vec![(c, [0; MAX_DIMS])])
    }

    /// Coordinate function x_i.
    pub fn coordinate(dims: usize, i: usize) -> Self {
        let mut e = [0u32; MAX_DIMS];
        e[i] = 1;
        Polynomial::new(dims, vec![(1.0, e)])
    }

    /// |z1|^2 = x1^2 + x2^2 on R^4.
    pub fn z1_modulus_squared() -> Self {
        let mut e1 = [0u32; MAX_DIMS];
        e1[0] = 2;
        let mut e2 = [0u32; MAX_DIMS];
        e2[1] = 2;
        Polynomial::new(4, vec![(1.0, e1), (1.0, e2)])
    }

    /// 1 - |z2|^2 = 1 - x3^2 - x4^2 on R^4.
    pub fn one_minus_z2_modulus_squared() -> Self {
        let mut e3 = [0u32; MAX_DIMS];
        e3[2] = 2;
        let mut e4 = [0u32; MAX_DIMS];
        e4[3] = 2;
        Polynomial::new(4, vec![(1.0, [0; MAX_DIMS]), (-1.0, e3), (-1.0, e4)])
    }

    /// |z|^2 = x1^2 + ... + x4^2 on R^4.
    pub fn full_modulus_squared() -> Self {
        let terms = (0..4)
            .map(|i| {
                let mut e = [0u32; MAX_DIMS];
                e[i] = 2;
                (1.0, e)
            })
            .collect();
        Polynomial::new(4, terms)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Polynomial::new(
            self.dims,
            self.terms.iter().map(|&(a, e)| (c * a, e)).collect(),
        )
    }

    pub fn plus(&self, other: &Polynomial) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Polynomial::new(self.dims.max(other.dims), terms)
    }

    fn term_eval(coef: f64, exps: &[u32; MAX_DIMS], x: &[f64]) -> f64 {
        let mut v = coef;
        for (d, &e) in exps.iter().enumerate().take(x.len()) {
            v *= x[d].powi(e as i32);
        }
        v
    }

    /// Exact partial derivative as a new polynomial.
    pub fn derivative(&self, axis: usize) -> Polynomial {
        let mut terms = Vec::new();
        for &(c, e) in &self.terms {
            if e[axis] > 0 {
                let mut e2 = e;
                e2[axis] -= 1;
                terms.push((c * e[axis] as f64, e2));
            }
        }
        Polynomial::new(self.dims, terms)
    }
}

impl AnalyticField for Polynomial {
    fn dims(&self) -> usize {
        self.dims
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| Self::term_eval(*c, e, x))
            .sum()
    }

    fn jet(&self, x: &[f64]) -> Jet2 {
        let mut p = [0.0f64; MAX_DIMS];
        p[..self.dims].copy_from_slice(&x[..self.dims]);
        let mut jet = Jet2::new(self.dims, p, self.eval(x), [0.0; MAX_DIMS]);
        for d in 0..self.dims {
            let dp = self.derivative(d);
            jet.grad[d] = dp.eval(x);
            for e in d..self.dims {
                jet.set_hess(d, e, dp.derivative(e).eval(x));
            }
        }
        jet
    }
}

/// Spherical cap v(x) = sqrt(R^2 - |x|^2) over R^3: the graph of the
/// upper hemisphere of the radius-R sphere.
#[derive(Debug, Clone, Copy)]
pub struct Cap {
    pub radius: f64,
}

impl AnalyticField for Cap {
    fn dims(&self) -> usize {
        3
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.radius * self.radius - x.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    fn jet(&self, x: &[f64]) -> Jet2 {
        let v = self.eval(x);
        let mut p = [0.0f64; MAX_DIMS];
        p[..3].copy_from_slice(&x[..3]);
        let mut jet = Jet2::new(3, p, v, [0.0; MAX_DIMS]);
        for i in 0..3 {
            jet.grad[i] = -x[i] / v;
        }
        for i in 0..3 {
            for j in i..3 {
                let kron = if i == j { 1.0 } else { 0.0 };
                jet.set_hess(i, j, -kron / v - x[i] * x[j] / (v * v * v));
            }
        }
        jet
    }
}

/// Weighted sum of analytic fields.
pub struct FieldSum {
    pub parts: Vec<(f64, Box<dyn AnalyticField>)>,
}

impl AnalyticField for FieldSum {
    fn dims(&self) -> usize {
        self.parts.iter().map(|(_, f)| f.dims()).max().unwrap_or(0)
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.parts.iter().map(|(c, f)| c * f.eval(x)).sum()
    }

    fn jet(&self, x: &[f64]) -> Jet2 {
        let dims = self.dims();
        let mut p = [0.0f64; MAX_DIMS];
        p[..dims].copy_from_slice(&x[..dims]);
        let mut out = Jet2::new(dims, p, 0.0, [0.0; MAX_DIMS]);
        for (c, f) in &self.parts {
            let j = f.jet(x);
            out.value += c * j.value;
            for d in 0..j.dims {
                out.grad[d] += c * j.grad[d];
            }
            for a in 0..j.dims {
                for b in a..j.dims {
                    out.set_hess(a, b, out.hess(a, b) + c * j.hess(a, b));
                }
            }
        }
        out
    }
}

/// Sample a field on every node of a grid (mask untouched).
pub fn sample_onto(grid: &mut ScalarGrid, field: &dyn AnalyticField) {
    for i in 0..grid.len() {
        let p = grid.point(i);
        grid.values[i] = field.eval(&p[..grid.dims()]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Richardson-extrapolated finite differences of `eval`, the oracle
    /// the analytic jets are checked against.
    fn fd_oracle_jet(f: &dyn AnalyticField, x: &[f64], h: f64) -> Jet2 {
        let d = f.dims();
        let mut p = [0.0f64; MAX_DIMS];
        p[..d].copy_from_slice(x);
        let mut jet = Jet2::new(d, p, f.eval(x), [0.0; MAX_DIMS]);
        let ev = |dx: &[f64]| {
            let mut y = x.to_vec();
            for (i, v) in dx.iter().enumerate() {
                y[i] += v;
            }
            f.eval(&y)
        };
        for i in 0..d {
            let mut dp = vec![0.0; d];
            let g = |step: f64| {
                dp[i] = step;
                let a = ev(&dp);
                dp[i] = -step;
                let b = ev(&dp);
                dp[i] = 0.0;
                (a - b) / (2.0 * step)
            };
            let (g1, g2) = (g(h), g(h / 2.0));
            jet.grad[i] = (4.0 * g2 - g1) / 3.0;
        }
        for i in 0..d {
            for j in i..d {
                let hh = |step: f64| {
                    let mut dp = vec![0.0; d];
                    if i == j {
                        dp[i] = step;
                        let a = ev(&dp);
                        dp[i] = -step;
                        let b = ev(&dp);
                        (a - 2.0 * f.eval(x) + b) / (step * step)
                    } else {
                        dp[i] = step;
                        dp[j] = step;
                        let pp = ev(&dp);
                        dp[j] = -step;
                        let pm = ev(&dp);
                        dp[i] = -step;
                        dp[j] = step;
                        let mp = ev(&dp);
                        dp[j] = -step;
                        let mm = ev(&dp);
                        (pp - pm - mp + mm) / (4.0 * step * step)
                    }
                };
                let (h1, h2) = (hh(h), hh(h / 2.0));
                jet.set_hess(i, j, (4.0 * h2 - h1) / 3.0);
            }
        }
        jet
    }

    fn assert_jets_close(a: &Jet2, b: &Jet2, tol: f64) {
        assert!((a.value - b.value).abs() < tol);
        for d in 0..a.dims {
            assert!(
                (a.grad[d] - b.grad[d]).abs() < tol,
                "grad[{d}]: {} vs {}",
                a.grad[d],
                b.grad[d]
            );
            for e in 0..a.dims {
                assert!(
                    (a.hess(d, e) - b.hess(d, e)).abs() < tol,
                    "hess[{d}][{e}]: {} vs {}",
                    a.hess(d, e),
                    b.hess(d, e)
                );
            }
        }
    }

    #[test]
    fn polynomial_jet_matches_fd_oracle() {
        let mut e = [0u32; MAX_DIMS];
        e[0] = 2;
        e[1] = 1;
        let mut e2 = [0u32; MAX_DIMS];
        e2[2] = 3;
        let p = Polynomial::new(3, vec![(1.5, e), (-0.7, e2)]);
        let x = [0.4, -0.3, 0.6];
        assert_jets_close(&p.jet(&x), &fd_oracle_jet(&p, &x, 1e-3), 1e-7);
    }

    #[test]
    fn cap_jet_matches_fd_oracle() {
        let cap = Cap { radius: 1.0 };
        let x = [0.5, -0.2, 0.3];
        assert_jets_close(&cap.jet(&x), &fd_oracle_jet(&cap, &x, 1e-4), 1e-6);
    }

    #[test]
    fn cap_hessian_closed_form_at_axis_point() {
        // at (a,0,0): v11 = -R^2/s^3, v22 = v33 = -1/s, s = sqrt(R^2-a^2)
        let cap = Cap { radius: 1.0 };
        let a = 0.6;
        let s = (1.0f64 - a * a).sqrt();
        let j = cap.jet(&[a, 0.0, 0.0]);
        assert!((j.hess(0, 0) + 1.0 / (s * s * s)).abs() < 1e-12);
        assert!((j.hess(1, 1) + 1.0 / s).abs() < 1e-12);
        assert!((j.hess(2, 2) + 1.0 / s).abs() < 1e-12);
    }
}
