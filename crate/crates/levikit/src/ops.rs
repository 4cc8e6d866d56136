//! Pointwise Levi-type operators.
//!
//! `levi_full` is the degenerate-elliptic contraction
//! `sum_{a,b} (delta_ab |du|^2 - u_abar u_b) u_{a bbar}` on jets over C^2;
//! `levi_complete` subtracts the prescribed-curvature term `k |du|^3`.
//! `levi_graph` is the graph form over C x R; with a curvature value it
//! adds `2 k (1 + |Dv|^2)^{3/2}`, normalized so the graph of the radius-R
//! hemisphere solves the equation with k = 1/R. The literal-coefficient
//! variant is kept as `levi_graph_unnormalized` for literature comparison.
//!
//! The two forms agree through the bridge `L(v) = 16 * levi_full(v - x4)`
//! (the 16 collects the 1/2 factors of the complex derivatives); see
//! `identity_residual`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::MAX_DIMS;
use crate::jet::{real_to_complex_jet, ComplexJet2, Jet2};

/// Prescribed curvature k(x, t), continuous on the evaluation region.
#[derive(Clone)]
pub struct Curvature(Arc<dyn Fn(&[f64], f64) -> f64 + Send + Sync>);

impl Curvature {
    pub fn constant(k: f64) -> Self {
        Curvature(Arc::new(move |_, _| k))
    }

    pub fn from_fn<F: Fn(&[f64], f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Curvature(Arc::new(f))
    }

    #[inline]
    pub fn eval(&self, x: &[f64], t: f64) -> f64 {
        (self.0)(x, t)
    }

    /// Sampled finiteness check over a point list.
    pub fn validate_on<'a, I: IntoIterator<Item = &'a [f64]>>(&self, points: I) -> Result<()> {
        for (i, p) in points.into_iter().enumerate() {
            if !self.eval(p, 0.0).is_finite() {
                return Err(Error::Precondition(format!(
                    "curvature not finite at sample {i}"
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Curvature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Curvature(<fn>)")
    }
}

/// Which operator a verdict or solve refers to.
#[derive(Clone, Debug)]
pub enum OperatorKind {
    /// L(u) on jets over C^2.
    LeviFull,
    /// L(u) - k |du|^3.
    LeviComplete(Curvature),
    /// Graph operator over C x R.
    Graph,
    /// Graph operator with prescribed curvature.
    GraphK(Curvature),
}

impl OperatorKind {
    pub fn jet_dims(&self) -> usize {
        match self {
            OperatorKind::LeviFull | OperatorKind::LeviComplete(_) => 4,
            OperatorKind::Graph | OperatorKind::GraphK(_) => 3,
        }
    }

    /// Evaluate the operator on a real jet of the appropriate dimension.
    pub fn eval(&self, jet: &Jet2) -> Result<f64> {
        match self {
            OperatorKind::LeviFull => Ok(levi_full(&real_to_complex_jet(jet)?)),
            OperatorKind::LeviComplete(k) => {
                let cj = real_to_complex_jet(jet)?;
                let kv = k.eval(&jet.point[..4], jet.value);
                Ok(levi_complete(&cj, kv))
            }
            OperatorKind::Graph => levi_graph(jet, None),
            OperatorKind::GraphK(k) => {
                let kv = k.eval(&jet.point[..3], jet.value);
                levi_graph(jet, Some(kv))
            }
        }
    }
}

/// Full Levi contraction; real part of the complex contraction (the
/// imaginary residue vanishes for jets of real-valued functions).
pub fn levi_full(j: &ComplexJet2) -> f64 {
    levi_full_complex(j).re
}

/// The contraction kept complex, for imaginary-residue diagnostics.
pub fn levi_full_complex(j: &ComplexJet2) -> Complex64 {
    let grad_sq = j.dz[0] * j.dzbar[0] + j.dz[1] * j.dzbar[1];
    let mut acc = Complex64::new(0.0, 0.0);
    for alpha in 0..2 {
        for beta in 0..2 {
            let delta = if alpha == beta {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let coeff = delta * grad_sq - j.dzbar[alpha] * j.dz[beta];
            acc += coeff * j.mixed(alpha, beta);
        }
    }
    acc
}

/// Complete Levi operator: levi_full(j) - k |du|^3.
pub fn levi_complete(j: &ComplexJet2, kval: f64) -> f64 {
    levi_full(j) - kval * j.grad_sq().max(0.0).powf(1.5)
}

/// Coefficient matrix A(Dv) of the graph operator, so that the
/// second-order part is tr(A D^2 v). Positive semidefinite of rank <= 2;
/// the null direction is (v1 v3 - v2, v1 + v2 v3, 1 + v3^2).
pub fn graph_symbol(grad: &[f64]) -> [[f64; 3]; 3] {
    let (v1, v2, v3) = (grad[0], grad[1], grad[2]);
    let a13 = v2 - v1 * v3;
    let a23 = -(v1 + v2 * v3);
    [
        [1.0 + v3 * v3, 0.0, a13],
        [0.0, 1.0 + v3 * v3, a23],
        [a13, a23, v1 * v1 + v2 * v2],
    ]
}

/// Graph Levi operator over C x R (jet dims = 3):
/// `(1+v3^2)(v11+v22) + (v1^2+v2^2) v33 + 2(v2 - v1 v3) v13 - 2(v1 + v2 v3) v23`,
/// plus `2 k (1+|Dv|^2)^{3/2}` when a curvature value is given.
pub fn levi_graph(j: &Jet2, kval: Option<f64>) -> Result<f64> {
    if j.dims != 3 {
        return Err(Error::Dimension {
            expected: 3,
            got: j.dims,
        });
    }
    let (v1, v2, v3) = (j.grad[0], j.grad[1], j.grad[2]);
    let mut val = (1.0 + v3 * v3) * (j.hess(0, 0) + j.hess(1, 1))
        + (v1 * v1 + v2 * v2) * j.hess(2, 2)
        + 2.0 * (v2 - v1 * v3) * j.hess(0, 2)
        - 2.0 * (v1 + v2 * v3) * j.hess(1, 2);
    if let Some(k) = kval {
        val += 2.0 * k * (1.0 + v1 * v1 + v2 * v2 + v3 * v3).powf(1.5);
    }
    Ok(val)
}

/// Literal-coefficient curvature variant (coefficient k instead of 2k).
/// Under this form the radius-R hemisphere solves the equation with
/// k = 2/R rather than 1/R. Kept for comparison with printed sources.
pub fn levi_graph_unnormalized(j: &Jet2, kval: f64) -> Result<f64> {
    let base = levi_graph(j, None)?;
    let g2: f64 = (0..3).map(|d| j.grad[d] * j.grad[d]).sum();
    Ok(base + kval * (1.0 + g2).powf(1.5))
}

/// Residual of the real/complex bridge at a 3-jet:
/// `|levi_graph(v) - 16 levi_full(jet of v - x4)|`.
/// Vanishes to rounding for every twice-differentiable v.
pub fn identity_residual(jet3: &Jet2) -> Result<f64> {
    if jet3.dims != 3 {
        return Err(Error::Dimension {
            expected: 3,
            got: jet3.dims,
        });
    }
    let graph_val = levi_graph(jet3, None)?;
    let u4 = graph_jet_minus_x4(jet3);
    let c = real_to_complex_jet(&u4)?;
    Ok((graph_val - 16.0 * levi_full(&c)).abs())
}

/// 4-jet of u(x) = v(x1,x2,x3) - x4 from the 3-jet of v.
pub fn graph_jet_minus_x4(jet3: &Jet2) -> Jet2 {
    let mut p = [0.0f64; MAX_DIMS];
    p[..3].copy_from_slice(&jet3.point[..3]);
    let mut u = Jet2::new(4, p, jet3.value - p[3], [0.0; MAX_DIMS]);
    u.grad[..3].copy_from_slice(&jet3.grad[..3]);
    u.grad[3] = -1.0;
    for a in 0..3 {
        for b in a..3 {
            u.set_hess(a, b, jet3.hess(a, b));
        }
    }
    u
}

/// Rotation-reduced Levi operator for torus-invariant functions
/// f(|z1|, |z2|) on the modulus quadrant, scaled by 16 to match
/// `levi_graph` conventions:
/// `f1^2 f22 + f2^2 f11 - 2 f1 f2 f12 + f1^2 f2 / r2 + f2^2 f1 / r1`.
pub fn levi_reinhardt(j: &Jet2) -> Result<f64> {
    if j.dims != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: j.dims,
        });
    }
    let (r1, r2) = (j.point[0], j.point[1]);
    if r1 <= 0.0 || r2 <= 0.0 {
        return Err(Error::Precondition(
            "reinhardt operator needs r1, r2 > 0".into(),
        ));
    }
    let (f1, f2) = (j.grad[0], j.grad[1]);
    Ok(f1 * f1 * j.hess(1, 1) + f2 * f2 * j.hess(0, 0) - 2.0 * f1 * f2 * j.hess(0, 1)
        + f1 * f1 * f2 / r2
        + f2 * f2 * f1 / r1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{AnalyticField, Cap, Polynomial};
    use crate::grid::MAX_DIMS;
    use crate::jet::real_to_complex_jet;

    fn complex_jet_of(p: &Polynomial, x: &[f64]) -> ComplexJet2 {
        real_to_complex_jet(&p.jet(x)).unwrap()
    }

    #[test]
    fn levi_full_zero_on_pluriharmonic_re_z1() {
        let u = Polynomial::coordinate(4, 0); // Re z1 = x1
        for x in [[0.0; 4], [0.3, -0.1, 0.7, 0.2]] {
            assert_eq!(levi_full(&complex_jet_of(&u, &x)), 0.0);
        }
    }

    #[test]
    fn levi_full_zero_on_z1_modulus_squared() {
        let u = Polynomial::z1_modulus_squared();
        for x in [[0.5, 0.5, 0.5, 0.5], [0.9, -0.3, 0.1, 0.0]] {
            assert!(levi_full(&complex_jet_of(&u, &x)).abs() < 1e-14);
        }
    }

    #[test]
    fn levi_full_on_strictly_psh_modulus() {
        // u = |z1|^2 + |z2|^2 at z = (1, 0): value 1, frozen from the
        // direct term-by-term contraction (|u1|^2 H22 + |u2|^2 H11 = 1).
        let u = Polynomial::full_modulus_squared();
        let val = levi_full(&complex_jet_of(&u, &[1.0, 0.0, 0.0, 0.0]));
        assert!((val - 1.0).abs() < 1e-14, "got {val}");
        // and in general levi_full(|z|^2 jet) = |z|^2
        let x = [0.3, -0.4, 0.5, 0.1];
        let z2: f64 = x.iter().map(|v| v * v).sum();
        assert!((levi_full(&complex_jet_of(&u, &x)) - z2).abs() < 1e-14);
    }

    #[test]
    fn levi_complete_reduces_to_full_at_zero_curvature() {
        let u = Polynomial::full_modulus_squared();
        let j = complex_jet_of(&u, &[0.2, 0.1, -0.4, 0.3]);
        assert_eq!(levi_complete(&j, 0.0), levi_full(&j));
    }

    #[test]
    fn levi_complete_on_re_z1_with_unit_curvature() {
        // |du| = 1/2 so the curvature term is 1/8; levi_full = 0.
        let u = Polynomial::coordinate(4, 0);
        let j = complex_jet_of(&u, &[0.1, 0.2, 0.3, 0.4]);
        assert!((levi_complete(&j, 1.0) + 0.125).abs() < 1e-15);
    }

    #[test]
    fn levi_complete_zero_on_lower_hemisphere_graph() {
        // u = x4 - cap at the base point x = 0 with k = 1/R:
        // levi_full = 1/(8R), |du|^3 = 1/8.
        let r = 1.7;
        let cap = Cap { radius: r };
        let j3 = cap.jet(&[0.0, 0.0, 0.0]);
        let u = graph_jet_minus_x4(&j3).negated();
        let cj = real_to_complex_jet(&u).unwrap();
        assert!((levi_full(&cj) - 1.0 / (8.0 * r)).abs() < 1e-14);
        assert!((levi_complete(&cj, 1.0 / r)).abs() < 1e-14);
    }

    #[test]
    fn levi_graph_on_affine_fields() {
        let mut j = Jet2::new(3, [0.1, 0.2, 0.3], 1.0, [0.0; MAX_DIMS]);
        j.grad[0] = 2.0;
        j.grad[1] = -1.0;
        j.grad[2] = 0.5;
        assert_eq!(levi_graph(&j, None).unwrap(), 0.0);
        // any k: value 2k (1+|Dv|^2)^{3/2}
        let g2: f64 = 4.0 + 1.0 + 0.25;
        let expect = 2.0 * 0.7 * (1.0 + g2).powf(1.5);
        assert!((levi_graph(&j, Some(0.7)).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn levi_graph_on_cap_jet() {
        // frozen from the closed form: L(cap) = -2R^2 / (R^2-a^2)^{3/2}
        // at (a,0,0); with k = 1/R the normalized operator vanishes.
        let r = 1.3;
        let a = 0.8;
        let cap = Cap { radius: r };
        let j = cap.jet(&[a, 0.0, 0.0]);
        let s = (r * r - a * a).sqrt();
        let expect = -2.0 * r * r / (s * s * s);
        let got = levi_graph(&j, None).unwrap();
        assert!((got - expect).abs() < 1e-11 * expect.abs(), "{got} vs {expect}");
        let with_k = levi_graph(&j, Some(1.0 / r)).unwrap();
        assert!(with_k.abs() < 1e-10, "residual {with_k}");
    }

    #[test]
    fn unnormalized_form_needs_doubled_curvature() {
        let cap = Cap { radius: 2.0 };
        let j = cap.jet(&[0.5, -0.3, 0.2]);
        let a = levi_graph_unnormalized(&j, 2.0 / 2.0).unwrap();
        let b = levi_graph(&j, Some(1.0 / 2.0)).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn identity_residual_vanishes_on_affine() {
        let mut j = Jet2::new(3, [0.0; MAX_DIMS], 0.3, [0.0; MAX_DIMS]);
        j.grad[0] = 1.0;
        j.grad[2] = -2.0;
        assert!(identity_residual(&j).unwrap() < 1e-15);
    }

    #[test]
    fn identity_residual_vanishes_on_cap() {
        let cap = Cap { radius: 1.0 };
        let j = cap.jet(&[0.4, 0.1, -0.2]);
        let scale = levi_graph(&j, None).unwrap().abs().max(1.0);
        assert!(identity_residual(&j).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn reinhardt_operator_kills_both_nonunique_solutions() {
        // f = r1^2 and f = 1 - r2^2 are the two classical solutions.
        let mut e1 = [0u32; MAX_DIMS];
        e1[0] = 2;
        let f = Polynomial::new(2, vec![(1.0, e1)]);
        let mut e2 = [0u32; MAX_DIMS];
        e2[1] = 2;
        let g = Polynomial::new(2, vec![(1.0, [0; MAX_DIMS]), (-1.0, e2)]);
        for r in [[0.3, 0.5], [0.7, 0.2]] {
            assert!(levi_reinhardt(&f.jet(&r)).unwrap().abs() < 1e-14);
            assert!(levi_reinhardt(&g.jet(&r)).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn graph_symbol_null_vector() {
        let grad = [0.7, -0.4, 1.2];
        let a = graph_symbol(&grad);
        let n = [
            grad[0] * grad[2] - grad[1],
            grad[0] + grad[1] * grad[2],
            1.0 + grad[2] * grad[2],
        ];
        for row in 0..3 {
            let s: f64 = (0..3).map(|c| a[row][c] * n[c]).sum();
            assert!(s.abs() < 1e-12);
        }
    }
}
