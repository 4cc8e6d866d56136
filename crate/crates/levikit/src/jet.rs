//! Second-order jets in real and complex coordinates, and the bridge
//! between them under z1 = x1 + i x2, z2 = x3 + i x4.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{NodeKind, ScalarGrid, MAX_DIMS};

/// Packed upper-triangle index for a symmetric dxd matrix, d <= 4.
#[inline]
pub fn ut_index(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    // row-major upper triangle for d = 4; valid for smaller d too
    const ROW_START: [usize; 4] = [0, 4, 7, 9];
    ROW_START[a] + (b - a)
}

/// Real second-order Taylor data at a point. The Hessian is stored as a
/// packed upper triangle so symmetry is exact by construction.
#[derive(Debug, Clone, Copy)]
pub struct Jet2 {
    pub dims: usize,
    pub point: [f64; MAX_DIMS],
    pub value: f64,
    pub grad: [f64; MAX_DIMS],
    hess_ut: [f64; 10],
}

impl Jet2 {
    pub fn new(dims: usize, point: [f64; MAX_DIMS], value: f64, grad: [f64; MAX_DIMS]) -> Self {
        Jet2 {
            dims,
            point,
            value,
            grad,
            hess_ut: [0.0; 10],
        }
    }

    #[inline]
    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hess_ut[ut_index(i, j)]
    }

    #[inline]
    pub fn set_hess(&mut self, i: usize, j: usize, v: f64) {
        self.hess_ut[ut_index(i, j)] = v;
    }

    /// Frobenius norm of the Hessian.
    pub fn hess_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dims {
            for j in 0..self.dims {
                let v = self.hess(i, j);
                s += v * v;
            }
        }
        s.sqrt()
    }

    /// Value of the associated quadratic model at `x`.
    pub fn eval_quadratic(&self, x: &[f64]) -> f64 {
        let mut v = self.value;
        for i in 0..self.dims {
            let di = x[i] - self.point[i];
            v += self.grad[i] * di;
            for j in 0..self.dims {
                v += 0.5 * self.hess(i, j) * di * (x[j] - self.point[j]);
            }
        }
        v
    }

    /// Jet of -u at the same point.
    pub fn negated(&self) -> Jet2 {
        let mut out = *self;
        out.value = -out.value;
        for g in out.grad.iter_mut() {
            *g = -*g;
        }
        for hx in out.hess_ut.iter_mut() {
            *hx = -*hx;
        }
        out
    }
}

/// Complex second-order data at a point of C^2: holomorphic and
/// antiholomorphic gradients plus the Hermitian mixed block u_{alpha
/// beta-bar}. Only the data the Levi operators consume.
#[derive(Debug, Clone, Copy)]
pub struct ComplexJet2 {
    pub point: [Complex64; 2],
    pub dz: [Complex64; 2],
    pub dzbar: [Complex64; 2],
    mixed: [[Complex64; 2]; 2],
}

impl ComplexJet2 {
    /// Validates the Hermitian invariant; the stored block is symmetrized
    /// exactly so downstream contractions see conj-symmetry to the bit.
    pub fn new(
        point: [Complex64; 2],
        dz: [Complex64; 2],
        dzbar: [Complex64; 2],
        mixed: [[Complex64; 2]; 2],
    ) -> Result<Self> {
        let scale = mixed
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let mut asym = (mixed[0][0].im).abs().max((mixed[1][1].im).abs());
        asym = asym.max((mixed[0][1] - mixed[1][0].conj()).norm());
        if asym > 1e-12 * scale {
            return Err(Error::NotHermitian(asym));
        }
        let mut m = mixed;
        m[0][0] = Complex64::new(mixed[0][0].re, 0.0);
        m[1][1] = Complex64::new(mixed[1][1].re, 0.0);
        m[1][0] = m[0][1].conj();
        Ok(ComplexJet2 {
            point,
            dz,
            dzbar,
            mixed: m,
        })
    }

    #[inline]
    pub fn mixed(&self, alpha: usize, beta: usize) -> Complex64 {
        self.mixed[alpha][beta]
    }

    /// |du|^2 = sum_alpha u_alpha u_alpha-bar (real for real-valued u).
    pub fn grad_sq(&self) -> f64 {
        (self.dz[0] * self.dzbar[0] + self.dz[1] * self.dzbar[1]).re
    }

    pub fn negated(&self) -> ComplexJet2 {
        ComplexJet2 {
            point: self.point,
            dz: [-self.dz[0], -self.dz[1]],
            dzbar: [-self.dzbar[0], -self.dzbar[1]],
            mixed: [
                [-self.mixed[0][0], -self.mixed[0][1]],
                [-self.mixed[1][0], -self.mixed[1][1]],
            ],
        }
    }

    /// Pull the jet back along the unitary change of coordinates
    /// `z |-> U z`: returns the jet of `v(z) = u(U z)` at `U^* p`.
    pub fn unitary_pullback(&self, u: &[[Complex64; 2]; 2]) -> ComplexJet2 {
        // v_zeta = U^T u_w ; H_v = U^T H_u conj(U)
        let ut = [[u[0][0], u[1][0]], [u[0][1], u[1][1]]];
        let dz = [
            ut[0][0] * self.dz[0] + ut[0][1] * self.dz[1],
            ut[1][0] * self.dz[0] + ut[1][1] * self.dz[1],
        ];
        let dzbar = [dz[0].conj(), dz[1].conj()];
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let mut s = Complex64::new(0.0, 0.0);
                for g in 0..2 {
                    for d in 0..2 {
                        s += ut[a][g] * self.mixed[g][d] * u[d][b].conj();
                    }
                }
                m[a][b] = s;
            }
        }
        // point transforms by U^{-1} = U^*; not needed by the operators but
        // kept consistent for completeness
        let p = [
            u[0][0].conj() * self.point[0] + u[1][0].conj() * self.point[1],
            u[0][1].conj() * self.point[0] + u[1][1].conj() * self.point[1],
        ];
        ComplexJet2 {
            point: p,
            dz,
            dzbar,
            mixed: m,
        }
    }
}

/// Central-difference jet at an interior node. Second order, exact on
/// globally quadratic fields.
pub fn fd_jet(field: &ScalarGrid, node: usize) -> Result<Jet2> {
    let dims = field.dims();
    if field.kind(node) != NodeKind::Interior {
        return Err(Error::Stencil {
            node,
            what: "node is not interior",
        });
    }
    if !field.full_stencil_available(node) {
        return Err(Error::Stencil {
            node,
            what: "3^d stencil incomplete",
        });
    }
    let h = field.spacing();
    let v = &field.values;
    let mut jet = Jet2::new(dims, field.point(node), v[node], [0.0; MAX_DIMS]);
    for d in 0..dims {
        let s = field.stride(d);
        let vp = v[node + s];
        let vm = v[node - s];
        jet.grad[d] = (vp - vm) / (2.0 * h);
        jet.set_hess(d, d, (vp - 2.0 * v[node] + vm) / (h * h));
    }
    for a in 0..dims {
        for b in (a + 1)..dims {
            let sa = field.stride(a);
            let sb = field.stride(b);
            let cross = (v[node + sa + sb] - v[node + sa - sb] - v[node - sa + sb]
                + v[node - sa - sb])
                / (4.0 * h * h);
            jet.set_hess(a, b, cross);
        }
    }
    Ok(jet)
}

/// Complex jet of a real jet over R^4 under z1 = x1 + i x2, z2 = x3 + i x4:
/// u_{z_a} = (u_{x_{2a-1}} - i u_{x_{2a}})/2 and the mixed block from the
/// real Hessian. The result satisfies the Hermitian invariant exactly.
pub fn real_to_complex_jet(j: &Jet2) -> Result<ComplexJet2> {
    if j.dims != 4 {
        return Err(Error::Dimension {
            expected: 4,
            got: j.dims,
        });
    }
    let point = [
        Complex64::new(j.point[0], j.point[1]),
        Complex64::new(j.point[2], j.point[3]),
    ];
    let dz = [
        Complex64::new(j.grad[0], -j.grad[1]) * 0.5,
        Complex64::new(j.grad[2], -j.grad[3]) * 0.5,
    ];
    let dzbar = [dz[0].conj(), dz[1].conj()];
    let mut mixed = [[Complex64::new(0.0, 0.0); 2]; 2];
    for alpha in 0..2 {
        for beta in 0..2 {
            let a = 2 * alpha;
            let b = 2 * alpha + 1;
            let c = 2 * beta;
            let d = 2 * beta + 1;
            let re = 0.25 * (j.hess(a, c) + j.hess(b, d));
            let im = 0.25 * (j.hess(a, d) - j.hess(b, c));
            mixed[alpha][beta] = Complex64::new(re, im);
        }
    }
    mixed[1][0] = mixed[0][1].conj();
    mixed[0][0] = Complex64::new(mixed[0][0].re, 0.0);
    mixed[1][1] = Complex64::new(mixed[1][1].re, 0.0);
    Ok(ComplexJet2 {
        point,
        dz,
        dzbar,
        mixed,
    })
}

/// Reconstruct a real jet from a complex one, taking the holomorphic
/// second-order part to be zero (it is not carried by `ComplexJet2`).
/// `real_to_complex_jet` of the result recovers the input exactly for
/// jets of real-valued functions.
pub fn complex_to_real_jet(cj: &ComplexJet2) -> Jet2 {
    let point = [
        cj.point[0].re,
        cj.point[0].im,
        cj.point[1].re,
        cj.point[1].im,
    ];
    let mut jet = Jet2::new(4, point, 0.0, [0.0; MAX_DIMS]);
    for alpha in 0..2 {
        jet.grad[2 * alpha] = 2.0 * cj.dz[alpha].re;
        jet.grad[2 * alpha + 1] = -2.0 * cj.dz[alpha].im;
    }
    // diagonal Hermitian entries: H_aa * |z_a|^2 has real Hessian 2 H_aa
    // on both of its real coordinates
    for alpha in 0..2 {
        let haa = cj.mixed(alpha, alpha).re;
        jet.set_hess(2 * alpha, 2 * alpha, 2.0 * haa);
        jet.set_hess(2 * alpha + 1, 2 * alpha + 1, 2.0 * haa);
    }
    // off-diagonal: 2 Re(H_12 z1 zbar2) contributes p = Re H_12, q = Im H_12
    let p = cj.mixed(0, 1).re;
    let q = cj.mixed(0, 1).im;
    jet.set_hess(0, 2, 2.0 * p);
    jet.set_hess(1, 3, 2.0 * p);
    jet.set_hess(0, 3, 2.0 * q);
    jet.set_hess(1, 2, -2.0 * q);
    jet
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;

    fn grid_on(f: impl Fn(&[f64]) -> f64, dims: usize, h: f64) -> ScalarGrid {
        let mut g = ScalarGrid::cube(dims, -1.0, 1.0, h).unwrap();
        g.fill_with(f);
        g
    }

    #[test]
    fn fd_jet_exact_on_x1_squared() {
        let g = grid_on(|x| x[0] * x[0], 3, 0.125);
        for node in g.interior_nodes().into_iter().step_by(97) {
            if !g.full_stencil_available(node) {
                continue;
            }
            let j = fd_jet(&g, node).unwrap();
            let p = g.point(node);
            assert!((j.grad[0] - 2.0 * p[0]).abs() < 1e-10);
            assert!(j.grad[1].abs() < 1e-12 && j.grad[2].abs() < 1e-12);
            assert!((j.hess(0, 0) - 2.0).abs() < 1e-9);
            assert!(j.hess(1, 1).abs() < 1e-9 && j.hess(0, 1).abs() < 1e-9);
        }
    }

    #[test]
    fn fd_jet_zero_on_constant() {
        let g = grid_on(|_| 3.5, 3, 0.25);
        let node = g.index(&[4, 4, 4]);
        let j = fd_jet(&g, node).unwrap();
        for d in 0..3 {
            assert_eq!(j.grad[d], 0.0);
            assert_eq!(j.hess(d, d), 0.0);
        }
    }

    #[test]
    fn fd_jet_second_order_on_sine() {
        // Richardson check: halving h divides the error by about 4.
        let errs: Vec<f64> = [0.1, 0.05]
            .iter()
            .map(|&h| {
                let g = grid_on(|x| x[0].sin(), 3, h);
                // pick the node closest to the origin-ish interior point
                let c: Vec<usize> = g.shape().iter().map(|n| n / 2).collect();
                let node = g.index(&c);
                let j = fd_jet(&g, node).unwrap();
                let p = g.point(node);
                let eg = (j.grad[0] - p[0].cos()).abs();
                let eh = (j.hess(0, 0) + p[0].sin()).abs();
                eg + eh
            })
            .collect();
        assert!(
            errs[0] / errs[1] > 3.0,
            "expected ~4x error reduction, got {:?}",
            errs
        );
    }

    #[test]
    fn fd_jet_rejects_boundary_node() {
        let dom = Domain::ball(3, 0.8, 32, 3);
        let mut g = ScalarGrid::cube(3, -1.0, 1.0, 0.1).unwrap();
        g.fill_with(|x| x[0]);
        g.classify(&dom).unwrap();
        let bd = g.boundary_nodes();
        assert!(fd_jet(&g, bd[0]).is_err());
    }

    #[test]
    fn complex_jet_of_linear_fields() {
        // u = x1: dz = (1/2, 0); u = x4: dz = (0, -i/2)
        let mut j = Jet2::new(4, [0.0; 4], 0.0, [0.0; 4]);
        j.grad[0] = 1.0;
        let c = real_to_complex_jet(&j).unwrap();
        assert!((c.dz[0] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(c.dz[1].norm() < 1e-15);

        let mut j = Jet2::new(4, [0.0; 4], 0.0, [0.0; 4]);
        j.grad[3] = 1.0;
        let c = real_to_complex_jet(&j).unwrap();
        assert!(c.dz[0].norm() < 1e-15);
        assert!((c.dz[1] - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn complex_jet_of_z1_modulus_squared() {
        // u = x1^2 + x2^2 = |z1|^2: mixed[0][0] = 1, all else 0
        let mut j = Jet2::new(4, [0.3, -0.2, 0.1, 0.4], 0.0, [0.0; 4]);
        j.set_hess(0, 0, 2.0);
        j.set_hess(1, 1, 2.0);
        let c = real_to_complex_jet(&j).unwrap();
        assert!((c.mixed(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(c.mixed(0, 1).norm() < 1e-15);
        assert!(c.mixed(1, 1).norm() < 1e-15);
    }

    #[test]
    fn non_hermitian_block_rejected() {
        let z = Complex64::new(0.0, 0.0);
        let bad = [[Complex64::new(0.0, 1.0), z], [z, z]];
        assert!(ComplexJet2::new([z, z], [z, z], [z, z], bad).is_err());
    }
}
