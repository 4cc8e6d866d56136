//! Implicit domains given by a signed defining function plus boundary samples.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const BOUNDARY_TOL: f64 = 1e-9;

type Rho = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A bounded region `{rho < 0}` with sampled boundary `{rho = 0}`.
#[derive(Clone)]
pub struct Domain {
    dims: usize,
    rho: Rho,
    boundary_samples: Vec<Vec<f64>>,
    strongly_pseudoconvex: bool,
    tol_bd: f64,
}

impl Domain {
    pub fn new(
        dims: usize,
        rho: Rho,
        boundary_samples: Vec<Vec<f64>>,
        strongly_pseudoconvex: bool,
    ) -> Result<Self> {
        let dom = Domain {
            dims,
            rho,
            boundary_samples,
            strongly_pseudoconvex,
            tol_bd: 1e-7,
        };
        for (i, s) in dom.boundary_samples.iter().enumerate() {
            if s.len() != dims {
                return Err(Error::Dimension {
                    expected: dims,
                    got: s.len(),
                });
            }
            let r = dom.signed_defining(s);
            if r.abs() > dom.tol_bd {
                return Err(Error::Precondition(format!(
                    "boundary sample {i} off the zero set: rho = {r:.3e}"
                )));
            }
        }
        Ok(dom)
    }

    /// Ball of radius `radius`: rho(x) = |x|^2 - R^2 exactly. Boundary
    /// samples are `n_samples` seeded uniform points on the sphere.
    /// Balls are strongly pseudoconvex (in C^2 reading for dims = 4).
    pub fn ball(dims: usize, radius: f64, n_samples: usize, seed: u64) -> Self {
        let r2 = radius * radius;
        let rho: Rho = Arc::new(move |x: &[f64]| {
            x.iter().map(|v| v * v).sum::<f64>() - r2
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut samples = Vec::with_capacity(n_samples);
        while samples.len() < n_samples {
            let mut v = vec![0.0f64; dims];
            let mut norm2 = 0.0;
            for q in v.iter_mut() {
                // Box-Muller normal
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                *q = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
                norm2 += *q * *q;
            }
            if norm2 < 1e-12 {
                continue;
            }
            let s = radius / norm2.sqrt();
            for q in v.iter_mut() {
                *q *= s;
            }
            samples.push(v);
        }
        Domain {
            dims,
            rho,
            boundary_samples: samples,
            strongly_pseudoconvex: true,
            tol_bd: 1e-7,
        }
    }

    /// Axis-aligned box `[lo, hi]^dims` with boundary sampled on a face
    /// lattice of `per_axis` nodes per axis. Not strongly pseudoconvex.
    pub fn cube(dims: usize, lo: f64, hi: f64, per_axis: usize) -> Self {
        let rho: Rho = Arc::new(move |x: &[f64]| {
            x.iter()
                .map(|&v| (lo - v).max(v - hi))
                .fold(f64::NEG_INFINITY, f64::max)
        });
        let mut samples = Vec::new();
        let step = (hi - lo) / (per_axis - 1) as f64;
        // lattice on each pair of faces
        let mut lattice = vec![vec![0.0f64; dims]];
        for _ in 0..dims - 1 {
            let mut next = Vec::new();
            for base in &lattice {
                for i in 0..per_axis {
                    let mut b = base.clone();
                    b.push(lo + step * i as f64);
                    b.remove(0);
                    next.push(b);
                }
            }
            lattice = next;
        }
        for face_axis in 0..dims {
            for &face_val in &[lo, hi] {
                for tangent in &lattice {
                    let mut p = Vec::with_capacity(dims);
                    let mut t = tangent.iter();
                    for d in 0..dims {
                        if d == face_axis {
                            p.push(face_val);
                        } else {
                            p.push(*t.next().unwrap());
                        }
                    }
                    samples.push(p);
                }
            }
        }
        Domain {
            dims,
            rho,
            boundary_samples: samples,
            strongly_pseudoconvex: false,
            tol_bd: 1e-7,
        }
    }

    /// Quarter-disc `{r1^2 + r2^2 < radius^2, r_i >= 0}` in the modulus
    /// quadrant: the Reinhardt reduction of the ball in C^2. Boundary
    /// samples lie on the arc only (the axes are interior in C^2).
    pub fn reinhardt_ball(radius: f64, n_arc: usize) -> Self {
        let r2 = radius * radius;
        let rho: Rho = Arc::new(move |x: &[f64]| x[0] * x[0] + x[1] * x[1] - r2);
        let samples = (0..n_arc)
            .map(|i| {
                let t = std::f64::consts::FRAC_PI_2 * (i as f64 + 0.5) / n_arc as f64;
                vec![radius * t.cos(), radius * t.sin()]
            })
            .collect();
        Domain {
            dims: 2,
            rho,
            boundary_samples: samples,
            strongly_pseudoconvex: true,
            tol_bd: 1e-7,
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn signed_defining(&self, x: &[f64]) -> f64 {
        (self.rho)(x)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.signed_defining(x) < 0.0
    }

    pub fn boundary_samples(&self) -> &[Vec<f64>] {
        &self.boundary_samples
    }

    pub fn strongly_pseudoconvex(&self) -> bool {
        self.strongly_pseudoconvex
    }

    pub fn boundary_tol(&self) -> f64 {
        self.tol_bd
    }

    /// Project `x` onto `{rho = 0}` by damped Newton along the finite
    /// difference gradient of rho. Returns None when the iteration fails
    /// to reach `|rho| <= 1e-10 * scale`.
    pub fn project_to_boundary(&self, x: &[f64]) -> Option<Vec<f64>> {
        let mut p = x.to_vec();
        let fd = 1e-6;
        for _ in 0..40 {
            let r = self.signed_defining(&p);
            if r.abs() <= 1e-12 {
                return Some(p);
            }
            let mut grad = vec![0.0f64; self.dims];
            let mut norm2 = 0.0;
            for d in 0..self.dims {
                let mut pp = p.clone();
                pp[d] += fd;
                let mut pm = p.clone();
                pm[d] -= fd;
                grad[d] = (self.signed_defining(&pp) - self.signed_defining(&pm)) / (2.0 * fd);
                norm2 += grad[d] * grad[d];
            }
            if norm2 < 1e-30 {
                return None;
            }
            let step = r / norm2;
            for d in 0..self.dims {
                p[d] -= step * grad[d];
            }
        }
        if self.signed_defining(&p).abs() <= 1e-9 {
            Some(p)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_defining_is_exact() {
        let d = Domain::ball(3, 2.0, 16, 1);
        assert_eq!(d.signed_defining(&[0.0, 0.0, 0.0]), -4.0);
        assert_eq!(d.signed_defining(&[2.0, 0.0, 0.0]), 0.0);
        for s in d.boundary_samples() {
            assert!(d.signed_defining(s).abs() < 1e-9);
        }
    }

    #[test]
    fn projection_lands_on_sphere() {
        let d = Domain::ball(4, 1.0, 8, 2);
        let p = d.project_to_boundary(&[0.3, 0.1, -0.2, 0.4]).unwrap();
        let r: f64 = p.iter().map(|v| v * v).sum::<f64>();
        assert!((r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cube_samples_on_faces() {
        let d = Domain::cube(3, -1.0, 1.0, 5);
        for s in d.boundary_samples() {
            assert!(d.signed_defining(s).abs() < 1e-12);
        }
        assert!(d.contains(&[0.0, 0.0, 0.0]));
        assert!(!d.contains(&[1.5, 0.0, 0.0]));
    }
}
