//! Probe functions for hull computation and local-maximum-property tests:
//! moduli of holomorphic polynomials and strictly plurisubharmonic
//! quadratics. Points of R^4 are read as (z1, z2) = (x1+ix2, x3+ix4).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::grid::MAX_DIMS;

#[inline]
pub fn to_c2(x: &[f64]) -> [Complex64; 2] {
    [
        Complex64::new(x[0], x[1]),
        Complex64::new(x[2], x[3]),
    ]
}

#[inline]
pub fn from_c2(z: &[Complex64; 2]) -> [f64; MAX_DIMS] {
    [z[0].re, z[0].im, z[1].re, z[1].im]
}

/// Holomorphic polynomial in (z1, z2): term list (coefficient, a, b)
/// for coefficient * z1^a z2^b.
#[derive(Debug, Clone, Serialize)]
pub struct CPoly {
    pub terms: Vec<(Complex64, u32, u32)>,
}

impl CPoly {
    pub fn monomial(a: u32, b: u32) -> Self {
        CPoly {
            terms: vec![(Complex64::new(1.0, 0.0), a, b)],
        }
    }

    pub fn random(deg_max: u32, rng: &mut ChaCha8Rng) -> Self {
        let mut terms = Vec::new();
        for a in 0..=deg_max {
            for b in 0..=(deg_max - a) {
                let re: f64 = rng.gen_range(-1.0..1.0);
                let im: f64 = rng.gen_range(-1.0..1.0);
                terms.push((Complex64::new(re, im), a, b));
            }
        }
        CPoly { terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|&(_, a, b)| a + b).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[Complex64; 2]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, a, b) in &self.terms {
            acc += c * z[0].powu(a) * z[1].powu(b);
        }
        acc
    }

    pub fn modulus(&self, z: &[Complex64; 2]) -> f64 {
        self.eval(z).norm()
    }
}

/// Strictly plurisubharmonic quadratic probe
/// `psi(z) = Re Q(z - p) + lambda |z - p|^2` with Q a holomorphic
/// polynomial of degree <= 2 and zero constant term, so psi(p) = 0 and
/// the complex Hessian is lambda * Id exactly.
#[derive(Debug, Clone, Serialize)]
pub struct PshProbe {
    pub center: [f64; MAX_DIMS],
    pub pluriharmonic: CPoly,
    pub lambda: f64,
    pub strictness: f64,
}

impl PshProbe {
    pub fn new(center: [f64; MAX_DIMS], pluriharmonic: CPoly, lambda: f64) -> Self {
        PshProbe {
            center,
            pluriharmonic,
            lambda,
            strictness: 0.0,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let p = to_c2(&self.center);
        let z = to_c2(x);
        let w = [z[0] - p[0], z[1] - p[1]];
        let d2 = w[0].norm_sqr() + w[1].norm_sqr();
        self.pluriharmonic.eval(&w).re + self.lambda * d2
    }
}

/// A hull/l.m.p. probe: either |P| for holomorphic P or a strictly psh
/// quadratic.
#[derive(Debug, Clone, Serialize)]
pub enum Probe {
    PolyModulus(CPoly),
    Psh(PshProbe),
}

impl Probe {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Probe::PolyModulus(p) => p.modulus(&to_c2(x)),
            Probe::Psh(p) => p.eval(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProbeClass {
    PolynomialModulus,
    PshQuadratic,
    Mixed,
}

/// Recipe for a finite probe family: a deterministic battery plus
/// `count` seeded random draws, and optional explicit extras.
#[derive(Clone, Serialize)]
pub struct ProbeFamily {
    pub class: ProbeClass,
    pub deg_max: u32,
    pub count: usize,
    pub seed: u64,
    #[serde(skip)]
    pub extra: Vec<Probe>,
}

impl ProbeFamily {
    pub fn polynomial(deg_max: u32, count: usize, seed: u64) -> Self {
        ProbeFamily {
            class: ProbeClass::PolynomialModulus,
            deg_max,
            count,
            seed,
            extra: Vec::new(),
        }
    }

    pub fn psh(count: usize, seed: u64) -> Self {
        ProbeFamily {
            class: ProbeClass::PshQuadratic,
            deg_max: 2,
            count,
            seed,
            extra: Vec::new(),
        }
    }

    pub fn mixed(deg_max: u32, count: usize, seed: u64) -> Self {
        ProbeFamily {
            class: ProbeClass::Mixed,
            deg_max,
            count,
            seed,
            extra: Vec::new(),
        }
    }

    pub fn with_extra(mut self, extra: Vec<Probe>) -> Self {
        self.extra = extra;
        self
    }

    /// Expand the recipe into a concrete probe list. Deterministic for a
    /// fixed recipe: battery first, then seeded random draws, then extras.
    pub fn materialize(&self) -> Vec<Probe> {
        let mut probes = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        if matches!(self.class, ProbeClass::PolynomialModulus | ProbeClass::Mixed) {
            for a in 0..=self.deg_max {
                for b in 0..=(self.deg_max - a) {
                    if a + b == 0 {
                        continue;
                    }
                    probes.push(Probe::PolyModulus(CPoly::monomial(a, b)));
                }
            }
            for _ in 0..self.count {
                probes.push(Probe::PolyModulus(CPoly::random(self.deg_max, &mut rng)));
            }
        }
        if matches!(self.class, ProbeClass::PshQuadratic | ProbeClass::Mixed) {
            // directed battery: +- real/imaginary parts of the linear and
            // quadratic monomials, with a small isotropic psh part. These
            // slice sharply along coordinate level sets.
            let lambda = 1e-6;
            let mut battery = Vec::new();
            let units = [
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
            ];
            for &(a, b) in &[(1u32, 0u32), (0, 1), (2, 0), (0, 2), (1, 1)] {
                for &u in &units {
                    battery.push(CPoly {
                        terms: vec![(u, a, b)],
                    });
                }
            }
            for q in battery {
                probes.push(Probe::Psh(PshProbe::new([0.0; MAX_DIMS], q, lambda)));
            }
            for _ in 0..self.count {
                let mut terms = Vec::new();
                for &(a, b) in &[(1u32, 0u32), (0, 1), (2, 0), (0, 2), (1, 1)] {
                    let re: f64 = rng.gen_range(-1.0..1.0);
                    let im: f64 = rng.gen_range(-1.0..1.0);
                    terms.push((Complex64::new(re, im), a, b));
                }
                let lam: f64 = rng.gen_range(1e-6..0.3);
                let center = [
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(-0.5..0.5),
                ];
                probes.push(Probe::Psh(PshProbe::new(center, CPoly { terms }, lam)));
            }
        }
        probes.extend(self.extra.iter().cloned());
        probes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_modulus() {
        let p = CPoly::monomial(2, 1);
        let z = [Complex64::new(0.0, 2.0), Complex64::new(3.0, 0.0)];
        assert!((p.modulus(&z) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn psh_probe_vanishes_at_center_and_grows() {
        let q = CPoly::monomial(1, 0); // Re(z1 - p1)
        let probe = PshProbe::new([0.5, 0.0, 0.0, 0.0], q, 0.25);
        assert_eq!(probe.eval(&[0.5, 0.0, 0.0, 0.0]), 0.0);
        // at z1 = 0.5 + i: Re part 0, lambda |i|^2 = 0.25
        assert!((probe.eval(&[0.5, 1.0, 0.0, 0.0]) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn family_is_deterministic() {
        let a = ProbeFamily::polynomial(4, 10, 42).materialize();
        let b = ProbeFamily::polynomial(4, 10, 42).materialize();
        assert_eq!(a.len(), b.len());
        let z = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)];
        let x = from_c2(&z);
        for (pa, pb) in a.iter().zip(&b) {
            assert_eq!(pa.eval(&x), pb.eval(&x));
        }
    }
}
