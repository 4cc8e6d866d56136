//! Regular grids over R^2, R^3 and R^4 carrying sampled scalar fields.

use crate::domain::Domain;
use crate::error::{Error, Result};

pub const MAX_DIMS: usize = 4;

/// Node classification. Interior nodes have every axis neighbor inside
/// interior or boundary; boundary nodes carry pinned Dirichlet values;
/// exterior nodes are ignored by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum NodeKind {
    Exterior = 0,
    Boundary = 1,
    Interior = 2,
}

/// A real-valued function sampled on a uniform axis-aligned grid.
///
/// Spacing is identical on all axes. Values are stored row-major with
/// axis 0 slowest. The mask partitions nodes into interior, boundary and
/// exterior per [`NodeKind`].
#[derive(Clone)]
pub struct ScalarGrid {
    dims: usize,
    shape: [usize; MAX_DIMS],
    mins: [f64; MAX_DIMS],
    h: f64,
    strides: [usize; MAX_DIMS],
    len: usize,
    pub values: Vec<f64>,
    pub mask: Vec<NodeKind>,
}

impl ScalarGrid {
    /// Grid with `shape[d]` nodes per axis starting at `mins[d]`, spacing `h`.
    /// All nodes start as interior with value 0.
    pub fn new(dims: usize, shape: &[usize], mins: &[f64], h: f64) -> Result<Self> {
        if dims < 2 || dims > MAX_DIMS {
            return Err(Error::Dimension {
                expected: MAX_DIMS,
                got: dims,
            });
        }
        if shape.len() != dims || mins.len() != dims {
            return Err(Error::Dimension {
                expected: dims,
                got: shape.len().max(mins.len()),
            });
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Grid(format!("spacing must be positive, got {h}")));
        }
        let mut sh = [1usize; MAX_DIMS];
        let mut mn = [0.0f64; MAX_DIMS];
        for d in 0..dims {
            if shape[d] < 3 {
                return Err(Error::Grid(format!(
                    "axis {d} needs at least 3 nodes, got {}",
                    shape[d]
                )));
            }
            sh[d] = shape[d];
            mn[d] = mins[d];
        }
        let mut strides = [0usize; MAX_DIMS];
        let mut len = 1usize;
        for d in (0..dims).rev() {
            strides[d] = len;
            len = len
                .checked_mul(sh[d])
                .ok_or_else(|| Error::Grid("grid too large".into()))?;
        }
        Ok(ScalarGrid {
            dims,
            shape: sh,
            mins: mn,
            h,
            strides,
            len,
            values: vec![0.0; len],
            mask: vec![NodeKind::Interior; len],
        })
    }

    /// Grid covering `[lo, hi]^dims` with spacing as close to `h_target`
    /// as an integer node count allows (node count chosen so h <= h_target).
    pub fn cube(dims: usize, lo: f64, hi: f64, h_target: f64) -> Result<Self> {
        let n = ((hi - lo) / h_target).ceil() as usize + 1;
        let h = (hi - lo) / (n - 1) as f64;
        let shape = vec![n; dims];
        let mins = vec![lo; dims];
        ScalarGrid::new(dims, &shape, &mins, h)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape[..self.dims]
    }

    pub fn mins(&self) -> &[f64] {
        &self.mins[..self.dims]
    }

    pub fn maxs(&self) -> Vec<f64> {
        (0..self.dims)
            .map(|d| self.mins[d] + self.h * (self.shape[d] - 1) as f64)
            .collect()
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        self.strides[axis]
    }

    #[inline]
    pub fn index(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        for d in 0..self.dims {
            debug_assert!(coords[d] < self.shape[d]);
            idx += coords[d] * self.strides[d];
        }
        idx
    }

    #[inline]
    pub fn coords(&self, mut idx: usize) -> [usize; MAX_DIMS] {
        let mut c = [0usize; MAX_DIMS];
        for d in 0..self.dims {
            c[d] = idx / self.strides[d];
            idx %= self.strides[d];
        }
        c
    }

    /// Physical coordinates of a node.
    #[inline]
    pub fn point(&self, idx: usize) -> [f64; MAX_DIMS] {
        let c = self.coords(idx);
        let mut p = [0.0f64; MAX_DIMS];
        for d in 0..self.dims {
            p[d] = self.mins[d] + self.h * c[d] as f64;
        }
        p
    }

    /// Neighbor index one step along `axis` (`dir` is +1 or -1), if it
    /// stays on the grid.
    #[inline]
    pub fn neighbor(&self, idx: usize, axis: usize, dir: isize) -> Option<usize> {
        let c = self.coords(idx)[axis] as isize + dir;
        if c < 0 || c as usize >= self.shape[axis] {
            None
        } else {
            Some((idx as isize + dir * self.strides[axis] as isize) as usize)
        }
    }

    #[inline]
    pub fn kind(&self, idx: usize) -> NodeKind {
        self.mask[idx]
    }

    /// Sample `f` at every node.
    pub fn fill_with<F: Fn(&[f64]) -> f64>(&mut self, f: F) {
        for i in 0..self.len {
            let p = self.point(i);
            self.values[i] = f(&p[..self.dims]);
        }
    }

    /// Classify nodes against a domain: exterior where rho > 0, boundary
    /// where a non-exterior node touches the grid edge or an exterior axis
    /// neighbor, interior elsewhere. Exterior values are zeroed.
    pub fn classify(&mut self, dom: &Domain) -> Result<()> {
        if dom.dims() != self.dims {
            return Err(Error::Dimension {
                expected: self.dims,
                got: dom.dims(),
            });
        }
        let mut inside = vec![false; self.len];
        for i in 0..self.len {
            let p = self.point(i);
            inside[i] = dom.signed_defining(&p[..self.dims]) <= 0.0;
        }
        for i in 0..self.len {
            if !inside[i] {
                self.mask[i] = NodeKind::Exterior;
                self.values[i] = 0.0;
                continue;
            }
            let c = self.coords(i);
            let mut boundary = false;
            for d in 0..self.dims {
                if c[d] == 0 || c[d] + 1 == self.shape[d] {
                    boundary = true;
                    break;
                }
                if !inside[i - self.strides[d]] || !inside[i + self.strides[d]] {
                    boundary = true;
                    break;
                }
            }
            self.mask[i] = if boundary {
                NodeKind::Boundary
            } else {
                NodeKind::Interior
            };
        }
        Ok(())
    }

    /// Indices of interior nodes, ascending.
    pub fn interior_nodes(&self) -> Vec<usize> {
        (0..self.len)
            .filter(|&i| self.mask[i] == NodeKind::Interior)
            .collect()
    }

    /// Indices of boundary nodes, ascending.
    pub fn boundary_nodes(&self) -> Vec<usize> {
        (0..self.len)
            .filter(|&i| self.mask[i] == NodeKind::Boundary)
            .collect()
    }

    /// Check the mask/value invariants: finite values on non-exterior
    /// nodes, and every interior node with all axis neighbors non-exterior.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.len {
            match self.mask[i] {
                NodeKind::Exterior => {}
                kind => {
                    if !self.values[i].is_finite() {
                        return Err(Error::Grid(format!("non-finite value at node {i}")));
                    }
                    if kind == NodeKind::Interior {
                        for d in 0..self.dims {
                            let ok = self.neighbor(i, d, 1).map_or(false, |j| {
                                self.mask[j] != NodeKind::Exterior
                            }) && self.neighbor(i, d, -1).map_or(false, |j| {
                                self.mask[j] != NodeKind::Exterior
                            });
                            if !ok {
                                return Err(Error::Grid(format!(
                                    "interior node {i} has exterior axis neighbor"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// True when the full 3^dims stencil around `idx` exists and is
    /// non-exterior (what `fd_jet` requires).
    pub fn full_stencil_available(&self, idx: usize) -> bool {
        if self.mask[idx] != NodeKind::Interior {
            return false;
        }
        let c = self.coords(idx);
        for d in 0..self.dims {
            if c[d] == 0 || c[d] + 1 == self.shape[d] {
                return false;
            }
        }
        // walk all offsets in {-1,0,1}^dims
        let mut off = [-1isize; MAX_DIMS];
        loop {
            let mut j = idx as isize;
            for d in 0..self.dims {
                j += off[d] * self.strides[d] as isize;
            }
            if self.mask[j as usize] == NodeKind::Exterior {
                return false;
            }
            // increment odometer
            let mut d = 0;
            loop {
                if d == self.dims {
                    return true;
                }
                off[d] += 1;
                if off[d] <= 1 {
                    break;
                }
                off[d] = -1;
                d += 1;
            }
        }
    }

    /// Range (min, max) over non-exterior nodes.
    pub fn value_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.len {
            if self.mask[i] != NodeKind::Exterior {
                lo = lo.min(self.values[i]);
                hi = hi.max(self.values[i]);
            }
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;

    #[test]
    fn index_roundtrip() {
        let g = ScalarGrid::new(3, &[4, 5, 6], &[0.0, 0.0, 0.0], 0.1).unwrap();
        for idx in [0usize, 7, 63, 119] {
            let c = g.coords(idx);
            assert_eq!(g.index(&c[..3]), idx);
        }
    }

    #[test]
    fn classify_ball_mask_partition() {
        let dom = Domain::ball(3, 1.0, 64, 7);
        let mut g = ScalarGrid::cube(3, -1.2, 1.2, 0.1).unwrap();
        g.classify(&dom).unwrap();
        g.validate().unwrap();
        let n_int = g.interior_nodes().len();
        let n_bd = g.boundary_nodes().len();
        assert!(n_int > 0 && n_bd > 0);
        // center node must be interior
        let c: Vec<usize> = g.shape().iter().map(|n| n / 2).collect();
        assert_eq!(g.kind(g.index(&c)), NodeKind::Interior);
    }

    #[test]
    fn rejects_bad_spacing() {
        assert!(ScalarGrid::new(3, &[4, 4, 4], &[0.0; 3], 0.0).is_err());
        assert!(ScalarGrid::new(3, &[4, 4, 4], &[0.0; 3], -1.0).is_err());
    }
}
