//! Dirichlet boundary data: sampled traces on the domain boundary with
//! nearest-sample blended evaluation, plus the bump construction that
//! turns an arbitrary trace into a minimal defining function (single
//! strict max peak, single strict min peak).

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::grid::ScalarGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpRule {
    /// Inverse-distance blend of the k nearest samples.
    NearestBlend { k: usize },
}

/// Boundary trace g as samples (point, value) on the boundary of the
/// paired domain.
#[derive(Clone)]
pub struct BoundaryData {
    dims: usize,
    points: Vec<f64>, // flat, dims per sample
    values: Vec<f64>,
    rule: InterpRule,
    peak_points: Option<(Vec<f64>, Vec<f64>)>,
    index: BucketIndex,
}

impl BoundaryData {
    pub fn from_samples(
        dims: usize,
        points: Vec<Vec<f64>>,
        values: Vec<f64>,
        rule: InterpRule,
    ) -> Result<Self> {
        if points.len() != values.len() || points.is_empty() {
            return Err(Error::Config(
                "boundary data needs matching nonempty point/value lists".into(),
            ));
        }
        let mut flat = Vec::with_capacity(points.len() * dims);
        for p in &points {
            if p.len() != dims {
                return Err(Error::Dimension {
                    expected: dims,
                    got: p.len(),
                });
            }
            flat.extend_from_slice(p);
        }
        let index = BucketIndex::build(dims, &flat);
        Ok(BoundaryData {
            dims,
            points: flat,
            values,
            rule,
            peak_points: None,
            index,
        })
    }

    /// Evaluate `g` on the domain's own boundary samples.
    pub fn from_fn(dom: &Domain, g: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let pts: Vec<Vec<f64>> = dom.boundary_samples().to_vec();
        let vals = pts.iter().map(|p| g(p)).collect();
        BoundaryData::from_samples(dom.dims(), pts, vals, InterpRule::NearestBlend { k: 4 })
    }

    /// Sample `g` at the boundary-node projections of a classified grid.
    /// This adapts the sample set to the grid so that pinning a boundary
    /// node looks up (nearly) its own projection.
    pub fn from_fn_on_grid(
        dom: &Domain,
        grid: &ScalarGrid,
        g: impl Fn(&[f64]) -> f64,
    ) -> Result<Self> {
        let mut pts = Vec::new();
        let mut vals = Vec::new();
        for idx in grid.boundary_nodes() {
            let p = grid.point(idx);
            if let Some(q) = dom.project_to_boundary(&p[..grid.dims()]) {
                vals.push(g(&q));
                pts.push(q);
            }
        }
        if pts.is_empty() {
            return Err(Error::Precondition(
                "no boundary node projected onto the zero set".into(),
            ));
        }
        BoundaryData::from_samples(dom.dims(), pts, vals, InterpRule::NearestBlend { k: 4 })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sample_point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dims..(i + 1) * self.dims]
    }

    pub fn sample_value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn value_range(&self) -> (f64, f64) {
        let lo = self.values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self
            .values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    pub fn peak_points(&self) -> Option<(&[f64], &[f64])> {
        self.peak_points
            .as_ref()
            .map(|(p, q)| (p.as_slice(), q.as_slice()))
    }

    /// Inverse-distance blend of the k nearest samples at `x`; exact hit
    /// short-circuits to the sample value.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let InterpRule::NearestBlend { k } = self.rule;
        let nearest = self.index.k_nearest(&self.points, x, k);
        let mut wsum = 0.0;
        let mut acc = 0.0;
        for &(i, d2) in &nearest {
            if d2 < 1e-24 {
                return self.values[i];
            }
            let w = 1.0 / d2.sqrt();
            wsum += w;
            acc += w * self.values[i];
        }
        acc / wsum
    }

    /// Minimal defining construction: add a C^1 cubic-spline cap bump at
    /// `p` (positive, making p the unique strict max) and a dip at `q`
    /// (negative, unique strict min), each supported in a ball of radius
    /// `support`. Sample values keep their signs away from the bumps.
    pub fn make_minimal(&self, p: &[f64], q: &[f64], support: f64) -> Result<BoundaryData> {
        let (lo, hi) = self.value_range();
        let amp = 2.0 * (hi - lo) + 1.0;
        let bump = |t: f64| -> f64 {
            if t >= 1.0 {
                0.0
            } else {
                1.0 - 3.0 * t * t + 2.0 * t * t * t
            }
        };
        let dist = |a: &[f64], b: &[f64]| -> f64 {
            a.iter()
                .zip(b)
                .map(|(u, v)| (u - v) * (u - v))
                .sum::<f64>()
                .sqrt()
        };
        let mut out = self.clone();
        for i in 0..out.values.len() {
            let pt = self.sample_point(i).to_vec();
            out.values[i] += amp * bump(dist(&pt, p) / support);
            out.values[i] -= amp * bump(dist(&pt, q) / support);
        }
        out.peak_points = Some((p.to_vec(), q.to_vec()));
        out.validate_peaks()?;
        Ok(out)
    }

    /// Declare existing peak points (for traces already minimal).
    pub fn with_peaks(mut self, p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        self.peak_points = Some((p, q));
        self.validate_peaks()?;
        Ok(self)
    }

    /// Check the peak invariant over the sample set: strict max only
    /// nearest p, strict min only nearest q.
    pub fn validate_peaks(&self) -> Result<()> {
        let (p, q) = match &self.peak_points {
            Some(v) => v,
            None => return Ok(()),
        };
        let dist2 = |a: &[f64], b: &[f64]| -> f64 {
            a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
        };
        let mut max_i = 0;
        let mut min_i = 0;
        for i in 1..self.values.len() {
            if self.values[i] > self.values[max_i] {
                max_i = i;
            }
            if self.values[i] < self.values[min_i] {
                min_i = i;
            }
        }
        // the argmax sample must be the sample closest to p (same for q),
        // and the extreme values must be strict over the rest
        let closest = |target: &[f64]| -> usize {
            let mut best = 0;
            let mut bd = f64::INFINITY;
            for i in 0..self.values.len() {
                let d = dist2(self.sample_point(i), target);
                if d < bd {
                    bd = d;
                    best = i;
                }
            }
            best
        };
        if closest(p) != max_i {
            return Err(Error::Precondition(
                "declared max peak is not the sample-set argmax".into(),
            ));
        }
        if closest(q) != min_i {
            return Err(Error::Precondition(
                "declared min peak is not the sample-set argmin".into(),
            ));
        }
        for i in 0..self.values.len() {
            if i != max_i && self.values[i] >= self.values[max_i] {
                return Err(Error::Precondition("max peak is not strict".into()));
            }
            if i != min_i && self.values[i] <= self.values[min_i] {
                return Err(Error::Precondition("min peak is not strict".into()));
            }
        }
        Ok(())
    }
}

/// Uniform-bin spatial index for nearest-sample queries. Deterministic:
/// candidates are scanned in ascending sample order within rings of bins.
#[derive(Clone)]
struct BucketIndex {
    dims: usize,
    mins: Vec<f64>,
    cell: f64,
    shape: Vec<usize>,
    buckets: Vec<Vec<u32>>,
}

impl BucketIndex {
    fn build(dims: usize, flat: &[f64]) -> BucketIndex {
        let n = flat.len() / dims;
        let mut mins = vec![f64::INFINITY; dims];
        let mut maxs = vec![f64::NEG_INFINITY; dims];
        for i in 0..n {
            for d in 0..dims {
                let v = flat[i * dims + d];
                mins[d] = mins[d].min(v);
                maxs[d] = maxs[d].max(v);
            }
        }
        let extent = (0..dims)
            .map(|d| maxs[d] - mins[d])
            .fold(0.0f64, f64::max)
            .max(1e-9);
        // aim for ~2 samples per occupied bucket along the boundary
        let target_bins = (n as f64).powf(1.0 / dims.max(1) as f64).ceil() as usize * 2;
        let cell = extent / target_bins.max(1) as f64;
        let shape: Vec<usize> = (0..dims)
            .map(|d| (((maxs[d] - mins[d]) / cell).floor() as usize + 1).max(1))
            .collect();
        let total: usize = shape.iter().product();
        let mut buckets = vec![Vec::new(); total];
        for i in 0..n {
            let b = Self::bucket_of(dims, &mins, cell, &shape, &flat[i * dims..(i + 1) * dims]);
            buckets[b].push(i as u32);
        }
        BucketIndex {
            dims,
            mins,
            cell,
            shape,
            buckets,
        }
    }

    fn bucket_of(dims: usize, mins: &[f64], cell: f64, shape: &[usize], x: &[f64]) -> usize {
        let mut idx = 0;
        for d in 0..dims {
            let mut c = ((x[d] - mins[d]) / cell).floor() as isize;
            c = c.clamp(0, shape[d] as isize - 1);
            idx = idx * shape[d] + c as usize;
        }
        idx
    }

    fn k_nearest(&self, flat: &[f64], x: &[f64], k: usize) -> Vec<(usize, f64)> {
        let dims = self.dims;
        let center: Vec<isize> = (0..dims)
            .map(|d| {
                (((x[d] - self.mins[d]) / self.cell).floor() as isize)
                    .clamp(0, self.shape[d] as isize - 1)
            })
            .collect();
        let mut best: Vec<(usize, f64)> = Vec::with_capacity(k + 1);
        let mut ring = 0usize;
        let max_ring = self.shape.iter().max().cloned().unwrap_or(1) + 1;
        loop {
            // scan every bucket whose Chebyshev distance from center == ring
            let mut found_any = false;
            let mut cursor = vec![-(ring as isize); dims];
            'outer: loop {
                let cheb = cursor.iter().map(|v| v.abs()).max().unwrap_or(0) as usize;
                if cheb == ring {
                    let mut idx = 0usize;
                    let mut ok = true;
                    for d in 0..dims {
                        let c = center[d] + cursor[d];
                        if c < 0 || c >= self.shape[d] as isize {
                            ok = false;
                            break;
                        }
                        idx = idx * self.shape[d] + c as usize;
                    }
                    if ok {
                        found_any = true;
                        for &si in &self.buckets[idx] {
                            let i = si as usize;
                            let mut d2 = 0.0;
                            for d in 0..dims {
                                let diff = flat[i * dims + d] - x[d];
                                d2 += diff * diff;
                            }
                            let pos = best.partition_point(|&(_, bd)| bd <= d2);
                            best.insert(pos, (i, d2));
                            if best.len() > k {
                                best.pop();
                            }
                        }
                    }
                }
                // odometer over cursor in [-ring, ring]^dims
                let mut d = 0;
                loop {
                    if d == dims {
                        break 'outer;
                    }
                    cursor[d] += 1;
                    if cursor[d] <= ring as isize {
                        break;
                    }
                    cursor[d] = -(ring as isize);
                    d += 1;
                }
            }
            // stop once we have k hits and the next ring cannot beat them
            if best.len() >= k {
                let worst = best.last().unwrap().1.sqrt();
                if (ring as f64) * self.cell > worst + self.cell {
                    break;
                }
            }
            ring += 1;
            if ring > max_ring && (found_any || best.len() >= k || ring > 4 * max_ring) {
                break;
            }
        }
        best
    }
}
