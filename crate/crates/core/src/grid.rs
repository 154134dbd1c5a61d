//! Sampled fields on uniform boxes and second-order central differences.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::AnalyticField;
use crate::operator::DiffOperator;
use crate::scalar::Scalar;

/// Minimum nodes per axis.
pub const MIN_NODES: usize = 5;

/// Axis-aligned box `[corner, corner + extent]` with uniform spacing `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub corner: [f64; 3],
    pub extent: [f64; 3],
    pub h: f64,
}

impl GridSpec {
    /// Cube `[-half, half]³`.
    pub fn centered_cube(half: f64, h: f64) -> Self {
        GridSpec {
            corner: [-half; 3],
            extent: [2.0 * half; 3],
            h,
        }
    }

    pub fn with_spacing(&self, h: f64) -> Self {
        GridSpec { h, ..*self }
    }

    pub fn dims(&self) -> Result<[usize; 3]> {
        if !self.h.is_finite() || self.h <= 0.0 {
            return Err(Error::Grid(format!(
                "spacing must be positive, got {}",
                self.h
            )));
        }
        let mut dims = [0; 3];
        for i in 0..3 {
            let cells = self.extent[i] / self.h;
            let n = cells.round();
            if !n.is_finite() || n < 0.0 || (cells - n).abs() > 1e-9 * cells.max(1.0) {
                return Err(Error::Grid(format!(
                    "extent {} is not a multiple of spacing {}",
                    self.extent[i], self.h
                )));
            }
            dims[i] = n as usize + 1;
            if dims[i] < MIN_NODES {
                return Err(Error::Grid(format!(
                    "axis {} has {} nodes, need at least {MIN_NODES}",
                    i + 1,
                    dims[i]
                )));
            }
        }
        Ok(dims)
    }

    fn symmetric_about(&self, axis: usize) -> bool {
        let mid = self.corner[axis] + 0.5 * self.extent[axis];
        mid.abs() <= 1e-12 * self.extent[axis].abs().max(1.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    spec: GridSpec,
    dims: [usize; 3],
    /// Nodes closer than this to the boundary carry no valid data.
    margin: usize,
    samples: Vec<[Complex64; 4]>,
}

impl GridField {
    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    fn index(&self, n: [usize; 3]) -> usize {
        (n[0] * self.dims[1] + n[1]) * self.dims[2] + n[2]
    }

    fn node(&self, idx: usize) -> [usize; 3] {
        let k = idx % self.dims[2];
        let j = (idx / self.dims[2]) % self.dims[1];
        let i = idx / (self.dims[1] * self.dims[2]);
        [i, j, k]
    }

    fn position(spec: &GridSpec, n: [usize; 3]) -> [f64; 3] {
        std::array::from_fn(|i| spec.corner[i] + n[i] as f64 * spec.h)
    }

    pub fn at(&self, n: [usize; 3]) -> [Complex64; 4] {
        self.samples[self.index(n)]
    }

    fn interior(&self, n: [usize; 3], margin: usize) -> bool {
        (0..3).all(|i| n[i] >= margin && n[i] + margin < self.dims[i])
    }

    /// Pointwise difference; the margin is the larger of the two.
    pub fn difference(&self, other: &GridField) -> Result<GridField> {
        if self.dims != other.dims || self.spec != other.spec {
            return Err(Error::Grid("grid shapes differ".into()));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| std::array::from_fn(|c| a[c] - b[c]))
            .collect();
        Ok(GridField {
            spec: self.spec,
            dims: self.dims,
            margin: self.margin.max(other.margin),
            samples,
        })
    }

    /// Central-difference value of `∂^degree` at node `n`.
    fn derivative(&self, n: [usize; 3], degree: [u32; 3]) -> [Complex64; 4] {
        let h = self.spec.h;
        let shifted = |offsets: &[(usize, isize)]| {
            let mut m = n;
            for &(axis, d) in offsets {
                m[axis] = (m[axis] as isize + d) as usize;
            }
            self.at(m)
        };
        let axes: Vec<usize> = (0..3)
            .flat_map(|i| std::iter::repeat_n(i, degree[i] as usize))
            .collect();
        let combine = |w: &[(f64, [Complex64; 4])]| -> [Complex64; 4] {
            std::array::from_fn(|c| w.iter().map(|(s, v)| v[c] * *s).sum())
        };
        match axes.as_slice() {
            [] => self.at(n),
            [a] => combine(&[
                (0.5 / h, shifted(&[(*a, 1)])),
                (-0.5 / h, shifted(&[(*a, -1)])),
            ]),
            [a, b] if a == b => combine(&[
                (1.0 / (h * h), shifted(&[(*a, 1)])),
                (-2.0 / (h * h), self.at(n)),
                (1.0 / (h * h), shifted(&[(*a, -1)])),
            ]),
            [a, b] => {
                let w = 0.25 / (h * h);
                combine(&[
                    (w, shifted(&[(*a, 1), (*b, 1)])),
                    (-w, shifted(&[(*a, 1), (*b, -1)])),
                    (-w, shifted(&[(*a, -1), (*b, 1)])),
                    (w, shifted(&[(*a, -1), (*b, -1)])),
                ])
            }
            _ => unreachable!("degree checked by caller"),
        }
    }
}

/// Samples an analytic field at every node of the box.
pub fn sample<S: Scalar>(f: &AnalyticField<S>, spec: &GridSpec) -> Result<GridField> {
    let dims = spec.dims()?;
    let total = dims[0] * dims[1] * dims[2];
    let samples = (0..total)
        .into_par_iter()
        .map(|idx| {
            let k = idx % dims[2];
            let j = (idx / dims[2]) % dims[1];
            let i = idx / (dims[1] * dims[2]);
            f.evaluate(GridField::position(spec, [i, j, k]))
        })
        .collect();
    Ok(GridField {
        spec: *spec,
        dims,
        margin: 0,
        samples,
    })
}

/// Applies an operator of order ≤ 2 with central differences at interior
/// nodes. Reflections need a box symmetric about the reflection plane.
pub fn fd_apply<S: Scalar>(op: &DiffOperator<S>, g: &GridField) -> Result<GridField> {
    let mut widen = 0;
    let mut terms = Vec::new();
    for (mono, coeff) in op.terms() {
        if mono.order() > 2 {
            return Err(Error::Grid(format!(
                "operator order {} exceeds 2",
                mono.order()
            )));
        }
        for axis in mono.mask.axes() {
            if !g.spec.symmetric_about(axis - 1) {
                return Err(Error::Grid(format!(
                    "reflection on axis {axis} needs a box symmetric about x{axis} = 0"
                )));
            }
        }
        if mono.order() > 0 {
            widen = 1;
        }
        let flips: u32 = mono.mask.axes().map(|k| mono.degree[k - 1]).sum();
        let sign = if flips % 2 == 1 { -1.0 } else { 1.0 };
        let m: [[Complex64; 4]; 4] =
            std::array::from_fn(|r| std::array::from_fn(|c| coeff.get(r, c).to_c64() * sign));
        terms.push((*mono, m));
    }
    let margin = g.margin + widen;
    let total = g.samples.len();
    let samples = (0..total)
        .into_par_iter()
        .map(|idx| {
            let n = g.node(idx);
            let mut out = [Complex64::new(0.0, 0.0); 4];
            if !g.interior(n, margin) {
                return out;
            }
            for (mono, m) in &terms {
                // (∂^d R f)(x) = ± (∂^d f)(R x)
                let mut src = n;
                for axis in mono.mask.axes() {
                    src[axis - 1] = g.dims[axis - 1] - 1 - src[axis - 1];
                }
                let v = g.derivative(src, mono.degree);
                for (r, row) in m.iter().enumerate() {
                    for c in 0..4 {
                        out[r] += row[c] * v[c];
                    }
                }
            }
            out
        })
        .collect();
    Ok(GridField {
        spec: g.spec,
        dims: g.dims,
        margin,
        samples,
    })
}

/// Max complex modulus over all components at valid interior nodes.
pub fn residual_max(g: &GridField) -> f64 {
    (0..g.samples.len())
        .into_par_iter()
        .filter(|&idx| g.interior(g.node(idx), g.margin))
        .map(|idx| g.samples[idx].iter().map(|z| z.norm()).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max)
}

/// Max-norm error of `fd_apply(op, sample(f))` against `sample(apply(op, f))`.
pub fn fd_error<S: Scalar>(
    op: &DiffOperator<S>,
    f: &AnalyticField<S>,
    spec: &GridSpec,
) -> Result<f64> {
    let approx = fd_apply(op, &sample(f, spec)?)?;
    let exact = sample(&crate::field::apply_operator(op, f), spec)?;
    Ok(residual_max(&approx.difference(&exact)?))
}
