//! Scalar fields sampled on the parameter grid and their metric-aware
//! finite-difference operators.
//!
//! Differentiation happens in parameter space; the metric comes from the
//! immersion's exact jets. Interior stencils are centered (order 2 or 4);
//! where a centered stencil would leave an interval axis, a shifted stencil
//! of the same order is used and the evaluation is flagged as one-sided.

use std::sync::Arc;

use rayon::prelude::*;

use crate::domain::{Face, Grid, Side};
use crate::error::{Error, Result};
use crate::immersion::Immersion;

/// Finite-difference weights for the `deriv`-th derivative at 0 on the given
/// (unit-spaced) offsets (Fornberg's recursion).
pub fn fornberg_weights(offsets: &[f64], deriv: usize) -> Vec<f64> {
    let m = offsets.len();
    assert!(m > deriv, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; deriv + 1]; m];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    for i in 1..m {
        let mn = i.min(deriv);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[deriv]).collect()
}

/// Integer stencil offsets for a derivative at grid position `pos` of `count`
/// nodes; the flag is set when the stencil is not centered.
fn stencil_offsets(
    pos: usize,
    count: usize,
    periodic: bool,
    deriv: usize,
    order: usize,
) -> (Vec<isize>, bool) {
    let half = (order / 2) as isize;
    let centered: Vec<isize> = (-half..=half).collect();
    if periodic || (pos as isize - half >= 0 && pos as isize + half < count as isize) {
        return (centered, false);
    }
    let width = (order + deriv) as isize;
    let start = (pos as isize - width / 2).clamp(0, count as isize - width);
    ((start..start + width).map(|j| j - pos as isize).collect(), true)
}

/// Per-node metric data of an immersion on a grid.
#[derive(Debug)]
pub struct FieldContext {
    grid: Grid,
    n: usize,
    order: usize,
    curvature: f64,
    valid: Vec<bool>,
    metric_inv: Vec<f64>,
    sqrt_det: Vec<f64>,
    phi_sq: Vec<f64>,
    mean_curvature: Vec<f64>,
}

impl FieldContext {
    /// Sample the immersion's geometry on `grid`. Rank-deficient nodes
    /// (chart poles) are marked invalid.
    pub fn new(immersion: &Immersion, grid: Grid, order: usize) -> Result<Arc<Self>> {
        if order != 2 && order != 4 {
            return Err(Error::Usage(format!("stencil order {order} is not 2 or 4")));
        }
        let n = immersion.n();
        let rows: Vec<Option<(Vec<f64>, f64, f64, f64)>> = (0..grid.len())
            .into_par_iter()
            .map(|f| {
                let u = grid.point_flat(f);
                immersion.fundamental_data(&u).ok().map(|fd| {
                    (
                        fd.metric_inv.as_slice().to_vec(),
                        fd.volume_density,
                        fd.umbilicity_sq,
                        fd.mean_curvature,
                    )
                })
            })
            .collect();
        let len = grid.len();
        let mut ctx = FieldContext {
            grid,
            n,
            order,
            curvature: immersion.model().curvature(),
            valid: vec![false; len],
            metric_inv: vec![0.0; len * n * n],
            sqrt_det: vec![0.0; len],
            phi_sq: vec![0.0; len],
            mean_curvature: vec![0.0; len],
        };
        for (f, row) in rows.into_iter().enumerate() {
            if let Some((inv, det, phi, h)) = row {
                ctx.valid[f] = true;
                ctx.metric_inv[f * n * n..(f + 1) * n * n].copy_from_slice(&inv);
                ctx.sqrt_det[f] = det;
                ctx.phi_sq[f] = phi;
                ctx.mean_curvature[f] = h;
            }
        }
        Ok(Arc::new(ctx))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    pub fn is_valid(&self, node: usize) -> bool {
        self.valid[node]
    }

    pub fn g_inv(&self, node: usize, i: usize, j: usize) -> f64 {
        // nalgebra storage is column-major; the inverse metric is symmetric
        self.metric_inv[node * self.n * self.n + j * self.n + i]
    }

    pub fn sqrt_det(&self, node: usize) -> f64 {
        self.sqrt_det[node]
    }

    pub fn mean_curvature(&self, node: usize) -> f64 {
        self.mean_curvature[node]
    }

    /// `√det` of the induced metric on the face through `node` normal to `axis`.
    pub fn face_density(&self, node: usize, axis: usize) -> f64 {
        if !self.valid[node] {
            return 0.0;
        }
        self.sqrt_det[node] * self.g_inv(node, axis, axis).sqrt()
    }

    /// `|φ|²` sampled on the grid.
    pub fn phi_sq_field(self: &Arc<Self>) -> ScalarFieldOnMesh {
        ScalarFieldOnMesh::from_values(self.clone(), self.phi_sq.clone())
    }

    /// `|φ|` sampled on the grid.
    pub fn phi_abs_field(self: &Arc<Self>) -> ScalarFieldOnMesh {
        ScalarFieldOnMesh::from_values(self.clone(), self.phi_sq.iter().map(|v| v.sqrt()).collect())
    }

    /// Conormal components `ν^i` at a node of `face` (outward, unit).
    pub fn conormal(&self, node: usize, face: Face) -> Result<Vec<f64>> {
        if !self.valid[node] {
            return Err(Error::RankDeficient { ratio: 0.0 });
        }
        let k = face.axis;
        let norm = self.g_inv(node, k, k).sqrt();
        let s = face.side.outward_sign();
        Ok((0..self.n).map(|i| s * self.g_inv(node, i, k) / norm).collect())
    }

    /// Composite-rule weights along one axis: trapezoid on periodic axes,
    /// Simpson on intervals with an even cell count, trapezoid otherwise.
    pub fn axis_weights(&self, axis: usize) -> Vec<f64> {
        let count = self.grid.counts()[axis];
        let h = self.grid.spacing()[axis];
        if self.grid.domain().axis(axis).is_periodic() {
            return vec![h; count];
        }
        let cells = count - 1;
        if cells % 2 == 0 {
            (0..count)
                .map(|i| {
                    let w = if i == 0 || i == cells {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    w * h / 3.0
                })
                .collect()
        } else {
            (0..count)
                .map(|i| if i == 0 || i == cells { 0.5 * h } else { h })
                .collect()
        }
    }

    /// `∫_Σ f` of grid values.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        let weights: Vec<Vec<f64>> = (0..self.n).map(|a| self.axis_weights(a)).collect();
        let mut acc = 0.0;
        for f in 0..self.grid.len() {
            if !self.valid[f] {
                continue;
            }
            let w: f64 = (0..self.n)
                .map(|a| weights[a][self.grid.axis_index(f, a)])
                .product();
            acc += w * self.sqrt_det[f] * values[f];
        }
        acc
    }

    /// `∫_face f` for values given on the face nodes (in `grid.face_nodes` order).
    pub fn integrate_face(&self, face: Face, nodes: &[usize], values: &[f64]) -> f64 {
        let weights: Vec<Vec<f64>> = (0..self.n).map(|a| self.axis_weights(a)).collect();
        let mut acc = 0.0;
        for (&f, &v) in nodes.iter().zip(values) {
            let density = self.face_density(f, face.axis);
            if density == 0.0 || !v.is_finite() {
                continue;
            }
            let w: f64 = (0..self.n)
                .filter(|&a| a != face.axis)
                .map(|a| weights[a][self.grid.axis_index(f, a)])
                .product();
            acc += w * density * v;
        }
        acc
    }

    /// Derivative of order `deriv` along `axis` of the node function `value`;
    /// the flag reports a one-sided stencil.
    pub fn partial<F: Fn(usize) -> f64>(
        &self,
        node: usize,
        axis: usize,
        deriv: usize,
        order: usize,
        value: F,
    ) -> Result<(f64, bool)> {
        let count = self.grid.counts()[axis];
        let periodic = self.grid.domain().axis(axis).is_periodic();
        let pos = self.grid.axis_index(node, axis);
        let (offsets, one_sided) = stencil_offsets(pos, count, periodic, deriv, order);
        let w = fornberg_weights(&offsets.iter().map(|&o| o as f64).collect::<Vec<_>>(), deriv);
        let h = self.grid.spacing()[axis].powi(deriv as i32);
        let mut acc = 0.0;
        for (o, wk) in offsets.iter().zip(w) {
            let m = self
                .grid
                .shifted(node, axis, *o)
                .ok_or_else(|| Error::Usage("stencil left the grid".into()))?;
            if !self.valid[m] {
                return Err(Error::RankDeficient { ratio: 0.0 });
            }
            acc += wk * value(m);
        }
        Ok((acc / h, one_sided))
    }

    /// One-sided three-point derivative along the face axis, pointing into
    /// increasing parameter.
    pub fn one_sided_partial<F: Fn(usize) -> f64>(
        &self,
        node: usize,
        face: Face,
        value: F,
    ) -> Result<f64> {
        let dir: isize = match face.side {
            Side::Lo => 1,
            Side::Hi => -1,
        };
        let offsets = [0.0, dir as f64, 2.0 * dir as f64];
        let w = fornberg_weights(&offsets, 1);
        let h = self.grid.spacing()[face.axis];
        let mut acc = 0.0;
        for (k, wk) in w.iter().enumerate() {
            let m = self
                .grid
                .shifted(node, face.axis, dir * k as isize)
                .ok_or_else(|| Error::Usage("one-sided stencil left the grid".into()))?;
            acc += wk * value(m);
        }
        Ok(acc / h)
    }
}

/// Values of a scalar function on the grid of a [`FieldContext`].
#[derive(Debug, Clone)]
pub struct ScalarFieldOnMesh {
    ctx: Arc<FieldContext>,
    values: Vec<f64>,
}

impl ScalarFieldOnMesh {
    pub fn from_values(ctx: Arc<FieldContext>, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), ctx.grid.len(), "field shape must match the grid");
        ScalarFieldOnMesh { ctx, values }
    }

    /// Sample `f(u)` at every grid node.
    pub fn from_fn<F: Fn(&[f64]) -> f64 + Sync>(ctx: Arc<FieldContext>, f: F) -> Self {
        let values = (0..ctx.grid.len())
            .into_par_iter()
            .map(|i| f(&ctx.grid.point_flat(i)))
            .collect();
        ScalarFieldOnMesh { ctx, values }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, node: usize) -> f64 {
        self.values[node]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        ScalarFieldOnMesh {
            ctx: self.ctx.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Self {
        ScalarFieldOnMesh {
            ctx: self.ctx.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    /// Parameter gradient `∂_i f`; the flag reports one-sided stencils.
    pub fn param_gradient(&self, node: usize) -> Result<(Vec<f64>, bool)> {
        let ctx = &self.ctx;
        let mut flagged = false;
        let mut out = Vec::with_capacity(ctx.n);
        for a in 0..ctx.n {
            let (d, one) = ctx.partial(node, a, 1, ctx.order, |m| self.values[m])?;
            flagged |= one;
            out.push(d);
        }
        Ok((out, flagged))
    }

    /// `|∇_Σ f|² = g̃^{ij} ∂_i f ∂_j f`.
    pub fn surface_gradient_sq(&self, node: usize) -> Result<f64> {
        Ok(self.surface_gradient_sq_flagged(node)?.0)
    }

    pub fn surface_gradient_sq_flagged(&self, node: usize) -> Result<(f64, bool)> {
        let ctx = &self.ctx;
        if !ctx.valid[node] {
            return Err(Error::RankDeficient { ratio: 0.0 });
        }
        let (d, flagged) = self.param_gradient(node)?;
        let mut acc = 0.0;
        for i in 0..ctx.n {
            for j in 0..ctx.n {
                acc += ctx.g_inv(node, i, j) * d[i] * d[j];
            }
        }
        Ok((acc, flagged))
    }

    /// `Δ_Σ f = g̃^{ij}∂_i∂_j f + (1/√g̃) ∂_i(√g̃ g̃^{ij}) ∂_j f`.
    pub fn laplace_beltrami(&self, node: usize) -> Result<f64> {
        Ok(self.laplace_beltrami_flagged(node)?.0)
    }

    pub fn laplace_beltrami_flagged(&self, node: usize) -> Result<(f64, bool)> {
        let ctx = &self.ctx;
        let n = ctx.n;
        let p = ctx.order;
        if !ctx.valid[node] {
            return Err(Error::RankDeficient { ratio: 0.0 });
        }
        let mut flagged = false;
        let (grad, one) = self.param_gradient(node)?;
        flagged |= one;
        let mut acc = 0.0;
        for i in 0..n {
            for j in i..n {
                let dij = if i == j {
                    let (d, one) = ctx.partial(node, i, 2, p, |m| self.values[m])?;
                    flagged |= one;
                    d
                } else {
                    let (d, one) = ctx.partial(node, i, 1, p, |m| {
                        ctx.partial(m, j, 1, p, |k| self.values[k])
                            .map(|r| r.0)
                            .unwrap_or(f64::NAN)
                    })?;
                    flagged |= one;
                    d
                };
                let weight = if i == j { 1.0 } else { 2.0 };
                acc += weight * ctx.g_inv(node, i, j) * dij;
            }
        }
        if acc.is_nan() {
            return Err(Error::RankDeficient { ratio: 0.0 });
        }
        let sd = ctx.sqrt_det[node];
        for i in 0..n {
            for (j, gj) in grad.iter().enumerate() {
                let (d, one) =
                    ctx.partial(node, i, 1, p, |m| ctx.sqrt_det[m] * ctx.g_inv(m, i, j))?;
                flagged |= one;
                acc += d * gj / sd;
            }
        }
        Ok((acc, flagged))
    }

    /// `ν(f) = ĝ(∇_Σ f, ν)` at a node of a boundary face, with a one-sided
    /// three-point stencil across the face and regular stencils along it.
    pub fn conormal_derivative(&self, node: usize, face: Face) -> Result<f64> {
        let ctx = &self.ctx;
        if !ctx.grid.on_face(node, face) {
            return Err(Error::Usage("conormal derivative off the face".into()));
        }
        let nu = ctx.conormal(node, face)?;
        let scale = nu.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut acc = 0.0;
        for (a, nu_a) in nu.iter().enumerate() {
            if nu_a.abs() <= 1e-13 * scale {
                continue;
            }
            let d = if a == face.axis {
                ctx.one_sided_partial(node, face, |m| self.values[m])?
            } else {
                ctx.partial(node, a, 1, ctx.order, |m| self.values[m])?.0
            };
            acc += nu_a * d;
        }
        Ok(acc)
    }

    /// `∫_Σ f`.
    pub fn integrate(&self) -> f64 {
        self.ctx.integrate(&self.values)
    }

    /// Conormal derivative on every node of a face, in `face_nodes` order;
    /// invalid nodes (poles) yield NaN.
    pub fn conormal_on_face(&self, face: Face) -> (Vec<usize>, Vec<f64>) {
        let nodes = self.ctx.grid.face_nodes(face);
        let vals = nodes
            .par_iter()
            .map(|&f| self.conormal_derivative(f, face).unwrap_or(f64::NAN))
            .collect();
        (nodes, vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fornberg_reproduces_classic_stencils() {
        let w = fornberg_weights(&[-1.0, 0.0, 1.0], 2);
        assert_eq!(w, vec![1.0, -2.0, 1.0]);
        let w = fornberg_weights(&[-2.0, -1.0, 0.0, 1.0, 2.0], 1);
        let expect = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
        let w = fornberg_weights(&[0.0, -1.0, -2.0], 1);
        let expect = [1.5, -2.0, 0.5];
        for (a, b) in w.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn stencils_shift_near_edges() {
        assert_eq!(stencil_offsets(5, 20, false, 1, 4), (vec![-2, -1, 0, 1, 2], false));
        let (o, one) = stencil_offsets(0, 20, false, 2, 4);
        assert!(one);
        assert_eq!(o, vec![0, 1, 2, 3, 4, 5]);
        let (o, one) = stencil_offsets(19, 20, false, 1, 4);
        assert!(one);
        assert_eq!(o, vec![-4, -3, -2, -1, 0]);
        assert!(!stencil_offsets(0, 20, true, 2, 4).1);
    }
}
