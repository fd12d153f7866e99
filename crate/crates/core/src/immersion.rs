//! Parametrized hypersurfaces with order-2 jets and their extrinsic geometry.
//!
//! Conventions: `h_ij = ĝ(∇̂_{∂_i} ∂_j X, η)` and `A = g̃⁻¹ h`, so the boundary
//! sphere with outward normal has every principal curvature equal to `−μ₀`.
//! `H = tr A` is the unnormalized mean curvature.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::ambient::AmbientModel;
use crate::domain::ParamDomain;
use crate::error::{Error, Result};
use crate::fields::{FieldContext, ScalarFieldOnMesh};

/// Position and parameter derivatives up to order two at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub position: Vec<f64>,
    /// `first[i] = ∂_i X`.
    pub first: Vec<Vec<f64>>,
    /// `second[i][j] = ∂_i ∂_j X`.
    pub second: Vec<Vec<Vec<f64>>>,
}

impl Jet {
    pub fn zeros(n: usize) -> Self {
        Jet {
            position: vec![0.0; n + 1],
            first: vec![vec![0.0; n + 1]; n],
            second: vec![vec![vec![0.0; n + 1]; n]; n],
        }
    }

    pub fn param_dim(&self) -> usize {
        self.first.len()
    }

    /// Apply an affine map `x ↦ scale·x + shift` to the jet.
    pub fn affine(mut self, scale: f64, shift: &[f64]) -> Self {
        for (p, s) in self.position.iter_mut().zip(shift) {
            *p = scale * *p + s;
        }
        for v in self.first.iter_mut().flatten() {
            *v *= scale;
        }
        for v in self.second.iter_mut().flatten().flatten() {
            *v *= scale;
        }
        self
    }
}

/// A map from the parameter domain into `ℝ^{n+1}` with analytic jets.
pub trait Parametrization: Send + Sync {
    fn param_dim(&self) -> usize;

    fn jet(&self, u: &[f64]) -> Jet;

    fn position(&self, u: &[f64]) -> Vec<f64> {
        self.jet(u).position
    }
}

/// Jets by fourth-order central differences of a position map, for
/// user-supplied immersions without analytic derivatives.
pub struct FiniteDifferenceJet<F> {
    dim: usize,
    step: f64,
    map: F,
}

impl<F> FiniteDifferenceJet<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    pub fn new(dim: usize, step: f64, map: F) -> Self {
        FiniteDifferenceJet { dim, step, map }
    }
}

const D1_OFFSETS: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
const D2_OFFSETS: [(f64, f64); 5] = [
    (-2.0, -1.0),
    (-1.0, 16.0),
    (0.0, -30.0),
    (1.0, 16.0),
    (2.0, -1.0),
];

impl<F> Parametrization for FiniteDifferenceJet<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    fn param_dim(&self) -> usize {
        self.dim
    }

    fn position(&self, u: &[f64]) -> Vec<f64> {
        (self.map)(u)
    }

    fn jet(&self, u: &[f64]) -> Jet {
        let n = self.dim;
        let h = self.step;
        let x0 = (self.map)(u);
        let m = x0.len();
        let eval = |shifts: &[(usize, f64)]| {
            let mut p = u.to_vec();
            for &(i, s) in shifts {
                p[i] += s * h;
            }
            (self.map)(&p)
        };
        let mut jet = Jet::zeros(n);
        jet.position = x0.clone();
        for i in 0..n {
            for &(s, w) in &D1_OFFSETS {
                let x = eval(&[(i, s)]);
                for k in 0..m {
                    jet.first[i][k] += w * x[k] / (12.0 * h);
                }
            }
            for &(s, w) in &D2_OFFSETS {
                let x = if s == 0.0 { x0.clone() } else { eval(&[(i, s)]) };
                for k in 0..m {
                    jet.second[i][i][k] += w * x[k] / (12.0 * h * h);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut acc = vec![0.0; m];
                for &(si, wi) in &D1_OFFSETS {
                    for &(sj, wj) in &D1_OFFSETS {
                        let x = eval(&[(i, si), (j, sj)]);
                        for k in 0..m {
                            acc[k] += wi * wj * x[k];
                        }
                    }
                }
                for v in acc.iter_mut() {
                    *v /= 144.0 * h * h;
                }
                jet.second[i][j] = acc.clone();
                jet.second[j][i] = acc;
            }
        }
        jet
    }
}

/// Fixes the global sign of the unit normal: at `point`, `η` has positive
/// Euclidean inner product with `direction`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientationSeed {
    pub point: Vec<f64>,
    pub direction: Vec<f64>,
}

/// Per-point extrinsic data.
#[derive(Debug, Clone)]
pub struct FundamentalData {
    pub u: Vec<f64>,
    pub position: Vec<f64>,
    pub tangents: Vec<Vec<f64>>,
    /// `e^{φ_c}` at the point.
    pub scale: f64,
    /// Potential `μ` at the point.
    pub mu: f64,
    pub metric: DMatrix<f64>,
    pub metric_inv: DMatrix<f64>,
    /// `√det g̃`.
    pub volume_density: f64,
    /// `ĝ`-unit normal.
    pub normal: Vec<f64>,
    pub second_form: DMatrix<f64>,
    pub shape: DMatrix<f64>,
    pub mean_curvature: f64,
    pub norm_a_sq: f64,
    pub umbilicity_sq: f64,
    /// Principal curvatures in ascending order.
    pub principal: Vec<f64>,
    /// Parameter-space principal directions (columns, `g̃`-orthonormal),
    /// matching [`FundamentalData::principal`].
    pub principal_dirs: DMatrix<f64>,
}

impl FundamentalData {
    pub fn n(&self) -> usize {
        self.tangents.len()
    }

    /// Push a parameter-space vector forward to the ambient space.
    pub fn push_forward(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.position.len()];
        for (t, &c) in self.tangents.iter().zip(v) {
            for (o, x) in out.iter_mut().zip(t) {
                *o += c * x;
            }
        }
        out
    }

    /// `g̃(v, w)` for parameter-space vectors.
    pub fn metric_inner(&self, v: &[f64], w: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..v.len() {
            for j in 0..w.len() {
                acc += self.metric[(i, j)] * v[i] * w[j];
            }
        }
        acc
    }

    /// `h(v, w)`.
    pub fn second_form_apply(&self, v: &[f64], w: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..v.len() {
            for j in 0..w.len() {
                acc += self.second_form[(i, j)] * v[i] * w[j];
            }
        }
        acc
    }

    /// Maximum deviation of a principal curvature from `H/n`.
    pub fn max_umbilic_deviation(&self) -> f64 {
        let mean = self.mean_curvature / self.n() as f64;
        self.principal
            .iter()
            .map(|k| (k - mean).abs())
            .fold(0.0, f64::max)
    }
}

/// A parametrized hypersurface in an ambient model.
#[derive(Clone)]
pub struct Immersion {
    model: AmbientModel,
    domain: ParamDomain,
    map: Arc<dyn Parametrization>,
    declared_h: Option<f64>,
    sign: f64,
}

impl fmt::Debug for Immersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Immersion")
            .field("model", &self.model)
            .field("domain", &self.domain)
            .field("declared_h", &self.declared_h)
            .field("sign", &self.sign)
            .finish()
    }
}

/// Generalized cross product: `⟨N, w⟩ = det[v_1, …, v_n, w]`.
pub fn generalized_cross(vectors: &[Vec<f64>]) -> Vec<f64> {
    let n = vectors.len();
    let m = n + 1;
    let mut out = vec![0.0; m];
    for (k, o) in out.iter_mut().enumerate() {
        let minor = DMatrix::from_fn(n, n, |r, c| {
            let row = if r < k { r } else { r + 1 };
            vectors[c][row]
        });
        let sign = if (k + n) % 2 == 0 { 1.0 } else { -1.0 };
        *o = sign * minor.determinant();
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `g^{1/2}` and `g^{-1/2}` of a symmetric positive-definite matrix.
fn sqrt_and_inv_sqrt(g: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(g.clone());
    let q = &eig.eigenvectors;
    let d = eig.eigenvalues.map(|l| l.sqrt());
    let di = d.map(|l| 1.0 / l);
    let s = q * DMatrix::from_diagonal(&d) * q.transpose();
    let si = q * DMatrix::from_diagonal(&di) * q.transpose();
    (s, si)
}

impl Immersion {
    /// Build an immersion, fixing the normal's sign from the seed.
    pub fn new(
        model: AmbientModel,
        domain: ParamDomain,
        map: Arc<dyn Parametrization>,
        declared_h: Option<f64>,
        seed: OrientationSeed,
    ) -> Result<Self> {
        if map.param_dim() != domain.dim() || model.dim() != domain.dim() + 1 {
            return Err(Error::InvalidModel(format!(
                "dimension mismatch: map n = {}, domain n = {}, ambient {}",
                map.param_dim(),
                domain.dim(),
                model.dim()
            )));
        }
        let mut imm = Immersion {
            model,
            domain,
            map,
            declared_h,
            sign: 1.0,
        };
        let jet = imm.map.jet(&seed.point);
        let raw = generalized_cross(&jet.first);
        let proj = dot(&raw, &seed.direction);
        if proj == 0.0 {
            return Err(Error::InvalidModel(
                "orientation seed direction is tangent to the hypersurface".into(),
            ));
        }
        imm.sign = proj.signum();
        Ok(imm)
    }

    pub fn model(&self) -> &AmbientModel {
        &self.model
    }

    pub fn domain(&self) -> &ParamDomain {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.domain.dim()
    }

    pub fn declared_h(&self) -> Option<f64> {
        self.declared_h
    }

    pub fn parametrization(&self) -> &Arc<dyn Parametrization> {
        &self.map
    }

    pub fn jet(&self, u: &[f64]) -> Jet {
        self.map.jet(u)
    }

    pub fn position(&self, u: &[f64]) -> Vec<f64> {
        self.map.position(u)
    }

    /// Same surface with a replaced parametrization/domain/declared `H`,
    /// keeping the model and the orientation sign convention of `seed`.
    pub fn with_map(
        &self,
        domain: ParamDomain,
        map: Arc<dyn Parametrization>,
        declared_h: Option<f64>,
        seed: OrientationSeed,
    ) -> Result<Self> {
        Immersion::new(self.model, domain, map, declared_h, seed)
    }

    /// `∇̂_V W` for the ambient vector field `∂_i∂_j X` style: the flat second
    /// derivative `d2` corrected by `Γ̂(v, w)` at `x`.
    pub fn covariant_second(&self, x: &[f64], d2: &[f64], v: &[f64], w: &[f64]) -> Result<Vec<f64>> {
        let gamma = self.model.conformal_christoffels(x)?;
        let corr = gamma.contract(v, w);
        Ok(d2.iter().zip(corr).map(|(a, b)| a + b).collect())
    }

    pub fn fundamental_data(&self, u: &[f64]) -> Result<FundamentalData> {
        let jet = self.map.jet(u);
        self.fundamental_data_from_jet(u, &jet)
    }

    pub fn fundamental_data_from_jet(&self, u: &[f64], jet: &Jet) -> Result<FundamentalData> {
        let n = self.n();
        let x = &jet.position;
        let scale = self.model.scale(x)?;
        let conf = scale * scale;
        let mu = self.model.potential_mu(x)?;

        let euclid = DMatrix::from_fn(n, n, |i, j| dot(&jet.first[i], &jet.first[j]));
        let jac = DMatrix::from_fn(n + 1, n, |k, i| jet.first[i][k]);
        let sv = jac.singular_values();
        let ratio = sv.min() / sv.max();
        if !(ratio >= 1e-10) {
            return Err(Error::RankDeficient { ratio });
        }
        let metric = euclid * conf;
        let metric_inv = metric
            .clone()
            .try_inverse()
            .ok_or(Error::RankDeficient { ratio })?;
        let volume_density = metric.determinant().sqrt();

        let raw = generalized_cross(&jet.first);
        let raw_norm = dot(&raw, &raw).sqrt();
        let normal: Vec<f64> = raw.iter().map(|v| self.sign * v / (scale * raw_norm)).collect();

        let gamma = self.model.conformal_christoffels(x)?;
        let second_form = DMatrix::from_fn(n, n, |i, j| {
            let corr = gamma.contract(&jet.first[i], &jet.first[j]);
            let acc: f64 = (0..x.len())
                .map(|k| (jet.second[i][j][k] + corr[k]) * normal[k])
                .sum();
            conf * acc
        });
        let second_form = (&second_form + second_form.transpose()) * 0.5;
        let shape = &metric_inv * &second_form;
        let mean_curvature = shape.trace();
        let norm_a_sq = (&shape * &shape).trace();
        let traceless = &shape - DMatrix::identity(n, n) * (mean_curvature / n as f64);
        let umbilicity_sq = (&traceless * &traceless).trace().max(0.0);

        let (_, inv_sqrt) = sqrt_and_inv_sqrt(&metric);
        let sym = &inv_sqrt * &second_form * &inv_sqrt;
        let sym = (&sym + sym.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let principal = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let dirs = &inv_sqrt * &eig.eigenvectors;
        let principal_dirs = DMatrix::from_fn(n, n, |r, c| dirs[(r, order[c])]);

        Ok(FundamentalData {
            u: u.to_vec(),
            position: x.clone(),
            tangents: jet.first.clone(),
            scale,
            mu,
            metric,
            metric_inv,
            volume_density,
            normal,
            second_form,
            shape,
            mean_curvature,
            norm_a_sq,
            umbilicity_sq,
            principal,
            principal_dirs,
        })
    }

    /// `ĝ`-inner product of ambient vectors at parameter point data `fd`.
    pub fn ambient_inner(&self, fd: &FundamentalData, v: &[f64], w: &[f64]) -> f64 {
        fd.scale * fd.scale * dot(v, w)
    }

    /// Gauss curvature `K = κ₁κ₂ + c` and the consistency residual
    /// `|φ|² + 2(K − c) − H²/2` (surfaces only).
    pub fn gauss_curvature_2d(&self, u: &[f64]) -> Result<(f64, f64)> {
        if self.n() != 2 {
            return Err(Error::hypothesis("Gauss curvature check needs n = 2"));
        }
        let fd = self.fundamental_data(u)?;
        Ok(gauss_curvature_from(&fd, self.model.curvature()))
    }

    /// Pointwise Simons residual
    /// `|φ|² p_H(|φ|) − ((n+2)/n)|∇|φ||² + ½Δ|φ|²` at a grid node.
    pub fn simons_residual(&self, ctx: &Arc<FieldContext>, node: usize) -> Result<f64> {
        let h = self
            .declared_h
            .ok_or_else(|| Error::hypothesis("constant mean curvature not declared"))?;
        simons_residual_at(ctx, &ctx.phi_sq_field(), &ctx.phi_abs_field(), h, node)
    }
}

pub fn gauss_curvature_from(fd: &FundamentalData, c: f64) -> (f64, f64) {
    let k = fd.principal[0] * fd.principal[1] + c;
    let h = fd.mean_curvature;
    let residual = fd.umbilicity_sq + 2.0 * (k - c) - 0.5 * h * h;
    (k, residual)
}

/// Simons residual from precomputed `|φ|²` and `|φ|` fields.
pub fn simons_residual_at(
    ctx: &FieldContext,
    phi_sq: &ScalarFieldOnMesh,
    phi_abs: &ScalarFieldOnMesh,
    h: f64,
    node: usize,
) -> Result<f64> {
    if !ctx.grid().is_interior(node, 2) {
        return Err(Error::hypothesis(
            "Simons residual needs a node two cells inside the domain",
        ));
    }
    let n = ctx.n();
    let t = phi_abs.value(node);
    let lhs = phi_sq.value(node) * p_h(n, h, ctx.curvature(), t);
    let grad = phi_abs.surface_gradient_sq(node)?;
    let lap = phi_sq.laplace_beltrami(node)?;
    Ok(lhs - (n as f64 + 2.0) / n as f64 * grad + 0.5 * lap)
}

/// Simons residual over every node whose stencils stay off the grid faces.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SimonsSweep {
    pub min: f64,
    /// `ε(h)`: largest `|residual|`.
    pub max_abs: f64,
    pub evaluated: usize,
}

pub fn simons_sweep(imm: &Immersion, ctx: &Arc<FieldContext>) -> Result<SimonsSweep> {
    let h = imm
        .declared_h()
        .ok_or_else(|| Error::hypothesis("constant mean curvature not declared"))?;
    let phi_sq = ctx.phi_sq_field();
    let phi_abs = ctx.phi_abs_field();
    let grid = ctx.grid();
    let margin = (ctx.order() / 2 + 1).max(2);
    let nodes: Vec<usize> = (0..grid.len())
        .filter(|&f| grid.is_interior(f, margin) && ctx.is_valid(f))
        .collect();
    let values: Vec<f64> = nodes
        .par_iter()
        .map(|&f| simons_residual_at(ctx, &phi_sq, &phi_abs, h, f))
        .collect::<Result<_>>()?;
    Ok(SimonsSweep {
        min: values.iter().cloned().fold(f64::INFINITY, f64::min),
        max_abs: values.iter().fold(0.0, |m, v| m.max(v.abs())),
        evaluated: values.len(),
    })
}

/// `p_H(t) = t² + ((n−2)/√(n(n−1)))|H|t − H²/n − nc`.
pub fn p_h(n: usize, h: f64, c: f64, t: f64) -> f64 {
    let nf = n as f64;
    t * t + (nf - 2.0) / (nf * (nf - 1.0)).sqrt() * h.abs() * t - h * h / nf - nf * c
}
