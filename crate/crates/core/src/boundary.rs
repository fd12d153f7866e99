//! The boundary trace `∂Σ ⊂ ∂B`: its geometry inside the boundary sphere,
//! the free-boundary residuals and the boundary identities for `|φ|²`.

use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Axis, Face, ParamDomain};
use crate::error::{Error, Result};
use crate::fields::FieldContext;
use crate::immersion::{FundamentalData, Immersion};

/// Principal curvature of `∂B` in magnitude: the constant `μ₀` of the
/// boundary identities (`μ₀ / |x|_ĝ` away from the gauge normalization).
pub fn boundary_mu(imm: &Immersion) -> f64 {
    -imm.model().boundary_sphere_shape().0
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Geometry of `Σ` and of `∂Σ ⊂ ∂B` at one boundary point.
#[derive(Debug, Clone, Serialize)]
pub struct BoundarySample {
    pub face: Face,
    pub u: Vec<f64>,
    /// Grid node, when the sample was taken on a [`FieldContext`] grid.
    pub node: Option<usize>,
    /// Conormal `ν` in parameter components `ν^i`.
    pub conormal_param: Vec<f64>,
    /// `ĝ(ν, x̂)` with `x̂` the unit position direction.
    pub cos_angle: f64,
    /// `sin∠(ν, x̂)`, from the component of `ν` orthogonal to `x̂`.
    pub sin_angle: f64,
    /// `|x|_ĝ` minus its value on `∂B`.
    pub gauge_defect: f64,
    pub mean_curvature: f64,
    pub phi_sq: f64,
    /// `κ_n = ĝ(Aν, ν)`.
    pub kappa_n: f64,
    /// `|h(ν, ·)|` on the tangent space of `∂Σ`.
    pub conormal_offdiag: f64,
    pub h_tilde: f64,
    pub a_tilde_sq: f64,
    pub phi_tilde_sq: f64,
    /// `√det` of the induced metric of `∂Σ` in these parameters.
    pub density: f64,
}

/// Compute a boundary sample at `u` on `face`.
pub fn boundary_sample(imm: &Immersion, u: &[f64], face: Face) -> Result<BoundarySample> {
    let fd = imm.fundamental_data(u)?;
    sample_from(imm, &fd, face, None)
}

fn sample_from(
    imm: &Immersion,
    fd: &FundamentalData,
    face: Face,
    node: Option<usize>,
) -> Result<BoundarySample> {
    let n = fd.n();
    let k = face.axis;
    let model = imm.model();
    let x = &fd.position;
    let e2 = fd.scale * fd.scale;

    let gkk = fd.metric_inv[(k, k)];
    let s = face.side.outward_sign();
    let nu: Vec<f64> = (0..n).map(|i| s * fd.metric_inv[(i, k)] / gkk.sqrt()).collect();
    let nu_amb = fd.push_forward(&nu);
    let xn = dot(x, x).sqrt();
    let cos_angle = fd.scale * dot(&nu_amb, x) / xn;
    let perp: Vec<f64> = nu_amb
        .iter()
        .zip(x)
        .map(|(v, p)| v - cos_angle * p / (xn * fd.scale))
        .collect();
    let sin_angle = fd.scale * dot(&perp, &perp).sqrt();
    let gauge_defect = fd.scale * xn - model.boundary_gauge_norm();

    let kappa_n = fd.second_form_apply(&nu, &nu);

    // tangent space of ∂Σ: coordinate directions other than the face axis
    let tang: Vec<usize> = (0..n).filter(|&a| a != k).collect();
    let m = n - 1;
    let gb = DMatrix::from_fn(m, m, |a, b| fd.metric[(tang[a], tang[b])]);
    let gb_inv = gb
        .clone()
        .try_inverse()
        .ok_or(Error::RankDeficient { ratio: 0.0 })?;
    let det = gb.determinant();
    let scale_sq = (0..m).map(|a| gb[(a, a)]).fold(0.0f64, f64::max);
    if !(det > 1e-20 * scale_sq.powi(m as i32)) {
        return Err(Error::RankDeficient { ratio: 0.0 });
    }

    let v: Vec<f64> = tang
        .iter()
        .map(|&a| (0..n).map(|i| nu[i] * fd.second_form[(i, a)]).sum())
        .collect();
    let v = nalgebra::DVector::from_vec(v);
    let conormal_offdiag = (v.transpose() * &gb_inv * &v)[(0, 0)].max(0.0).sqrt();

    // ξ: unit normal of ∂Σ inside ∂B, from η with its position component removed
    let eta = &fd.normal;
    let xhat: Vec<f64> = x.iter().map(|c| c / (xn * fd.scale)).collect();
    let eta_x = e2 * dot(eta, &xhat);
    let mut xi: Vec<f64> = eta.iter().zip(&xhat).map(|(a, b)| a - eta_x * b).collect();
    let xi_norm = (e2 * dot(&xi, &xi)).sqrt();
    xi.iter_mut().for_each(|c| *c /= xi_norm);

    let jet = imm.jet(&fd.u);
    let gamma = model.conformal_christoffels(x)?;
    let ht = DMatrix::from_fn(m, m, |a, b| {
        let (ia, ib) = (tang[a], tang[b]);
        let corr = gamma.contract(&jet.first[ia], &jet.first[ib]);
        let acc: f64 = (0..x.len())
            .map(|c| (jet.second[ia][ib][c] + corr[c]) * xi[c])
            .sum();
        e2 * acc
    });
    let ht = (&ht + ht.transpose()) * 0.5;
    let a_tilde = &gb_inv * ht;
    let h_tilde = a_tilde.trace();
    let a_tilde_sq = (&a_tilde * &a_tilde).trace();
    let phi_tilde_sq = (a_tilde_sq - h_tilde * h_tilde / m as f64).max(0.0);

    Ok(BoundarySample {
        face,
        u: fd.u.clone(),
        node,
        conormal_param: nu,
        cos_angle,
        sin_angle,
        gauge_defect,
        mean_curvature: fd.mean_curvature,
        phi_sq: fd.umbilicity_sq,
        kappa_n,
        conormal_offdiag,
        h_tilde,
        a_tilde_sq,
        phi_tilde_sq,
        density: fd.volume_density * gkk.sqrt(),
    })
}

/// Samples on the marked faces of a grid (chart poles on a face skipped).
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    pub samples: Vec<BoundarySample>,
    pub mu: f64,
    pub n: usize,
    pub components: usize,
}

impl BoundaryTrace {
    pub fn from_grid(imm: &Immersion, ctx: &FieldContext) -> Result<Self> {
        let faces = imm.domain().marked_faces();
        if faces.is_empty() {
            return Err(Error::hypothesis("no marked boundary faces"));
        }
        let grid = ctx.grid();
        let mut samples = Vec::new();
        for face in &faces {
            let nodes = grid.face_nodes(*face);
            let mut found: Vec<BoundarySample> = nodes
                .par_iter()
                .filter_map(|&f| {
                    let u = grid.point_flat(f);
                    let fd = imm.fundamental_data(&u).ok()?;
                    sample_from(imm, &fd, *face, Some(f)).ok()
                })
                .collect();
            samples.append(&mut found);
        }
        Ok(BoundaryTrace {
            samples,
            mu: boundary_mu(imm),
            n: imm.n(),
            components: component_count(imm.domain()),
        })
    }

    fn max_of(&self, f: impl Fn(&BoundarySample) -> f64) -> f64 {
        self.samples.iter().map(f).fold(0.0, f64::max)
    }
}

/// Number of boundary components: connected marked faces. Two marked faces
/// of one interval axis are separate; faces of different axes that meet
/// along an edge are joined.
pub fn component_count(domain: &ParamDomain) -> usize {
    let faces = domain.marked_faces();
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if faces[i].axis != faces[j].axis {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..faces.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FreeBoundaryResidual {
    /// `max | |x|_ĝ − |x|_ĝ on ∂B |` over the trace.
    pub r_contain: f64,
    /// `max sin∠(ν, x̂)` over the trace.
    pub r_ortho: f64,
}

pub fn free_boundary_residual(trace: &BoundaryTrace) -> FreeBoundaryResidual {
    FreeBoundaryResidual {
        r_contain: trace.max_of(|s| s.gauge_defect.abs()),
        r_ortho: trace.max_of(|s| s.sin_angle),
    }
}

/// `max |ĝ(Aν, e)|` over unit tangents `e` of `∂Σ`.
pub fn principal_direction_check(trace: &BoundaryTrace) -> f64 {
    trace.max_of(|s| s.conormal_offdiag)
}

/// Pointwise residuals of the first boundary identity and its umbilicity form.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityI {
    pub residual: Vec<f64>,
    pub remark_residual: Vec<f64>,
    pub max: f64,
    pub remark_max: f64,
    /// `max |residual − remark_residual|` (pure algebra).
    pub consistency: f64,
}

/// `|φ|² − |Ã|² − (H − H̃)² + H²/n` and
/// `|φ|² − |φ̃|² − ((n−1)H − nH̃)²/(n(n−1))`.
pub fn key_lemma_identity_i(trace: &BoundaryTrace) -> IdentityI {
    let nf = trace.n as f64;
    let residual: Vec<f64> = trace
        .samples
        .iter()
        .map(|s| {
            let d = s.mean_curvature - s.h_tilde;
            s.phi_sq - s.a_tilde_sq - d * d + s.mean_curvature.powi(2) / nf
        })
        .collect();
    let remark_residual: Vec<f64> = trace
        .samples
        .iter()
        .map(|s| {
            let q = (nf - 1.0) * s.mean_curvature - nf * s.h_tilde;
            // |φ̃|² from |Ã|² without clamping, to keep the algebra exact
            let phi_t = s.a_tilde_sq - s.h_tilde * s.h_tilde / (nf - 1.0);
            s.phi_sq - phi_t - q * q / (nf * (nf - 1.0))
        })
        .collect();
    let max_abs = |v: &[f64]| v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let consistency = residual
        .iter()
        .zip(&remark_residual)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    IdentityI {
        max: max_abs(&residual),
        remark_max: max_abs(&remark_residual),
        residual,
        remark_residual,
        consistency,
    }
}

/// Right side of the conormal-derivative identity:
/// `−2μ₀(|Ã|² + (n+1)(H − H̃)² − 2H(H − H̃))`.
pub fn identity_ii_rhs(s: &BoundarySample, n: usize, mu: f64) -> f64 {
    let h = s.mean_curvature;
    let d = h - s.h_tilde;
    -2.0 * mu * (s.a_tilde_sq + (n as f64 + 1.0) * d * d - 2.0 * h * d)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityIi {
    /// `ν(|φ|²)` by one-sided differences on the grid.
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub max_residual: f64,
    /// Largest `ν(|φ|²)`; positive values contradict `ν(|φ|²) ≤ 0`.
    pub max_lhs: f64,
    pub evaluated: usize,
}

/// `ν(|φ|²)` against its boundary formula at every trace sample with a grid node.
pub fn key_lemma_identity_ii(trace: &BoundaryTrace, ctx: &Arc<FieldContext>) -> Result<IdentityIi> {
    let field = ctx.phi_sq_field();
    let pairs: Vec<Option<(f64, f64)>> = trace
        .samples
        .par_iter()
        .map(|s| {
            let node = s.node?;
            let lhs = field.conormal_derivative(node, s.face).ok()?;
            Some((lhs, identity_ii_rhs(s, trace.n, trace.mu)))
        })
        .collect();
    let (lhs, rhs): (Vec<f64>, Vec<f64>) = pairs.into_iter().flatten().unzip();
    if lhs.is_empty() {
        return Err(Error::hypothesis("no boundary node admits a conormal stencil"));
    }
    let max_residual = lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let max_lhs = lhs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(IdentityIi {
        evaluated: lhs.len(),
        lhs,
        rhs,
        max_residual,
        max_lhs,
    })
}

/// Relative step for pointwise parameter derivatives.
pub const POINTWISE_STEP: f64 = 1e-5;

/// Parameter gradient of a pointwise-evaluable function: central differences,
/// switching to one-sided three-point stencils within two steps of an
/// interval end.
pub fn pointwise_gradient<F>(domain: &ParamDomain, u: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let n = u.len();
    let mut out = vec![0.0; n];
    for (a, o) in out.iter_mut().enumerate() {
        let axis = domain.axis(a);
        let delta = POINTWISE_STEP * axis.length();
        let at = |k: f64| {
            let mut v = u.to_vec();
            v[a] += k * delta;
            f(&v)
        };
        let (lo, hi) = axis.bounds();
        let near_lo = matches!(axis, Axis::Interval { .. }) && u[a] - lo < 2.0 * delta;
        let near_hi = matches!(axis, Axis::Interval { .. }) && hi - u[a] < 2.0 * delta;
        *o = if near_lo {
            (-3.0 * at(0.0)? + 4.0 * at(1.0)? - at(2.0)?) / (2.0 * delta)
        } else if near_hi {
            (3.0 * at(0.0)? - 4.0 * at(-1.0)? + at(-2.0)?) / (2.0 * delta)
        } else {
            (at(1.0)? - at(-1.0)?) / (2.0 * delta)
        };
    }
    Ok(out)
}

/// `ν(f)` at a boundary point for a function of the fundamental data.
pub fn pointwise_conormal_derivative<F>(imm: &Immersion, u: &[f64], face: Face, f: F) -> Result<f64>
where
    F: Fn(&FundamentalData) -> f64,
{
    let fd = imm.fundamental_data(u)?;
    let k = face.axis;
    let gkk = fd.metric_inv[(k, k)];
    let s = face.side.outward_sign();
    let grad = pointwise_gradient(imm.domain(), u, |v| Ok(f(&imm.fundamental_data(v)?)))?;
    Ok((0..fd.n())
        .map(|i| s * fd.metric_inv[(i, k)] / gkk.sqrt() * grad[i])
        .sum())
}

/// Smallest principal-curvature gap at which branches are still followed.
pub const BRANCH_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct StahlCheck {
    /// `max_i |ν(κ_i) − μ₀(κ_n − κ_i)|` per sample; `None` where branches cross.
    pub residual: Vec<Option<f64>>,
    pub max: f64,
    pub skipped: usize,
}

/// Conormal derivative of the principal curvatures against `μ₀(κ_n − κ_i)`.
/// Only the tangential curvatures of `∂Σ` (all but the branch closest to
/// `κ_n`) enter.
pub fn stahl_derivative_check(imm: &Immersion, trace: &BoundaryTrace) -> StahlCheck {
    let residual: Vec<Option<f64>> = trace
        .samples
        .par_iter()
        .map(|s| {
            let fd = imm.fundamental_data(&s.u).ok()?;
            let k = &fd.principal;
            let gap = k.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            if !(gap >= BRANCH_GAP) {
                return None;
            }
            let normal_branch = (0..k.len())
                .min_by(|&a, &b| (k[a] - s.kappa_n).abs().total_cmp(&(k[b] - s.kappa_n).abs()))?;
            let mut worst: f64 = 0.0;
            for i in (0..k.len()).filter(|&i| i != normal_branch) {
                let d = pointwise_conormal_derivative(imm, &s.u, s.face, |g| g.principal[i]).ok()?;
                worst = worst.max((d - trace.mu * (s.kappa_n - k[i])).abs());
            }
            Some(worst)
        })
        .collect();
    let skipped = residual.iter().filter(|r| r.is_none()).count();
    let max = residual.iter().flatten().cloned().fold(0.0, f64::max);
    StahlCheck {
        residual,
        max,
        skipped,
    }
}

/// Boundary umbilicity measures when `Δ|φ|² ≥ −tol` in the interior:
/// `(max |φ̃|², max |nH̃ − (n−1)H|)`.
pub fn umbilic_boundary_diagnostic(
    trace: &BoundaryTrace,
    ctx: &Arc<FieldContext>,
    tol: f64,
) -> Result<(f64, f64)> {
    let field = ctx.phi_sq_field();
    let grid = ctx.grid();
    let min_lap = (0..grid.len())
        .into_par_iter()
        .filter(|&f| ctx.is_valid(f) && grid.is_interior(f, 2))
        .filter_map(|f| field.laplace_beltrami(f).ok())
        .reduce(|| f64::INFINITY, f64::min);
    if min_lap < -tol {
        return Err(Error::hypothesis(format!(
            "Δ|φ|² is not nonnegative (min {min_lap:.3e})"
        )));
    }
    let nf = trace.n as f64;
    Ok((
        trace.max_of(|s| s.phi_tilde_sq),
        trace.max_of(|s| (nf * s.h_tilde - (nf - 1.0) * s.mean_curvature).abs()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn trace_of(id: &str, res: usize) -> (Arc<Immersion>, Arc<FieldContext>, BoundaryTrace) {
        let e = catalog::entry(id).unwrap();
        let grid = e.immersion.domain().grid(res);
        let ctx = FieldContext::new(&e.immersion, grid, 4).unwrap();
        let tr = BoundaryTrace::from_grid(&e.immersion, &ctx).unwrap();
        (e.immersion, ctx, tr)
    }

    #[test]
    fn disk_is_free_boundary() {
        for id in ["equatorial_disk_2_0", "equatorial_disk_2_-1", "equatorial_disk_2_1"] {
            let (_, _, tr) = trace_of(id, 32);
            let r = free_boundary_residual(&tr);
            assert!(r.r_contain <= 1e-12 && r.r_ortho <= 1e-9, "{id}: {r:?}");
            assert_eq!(tr.components, 1);
        }
    }

    #[test]
    fn catenoid_free_boundary_and_identities() {
        let (imm, ctx, tr) = trace_of("critical_catenoid", 64);
        let r = free_boundary_residual(&tr);
        assert!(r.r_contain <= 1e-9 && r.r_ortho <= 1e-9, "{r:?}");
        assert_eq!(tr.components, 2);
        assert!(principal_direction_check(&tr) <= 1e-8);
        let i = key_lemma_identity_i(&tr);
        assert!(i.max <= 1e-8 && i.consistency <= 1e-12, "{i:?}");
        let ii = key_lemma_identity_ii(&tr, &ctx).unwrap();
        assert!(ii.max_lhs < 0.0);
        let st = stahl_derivative_check(&imm, &tr);
        assert_eq!(st.skipped, 0);
        assert!(st.max <= 5e-6, "stahl {}", st.max);
    }

    #[test]
    fn truncated_catenoid_breaks_orthogonality() {
        let (_, _, tr) = trace_of("truncated_catenoid", 32);
        let r = free_boundary_residual(&tr);
        assert!(r.r_contain <= 1e-12);
        assert!(r.r_ortho >= 0.05, "{r:?}");
    }

    #[test]
    fn cap_identities_vanish() {
        for id in ["spherical_cap_2_0.5", "spherical_cap_2_1", "spherical_cap_2_2", "spherical_cap_3_2"] {
            let (imm, ctx, tr) = trace_of(id, 32);
            let r = free_boundary_residual(&tr);
            assert!(r.r_contain <= 1e-12 && r.r_ortho <= 1e-9, "{id}: {r:?}");
            let i = key_lemma_identity_i(&tr);
            assert!(i.max <= 1e-8, "{id}: {}", i.max);
            let ii = key_lemma_identity_ii(&tr, &ctx).unwrap();
            assert!(ii.max_residual <= 1e-8, "{id}: {}", ii.max_residual);
            let st = stahl_derivative_check(&imm, &tr);
            assert_eq!(st.skipped, tr.samples.len());
            let (pt, hh) = umbilic_boundary_diagnostic(&tr, &ctx, 1e-8).unwrap();
            assert!(pt <= 1e-10 && hh <= 1e-10, "{id}: {pt} {hh}");
        }
    }

    #[test]
    fn cap_boundary_curvature_by_hand() {
        // boundary circle of the R = 1 cap: geodesic curvature 1/R in S²
        let (_, _, tr) = trace_of("spherical_cap_2_1", 16);
        for s in &tr.samples {
            assert!((s.a_tilde_sq - 1.0).abs() < 1e-12);
            assert!(((s.mean_curvature - s.h_tilde).powi(2) - 1.0).abs() < 1e-12);
        }
    }
}
