//! Integrals over `Σ` and `∂Σ` and the integral inequalities built from them.
//!
//! Pointwise integrands go through tensor Gauss–Legendre/trapezoid rules on
//! the parameter domain; conormal derivatives on `∂Σ` are taken from the
//! analytic jets with small one-sided stencils. Every quantity is computed at
//! two resolutions and the difference is reported as its error estimate.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::boundary::{boundary_mu, boundary_sample, pointwise_conormal_derivative, pointwise_gradient, BoundarySample};
use crate::domain::Face;
use crate::error::{Error, Result};
use crate::fields::FieldContext;
use crate::immersion::{gauss_curvature_from, p_h, FundamentalData, Immersion};
use crate::quadrature::{Estimate, TensorRule};

/// `∫_Σ f` at one resolution.
fn surface_at<F>(imm: &Immersion, resolution: usize, f: &F) -> f64
where
    F: Fn(&FundamentalData) -> f64 + Sync,
{
    TensorRule::new(imm.domain(), None, resolution).apply(|u| {
        let fd = imm.fundamental_data(u).ok()?;
        Some(fd.volume_density * f(&fd))
    })
}

/// `∫_Σ f` with a Richardson (half-resolution) error estimate.
pub fn integrate_surface<F>(imm: &Immersion, resolution: usize, f: F) -> Estimate
where
    F: Fn(&FundamentalData) -> f64 + Sync,
{
    let fine = surface_at(imm, resolution, &f);
    let coarse = surface_at(imm, (resolution / 2).max(8), &f);
    Estimate {
        value: fine,
        error: (fine - coarse).abs(),
    }
}

/// `∫_face f` for an integrand of the boundary sample.
fn face_at<F>(imm: &Immersion, face: Face, resolution: usize, f: &F) -> Result<f64>
where
    F: Fn(&BoundarySample) -> Result<f64> + Sync,
{
    let rule = TensorRule::new(imm.domain(), Some(face), resolution);
    let values: Vec<Result<f64>> = {
        use rayon::prelude::*;
        rule.points
            .par_iter()
            .map(|u| match boundary_sample(imm, u, face) {
                Ok(s) => Ok(s.density * f(&s)?),
                Err(Error::RankDeficient { .. }) => Ok(0.0),
                Err(e) => Err(e),
            })
            .collect()
    };
    let mut acc = 0.0;
    for (v, w) in values.into_iter().zip(&rule.weights) {
        acc += w * v?;
    }
    Ok(acc)
}

fn boundary_at<F>(imm: &Immersion, resolution: usize, f: &F) -> Result<f64>
where
    F: Fn(&BoundarySample) -> Result<f64> + Sync,
{
    let mut acc = 0.0;
    for face in imm.domain().boundary_faces() {
        acc += face_at(imm, face, resolution, f)?;
    }
    Ok(acc)
}

/// `∫_{∂Σ} f` over all non-pole faces, with an error estimate.
pub fn integrate_boundary<F>(imm: &Immersion, resolution: usize, f: F) -> Result<Estimate>
where
    F: Fn(&BoundarySample) -> Result<f64> + Sync,
{
    let fine = boundary_at(imm, resolution, &f)?;
    let coarse = boundary_at(imm, (resolution / 2).max(8), &f)?;
    Ok(Estimate {
        value: fine,
        error: (fine - coarse).abs(),
    })
}

/// Boundary measure of each boundary face.
pub fn component_measures(imm: &Immersion, resolution: usize) -> Result<Vec<f64>> {
    imm.domain()
        .boundary_faces()
        .into_iter()
        .map(|face| face_at(imm, face, resolution, &|_| Ok(1.0)))
        .collect()
}

/// Two sides of an inequality; `margin` is oriented so that it is nonnegative
/// when the inequality holds.
#[derive(Debug, Clone, Serialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    /// Signed slack: positive when the inequality holds strictly.
    pub margin: f64,
    /// Half-resolution change of the margin.
    pub error: f64,
    pub equality: bool,
}

impl Inequality {
    /// Whether the inequality holds up to `tol` plus the quadrature estimate.
    pub fn holds(&self, tol: f64) -> bool {
        self.margin >= -(tol + self.error)
    }
}

fn declared_h(imm: &Immersion) -> Result<f64> {
    imm.declared_h()
        .ok_or_else(|| Error::hypothesis("constant mean curvature not declared"))
}

fn require_n3_nonpositive(imm: &Immersion, what: &str) -> Result<()> {
    if imm.n() < 3 {
        return Err(Error::hypothesis(format!("{what} needs n ≥ 3")));
    }
    if imm.model().curvature() > 0.0 {
        return Err(Error::hypothesis(format!("{what} needs c ≤ 0")));
    }
    Ok(())
}

/// `∫f² ≤ (4/n²)∫|∇f|² + (H²/n²)∫f² + (2/n)∫_{∂Σ}f²` for `f ≥ 0` given as a
/// function of the ambient position.
pub fn hardy_check<F>(imm: &Immersion, resolution: usize, f: F) -> Result<Inequality>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    require_n3_nonpositive(imm, "the Hardy inequality")?;
    let h = declared_h(imm)?;
    let nf = imm.n() as f64;
    let terms = |res: usize| -> Result<(f64, f64)> {
        let f_sq = surface_at(imm, res, &|fd: &FundamentalData| f(&fd.position).powi(2));
        let grad_sq = surface_at(imm, res, &|fd: &FundamentalData| {
            let g = pointwise_gradient(imm.domain(), &fd.u, |v| Ok(f(&imm.position(v))));
            match g {
                Ok(g) => {
                    let mut acc = 0.0;
                    for i in 0..g.len() {
                        for j in 0..g.len() {
                            acc += fd.metric_inv[(i, j)] * g[i] * g[j];
                        }
                    }
                    acc
                }
                Err(_) => 0.0,
            }
        });
        let bd = boundary_at(imm, res, &|s: &BoundarySample| Ok(f(&imm.position(&s.u)).powi(2)))?;
        let rhs = 4.0 / (nf * nf) * grad_sq + h * h / (nf * nf) * f_sq + 2.0 / nf * bd;
        Ok((f_sq, rhs))
    };
    let (lhs, rhs) = terms(resolution)?;
    let (lc, rc) = terms((resolution / 2).max(8))?;
    Ok(Inequality {
        lhs,
        rhs,
        margin: rhs - lhs,
        error: ((rhs - lhs) - (rc - lc)).abs(),
        equality: lhs.abs() <= 1e-12,
    })
}

/// `C_{n,H} = (n+2)(n² − H²)/(4n)`.
pub fn c_nh(n: usize, h: f64) -> f64 {
    let nf = n as f64;
    (nf + 2.0) * (nf * nf - h * h) / (4.0 * nf)
}

/// Boundary integrals shared by the first inequality and its 3D form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundaryTerms {
    pub measure: f64,
    pub h_tilde: f64,
    pub a_tilde_sq: f64,
    pub h_diff_sq: f64,
}

fn boundary_terms(imm: &Immersion, resolution: usize, h: f64) -> Result<BoundaryTerms> {
    let v = {
        let mut acc = [0.0; 4];
        for face in imm.domain().boundary_faces() {
            for (k, slot) in acc.iter_mut().enumerate() {
                *slot += face_at(imm, face, resolution, &|s: &BoundarySample| {
                    Ok(match k {
                        0 => 1.0,
                        1 => s.h_tilde,
                        2 => s.a_tilde_sq,
                        _ => (h - s.h_tilde).powi(2),
                    })
                })?;
            }
        }
        acc
    };
    Ok(BoundaryTerms {
        measure: v[0],
        h_tilde: v[1],
        a_tilde_sq: v[2],
        h_diff_sq: v[3],
    })
}

/// `L(μ₀) = (μ₀ − 1)((n+1)∫(H−H̃)² + ∫|Ã|² − 2H²|∂Σ|)`.
pub fn l_mu0(n: usize, mu0: f64, h: f64, b: &BoundaryTerms) -> f64 {
    (mu0 - 1.0) * ((n as f64 + 1.0) * b.h_diff_sq + b.a_tilde_sq - 2.0 * h * h * b.measure)
}

/// Right side of the first integral inequality from its boundary integrals.
pub fn first_rhs(n: usize, mu0: f64, h: f64, b: &BoundaryTerms) -> f64 {
    let nf = n as f64;
    nf / 2.0 * (b.h_diff_sq - b.a_tilde_sq) + 2.0 * mu0 * h * b.h_tilde
        - (3.0 * nf - 2.0) / (2.0 * nf) * h * h * b.measure
        + l_mu0(n, mu0, h, b)
}

/// Both sides of the first integral inequality with its ingredients.
#[derive(Debug, Clone, Serialize)]
pub struct FirstInequality {
    pub inequality: Inequality,
    pub phi_sq_integral: f64,
    pub c_nh: f64,
    pub l_mu0: f64,
    pub boundary: BoundaryTerms,
    /// Right side in the three-dimensional form, when `χ(Γ_i)` were supplied.
    pub rhs_3d: Option<f64>,
}

fn first_terms(imm: &Immersion, res: usize, chis: Option<&[i32]>) -> Result<(f64, f64, f64, f64, BoundaryTerms, Option<f64>)> {
    let n = imm.n();
    let h = declared_h(imm)?;
    let c = imm.model().curvature();
    let mu0 = boundary_mu(imm);
    let cnh = c_nh(n, h);
    let lhs = surface_at(imm, res, &|fd: &FundamentalData| {
        let t = fd.umbilicity_sq;
        t * (p_h(n, h, c, t.sqrt()) - cnh)
    });
    let phi_sq = surface_at(imm, res, &|fd: &FundamentalData| fd.umbilicity_sq);
    let b = boundary_terms(imm, res, h)?;
    let l = l_mu0(n, mu0, h, &b);
    let rhs = first_rhs(n, mu0, h, &b);
    let rhs3 = chis.map(|chis| {
        let sum: i32 = chis.iter().sum();
        6.0 * PI * sum as f64
            + (2.0 * mu0 - 3.0) * h * b.h_tilde
            + (h * h - 9.0 * c - 9.0 * mu0 * mu0) / 3.0 * b.measure
            + l
    });
    Ok((lhs, rhs, phi_sq, l, b, rhs3))
}

/// `∫|φ|²(p_H(|φ|) − C_{n,H}) ≥ (n/2)∫((H−H̃)² − |Ã|²) + 2μ₀H∫H̃
/// − ((3n−2)/2n)H²|∂Σ| + L(μ₀)`; with `chis` the 3D right side
/// `6πΣχ(Γ_i) + (2μ₀−3)H∫H̃ + ((H² − 9c − 9μ₀²)/3)|∂Σ| + L(μ₀)` is added.
pub fn first_inequality(imm: &Immersion, resolution: usize, chis: Option<&[i32]>) -> Result<FirstInequality> {
    require_n3_nonpositive(imm, "the first integral inequality")?;
    if chis.is_some() && imm.n() != 3 {
        return Err(Error::hypothesis("the three-dimensional form needs n = 3"));
    }
    let (lhs, rhs, phi_sq, l, b, rhs3) = first_terms(imm, resolution, chis)?;
    let (lc, rc, ..) = first_terms(imm, (resolution / 2).max(8), None)?;
    let cnh = c_nh(imm.n(), declared_h(imm)?);
    Ok(FirstInequality {
        inequality: Inequality {
            lhs,
            rhs,
            margin: lhs - rhs,
            error: ((lhs - rhs) - (lc - rc)).abs(),
            equality: phi_sq.abs() <= 1e-10,
        },
        phi_sq_integral: phi_sq,
        c_nh: cnh,
        l_mu0: l,
        boundary: b,
        rhs_3d: rhs3,
    })
}

/// Smallest `|φ|` on `∂Σ` for which the second inequality's boundary
/// integrand is accepted.
pub const INTEGRABILITY_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct SecondInequality {
    pub inequality: Inequality,
    pub phi_sq_integral: f64,
    pub min_boundary_phi: f64,
}

fn nu_phi_sq(imm: &Immersion, s: &BoundarySample) -> Result<f64> {
    pointwise_conormal_derivative(imm, &s.u, s.face, |g| g.umbilicity_sq)
}

/// `−∫|φ|^{(n−2)/n} p_H(|φ|) ≤ ½∫_{∂Σ} |φ|^{−(n+2)/n} ν(|φ|²)`.
pub fn second_inequality(imm: &Immersion, resolution: usize) -> Result<SecondInequality> {
    let n = imm.n();
    let nf = n as f64;
    let h = declared_h(imm)?;
    let c = imm.model().curvature();
    let phi_sq = surface_at(imm, resolution, &|fd: &FundamentalData| fd.umbilicity_sq);
    let area = surface_at(imm, resolution, &|_: &FundamentalData| 1.0);
    if phi_sq <= 1e-10 * area.max(1.0) {
        return Err(Error::hypothesis(
            "Σ is totally umbilical (∫|φ|² vanishes); the second inequality assumes otherwise",
        ));
    }
    let min_phi = boundary_min_phi(imm, resolution)?;
    if min_phi <= INTEGRABILITY_FLOOR {
        return Err(Error::NonIntegrable(format!(
            "|φ| reaches {min_phi:.3e} on ∂Σ, so |φ|^(−(n+2)/n) ν(|φ|²) is not integrable"
        )));
    }
    let terms = |res: usize| -> Result<(f64, f64)> {
        let lhs = -surface_at(imm, res, &|fd: &FundamentalData| {
            let t = fd.umbilicity_sq.sqrt();
            t.powf((nf - 2.0) / nf) * p_h(n, h, c, t)
        });
        let rhs = 0.5
            * boundary_at(imm, res, &|s: &BoundarySample| {
                Ok(s.phi_sq.sqrt().powf(-(nf + 2.0) / nf) * nu_phi_sq(imm, s)?)
            })?;
        Ok((lhs, rhs))
    };
    let (lhs, rhs) = terms(resolution)?;
    let (lc, rc) = terms((resolution / 2).max(8))?;
    let margin = rhs - lhs;
    let error = (margin - (rc - lc)).abs();
    Ok(SecondInequality {
        inequality: Inequality {
            lhs,
            rhs,
            margin,
            error,
            equality: margin.abs() <= 1e-6 * lhs.abs().max(1.0) + error,
        },
        phi_sq_integral: phi_sq,
        min_boundary_phi: min_phi,
    })
}

fn boundary_min_phi(imm: &Immersion, resolution: usize) -> Result<f64> {
    let mut min = f64::INFINITY;
    for face in imm.domain().boundary_faces() {
        let rule = TensorRule::new(imm.domain(), Some(face), resolution);
        for u in &rule.points {
            if let Ok(fd) = imm.fundamental_data(u) {
                min = min.min(fd.umbilicity_sq.sqrt());
            }
        }
    }
    Ok(min)
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussBonnet {
    pub int_k: Estimate,
    /// `∮ k_g` with `k_g` measured against the inward conormal.
    pub int_kg: Estimate,
    pub chi: f64,
    pub boundary_measure: f64,
    /// `max |k_g − μ₀|` on the boundary (free-boundary surfaces: `k_g ≡ μ₀`).
    pub kg_defect: f64,
}

/// Geodesic curvature of the boundary curve through `s` against the inward conormal.
fn geodesic_curvature(imm: &Immersion, s: &BoundarySample) -> Result<f64> {
    let b = 1 - s.face.axis;
    let fd = imm.fundamental_data(&s.u)?;
    let jet = imm.jet(&s.u);
    let t = &jet.first[b];
    let acc = imm.covariant_second(&fd.position, &jet.second[b][b], t, t)?;
    let nu = fd.push_forward(&s.conormal_param);
    let e2 = fd.scale * fd.scale;
    let tt = e2 * t.iter().map(|v| v * v).sum::<f64>();
    Ok(-e2 * acc.iter().zip(&nu).map(|(a, v)| a * v).sum::<f64>() / tt)
}

/// `∫_Σ K`, `∮ k_g` and `χ = (∫K + ∮k_g)/2π` for surfaces.
pub fn gauss_bonnet_check(imm: &Immersion, resolution: usize) -> Result<GaussBonnet> {
    if imm.n() != 2 {
        return Err(Error::hypothesis("Gauss–Bonnet check needs n = 2"));
    }
    let c = imm.model().curvature();
    let int_k = integrate_surface(imm, resolution, |fd| gauss_curvature_from(fd, c).0);
    let int_kg = integrate_boundary(imm, resolution, |s| geodesic_curvature(imm, s))?;
    let boundary_measure = boundary_at(imm, resolution, &|_| Ok(1.0))?;
    let mu = boundary_mu(imm);
    let mut kg_defect: f64 = 0.0;
    for face in imm.domain().boundary_faces() {
        for u in TensorRule::new(imm.domain(), Some(face), resolution).points {
            if let Ok(s) = boundary_sample(imm, &u, face) {
                kg_defect = kg_defect.max((geodesic_curvature(imm, &s)? - mu).abs());
            }
        }
    }
    Ok(GaussBonnet {
        chi: (int_k.value + int_kg.value) / (2.0 * PI),
        int_k,
        int_kg,
        boundary_measure,
        kg_defect,
    })
}

/// The equality chain for free-boundary CMC surfaces.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityDiagnostic {
    /// `∮ |φ|^{−2} ν(|φ|²)`.
    pub boundary_log: f64,
    /// `−4μ₀|∂Σ|`.
    pub boundary_log_expected: f64,
    /// `∫ p_H(|φ|)`.
    pub int_p_h: f64,
    /// `2(μ₀|∂Σ| − 2πχ)`.
    pub chain_rhs: f64,
    pub chi: f64,
    pub chi_nonpositive: bool,
    /// Equality in the second inequality (`n = 2`) iff `χ ≈ 0`.
    pub annulus: bool,
}

pub fn equality_topology_diagnostic(imm: &Immersion, resolution: usize, chi_tol: f64) -> Result<EqualityDiagnostic> {
    if imm.n() != 2 {
        return Err(Error::hypothesis("the equality chain is stated for surfaces"));
    }
    let h = declared_h(imm)?;
    let c = imm.model().curvature();
    let phi_sq = surface_at(imm, resolution, &|fd: &FundamentalData| fd.umbilicity_sq);
    if phi_sq <= 1e-10 {
        return Err(Error::hypothesis("Σ is totally umbilical; the equality chain assumes otherwise"));
    }
    let mu = boundary_mu(imm);
    let gb = gauss_bonnet_check(imm, resolution)?;
    let boundary_log = boundary_at(imm, resolution, &|s: &BoundarySample| {
        Ok(nu_phi_sq(imm, s)? / s.phi_sq)
    })?;
    let int_p_h = surface_at(imm, resolution, &|fd: &FundamentalData| {
        p_h(2, h, c, fd.umbilicity_sq.sqrt())
    });
    Ok(EqualityDiagnostic {
        boundary_log,
        boundary_log_expected: -4.0 * mu * gb.boundary_measure,
        int_p_h,
        chain_rhs: 2.0 * (mu * gb.boundary_measure - 2.0 * PI * gb.chi),
        chi: gb.chi,
        chi_nonpositive: gb.chi <= chi_tol,
        annulus: gb.chi.abs() <= chi_tol,
    })
}

/// `∫_Σ Δ|φ|²` and `∫_{∂Σ} ν(|φ|²)` on the field grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivergenceCheck {
    pub interior: f64,
    pub boundary: f64,
}

pub fn divergence_check(imm: &Immersion, ctx: &Arc<FieldContext>) -> Result<DivergenceCheck> {
    use rayon::prelude::*;
    let grid = ctx.grid();
    if imm.domain().faces().iter().any(|f| f.kind == crate::domain::FaceKind::Pole) {
        return Err(Error::hypothesis("the grid divergence check needs a chart without poles"));
    }
    let field = ctx.phi_sq_field();
    let lap: Vec<Result<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|f| field.laplace_beltrami(f))
        .collect();
    let lap: Vec<f64> = lap.into_iter().collect::<Result<_>>()?;
    let interior = ctx.integrate(&lap);
    let mut boundary = 0.0;
    for face in imm.domain().boundary_faces() {
        let (nodes, vals) = field.conormal_on_face(face);
        boundary += ctx.integrate_face(face, &nodes, &vals);
    }
    Ok(DivergenceCheck { interior, boundary })
}

/// Named scalar integrals of an entry, with error estimates.
#[derive(Debug, Clone, Serialize)]
pub struct IntegralReport {
    pub resolution: usize,
    pub area: Estimate,
    pub boundary_measure: Estimate,
    pub component_measures: Vec<f64>,
    pub phi_sq_integral: Estimate,
    pub p_h_integral: Estimate,
}

pub fn integral_report(imm: &Immersion, resolution: usize) -> Result<IntegralReport> {
    let h = imm.declared_h().unwrap_or(0.0);
    let n = imm.n();
    let c = imm.model().curvature();
    Ok(IntegralReport {
        resolution,
        area: integrate_surface(imm, resolution, |_| 1.0),
        boundary_measure: integrate_boundary(imm, resolution, |_| Ok(1.0))?,
        component_measures: component_measures(imm, resolution)?,
        phi_sq_integral: integrate_surface(imm, resolution, |fd| fd.umbilicity_sq),
        p_h_integral: integrate_surface(imm, resolution, |fd| p_h(n, h, c, fd.umbilicity_sq.sqrt())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::quadrature::integrate_1d;

    #[test]
    fn areas_of_disks() {
        let d2 = catalog::equatorial_disk(2, 0).unwrap();
        let a = integrate_surface(&d2.immersion, 32, |_| 1.0);
        assert!((a.value - PI).abs() <= 1e-10);
        let d3 = catalog::equatorial_disk(3, 0).unwrap();
        let v = integrate_surface(&d3.immersion, 32, |_| 1.0);
        assert!((v.value - 4.0 * PI / 3.0).abs() <= 1e-10);
        let b = integrate_boundary(&d3.immersion, 32, |_| Ok(1.0)).unwrap();
        assert!((b.value - 4.0 * PI).abs() <= 1e-10);
    }

    #[test]
    fn catenoid_area_against_profile_integral() {
        let e = catalog::critical_catenoid().unwrap();
        let t0 = catalog::catenoid_t0();
        let s = catalog::catenoid_scale(t0);
        // area = 2π s² ∫ cosh² t dt, evaluated independently in 1D
        let oracle = 2.0 * PI * s * s * integrate_1d(-t0, t0, 16, |t| t.cosh().powi(2));
        let a = integrate_surface(&e.immersion, 128, |_| 1.0);
        assert!(a.error <= 1e-6);
        assert!((a.value - oracle).abs() <= 1e-10);
        assert!((a.value - 5.237_390_327_987_95).abs() <= 1e-9);
    }

    #[test]
    fn hardy_on_equatorial_three_disk() {
        let e = catalog::equatorial_disk(3, 0).unwrap();
        let one = hardy_check(&e.immersion, 32, |_| 1.0).unwrap();
        assert!((one.lhs - 4.188_790_204_786_391).abs() <= 1e-9);
        assert!((one.rhs - 8.377_580_409_572_781).abs() <= 1e-9);
        let bump = hardy_check(&e.immersion, 32, |x| 1.0 - x.iter().map(|v| v * v).sum::<f64>()).unwrap();
        assert!((bump.lhs - 32.0 * PI / 105.0).abs() <= 1e-9);
        assert!((bump.rhs - 4.0 / 9.0 * 16.0 * PI / 5.0).abs() <= 1e-6);
        let zero = hardy_check(&e.immersion, 16, |_| 0.0).unwrap();
        assert!(zero.equality && zero.margin == 0.0);
        let d2 = catalog::equatorial_disk(2, 0).unwrap();
        assert!(hardy_check(&d2.immersion, 16, |_| 1.0).unwrap_err().is_hypothesis());
    }

    #[test]
    fn first_inequality_vanishes_on_umbilical_entries() {
        for id in ["equatorial_disk_3_0", "equatorial_disk_3_-1", "spherical_cap_3_0.5", "spherical_cap_3_2"] {
            let e = catalog::entry(id).unwrap();
            let chis: Vec<i32> = e.meta.components.iter().map(|c| c.chi).collect();
            let r = first_inequality(&e.immersion, 32, Some(&chis)).unwrap();
            assert!(r.inequality.lhs.abs() <= 1e-8, "{id} lhs {}", r.inequality.lhs);
            assert!(r.inequality.rhs.abs() <= 1e-6, "{id} rhs {}", r.inequality.rhs);
            let r3 = r.rhs_3d.unwrap();
            assert!((r3 - r.inequality.rhs).abs() <= 1e-6, "{id} 3d {r3}");
            assert!(r.inequality.equality);
        }
    }

    #[test]
    fn catenoid_equality_chain() {
        let e = catalog::critical_catenoid().unwrap();
        let t0 = catalog::catenoid_t0();
        let perimeter = 4.0 * PI * t0.tanh();
        let second = second_inequality(&e.immersion, 128).unwrap();
        assert!((second.phi_sq_integral - 2.0 * perimeter).abs() <= 1e-4 * perimeter);
        assert!(second.inequality.equality, "{:?}", second.inequality);
        let d = equality_topology_diagnostic(&e.immersion, 128, 1e-6).unwrap();
        assert!((d.boundary_log - d.boundary_log_expected).abs() <= 1e-3 * d.boundary_log_expected.abs());
        assert!((d.int_p_h - d.chain_rhs).abs() <= 1e-5);
        assert!(d.chi.abs() <= 1e-6 && d.annulus);
    }

    #[test]
    fn gauss_bonnet_on_disk_cap_and_catenoid() {
        let d = catalog::equatorial_disk(2, 0).unwrap();
        let g = gauss_bonnet_check(&d.immersion, 32).unwrap();
        assert!((g.chi - 1.0).abs() <= 1e-10 && g.int_k.value.abs() <= 1e-12);
        let cap = catalog::spherical_cap(2, 1.0).unwrap();
        let g = gauss_bonnet_check(&cap.immersion, 64).unwrap();
        assert!((g.chi - 1.0).abs() <= 1e-8, "{}", g.chi);
        assert!(g.kg_defect <= 1e-10);
        let cat = catalog::critical_catenoid().unwrap();
        let g = gauss_bonnet_check(&cat.immersion, 128).unwrap();
        assert!(g.chi.abs() <= 1e-6);
        assert!((g.int_k.value + g.boundary_measure).abs() <= 1e-8);
        for c in [-1, 1] {
            let d = catalog::equatorial_disk(2, c).unwrap();
            let g = gauss_bonnet_check(&d.immersion, 64).unwrap();
            assert!((g.chi - 1.0).abs() <= 1e-8, "c = {c}: {}", g.chi);
            assert!(g.kg_defect <= 1e-10, "c = {c}: {}", g.kg_defect);
        }
    }

    #[test]
    fn divergence_theorem_on_catenoid() {
        let e = catalog::critical_catenoid().unwrap();
        let ctx = FieldContext::new(&e.immersion, e.immersion.domain().grid(128), 4).unwrap();
        let d = divergence_check(&e.immersion, &ctx).unwrap();
        assert!((d.interior - d.boundary).abs() <= 1e-3 * d.boundary.abs(), "{d:?}");
    }
}
