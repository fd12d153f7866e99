//! Umbilic points of surfaces: zeros of the Hopf function, their
//! multiplicities by winding numbers, the Euler-characteristic count, and
//! the logarithmic boundary identity on synthetic data.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Axis, Face, ParamDomain};
use crate::error::{Error, Result};
use crate::immersion::{FundamentalData, Immersion};
use crate::quadrature::axis_rule;

/// Hopf function `w = (φ₁₁ − φ₂₂)/2 − iφ₁₂` in the `ĝ`-orthonormal frame
/// obtained by Gram–Schmidt from `∂₁X, ∂₂X`; `|w|² = |φ|²/2`.
pub fn hopf_value(fd: &FundamentalData) -> Complex64 {
    let g = &fd.metric;
    let a = 1.0 / g[(0, 0)].sqrt();
    let e1 = [a, 0.0];
    let p = g[(0, 1)] * a;
    let norm2 = (g[(1, 1)] - p * p).sqrt();
    let e2 = [-p * a / norm2, 1.0 / norm2];
    let h = |v: &[f64; 2], w: &[f64; 2]| fd.second_form_apply(v, w);
    let half_h = 0.5 * fd.mean_curvature;
    let p11 = h(&e1, &e1) - half_h;
    let p22 = h(&e2, &e2) - half_h;
    let p12 = h(&e1, &e2);
    Complex64::new(0.5 * (p11 - p22), -p12)
}

/// A located zero of `w`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Umbilic {
    pub location: Vec<f64>,
    pub multiplicity: u32,
    pub winding: i64,
    pub boundary: bool,
}

/// Loop samples per winding evaluation.
const LOOP_SAMPLES: usize = 512;
/// Largest accepted distance of a winding number from an integer.
pub const WINDING_RESIDUE: f64 = 0.1;
/// Below this `max |w|`, `φ` is treated as identically zero.
pub const VANISHING: f64 = 1e-9;

/// Where a candidate near the boundary is moved to, and which way is inside.
#[derive(Debug, Clone, Copy)]
struct BoundaryFoot {
    foot: [f64; 2],
    inward: [f64; 2],
}

/// A planar lattice of `|w|` samples with the loop evaluator.
struct Scan<'a> {
    counts: [usize; 2],
    periodic: [bool; 2],
    origin: [f64; 2],
    spacing: [f64; 2],
    /// `|w|` per node; NaN outside the region.
    abs: Vec<f64>,
    eval: &'a (dyn Fn([f64; 2]) -> Option<Complex64> + Sync),
    near_boundary: &'a (dyn Fn([f64; 2], f64) -> Option<BoundaryFoot> + Sync),
}

impl Scan<'_> {
    fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.origin[0] + i as f64 * self.spacing[0],
            self.origin[1] + j as f64 * self.spacing[1],
        ]
    }

    fn at(&self, i: isize, j: isize) -> Option<f64> {
        let idx = |k: isize, a: usize| -> Option<usize> {
            let n = self.counts[a] as isize;
            if self.periodic[a] {
                Some(k.rem_euclid(n) as usize)
            } else if k < 0 || k >= n {
                None
            } else {
                Some(k as usize)
            }
        };
        let (i, j) = (idx(i, 0)?, idx(j, 1)?);
        let v = self.abs[i * self.counts[1] + j];
        if v.is_nan() {
            None
        } else {
            Some(v)
        }
    }

    fn h(&self) -> f64 {
        self.spacing[0].max(self.spacing[1])
    }

    fn candidates(&self) -> Vec<(usize, usize)> {
        let [n0, n1] = self.counts;
        (0..n0 * n1)
            .into_par_iter()
            .filter_map(|f| {
                let (i, j) = (f / n1, f % n1);
                let v = self.at(i as isize, j as isize)?;
                let mut box_max: f64 = v;
                for di in -3isize..=3 {
                    for dj in -3isize..=3 {
                        if let Some(o) = self.at(i as isize + di, j as isize + dj) {
                            if di.abs() <= 1 && dj.abs() <= 1 && o < v {
                                return None;
                            }
                            box_max = box_max.max(o);
                        }
                    }
                }
                (v <= 0.5 * box_max).then_some((i, j))
            })
            .collect()
    }

    /// Winding of `w` along an arc `center + r(cos α t + sin α n)`,
    /// `α ∈ [0, span]`, in units of `2π·span/TAU`.
    fn arc_turns(&self, center: [f64; 2], r: f64, t: [f64; 2], n: [f64; 2], span: f64) -> Result<f64> {
        let m = LOOP_SAMPLES;
        let mut prev: Option<Complex64> = None;
        let mut total = 0.0;
        for k in 0..=m {
            let a = span * k as f64 / m as f64;
            let (s, c) = a.sin_cos();
            let p = [
                center[0] + r * (c * t[0] + s * n[0]),
                center[1] + r * (c * t[1] + s * n[1]),
            ];
            let w = (self.eval)(p)
                .ok_or_else(|| Error::hypothesis("winding loop leaves the chart"))?;
            if w.norm() == 0.0 {
                return Err(Error::NotIsolated("w vanishes on a winding loop".into()));
            }
            if let Some(q) = prev {
                total += (w / q).arg();
            }
            prev = Some(w);
        }
        Ok(total / TAU)
    }

    fn winding(&self, center: [f64; 2], r: f64, foot: Option<BoundaryFoot>) -> Result<f64> {
        match foot {
            None => self.arc_turns(center, r, [1.0, 0.0], [0.0, 1.0], TAU),
            Some(b) => {
                let t = [b.inward[1], -b.inward[0]];
                Ok(2.0 * self.arc_turns(b.foot, r, t, b.inward, PI)?)
            }
        }
    }

    fn detect(&self) -> Result<Vec<Umbilic>> {
        let max = self.abs.iter().filter(|v| !v.is_nan()).cloned().fold(0.0, f64::max);
        if max < VANISHING {
            return Err(Error::NotIsolated(
                "φ vanishes identically (totally umbilical); zeros are not isolated".into(),
            ));
        }
        let h = self.h();
        let (r1, r2) = (2.0 * h, 3.0 * h);
        let mut found: Vec<(Umbilic, f64)> = Vec::new();
        for (i, j) in self.candidates() {
            let p = self.point(i, j);
            let foot = (self.near_boundary)(p, 3.0 * h);
            let w1 = self.winding(p, r1, foot)?;
            let w2 = self.winding(p, r2, foot)?;
            for w in [w1, w2] {
                let residue = (w - w.round()).abs();
                if residue > WINDING_RESIDUE {
                    return Err(Error::NonIntegerWinding { winding: w, residue });
                }
            }
            if w1.round() != w2.round() {
                return Err(Error::UnresolvedCluster {
                    distance: r2 - r1,
                    radius: r2,
                });
            }
            let k = w1.round() as i64;
            if k == 0 {
                continue;
            }
            let location = foot.map_or(p, |b| b.foot).to_vec();
            found.push((
                Umbilic {
                    location,
                    multiplicity: k.unsigned_abs() as u32,
                    winding: k,
                    boundary: foot.is_some(),
                },
                self.abs[i * self.counts[1] + j],
            ));
        }
        // adjacent grid ties of one zero merge; anything closer than the loop
        // radius beyond that is an unresolved cluster
        found.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut kept: Vec<Umbilic> = Vec::new();
        for (z, _) in found {
            let mut duplicate = false;
            for k in &kept {
                let d = self.distance(&z.location, &k.location);
                if d <= 1.5 * h {
                    duplicate = true;
                } else if d < r2 {
                    return Err(Error::UnresolvedCluster { distance: d, radius: r2 });
                }
            }
            if !duplicate {
                kept.push(z);
            }
        }
        kept.sort_by(|a, b| {
            a.location[0]
                .total_cmp(&b.location[0])
                .then(a.location[1].total_cmp(&b.location[1]))
        });
        Ok(kept)
    }

    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut d2 = 0.0;
        for k in 0..2 {
            let mut d = (a[k] - b[k]).abs();
            if self.periodic[k] {
                let period = self.counts[k] as f64 * self.spacing[k];
                d = d.min(period - d);
            }
            d2 += d * d;
        }
        d2.sqrt()
    }
}

/// Hopf function on the parameter grid of a surface.
#[derive(Debug, Clone)]
pub struct HopfField {
    pub resolution: usize,
    pub values: Vec<Complex64>,
    /// Largest `| |w|² − |φ|²/2 |` over the grid.
    pub consistency: f64,
}

impl HopfField {
    pub fn new(imm: &Immersion, resolution: usize) -> Result<Self> {
        if imm.n() != 2 {
            return Err(Error::hypothesis("Hopf function needs n = 2"));
        }
        let grid = imm.domain().grid(resolution);
        let pairs: Vec<(Complex64, f64)> = (0..grid.len())
            .into_par_iter()
            .map(|f| match imm.fundamental_data(&grid.point_flat(f)) {
                Ok(fd) => {
                    let w = hopf_value(&fd);
                    (w, (w.norm_sqr() - 0.5 * fd.umbilicity_sq).abs())
                }
                Err(_) => (Complex64::new(f64::NAN, f64::NAN), 0.0),
            })
            .collect();
        let consistency = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
        Ok(HopfField {
            resolution,
            values: pairs.into_iter().map(|p| p.0).collect(),
            consistency,
        })
    }
}

fn param_foot(domain: &ParamDomain, faces: &[Face], p: [f64; 2], within: f64) -> Option<BoundaryFoot> {
    let mut best: Option<(f64, BoundaryFoot)> = None;
    for face in faces {
        let c = domain.face_coordinate(*face);
        let d = (p[face.axis] - c).abs();
        if d < within && best.map_or(true, |b| d < b.0) {
            let mut foot = p;
            foot[face.axis] = c;
            let mut inward = [0.0; 2];
            inward[face.axis] = -face.side.outward_sign();
            best = Some((d, BoundaryFoot { foot, inward }));
        }
    }
    best.map(|b| b.1)
}

/// Umbilic points of a surface with their multiplicities.
pub fn detect_umbilics(imm: &Immersion, resolution: usize) -> Result<Vec<Umbilic>> {
    let field = HopfField::new(imm, resolution)?;
    let domain = imm.domain();
    let grid = domain.grid(resolution);
    let faces = domain.boundary_faces();
    let eval = |p: [f64; 2]| -> Option<Complex64> {
        let mut u = p.to_vec();
        for (a, axis) in domain.axes().iter().enumerate() {
            if let Axis::Interval { lo, hi, .. } = *axis {
                let slack = 1e-12 * (hi - lo);
                if u[a] < lo - slack || u[a] > hi + slack {
                    return None;
                }
                u[a] = u[a].clamp(lo, hi);
            }
        }
        domain.wrap(&mut u);
        imm.fundamental_data(&u).ok().map(|fd| hopf_value(&fd))
    };
    let near = |p: [f64; 2], within: f64| param_foot(domain, &faces, p, within);
    let scan = Scan {
        counts: [grid.counts()[0], grid.counts()[1]],
        periodic: [domain.axis(0).is_periodic(), domain.axis(1).is_periodic()],
        origin: [domain.axis(0).bounds().0, domain.axis(1).bounds().0],
        spacing: [grid.spacing()[0], grid.spacing()[1]],
        abs: field.values.iter().map(|w| w.norm()).collect(),
        eval: &eval,
        near_boundary: &near,
    };
    scan.detect()
}

/// `χ`, `θ_Σ`, `θ_∂Σ` and `χ + θ_Σ/2 + θ_∂Σ/4`.
#[derive(Debug, Clone, Serialize)]
pub struct EulerCount {
    pub chi: f64,
    pub theta_interior: u32,
    pub theta_boundary: u32,
    pub residual: f64,
    pub umbilics: Vec<Umbilic>,
}

/// Count umbilics against the Euler characteristic `chi` (from Gauss–Bonnet).
pub fn euler_count_check(imm: &Immersion, resolution: usize, chi: f64) -> Result<EulerCount> {
    if (chi - 1.0).abs() < 0.5 {
        return Err(Error::hypothesis(
            "hypothesis 'Σ is not a disk' fails: χ(Σ) = 1",
        ));
    }
    let umbilics = detect_umbilics(imm, resolution)?;
    let theta_interior = umbilics.iter().filter(|u| !u.boundary).map(|u| u.multiplicity).sum();
    let theta_boundary = umbilics.iter().filter(|u| u.boundary).map(|u| u.multiplicity).sum();
    Ok(EulerCount {
        chi,
        theta_interior,
        theta_boundary,
        residual: chi + theta_interior as f64 / 2.0 + theta_boundary as f64 / 4.0,
        umbilics,
    })
}

/// Planar region of a synthetic function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SyntheticDomain {
    Disk,
    Annulus { inner: f64 },
}

/// `φ = |ψ|·f` on the unit disk or an annulus, with `ψ = Π (z − z_k)^{m_k}`
/// and `f = e^g`.
#[derive(Clone)]
pub struct SyntheticPhi {
    pub zeros: Vec<(Complex64, u32)>,
    pub log_f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub domain: SyntheticDomain,
}

impl std::fmt::Debug for SyntheticPhi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SyntheticPhi")
            .field("zeros", &self.zeros)
            .field("domain", &self.domain)
            .finish()
    }
}

impl SyntheticPhi {
    pub fn new(zeros: Vec<(Complex64, u32)>, domain: SyntheticDomain) -> Self {
        SyntheticPhi {
            zeros,
            log_f: Arc::new(|_, _| 0.0),
            domain,
        }
    }

    pub fn with_log_f(mut self, g: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.log_f = Arc::new(g);
        self
    }

    pub fn psi(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, (a, m)| acc * (z - a).powu(*m))
    }

    /// `ψ'/ψ`.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .map(|(a, m)| *m as f64 / (z - a))
            .sum()
    }

    /// `ψ·f`, whose modulus is `φ`.
    pub fn w(&self, z: Complex64) -> Complex64 {
        self.psi(z) * (self.log_f)(z.re, z.im).exp()
    }

    pub fn value(&self, z: Complex64) -> f64 {
        self.w(z).norm()
    }

    fn inner(&self) -> f64 {
        match self.domain {
            SyntheticDomain::Disk => 0.0,
            SyntheticDomain::Annulus { inner } => inner,
        }
    }

    fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        r <= 1.0 && r >= self.inner()
    }

    /// Euclidean Laplacian of `g = log f` (fourth-order differences).
    fn laplacian_log_f(&self, x: f64, y: f64) -> f64 {
        let h = 1e-3;
        let g = &self.log_f;
        let d2 = |f: &dyn Fn(f64) -> f64| {
            (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h)
        };
        d2(&|t| g(x + t, y)) + d2(&|t| g(x, y + t))
    }

    fn radial_derivative_log_f(&self, z: Complex64) -> f64 {
        let h = 1e-5;
        let d = z / z.norm();
        let g = &self.log_f;
        let p = z + d * h;
        let m = z - d * h;
        (g(p.re, p.im) - g(m.re, m.im)) / (2.0 * h)
    }
}

/// Zeros of `ψ·f` on a Cartesian grid with `resolution` cells across `[−1, 1]`.
pub fn detect_synthetic(phi: &SyntheticPhi, resolution: usize) -> Result<Vec<Umbilic>> {
    let n = resolution + 1;
    let h = 2.0 / resolution as f64;
    let abs: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|f| {
            let z = Complex64::new(-1.0 + (f / n) as f64 * h, -1.0 + (f % n) as f64 * h);
            if phi.contains(z) {
                phi.value(z)
            } else {
                f64::NAN
            }
        })
        .collect();
    let eval = |p: [f64; 2]| Some(phi.w(Complex64::new(p[0], p[1])));
    let inner = phi.inner();
    let near = |p: [f64; 2], within: f64| -> Option<BoundaryFoot> {
        let z = Complex64::new(p[0], p[1]);
        let r = z.norm();
        if r == 0.0 {
            return None;
        }
        let d = z / r;
        if (1.0 - r).abs() < within {
            return Some(BoundaryFoot {
                foot: [d.re, d.im],
                inward: [-d.re, -d.im],
            });
        }
        if inner > 0.0 && (r - inner).abs() < within {
            return Some(BoundaryFoot {
                foot: [inner * d.re, inner * d.im],
                inward: [d.re, d.im],
            });
        }
        None
    };
    Scan {
        counts: [n, n],
        periodic: [false, false],
        origin: [-1.0, -1.0],
        spacing: [h, h],
        abs,
        eval: &eval,
        near_boundary: &near,
    }
    .detect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LogLemma {
    /// `∫ Δ log f` (the harmonic part `log|ψ|` contributes nothing).
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub theta_interior: u32,
    pub theta_boundary: u32,
    /// `∮ ν(φ)/φ`.
    pub boundary_integral: f64,
}

/// `∫Δ log φ = −2πθ_Σ − πθ_∂Σ + ∮ ν(φ)φ⁻¹`, with multiplicities detected
/// on a grid of `resolution` cells.
pub fn log_lemma_check(phi: &SyntheticPhi, resolution: usize) -> Result<LogLemma> {
    let zeros = detect_synthetic(phi, resolution)?;
    let theta_interior: u32 = zeros.iter().filter(|z| !z.boundary).map(|z| z.multiplicity).sum();
    let theta_boundary: u32 = zeros.iter().filter(|z| z.boundary).map(|z| z.multiplicity).sum();

    let inner = phi.inner();
    let radial = Axis::interval(inner, 1.0, crate::domain::FaceKind::Marked, crate::domain::FaceKind::Marked);
    let (rs, rw) = axis_rule(&radial, resolution.max(64));
    let m = 4 * resolution.max(64);
    let thetas: Vec<f64> = (0..m).map(|k| TAU * (k as f64 + 0.5) / m as f64).collect();
    let dt = TAU / m as f64;
    let rows: Vec<f64> = rs
        .par_iter()
        .zip(&rw)
        .map(|(&r, &w)| {
            let s: f64 = thetas
                .iter()
                .map(|&t| phi.laplacian_log_f(r * t.cos(), r * t.sin()))
                .sum();
            w * r * dt * s
        })
        .collect();
    let lhs: f64 = rows.iter().sum();

    let mut boundary_integral = 0.0;
    let circles: Vec<(f64, f64)> = if inner > 0.0 {
        vec![(1.0, 1.0), (inner, -1.0)]
    } else {
        vec![(1.0, 1.0)]
    };
    for (radius, sign) in circles {
        let mut acc = 0.0;
        for &t in &thetas {
            let z = Complex64::from_polar(radius, t);
            let nu = z / radius * sign;
            let v = (phi.log_derivative(z) * nu).re + sign * phi.radial_derivative_log_f(z);
            if !v.is_finite() {
                return Err(Error::NonIntegrable(format!(
                    "ν(φ)/φ is not finite at z = {z:.6}"
                )));
            }
            acc += v;
        }
        boundary_integral += acc * dt * radius;
    }
    let rhs = -TAU * theta_interior as f64 - PI * theta_boundary as f64 + boundary_integral;
    Ok(LogLemma {
        lhs,
        rhs,
        residual: lhs - rhs,
        theta_interior,
        theta_boundary,
        boundary_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hopf_modulus_matches_umbilicity() {
        let e = catalog::critical_catenoid().unwrap();
        let f = HopfField::new(&e.immersion, 32).unwrap();
        assert!(f.consistency <= 1e-10);
        let cap = catalog::perturbed_cap(1e-2).unwrap();
        let f = HopfField::new(&cap.immersion, 32).unwrap();
        assert!(f.consistency <= 1e-10);
    }

    #[test]
    fn catenoid_has_no_umbilics() {
        let e = catalog::critical_catenoid().unwrap();
        assert!(detect_umbilics(&e.immersion, 64).unwrap().is_empty());
        let r = euler_count_check(&e.immersion, 64, 0.0).unwrap();
        assert_eq!((r.theta_interior, r.theta_boundary), (0, 0));
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn umbilical_and_disk_inputs_are_rejected() {
        let cap = catalog::spherical_cap(2, 1.0).unwrap();
        assert!(matches!(detect_umbilics(&cap.immersion, 32), Err(Error::NotIsolated(_))));
        let d = catalog::equatorial_disk(2, 0).unwrap();
        let err = euler_count_check(&d.immersion, 32, 1.0).unwrap_err();
        assert!(err.to_string().contains("is not a disk"));
    }

    #[test]
    fn synthetic_multiplicities() {
        let phi = SyntheticPhi::new(vec![(c(0.0, 0.0), 2)], SyntheticDomain::Disk);
        let z = detect_synthetic(&phi, 100).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!((z[0].multiplicity, z[0].boundary), (2, false));
        let phi = SyntheticPhi::new(vec![(c(1.0, 0.0), 1)], SyntheticDomain::Disk);
        let z = detect_synthetic(&phi, 100).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!((z[0].multiplicity, z[0].boundary), (1, true));
    }

    #[test]
    fn log_lemma_closed_forms() {
        let r = log_lemma_check(&SyntheticPhi::new(vec![(c(0.0, 0.0), 1)], SyntheticDomain::Disk), 100).unwrap();
        assert!(r.lhs.abs() <= 1e-9 && r.residual.abs() <= 1e-6, "{r:?}");
        assert!((r.boundary_integral - TAU).abs() <= 1e-9);
        let r = log_lemma_check(&SyntheticPhi::new(vec![(c(1.0, 0.0), 1)], SyntheticDomain::Disk), 100).unwrap();
        assert_eq!((r.theta_interior, r.theta_boundary), (0, 1));
        assert!((r.boundary_integral - PI).abs() <= 1e-9);
        assert!(r.residual.abs() <= 1e-6, "{r:?}");
        let phi = SyntheticPhi::new(vec![], SyntheticDomain::Disk).with_log_f(|x, y| 0.3 * x * x + 0.2 * y.powi(3) + 0.1 * x * y);
        let r = log_lemma_check(&phi, 100).unwrap();
        assert!((r.lhs - 0.6 * PI).abs() <= 1e-6);
        assert!(r.residual.abs() <= 1e-6, "{r:?}");
    }

    #[test]
    fn log_lemma_on_an_annulus() {
        let phi = SyntheticPhi::new(vec![(c(0.5, 0.3), 2), (c(-0.6, 0.0), 1)], SyntheticDomain::Annulus { inner: 0.25 })
            .with_log_f(|x, y| (x * x + y * y) * 0.5 + 0.2 * x);
        let r = log_lemma_check(&phi, 120).unwrap();
        assert_eq!(r.theta_interior, 3);
        assert!(r.residual.abs() <= 1e-6, "{r:?}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn zero_set() -> impl Strategy<Value = Vec<(Complex64, u32)>> {
            prop::collection::vec((0.0f64..0.75, 0.0f64..TAU, 1u32..=3), 1..=4).prop_filter_map(
                "separated, total degree at most 5",
                |raw| {
                    let zs: Vec<(Complex64, u32)> =
                        raw.into_iter().map(|(r, t, m)| (Complex64::from_polar(r, t), m)).collect();
                    let degree: u32 = zs.iter().map(|z| z.1).sum();
                    let separated = zs.iter().enumerate().all(|(i, a)| {
                        zs[i + 1..].iter().all(|b| (a.0 - b.0).norm() >= 0.15)
                    });
                    (degree <= 5 && separated).then_some(zs)
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(50))]
            #[test]
            fn recovers_polynomial_multiplicities(zs in zero_set()) {
                let phi = SyntheticPhi::new(zs.clone(), SyntheticDomain::Disk)
                    .with_log_f(|x, y| 0.2 * x - 0.1 * y * y);
                let found = detect_synthetic(&phi, 160).unwrap();
                prop_assert_eq!(found.len(), zs.len());
                for (z, m) in &zs {
                    let hit = found
                        .iter()
                        .find(|u| (Complex64::new(u.location[0], u.location[1]) - z).norm() <= 0.02)
                        .expect("zero not located");
                    prop_assert_eq!(hit.multiplicity, *m);
                    prop_assert!(!hit.boundary);
                }
                let r = log_lemma_check(&phi, 160).unwrap();
                prop_assert!(r.residual.abs() <= 1e-6, "{:?}", r);
            }
        }
    }
}
