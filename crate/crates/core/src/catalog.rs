//! Closed-form immersions with analytic jets and declared metadata.
//!
//! Every entry is a hypersurface of revolution `X(s, ω) = (r(s) ω, z(s))`
//! around the last coordinate axis, or the boundary sphere itself, so one
//! jet implementation covers all of them.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use serde::Serialize;

use crate::ambient::{AmbientModel, RadiusConvention};
use crate::domain::{Axis, Face, FaceKind, ParamDomain};
use crate::error::{Error, Result};
use crate::immersion::{Immersion, Jet, OrientationSeed, Parametrization};
use crate::quadrature::integrate_1d;

/// Angular chart of the unit sphere `S^m ⊂ ℝ^{m+1}`:
/// `ω_0 = cos a_0`, `ω_i = sin a_0 ⋯ sin a_{i−1} cos a_i`,
/// `ω_m = sin a_0 ⋯ sin a_{m−1}`, with `a_{m−1}` periodic.
#[derive(Debug, Clone, Copy)]
pub struct SphereChart {
    pub m: usize,
}

#[derive(Clone, Copy, PartialEq)]
enum Factor {
    Sin,
    Cos,
    One,
}

fn factor(f: Factor, a: f64, order: usize) -> f64 {
    let (s, c) = a.sin_cos();
    match (f, order % 4) {
        (Factor::One, 0) => 1.0,
        (Factor::One, _) => 0.0,
        (Factor::Sin, 0) => s,
        (Factor::Sin, 1) => c,
        (Factor::Sin, 2) => -s,
        (Factor::Sin, _) => -c,
        (Factor::Cos, 0) => c,
        (Factor::Cos, 1) => -s,
        (Factor::Cos, 2) => -c,
        (Factor::Cos, _) => s,
    }
}

/// `ω`, `∂_j ω` and `∂_j ∂_k ω` at one angle vector.
pub struct SphereJet {
    pub value: Vec<f64>,
    pub first: Vec<Vec<f64>>,
    pub second: Vec<Vec<Vec<f64>>>,
}

impl SphereChart {
    fn kind(&self, component: usize, angle: usize) -> Factor {
        if component == self.m || angle < component {
            if angle < component {
                Factor::Sin
            } else {
                Factor::One
            }
        } else if angle == component {
            Factor::Cos
        } else {
            Factor::One
        }
    }

    fn product(&self, i: usize, a: &[f64], orders: &[usize]) -> f64 {
        (0..self.m)
            .map(|j| factor(self.kind(i, j), a[j], orders[j]))
            .product()
    }

    pub fn jet(&self, a: &[f64]) -> SphereJet {
        let m = self.m;
        let mut orders = vec![0; m];
        let value = (0..=m).map(|i| self.product(i, a, &orders)).collect();
        let mut first = vec![vec![0.0; m + 1]; m];
        let mut second = vec![vec![vec![0.0; m + 1]; m]; m];
        for j in 0..m {
            orders[j] += 1;
            for i in 0..=m {
                first[j][i] = self.product(i, a, &orders);
            }
            for k in 0..m {
                orders[k] += 1;
                for i in 0..=m {
                    second[j][k][i] = self.product(i, a, &orders);
                }
                orders[k] -= 1;
            }
            orders[j] -= 1;
        }
        SphereJet {
            value,
            first,
            second,
        }
    }

    /// Angular axes: `[0, π]` with pole faces, the last one periodic.
    pub fn axes(&self) -> Vec<Axis> {
        let mut out: Vec<Axis> = (0..self.m - 1)
            .map(|_| Axis::interval(0.0, PI, FaceKind::Pole, FaceKind::Pole))
            .collect();
        out.push(Axis::periodic(0.0, TAU));
        out
    }
}

/// Profile value and its first two derivatives.
pub type Profile3 = [f64; 3];

/// Hypersurface of revolution `X(s, a) = (r(s) ω(a), z(s))` in `ℝ^{n+1}`.
pub struct Revolution<P> {
    sphere: SphereChart,
    profile: P,
}

impl<P> Revolution<P>
where
    P: Fn(f64) -> (Profile3, Profile3) + Send + Sync,
{
    pub fn new(n: usize, profile: P) -> Self {
        Revolution {
            sphere: SphereChart { m: n - 1 },
            profile,
        }
    }
}

impl<P> Parametrization for Revolution<P>
where
    P: Fn(f64) -> (Profile3, Profile3) + Send + Sync,
{
    fn param_dim(&self) -> usize {
        self.sphere.m + 1
    }

    fn jet(&self, u: &[f64]) -> Jet {
        let n = self.param_dim();
        let ([r, r1, r2], [z, z1, z2]) = (self.profile)(u[0]);
        let w = self.sphere.jet(&u[1..]);
        let mut jet = Jet::zeros(n);
        let last = n;
        for i in 0..n {
            jet.position[i] = r * w.value[i];
            jet.first[0][i] = r1 * w.value[i];
            jet.second[0][0][i] = r2 * w.value[i];
        }
        jet.position[last] = z;
        jet.first[0][last] = z1;
        jet.second[0][0][last] = z2;
        for j in 0..n - 1 {
            for i in 0..n {
                jet.first[j + 1][i] = r * w.first[j][i];
                jet.second[0][j + 1][i] = r1 * w.first[j][i];
                jet.second[j + 1][0][i] = r1 * w.first[j][i];
                for k in 0..n - 1 {
                    jet.second[j + 1][k + 1][i] = r * w.second[j][k][i];
                }
            }
        }
        jet
    }
}

/// The round sphere of radius `radius` in `ℝ^{n+1}`, fully charted.
pub struct RoundSphere {
    sphere: SphereChart,
    radius: f64,
}

impl Parametrization for RoundSphere {
    fn param_dim(&self) -> usize {
        self.sphere.m
    }

    fn jet(&self, u: &[f64]) -> Jet {
        let w = self.sphere.jet(u);
        Jet {
            position: w.value,
            first: w.first,
            second: w.second,
        }
        .affine(self.radius, &vec![0.0; self.sphere.m + 1])
    }
}

/// Which hypothesis a negative variant breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Broken {
    /// Boundary no longer meets `∂B` orthogonally.
    Orthogonality,
    /// Boundary leaves `∂B`.
    Containment,
    /// Mean curvature no longer constant.
    ConstantMeanCurvature,
}

/// One boundary component: the marked faces that make it up and its
/// Euler characteristic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryComponent {
    pub faces: Vec<Face>,
    pub chi: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub declared_h: Option<f64>,
    pub is_free_boundary: bool,
    /// Euler characteristic of Σ, when known by construction.
    pub chi: Option<i32>,
    pub components: Vec<BoundaryComponent>,
    pub totally_umbilical: bool,
    /// Closed hypersurface (the boundary sphere); no boundary checks apply.
    pub closed: bool,
    pub broken: Option<Broken>,
    /// Check identifiers whose hypotheses the entry is built to satisfy.
    pub applicable: Vec<&'static str>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub immersion: Arc<Immersion>,
    pub meta: Metadata,
}

impl CatalogEntry {
    pub fn n(&self) -> usize {
        self.immersion.n()
    }

    pub fn model(&self) -> &AmbientModel {
        self.immersion.model()
    }
}

/// Positive root of `t·tanh t = 1` (bisection to machine precision).
pub fn catenoid_t0() -> f64 {
    bisect(|t| t * t.tanh() - 1.0, 0.5, 2.0)
}

/// Scale putting the critical catenoid's boundary on the unit sphere.
pub fn catenoid_scale(t0: f64) -> f64 {
    1.0 / (t0.cosh().powi(2) + t0 * t0).sqrt()
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    assert!(fa * f(b) < 0.0, "bisection needs a sign change");
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if (f(m) < 0.0) == (fa < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn revolution_domain(n: usize, lo: f64, hi: f64, lo_face: FaceKind, hi_face: FaceKind) -> ParamDomain {
    let mut axes = vec![Axis::interval(lo, hi, lo_face, hi_face)];
    axes.extend(SphereChart { m: n - 1 }.axes());
    ParamDomain::new(axes)
}

fn seed_at(domain: &ParamDomain, s: f64, direction: Vec<f64>) -> OrientationSeed {
    let mut point = domain.center();
    point[0] = s;
    OrientationSeed { point, direction }
}

fn last_axis(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n + 1];
    v[n] = 1.0;
    v
}

fn components_of(domain: &ParamDomain, chi_each: i32) -> Vec<BoundaryComponent> {
    domain
        .marked_faces()
        .into_iter()
        .map(|f| BoundaryComponent {
            faces: vec![f],
            chi: chi_each,
        })
        .collect()
}

/// Euler characteristic of the round `(n−1)`-sphere.
fn sphere_chi(dim: usize) -> i32 {
    if dim % 2 == 0 {
        2
    } else {
        0
    }
}

const POINTWISE: &[&str] = &["constant-mean-curvature", "simons-inequality"];

fn applicable(n: usize, c: f64, free: bool, umbilic: bool, chi: Option<i32>) -> Vec<&'static str> {
    let mut out: Vec<&'static str> = POINTWISE.to_vec();
    if n == 2 {
        out.push("gauss-equation");
        out.push("gauss-bonnet");
    }
    if free {
        out.extend([
            "free-boundary-containment",
            "free-boundary-orthogonality",
            "conormal-principal",
            "boundary-identity-i",
            "boundary-identity-remark",
            "boundary-identity-ii",
            "boundary-conormal-sign",
            "umbilic-boundary-rigidity",
        ]);
        if n >= 3 && c <= 0.0 {
            out.extend(["hardy-inequality", "first-inequality"]);
            if n == 3 {
                out.push("first-inequality-3d");
            }
        }
    }
    if !umbilic {
        out.push("second-inequality");
        out.push("divergence-theorem");
        if n == 2 {
            out.push("codazzi-boundary-derivative");
            if free {
                out.extend(["boundary-log-identity", "topology-chain"]);
                if chi != Some(1) {
                    out.push("euler-umbilic-formula");
                }
            }
        }
    }
    out
}

/// Totally geodesic `n`-disk through the origin.
pub fn equatorial_disk(n: usize, c: i32) -> Result<CatalogEntry> {
    let convention = if c == 1 {
        RadiusConvention::GeodesicUnit
    } else {
        RadiusConvention::GaugeUnit
    };
    let model = AmbientModel::new(c, n + 1, convention)?;
    let radius = model.radius();
    let domain = revolution_domain(n, 0.0, 1.0, FaceKind::Pole, FaceKind::Marked);
    let map = Arc::new(Revolution::new(n, move |rho: f64| {
        ([radius * rho, radius, 0.0], [0.0; 3])
    }));
    let seed = seed_at(&domain, 0.5, last_axis(n));
    let imm = Immersion::new(model, domain.clone(), map, Some(0.0), seed)?;
    let meta = Metadata {
        declared_h: Some(0.0),
        is_free_boundary: true,
        chi: Some(1),
        components: components_of(&domain, sphere_chi(n - 1)),
        totally_umbilical: true,
        closed: false,
        broken: None,
        applicable: applicable(n, c as f64, true, true, Some(1)),
    };
    Ok(CatalogEntry {
        id: format!("equatorial_disk_{n}_{c}"),
        description: format!("equatorial {n}-disk, c = {c}"),
        immersion: Arc::new(imm),
        meta,
    })
}

/// Free-boundary spherical cap of sphere-radius `big_r` in the Euclidean
/// unit ball: center on the last axis at distance `√(1 + R²)`.
pub fn spherical_cap(n: usize, big_r: f64) -> Result<CatalogEntry> {
    if !(big_r > 0.0) {
        return Err(Error::Usage(format!("cap radius must be positive, got {big_r}")));
    }
    perturbed_cap_with(n, big_r, 0.0)
}

fn perturbed_cap_with(n: usize, big_r: f64, eps: f64) -> Result<CatalogEntry> {
    let model = AmbientModel::euclidean(n + 1);
    let d = (1.0 + big_r * big_r).sqrt();
    let psi_max = (big_r / d).acos();
    let domain = revolution_domain(n, 0.0, psi_max, FaceKind::Pole, FaceKind::Marked);
    let map = Arc::new(Revolution::new(n, move |psi: f64| {
        // ρ(ψ) = R + ε b(ψ), b = (1 − (ψ/ψ_max)²)³
        let q = psi / psi_max;
        let w = 1.0 - q * q;
        let b = w * w * w;
        let b1 = -6.0 * q * w * w / psi_max;
        let b2 = (-6.0 * w * w + 24.0 * q * q * w) / (psi_max * psi_max);
        let (rho, rho1, rho2) = (big_r + eps * b, eps * b1, eps * b2);
        let (s, c) = psi.sin_cos();
        let r = [rho * s, rho1 * s + rho * c, rho2 * s + 2.0 * rho1 * c - rho * s];
        let z = [d - rho * c, -rho1 * c + rho * s, -rho2 * c + 2.0 * rho1 * s + rho * c];
        (r, z)
    }));
    // the upward axis has positive component along the inward sphere normal
    let seed = seed_at(&domain, 0.5 * psi_max, last_axis(n));
    let h = n as f64 / big_r;
    let imm = Immersion::new(model, domain.clone(), map, Some(h), seed)?;
    let perturbed = eps != 0.0;
    let mut meta = Metadata {
        declared_h: Some(h),
        is_free_boundary: true,
        chi: Some(1),
        components: components_of(&domain, sphere_chi(n - 1)),
        totally_umbilical: !perturbed,
        closed: false,
        broken: None,
        applicable: applicable(n, 0.0, true, true, Some(1)),
    };
    let (id, description) = if perturbed {
        meta.broken = Some(Broken::ConstantMeanCurvature);
        meta.applicable.retain(|c| *c != "constant-mean-curvature");
        (
            "perturbed_cap".to_string(),
            format!("cap R = {big_r} with a radial bump of size {eps}; not CMC"),
        )
    } else {
        (
            format!("spherical_cap_{n}_{big_r}"),
            format!("free-boundary spherical cap, n = {n}, sphere radius {big_r}"),
        )
    };
    Ok(CatalogEntry {
        id,
        description,
        immersion: Arc::new(imm),
        meta,
    })
}

fn catenoid_with(t_max: f64, id: &str, free: bool) -> Result<CatalogEntry> {
    let s = catenoid_scale(t_max);
    let model = AmbientModel::euclidean(3);
    let domain = revolution_domain(2, -t_max, t_max, FaceKind::Marked, FaceKind::Marked);
    let map = Arc::new(Revolution::new(2, move |t: f64| {
        let (ch, sh) = (t.cosh(), t.sinh());
        ([s * ch, s * sh, s * ch], [s * t, s, 0.0])
    }));
    let seed = seed_at(&domain, 0.0, vec![1.0, 0.0, 0.0]);
    let imm = Immersion::new(model, domain.clone(), map, Some(0.0), seed)?;
    let mut meta = Metadata {
        declared_h: Some(0.0),
        is_free_boundary: free,
        chi: Some(0),
        components: components_of(&domain, 0),
        totally_umbilical: false,
        closed: false,
        broken: None,
        applicable: applicable(2, 0.0, free, false, Some(0)),
    };
    if !free {
        meta.broken = Some(Broken::Orthogonality);
    }
    Ok(CatalogEntry {
        id: id.to_string(),
        description: if free {
            "critical catenoid in the Euclidean unit ball".into()
        } else {
            format!("catenoid truncated at |t| = {t_max:.6}, rescaled into the unit sphere")
        },
        immersion: Arc::new(imm),
        meta,
    })
}

/// The critical catenoid, `X = s(cosh t cos θ, cosh t sin θ, t)`.
pub fn critical_catenoid() -> Result<CatalogEntry> {
    catenoid_with(catenoid_t0(), "critical_catenoid", true)
}

/// Height function of the 3-dimensional catenoid with neck radius 1:
/// `z(τ) = ∫₀^τ cosh^{−1/2}(2σ) dσ`.
fn catenoid3_height(tau: f64) -> f64 {
    integrate_1d(0.0, tau, 2, |x| (2.0 * x).cosh().powf(-0.5))
}

/// Free-boundary minimal catenoid in `B⁴`: profile
/// `r = cosh^{1/2}(2τ)`, `z' = cosh^{−1/2}(2τ)`, rescaled so that the
/// boundary spheres lie on the unit sphere.
pub fn critical_catenoid_3() -> Result<CatalogEntry> {
    // free boundary ⇔ (r, z) ∥ (r', z') ⇔ z r' = r z' = 1
    let tau0 = bisect(
        |t| {
            let c = (2.0 * t).cosh();
            catenoid3_height(t) * (2.0 * t).sinh() / c.sqrt() - 1.0
        },
        0.1,
        3.0,
    );
    let r0 = (2.0 * tau0).cosh().sqrt();
    let z0 = catenoid3_height(tau0);
    let k = 1.0 / (r0 * r0 + z0 * z0).sqrt();
    let model = AmbientModel::euclidean(4);
    let domain = revolution_domain(3, -tau0, tau0, FaceKind::Marked, FaceKind::Marked);
    let map = Arc::new(Revolution::new(3, move |t: f64| {
        let c = (2.0 * t).cosh();
        let s = (2.0 * t).sinh();
        let r = [c.sqrt(), s / c.sqrt(), (c * c + 1.0) / c.powf(1.5)];
        let z = [catenoid3_height(t), 1.0 / c.sqrt(), -s / c.powf(1.5)];
        (r.map(|v| k * v), z.map(|v| k * v))
    }));
    let seed = seed_at(&domain, 0.0, vec![1.0, 0.0, 0.0, 0.0]);
    let imm = Immersion::new(model, domain.clone(), map, Some(0.0), seed)?;
    let meta = Metadata {
        declared_h: Some(0.0),
        is_free_boundary: true,
        chi: Some(0),
        components: components_of(&domain, 2),
        totally_umbilical: false,
        closed: false,
        broken: None,
        applicable: applicable(3, 0.0, true, false, Some(0)),
    };
    Ok(CatalogEntry {
        id: "critical_catenoid_3".into(),
        description: "free-boundary minimal catenoid in the unit ball of R^4".into(),
        immersion: Arc::new(imm),
        meta,
    })
}

/// The boundary sphere `∂B` itself, outward normal.
pub fn boundary_sphere(n: usize, c: i32) -> Result<CatalogEntry> {
    let convention = if c == 1 {
        RadiusConvention::GeodesicUnit
    } else {
        RadiusConvention::GaugeUnit
    };
    let model = AmbientModel::new(c, n + 1, convention)?;
    let chart = SphereChart { m: n };
    let domain = ParamDomain::new(chart.axes());
    let map = Arc::new(RoundSphere {
        sphere: chart,
        radius: model.radius(),
    });
    let (kappa, _) = model.boundary_sphere_shape();
    let h = n as f64 * kappa;
    let seed_point = domain.center();
    let direction = map.position(&seed_point);
    let imm = Immersion::new(
        model,
        domain,
        map,
        Some(h),
        OrientationSeed {
            point: seed_point,
            direction,
        },
    )?;
    let meta = Metadata {
        declared_h: Some(h),
        is_free_boundary: false,
        chi: Some(sphere_chi(n)),
        components: Vec::new(),
        totally_umbilical: true,
        closed: true,
        broken: None,
        applicable: vec!["boundary-sphere-umbilic", "constant-mean-curvature", "simons-inequality"],
    };
    Ok(CatalogEntry {
        id: format!("boundary_sphere_{n}_{c}"),
        description: format!("boundary sphere of the unit {}-ball, c = {c}", n + 1),
        immersion: Arc::new(imm),
        meta,
    })
}

/// Catenoid truncated at `0.8·t₀` and rescaled into the unit sphere: the
/// boundary lies on `∂B` but meets it at an angle.
pub fn truncated_catenoid() -> Result<CatalogEntry> {
    catenoid_with(0.8 * catenoid_t0(), "truncated_catenoid", false)
}

/// Equatorial disk dilated by `1 + δ`: boundary off `∂B`, still orthogonal
/// to the spheres through it.
pub fn dilated_disk(delta: f64) -> Result<CatalogEntry> {
    let model = AmbientModel::euclidean(3);
    let domain = revolution_domain(2, 0.0, 1.0, FaceKind::Pole, FaceKind::Marked);
    let k = 1.0 + delta;
    let map = Arc::new(Revolution::new(2, move |rho: f64| ([k * rho, k, 0.0], [0.0; 3])));
    let seed = seed_at(&domain, 0.5, last_axis(2));
    let imm = Immersion::new(model, domain.clone(), map, Some(0.0), seed)?;
    let mut applicable = applicable(2, 0.0, true, true, Some(1));
    applicable.retain(|c| !c.starts_with("free-boundary"));
    Ok(CatalogEntry {
        id: "translated_disk".into(),
        description: format!("equatorial disk scaled by {k}; boundary outside the ball"),
        immersion: Arc::new(imm),
        meta: Metadata {
            declared_h: Some(0.0),
            is_free_boundary: false,
            chi: Some(1),
            components: components_of(&domain, 0),
            totally_umbilical: true,
            closed: false,
            broken: Some(Broken::Containment),
            applicable,
        },
    })
}

/// Spherical cap (`n = 2`, `R = 1`) with a boundary-flat radial bump.
pub fn perturbed_cap(eps: f64) -> Result<CatalogEntry> {
    perturbed_cap_with(2, 1.0, eps)
}

/// Negative variant kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantKind {
    Truncate,
    Translate,
    GraphPerturb,
}

/// Break one hypothesis of a catalog entry.
pub fn negative_variant(kind: VariantKind) -> Result<CatalogEntry> {
    match kind {
        VariantKind::Truncate => truncated_catenoid(),
        VariantKind::Translate => dilated_disk(0.05),
        VariantKind::GraphPerturb => perturbed_cap(1e-2),
    }
}

/// Identifiers of every catalog entry, in listing order.
pub fn entry_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for n in [2, 3] {
        for c in [0, -1, 1] {
            ids.push(format!("equatorial_disk_{n}_{c}"));
        }
    }
    for n in [2, 3] {
        for r in ["0.5", "1", "2"] {
            ids.push(format!("spherical_cap_{n}_{r}"));
        }
    }
    ids.push("critical_catenoid".into());
    ids.push("critical_catenoid_3".into());
    for n in [2, 3] {
        for c in [0, -1, 1] {
            ids.push(format!("boundary_sphere_{n}_{c}"));
        }
    }
    ids.extend(["truncated_catenoid", "translated_disk", "perturbed_cap"].map(String::from));
    ids
}

/// Look an entry up by identifier.
pub fn entry(id: &str) -> Result<CatalogEntry> {
    let unknown = || Error::Usage(format!("unknown catalog entry '{id}'"));
    let parts: Vec<&str> = id.rsplitn(3, '_').collect();
    match id {
        "critical_catenoid" => critical_catenoid(),
        "critical_catenoid_3" => critical_catenoid_3(),
        "truncated_catenoid" => negative_variant(VariantKind::Truncate),
        "translated_disk" => negative_variant(VariantKind::Translate),
        "perturbed_cap" => negative_variant(VariantKind::GraphPerturb),
        _ if parts.len() == 3 => {
            let n: usize = parts[1].parse().map_err(|_| unknown())?;
            if !(2..=6).contains(&n) {
                return Err(unknown());
            }
            match parts[2] {
                "equatorial_disk" | "boundary_sphere" => {
                    let c: i32 = parts[0].parse().map_err(|_| unknown())?;
                    if !(-1..=1).contains(&c) {
                        return Err(unknown());
                    }
                    if parts[2] == "equatorial_disk" {
                        equatorial_disk(n, c)
                    } else {
                        boundary_sphere(n, c)
                    }
                }
                "spherical_cap" => {
                    let r: f64 = parts[0].parse().map_err(|_| unknown())?;
                    let mut e = spherical_cap(n, r)?;
                    e.id = id.to_string();
                    Ok(e)
                }
                _ => Err(unknown()),
            }
        }
        _ => Err(unknown()),
    }
}

/// All listed entries.
pub fn all_entries() -> Result<Vec<CatalogEntry>> {
    entry_ids().iter().map(|id| entry(id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::FiniteDifferenceJet;

    #[test]
    fn catenoid_constants() {
        let t0 = catenoid_t0();
        assert!((t0 * t0.tanh() - 1.0).abs() < 1e-14);
        assert!((t0 - 1.199_678_640_257_734).abs() < 1e-12);
        let s = catenoid_scale(t0);
        assert!((s - 0.460_485_088_250_134).abs() < 1e-12);
        assert!((s * t0.cosh() - t0.tanh()).abs() < 1e-14);
    }

    #[test]
    fn sphere_chart_is_unit() {
        let ch = SphereChart { m: 3 };
        let j = ch.jet(&[0.3, 1.1, 2.0]);
        let norm: f64 = j.value.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-15);
        for d in &j.first {
            let dot: f64 = d.iter().zip(&j.value).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-15);
        }
    }

    #[test]
    fn analytic_jets_match_finite_differences() {
        for id in ["critical_catenoid", "spherical_cap_3_2", "critical_catenoid_3", "perturbed_cap", "boundary_sphere_3_-1"] {
            let e = entry(id).unwrap();
            let map = e.immersion.parametrization().clone();
            let n = e.n();
            let m2 = map.clone();
            let fd = FiniteDifferenceJet::new(n, 1e-3, move |u: &[f64]| m2.position(u));
            let mut u = e.immersion.domain().center();
            u[0] *= 0.7;
            u[0] += 0.1;
            let a = map.jet(&u);
            let b = fd.jet(&u);
            for i in 0..n {
                for k in 0..=n {
                    assert!((a.first[i][k] - b.first[i][k]).abs() < 1e-8, "{id} first");
                    for j in 0..n {
                        assert!(
                            (a.second[i][j][k] - b.second[i][j][k]).abs() < 1e-8,
                            "{id} second {i}{j}{k}: {} vs {}",
                            a.second[i][j][k],
                            b.second[i][j][k]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn every_listed_entry_builds() {
        let all = all_entries().unwrap();
        assert_eq!(all.len(), entry_ids().len());
        for e in &all {
            assert_eq!(&entry(&e.id).unwrap().id, &e.id);
        }
        assert!(entry("equatorial_disk_9_0").is_err());
        assert!(entry("nonsense").is_err());
    }

    #[test]
    fn cap_boundary_and_curvature() {
        let e = spherical_cap(2, 1.0).unwrap();
        let d = e.immersion.domain();
        let mut u = d.center();
        u[0] = d.axis(0).bounds().1;
        let x = e.immersion.position(&u);
        let r_xy = (x[0] * x[0] + x[1] * x[1]).sqrt();
        assert!((r_xy - 0.5f64.sqrt()).abs() < 1e-14);
        let fd = e.immersion.fundamental_data(&d.center()).unwrap();
        assert!((fd.mean_curvature - 2.0).abs() < 1e-12);
        let e = spherical_cap(3, 2.0).unwrap();
        let fd = e.immersion.fundamental_data(&e.immersion.domain().center()).unwrap();
        assert!((fd.mean_curvature - 1.5).abs() < 1e-12);
    }

    #[test]
    fn catenoid_is_minimal() {
        let e = critical_catenoid().unwrap();
        for t in [-1.1, -0.3, 0.0, 0.9] {
            let fd = e.immersion.fundamental_data(&[t, 0.4]).unwrap();
            assert!(fd.mean_curvature.abs() < 1e-12);
        }
        let e = critical_catenoid_3().unwrap();
        let fd = e.immersion.fundamental_data(&[0.2, 1.0, 0.4]).unwrap();
        assert!(fd.mean_curvature.abs() < 1e-11);
    }
}
