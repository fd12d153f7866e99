//! Space forms realized as conformally flat Euclidean balls.
//!
//! The metric is `ĝ = e^{2φ_c} g` on a Euclidean ball, with the radial profile
//! `φ_c(x) = -log(1 + c|x|²/4)`. Everything here is evaluated in closed form;
//! no quantity is differentiated numerically.

use crate::error::{Error, Result};
use serde::Serialize;

/// Sign of the sectional curvature of the space form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceForm {
    Hyperbolic,
    Euclidean,
    Spherical,
}

impl SpaceForm {
    pub fn from_curvature(c: i32) -> Result<Self> {
        match c {
            -1 => Ok(SpaceForm::Hyperbolic),
            0 => Ok(SpaceForm::Euclidean),
            1 => Ok(SpaceForm::Spherical),
            other => Err(Error::InvalidModel(format!(
                "curvature {other} is not one of -1, 0, 1"
            ))),
        }
    }

    pub fn curvature(self) -> f64 {
        match self {
            SpaceForm::Hyperbolic => -1.0,
            SpaceForm::Euclidean => 0.0,
            SpaceForm::Spherical => 1.0,
        }
    }

    /// Euclidean radius of the region where the conformal factor is finite.
    pub fn max_radius(self) -> f64 {
        match self {
            SpaceForm::Hyperbolic => 2.0,
            _ => f64::INFINITY,
        }
    }
}

/// How the Euclidean radius of the unit ball was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RadiusConvention {
    /// `⟨x, x⟩_ĝ = 1` on the boundary sphere.
    GaugeUnit,
    /// Geodesic distance 1 from the origin to the boundary sphere.
    GeodesicUnit,
}

/// Euclidean radius of the unit ball under the given normalization.
pub fn gauge_unit_radius(form: SpaceForm, convention: RadiusConvention) -> f64 {
    let c = form.curvature();
    match (convention, form) {
        (_, SpaceForm::Euclidean) => 1.0,
        // smaller root of c r²/4 - r + 1 = 0
        (RadiusConvention::GaugeUnit, _) => 2.0 * (1.0 - (1.0 - c).sqrt()) / c,
        (RadiusConvention::GeodesicUnit, SpaceForm::Spherical) => 2.0 * 0.5f64.tan(),
        (RadiusConvention::GeodesicUnit, SpaceForm::Hyperbolic) => 2.0 * 0.5f64.tanh(),
    }
}

/// A space form `M_c^{n+1}` modeled on a Euclidean ball, together with the
/// closed unit ball `B` of Euclidean radius `radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmbientModel {
    form: SpaceForm,
    dim: usize,
    radius: f64,
    convention: RadiusConvention,
}

/// Connection coefficients `Γ̂^k_{ab}` of the conformal metric, stored densely
/// with index order `[k][a][b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffels {
    dim: usize,
    data: Vec<f64>,
}

impl Christoffels {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, a: usize, b: usize) -> f64 {
        self.data[(k * self.dim + a) * self.dim + b]
    }

    /// `Γ̂(v, w)^k = Γ̂^k_{ab} v^a w^b`.
    pub fn contract(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|k| {
                let mut acc = 0.0;
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        acc += self.get(k, a, b) * v[a] * w[b];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }
}

fn norm_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

impl AmbientModel {
    /// Unit ball of the space form with sectional curvature `c` in dimension
    /// `dim = n + 1`.
    pub fn new(c: i32, dim: usize, convention: RadiusConvention) -> Result<Self> {
        let form = SpaceForm::from_curvature(c)?;
        Self::with_radius(form, dim, gauge_unit_radius(form, convention), convention)
    }

    pub fn euclidean(dim: usize) -> Self {
        Self::new(0, dim, RadiusConvention::GaugeUnit).expect("flat unit ball is valid")
    }

    /// Ball of arbitrary Euclidean radius; rejects radii with `μ₀ ≤ 0` or
    /// outside the model domain.
    pub fn with_radius(
        form: SpaceForm,
        dim: usize,
        radius: f64,
        convention: RadiusConvention,
    ) -> Result<Self> {
        if dim < 3 {
            return Err(Error::InvalidModel(format!(
                "ambient dimension {dim} < 3"
            )));
        }
        if !(radius > 0.0 && radius < form.max_radius()) {
            return Err(Error::InvalidModel(format!(
                "radius {radius} outside (0, {})",
                form.max_radius()
            )));
        }
        let model = AmbientModel {
            form,
            dim,
            radius,
            convention,
        };
        let mu0 = model.mu_at_radius(radius);
        if mu0 <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "boundary potential mu0 = {mu0} is not positive"
            )));
        }
        Ok(model)
    }

    pub fn form(&self) -> SpaceForm {
        self.form
    }

    pub fn curvature(&self) -> f64 {
        self.form.curvature()
    }

    /// Ambient dimension `n + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Euclidean radius of the unit ball.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn convention(&self) -> RadiusConvention {
        self.convention
    }

    /// Whether the boundary identities (which need `⟨x,x⟩_ĝ = 1` on `∂B`)
    /// are expected to hold in this model.
    pub fn identities_valid(&self) -> bool {
        self.convention == RadiusConvention::GaugeUnit || self.form == SpaceForm::Euclidean
    }

    fn check(&self, x: &[f64]) -> Result<f64> {
        let r2 = norm_sq(x);
        let limit = self.form.max_radius();
        if r2.sqrt() >= limit {
            return Err(Error::Domain {
                norm: r2.sqrt(),
                limit,
            });
        }
        Ok(r2)
    }

    fn profile_denominator(&self, r2: f64) -> f64 {
        1.0 + 0.25 * self.curvature() * r2
    }

    /// `φ_c(x)`.
    pub fn log_factor(&self, x: &[f64]) -> Result<f64> {
        let r2 = self.check(x)?;
        Ok(-self.profile_denominator(r2).ln())
    }

    /// `e^{φ_c(x)}`.
    pub fn scale(&self, x: &[f64]) -> Result<f64> {
        let r2 = self.check(x)?;
        Ok(1.0 / self.profile_denominator(r2))
    }

    /// `e^{2φ_c(x)}`.
    pub fn conformal_factor(&self, x: &[f64]) -> Result<f64> {
        let s = self.scale(x)?;
        Ok(s * s)
    }

    /// Euclidean gradient of `φ_c`.
    pub fn grad_log_factor(&self, x: &[f64]) -> Result<Vec<f64>> {
        let r2 = self.check(x)?;
        let c = self.curvature();
        let factor = -0.5 * c / self.profile_denominator(r2);
        Ok(x.iter().map(|v| factor * v).collect())
    }

    fn mu_at_radius(&self, r: f64) -> f64 {
        let q = 0.25 * self.curvature() * r * r;
        (1.0 - q) / (1.0 + q)
    }

    /// Potential `μ(x) = 1 + 2u'(|x|²)|x|²` with `u(t) = -log(1 + ct/4)`.
    pub fn potential_mu(&self, x: &[f64]) -> Result<f64> {
        let r2 = self.check(x)?;
        let c = self.curvature();
        let u_prime = -0.25 * c / (1.0 + 0.25 * c * r2);
        Ok(1.0 + 2.0 * u_prime * r2)
    }

    /// `μ₀`, the potential on the boundary sphere.
    pub fn mu0(&self) -> f64 {
        self.mu_at_radius(self.radius)
    }

    /// `e^{φ_c}|x|`, the length of the position vector in the metric `ĝ`.
    pub fn gauge_norm(&self, x: &[f64]) -> Result<f64> {
        Ok(self.scale(x)? * norm_sq(x).sqrt())
    }

    /// Gauge norm of the position vector on `∂B` (1 under [`RadiusConvention::GaugeUnit`]).
    pub fn boundary_gauge_norm(&self) -> f64 {
        self.radius / self.profile_denominator(self.radius * self.radius)
    }

    /// `ĝ_x(v, w)`.
    pub fn inner(&self, x: &[f64], v: &[f64], w: &[f64]) -> Result<f64> {
        let f = self.conformal_factor(x)?;
        Ok(f * v.iter().zip(w).map(|(a, b)| a * b).sum::<f64>())
    }

    /// `Γ̂^k_{ab} = δ^k_a ∂_bφ + δ^k_b ∂_aφ − δ_{ab} ∂_kφ`.
    pub fn conformal_christoffels(&self, x: &[f64]) -> Result<Christoffels> {
        let grad = self.grad_log_factor(x)?;
        let d = self.dim;
        let mut data = vec![0.0; d * d * d];
        for k in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut v = 0.0;
                    if k == a {
                        v += grad[b];
                    }
                    if k == b {
                        v += grad[a];
                    }
                    if a == b {
                        v -= grad[k];
                    }
                    data[(k * d + a) * d + b] = v;
                }
            }
        }
        Ok(Christoffels { dim: d, data })
    }

    /// `∇̂_X x` for the position field `x`, assembled from the connection
    /// coefficients (the flat part is `∇_X x = X`).
    pub fn covariant_derivative_of_position(&self, x: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        let gamma = self.conformal_christoffels(x)?;
        let corr = gamma.contract(v, x);
        Ok(v.iter().zip(corr).map(|(a, b)| a + b).collect())
    }

    /// Shape-operator eigenvalue `κ` of `∂B` with respect to the outward
    /// position-direction unit normal, and `μ₀`.
    ///
    /// With the unit normal `x / |x|_ĝ`, `κ = −μ₀ / |x|_ĝ`; under the gauge
    /// normalization this is exactly `−μ₀`.
    pub fn boundary_sphere_shape(&self) -> (f64, f64) {
        let mu0 = self.mu0();
        (-mu0 / self.boundary_gauge_norm(), mu0)
    }

    /// Sectional curvature of the boundary sphere `∂B` with its induced metric.
    pub fn boundary_sphere_curvature(&self) -> f64 {
        let (kappa, _) = self.boundary_sphere_shape();
        self.curvature() + kappa * kappa
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn conformal_factor_examples() {
        let flat = AmbientModel::euclidean(3);
        assert_eq!(flat.conformal_factor(&[0.3, -0.2, 0.9]).unwrap(), 1.0);

        let sphere = AmbientModel::new(1, 3, RadiusConvention::GeodesicUnit).unwrap();
        let f = sphere.conformal_factor(&[2.0, 0.0, 0.0]).unwrap();
        assert!((f - 0.25).abs() < 1e-15);

        let hyp = AmbientModel::new(-1, 3, RadiusConvention::GaugeUnit).unwrap();
        let f = hyp.conformal_factor(&[0.6, 0.8, 0.0]).unwrap();
        assert!((f - 16.0 / 9.0).abs() < 1e-14);
        assert!(matches!(
            hyp.conformal_factor(&[2.0, 0.0, 0.0]),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn potential_examples() {
        let flat = AmbientModel::euclidean(4);
        assert_eq!(flat.potential_mu(&[0.1, 0.2, 0.3, 0.4]).unwrap(), 1.0);
        let sphere = AmbientModel::new(1, 3, RadiusConvention::GeodesicUnit).unwrap();
        assert!(sphere.potential_mu(&[0.0, 2.0, 0.0]).unwrap().abs() < 1e-15);
        let hyp = AmbientModel::new(-1, 3, RadiusConvention::GaugeUnit).unwrap();
        assert!((hyp.radius() - 2.0 * (SQRT2 - 1.0)).abs() < 1e-15);
        assert!((hyp.mu0() - SQRT2).abs() < 1e-14);
    }

    #[test]
    fn radius_conventions() {
        for conv in [RadiusConvention::GaugeUnit, RadiusConvention::GeodesicUnit] {
            assert_eq!(gauge_unit_radius(SpaceForm::Euclidean, conv), 1.0);
        }
        let r = gauge_unit_radius(SpaceForm::Spherical, RadiusConvention::GaugeUnit);
        assert!((r - 2.0).abs() < 1e-15);
        let r = gauge_unit_radius(SpaceForm::Hyperbolic, RadiusConvention::GeodesicUnit);
        assert!((r - 0.924_234).abs() < 1e-6);
        // geodesic distance 2 artanh(r/2) = 1
        assert!((2.0 * (r / 2.0).atanh() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spherical_gauge_ball_is_rejected() {
        // r = 2 puts ∂B on the equator, where μ₀ = 0.
        let err = AmbientModel::new(1, 3, RadiusConvention::GaugeUnit).unwrap_err();
        assert!(matches!(err, Error::InvalidModel(_)));
        assert!(AmbientModel::new(2, 3, RadiusConvention::GaugeUnit).is_err());
    }

    #[test]
    fn christoffels_vanish_when_flat_or_at_origin() {
        let flat = AmbientModel::euclidean(3);
        assert!(flat.conformal_christoffels(&[0.4, 0.1, -0.3]).unwrap().is_zero());
        let hyp = AmbientModel::new(-1, 4, RadiusConvention::GaugeUnit).unwrap();
        assert!(hyp.conformal_christoffels(&[0.0; 4]).unwrap().is_zero());
    }

    #[test]
    fn boundary_sphere_values() {
        let (k, mu0) = AmbientModel::euclidean(3).boundary_sphere_shape();
        assert_eq!((k, mu0), (-1.0, 1.0));
        let hyp = AmbientModel::new(-1, 3, RadiusConvention::GaugeUnit).unwrap();
        let (k, mu0) = hyp.boundary_sphere_shape();
        assert!((k + SQRT2).abs() < 1e-14 && (mu0 - SQRT2).abs() < 1e-14);
    }
}
