//! Tensor-product quadrature over parameter domains and their faces.
//!
//! Interval axes use composite Gauss–Legendre (8 nodes per panel), periodic
//! axes the trapezoid rule. Nodes never sit on interval endpoints, so chart
//! poles are never evaluated.

use rayon::prelude::*;

use crate::domain::{Axis, Face, ParamDomain};

/// Nodes per Gauss–Legendre panel.
pub const PANEL_NODES: usize = 8;

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(m, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// `P_m(x)` and `P_m'(x)`.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One-dimensional rule for an axis at a given resolution (points per axis).
pub fn axis_rule(axis: &Axis, resolution: usize) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = axis.bounds();
    if axis.is_periodic() {
        let h = (hi - lo) / resolution as f64;
        return ((0..resolution).map(|i| lo + i as f64 * h).collect(), vec![h; resolution]);
    }
    let panels = (resolution / PANEL_NODES).max(1);
    let (x, w) = gauss_legendre(PANEL_NODES);
    let ph = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * PANEL_NODES);
    let mut weights = Vec::with_capacity(panels * PANEL_NODES);
    for p in 0..panels {
        let a = lo + p as f64 * ph;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(a + 0.5 * ph * (xi + 1.0));
            weights.push(0.5 * ph * wi);
        }
    }
    (nodes, weights)
}

/// Tensor-product rule over a domain, optionally restricted to a face
/// (the face axis is then fixed at its coordinate).
#[derive(Debug, Clone)]
pub struct TensorRule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl TensorRule {
    pub fn new(domain: &ParamDomain, face: Option<Face>, resolution: usize) -> Self {
        let mut points = vec![Vec::new()];
        let mut weights = vec![1.0];
        for (a, axis) in domain.axes().iter().enumerate() {
            let (x, w) = match face {
                Some(f) if f.axis == a => (vec![domain.face_coordinate(f)], vec![1.0]),
                _ => axis_rule(axis, resolution),
            };
            let mut np = Vec::with_capacity(points.len() * x.len());
            let mut nw = Vec::with_capacity(points.len() * x.len());
            for (p, pw) in points.iter().zip(&weights) {
                for (xi, wi) in x.iter().zip(&w) {
                    let mut q = p.clone();
                    q.push(*xi);
                    np.push(q);
                    nw.push(pw * wi);
                }
            }
            points = np;
            weights = nw;
        }
        TensorRule { points, weights }
    }

    /// `Σ w_k f(u_k)`; evaluation is parallel, the sum sequential so the
    /// result does not depend on the thread count. Points where `f` returns
    /// `None` contribute nothing.
    pub fn apply<F>(&self, f: F) -> f64
    where
        F: Fn(&[f64]) -> Option<f64> + Sync,
    {
        let values: Vec<f64> = self
            .points
            .par_iter()
            .map(|u| f(u).unwrap_or(0.0))
            .collect();
        values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }

    /// Several integrands at once.
    pub fn apply_many<F>(&self, k: usize, f: F) -> Vec<f64>
    where
        F: Fn(&[f64]) -> Option<Vec<f64>> + Sync,
    {
        let values: Vec<Option<Vec<f64>>> = self.points.par_iter().map(|u| f(u)).collect();
        let mut out = vec![0.0; k];
        for (v, w) in values.iter().zip(&self.weights) {
            if let Some(v) = v {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += w * x;
                }
            }
        }
        out
    }
}

/// A quadrature value with its Richardson (half-resolution) error estimate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Integrate at `resolution` and `resolution / 2`; the difference is the
/// error estimate.
pub fn with_richardson<F>(domain: &ParamDomain, face: Option<Face>, resolution: usize, f: F) -> Estimate
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    let fine = TensorRule::new(domain, face, resolution).apply(&f);
    let coarse = TensorRule::new(domain, face, (resolution / 2).max(PANEL_NODES)).apply(&f);
    Estimate {
        value: fine,
        error: (fine - coarse).abs(),
    }
}

/// Composite Gauss–Legendre on `[a, b]` for a 1D integrand.
pub fn integrate_1d<F: Fn(f64) -> f64>(a: f64, b: f64, panels: usize, f: F) -> f64 {
    let (x, w) = gauss_legendre(PANEL_NODES);
    let ph = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * ph;
        for (xi, wi) in x.iter().zip(&w) {
            acc += 0.5 * ph * wi * f(lo + 0.5 * ph * (xi + 1.0));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::FaceKind;

    #[test]
    fn gauss_legendre_is_exact_for_degree_2m_minus_1() {
        let (x, w) = gauss_legendre(8);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m15: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m15 - 2.0 / 15.0).abs() < 1e-14);
        let (x3, _) = gauss_legendre(3);
        assert!((x3[2] - 0.6f64.sqrt()).abs() < 1e-15);
        assert_eq!(x3[1], 0.0);
    }

    #[test]
    fn unit_disk_area_in_polar_coordinates() {
        let d = ParamDomain::new(vec![
            Axis::interval(0.0, 1.0, FaceKind::Pole, FaceKind::Marked),
            Axis::periodic(0.0, std::f64::consts::TAU),
        ]);
        let e = with_richardson(&d, None, 32, |u| Some(u[0]));
        assert!((e.value - std::f64::consts::PI).abs() < 1e-13);
        let face = d.marked_faces()[0];
        let c = TensorRule::new(&d, Some(face), 64).apply(|u| Some(u[0]));
        assert!((c - std::f64::consts::TAU).abs() < 1e-13);
    }

    #[test]
    fn one_dimensional_rule() {
        let v = integrate_1d(0.0, 1.0, 4, |x| x.exp());
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
    }
}
