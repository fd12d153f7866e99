//! Geometry-free algebra on trace-free spectra: the symmetric double sums,
//! Okumura's cubic bound, and the collapse of the first inequality's right
//! side on umbilical data.

use serde::Serialize;

use crate::integrate::{first_rhs, BoundaryTerms};

/// Eigenvalues `σ_i` of `φ`, projected to trace zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceFreeSpectrum {
    sigma: Vec<f64>,
}

impl TraceFreeSpectrum {
    /// Subtracts the mean. Panics for fewer than two eigenvalues.
    pub fn project(values: &[f64]) -> Self {
        assert!(values.len() >= 2, "a spectrum needs n >= 2");
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        TraceFreeSpectrum {
            sigma: values.iter().map(|v| v - mean).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn trace(&self) -> f64 {
        self.sigma.iter().sum()
    }

    /// `|φ|² = Σσ_i²`.
    pub fn norm_sq(&self) -> f64 {
        self.sigma.iter().map(|s| s * s).sum()
    }

    pub fn cubic_sum(&self) -> f64 {
        self.sigma.iter().map(|s| s * s * s).sum()
    }

    /// Sectional curvature of the plane `e_i ∧ e_j` by the Gauss equation:
    /// `R_ij = σ_iσ_j + (H/n)(σ_i + σ_j) + H²/n² + c`.
    pub fn sectional(&self, i: usize, j: usize, h: f64, c: f64) -> f64 {
        let (a, b) = (self.sigma[i], self.sigma[j]);
        let l = h / self.n() as f64;
        a * b + l * (a + b) + l * l + c
    }
}

/// Residuals of `Σσ_iσ_j(σ_i−σ_j)² = −2|φ|⁴`, `Σ(σ_i+σ_j)(σ_i−σ_j)² = 2nΣσ_i³`
/// and `Σ(σ_i−σ_j)² = 2n|φ|²`, double sums over all ordered pairs.
pub fn symmetric_sum_identities(spec: &TraceFreeSpectrum) -> [f64; 3] {
    let s = spec.sigma();
    let n = s.len() as f64;
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for &x in s {
        for &y in s {
            let d2 = (x - y) * (x - y);
            a += x * y * d2;
            b += (x + y) * d2;
            c += d2;
        }
    }
    let p2 = spec.norm_sq();
    [
        (a + 2.0 * p2 * p2).abs(),
        (b - 2.0 * n * spec.cubic_sum()).abs(),
        (c - 2.0 * n * p2).abs(),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OkumuraBound {
    pub lhs: f64,
    pub rhs: f64,
    pub tight: bool,
}

/// Eigenvalues within this (relative) distance count as equal.
pub const PATTERN_TOL: f64 = 1e-8;

/// Whether all eigenvalues but one coincide.
fn extremal_pattern(s: &[f64]) -> bool {
    let scale = s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return true;
    }
    let mut v = s.to_vec();
    v.sort_by(f64::total_cmp);
    let flat = |w: &[f64]| w.iter().all(|x| (x - w[0]).abs() <= PATTERN_TOL * scale);
    flat(&v[1..]) || flat(&v[..v.len() - 1])
}

/// `|Σσ_i³| ≤ ((n−2)/√(n(n−1)))|φ|³`.
pub fn okumura_bound(spec: &TraceFreeSpectrum) -> OkumuraBound {
    let n = spec.n() as f64;
    let lhs = spec.cubic_sum().abs();
    let rhs = (n - 2.0) / (n * (n - 1.0)).sqrt() * spec.norm_sq().powf(1.5);
    let tight = extremal_pattern(spec.sigma())
        && (lhs - rhs).abs() <= 1e-10 * (1.0 + spec.norm_sq().powf(1.5));
    OkumuraBound { lhs, rhs, tight }
}

/// Right side of the first inequality per unit boundary measure when
/// `A = λI`: `H = nλ`, `H̃ = (n−1)λ`, `|Ã|² = (n−1)λ²`, `(H−H̃)² = λ²`.
pub fn umbilical_rhs_collapse(n: usize, lambda: f64, mu0: f64) -> f64 {
    let nf = n as f64;
    let b = BoundaryTerms {
        measure: 1.0,
        h_tilde: (nf - 1.0) * lambda,
        a_tilde_sq: (nf - 1.0) * lambda * lambda,
        h_diff_sq: lambda * lambda,
    };
    first_rhs(n, mu0, nf * lambda, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pair_spectrum() {
        let s = TraceFreeSpectrum::project(&[1.0, -1.0]);
        assert_eq!(symmetric_sum_identities(&s), [0.0; 3]);
        let o = okumura_bound(&s);
        assert_eq!((o.lhs, o.rhs), (0.0, 0.0));
        let z = TraceFreeSpectrum::project(&[0.3, 0.3, 0.3]);
        assert_eq!(symmetric_sum_identities(&z), [0.0; 3]);
    }

    #[test]
    fn extremal_shape_is_tight() {
        for t in [0.5, 1.0, 3.0] {
            let s = TraceFreeSpectrum::project(&[2.0 * t, -t, -t]);
            let o = okumura_bound(&s);
            assert!((o.lhs - 6.0 * t.powi(3)).abs() <= 1e-12 * t.powi(3));
            assert!((o.rhs - 6.0 * t.powi(3)).abs() <= 1e-12 * t.powi(3));
            assert!(o.tight);
        }
        assert!(!okumura_bound(&TraceFreeSpectrum::project(&[1.0, 0.0, -1.0])).tight);
    }

    #[test]
    fn collapse_at_unit_data() {
        assert!(umbilical_rhs_collapse(3, 1.0, 1.0).abs() <= 1e-14);
        for n in 3..9 {
            assert_eq!(umbilical_rhs_collapse(n, 0.0, 0.7), 0.0);
        }
    }

    #[test]
    fn gauss_equation_assembly() {
        let s = TraceFreeSpectrum::project(&[0.4, -0.1, -0.3]);
        // principal curvatures k_i = σ_i + H/n, R_ij = k_i k_j + c
        let (h, c) = (1.5, -1.0);
        let k: Vec<f64> = s.sigma().iter().map(|x| x + h / 3.0).collect();
        assert!((s.sectional(0, 2, h, c) - (k[0] * k[2] + c)).abs() <= 1e-15);
    }

    fn spectrum(lo: usize, hi: usize) -> impl Strategy<Value = TraceFreeSpectrum> {
        (lo..=hi)
            .prop_flat_map(|n| prop::collection::vec(-1.0f64..1.0, n))
            .prop_map(|v| TraceFreeSpectrum::project(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn projected_spectra_satisfy_sum_identities(s in spectrum(2, 8)) {
            prop_assert!(s.trace().abs() <= 1e-14);
            let p4 = s.norm_sq().powi(2);
            for r in symmetric_sum_identities(&s) {
                prop_assert!(r <= 1e-10 * (1.0 + p4));
            }
        }

        #[test]
        fn okumura_holds(s in spectrum(3, 8)) {
            let o = okumura_bound(&s);
            prop_assert!(o.lhs <= o.rhs * (1.0 + 1e-12) + 1e-15);
        }

        #[test]
        fn okumura_tight_on_one_versus_rest(n in 3usize..=8, t in -2.0f64..2.0, flip in any::<bool>()) {
            let mut v = vec![-t; n];
            v[if flip { n - 1 } else { 0 }] = (n as f64 - 1.0) * t;
            let o = okumura_bound(&TraceFreeSpectrum::project(&v));
            prop_assert!(o.tight);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn umbilical_data_collapse(n in 3usize..=10, lambda in -5.0f64..5.0, mu0 in 0.0f64..3.0) {
            let v = umbilical_rhs_collapse(n, lambda, mu0);
            prop_assert!(v.abs() <= 1e-12 * (n * n) as f64 * lambda * lambda);
        }
    }
}
