//! Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed
//! here and never scaled.

use std::f64::consts::{PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use freebound::ambient::{AmbientModel, RadiusConvention};
use freebound::catalog;
use freebound::config::RunConfig;
use freebound::integrate::{equality_topology_diagnostic, hardy_check, integrate_boundary, second_inequality};
use freebound::quadrature::integrate_1d;
use freebound::report::{Report, Status, Suite};
use freebound::suites::{
    conformal_identity_residual, hardy_fields, random_zero_set, refine, synthetic_cases, verify_entry,
    SYNTHETIC_RESOLUTION,
};
use freebound::umbilic::{detect_synthetic, euler_count_check, log_lemma_check, SyntheticDomain, SyntheticPhi};
use freebound::algebra::{okumura_bound, symmetric_sum_identities, TraceFreeSpectrum};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn run_suites(id: &str, suites: &[Suite]) -> Result<Report, String> {
    let e = catalog::entry(id).map_err(|e| e.to_string())?;
    let cfg = RunConfig {
        suites: suites.to_vec(),
        ..RunConfig::default()
    };
    Ok(verify_entry(&e, &cfg))
}

fn expect_pass(r: &Report, ids: &[&str]) -> Result<(), String> {
    for id in ids {
        let c = r.check(id).ok_or_else(|| format!("{}: no check {id}", r.entry))?;
        ensure(
            c.status == Status::Pass,
            format!("{} {id}: {:?} value {:?} ({:?})", r.entry, c.status, c.value, c.reason),
        )?;
    }
    Ok(())
}

fn ambient() -> Outcome {
    let mut worst: f64 = 0.0;
    for c in [0, -1, 1] {
        for dim in [3, 4] {
            let conv = if c == 1 { RadiusConvention::GeodesicUnit } else { RadiusConvention::GaugeUnit };
            let m = AmbientModel::new(c, dim, conv).map_err(|e| e.to_string())?;
            worst = worst.max(conformal_identity_residual(&m, 100, 11).map_err(|e| e.to_string())?);
        }
    }
    ensure(worst <= 1e-12, format!("conformal residual {worst:e}"))?;
    let e = AmbientModel::new(0, 3, RadiusConvention::GaugeUnit).unwrap().mu0();
    let h = AmbientModel::new(-1, 3, RadiusConvention::GaugeUnit).unwrap().mu0();
    ensure(e == 1.0, format!("μ₀(c=0) = {e}"))?;
    ensure((h - SQRT_2).abs() <= 1e-14, format!("μ₀(c=−1) = {h}"))?;
    Ok(format!("residual {worst:.2e}, μ₀ = {e}, {h:.15}"))
}

fn boundary_sphere() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        for c in [0, -1, 1] {
            let s = catalog::boundary_sphere(n, c).map_err(|e| e.to_string())?;
            let m = s.model();
            // gauge-normalized balls give exactly −μ₀; the c = 1 geodesic ball rescales by |x|_ĝ
            let gauge = m.boundary_gauge_norm();
            if m.convention() == RadiusConvention::GaugeUnit {
                ensure((gauge - 1.0).abs() <= 1e-14, format!("{}: ⟨x, x⟩ = {gauge}", s.id))?;
            }
            let kappa = -m.mu0() / gauge;
            let grid = s.immersion.domain().grid(if n == 2 { 48 } else { 16 });
            let mut seen = 0;
            for f in 0..grid.len() {
                if let Ok(fd) = s.immersion.fundamental_data(&grid.point_flat(f)) {
                    seen += 1;
                    for k in &fd.principal {
                        worst = worst.max((k - kappa).abs());
                    }
                }
            }
            ensure(seen > grid.len() / 2, format!("{}: only {seen} regular nodes", s.id))?;
        }
    }
    ensure(worst <= 1e-8, format!("max |κ − κ₀| = {worst:e}"))?;
    Ok(format!("max |κ − κ₀| = {worst:.2e}"))
}

fn key_lemma() -> Outcome {
    let ids = [
        "equatorial_disk_2_0",
        "equatorial_disk_3_0",
        "spherical_cap_2_0.5",
        "spherical_cap_2_1",
        "spherical_cap_2_2",
        "spherical_cap_3_0.5",
        "spherical_cap_3_1",
        "spherical_cap_3_2",
        "critical_catenoid",
    ];
    for id in ids {
        let r = run_suites(id, &[Suite::Boundary])?;
        expect_pass(
            &r,
            &["boundary-identity-i", "boundary-identity-remark", "boundary-identity-ii", "boundary-conormal-sign"],
        )?;
    }
    let e = catalog::critical_catenoid().unwrap();
    let rows = refine(&e, "boundary-identity-ii", &[64, 128, 256], &RunConfig::default()).map_err(|e| e.to_string())?;
    let order = rows.iter().filter_map(|r| r.order).fold(f64::INFINITY, f64::min);
    ensure(order >= 0.9, format!("identity ii order {order:.3}"))?;
    Ok(format!("{} entries, identity ii order {order:.2}", ids.len()))
}

fn simons() -> Outcome {
    let e = catalog::critical_catenoid().unwrap();
    let rows = refine(&e, "simons-inequality", &[64, 128, 256], &RunConfig::default()).map_err(|e| e.to_string())?;
    let eps = rows[1].value;
    ensure(eps <= 1e-3, format!("ε(128) = {eps:e}"))?;
    let order = rows.iter().filter_map(|r| r.order).fold(f64::INFINITY, f64::min);
    ensure(order >= 1.8, format!("Simons order {order:.3}"))?;
    for id in ["equatorial_disk_2_0", "equatorial_disk_3_-1", "spherical_cap_2_1", "spherical_cap_3_2"] {
        let r = run_suites(id, &[Suite::Pointwise])?;
        let c = r.check("simons-inequality").unwrap();
        ensure(
            c.status == Status::Pass && c.tolerance == Some(1e-8),
            format!("{id}: {:?} {:?} tol {:?}", c.status, c.value, c.tolerance),
        )?;
    }
    Ok(format!("ε(128) = {eps:.2e}, order {order:.2}"))
}

fn hardy() -> Outcome {
    let e = catalog::equatorial_disk(3, 0).unwrap();
    let imm = &e.immersion;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    // radial oracles: ∫_{B³} g(ρ) = 4π ∫₀¹ g(ρ)ρ² dρ, boundary area 4π
    let ball = |g: &dyn Fn(f64) -> f64| 4.0 * PI * integrate_1d(0.0, 1.0, 16, |r| g(r) * r * r);
    let one = hardy_check(imm, 32, |_| 1.0).map_err(|e| e.to_string())?;
    let (l1, r1) = (ball(&|_| 1.0), 2.0 / 3.0 * 4.0 * PI);
    let bump = hardy_check(imm, 32, |x| 1.0 - x.iter().map(|v| v * v).sum::<f64>()).map_err(|e| e.to_string())?;
    let l2 = ball(&|r| (1.0 - r * r).powi(2));
    let r2 = 4.0 / 9.0 * ball(&|r| 4.0 * r * r);
    for (got, want) in [(one.lhs, l1), (one.rhs, r1), (bump.lhs, l2), (bump.rhs, r2)] {
        ensure(rel(got, want) <= 1e-5, format!("{got} vs oracle {want}"))?;
    }
    // closed forms 4π/3, 8π/3, 32π/105, 64π/45 to 20 digits
    for (got, frozen) in [
        (one.lhs, 4.188_790_204_786_391),
        (one.rhs, 8.377_580_409_572_782),
        (bump.lhs, 0.957_437_761_094_032_2),
        (bump.rhs, 4.468_042_885_105_484),
    ] {
        ensure(rel(got, frozen) <= 1e-5, format!("{got} vs {frozen}"))?;
    }
    let fields = hardy_fields(4, 20, 7);
    for f in &fields[2..] {
        let q = hardy_check(imm, 24, |x| f(x)).map_err(|e| e.to_string())?;
        ensure(q.holds(1e-10), format!("random field: lhs {} rhs {}", q.lhs, q.rhs))?;
    }
    Ok(format!("{:.5}/{:.5}, {:.5}/{:.5}, 20 random fields", one.lhs, one.rhs, bump.lhs, bump.rhs))
}

fn first_inequality() -> Outcome {
    for id in ["equatorial_disk_3_0", "equatorial_disk_3_-1", "spherical_cap_3_0.5", "spherical_cap_3_1", "spherical_cap_3_2"] {
        let r = run_suites(id, &[Suite::Integral])?;
        let c = r.check("first-inequality-umbilical").unwrap();
        ensure(
            c.status == Status::Pass && c.tolerance == Some(1e-6),
            format!("{id}: rhs {:?} {:?}", c.value, c.reason),
        )?;
        expect_pass(&r, &["first-inequality", "first-inequality-3d"])?;
        ensure(r.check("first-inequality").unwrap().equality == Some(true), format!("{id}: no equality flag"))?;
    }
    let r = run_suites("critical_catenoid_3", &[Suite::Integral])?;
    expect_pass(&r, &["first-inequality", "first-inequality-3d"])?;
    ensure(
        r.check("first-inequality").unwrap().equality == Some(false),
        "critical_catenoid_3 flagged as equality".into(),
    )?;
    Ok("5 umbilical entries collapse, non-umbilical catenoid not flagged".into())
}

fn equality_chain() -> Outcome {
    let e = catalog::critical_catenoid().unwrap();
    let s = second_inequality(&e.immersion, 512).map_err(|e| e.to_string())?;
    let d = equality_topology_diagnostic(&e.immersion, 512, 1e-6).map_err(|e| e.to_string())?;
    let perimeter = integrate_boundary(&e.immersion, 512, |_| Ok(1.0)).map_err(|e| e.to_string())?.value;
    // 4π tanh t₀ with t₀ tanh t₀ = 1, evaluated to 30 digits
    ensure((perimeter - 10.474_780_656).abs() <= 1e-6, format!("|∂Σ| = {perimeter}"))?;
    let rel = (s.phi_sq_integral - 2.0 * perimeter).abs() / (2.0 * perimeter);
    ensure(rel <= 1e-4, format!("∫|φ|² = {} vs {}", s.phi_sq_integral, 2.0 * perimeter))?;
    let log_rel = (d.boundary_log - d.boundary_log_expected).abs() / d.boundary_log_expected.abs();
    ensure(log_rel <= 1e-3, format!("boundary log identity rel {log_rel:e}"))?;
    ensure(s.inequality.equality, "equality flag not set".into())?;
    ensure(d.chi.abs() <= 1e-6 && d.annulus, format!("χ = {}", d.chi))?;
    Ok(format!("∫|φ|² rel {rel:.1e}, log rel {log_rel:.1e}, χ = {:.1e}", d.chi))
}

fn euler_formula() -> Outcome {
    let e = catalog::critical_catenoid().unwrap();
    let r = euler_count_check(&e.immersion, 128, 0.0).map_err(|e| e.to_string())?;
    ensure(r.theta_interior == 0 && r.theta_boundary == 0, format!("θ = {}, {}", r.theta_interior, r.theta_boundary))?;
    ensure(r.residual.abs() <= 1e-6, format!("residual {}", r.residual))?;
    Ok(format!("θ_Σ = θ_∂Σ = 0, residual {:.1e}", r.residual))
}

fn log_lemma() -> Outcome {
    let cases = synthetic_cases(50, 0x5eed);
    let mut worst_closed: f64 = 0.0;
    let mut worst_random: f64 = 0.0;
    for (k, phi) in cases.iter().enumerate() {
        let r = log_lemma_check(phi, SYNTHETIC_RESOLUTION).map_err(|e| e.to_string())?;
        if k < 3 {
            worst_closed = worst_closed.max(r.residual.abs());
        } else {
            worst_random = worst_random.max(r.residual.abs());
        }
    }
    ensure(worst_closed <= 1e-6, format!("closed forms residual {worst_closed:e}"))?;
    ensure(worst_random <= 1e-6, format!("random residual {worst_random:e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sets: Vec<Vec<(Complex64, u32)>> = (1..=5).map(|m| vec![(Complex64::new(0.1, -0.2), m)]).collect();
    sets.extend((0..20).map(|_| random_zero_set(&mut rng)));
    for zs in sets {
        let phi = SyntheticPhi::new(zs.clone(), SyntheticDomain::Disk);
        let found = detect_synthetic(&phi, SYNTHETIC_RESOLUTION).map_err(|e| e.to_string())?;
        ensure(found.len() == zs.len(), format!("{zs:?}: found {}", found.len()))?;
        for (z, m) in &zs {
            let hit = found
                .iter()
                .any(|u| (Complex64::new(u.location[0], u.location[1]) - z).norm() <= 0.02 && u.multiplicity == *m);
            ensure(hit, format!("zero {z} of multiplicity {m} not recovered"))?;
        }
    }
    Ok(format!("closed {worst_closed:.1e}, random {worst_random:.1e}, 25 zero sets recovered"))
}

fn algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        use rand::Rng;
        let n = rng.gen_range(2..=8);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = TraceFreeSpectrum::project(&v);
        for r in symmetric_sum_identities(&s) {
            worst = worst.max(r);
        }
        if n >= 3 {
            let o = okumura_bound(&s);
            worst = worst.max(o.lhs - o.rhs);
            ensure(!o.tight, format!("generic spectrum {v:?} reported tight"))?;
        }
    }
    ensure(worst <= 1e-10, format!("residual {worst:e}"))?;
    for n in 3..=8 {
        let mut v = vec![-1.0; n];
        v[n - 1] = (n - 1) as f64;
        ensure(okumura_bound(&TraceFreeSpectrum::project(&v)).tight, format!("n = {n} extremal not detected"))?;
    }
    Ok(format!("1000 spectra, residual {worst:.1e}, extremal detected"))
}

fn negatives() -> Outcome {
    let suites = [Suite::Ambient, Suite::Pointwise, Suite::Boundary, Suite::Integral, Suite::Topology];
    for (id, target) in [
        ("truncated_catenoid", "free-boundary-orthogonality"),
        ("translated_disk", "free-boundary-containment"),
        ("perturbed_cap", "constant-mean-curvature"),
    ] {
        let r = run_suites(id, &suites)?;
        let failed: Vec<&str> = r.failures().map(|c| c.id).collect();
        ensure(failed == [target], format!("{id}: failures {failed:?}"))?;
    }
    for id in ["critical_catenoid", "equatorial_disk_2_0", "spherical_cap_2_1"] {
        let r = run_suites(id, &suites)?;
        let failed: Vec<&str> = r.failures().map(|c| c.id).collect();
        ensure(failed.is_empty(), format!("{id}: spurious failures {failed:?}"))?;
    }
    Ok("each variant fails only its target".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("ambient identities", ambient),
        ("boundary sphere umbilical", boundary_sphere),
        ("boundary identities i/ii", key_lemma),
        ("Simons inequality", simons),
        ("Hardy inequality", hardy),
        ("first integral inequality", first_inequality),
        ("catenoid equality chain", equality_chain),
        ("Euler umbilic formula", euler_formula),
        ("synthetic log lemma", log_lemma),
        ("algebra oracles", algebra),
        ("negative variants", negatives),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (label, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{label}] {:>2}. {name}: {detail} ({:.1}s)", k + 1, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
