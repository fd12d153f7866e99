//! Zero detection and the log identity on synthetic Hopf-type functions.

use num_complex::Complex64;

use freebound::umbilic::{detect_synthetic, log_lemma_check, SyntheticDomain, SyntheticPhi};

fn main() -> Result<(), freebound::error::Error> {
    let zeros = vec![(Complex64::new(0.3, 0.1), 2), (Complex64::new(-0.4, -0.2), 1), (Complex64::new(1.0, 0.0), 1)];
    let phi = SyntheticPhi::new(zeros, SyntheticDomain::Disk).with_log_f(|x, y| 0.2 * x * x - 0.1 * y);
    for u in detect_synthetic(&phi, 160)? {
        println!(
            "zero at ({:+.4}, {:+.4}) multiplicity {} boundary {}",
            u.location[0], u.location[1], u.multiplicity, u.boundary
        );
    }
    let r = log_lemma_check(&phi, 160)?;
    println!(
        "∫Δlog φ = {:.9}, −2πθ_Σ − πθ_∂Σ + ∮ν(φ)/φ = {:.9} (θ_Σ = {}, θ_∂Σ = {})",
        r.lhs, r.rhs, r.theta_interior, r.theta_boundary
    );
    Ok(())
}
