//! Gauss–Bonnet, umbilic counting and the equality chain on the catenoid.

use freebound::catalog;
use freebound::integrate::{equality_topology_diagnostic, gauss_bonnet_check};
use freebound::umbilic::euler_count_check;

fn main() -> Result<(), freebound::error::Error> {
    let e = catalog::critical_catenoid()?;
    let gb = gauss_bonnet_check(&e.immersion, 256)?;
    println!("χ from Gauss–Bonnet: {:.3e}, |k_g − μ₀| ≤ {:.1e}", gb.chi, gb.kg_defect);
    let count = euler_count_check(&e.immersion, 128, gb.chi)?;
    println!(
        "umbilics: {} interior, {} boundary, residual {:.1e}",
        count.theta_interior, count.theta_boundary, count.residual
    );
    let d = equality_topology_diagnostic(&e.immersion, 256, 1e-6)?;
    println!("∮|φ|⁻²ν(|φ|²) = {:.9}, expected {:.9}", d.boundary_log, d.boundary_log_expected);
    println!("∫p_H = {:.9}, 2(μ₀|∂Σ| − 2πχ) = {:.9}, annulus {}", d.int_p_h, d.chain_rhs, d.annulus);

    let disk = catalog::equatorial_disk(2, 0)?;
    if let Err(err) = euler_count_check(&disk.immersion, 64, 1.0) {
        println!("disk: {err}");
    }
    Ok(())
}
