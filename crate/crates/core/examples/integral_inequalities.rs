//! Hardy, first and second integral inequalities on a few entries.

use freebound::catalog;
use freebound::integrate::{first_inequality, hardy_check, second_inequality};

fn main() -> Result<(), freebound::error::Error> {
    let disk = catalog::equatorial_disk(3, 0)?;
    let h = hardy_check(&disk.immersion, 32, |x| 1.0 - x.iter().map(|v| v * v).sum::<f64>())?;
    println!("Hardy, f = 1 − |x|² on the 3-disk: {:.6} ≤ {:.6}", h.lhs, h.rhs);

    for id in ["spherical_cap_3_0.5", "critical_catenoid_3"] {
        let e = catalog::entry(id)?;
        let chis: Vec<i32> = e.meta.components.iter().map(|c| c.chi).collect();
        let r = first_inequality(&e.immersion, 32, Some(&chis))?;
        println!(
            "first inequality on {id}: {:.6} ≥ {:.6} (3d form {:.6}, equality {})",
            r.inequality.lhs,
            r.inequality.rhs,
            r.rhs_3d.unwrap_or(f64::NAN),
            r.inequality.equality
        );
    }

    let cat = catalog::critical_catenoid()?;
    let s = second_inequality(&cat.immersion, 256)?;
    println!(
        "second inequality on the catenoid: {:.9} ≤ {:.9}, ∫|φ|² = {:.9}, equality {}",
        s.inequality.lhs, s.inequality.rhs, s.phi_sq_integral, s.inequality.equality
    );
    Ok(())
}
