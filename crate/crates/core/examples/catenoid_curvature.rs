//! Pointwise extrinsic data along a meridian of the critical catenoid.

use freebound::catalog;

fn main() -> Result<(), freebound::error::Error> {
    let e = catalog::critical_catenoid()?;
    let t0 = catalog::catenoid_t0();
    println!("t₀ = {t0:.15}, scale = {:.15}", catalog::catenoid_scale(t0));
    println!("{:>8} {:>12} {:>12} {:>12} {:>12} {:>10}", "t", "k1", "k2", "H", "|φ|²", "gauss res");
    for k in 0..=8 {
        let t = -t0 + 2.0 * t0 * k as f64 / 8.0;
        let u = [t, 0.3];
        let fd = e.immersion.fundamental_data(&u)?;
        let (_, gauss) = e.immersion.gauss_curvature_2d(&u)?;
        println!(
            "{t:>8.4} {:>12.6} {:>12.6} {:>12.2e} {:>12.6} {:>10.1e}",
            fd.principal[0], fd.principal[1], fd.mean_curvature, fd.umbilicity_sq, gauss
        );
    }
    Ok(())
}
