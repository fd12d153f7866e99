//! The three conformal ball models: radii, μ₀, and the position-field identity.

use freebound::ambient::{AmbientModel, RadiusConvention};
use freebound::suites::conformal_identity_residual;

fn main() -> Result<(), freebound::error::Error> {
    for (c, conv) in [
        (0, RadiusConvention::GaugeUnit),
        (-1, RadiusConvention::GaugeUnit),
        (1, RadiusConvention::GeodesicUnit),
    ] {
        let m = AmbientModel::new(c, 3, conv)?;
        let (kappa, mu0) = m.boundary_sphere_shape();
        println!(
            "c = {c:>2}  radius {:.12}  μ₀ {:.12}  <x,x> on ∂B {:.12}  κ(∂B) {:.12}",
            m.radius(),
            mu0,
            m.boundary_gauge_norm().powi(2),
            kappa
        );
        println!("        max |∇̂_X x − μX| over 100 samples: {:.2e}", conformal_identity_residual(&m, 100, 1)?);
    }
    Ok(())
}
