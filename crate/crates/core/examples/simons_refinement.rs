//! Convergence of the Simons-inequality residual on the critical catenoid.

use freebound::catalog;
use freebound::config::RunConfig;
use freebound::suites::refine;

fn main() -> Result<(), freebound::error::Error> {
    let e = catalog::critical_catenoid()?;
    for order in [2, 4] {
        let cfg = RunConfig { order, ..RunConfig::default() };
        println!("stencil order {order}");
        for row in refine(&e, "simons-inequality", &[32, 64, 128], &cfg)? {
            let o = row.order.map_or(String::from("-"), |o| format!("{o:.2}"));
            println!("  N = {:>4}  max |residual| {:.3e}  order {o}", row.resolution, row.value);
        }
    }
    Ok(())
}
