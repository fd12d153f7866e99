//! Run every suite on one entry and print the JSON report.

use freebound::catalog;
use freebound::config::RunConfig;
use freebound::report::{render, Format};
use freebound::suites::verify_entry;

fn main() -> Result<(), freebound::error::Error> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "spherical_cap_2_1".into());
    let e = catalog::entry(&id)?;
    let report = verify_entry(&e, &RunConfig { resolution: 64, ..RunConfig::default() });
    print!("{}", render(&[report], Format::Json));
    Ok(())
}
