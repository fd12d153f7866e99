//! List every catalog entry with its declared data.

use freebound::catalog;

fn main() -> Result<(), freebound::error::Error> {
    for e in catalog::all_entries()? {
        println!(
            "{:<24} n = {}  c = {:>2}  H = {:<10}  {}",
            e.id,
            e.n(),
            e.model().curvature(),
            e.immersion.declared_h().map_or("-".into(), |h| format!("{h:.6}")),
            e.description
        );
    }
    Ok(())
}
