//! Free-boundary residuals and the boundary identities on a cap and the catenoid.

use freebound::boundary::{free_boundary_residual, key_lemma_identity_i, key_lemma_identity_ii, BoundaryTrace};
use freebound::catalog;
use freebound::fields::FieldContext;

fn main() -> Result<(), freebound::error::Error> {
    for e in [catalog::spherical_cap(2, 1.0)?, catalog::critical_catenoid()?, catalog::truncated_catenoid()?] {
        let ctx = FieldContext::new(&e.immersion, e.immersion.domain().grid(128), 4)?;
        let trace = BoundaryTrace::from_grid(&e.immersion, &ctx)?;
        let fb = free_boundary_residual(&trace);
        let i = key_lemma_identity_i(&trace);
        println!("{}: r_contain {:.1e}, r_ortho {:.1e}, identity i {:.1e}", e.id, fb.r_contain, fb.r_ortho, i.max);
        match key_lemma_identity_ii(&trace, &ctx) {
            Ok(ii) => println!("  ν(|φ|²): max {:.2e}, identity ii residual {:.2e}", ii.max_lhs, ii.max_residual),
            Err(err) => println!("  identity ii: {err}"),
        }
    }
    Ok(())
}
