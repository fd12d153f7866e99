//! Trace-free spectra: the symmetric sums and Okumura's bound.

use freebound::algebra::{okumura_bound, symmetric_sum_identities, umbilical_rhs_collapse, TraceFreeSpectrum};

fn main() {
    for v in [vec![1.0, 0.2, -0.7], vec![3.0, -1.0, -1.0, -1.0], vec![0.5, 0.4, -0.1, -0.3, -0.5]] {
        let s = TraceFreeSpectrum::project(&v);
        let o = okumura_bound(&s);
        println!(
            "σ = {:?}\n  sums residual {:?}\n  |Σσ³| = {:.6} ≤ {:.6} tight {}",
            s.sigma(),
            symmetric_sum_identities(&s),
            o.lhs,
            o.rhs,
            o.tight
        );
    }
    println!("collapse at n = 3, λ = 0.7, μ₀ = √2: {:e}", umbilical_rhs_collapse(3, 0.7, 2f64.sqrt()));
}
