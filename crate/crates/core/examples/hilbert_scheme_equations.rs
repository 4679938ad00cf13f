//! Equations of the Hilbert scheme of two points in P^2 inside
//! its Plücker space, checked at every coordinate point.
//!
//! ```bash
//! cargo run --example hilbert_scheme_equations
//! ```

use torsion_bounds::cohomology::HilbertPolynomial;
use torsion_bounds::grassmann::{hilb_equations, HilbConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: HilbertPolynomial = "2".parse()?;
    let eqs = hilb_equations(2, 2, &q, None, &HilbConfig::default())?;
    let manifest = eqs.manifest();
    println!("dim V = {}, n = {}, m = {}", manifest.dim_v, manifest.n, manifest.m);
    println!("{} Plücker coordinates, {} quadrics", manifest.plucker_variables, manifest.quadrics);

    for (missing, point) in eqs.coordinate_points() {
        let check = eqs.check_point(&point);
        let names: Vec<String> = missing.iter().map(|m| m.to_string()).collect();
        println!(
            "  missing {:<14} quadrics {:<5} fitting {:<5} (rank {}) -> {}",
            names.join(", "),
            check.quadrics,
            check.fitting,
            check.fitting_rank,
            if check.accepted() { "in Hilb" } else { "outside" }
        );
    }

    let audit = eqs.degree_audit(16, 7);
    println!("Fitting entries linear: {}, minors of degree m: {}", audit.entries_linear, audit.all_degree_m);
    Ok(())
}
