//! The Plücker point of a subscheme: coordinates of the degree-t piece of
//! its ideal.
//!
//! ```bash
//! cargo run --example plucker_point
//! ```

use torsion_bounds::cohomology::HilbertPolynomial;
use torsion_bounds::field::Rational;
use torsion_bounds::grassmann::{hilb_equations, plucker_point_of_subscheme, HilbConfig};
use torsion_bounds::poly::{parse_ideal, IdealPresentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the points [1:0:0] and [0:1:0]
    let z: IdealPresentation<Rational> = parse_ideal("x2\nx0*x1", 2)?;
    let (space, point) = plucker_point_of_subscheme(&z, 2, Some(4))?;
    println!("G({}, {}) with {} coordinates", point.n, point.dim_v, space.len());
    for (v, c) in space.variables().iter().zip(&point.coords) {
        if !num_traits::Zero::is_zero(c) {
            println!("  {} = {c}", v.name());
        }
    }

    let q: HilbertPolynomial = "2".parse()?;
    let eqs = hilb_equations(2, 2, &q, None, &HilbConfig::default())?;
    println!("accepted by the equations: {}", eqs.check_point(&point).accepted());
    Ok(())
}
