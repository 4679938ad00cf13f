//! Reduced Gröbner bases under each order, and the Hilbert data of R/I.
//!
//! ```bash
//! cargo run --example groebner_hilbert
//! ```

use torsion_bounds::cohomology::{hilbert_function, hilbert_polynomial, hilbert_series_numerator};
use torsion_bounds::field::Rational;
use torsion_bounds::groebner::{buchberger, dube_bound, GroebnerConfig};
use torsion_bounds::poly::{parse_ideal, IdealPresentation, MonomialOrder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = GroebnerConfig::default();
    let ideal: IdealPresentation<Rational> = parse_ideal("x0*x1 - x2^2\nx0^2 - x1*x2", 2)?;

    for order in [MonomialOrder::Lex, MonomialOrder::GradedLex, MonomialOrder::GradedRevLex] {
        let gb = buchberger(&ideal, order, &cfg)?;
        println!("{}:", order.name());
        for g in gb.elements() {
            println!("  {g}");
        }
        println!("  in(I) = {}", gb.initial_ideal());
    }

    let gb = buchberger(&ideal, MonomialOrder::GradedRevLex, &cfg)?;
    let values: Vec<u64> = (0..8).map(|t| hilbert_function(&ideal, t, &cfg)).collect::<Result<_, _>>()?;
    println!("H(t), t = 0..8: {values:?}");
    println!("series numerator: {}", hilbert_series_numerator(&gb.initial_ideal())?);
    println!("Hilbert polynomial: {}", hilbert_polynomial(&ideal, &cfg)?);
    println!("basis degree bound for d = 2 in P^2: {}", dube_bound(2, 2)?);
    Ok(())
}
