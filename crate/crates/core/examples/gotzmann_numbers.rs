//! Gotzmann decompositions, Hoa's bound and the parameters of the embedding
//! into a Grassmannian.
//!
//! ```bash
//! cargo run --example gotzmann_numbers
//! ```

use torsion_bounds::cohomology::HilbertPolynomial;
use torsion_bounds::gotzmann::{embedding_parameters, gotzmann_decompose, gotzmann_decompose_ideal, hoa_bound, CodimMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["4", "2t+1", "3t", "t^2 + 2t + 1"] {
        let q: HilbertPolynomial = text.parse()?;
        let dec = gotzmann_decompose(&q)?;
        println!("Q = {:<16} s = {:<3} runs {:?}", q.to_string(), dec.s(), dec.runs());
    }

    // a plane conic has ideal sheaf polynomial C(t+2,2) - (2t+1) = C(t,2)
    let p: HilbertPolynomial = "C(t,2)".parse()?;
    let dec = gotzmann_decompose_ideal(&p, 2)?;
    println!("ideal sheaf polynomial {p} in P^2: s = {}, a = {:?}", dec.s(), dec.a);

    for (d, b, c) in [(2, 1, 2), (3, 2, 1), (2, 3, 1)] {
        println!("Hoa(d={d}, b={b}, c={c}) = {}", hoa_bound(d, b, c)?);
    }

    let p = embedding_parameters(2, 3, CodimMode::Majorize)?;
    println!("d = 2, r = 3: n = {}, m has {} digits", p.n, p.m.to_string().len());
    Ok(())
}
