//! Global sections of O_Y: the exact value, the splitting recursion and the
//! d^r ceiling, for monomial and non-monomial ideals.
//!
//! ```bash
//! cargo run --example gamma_sections
//! ```

use torsion_bounds::cohomology::{gamma_exact, GammaConfig};
use torsion_bounds::corpus::documented_instance;
use torsion_bounds::field::{Fp, Rational};
use torsion_bounds::groebner::GroebnerConfig;
use torsion_bounds::mono_gamma::{audit_presentation, gamma_bound_general, gamma_bound_monomial};
use torsion_bounds::poly::{parse_ideal, IdealPresentation, MonomialOrder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = GammaConfig::default();

    // a fat point of length 6 in P^2
    let fat: IdealPresentation<Fp> = parse_ideal("x0^2\nx1^3", 2)?;
    let exact = gamma_exact(&fat, &cfg)?;
    let mono = gamma_bound_monomial(&fat.as_monomial_ideal().expect("monomial"));
    println!("(x0^2, x1^3) in P^2");
    println!("  exact h^0    = {} (probes {:?})", exact.dim, exact.probes);
    println!("  recursion    = {}", mono.bound);
    println!("  d^r          = {}", mono.d_pow_r);

    // the twisted cubic, through its grevlex initial ideal
    let cubic: IdealPresentation<Rational> = parse_ideal("x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2", 3)?;
    let general = gamma_bound_general(&cubic, MonomialOrder::GradedRevLex, &GroebnerConfig::default())?;
    println!("twisted cubic in P^3");
    println!("  exact h^0    = {}", gamma_exact(&cubic, &cfg)?.dim);
    println!("  in(I)        = {}", general.initial_ideal);
    println!("  recursion    = {}", general.sharp.bound);
    println!("  closed form  = {}", general.closed_form.map_or("-".into(), |c| c.to_string()));

    // a presentation where the exact value exceeds #M/d
    let audit = audit_presentation(&documented_instance(), &cfg)?;
    println!("{}", audit.presentation);
    println!("  exact = {}, recursion = {}, #M/d = {}/{}", audit.exact, audit.leaf_sum, audit.majorant_num, audit.majorant_den);
    println!("  sound: {}, exceeds majorant: {}", audit.sound(), audit.exact_exceeds_majorant);
    Ok(())
}
