//! Seeded audit of the splitting recursion against exact sections over a
//! random corpus of presentations.
//!
//! ```bash
//! cargo run --release --example corpus_audit -- 200
//! ```

use torsion_bounds::cohomology::GammaConfig;
use torsion_bounds::corpus::{corpus_audit, CorpusSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(100);
    let spec = CorpusSpec { seed: 0, count, r_max: 3, d_max: 4 };
    let audit = corpus_audit(&spec, &GammaConfig::default())?;
    println!("{} instances ({}, seed {})", audit.instances, audit.prng, audit.seed);
    println!("  unsound                 {}", audit.unsound);
    println!("  exact above #M/d        {}", audit.majorant_exceeded);
    println!("  node violations         {}", audit.instances_with_node_violations);
    println!("  exact above d^r         {}", audit.exact_exceeds_d_pow_r);
    println!("  max bound/exact         {:?}", audit.max_bound_ratio);
    println!("documented: {}", audit.documented.presentation);
    Ok(())
}
