//! Iterated-exponential torsion bounds, their logarithms and the audit of the
//! inequality chain behind them.
//!
//! ```bash
//! cargo run --example torsion_towers
//! ```

use torsion_bounds::towers::{chain_audit, generator_bounds, nns_bound, BoundVariant, ChainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (d, r) in [(2, 3), (3, 3), (2, 4), (5, 8)] {
        let b = nns_bound(d, r, BoundVariant::Headline)?;
        let refined = nns_bound(d, r, BoundVariant::Refined)?;
        println!("d = {d}, r = {r}: {:<28} refined {}", b.render(), refined.render());
    }

    let mut t = nns_bound(2, 3, BoundVariant::Headline)?;
    for k in 1..=5 {
        t = t.log2()?;
        println!("  log2^{k} = {}", t.render());
    }

    let g = generator_bounds(5)?;
    println!("degree 5: at most {} generators, {} for p-power torsion", g.full, g.p_power);

    let audit = chain_audit(2, 3, &ChainConfig::default())?;
    for s in &audit.steps {
        println!("  [{}] {:<5} {}", s.step, if s.pass { "ok" } else { "FAIL" }, s.claim);
    }
    println!("all steps pass: {}", audit.all_pass);
    Ok(())
}
