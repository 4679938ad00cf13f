//! Seeded random instances for the audits and property suites.
//!
//! All generators draw from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a seed names the same corpus on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{CohomologyError, GammaConfig};
use crate::field::Field;
use crate::mono_gamma::{audit_presentation, GammaAudit, ModulePresentation};
use crate::poly::{IdealPresentation, Monomial, MonomialIdeal, Polynomial};

/// The generator behind every corpus.
pub fn corpus_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly drawn monomial of degree `deg` in `nvars` variables.
pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, deg: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..deg {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(exps).expect("nvars >= 1")
}

/// A monomial ideal in `P^r`, `1 <= r <= r_max`, with one to four
/// generators of degree `1..=d_max`.
pub fn random_monomial_ideal<R: Rng>(rng: &mut R, r_max: usize, d_max: u32) -> MonomialIdeal {
    let nvars = rng.gen_range(1..=r_max.max(1)) + 1;
    let count = rng.gen_range(1..=4);
    let gens = (0..count).map(|_| {
        let deg = rng.gen_range(1..=d_max.max(1));
        random_monomial(rng, nvars, deg)
    });
    MonomialIdeal::new(nvars, gens.collect())
}

/// A presentation `(m, I, d)` with `d` at least the generator degree of
/// `I` and at least every exponent of the shift `m`.
pub fn random_presentation<R: Rng>(rng: &mut R, r_max: usize, d_max: u32) -> ModulePresentation {
    let ideal = random_monomial_ideal(rng, r_max, d_max);
    let nvars = ideal.nvars();
    let shift_deg = rng.gen_range(0..=2);
    let shift = random_monomial(rng, nvars, shift_deg);
    let floor = ideal.d().max(1).max(shift.exponents().iter().copied().max().unwrap_or(0));
    let d = floor + rng.gen_range(0..=1);
    ModulePresentation::new(shift, ideal, d).expect("d dominates the shift and the generators")
}

/// A homogeneous polynomial of degree `deg` with one to four terms and
/// coefficients in `-5..=5`, nonzero.
pub fn random_homogeneous<F: Field, R: Rng>(rng: &mut R, nvars: usize, deg: u32) -> Polynomial<F> {
    loop {
        let terms = rng.gen_range(1..=4);
        let p = Polynomial::from_terms(
            nvars,
            (0..terms).map(|_| (random_monomial(rng, nvars, deg), F::from_i64(rng.gen_range(-5..=5)))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// A homogeneous ideal in `P^r`, `1 <= r <= r_max`, with one to three
/// generators of degree `1..=deg_max`.
pub fn random_homogeneous_ideal<F: Field, R: Rng>(rng: &mut R, r_max: usize, deg_max: u32) -> IdealPresentation<F> {
    let nvars = rng.gen_range(1..=r_max.max(1)) + 1;
    let count = rng.gen_range(1..=3);
    let gens = (0..count)
        .map(|_| {
            let deg = rng.gen_range(1..=deg_max.max(1));
            random_homogeneous(rng, nvars, deg)
        })
        .collect();
    IdealPresentation::new(nvars, gens).expect("generators are homogeneous and nonzero")
}

/// `(x0^2, (x1), d = 3)` in `P^1`: `M` is the single monomial `x0^2`, so the
/// majorant `#M/d` is 1/3 while the module has one section.
pub fn documented_instance() -> ModulePresentation {
    let shift = Monomial::new(vec![2, 0]).unwrap();
    let ideal = MonomialIdeal::new(2, vec![Monomial::new(vec![0, 1]).unwrap()]);
    ModulePresentation::new(shift, ideal, 3).unwrap()
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub r_max: usize,
    pub d_max: u32,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { seed: 0, count: 200, r_max: 3, d_max: 4 }
    }
}

/// Statistics of the recursion against the exact section dimension over a
/// seeded corpus, plus the documented instance.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusAudit {
    pub seed: u64,
    pub prng: &'static str,
    pub instances: usize,
    /// Instances where the exact value exceeds the recursion's bound; the
    /// bound is proved, so this is expected to be zero.
    pub unsound: usize,
    /// Instances where the exact value exceeds `#M/d`.
    pub majorant_exceeded: usize,
    /// Instances where some node of the recursion exceeds `#M/d`.
    pub instances_with_node_violations: usize,
    pub exact_exceeds_d_pow_r: usize,
    /// Largest `leaf_sum / exact` over instances with sections.
    pub max_bound_ratio: Option<f64>,
    pub documented: GammaAudit,
    /// Full records for every instance where the majorant fails.
    pub majorant_entries: Vec<GammaAudit>,
}

pub fn corpus_audit(spec: &CorpusSpec, config: &GammaConfig) -> Result<CorpusAudit, CohomologyError> {
    let mut rng = corpus_rng(spec.seed);
    let mut presentations = vec![documented_instance()];
    presentations.extend((0..spec.count).map(|_| random_presentation(&mut rng, spec.r_max, spec.d_max)));
    let audits: Vec<GammaAudit> =
        presentations.par_iter().map(|p| audit_presentation(p, config)).collect::<Result<_, _>>()?;
    let ratio = audits
        .iter()
        .filter(|a| a.exact > 0)
        .map(|a| a.leaf_sum as f64 / a.exact as f64)
        .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))));
    Ok(CorpusAudit {
        seed: spec.seed,
        prng: "ChaCha8 (rand_chacha), seed_from_u64",
        instances: audits.len(),
        unsound: audits.iter().filter(|a| !a.sound()).count(),
        majorant_exceeded: audits.iter().filter(|a| a.exact_exceeds_majorant).count(),
        instances_with_node_violations: audits.iter().filter(|a| !a.violations.is_empty()).count(),
        exact_exceeds_d_pow_r: audits.iter().filter(|a| a.exact_exceeds_d_pow_r).count(),
        max_bound_ratio: ratio,
        documented: audits[0].clone(),
        majorant_entries: audits.iter().filter(|a| a.exact_exceeds_majorant).cloned().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn reproducible() {
        let a: Vec<String> = (0..5).map(|_| random_presentation(&mut corpus_rng(7), 3, 4).to_string()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut rng = corpus_rng(1);
        let i: IdealPresentation<Fp> = random_homogeneous_ideal(&mut rng, 2, 3);
        assert!(i.r() >= 1 && i.r() <= 2);
    }

    #[test]
    fn documented_entry() {
        let audit = corpus_audit(&CorpusSpec { count: 5, ..CorpusSpec::default() }, &GammaConfig::default()).unwrap();
        assert_eq!(audit.documented.presentation, "(x0^2, (x1), d=3)");
        assert_eq!(audit.documented.exact, 1);
        assert!(audit.documented.exact_exceeds_majorant);
        assert_eq!(audit.unsound, 0);
        assert!(audit.majorant_exceeded >= 1);
    }
}
