//! `dim Γ(P^r, F~)` for `F = R/I` or `F = (m)/(I ∩ (m))`, computed as the
//! stable value of `dim Hom(m^t, F)_0` where `m` is the irrelevant ideal.
//!
//! A degree-0 map from `m^t` is a choice of `φ(u) ∈ F_t` for each degree-t
//! monomial `u`, subject to `x_i φ(w/x_i) = x_j φ(w/x_j)` in `F_{t+1}` for
//! each degree-(t+1) monomial `w` and consecutive variables `x_i, x_j` in
//! its support.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{hilbert_series_numerator, CohomologyError};
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis, GroebnerConfig};
use crate::linalg::SparseEchelon;
use crate::mono_gamma::ModulePresentation;
use crate::poly::{IdealPresentation, Monomial, MonomialIdeal, MonomialOrder, Polynomial};

#[derive(Clone, Copy, Debug)]
pub struct GammaConfig {
    /// Largest `t` probed before giving up.
    pub t_max: u32,
    pub groebner: GroebnerConfig,
}

impl Default for GammaConfig {
    fn default() -> Self {
        GammaConfig { t_max: 24, groebner: GroebnerConfig::default() }
    }
}

/// Result of the stabilizing Hom computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaExact {
    pub dim: u64,
    /// First `t` probed.
    pub threshold: u32,
    /// `(t, dim Hom(m^t, F)_0)` for every probed `t`; the last two agree.
    pub probes: Vec<(u32, u64)>,
}

impl GammaExact {
    fn zero_module() -> Self {
        GammaExact { dim: 0, threshold: 0, probes: Vec::new() }
    }
}

fn stabilize<G>(threshold: u32, t_max: u32, hom_dim: G) -> Result<GammaExact, CohomologyError>
where
    G: Fn(u32) -> u64 + Sync,
{
    let mut t = threshold;
    if t + 1 > t_max {
        return Err(CohomologyError::StabilizationCapExceeded { t_max, last: Vec::new() });
    }
    let (a, b) = rayon::join(|| hom_dim(t), || hom_dim(t + 1));
    let mut probes = vec![(t, a), (t + 1, b)];
    loop {
        let n = probes.len();
        if probes[n - 1].1 == probes[n - 2].1 {
            return Ok(GammaExact { dim: probes[n - 1].1, threshold, probes });
        }
        t += 1;
        if t + 1 > t_max {
            return Err(CohomologyError::StabilizationCapExceeded { t_max, last: probes[n - 2..].to_vec() });
        }
        probes.push((t + 1, hom_dim(t + 1)));
    }
}

struct UnionFind {
    parent: Vec<usize>,
    merges: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), merges: 0 }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.merges += 1;
        }
    }
}

/// Each relation equates two coefficients (or forces one to zero), so for
/// monomial data the solution space is counted by connected components.
fn hom_dim_monomial(shift: &Monomial, ideal: &MonomialIdeal, t: u32) -> u64 {
    let nvars = ideal.nvars();
    let standard = |v: &Monomial| shift.divides(v) && !ideal.contains(v);
    let sources = Monomial::all_of_degree(nvars, t);
    let source_idx: HashMap<&Monomial, usize> = sources.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let targets: Vec<Monomial> = sources.iter().filter(|v| standard(v)).cloned().collect();
    let target_idx: HashMap<&Monomial, usize> = targets.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let nt = targets.len();
    let nodes = sources.len() * nt;
    if nodes == 0 {
        return 0;
    }
    let zero = nodes;
    let mut uf = UnionFind::new(nodes + 1);

    let upper = Monomial::all_of_degree(nvars, t + 1);
    let upper_targets: Vec<&Monomial> = upper.iter().filter(|z| standard(z)).collect();
    let node = |w: &Monomial, z: &Monomial, i: usize| -> Option<usize> {
        let v = z.over_var(i)?;
        let vi = *target_idx.get(&v)?;
        let ui = source_idx[&w.over_var(i).unwrap()];
        Some(ui * nt + vi)
    };
    for w in &upper {
        let support: Vec<usize> = w.support().collect();
        for pair in support.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            for z in &upper_targets {
                match (node(w, z, i), node(w, z, j)) {
                    (Some(a), Some(b)) => uf.union(a, b),
                    (Some(a), None) | (None, Some(a)) => uf.union(a, zero),
                    (None, None) => {}
                }
            }
        }
    }
    (nodes + 1 - uf.merges - 1) as u64
}

/// General ideals: sparse linear algebra over the normal-form coordinates
/// of `(R/I)_t` and `(R/I)_{t+1}`.
fn hom_dim_general<F: Field>(gb: &GroebnerBasis<F>, t: u32) -> u64 {
    let nvars = gb.source().nvars();
    let init = gb.initial_ideal();
    let sources = Monomial::all_of_degree(nvars, t);
    let source_idx: HashMap<&Monomial, usize> = sources.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let targets = init.graded_piece_basis(t);
    let upper_targets = init.graded_piece_basis(t + 1);
    let upper_idx: HashMap<&Monomial, usize> = upper_targets.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let nt = targets.len();
    if nt == 0 {
        return 0;
    }
    // times[i][v] = coordinates of NF(x_i * v) in (R/I)_{t+1}
    let times: Vec<Vec<Vec<(usize, F)>>> = (0..nvars)
        .map(|i| {
            targets
                .iter()
                .map(|v| {
                    let nf = gb.normal_form(&Polynomial::monomial(v.times_var(i)));
                    nf.terms().map(|(m, c)| (upper_idx[m], c.clone())).collect()
                })
                .collect()
        })
        .collect();

    let mut ech = SparseEchelon::<F>::new();
    for w in Monomial::all_of_degree(nvars, t + 1) {
        let support: Vec<usize> = w.support().collect();
        for pair in support.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            let ui = source_idx[&w.over_var(i).unwrap()];
            let uj = source_idx[&w.over_var(j).unwrap()];
            let mut rows: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
            for v in 0..nt {
                for (s, c) in &times[i][v] {
                    let e = rows.entry(*s).or_default().entry(ui * nt + v).or_insert_with(F::zero);
                    *e = e.clone() + c.clone();
                }
                for (s, c) in &times[j][v] {
                    let e = rows.entry(*s).or_default().entry(uj * nt + v).or_insert_with(F::zero);
                    *e = e.clone() - c.clone();
                }
            }
            for (_, row) in rows {
                ech.insert(row);
            }
        }
    }
    (sources.len() * nt - ech.rank()) as u64
}

fn numerator_degree(ideal: &MonomialIdeal) -> Result<u32, CohomologyError> {
    Ok(hilbert_series_numerator(ideal)?.degree())
}

/// `dim Γ(P^r, (m)/(I ∩ (m))~)` for a monomial shift `m`.
pub fn gamma_exact_submodule(p: &ModulePresentation, config: &GammaConfig) -> Result<GammaExact, CohomologyError> {
    let (shift, ideal) = (p.shift(), p.ideal());
    if ideal.contains(shift) {
        return Ok(GammaExact::zero_module());
    }
    let meet = MonomialIdeal::new(ideal.nvars(), ideal.generators().iter().map(|g| g.lcm(shift)).collect());
    let threshold = [p.d(), ideal.d(), numerator_degree(&meet)?, shift.degree(), 1].into_iter().max().unwrap();
    stabilize(threshold, config.t_max, |t| hom_dim_monomial(shift, ideal, t))
}

/// `dim Γ(Y, O_Y)` for `Y = Proj R/I`, `I` monomial.
pub fn gamma_exact_monomial(ideal: &MonomialIdeal, config: &GammaConfig) -> Result<GammaExact, CohomologyError> {
    if ideal.is_unit() {
        return Ok(GammaExact::zero_module());
    }
    let threshold = ideal.d().max(numerator_degree(ideal)?).max(1);
    let one = Monomial::one(ideal.nvars());
    stabilize(threshold, config.t_max, |t| hom_dim_monomial(&one, ideal, t))
}

/// `dim Γ(Y, O_Y)` for `Y = Proj R/I`.
pub fn gamma_exact<F: Field>(ideal: &IdealPresentation<F>, config: &GammaConfig) -> Result<GammaExact, CohomologyError> {
    if let Some(m) = ideal.as_monomial_ideal() {
        return gamma_exact_monomial(&m, config);
    }
    let gb = buchberger(ideal, MonomialOrder::GradedRevLex, &config.groebner)?;
    if gb.is_unit() {
        return Ok(GammaExact::zero_module());
    }
    let init = gb.initial_ideal();
    let threshold = ideal.d().max(init.d()).max(numerator_degree(&init)?).max(1);
    stabilize(threshold, config.t_max, |t| hom_dim_general(&gb, t))
}
