//! The combinatorial upper bound on `dim Γ` for monomial data.
//!
//! A presentation `(m, I, d)` stands for the module `(m)/(I ∩ (m))`. Its
//! measure `M(m, I)` is the set of monomials divisible by `m`, outside `I`,
//! with every exponent below `d`. While some minimal generator of `I` has
//! two or more variables in its support, the module is split along a short
//! exact sequence into two presentations whose `M`-sets partition the
//! parent's; once all generators are pure powers the section dimension is
//! known exactly. The leaf values add up to a certified upper bound.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::bigint::{self, TooLarge};
use crate::cohomology::{gamma_exact_submodule, CohomologyError, GammaConfig};
use crate::field::Field;
use crate::groebner::{initial_ideal, GroebnerError};
use crate::poly::{IdealPresentation, Monomial, MonomialIdeal, MonomialOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoGammaError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("no minimal generator involves two or more variables (mu = {mu})")]
    NoSplittableGenerator { mu: i64 },
}

/// `μ(m)`: number of variables dividing `m`, minus one.
pub fn mu_monomial(m: &Monomial) -> i64 {
    m.support_size() as i64 - 1
}

/// `μ(I)`: sum of `μ` over the minimal generators; `-1` for the unit ideal.
pub fn mu_ideal(ideal: &MonomialIdeal) -> i64 {
    ideal.generators().iter().map(mu_monomial).sum()
}

/// The module `(m)/(I ∩ (m))` together with the box size `d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModulePresentation {
    shift: Monomial,
    ideal: MonomialIdeal,
    d: u32,
}

impl ModulePresentation {
    /// Requires every exponent of `shift` and every generator degree of
    /// `ideal` to be at most `d`.
    pub fn new(shift: Monomial, ideal: MonomialIdeal, d: u32) -> Result<Self, MonoGammaError> {
        if shift.nvars() != ideal.nvars() {
            return Err(MonoGammaError::InvalidPresentation(format!(
                "shift has {} variables, ideal has {}",
                shift.nvars(),
                ideal.nvars()
            )));
        }
        if d == 0 {
            return Err(MonoGammaError::InvalidPresentation("d must be at least 1".into()));
        }
        if let Some(e) = shift.exponents().iter().find(|&&e| e > d) {
            return Err(MonoGammaError::InvalidPresentation(format!("shift {shift} has exponent {e} > d = {d}")));
        }
        if ideal.d() > d {
            return Err(MonoGammaError::InvalidPresentation(format!(
                "ideal {ideal} has a generator of degree {} > d = {d}",
                ideal.d()
            )));
        }
        Ok(ModulePresentation { shift, ideal, d })
    }

    /// `(1, I, max(deg I, 1))`.
    pub fn of_ideal(ideal: &MonomialIdeal) -> Self {
        let d = ideal.d().max(1);
        ModulePresentation { shift: Monomial::one(ideal.nvars()), ideal: ideal.clone(), d }
    }

    pub fn shift(&self) -> &Monomial {
        &self.shift
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn r(&self) -> usize {
        self.ideal.r()
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, d={})", self.shift, self.ideal, self.d)
    }
}

/// `M(m, I)`: monomials with `m | u`, `u ∉ I`, all exponents `< d`, in
/// canonical descending order.
pub fn enumerate_m(p: &ModulePresentation) -> Vec<Monomial> {
    let n = p.nvars();
    let d = p.d;
    let lo: Vec<u32> = p.shift.exponents().to_vec();
    if lo.iter().any(|&a| a >= d) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let m = Monomial::new(cur.clone()).unwrap();
        if !p.ideal.contains(&m) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| b.cmp(a));
                return out;
            }
            cur[k] += 1;
            if cur[k] < d {
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
}

/// The generator and variable a split step acts on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitChoice {
    pub generator: Monomial,
    pub variable: usize,
    pub exponent: u32,
}

/// Split `(m, I)` along `n' = x_i^s n`:
/// `(lcm(x_i^s, m), (n) + J)` and `(m, (x_i^s) + J)`, where `J` holds the
/// other minimal generators. The generator is the grevlex-largest one with
/// `μ > 0` and `x_i` its smallest variable.
pub fn split_step(
    p: &ModulePresentation,
) -> Result<(ModulePresentation, ModulePresentation, SplitChoice), MonoGammaError> {
    let gens = p.ideal.generators();
    let Some(pos) = gens.iter().position(|g| mu_monomial(g) > 0) else {
        return Err(MonoGammaError::NoSplittableGenerator { mu: mu_ideal(&p.ideal) });
    };
    let chosen = &gens[pos];
    let i = chosen.support().next().unwrap();
    let s = chosen.exp(i);
    let nvars = p.nvars();
    let power = Monomial::var_pow(i, s, nvars);
    let rest = chosen.div(&power).unwrap();
    let others: Vec<Monomial> = gens.iter().enumerate().filter(|(k, _)| *k != pos).map(|(_, g)| g.clone()).collect();

    let mut g0 = others.clone();
    g0.push(rest);
    let mut g1 = others;
    g1.push(power.clone());
    let child0 = ModulePresentation { shift: power.lcm(&p.shift), ideal: MonomialIdeal::new(nvars, g0), d: p.d };
    let child1 = ModulePresentation { shift: p.shift.clone(), ideal: MonomialIdeal::new(nvars, g1), d: p.d };
    Ok((child0, child1, SplitChoice { generator: chosen.clone(), variable: i, exponent: s }))
}

/// How a node of the recursion was resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NodeKind {
    /// `I = (1)`: the module vanishes.
    UnitIdeal,
    /// `m ∈ I`: the module vanishes.
    ShiftInIdeal,
    /// Only pure powers `x_k^{b_k}` remain; `a_k` are the shift exponents.
    BaseCase {
        /// Variables carrying a pure power, in increasing order.
        variables: Vec<usize>,
        /// Relabeling sending those variables to positions `0..n`.
        permutation: Vec<usize>,
        b: Vec<u32>,
        a: Vec<u32>,
    },
    Split {
        choice: SplitChoice,
        children: Box<[GammaTrace; 2]>,
    },
}

/// One node of the recursion tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaTrace {
    pub shift: Monomial,
    pub ideal: MonomialIdeal,
    pub d: u32,
    /// `#M(m, I)`.
    pub m_count: u64,
    pub mu: i64,
    /// Certified upper bound on the section dimension of this node.
    pub leaf_sum: u64,
    #[serde(flatten)]
    pub kind: NodeKind,
}

impl GammaTrace {
    /// The majorant `#M/d` as `(numerator, denominator)`.
    pub fn majorant(&self) -> (u64, u64) {
        (self.m_count, self.d as u64)
    }

    /// Whether `leaf_sum <= #M/d` holds at this node.
    pub fn within_majorant(&self) -> bool {
        self.leaf_sum * self.d as u64 <= self.m_count
    }

    pub fn depth(&self) -> usize {
        match &self.kind {
            NodeKind::Split { children, .. } => 1 + children.iter().map(GammaTrace::depth).max().unwrap(),
            _ => 0,
        }
    }

    /// Paths (`root`, `root.0`, `root.0.1`, ...) of nodes violating the
    /// majorant.
    pub fn majorant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_violations("root".to_string(), &mut out);
        out
    }

    fn collect_violations(&self, path: String, out: &mut Vec<String>) {
        if !self.within_majorant() {
            out.push(path.clone());
        }
        if let NodeKind::Split { children, .. } = &self.kind {
            for (k, c) in children.iter().enumerate() {
                c.collect_violations(format!("{path}.{k}"), out);
            }
        }
    }

    /// Every node with its path, in depth-first order.
    pub fn nodes(&self) -> Vec<(String, &GammaTrace)> {
        let mut out = Vec::new();
        let mut stack = vec![("root".to_string(), self)];
        while let Some((path, node)) = stack.pop() {
            if let NodeKind::Split { children, .. } = &node.kind {
                for k in (0..2).rev() {
                    stack.push((format!("{path}.{k}"), &children[k]));
                }
            }
            out.push((path, node));
        }
        out
    }
}

fn base_case(p: &ModulePresentation) -> (u64, NodeKind) {
    let r = p.r();
    let nvars = p.nvars();
    let variables: Vec<usize> = p.ideal.generators().iter().map(|g| g.support().next().unwrap()).collect::<Vec<_>>();
    let mut variables = variables;
    variables.sort_unstable();
    let mut permutation: Vec<usize> = variables.clone();
    permutation.extend((0..nvars).filter(|k| !variables.contains(k)));
    let b: Vec<u32> = variables
        .iter()
        .map(|&k| p.ideal.generators().iter().find(|g| g.exp(k) > 0).unwrap().exp(k))
        .collect();
    let a: Vec<u32> = variables.iter().map(|&k| p.shift.exp(k)).collect();
    let n = variables.len();
    let value = if n == r + 1 {
        0
    } else if n == r {
        b.iter().zip(&a).map(|(&b, &a)| (b - a) as u64).product()
    } else {
        1
    };
    (value, NodeKind::BaseCase { variables, permutation, b, a })
}

/// Run the recursion, returning the full trace; the bound is its
/// `leaf_sum`. Sibling subtrees are evaluated in parallel.
pub fn gamma_upper_bound(p: &ModulePresentation) -> GammaTrace {
    let m_count = enumerate_m(p).len() as u64;
    let mu = mu_ideal(&p.ideal);
    let node = |leaf_sum, kind| GammaTrace {
        shift: p.shift.clone(),
        ideal: p.ideal.clone(),
        d: p.d,
        m_count,
        mu,
        leaf_sum,
        kind,
    };
    if p.ideal.is_unit() {
        return node(0, NodeKind::UnitIdeal);
    }
    if p.ideal.contains(&p.shift) {
        return node(0, NodeKind::ShiftInIdeal);
    }
    if mu <= 0 {
        let (value, kind) = base_case(p);
        return node(value, kind);
    }
    let (c0, c1, choice) = split_step(p).expect("mu > 0 guarantees a splittable generator");
    let (t0, t1) = rayon::join(|| gamma_upper_bound(&c0), || gamma_upper_bound(&c1));
    node(t0.leaf_sum + t1.leaf_sum, NodeKind::Split { choice, children: Box::new([t0, t1]) })
}

/// The recursive bound for `Proj R/I` together with the ceiling `d^r`.
#[derive(Clone, Debug, Serialize)]
pub struct MonomialBound {
    pub bound: u64,
    pub d: u32,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub d_pow_r: BigUint,
    pub trace: GammaTrace,
}

/// Bound for a monomial ideal with `m = 1` and `d = max(deg I, 1)`.
pub fn gamma_bound_monomial(ideal: &MonomialIdeal) -> MonomialBound {
    let p = ModulePresentation::of_ideal(ideal);
    let trace = gamma_upper_bound(&p);
    let d_pow_r = num_traits::pow(BigUint::from(p.d), ideal.r());
    MonomialBound { bound: trace.leaf_sum, d: p.d, d_pow_r, trace }
}

/// `2^r (d^2/2 + d)^(r 2^(r-1))`, rounded up.
pub fn general_gamma_closed_form(d: u32, r: u32) -> Result<BigUint, TooLarge> {
    assert!(d >= 1 && r >= 1, "closed form needs d, r >= 1");
    if r > 40 {
        return Err(TooLarge { bits: u64::MAX, limit: bigint::MAX_EXACT_BITS });
    }
    let e = r as u64 * (1u64 << (r - 1));
    let base = BigUint::from(d) * BigUint::from(d) + BigUint::from(2 * d);
    let num = bigint::pow(&base, e)? << r;
    let den = bigint::pow(&BigUint::from(2u32), e)?;
    Ok(bigint::ceil_div(&num, &den))
}

/// Both routes for a general homogeneous ideal: the recursion on the actual
/// initial ideal, and the closed form in the input's `d` and `r`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneralBound {
    pub order: MonomialOrder,
    pub initial_ideal: MonomialIdeal,
    pub sharp: MonomialBound,
    pub input_d: u32,
    pub r: usize,
    /// `None` when the closed form is too large to write out exactly.
    #[serde(serialize_with = "crate::serde_util::opt_big_as_string")]
    pub closed_form: Option<BigUint>,
}

pub fn gamma_bound_general<F: Field>(
    ideal: &IdealPresentation<F>,
    order: MonomialOrder,
    config: &crate::groebner::GroebnerConfig,
) -> Result<GeneralBound, GroebnerError> {
    let init = initial_ideal(ideal, order, config)?;
    let sharp = gamma_bound_monomial(&init);
    let input_d = ideal.d().max(1);
    let r = ideal.r();
    let closed_form = if r == 0 { None } else { general_gamma_closed_form(input_d, r as u32).ok() };
    Ok(GeneralBound { order, initial_ideal: init, sharp, input_d, r, closed_form })
}

/// Oracle value, recursion bound and majorant comparison for one
/// presentation.
#[derive(Clone, Debug, Serialize)]
pub struct GammaAudit {
    pub presentation: String,
    pub exact: u64,
    pub leaf_sum: u64,
    pub majorant_num: u64,
    pub majorant_den: u64,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub d_pow_r: BigUint,
    /// Node paths where `leaf_sum > #M/d`.
    pub violations: Vec<String>,
    /// Whether the oracle value exceeds the root majorant `#M/d`.
    pub exact_exceeds_majorant: bool,
    /// Whether the oracle value exceeds `d^r`.
    pub exact_exceeds_d_pow_r: bool,
}

impl GammaAudit {
    /// The certified inequality `exact <= leaf_sum`.
    pub fn sound(&self) -> bool {
        self.exact <= self.leaf_sum
    }
}

pub fn audit_presentation(p: &ModulePresentation, config: &GammaConfig) -> Result<GammaAudit, CohomologyError> {
    let exact = gamma_exact_submodule(p, config)?.dim;
    let trace = gamma_upper_bound(p);
    let (num, den) = trace.majorant();
    let d_pow_r = num_traits::pow(BigUint::from(p.d), p.r());
    Ok(GammaAudit {
        presentation: p.to_string(),
        exact,
        leaf_sum: trace.leaf_sum,
        majorant_num: num,
        majorant_den: den,
        exact_exceeds_majorant: exact * den > num,
        exact_exceeds_d_pow_r: BigUint::from(exact) > d_pow_r,
        d_pow_r,
        violations: trace.majorant_violations(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::poly::parse_ideal;

    fn mono(text: &str, r: usize) -> MonomialIdeal {
        parse_ideal::<Fp>(text, r).unwrap().as_monomial_ideal().unwrap()
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu_monomial(&Monomial::var_pow(0, 3, 2)), 0);
        assert_eq!(mu_monomial(&Monomial::new(vec![1, 1, 1]).unwrap()), 2);
        assert_eq!(mu_monomial(&Monomial::one(3)), -1);
        assert_eq!(mu_ideal(&mono("x0^2\nx1*x2", 2)), 1);
        assert_eq!(mu_ideal(&MonomialIdeal::unit(3)), -1);
        assert_eq!(mu_ideal(&mono("x0\nx1", 2)), 0);
    }

    #[test]
    fn m_sets() {
        let one = Monomial::one(2);
        assert!(enumerate_m(&ModulePresentation::new(one.clone(), MonomialIdeal::unit(2), 3).unwrap()).is_empty());
        assert_eq!(enumerate_m(&ModulePresentation::new(one.clone(), MonomialIdeal::zero(2), 2).unwrap()).len(), 4);
        let p = ModulePresentation::new(one, mono("x0^2*x1", 1), 3).unwrap();
        assert_eq!(enumerate_m(&p).len(), 7);
    }

    #[test]
    fn split_example() {
        let p = ModulePresentation::new(Monomial::one(2), mono("x0^2*x1", 1), 3).unwrap();
        let (c0, c1, choice) = split_step(&p).unwrap();
        assert_eq!((choice.variable, choice.exponent), (0, 2));
        assert_eq!(c0.to_string(), "(x0^2, (x1), d=3)");
        assert_eq!(c1.to_string(), "(1, (x0^2), d=3)");
        assert_eq!(enumerate_m(&c0).len(), 1);
        assert_eq!(enumerate_m(&c1).len(), 6);
        assert_eq!((mu_ideal(c0.ideal()), mu_ideal(c1.ideal())), (0, 0));
        let pure = ModulePresentation::of_ideal(&mono("x0\nx1", 2));
        assert!(matches!(split_step(&pure), Err(MonoGammaError::NoSplittableGenerator { mu: 0 })));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(gamma_upper_bound(&ModulePresentation::of_ideal(&MonomialIdeal::unit(3))).leaf_sum, 0);
        let p = ModulePresentation::new(Monomial::one(3), mono("x0^2\nx1^3", 2), 3).unwrap();
        assert_eq!(gamma_upper_bound(&p).leaf_sum, 6);
        let p = ModulePresentation::new(Monomial::one(2), mono("x0^2*x1", 1), 3).unwrap();
        let trace = gamma_upper_bound(&p);
        assert_eq!(trace.leaf_sum, 3);
        let NodeKind::Split { children, .. } = &trace.kind else { panic!("expected a split") };
        assert_eq!((children[0].leaf_sum, children[1].leaf_sum), (1, 2));
    }

    #[test]
    fn monomial_and_general_bounds() {
        assert_eq!(gamma_bound_monomial(&mono("x0", 2)).bound, 1);
        let b = gamma_bound_monomial(&mono("x0^2\nx1^3", 2));
        assert_eq!((b.bound, b.d_pow_r.clone()), (6, BigUint::from(9u32)));
        assert_eq!(gamma_bound_monomial(&mono("x0\nx1\nx2", 2)).bound, 0);

        let i = parse_ideal::<Rational>("x0^2 - x1^2", 1).unwrap();
        let g = gamma_bound_general(&i, MonomialOrder::Lex, &Default::default()).unwrap();
        assert_eq!(g.initial_ideal.to_string(), "(x0^2)");
        assert_eq!(g.sharp.bound, 2);
        assert_eq!(general_gamma_closed_form(2, 2).unwrap(), BigUint::from(1024u32));
    }

    #[test]
    fn documented_majorant_instance() {
        let p = ModulePresentation::new(Monomial::var_pow(0, 2, 2), mono("x1", 1), 3).unwrap();
        let audit = audit_presentation(&p, &GammaConfig::default()).unwrap();
        assert_eq!(audit.exact, 1);
        assert_eq!((audit.majorant_num, audit.majorant_den), (1, 3));
        assert!(audit.exact_exceeds_majorant);
        assert_eq!(audit.violations, vec!["root".to_string()]);
        assert!(audit.sound());
    }
}
