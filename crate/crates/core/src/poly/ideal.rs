use std::fmt;

use serde::{Serialize, Serializer};

use crate::field::Field;

use super::{Monomial, PolyError, Polynomial};

/// A homogeneous ideal given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation<F: Field> {
    nvars: usize,
    generators: Vec<Polynomial<F>>,
    d: u32,
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(nvars: usize, generators: Vec<Polynomial<F>>) -> Result<Self, PolyError> {
        if nvars == 0 {
            return Err(PolyError::NoVariables);
        }
        let mut d = 0;
        for (k, g) in generators.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(PolyError::DimensionMismatch { left: nvars, right: g.nvars() });
            }
            if g.is_zero() {
                return Err(PolyError::ZeroGenerator { line: k + 1 });
            }
            match g.homogeneous_degree() {
                Some(deg) => d = d.max(deg),
                None => {
                    return Err(PolyError::InhomogeneousGenerator {
                        line: k + 1,
                        text: g.to_string(),
                    })
                }
            }
        }
        Ok(IdealPresentation { nvars, generators, d })
    }

    /// The ideal generated by a monomial ideal's minimal generators.
    pub fn from_monomial_ideal(ideal: &MonomialIdeal) -> Self {
        let gens = ideal.generators().iter().cloned().map(Polynomial::monomial).collect();
        Self::new(ideal.nvars(), gens).expect("monomials are homogeneous")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn r(&self) -> usize {
        self.nvars - 1
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// Maximum generator degree (0 for the zero ideal).
    pub fn d(&self) -> u32 {
        self.d
    }

    /// `Some` when every generator is a single term.
    pub fn as_monomial_ideal(&self) -> Option<MonomialIdeal> {
        let mut monos = Vec::new();
        for g in &self.generators {
            if g.len() != 1 {
                return None;
            }
            monos.push(g.terms().next().unwrap().0.clone());
        }
        Some(MonomialIdeal::new(self.nvars, monos))
    }
}

impl<F: Field> fmt::Display for IdealPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// A monomial ideal stored by its minimal generators, sorted in descending
/// grevlex order. The unit ideal is `(1)`, the zero ideal has no generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Build from arbitrary monomial generators; non-minimal ones are removed.
    pub fn new(nvars: usize, generators: Vec<Monomial>) -> Self {
        assert!(nvars > 0);
        let mut gens: Vec<Monomial> = Vec::with_capacity(generators.len());
        let mut sorted = generators;
        // ascending degree so that divisors are seen first
        sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        sorted.dedup();
        for m in sorted {
            assert_eq!(m.nvars(), nvars, "monomial in wrong ring");
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        gens.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { nvars, gens }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn r(&self) -> usize {
        self.nvars - 1
    }

    /// Minimal generators in descending grevlex order.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Maximum degree of a minimal generator.
    pub fn d(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self + (extra)`.
    pub fn with_generator(&self, extra: Monomial) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.push(extra);
        MonomialIdeal::new(self.nvars, g)
    }

    /// Is every minimal generator a power of a single variable?
    pub fn is_pure_power(&self) -> bool {
        self.gens.iter().all(|g| g.support_size() == 1)
    }

    /// Basis of the degree-`t` piece of `R/I`, in lexicographically
    /// descending order.
    pub fn graded_piece_basis(&self, t: u32) -> Vec<Monomial> {
        Monomial::all_of_degree(self.nvars, t)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// Apply a variable permutation (variable `i` goes to `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.permute(perm)).collect())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal[r={}]{}", self.r(), self)
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        gens.serialize(s)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}
