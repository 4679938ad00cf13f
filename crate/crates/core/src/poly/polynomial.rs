use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::field::{split_sign, Field};

use super::{Monomial, MonomialOrder};

/// A sparse polynomial in `x0, ..., xr` with coefficients in `F`.
///
/// Terms are stored in a map keyed by [`Monomial`], whose `Ord` is graded
/// reverse lexicographic; iteration in reverse therefore yields the
/// canonical (descending grevlex) printing order. Zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
    homogeneity: OnceLock<Option<u32>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Self::from_map(nvars, BTreeMap::new())
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn monomial(m: Monomial) -> Self {
        let n = m.nvars();
        Self::from_terms(n, [(m, F::one())])
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let n = m.nvars();
        Self::from_terms(n, [(m, c)])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Self::monomial(Monomial::var(i, nvars))
    }

    /// Build from (monomial, coefficient) pairs, combining repeats and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(nvars: usize, terms: I) -> Self {
        let mut map: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial in wrong ring");
            add_term(&mut map, m, c);
        }
        Self::from_map(nvars, map)
    }

    fn from_map(nvars: usize, terms: BTreeMap<Monomial, F>) -> Self {
        Polynomial { nvars, terms, homogeneity: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (descending grevlex).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// `Some(degree)` when every term has the same degree. The zero
    /// polynomial reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        *self.homogeneity.get_or_init(|| {
            let mut degs = self.terms.keys().map(Monomial::degree);
            let first = degs.next()?;
            degs.all(|d| d == first).then_some(first)
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut map, m.clone(), c.clone());
        }
        Self::from_map(self.nvars, map)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut map = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut map, m.clone(), -c.clone());
        }
        Self::from_map(self.nvars, map)
    }

    pub fn neg(&self) -> Self {
        Self::from_map(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        )
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self::from_map(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect(),
        )
    }

    pub fn mul_term(&self, mono: &Monomial, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self::from_map(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone() * s.clone())).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                add_term(&mut map, a.mul(b), ca.clone() * cb.clone());
            }
        }
        Self::from_map(self.nvars, map)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide through by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Print with a custom variable renderer; used by exporters whose
    /// variables are not named `x_i`.
    pub fn display_with<'a, V>(&'a self, var_name: V) -> impl fmt::Display + 'a
    where
        V: Fn(usize) -> String + 'a,
    {
        PolyDisplay { poly: self, var_name }
    }
}

fn add_term<F: Field>(map: &mut BTreeMap<Monomial, F>, m: Monomial, c: F) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

struct PolyDisplay<'a, F: Field, V> {
    poly: &'a Polynomial<F>,
    var_name: V,
}

impl<F: Field, V: Fn(usize) -> String> fmt::Display for PolyDisplay<'_, F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let (neg, abs) = split_sign(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if abs != "1" || m.is_one() {
                factors.push(abs);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push((self.var_name)(i)),
                    _ => factors.push(format!("{}^{}", (self.var_name)(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|i| format!("x{i}")))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}
