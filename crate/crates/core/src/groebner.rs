//! Buchberger's algorithm, initial ideals, and Dubé's degree bound for the
//! generators of an initial ideal.
//!
//! Pairs are processed by the normal strategy (smallest lcm degree first,
//! ties broken by the canonical grevlex order on the lcm and then by pair
//! index), skipping pairs whose leading monomials are coprime.

use num_bigint::BigUint;
use thiserror::Error;

use crate::bigint::{self, TooLarge};
use crate::field::Field;
use crate::poly::{IdealPresentation, Monomial, MonomialIdeal, MonomialOrder, Polynomial};

pub use crate::poly::MonomialIdeal as InitialIdeal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("S-pair of degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { cap: u32, degree: u32 },
}

#[derive(Clone, Copy, Debug)]
pub struct GroebnerConfig {
    /// Hard cap on the degree of an S-pair lcm.
    pub degree_cap: u32,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { degree_cap: 64 }
    }
}

/// A reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    order: MonomialOrder,
    elements: Vec<Polynomial<F>>,
    leading: Vec<Monomial>,
    source: IdealPresentation<F>,
    sorted: Vec<Terms<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Monic, fully reduced elements sorted by descending leading monomial.
    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn source(&self) -> &IdealPresentation<F> {
        &self.source
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.source.nvars(), self.leading.clone())
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    /// Normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let nf = reduce_full(to_terms(f, self.order), &self.sorted, self.order);
        Polynomial::from_terms(f.nvars(), nf)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }
}

type Terms<F> = Vec<(Monomial, F)>;

fn to_terms<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> Terms<F> {
    let mut t: Terms<F> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

/// `a - c * mono * b`, both inputs sorted descending.
fn sub_scaled<F: Field>(a: &[(Monomial, F)], b: &[(Monomial, F)], mono: &Monomial, c: &F, order: MonomialOrder) -> Terms<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| (b[k].0.mul(mono), b[k].1.clone() * c.clone());
    let mut bj = if b.is_empty() { None } else { Some(shifted(0)) };
    while i < a.len() || bj.is_some() {
        match (a.get(i), bj.as_ref()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                std::cmp::Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((y.0.clone(), -y.1.clone()));
                    j += 1;
                    bj = (j < b.len()).then(|| shifted(j));
                }
                std::cmp::Ordering::Equal => {
                    let v = x.1.clone() - y.1.clone();
                    if !v.is_zero() {
                        out.push((x.0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bj = (j < b.len()).then(|| shifted(j));
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                out.push((y.0.clone(), -y.1.clone()));
                j += 1;
                bj = (j < b.len()).then(|| shifted(j));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `f` by monic `basis` elements.
fn reduce_full<F: Field>(mut f: Terms<F>, basis: &[Terms<F>], order: MonomialOrder) -> Terms<F> {
    let mut rem: Terms<F> = Vec::new();
    loop {
        let Some((lm, lc)) = f.first().cloned() else {
            break;
        };
        match basis.iter().find(|g| g[0].0.divides(&lm)) {
            Some(g) => {
                let q = lm.div(&g[0].0).unwrap();
                f = sub_scaled(&f, g, &q, &lc, order);
            }
            None => {
                rem.push((lm, lc));
                f.remove(0);
            }
        }
    }
    rem
}

fn make_monic<F: Field>(t: &mut Terms<F>) {
    if let Some((_, lc)) = t.first() {
        let inv = lc.inv().unwrap();
        for (_, c) in t.iter_mut() {
            *c = c.clone() * inv.clone();
        }
    }
}

/// Compute the reduced Gröbner basis of a homogeneous ideal.
pub fn buchberger<F: Field>(
    ideal: &IdealPresentation<F>,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let nvars = ideal.nvars();
    let mut g: Vec<Terms<F>> = Vec::new();
    for p in ideal.generators() {
        let mut t = to_terms(p, order);
        make_monic(&mut t);
        g.push(t);
    }

    let unit = |ideal: &IdealPresentation<F>| {
        let one = Polynomial::one(nvars);
        GroebnerBasis {
            order,
            sorted: vec![to_terms(&one, order)],
            elements: vec![one],
            leading: vec![Monomial::one(nvars)],
            source: ideal.clone(),
        }
    };
    if g.iter().any(|t| t[0].0.is_one()) {
        return Ok(unit(ideal));
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = g[a.0][0].0.lcm(&g[a.1][0].0);
                let lb = g[b.0][0].0.lcm(&g[b.1][0].0);
                la.degree()
                    .cmp(&lb.degree())
                    .then_with(|| la.cmp(&lb))
                    .then_with(|| a.cmp(b))
            })
            .unwrap();
        let (i, j) = pairs.remove(k);
        let (mi, mj) = (&g[i][0].0, &g[j][0].0);
        if mi.is_coprime(mj) {
            continue;
        }
        let lcm = mi.lcm(mj);
        if lcm.degree() > config.degree_cap {
            return Err(GroebnerError::DegreeCap { cap: config.degree_cap, degree: lcm.degree() });
        }
        let qi = lcm.div(mi).unwrap();
        let qj = lcm.div(mj).unwrap();
        let lhs: Terms<F> = g[i].iter().map(|(m, c)| (m.mul(&qi), c.clone())).collect();
        let s = sub_scaled(&lhs, &g[j], &qj, &F::one(), order);
        let mut h = reduce_full(s, &g, order);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_one() {
            return Ok(unit(ideal));
        }
        let new = g.len();
        g.push(h);
        for i in 0..new {
            pairs.push((i, new));
        }
    }

    // minimize
    g.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut kept: Vec<Terms<F>> = Vec::new();
    for t in g {
        if !kept.iter().any(|k| k[0].0.divides(&t[0].0)) {
            kept.push(t);
        }
    }
    // inter-reduce the tails
    let mut reduced: Vec<Terms<F>> = Vec::with_capacity(kept.len());
    for idx in 0..kept.len() {
        let others: Vec<Terms<F>> =
            kept.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, t)| t.clone()).collect();
        let mut t = kept[idx].clone();
        let head = t.remove(0);
        let mut tail = reduce_full(t, &others, order);
        tail.insert(0, head);
        reduced.push(tail);
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));

    let leading = reduced.iter().map(|t| t[0].0.clone()).collect();
    let elements = reduced.iter().map(|t| Polynomial::from_terms(nvars, t.clone())).collect();
    Ok(GroebnerBasis { order, elements, leading, source: ideal.clone(), sorted: reduced })
}

/// The initial ideal `in(I)` with respect to `order`.
pub fn initial_ideal<F: Field>(
    ideal: &IdealPresentation<F>,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<MonomialIdeal, GroebnerError> {
    if let Some(m) = ideal.as_monomial_ideal() {
        return Ok(m);
    }
    Ok(buchberger(ideal, order, config)?.initial_ideal())
}

impl<F: Field> IdealPresentation<F> {
    /// Standard monomials of degree `t` (grevlex), i.e. a basis of `(R/I)_t`.
    pub fn graded_piece_basis(&self, t: u32, config: &GroebnerConfig) -> Result<Vec<Monomial>, GroebnerError> {
        Ok(initial_ideal(self, MonomialOrder::GradedRevLex, config)?.graded_piece_basis(t))
    }
}

/// Dubé's bound `2 (d^2/2 + d)^(2^(r-1))`, rounded up, on the degrees of
/// minimal generators of any initial ideal of an ideal generated in degree
/// at most `d` in `r + 1` variables.
pub fn dube_bound(d: u32, r: u32) -> Result<BigUint, TooLarge> {
    assert!(d >= 1 && r >= 1, "dube_bound needs d, r >= 1");
    if r > 40 {
        return Err(TooLarge { bits: u64::MAX, limit: bigint::MAX_EXACT_BITS });
    }
    let e = 1u64 << (r - 1);
    let base = BigUint::from(d) * BigUint::from(d) + BigUint::from(2 * d);
    let num = bigint::pow(&base, e)? * 2u32;
    let den = bigint::pow(&BigUint::from(2u32), e)?;
    Ok(bigint::ceil_div(&num, &den))
}
