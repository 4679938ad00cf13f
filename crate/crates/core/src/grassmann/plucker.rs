use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::GrassmannError;
use crate::field::{Field, Rational};
use crate::linalg;
use crate::poly::{IdealPresentation, Monomial, Polynomial};

/// `e_{a(0)} ∧ ... ∧ e_{a(n-1)}` for a strictly increasing tuple `a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PluckerVariable(Vec<usize>);

impl PluckerVariable {
    pub fn index(&self) -> &[usize] {
        &self.0
    }

    /// `z_0_2_3`.
    pub fn name(&self) -> String {
        let mut s = String::from("z");
        for i in &self.0 {
            s.push('_');
            s.push_str(&i.to_string());
        }
        s
    }
}

impl fmt::Display for PluckerVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Sort `tuple`, returning the sign of the sorting permutation and the
/// canonical variable, or `None` when an entry repeats.
pub fn canonicalize(tuple: &[usize]) -> Option<(i8, PluckerVariable)> {
    let mut v = tuple.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, PluckerVariable(v)))
}

/// The coordinate ring of `P(∧^n V)`: variables are the strictly increasing
/// `n`-tuples in lexicographic order.
#[derive(Clone, Debug)]
pub struct PluckerSpace {
    n: usize,
    dim_v: usize,
    vars: Vec<PluckerVariable>,
    lookup: HashMap<PluckerVariable, usize>,
}

impl PluckerSpace {
    pub fn new(n: usize, dim_v: usize) -> Result<Self, GrassmannError> {
        if n == 0 || n > dim_v {
            return Err(GrassmannError::InvalidParameters(format!("need 1 <= n <= dim V (got n = {n}, dim V = {dim_v})")));
        }
        let vars: Vec<PluckerVariable> = (0..dim_v).combinations(n).map(PluckerVariable).collect();
        let lookup = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(PluckerSpace { n, dim_v, vars, lookup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn variables(&self) -> &[PluckerVariable] {
        &self.vars
    }

    pub fn position(&self, v: &PluckerVariable) -> usize {
        self.lookup[v]
    }

    pub fn name(&self, i: usize) -> String {
        self.vars[i].name()
    }

    /// `± z_sorted(tuple)` as a polynomial, zero on repeats.
    pub fn tuple_polynomial(&self, tuple: &[usize]) -> Polynomial<Rational> {
        match canonicalize(tuple) {
            None => Polynomial::zero(self.len()),
            Some((s, v)) => {
                Polynomial::term(Monomial::var(self.position(&v), self.len()), Rational::from_i64(s as i64))
            }
        }
    }

    pub fn display(&self, p: &Polynomial<Rational>) -> String {
        p.display_with(|i| self.name(i)).to_string()
    }
}

/// A linear combination of Plücker variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PluckerLinearForm {
    terms: BTreeMap<PluckerVariable, Rational>,
}

impl PluckerLinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `z_tuple`, resolved to `± z_sorted` or zero.
    pub fn of_tuple(tuple: &[usize]) -> Self {
        let mut f = Self::zero();
        if let Some((s, v)) = canonicalize(tuple) {
            f.terms.insert(v, Rational::from_i64(s as i64));
        }
        f
    }

    pub fn terms(&self) -> &BTreeMap<PluckerVariable, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (v, a) in &other.terms {
            let s = self.terms.get(v).cloned().unwrap_or_else(Rational::zero) + a.clone() * c.clone();
            if s.is_zero() {
                self.terms.remove(v);
            } else {
                self.terms.insert(v.clone(), s);
            }
        }
    }

    pub fn eval(&self, space: &PluckerSpace, point: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (v, c)| acc + c.clone() * point[space.position(v)].clone())
    }

    pub fn to_polynomial(&self, space: &PluckerSpace) -> Polynomial<Rational> {
        Polynomial::from_terms(
            space.len(),
            self.terms.iter().map(|(v, c)| (Monomial::var(space.position(v), space.len()), c.clone())),
        )
    }
}

impl fmt::Display for PluckerLinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (v, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{a}*{v}")?;
            }
        }
        Ok(())
    }
}

/// Scale so the leading coefficient is 1, as a dedup key.
fn normalized(p: &Polynomial<Rational>) -> Polynomial<Rational> {
    match p.terms().last() {
        Some((_, c)) => p.scale(&c.inv().unwrap()),
        None => p.clone(),
    }
}

/// Quadratic Plücker relations from the shuffle identities
/// `Σ_k (-1)^k z_{I, j_k} z_{J \ j_k} = 0` for `|I| = n - 1`, `|J| = n + 1`,
/// deduplicated up to scalars and returned in a fixed order.
pub fn plucker_quadrics(space: &PluckerSpace) -> Vec<Polynomial<Rational>> {
    let (n, dim_v) = (space.n(), space.dim_v());
    if n + 1 > dim_v {
        return Vec::new();
    }
    let mut seen: BTreeSet<Vec<(Monomial, Rational)>> = BTreeSet::new();
    let mut out = Vec::new();
    for i_set in (0..dim_v).combinations(n - 1) {
        for j_set in (0..dim_v).combinations(n + 1) {
            let mut rel = Polynomial::zero(space.len());
            for k in 0..=n {
                let mut left = i_set.clone();
                left.push(j_set[k]);
                let right: Vec<usize> = j_set.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &x)| x).collect();
                let term = space.tuple_polynomial(&left).mul(&space.tuple_polynomial(&right));
                rel = if k % 2 == 0 { rel.add(&term) } else { rel.sub(&term) };
            }
            if rel.is_zero() {
                continue;
            }
            let key: Vec<(Monomial, Rational)> = normalized(&rel).terms().map(|(m, c)| (m.clone(), c.clone())).collect();
            if seen.insert(key) {
                out.push(rel);
            }
        }
    }
    out
}

/// Linear conditions for `U ⊂ M`: for each `u` and each strictly increasing
/// `(n+1)`-tuple `c`, the coefficient `Σ_j (-1)^j u_{c(j)} z_{c \ c(j)}` of
/// `u ∧ z`. Identically zero forms are dropped.
pub fn linear_conditions(u: &[Vec<Rational>], space: &PluckerSpace) -> Result<Vec<Polynomial<Rational>>, GrassmannError> {
    let dim_v = space.dim_v();
    if let Some(bad) = u.iter().find(|v| v.len() != dim_v) {
        return Err(GrassmannError::InvalidParameters(format!(
            "vector of length {} in a space of dimension {dim_v}",
            bad.len()
        )));
    }
    if linalg::rank(u) < u.len() {
        return Err(GrassmannError::DependentVectors);
    }
    let mut out = Vec::new();
    for vec in u {
        for c in (0..dim_v).combinations(space.n() + 1) {
            let mut form = Polynomial::zero(space.len());
            for j in 0..c.len() {
                let coeff = &vec[c[j]];
                if coeff.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = c.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, &x)| x).collect();
                let sign = Rational::from_i64(if j % 2 == 0 { 1 } else { -1 });
                form = form.add(&space.tuple_polynomial(&rest).scale(&(sign * coeff.clone())));
            }
            if !form.is_zero() {
                out.push(form);
            }
        }
    }
    Ok(out)
}

/// Coefficient vectors, in the basis `R_t` listed lexicographically
/// descending, of a basis of the degree-`t` piece of the ideal.
pub fn ideal_degree_piece(ideal: &IdealPresentation<Rational>, t: u32) -> Vec<Vec<Rational>> {
    let basis = Monomial::all_of_degree(ideal.nvars(), t);
    let pos: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in ideal.generators() {
        let Some(dg) = g.homogeneous_degree() else { continue };
        if dg > t {
            continue;
        }
        for mult in Monomial::all_of_degree(ideal.nvars(), t - dg) {
            let mut row = vec![Rational::zero(); basis.len()];
            for (m, c) in g.terms() {
                row[pos[&m.mul(&mult)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let rank = linalg::row_reduce(&mut rows);
    rows.truncate(rank);
    rows
}

/// A point of `P(∧^n V)` in the order of [`PluckerSpace::variables`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerPoint {
    pub n: usize,
    pub dim_v: usize,
    pub coords: Vec<Rational>,
}

impl PluckerPoint {
    /// The point of the span of `rows`, whose `n x n` minors are its
    /// coordinates; the first nonzero coordinate is scaled to 1.
    pub fn of_span(rows: &[Vec<Rational>], space: &PluckerSpace) -> Result<Self, GrassmannError> {
        if rows.len() != space.n() || linalg::rank(rows) != space.n() {
            return Err(GrassmannError::WrongDimension { expected: space.n(), found: linalg::rank(rows) });
        }
        let mut coords: Vec<Rational> = space
            .variables()
            .iter()
            .map(|v| {
                let minor: Vec<Vec<Rational>> =
                    rows.iter().map(|r| v.index().iter().map(|&c| r[c].clone()).collect()).collect();
                linalg::determinant(&minor)
            })
            .collect();
        let lead = coords.iter().find(|c| !c.is_zero()).cloned().expect("full rank span has a nonzero minor");
        let inv = lead.inv().unwrap();
        for c in &mut coords {
            *c = c.clone() * inv.clone();
        }
        Ok(PluckerPoint { n: space.n(), dim_v: space.dim_v(), coords })
    }

    /// The coordinate point of the span of the basis vectors in `support`.
    pub fn coordinate(support: &[usize], space: &PluckerSpace) -> Result<Self, GrassmannError> {
        let (_, v) = canonicalize(support)
            .filter(|(_, v)| v.index().len() == space.n() && v.index().iter().all(|&i| i < space.dim_v()))
            .ok_or_else(|| GrassmannError::InvalidParameters(format!("{support:?} is not an n-subset of basis indices")))?;
        let mut coords = vec![Rational::zero(); space.len()];
        coords[space.position(&v)] = Rational::one();
        Ok(PluckerPoint { n: space.n(), dim_v: space.dim_v(), coords })
    }
}

/// Plücker coordinates of the degree-`t` piece of the ideal of `Z`,
/// which must have dimension `n` when `n` is given.
pub fn plucker_point_of_subscheme(
    z: &IdealPresentation<Rational>,
    t: u32,
    n: Option<usize>,
) -> Result<(PluckerSpace, PluckerPoint), GrassmannError> {
    let rows = ideal_degree_piece(z, t);
    let dim_v = Monomial::all_of_degree(z.nvars(), t).len();
    if let Some(n) = n {
        if rows.len() != n {
            return Err(GrassmannError::WrongDimension { expected: n, found: rows.len() });
        }
    }
    if rows.is_empty() {
        return Err(GrassmannError::WrongDimension { expected: n.unwrap_or(1), found: 0 });
    }
    let space = PluckerSpace::new(rows.len(), dim_v)?;
    let point = PluckerPoint::of_span(&rows, &space)?;
    Ok((space, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_ideal;

    #[test]
    fn canonical_signs() {
        assert_eq!(canonicalize(&[2, 1]), Some((-1, PluckerVariable(vec![1, 2]))));
        assert_eq!(canonicalize(&[1, 1]), None);
        assert_eq!(canonicalize(&[2, 0, 1]), Some((1, PluckerVariable(vec![0, 1, 2]))));
        assert_eq!(PluckerVariable(vec![0, 2, 3]).name(), "z_0_2_3");
    }

    #[test]
    fn gr24_relation() {
        let space = PluckerSpace::new(2, 4).unwrap();
        let q = plucker_quadrics(&space);
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].terms().count(), 3);
        assert!(plucker_quadrics(&PluckerSpace::new(1, 3).unwrap()).is_empty());
        assert!(plucker_quadrics(&PluckerSpace::new(5, 6).unwrap()).is_empty());
    }

    #[test]
    fn linear_condition_example() {
        let space = PluckerSpace::new(1, 2).unwrap();
        let e0 = vec![Rational::one(), Rational::zero()];
        let c = linear_conditions(&[e0], &space).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(space.display(&c[0]), "z_1");
        assert!(linear_conditions(&[], &space).unwrap().is_empty());
    }

    #[test]
    fn point_of_hyperplane() {
        let z = parse_ideal::<Rational>("x0", 1).unwrap();
        let (_, p) = plucker_point_of_subscheme(&z, 1, Some(1)).unwrap();
        assert_eq!(p.coords, vec![Rational::one(), Rational::zero()]);
        assert!(matches!(plucker_point_of_subscheme(&z, 1, Some(2)), Err(GrassmannError::WrongDimension { .. })));
    }

    #[test]
    fn point_of_plane_point() {
        let z = parse_ideal::<Rational>("x1\nx2", 2).unwrap();
        let (space, p) = plucker_point_of_subscheme(&z, 2, Some(5)).unwrap();
        let nonzero: Vec<String> =
            p.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| space.name(i)).collect();
        // x0^2 is basis index 0; the ideal misses only it
        assert_eq!(nonzero, vec!["z_1_2_3_4_5"]);
    }
}
