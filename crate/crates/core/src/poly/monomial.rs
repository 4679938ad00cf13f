use std::cmp::Ordering;
use std::fmt;

use super::PolyError;

/// A monomial `x0^e0 * x1^e1 * ... * xr^er` in `r + 1` variables.
///
/// The derived ordering is *not* used; `Ord` is graded reverse
/// lexicographic, which is also the canonical storage order of
/// [`Polynomial`](super::Polynomial) terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self, PolyError> {
        if exps.is_empty() {
            return Err(PolyError::NoVariables);
        }
        Ok(Monomial { exps })
    }

    pub(crate) fn from_vec(exps: Vec<u32>) -> Self {
        debug_assert!(!exps.is_empty());
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::from_vec(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Monomial::var_pow(i, 1, nvars)
    }

    pub fn var_pow(i: usize, e: u32, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial::from_vec(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// The ambient projective dimension `r`.
    pub fn r(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Number of variables that divide this monomial.
    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_vec(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial::from_vec(
                self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_vec(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_vec(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Multiply by `x_i`.
    pub(crate) fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial::from_vec(exps)
    }

    /// Divide by `x_i`, if possible.
    pub(crate) fn over_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial::from_vec(exps))
    }

    /// Permute variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut exps = vec![0; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Monomial::from_vec(exps)
    }

    /// All monomials of degree `t` in `nvars` variables, in lexicographically
    /// descending order (`x0^t` first).
    pub fn all_of_degree(nvars: usize, t: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill_degree(&mut cur, 0, t, &mut out);
        out
    }
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(Monomial::from_vec(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill_degree(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps.cmp(&b.exps)
}

pub(crate) fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| lex(a, b))
}

pub(crate) fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exps.iter().zip(&b.exps).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        a.exps.len().cmp(&b.exps.len())
    })
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn empty_exponent_vector_rejected() {
        assert!(matches!(Monomial::new(vec![]), Err(PolyError::NoVariables)));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 1, 3]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), m(&[2, 1, 3]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert_eq!(a.lcm(&b).div(&a), Some(m(&[0, 0, 3])));
        assert_eq!(a.div(&b), None);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
        let d2 = Monomial::all_of_degree(3, 2);
        assert_eq!(d2[0], m(&[2, 0, 0]));
        assert_eq!(d2[5], m(&[0, 0, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(m(&[2, 0, 1]).to_string(), "x0^2*x2");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }
}
