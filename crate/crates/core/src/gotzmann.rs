//! Gotzmann numbers from the binomial decomposition of a Hilbert
//! polynomial, Hoa's majorant, and the `(n, m)` parameters feeding the
//! Picard/Hilbert-scheme comparison.

use num_bigint::BigUint;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::bigint::{self, TooLarge};
use crate::cohomology::HilbertPolynomial;

/// Greedy extraction stops with an error after this many terms.
pub const MAX_DECOMPOSITION_STEPS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GotzmannError {
    #[error("not the Hilbert polynomial of a quotient: after {step} terms the remainder is {remainder}")]
    NotAdmissible { step: usize, remainder: String },
    #[error("decomposition exceeded {cap} terms")]
    StepCap { cap: usize },
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

/// `Q(t) = Σ_{i=1}^{s} C(t + a_i - i + 1, a_i)` with `a_1 >= a_2 >= ... >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GotzmannDecomposition {
    pub a: Vec<u32>,
}

impl GotzmannDecomposition {
    /// The Gotzmann number: the number of terms.
    pub fn s(&self) -> usize {
        self.a.len()
    }

    pub fn reconstruct(&self) -> HilbertPolynomial {
        self.a.iter().enumerate().fold(HilbertPolynomial::zero(), |acc, (k, &a)| {
            acc.add(&HilbertPolynomial::binomial(a as i64 - k as i64, a))
        })
    }

    /// Run-length form, e.g. `[(1, 2), (0, 3)]` for `a = (1, 1, 0, 0, 0)`.
    pub fn runs(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &a in &self.a {
            match out.last_mut() {
                Some((v, c)) if *v == a => *c += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }
}

/// Decompose the Hilbert polynomial `Q` of a quotient `R/I`.
///
/// At each step `a_i` is the degree of the remainder; a non-positive
/// leading coefficient means no admissible decomposition exists.
pub fn gotzmann_decompose(q: &HilbertPolynomial) -> Result<GotzmannDecomposition, GotzmannError> {
    let mut rest = q.clone();
    let mut a: Vec<u32> = Vec::new();
    while let Some(deg) = rest.degree() {
        if !rest.leading_coefficient().is_positive() || a.last().is_some_and(|&prev| (deg as u32) > prev) {
            return Err(GotzmannError::NotAdmissible { step: a.len(), remainder: rest.to_string() });
        }
        if a.len() == MAX_DECOMPOSITION_STEPS {
            return Err(GotzmannError::StepCap { cap: MAX_DECOMPOSITION_STEPS });
        }
        let ai = deg as u32;
        let i = a.len() as i64 + 1;
        rest = rest.sub(&HilbertPolynomial::binomial(ai as i64 - i + 1, ai));
        a.push(ai);
    }
    Ok(GotzmannDecomposition { a })
}

/// Decompose starting from the ideal's Hilbert polynomial `P`, via
/// `Q = C(t + r, r) - P`.
pub fn gotzmann_decompose_ideal(p: &HilbertPolynomial, r: usize) -> Result<GotzmannDecomposition, GotzmannError> {
    gotzmann_decompose(&HilbertPolynomial::projective_space(r).sub(p))
}

/// Hoa's bound `(3/2 d^c + d)^(b 2^(b-1))`, rounded up, on the Gotzmann
/// number of an ideal generated in degree at most `d` with Krull dimension
/// `b` and codimension `c`.
pub fn hoa_bound(d: u32, b: u32, c: u32) -> Result<BigUint, GotzmannError> {
    if d < 2 || b < 1 || c < 1 {
        return Err(GotzmannError::OutOfRange(format!("need d >= 2, b >= 1, c >= 1 (got {d}, {b}, {c})")));
    }
    let (num, den) = hoa_fraction(&BigUint::from(d), b, c)?;
    Ok(bigint::ceil_div(&num, &den))
}

/// `(3 d^c + 2 d)^E` and `2^E` with `E = b 2^(b-1)`.
pub(crate) fn hoa_fraction(d: &BigUint, b: u32, c: u32) -> Result<(BigUint, BigUint), TooLarge> {
    if b > 40 {
        return Err(TooLarge { bits: u64::MAX, limit: bigint::MAX_EXACT_BITS });
    }
    let e = b as u64 * (1u64 << (b - 1));
    let base = bigint::pow(d, c as u64)? * 3u32 + d * 2u32;
    Ok((bigint::pow(&base, e)?, bigint::pow(&BigUint::from(2u32), e)?))
}

/// How the codimension enters the parameter choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodimMode {
    Given(u32),
    /// Use the uniform choice `n = dr`, `m = (dr)^(r^2 2^(r-1))`.
    Majorize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterChoice {
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub n: BigUint,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub m: BigUint,
}

/// Parameters `n >= (d-1) codim X` and `m >= max(φ(nH), φ(X))`.
///
/// With a given codimension, `m` is the largest Hoa bound over Krull
/// dimensions `1..=r` for data of degree `max(d, n, 2)`.
pub fn embedding_parameters(d: u32, r: u32, mode: CodimMode) -> Result<ParameterChoice, GotzmannError> {
    if d < 2 || r < 3 {
        return Err(GotzmannError::OutOfRange(format!("need d >= 2 and r >= 3 (got d = {d}, r = {r})")));
    }
    match mode {
        CodimMode::Majorize => {
            let dr = BigUint::from(d) * r;
            let e = (r as u64).pow(2) * (1u64 << (r - 1));
            Ok(ParameterChoice { m: bigint::pow(&dr, e)?, n: dr })
        }
        CodimMode::Given(codim) => {
            if codim > r {
                return Err(GotzmannError::OutOfRange(format!("codimension {codim} exceeds r = {r}")));
            }
            let n = (d - 1) * codim;
            let deg = d.max(n).max(2);
            let mut m = BigUint::from(0u32);
            for b in 1..=r {
                m = m.max(hoa_bound(deg, b, r + 1 - b)?);
            }
            Ok(ParameterChoice { n: BigUint::from(n), m })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(s: &str) -> HilbertPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(gotzmann_decompose(&hp("t+1")).unwrap().a, vec![1]);
        assert_eq!(gotzmann_decompose(&hp("2t+1")).unwrap().a, vec![1, 1]);
        assert_eq!(gotzmann_decompose(&hp("3")).unwrap().a, vec![0, 0, 0]);
        let cubic = gotzmann_decompose(&hp("3t+1")).unwrap();
        assert_eq!(cubic.a, vec![1, 1, 1, 0]);
        assert_eq!(cubic.runs(), vec![(1, 3), (0, 1)]);
        assert_eq!(cubic.reconstruct(), hp("3t+1"));
        assert_eq!(gotzmann_decompose(&HilbertPolynomial::zero()).unwrap().s(), 0);
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(matches!(gotzmann_decompose(&hp("-1")), Err(GotzmannError::NotAdmissible { .. })));
        assert!(matches!(gotzmann_decompose(&hp("1/2")), Err(GotzmannError::NotAdmissible { .. })));
        assert!(matches!(gotzmann_decompose(&hp("1/2 t")), Err(GotzmannError::NotAdmissible { .. })));
    }

    #[test]
    fn ideal_entry_point() {
        let p = HilbertPolynomial::projective_space(2).sub(&hp("2t+1"));
        assert_eq!(gotzmann_decompose_ideal(&p, 2).unwrap().s(), 2);
    }

    #[test]
    fn hoa_values() {
        assert_eq!(hoa_bound(2, 2, 1).unwrap(), BigUint::from(625u32));
        assert_eq!(hoa_bound(2, 1, 2).unwrap(), BigUint::from(8u32));
        assert_eq!(hoa_bound(3, 2, 1).unwrap(), BigUint::from(3165u32));
        assert!(hoa_bound(1, 1, 1).is_err());
    }

    #[test]
    fn parameters() {
        let p = embedding_parameters(2, 3, CodimMode::Majorize).unwrap();
        assert_eq!(p.n, BigUint::from(6u32));
        assert_eq!(p.m, num_traits::pow(BigUint::from(6u32), 36));
        let p = embedding_parameters(2, 3, CodimMode::Given(1)).unwrap();
        assert_eq!(p.n, BigUint::from(1u32));
        assert_eq!(p.m, (1..=3).map(|b| hoa_bound(2, b, 4 - b).unwrap()).max().unwrap());
    }
}
