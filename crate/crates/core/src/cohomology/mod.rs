//! Hilbert functions, series and polynomials, and exact dimensions of
//! global sections computed from graded Hom into the quotient.

mod gamma;
mod hilbert_poly;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::bigint::binomial_u64;
use crate::field::Field;
use crate::groebner::{initial_ideal, GroebnerConfig, GroebnerError};
use crate::poly::{IdealPresentation, Monomial, MonomialIdeal, MonomialOrder};

pub use gamma::{gamma_exact, gamma_exact_monomial, gamma_exact_submodule, GammaConfig, GammaExact};
pub use hilbert_poly::{HilbertPolynomial, ParseHilbertError};

/// Inclusion–exclusion is exponential in the generator count; beyond this
/// many minimal generators the series is refused.
pub const MAX_SERIES_GENERATORS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("{count} minimal generators exceed the limit of {limit} for inclusion-exclusion")]
    TooManyGenerators { count: usize, limit: usize },
    #[error("section dimension did not stabilize by t = {t_max} (last values {last:?})")]
    StabilizationCapExceeded { t_max: u32, last: Vec<(u32, u64)> },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `dim (R/I)_t` for a monomial ideal, by counting standard monomials.
pub fn hilbert_function_monomial(ideal: &MonomialIdeal, t: u32) -> u64 {
    if ideal.is_unit() {
        return 0;
    }
    Monomial::all_of_degree(ideal.nvars(), t).iter().filter(|m| !ideal.contains(m)).count() as u64
}

/// `dim (R/I)_t`, via the grevlex initial ideal for non-monomial input.
pub fn hilbert_function<F: Field>(
    ideal: &IdealPresentation<F>,
    t: u32,
    config: &GroebnerConfig,
) -> Result<u64, GroebnerError> {
    let init = initial_ideal(ideal, MonomialOrder::GradedRevLex, config)?;
    Ok(hilbert_function_monomial(&init, t))
}

/// Numerator `N(s)` of the Hilbert series `N(s) / (1 - s)^(r+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeriesNumerator {
    nvars: usize,
    coeffs: Vec<i64>,
}

impl HilbertSeriesNumerator {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Degree of `N`; zero for the zero numerator.
    pub fn degree(&self) -> u32 {
        self.coeffs.len().saturating_sub(1) as u32
    }

    /// `Σ c_j C(t - j + r, r)`.
    pub fn hilbert_function(&self, t: u32) -> BigInt {
        let r = self.nvars as u64 - 1;
        let mut acc = BigInt::from(0);
        for (j, &c) in self.coeffs.iter().enumerate() {
            if (j as u32) <= t {
                let b = binomial_u64(t as u64 - j as u64 + r, r);
                acc += BigInt::from(c) * BigInt::from(b);
            }
        }
        acc
    }

    /// The polynomial agreeing with the Hilbert function for `t >= degree`.
    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        let r = self.nvars as u32 - 1;
        let mut acc = HilbertPolynomial::zero();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let term = HilbertPolynomial::binomial(r as i64 - j as i64, r);
                acc = acc.add(&term.scale(&crate::field::Rational::from_i64(c)));
            }
        }
        acc
    }
}

impl fmt::Display for HilbertSeriesNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let a = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (j, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "s")?,
                (1, _) => write!(f, "{a}*s")?,
                (_, 1) => write!(f, "s^{j}")?,
                _ => write!(f, "{a}*s^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Hilbert series numerator by inclusion–exclusion over subsets of the
/// minimal generators: `Σ_S (-1)^|S| s^deg lcm(S)`.
pub fn hilbert_series_numerator(ideal: &MonomialIdeal) -> Result<HilbertSeriesNumerator, CohomologyError> {
    let gens = ideal.generators();
    if gens.len() > MAX_SERIES_GENERATORS {
        return Err(CohomologyError::TooManyGenerators { count: gens.len(), limit: MAX_SERIES_GENERATORS });
    }
    let mut coeffs: Vec<i64> = vec![0];
    fn walk(gens: &[Monomial], start: usize, lcm: &Monomial, sign: i64, coeffs: &mut Vec<i64>) {
        let deg = lcm.degree() as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign;
        for k in start..gens.len() {
            walk(gens, k + 1, &lcm.lcm(&gens[k]), -sign, coeffs);
        }
    }
    walk(gens, 0, &Monomial::one(ideal.nvars()), 1, &mut coeffs);
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    if coeffs == [0] {
        coeffs.clear();
    }
    let num = HilbertSeriesNumerator { nvars: ideal.nvars(), coeffs };
    let last = num.degree() + ideal.nvars() as u32 + 1;
    for t in 0..=last {
        assert_eq!(
            num.hilbert_function(t),
            BigInt::from(hilbert_function_monomial(ideal, t)),
            "series numerator disagrees with box count at t = {t}"
        );
    }
    Ok(num)
}

/// Hilbert polynomial of `R/I` for a monomial ideal.
pub fn hilbert_polynomial_monomial(ideal: &MonomialIdeal) -> Result<HilbertPolynomial, CohomologyError> {
    let num = hilbert_series_numerator(ideal)?;
    let hp = num.hilbert_polynomial();
    let start = num.degree() as i64 + 1;
    for t in start..start + 3 {
        assert_eq!(
            hp.eval_integer(t),
            Some(BigInt::from(hilbert_function_monomial(ideal, t as u32))),
            "Hilbert polynomial disagrees with the Hilbert function at t = {t}"
        );
    }
    Ok(hp)
}

/// Hilbert polynomial of `R/I`, computed from the grevlex initial ideal.
pub fn hilbert_polynomial<F: Field>(
    ideal: &IdealPresentation<F>,
    config: &GroebnerConfig,
) -> Result<HilbertPolynomial, CohomologyError> {
    let init = initial_ideal(ideal, MonomialOrder::GradedRevLex, config)?;
    hilbert_polynomial_monomial(&init)
}

/// Hilbert polynomial `P` of the ideal sheaf of the divisor `mH` on `X`,
/// inside `P^r`: `C(t+r, r) - HP_X(t) + HP_X(t-m)`.
pub fn ideal_hp_of_divisor(hp_x: &HilbertPolynomial, m: u32, r: usize) -> HilbertPolynomial {
    HilbertPolynomial::projective_space(r).sub(&quotient_hp_of_divisor(hp_x, m))
}

/// Hilbert polynomial `Q = HP_X(t) - HP_X(t-m)` of the divisor `mH` itself.
pub fn quotient_hp_of_divisor(hp_x: &HilbertPolynomial, m: u32) -> HilbertPolynomial {
    hp_x.sub(&hp_x.shift(-(m as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::poly::parse_ideal;

    fn mono(text: &str, r: usize) -> MonomialIdeal {
        parse_ideal::<Fp>(text, r).unwrap().as_monomial_ideal().unwrap()
    }

    #[test]
    fn hilbert_function_examples() {
        assert_eq!(hilbert_function_monomial(&MonomialIdeal::zero(3), 3), 10);
        assert_eq!(hilbert_function_monomial(&mono("x0", 2), 4), 5);
        assert_eq!(hilbert_function_monomial(&mono("x0*x1", 2), 2), 5);
        assert_eq!(hilbert_function_monomial(&mono("x0*x1", 1), 5), 2);
    }

    #[test]
    fn series_examples() {
        assert_eq!(hilbert_series_numerator(&mono("x0", 3)).unwrap().coeffs(), &[1, -1]);
        assert_eq!(hilbert_series_numerator(&mono("x0^2\nx1^3", 2)).unwrap().coeffs(), &[1, 0, -1, -1, 0, 1]);
        let n = hilbert_series_numerator(&mono("x0*x1\nx1*x2", 2)).unwrap();
        assert_eq!(n.coeffs(), &[1, 0, -2, 1]);
        assert_eq!(n.to_string(), "1 - 2*s^2 + s^3");
        assert_eq!(hilbert_series_numerator(&MonomialIdeal::unit(3)).unwrap().coeffs(), &[] as &[i64]);
    }

    #[test]
    fn too_many_generators() {
        let gens: Vec<Monomial> = Monomial::all_of_degree(3, 5);
        let ideal = MonomialIdeal::new(3, gens);
        assert!(matches!(hilbert_series_numerator(&ideal), Err(CohomologyError::TooManyGenerators { .. })));
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(hilbert_polynomial_monomial(&MonomialIdeal::zero(3)).unwrap(), HilbertPolynomial::projective_space(2));
        assert_eq!(hilbert_polynomial_monomial(&mono("x0", 2)).unwrap().to_string(), "t + 1");
        assert_eq!(hilbert_polynomial_monomial(&mono("x0*x1", 2)).unwrap().to_string(), "2*t + 1");
        let cubic = parse_ideal::<Fp>("x0*x2 - x1^2\nx1*x3 - x2^2\nx0*x3 - x1*x2", 3).unwrap();
        assert_eq!(hilbert_polynomial(&cubic, &GroebnerConfig::default()).unwrap().to_string(), "3*t + 1");
    }

    #[test]
    fn divisor_polynomials() {
        let plane = HilbertPolynomial::projective_space(2);
        assert_eq!(quotient_hp_of_divisor(&plane, 1).to_string(), "t + 1");
        let conic: HilbertPolynomial = "2t+1".parse().unwrap();
        assert_eq!(quotient_hp_of_divisor(&conic, 2).to_string(), "4");
        let p = ideal_hp_of_divisor(&conic, 2, 2);
        assert_eq!(p.add(&HilbertPolynomial::constant(4)), plane);
    }
}
