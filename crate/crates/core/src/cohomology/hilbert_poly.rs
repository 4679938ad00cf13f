use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{Field, Rational};

/// A univariate polynomial in `t` with rational coefficients, used for
/// Hilbert polynomials `P`, `Q` and their binomial decompositions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HilbertPolynomial {
    /// Power-basis coefficients, constant term first, no trailing zeros.
    coeffs: Vec<Rational>,
}

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![q(c)])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![q(0), q(1)])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }

    /// `C(t + shift, k)` as a polynomial in `t`.
    pub fn binomial(shift: i64, k: u32) -> Self {
        let mut acc = Self::constant(1);
        let mut fact = BigInt::one();
        for i in 0..k as i64 {
            acc = acc.mul(&Self::from_coeffs(vec![q(shift - i), q(1)]));
            fact *= i + 1;
        }
        acc.scale(&Rational::new(BigInt::one(), fact))
    }

    /// `C(t + r, r)`, the Hilbert polynomial of projective r-space.
    pub fn projective_space(r: usize) -> Self {
        Self::binomial(r as i64, r as u32)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &BigInt) -> Rational {
        let t = Rational::from_bigint(t);
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn eval_i64(&self, t: i64) -> Rational {
        self.eval(&BigInt::from(t))
    }

    /// Value at `t` when it is an integer.
    pub fn eval_integer(&self, t: i64) -> Option<BigInt> {
        self.eval_i64(t).as_integer()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::from_coeffs((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    /// `P(t + s)`.
    pub fn shift(&self, s: i64) -> Self {
        let lin = Self::from_coeffs(vec![q(s), q(1)]);
        self.compose(&lin)
    }

    /// `P(g(t))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::from_coeffs(vec![c.clone()])))
    }

    /// `C(P(t), k)`, the binomial coefficient with polynomial top.
    pub fn choose(&self, k: u32) -> Self {
        let mut acc = Self::constant(1);
        let mut fact = BigInt::one();
        for i in 0..k as i64 {
            acc = acc.mul(&self.sub(&Self::constant(i)));
            fact *= i + 1;
        }
        acc.scale(&Rational::new(BigInt::one(), fact))
    }

    /// Interpolating polynomial through `(t, value)` pairs with distinct `t`.
    pub fn interpolate(points: &[(i64, Rational)]) -> Self {
        let mut acc = Self::zero();
        for (i, (ti, vi)) in points.iter().enumerate() {
            let mut basis = Self::constant(1);
            let mut denom = Rational::one();
            for (j, (tj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Self::from_coeffs(vec![q(-tj), q(1)]));
                    denom = denom * q(ti - tj);
                }
            }
            acc = acc.add(&basis.scale(&(vi.clone() / denom)));
        }
        acc
    }

    /// Coefficients `c_j` with `P(t) = Σ c_j C(t + j, j)`.
    pub fn binomial_coefficients(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut rest = self.clone();
        let mut out = vec![Rational::zero(); deg + 1];
        for j in (0..=deg).rev() {
            let basis = Self::binomial(j as i64, j as u32);
            let c = rest.coeffs.get(j).cloned().unwrap_or_else(Rational::zero) / basis.leading_coefficient();
            rest = rest.sub(&basis.scale(&c));
            out[j] = c;
        }
        out
    }

    /// Whether every value on `range` is an integer.
    pub fn is_integer_valued_on(&self, range: std::ops::RangeInclusive<i64>) -> bool {
        range.into_iter().all(|t| self.eval_integer(t).is_some())
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse polynomial in t at column {column}: {message}")]
pub struct ParseHilbertError {
    pub column: usize,
    pub message: String,
}

/// Accepts expressions in `t` with `+ - * ^`, parentheses, rational
/// literals such as `3/2`, implicit products like `2t`, and binomials
/// `C(expr, k)`.
impl FromStr for HilbertPolynomial {
    type Err = ParseHilbertError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TParser { chars: s.chars().collect(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct TParser {
    chars: Vec<char>,
    pos: usize,
}

impl TParser {
    fn err(&self, m: &str) -> ParseHilbertError {
        ParseHilbertError { column: self.pos + 1, message: m.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<HilbertPolynomial, ParseHilbertError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<HilbertPolynomial, ParseHilbertError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if matches!(self.peek(), Some('t' | '(' | 'C')) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<HilbertPolynomial, ParseHilbertError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<HilbertPolynomial, ParseHilbertError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64, ParseHilbertError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a non-negative integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<HilbertPolynomial, ParseHilbertError> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(HilbertPolynomial::t())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some('C') => {
                self.pos += 1;
                if !self.eat('(') {
                    return Err(self.err("expected `(` after C"));
                }
                let top = self.expr()?;
                if !self.eat(',') {
                    return Err(self.err("expected `,` in C(top, k)"));
                }
                let k = self.uint()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(top.choose(k as u32))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let mut v = Rational::from_bigint(&BigInt::from(n));
                if self.eat('/') {
                    let d = self.uint()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    v = v / Rational::from_bigint(&BigInt::from(d));
                }
                Ok(HilbertPolynomial::from_coeffs(vec![v]))
            }
            _ => Err(self.err("expected a number, `t`, `(` or `C(`")),
        }
    }
}

impl serde::Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
