use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::TowerError;
use crate::bigint;

/// Exact backing is kept while the value fits in this many bits.
pub const EXACT_BITS: u64 = 1 << 17;

/// Two tops at the same height closer than this are incomparable.
pub const COMPARE_TOLERANCE: f64 = 1e-9;

/// Largest accepted accumulated top-level relative error.
pub const MAX_RELATIVE_ERROR: f64 = 1e-9;

/// Rounding allowance charged per floating-point operation.
const STEP_ERROR: f64 = 8.0 * f64::EPSILON;

/// The value `exp2^h(x)`: `exp2` applied `h` times to `x`.
///
/// Normalized so that either `h = 0` and `0 <= x < 2`, or `h >= 1` and
/// `1 <= x < 2`; the pair `(h, x)` is then unique and ordered
/// lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerNumber {
    height: u32,
    top: f64,
    exact: Option<BigUint>,
    error: f64,
}

/// Outcome of comparing two tower numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerOrdering {
    Less,
    Equal,
    Greater,
    /// Equal heights and tops within [`COMPARE_TOLERANCE`].
    Indeterminate,
}

impl TowerOrdering {
    pub fn reverse(self) -> Self {
        match self {
            TowerOrdering::Less => TowerOrdering::Greater,
            TowerOrdering::Greater => TowerOrdering::Less,
            o => o,
        }
    }

    fn from_ord(o: Ordering) -> Self {
        match o {
            Ordering::Less => TowerOrdering::Less,
            Ordering::Equal => TowerOrdering::Equal,
            Ordering::Greater => TowerOrdering::Greater,
        }
    }
}

fn normalize(mut height: u32, mut top: f64) -> (u32, f64) {
    while top >= 2.0 {
        top = top.log2();
        height += 1;
    }
    while height > 0 && top < 1.0 {
        top = top.exp2();
        height -= 1;
    }
    (height, top)
}

fn keep_exact(v: BigUint) -> Option<BigUint> {
    (v.bits() <= EXACT_BITS).then_some(v)
}

impl TowerNumber {
    fn build(height: u32, top: f64, exact: Option<BigUint>, error: f64) -> Result<Self, TowerError> {
        if error > MAX_RELATIVE_ERROR {
            return Err(TowerError::PrecisionLoss { bound: error });
        }
        let (height, top) = normalize(height, top);
        Ok(TowerNumber { height, top, exact, error })
    }

    pub fn zero() -> Self {
        TowerNumber { height: 0, top: 0.0, exact: Some(BigUint::zero()), error: 0.0 }
    }

    pub fn from_f64(v: f64) -> Result<Self, TowerError> {
        if !v.is_finite() || v < 0.0 {
            return Err(TowerError::InvalidValue(v));
        }
        let exact = (v.fract() == 0.0 && v < 2f64.powi(53)).then(|| BigUint::from(v as u64));
        Self::build(0, v, exact, 0.0)
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_biguint(&BigUint::from(v))
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        let exact = keep_exact(v.clone());
        if v.bits() <= 53 {
            let (h, x) = normalize(0, v.to_f64().unwrap());
            return TowerNumber { height: h, top: x, exact, error: 0.0 };
        }
        let (h, x) = normalize(1, bigint::log2(v));
        TowerNumber { height: h, top: x, exact, error: STEP_ERROR }
    }

    /// `exp2^height(top)` for an arbitrary (not necessarily normalized) pair.
    pub fn from_tower(height: u32, top: f64) -> Result<Self, TowerError> {
        if !top.is_finite() || top < 0.0 {
            return Err(TowerError::InvalidValue(top));
        }
        Self::build(height, top, None, if height == 0 { 0.0 } else { STEP_ERROR })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn top(&self) -> f64 {
        self.top
    }

    pub fn exact(&self) -> Option<&BigUint> {
        self.exact.as_ref()
    }

    /// Accumulated relative error bound on the top.
    pub fn error_bound(&self) -> f64 {
        self.error
    }

    pub fn is_zero(&self) -> bool {
        self.height == 0 && self.top == 0.0
    }

    /// The value as an `f64`, if finite.
    pub fn to_f64(&self) -> Option<f64> {
        let mut v = self.top;
        for _ in 0..self.height {
            v = v.exp2();
            if !v.is_finite() {
                return None;
            }
        }
        Some(v)
    }

    /// Drop the exact backing, leaving only the tower form.
    pub fn without_exact(&self) -> Self {
        TowerNumber { exact: None, ..self.clone() }
    }

    pub fn exp2(&self) -> Result<Self, TowerError> {
        let exact = match &self.exact {
            Some(e) if *e <= BigUint::from(EXACT_BITS) => Some(BigUint::from(1u32) << e.to_u64().unwrap()),
            _ => None,
        };
        let error = self.error + STEP_ERROR;
        if self.height == 0 {
            return Self::build(0, self.top.exp2(), exact, error);
        }
        Self::build(self.height + 1, self.top, exact, error)
    }

    pub fn log2(&self) -> Result<Self, TowerError> {
        if self.height == 0 && self.top < 1.0 {
            return Err(TowerError::LogOfSmallValue { value: self.top });
        }
        let exact = self.exact.as_ref().and_then(|e| {
            let bits = e.bits();
            (bits > 0 && e.trailing_zeros() == Some(bits - 1)).then(|| BigUint::from(bits - 1))
        });
        if self.height == 0 {
            return Self::build(0, self.top.log2(), exact, self.error + STEP_ERROR);
        }
        Self::build(self.height - 1, self.top, exact, self.error)
    }

    /// Signed `log2` when it fits an `f64`; `Err(tower)` otherwise.
    fn log2_parts(&self) -> Result<Result<f64, TowerNumber>, TowerError> {
        if let Some(v) = self.to_f64() {
            return Ok(Ok(v.log2()));
        }
        let l = self.log2()?;
        Ok(match l.to_f64() {
            Some(v) => Ok(v),
            None => Err(l),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, TowerError> {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if let Some(e) = keep_exact(a + b) {
                return Ok(Self::from_biguint(&e));
            }
        }
        let error = self.error.max(other.error) + STEP_ERROR;
        if let (Some(a), Some(b)) = (self.to_f64(), other.to_f64()) {
            if (a + b).is_finite() {
                return Self::build(0, a + b, None, error);
            }
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (big, small) = if self.compare_tower(other) == TowerOrdering::Less { (other, self) } else { (self, other) };
        let lb = big.log2_parts()?;
        let ls = small.log2_parts()?;
        match (lb, ls) {
            (Ok(lb), Ok(ls)) => {
                let l = lb + (ls - lb).exp2().ln_1p() / std::f64::consts::LN_2;
                Self::build(1, l, None, error)
            }
            // log2 of the larger term exceeds 2^1024, so adding at most 1
            // to it moves the top by far less than the rounding allowance
            (Err(lb), _) => Self::build(lb.height + 1, lb.top, None, error),
            (Ok(_), Err(_)) => unreachable!("the smaller addend has the smaller logarithm"),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, TowerError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if a.bits() + b.bits() <= EXACT_BITS {
                return Ok(Self::from_biguint(&(a * b)));
            }
        }
        let error = self.error.max(other.error) + STEP_ERROR;
        if let (Some(a), Some(b)) = (self.to_f64(), other.to_f64()) {
            if (a * b).is_finite() {
                return Self::build(0, a * b, None, error);
            }
        }
        let log = match (self.log2_parts()?, other.log2_parts()?) {
            (Ok(a), Ok(b)) => Self::build(0, (a + b).max(0.0), None, error)?,
            (Err(big), Ok(f)) | (Ok(f), Err(big)) => {
                if f >= 0.0 {
                    big.add(&Self::from_f64(f)?)?
                } else {
                    big
                }
            }
            (Err(a), Err(b)) => a.add(&b)?,
        };
        log.exp2()
    }

    /// `self^exponent`.
    pub fn pow(&self, exponent: &Self) -> Result<Self, TowerError> {
        if let (Some(b), Some(e)) = (&self.exact, exponent.exact.as_ref().and_then(|e| e.to_u64())) {
            if (b.bits() as f64) * (e as f64) <= EXACT_BITS as f64 {
                return Ok(Self::from_biguint(&num_traits::pow(b.clone(), e as usize)));
            }
        }
        if exponent.is_zero() {
            return Ok(Self::from_u64(1));
        }
        match self.to_f64() {
            Some(v) if v < 1.0 => {
                let e = exponent.to_f64().unwrap_or(f64::INFINITY);
                Self::build(0, v.powf(e), None, self.error + STEP_ERROR)
            }
            _ => exponent.mul(&self.log2()?)?.exp2(),
        }
    }

    /// Multiply by a non-negative float.
    pub fn scale(&self, c: f64) -> Result<Self, TowerError> {
        self.mul(&Self::from_f64(c)?)
    }

    /// Comparison using the tower form only, ignoring exact backing.
    pub fn compare_tower(&self, other: &Self) -> TowerOrdering {
        match self.height.cmp(&other.height) {
            Ordering::Equal => {
                if (self.top - other.top).abs() < COMPARE_TOLERANCE {
                    TowerOrdering::Indeterminate
                } else {
                    TowerOrdering::from_ord(self.top.partial_cmp(&other.top).unwrap())
                }
            }
            o => TowerOrdering::from_ord(o),
        }
    }

    /// Exact when both sides carry exact values, tower form otherwise.
    pub fn compare(&self, other: &Self) -> TowerOrdering {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return TowerOrdering::from_ord(a.cmp(b));
        }
        self.compare_tower(other)
    }

    /// Height and top for display: the top is raised while `2^top <= 64`,
    /// so `exp2^5(15.5098)` stays in that shape.
    pub fn display_form(&self) -> (u32, f64) {
        let (mut h, mut x) = (self.height, self.top);
        while h > 0 && x.exp2() <= 64.0 {
            x = x.exp2();
            h -= 1;
        }
        (h, x)
    }

    /// `2^2^...^x` text, or the integer itself when exact and short.
    pub fn render(&self) -> String {
        if let Some(e) = &self.exact {
            if bigint::decimal_digits(e) <= 30 {
                return e.to_string();
            }
        }
        let (h, x) = self.display_form();
        let mut s = "2^".repeat(h as usize);
        s.push_str(&format!("{x:.4}"));
        s
    }
}

impl fmt::Display for TowerNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Serialize for TowerNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (h, x) = self.display_form();
        let mut st = s.serialize_struct("TowerNumber", 7)?;
        st.serialize_field("rendered", &self.render())?;
        st.serialize_field("h", &h)?;
        st.serialize_field("x", &x)?;
        st.serialize_field("normalized_h", &self.height)?;
        st.serialize_field("normalized_x", &self.top)?;
        st.serialize_field("exact", &self.exact.as_ref().map(|e| e.to_string()))?;
        st.serialize_field("error_bound", &self.error)?;
        st.end()
    }
}
