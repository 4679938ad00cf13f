//! Coefficient fields.
//!
//! Two exact backends are provided: arbitrary-precision rationals
//! ([`Rational`]) and prime residues ([`Zp`]) with the modulus fixed at the
//! type level. [`Fp`] is the default prime field, p = 32003.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// The default prime field used for Gröbner and oracle runs.
pub type Fp = Zp<32003>;

/// An exact field of coefficients.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Short name used in reports, e.g. `"QQ"` or `"GF(32003)"`.
    fn name() -> String;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// The integer this element denotes, if it is one. Prime residues map to
    /// their symmetric representative in `(-p/2, p/2]`.
    fn as_integer(&self) -> Option<BigInt>;

    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv().expect("division by zero")
    }
}

impl Field for Rational {
    fn name() -> String {
        "QQ".to_string()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn as_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.numer().clone())
        } else {
            None
        }
    }
}

/// Residues modulo the prime `P`, stored in `[0, P)`.
///
/// `P` must be a prime below 2^31 so that products fit in a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Zp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn symmetric(self) -> i64 {
        if self.0 > P / 2 {
            self.0 as i64 - P as i64
        } else {
            self.0 as i64
        }
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Zp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Zp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn name() -> String {
        format!("GF({P})")
    }

    fn from_i64(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Zp(r.to_u64().expect("residue fits in u64"))
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn as_integer(&self) -> Option<BigInt> {
        Some(BigInt::from(self.symmetric()))
    }
}

/// Absolute value helper for printing signed coefficients.
pub(crate) fn split_sign<F: Field>(c: &F) -> (bool, String) {
    match c.as_integer() {
        Some(i) if i.is_negative() => (true, (-i).to_string()),
        Some(i) => (false, i.to_string()),
        None => {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        for v in 1..200u64 {
            let a = Fp::new(v);
            assert_eq!(a * a.inv().unwrap(), Fp::one());
        }
        assert!(Fp::zero().inv().is_none());
    }

    #[test]
    fn prime_field_symmetric_display() {
        assert_eq!(Fp::from_i64(-1).to_string(), "-1");
        assert_eq!(Fp::from_i64(16001).to_string(), "16001");
        assert_eq!(Fp::from_i64(16002).to_string(), "-16001");
        assert_eq!(Fp::from_bigint(&BigInt::from(-32004)), Fp::from_i64(-1));
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(a.as_integer(), None);
        assert_eq!(Rational::from_i64(7).as_integer(), Some(BigInt::from(7)));
    }
}
