//! Arbitrary-precision helpers shared by the closed-form bounds.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Largest result, in bits, that the exact closed forms will materialize.
pub const MAX_EXACT_BITS: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("exact value would need about {bits} bits (limit {limit})")]
pub struct TooLarge {
    pub bits: u64,
    pub limit: u64,
}

/// `base^exp`, refusing results beyond [`MAX_EXACT_BITS`].
pub fn pow(base: &BigUint, exp: u64) -> Result<BigUint, TooLarge> {
    if base.is_zero() || base.is_one() || exp == 0 {
        return Ok(if exp == 0 { BigUint::one() } else { base.clone() });
    }
    let bits = (base.bits() as f64 * exp as f64) as u64;
    if bits > MAX_EXACT_BITS || exp > u32::MAX as u64 {
        return Err(TooLarge { bits, limit: MAX_EXACT_BITS });
    }
    Ok(num_traits::pow::Pow::pow(base, exp as u32))
}

/// `ceil(a / b)`.
pub fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Binomial coefficient `C(n, k)` for big `n` and small `k`.
pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient for machine-size arguments.
pub fn binomial_u64(n: u64, k: u64) -> BigUint {
    binomial(&BigUint::from(n), k)
}

/// Base-2 logarithm of a positive big integer, accurate to f64 precision.
pub fn log2(v: &BigUint) -> f64 {
    assert!(!v.is_zero(), "log2 of zero");
    let bits = v.bits();
    if bits <= 64 {
        return v.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

/// Number of decimal digits.
pub fn decimal_digits(v: &BigUint) -> u64 {
    if v.is_zero() {
        return 1;
    }
    v.to_string().len() as u64
}
