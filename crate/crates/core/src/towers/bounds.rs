use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use super::{TowerError, TowerNumber};

/// Which innermost exponent the torsion bound uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVariant {
    /// `2r + 6 log2 r`.
    Headline,
    /// `2r + 6 log2 r - 2`.
    Refined,
    /// `2r + 7 log2 r`, for varieties that need not be connected.
    Disconnected,
}

impl FromStr for BoundVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "headline" => Ok(BoundVariant::Headline),
            "refined" => Ok(BoundVariant::Refined),
            "disconnected" => Ok(BoundVariant::Disconnected),
            _ => Err(format!("unknown variant `{s}` (expected headline, refined or disconnected)")),
        }
    }
}

/// The innermost argument of the tower.
pub fn inner_exponent(r: u32, variant: BoundVariant) -> f64 {
    let r = r as f64;
    match variant {
        BoundVariant::Headline => 2.0 * r + 6.0 * r.log2(),
        BoundVariant::Refined => 2.0 * r + 6.0 * r.log2() - 2.0,
        BoundVariant::Disconnected => 2.0 * r + 7.0 * r.log2(),
    }
}

/// `exp_d(y) = d^y`, folded into base 2 as `exp2(y log2 d)`.
pub fn exp_d(y: &TowerNumber, d: u32) -> Result<TowerNumber, TowerError> {
    y.scale((d as f64).log2())?.exp2()
}

fn check_range(d: u32, r: u32) -> Result<(), TowerError> {
    if d < 2 || r < 3 {
        return Err(TowerError::OutOfRange(format!("need d >= 2 and r >= 3 (got d = {d}, r = {r})")));
    }
    Ok(())
}

/// `exp2 exp2 exp2 exp_d exp2(inner)`: the bound on the order of the
/// torsion of the Néron–Severi group of a smooth variety in `P^r` cut out
/// in degree at most `d`.
pub fn nns_bound(d: u32, r: u32, variant: BoundVariant) -> Result<TowerNumber, TowerError> {
    check_range(d, r)?;
    let inner = TowerNumber::from_f64(inner_exponent(r, variant))?;
    let mut v = exp_d(&inner.exp2()?, d)?;
    for _ in 0..3 {
        v = v.exp2()?;
    }
    Ok(v)
}

/// Bound on the torsion of the abelianized étale fundamental group; the
/// same tower as the headline torsion bound.
pub fn pi1_bound(d: u32, r: u32) -> Result<TowerNumber, TowerError> {
    nns_bound(d, r, BoundVariant::Headline)
}

/// Bound on the torsion of the abelianized Nori fundamental group scheme;
/// the same tower as the headline torsion bound.
pub fn nori_bound(d: u32, r: u32) -> Result<TowerNumber, TowerError> {
    nns_bound(d, r, BoundVariant::Headline)
}

/// Generator counts for the torsion subgroup of a surface-type bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorBounds {
    /// `(deg X - 1)(deg X - 2)`, clamped at 0.
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub full: BigUint,
    /// Half of `full`, rounded up, for the p-power part.
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub p_power: BigUint,
}

pub fn generator_bounds(deg_x: u64) -> Result<GeneratorBounds, TowerError> {
    if deg_x < 1 {
        return Err(TowerError::OutOfRange("deg X must be at least 1".into()));
    }
    let full = if deg_x <= 2 { BigUint::from(0u32) } else { BigUint::from(deg_x - 1) * BigUint::from(deg_x - 2) };
    let p_power = (&full + 1u32) / 2u32;
    Ok(GeneratorBounds { full, p_power })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn peel(mut v: TowerNumber, times: usize) -> f64 {
        for _ in 0..times {
            v = v.log2().unwrap();
        }
        v.to_f64().unwrap()
    }

    #[test]
    fn headline_structure() {
        let b = nns_bound(2, 3, BoundVariant::Headline).unwrap();
        let inner = 6.0 + 6.0 * 3f64.log2();
        assert!((peel(b.clone(), 5) - inner).abs() < 1e-9);
        assert!((peel(b.clone(), 4) - inner.exp2()).abs() / inner.exp2() < 1e-9);
        assert_eq!(b.render(), "2^2^2^2^2^15.5098");

        let b3 = nns_bound(3, 3, BoundVariant::Headline).unwrap();
        let expected = inner.exp2() * 3f64.log2();
        assert!((peel(b3, 4) - expected).abs() / expected < 1e-6);
    }

    #[test]
    fn variants_ordered() {
        for d in 2..5 {
            for r in 3..6 {
                let h = nns_bound(d, r, BoundVariant::Headline).unwrap();
                let refined = nns_bound(d, r, BoundVariant::Refined).unwrap();
                let disc = nns_bound(d, r, BoundVariant::Disconnected).unwrap();
                assert_eq!(refined.compare(&h), super::super::TowerOrdering::Less);
                assert_eq!(disc.compare(&h), super::super::TowerOrdering::Greater);
            }
        }
        assert_eq!(pi1_bound(2, 3).unwrap(), nns_bound(2, 3, BoundVariant::Headline).unwrap());
        assert!(nns_bound(1, 3, BoundVariant::Headline).is_err());
    }

    #[test]
    fn generators() {
        let g = generator_bounds(4).unwrap();
        assert_eq!((g.full, g.p_power), (BigUint::from(6u32), BigUint::from(3u32)));
        assert_eq!(generator_bounds(2).unwrap().full, BigUint::from(0u32));
        assert_eq!(generator_bounds(1).unwrap().p_power, BigUint::from(0u32));
        assert_eq!(generator_bounds(5).unwrap().p_power, BigUint::from(6u32));
    }
}
