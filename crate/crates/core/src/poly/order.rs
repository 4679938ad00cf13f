use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::monomial::{grevlex, grlex, lex};
use super::{Monomial, PolyError};

/// A multiplicative total order on monomials with `1` minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Lex,
    GradedLex,
    GradedRevLex,
}

impl MonomialOrder {
    /// Compare two monomials, checking that they live in the same ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != b.nvars() {
            return Err(PolyError::DimensionMismatch {
                left: a.nvars(),
                right: b.nvars(),
            });
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison for hot loops; callers guarantee equal `r`.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GradedLex => grlex(a, b),
            MonomialOrder::GradedRevLex => grevlex(a, b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GradedLex => "graded-lex",
            MonomialOrder::GradedRevLex => "graded-reverse-lex",
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" | "graded-lex" | "deglex" => Ok(MonomialOrder::GradedLex),
            "grevlex" | "graded-reverse-lex" | "degrevlex" => Ok(MonomialOrder::GradedRevLex),
            other => Err(PolyError::UnknownOrder(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    const ORDERS: [MonomialOrder; 3] =
        [MonomialOrder::Lex, MonomialOrder::GradedLex, MonomialOrder::GradedRevLex];

    #[test]
    fn worked_comparisons() {
        assert_eq!(
            MonomialOrder::Lex.compare(&m(&[2, 0]), &m(&[1, 1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::GradedRevLex.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])).unwrap(),
            Ordering::Greater
        );
        // graded-lex disagrees with grevlex on the same pair
        assert_eq!(
            MonomialOrder::GradedLex.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])).unwrap(),
            Ordering::Less
        );
        for o in ORDERS {
            assert_eq!(o.compare(&m(&[1, 3]), &m(&[1, 3])).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn mismatched_rings() {
        assert!(matches!(
            MonomialOrder::Lex.compare(&m(&[1]), &m(&[1, 0])),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(|v| Monomial::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_total_with_one_minimal(a in mono3(), b in mono3(), c in mono3()) {
            for o in ORDERS {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab, o.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
            }
        }

        #[test]
        fn orders_are_transitive(a in mono3(), b in mono3(), c in mono3()) {
            for o in ORDERS {
                if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
