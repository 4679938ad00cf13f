//! Monomial orders, fields, parsing and Gröbner bases.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use torsion_bounds::cohomology::{gamma_exact, gamma_exact_monomial, GammaConfig};
use torsion_bounds::corpus::{corpus_rng, random_homogeneous_ideal};
use torsion_bounds::field::{Field, Fp, Rational};
use torsion_bounds::groebner::{buchberger, initial_ideal, GroebnerBasis, GroebnerConfig};
use torsion_bounds::poly::{parse_ideal, IdealPresentation, Monomial, MonomialOrder, PolyError, Polynomial};

const ORDERS: [MonomialOrder; 3] = [MonomialOrder::Lex, MonomialOrder::GradedLex, MonomialOrder::GradedRevLex];

fn exps(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..5, n)
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec()).unwrap()
}

/// `lcm/lt(f) * f - lcm/lt(g) * g` for monic `f`, `g`.
fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, order: MonomialOrder) -> Polynomial<F> {
    let (lf, lg) = (f.leading_monomial(order).unwrap(), g.leading_monomial(order).unwrap());
    let l = lf.lcm(lg);
    f.mul_term(&l.div(lf).unwrap(), &F::one()).sub(&g.mul_term(&l.div(lg).unwrap(), &F::one()))
}

fn check_reduced_basis<F: Field>(gb: &GroebnerBasis<F>, source: &IdealPresentation<F>) -> Result<(), TestCaseError> {
    let order = gb.order();
    let elems = gb.elements();
    for f in elems {
        let (_, c) = f.leading_term(order).unwrap();
        prop_assert!(c.is_one(), "not monic: {}", f);
    }
    for (i, f) in elems.iter().enumerate() {
        for (j, g) in elems.iter().enumerate() {
            if i < j {
                prop_assert!(gb.normal_form(&s_polynomial(f, g, order)).is_zero());
            }
            if i != j {
                let lm = f.leading_monomial(order).unwrap();
                prop_assert!(g.terms().all(|(m, _)| !lm.divides(m)), "{} reduces {}", f, g);
            }
        }
    }
    for g in source.generators() {
        prop_assert!(gb.contains(g));
    }
    let leading: BTreeSet<Monomial> = elems.iter().map(|f| f.leading_monomial(order).unwrap().clone()).collect();
    let init: BTreeSet<Monomial> = gb.initial_ideal().generators().iter().cloned().collect();
    prop_assert_eq!(leading, init);
    Ok(())
}

proptest! {
    #[test]
    fn orders_are_multiplicative_total_orders(a in exps(3), b in exps(3), c in exps(3)) {
        let (a, b, c) = (mono(&a), mono(&b), mono(&c));
        let one = Monomial::one(3);
        for order in ORDERS {
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
            prop_assert_eq!(order.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_ne!(order.cmp(&one, &a), Ordering::Greater);
            if order.cmp(&a, &b) != Ordering::Greater && order.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(order.cmp(&a, &c), Ordering::Greater);
            }
        }
    }

    #[test]
    fn field_representations_are_canonical(p in -50i64..50, q in 1i64..50, u in any::<i64>(), v in any::<i64>()) {
        let x = Rational::new(p.into(), q.into()) * Rational::new(q.into(), (p.abs() + 1).into());
        prop_assert!(x.denom().is_positive());
        prop_assert!(num_integer::Integer::gcd(x.numer(), x.denom()).is_one());
        let y = Fp::from_i64(u) * Fp::from_i64(v) - Fp::from_i64(u);
        prop_assert!(y.value() < 32003);
        if !Fp::from_i64(u).is_zero() {
            prop_assert!((Fp::from_i64(u) * Fp::from_i64(u).inv().unwrap()).is_one());
        }
    }

    #[test]
    fn reduced_bases_over_fp(seed in any::<u64>(), k in 0usize..3) {
        let ideal: IdealPresentation<Fp> = random_homogeneous_ideal(&mut corpus_rng(seed), 3, 3);
        let gb = buchberger(&ideal, ORDERS[k], &GroebnerConfig::default()).unwrap();
        check_reduced_basis(&gb, &ideal)?;
    }

    #[test]
    fn reduced_bases_over_q(seed in any::<u64>(), k in 0usize..3) {
        let ideal: IdealPresentation<Rational> = random_homogeneous_ideal(&mut corpus_rng(seed), 2, 3);
        let gb = buchberger(&ideal, ORDERS[k], &GroebnerConfig::default()).unwrap();
        check_reduced_basis(&gb, &ideal)?;
    }

    #[test]
    fn semicontinuity_for_every_order(seed in any::<u64>(), k in 0usize..3) {
        let cfg = GammaConfig::default();
        let ideal: IdealPresentation<Fp> = random_homogeneous_ideal(&mut corpus_rng(seed), 2, 3);
        let init = initial_ideal(&ideal, ORDERS[k], &cfg.groebner).unwrap();
        prop_assert!(gamma_exact(&ideal, &cfg).unwrap().dim <= gamma_exact_monomial(&init, &cfg).unwrap().dim);
    }
}

fn initial_set(text: &str, r: usize, order: MonomialOrder) -> BTreeSet<Vec<u32>> {
    let ideal: IdealPresentation<Rational> = parse_ideal(text, r).unwrap();
    let init = initial_ideal(&ideal, order, &GroebnerConfig::default()).unwrap();
    init.generators().iter().map(|m| m.exponents().to_vec()).collect()
}

#[test]
fn initial_ideals_match_reference_bases() {
    // leading monomials of reduced bases computed independently
    let cubic = "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2";
    let expected: BTreeSet<Vec<u32>> = [vec![0, 2, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 2, 0]].into();
    assert_eq!(initial_set(cubic, 3, MonomialOrder::GradedRevLex), expected);

    let pair = "x0*x1 - x2^2\nx0^2 - x1*x2";
    let grevlex: BTreeSet<Vec<u32>> = [vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 1]].into();
    let lex: BTreeSet<Vec<u32>> = [vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 2], vec![0, 3, 1]].into();
    assert_eq!(initial_set(pair, 2, MonomialOrder::GradedRevLex), grevlex);
    assert_eq!(initial_set(pair, 2, MonomialOrder::Lex), lex);

    let principal: IdealPresentation<Rational> = parse_ideal("x0^2 - x1^2", 1).unwrap();
    let gb = buchberger(&principal, MonomialOrder::Lex, &GroebnerConfig::default()).unwrap();
    assert_eq!(gb.elements().len(), 1);
    assert_eq!(gb.elements()[0], principal.generators()[0]);
}

#[test]
fn parse_errors_name_their_location() {
    let err = parse_ideal::<Rational>("x0^2\nx0 + x1^2\n", 1).unwrap_err();
    assert!(matches!(err, PolyError::InhomogeneousGenerator { line: 2, .. }), "{err}");
    let err = parse_ideal::<Rational>("x0*x3", 2).unwrap_err();
    assert!(matches!(err, PolyError::VariableOutOfRange { line: 1, column: 4, .. }), "{err}");
    let err = parse_ideal::<Rational>("x0\n\nx1 +* x0", 1).unwrap_err();
    assert!(matches!(err, PolyError::Syntax { line: 3, .. }), "{err}");
    assert!(err.to_string().contains("line 3"));
}

#[test]
fn degree_cap_is_reported() {
    let ideal: IdealPresentation<Fp> = parse_ideal("x0*x1 - x2^2\nx0^2 - x1*x2", 2).unwrap();
    let err = buchberger(&ideal, MonomialOrder::Lex, &GroebnerConfig { degree_cap: 2 }).unwrap_err();
    assert!(err.to_string().contains("degree cap"));
}
