//! Property tests for the coefficient ring: axioms, evaluation
//! homomorphisms, Adams operations, and exact division.

use num_bigint::BigInt;
use proptest::prelude::*;

use dtmotive::motive::{mu3_count, EquivTag, MotiveClass};

/// Random untagged polynomial in L with small support.
fn untagged() -> impl Strategy<Value = MotiveClass> {
    prop::collection::vec((0i64..6, -9i64..10), 0..5)
        .prop_map(|terms| MotiveClass::from_l_poly(&terms))
}

/// Random class that may carry an Mt part (still safe to multiply with an
/// untagged class and to evaluate).
fn tagged() -> impl Strategy<Value = MotiveClass> {
    (untagged(), untagged()).prop_map(|(a, b)| {
        a + b.mul(&MotiveClass::mtilde()).expect("Mt times untagged stays in span")
    })
}

fn evals() -> Vec<(BigInt, i64)> {
    [2u64, 5, 7, 13]
        .into_iter()
        .map(|q| (BigInt::from(q), mu3_count(q)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes_and_associates(a in tagged(), b in tagged(), c in tagged()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a + (b + c));
    }

    #[test]
    fn multiplication_commutes_and_associates(a in untagged(), b in untagged(), c in untagged()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn multiplication_distributes(a in tagged(), b in untagged(), c in untagged()) {
        let left = a.mul(&(b.clone() + c.clone())).unwrap();
        let right = a.mul(&b).unwrap() + a.mul(&c).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in tagged(), b in untagged()) {
        for (q, m) in evals() {
            let sum = (a.clone() + b.clone()).eval(&q, m).unwrap();
            prop_assert_eq!(sum, a.eval(&q, m).unwrap() + b.eval(&q, m).unwrap());
            let prod = a.mul(&b).unwrap().eval(&q, m).unwrap();
            prop_assert_eq!(prod, a.eval(&q, m).unwrap() * b.eval(&q, m).unwrap());
        }
    }

    #[test]
    fn adams_operations_compose_and_respect_products(a in untagged(), b in untagged()) {
        let psi6 = a.adams(6).unwrap();
        let via23 = a.adams(2).unwrap().adams(3).unwrap();
        prop_assert_eq!(psi6, via23);
        let prod = a.mul(&b).unwrap().adams(5).unwrap();
        prop_assert_eq!(prod, a.adams(5).unwrap().mul(&b.adams(5).unwrap()).unwrap());
    }

    #[test]
    fn adams_fixes_counts_of_powers(a in untagged(), k in 1u32..5) {
        // psi_k followed by eval at q equals eval at q^k on untagged input
        let q = BigInt::from(3);
        let qk = q.pow(k);
        prop_assert_eq!(
            a.adams(k).unwrap().eval(&q, 1).unwrap(),
            a.eval(&qk, 1).unwrap()
        );
    }

    #[test]
    fn exact_division_inverts_multiplication(a in tagged(), b in untagged()) {
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b).unwrap();
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn shift_is_multiplication_by_a_power(a in tagged(), e in 0i64..4) {
        let l = MotiveClass::l_pow(e);
        prop_assert_eq!(a.shift(2 * e), a.mul(&l).unwrap());
    }

    #[test]
    fn mu3_and_tag_components_reconstruct(a in tagged(), c in untagged()) {
        let full = a + c.mul(&MotiveClass::mtilde2()).unwrap();
        let (p, q, r) = full.tag_components();
        let rebuilt = p
            + q.mul(&MotiveClass::mtilde()).unwrap()
            + r.mul(&MotiveClass::mtilde2()).unwrap();
        prop_assert_eq!(full.clone(), rebuilt);
        // mu3 basis evaluates consistently: at split count 3, Mt -> -2
        let (a0, a1, a2) = full.mu3_components();
        let q7 = BigInt::from(7);
        let direct = full.eval(&q7, 3).unwrap();
        let via = a0.eval(&q7, 1).unwrap()
            + BigInt::from(3) * a1.eval(&q7, 1).unwrap()
            + BigInt::from(9) * a2.eval(&q7, 1).unwrap();
        prop_assert_eq!(direct, via);
    }
}

#[test]
fn tagged_products_outside_the_span_are_rejected() {
    use dtmotive::Error;
    let mt = MotiveClass::mtilde();
    let mt2 = MotiveClass::mtilde2();
    assert_eq!(mt.mul(&mt).unwrap(), mt2);
    assert_eq!(mt.mul(&mt2), Err(Error::UnreducedEquivariantPower));
    assert_eq!(mt2.mul(&mt2), Err(Error::UnreducedEquivariantPower));
    assert_eq!(mt.adams(3), Err(Error::UnsupportedAdams { k: 3 }));
}

#[test]
fn eval_rejects_fractional_powers() {
    use dtmotive::Error;
    let half = MotiveClass::l_pow_half(1);
    assert!(matches!(
        half.eval(&BigInt::from(2), 1),
        Err(Error::FractionalExponent { e2: 1 })
    ));
}

#[test]
fn gl_motive_counts_invertible_matrices() {
    use dtmotive::gl_motive;
    // |GL_n(F_q)| = prod_k (q^n - q^k)
    for (n, q, want) in [(1u32, 5u64, 4u64), (2, 2, 6), (2, 5, 480), (3, 2, 168)] {
        let got = gl_motive(n).eval(&BigInt::from(q), mu3_count(q)).unwrap();
        assert_eq!(got, BigInt::from(want), "GL_{n} over F_{q}");
    }
}

#[test]
fn equivariant_tags_display_distinctly() {
    let m = MotiveClass::monomial(4, EquivTag::Mtilde, BigInt::from(-3));
    let s = format!("{m}");
    assert!(s.contains("Mt"), "{s}");
}
