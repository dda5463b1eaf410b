use num_rational::BigRational;
use proptest::prelude::*;

use tropquiver::trop::{
    min_attained_twice, projective_normalize, trop_matvec, trop_span_membership, TropMatrix,
    TropValue, TropVector, INF,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=6).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn value() -> impl Strategy<Value = TropValue> {
    prop_oneof![1 => Just(INF), 4 => rational().prop_map(TropValue::from)]
}

fn vector(len: usize) -> impl Strategy<Value = TropVector> {
    prop::collection::vec(value(), len).prop_map(TropVector::new)
}

fn nondegenerate(len: usize) -> impl Strategy<Value = TropVector> {
    vector(len).prop_filter("needs a finite entry", |v| !v.is_all_inf())
}

fn matrix_and_vectors() -> impl Strategy<Value = (TropMatrix, TropVector, TropVector)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(value(), r * c)
                .prop_map(move |d| TropMatrix::new(r, c, d).unwrap()),
            vector(c),
            vector(c),
        )
    })
}

proptest! {
    #[test]
    fn matvec_distributes((a, v, w) in matrix_and_vectors(), lambda in rational(), rho in rational()) {
        let left = trop_matvec(&a, &v.scale(&lambda).oplus(&w.scale(&rho)).unwrap()).unwrap();
        let av = trop_matvec(&a, &v).unwrap();
        let aw = trop_matvec(&a, &w).unwrap();
        let right = av.scale(&lambda).oplus(&aw.scale(&rho)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normalize_is_idempotent_and_shift_invariant(v in nondegenerate(5), c in rational()) {
        let once = projective_normalize(&v).unwrap();
        prop_assert_eq!(projective_normalize(&once).unwrap(), once.clone());
        prop_assert_eq!(projective_normalize(&v.scale(&c)).unwrap(), once.clone());
        let min = once.iter().filter_map(TropValue::as_finite).min().unwrap();
        prop_assert_eq!(min, &BigRational::from_integer(0.into()));
    }

    #[test]
    fn min_twice_ignores_common_shift(terms in prop::collection::vec(value(), 1..6), c in rational()) {
        let shifted: Vec<TropValue> = terms.iter().map(|t| t.shift(&c)).collect();
        prop_assert_eq!(min_attained_twice(&terms).unwrap(), min_attained_twice(&shifted).unwrap());
    }

    #[test]
    fn min_twice_matches_counting(terms in prop::collection::vec(value(), 1..6)) {
        let min = terms.iter().min().unwrap();
        let expected = min.is_inf() || terms.iter().filter(|t| *t == min).count() >= 2;
        prop_assert_eq!(min_attained_twice(&terms).unwrap(), expected);
    }

    #[test]
    fn span_of_combinations(
        generators in prop::collection::vec(vector(4), 1..4),
        lambdas in prop::collection::vec(rational(), 3),
    ) {
        let mut x = TropVector::all_inf(4);
        for (g, l) in generators.iter().zip(&lambdas) {
            x = x.oplus(&g.scale(l)).unwrap();
        }
        let m = trop_span_membership(&generators, &x).unwrap();
        prop_assert!(m.member);
        // the coefficients reproduce x
        let mut again = TropVector::all_inf(4);
        for (g, c) in generators.iter().zip(&m.coefficients) {
            if let Some(c) = c {
                again = again.oplus(&g.scale(c)).unwrap();
            }
        }
        prop_assert_eq!(again, x);
    }

    #[test]
    fn span_answers_are_certified(generators in prop::collection::vec(vector(4), 1..4), x in vector(4)) {
        let m = trop_span_membership(&generators, &x).unwrap();
        let mut again = TropVector::all_inf(4);
        for (g, c) in generators.iter().zip(&m.coefficients) {
            if let Some(c) = c {
                again = again.oplus(&g.scale(c)).unwrap();
            }
        }
        prop_assert_eq!(&again, &m.combination);
        if m.member {
            prop_assert_eq!(again, x);
        } else {
            let i = m.mismatch.unwrap();
            prop_assert_ne!(&again[i], &x[i]);
            // principal combinations never undershoot
            prop_assert!(again.iter().zip(x.iter()).all(|(a, b)| a >= b));
        }
    }
}
