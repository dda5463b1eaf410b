use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use tropquiver::puiseux::{classical_containment, det, FieldMatrix, PuiseuxElement};
use tropquiver::random;

type P = PuiseuxElement;

fn element() -> impl Strategy<Value = P> {
    prop::collection::vec(((-4i64..=4), (0i64..=6, 1i64..=3)), 0..4).prop_map(|terms| {
        P::from_terms(terms.into_iter().map(|(c, (p, q))| {
            (
                BigRational::from_integer(c.into()),
                BigRational::new(p.into(), q.into()),
            )
        }))
    })
}

fn matrix3() -> impl Strategy<Value = FieldMatrix> {
    prop::collection::vec(element(), 9).prop_map(|d| FieldMatrix::new(3, 3, d).unwrap())
}

/// Leibniz expansion over the six permutations of {0,1,2}.
fn leibniz(m: &FieldMatrix) -> P {
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([0, 2, 1], -1),
        ([1, 0, 2], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([2, 1, 0], -1),
    ];
    let mut total = P::zero();
    for (p, sign) in perms {
        let mut term = P::from(sign);
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        total = &total + &term;
    }
    total
}

/// Random invertible row operations: swaps and `row_k += c·row_l`.
fn mix(m: &FieldMatrix, seed: u64) -> FieldMatrix {
    let mut rng = random::rng(seed);
    let mut rows = m.to_rows();
    if rows.len() < 2 {
        if let Some(row) = rows.first_mut() {
            let c = P::from(rng.random_range(1..=3i64));
            *row = row.iter().map(|x| &c * x).collect();
        }
        return FieldMatrix::from_rows_with_cols(rows, m.cols()).unwrap();
    }
    for _ in 0..4 {
        let k = rng.random_range(0..rows.len());
        let l = (k + rng.random_range(1..rows.len())) % rows.len();
        if rng.random_bool(0.3) {
            rows.swap(k, l);
        } else {
            let c = P::from(rng.random_range(-3..=3i64));
            let add: Vec<P> = rows[l].iter().map(|x| &c * x).collect();
            rows[k] = rows[k].iter().zip(&add).map(|(a, b)| a + b).collect();
        }
    }
    FieldMatrix::from_rows_with_cols(rows, m.cols()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_is_multiplicative(p in element(), q in element()) {
        prop_assert_eq!((&p * &q).valuation(), &p.valuation() + &q.valuation());
    }

    #[test]
    fn valuation_of_sum_is_at_least_the_min(p in element(), q in element()) {
        prop_assert!((&p + &q).valuation() >= p.valuation().oplus(&q.valuation()));
    }

    #[test]
    fn det_matches_leibniz(m in matrix3()) {
        prop_assert_eq!(det(&m).unwrap(), leibniz(&m));
    }

    #[test]
    fn containment_ignores_row_operations(seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let inst = random::arrow_instance(&mut random::rng(seed)).unwrap();
        let a = inst.rep.field_matrix(0).unwrap();
        let (u, v) = match &inst.witness {
            Some(w) => (w[0].clone(), w[1].clone()),
            None => {
                let mut rng = random::rng(seed ^ 1);
                let n = a.cols();
                (random::full_rank_matrix(&mut rng, 1, n).unwrap(), random::full_rank_matrix(&mut rng, n.min(2), n).unwrap())
            }
        };
        let plain = classical_containment(a, &u, &v).unwrap();
        prop_assert_eq!(classical_containment(a, &mix(&u, s1), &mix(&v, s2)).unwrap(), plain);
        if inst.witness.is_some() {
            prop_assert!(plain);
        }
    }
}
