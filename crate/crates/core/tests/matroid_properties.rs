use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use tropquiver::matroid::{is_valuated_matroid, BasisTable, ValuatedMatroid};
use tropquiver::morphism::{affine_induced_unpointed, GroundSetMap, Target};
use tropquiver::random;
use tropquiver::subset::Subset;
use tropquiver::trop::{TropValue, TropVector, INF};

fn realizable(seed: u64) -> ValuatedMatroid {
    let mut rng = random::rng(seed);
    let n = rng.random_range(1..=5);
    let r = rng.random_range(1..=n.min(3));
    random::realizable_matroid(&mut rng, r, n).unwrap().1
}

fn shifted(mu: &ValuatedMatroid, c: i64) -> ValuatedMatroid {
    let c = BigRational::from_integer(c.into());
    let t = BasisTable::from_fn(mu.n(), mu.rank(), |s| mu.value(s).shift(&c)).unwrap();
    ValuatedMatroid::new(t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cocircuits_lie_in_the_space(seed in any::<u64>()) {
        let mu = realizable(seed);
        for c in mu.cocircuits() {
            prop_assert!(mu.tls_membership(&c).unwrap().holds(), "{} rejects {}", mu.table(), c);
        }
    }

    #[test]
    fn span_of_cocircuits_lies_in_the_space(seed in any::<u64>(), lambdas in prop::collection::vec(-6i64..=6, 1..8)) {
        let mu = realizable(seed);
        let cocircuits = mu.cocircuits();
        let mut x = TropVector::all_inf(mu.n());
        for (c, l) in cocircuits.iter().zip(lambdas.iter().cycle()) {
            x = x.oplus(&c.scale(&BigRational::from_integer((*l).into()))).unwrap();
        }
        prop_assert!(mu.tls_membership(&x).unwrap().holds());
    }

    #[test]
    fn realizable_tables_pass_exchange(seed in any::<u64>()) {
        prop_assert!(is_valuated_matroid(realizable(seed).table()).unwrap().holds());
    }

    #[test]
    fn quotient_is_reflexive_and_projective(seed in any::<u64>(), a in -5i64..=5, b in -5i64..=5) {
        let mut rng = random::rng(seed);
        let (n, [mu, nu]) = if rng.random_bool(0.5) {
            random::flag_instance(&mut rng).unwrap()
        } else {
            random::unrelated_pair(&mut rng).unwrap()
        };
        prop_assert!(n >= 2);
        prop_assert!(mu.quotient_check(&mu).unwrap().holds());
        let plain = mu.quotient_check(&nu).unwrap().holds();
        prop_assert_eq!(shifted(&mu, a).quotient_check(&shifted(&nu, b)).unwrap().holds(), plain);
    }

    /// Killing `e` by the 0/1 diagonal map gives `μ∖e` with `e` as a loop.
    #[test]
    fn projection_is_deletion_plus_loop(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let mu = realizable(seed);
        let e = pick.index(mu.n());
        let kill = GroundSetMap::new(
            (0..mu.n()).map(|i| if i == e { (Target::Origin, INF) } else { (Target::Element(i), TropValue::zero()) }).collect(),
        ).unwrap();
        let induced = affine_induced_unpointed(&mu, &kill).unwrap();
        let deleted = mu.delete(e).unwrap();
        let looped = deleted.add_loop().unwrap();
        // put the loop back at position e
        let back = |i: usize| if i == e { mu.n() - 1 } else if i > e { i - 1 } else { i };
        let expected = BasisTable::from_fn(mu.n(), looped.rank(), |s| looped.value(&s.map(back).unwrap()).clone()).unwrap();
        prop_assert_eq!(induced.table(), &expected.normalized().unwrap());
        prop_assert!(induced.is_loop(e));
    }

    #[test]
    fn tls_equal_is_projective(seed in any::<u64>(), c in -5i64..=5) {
        let mu = realizable(seed);
        prop_assert!(mu.tls_equal(&shifted(&mu, c)));
    }
}

#[test]
fn loop_and_coloop_of_a_small_matroid() {
    let t = BasisTable::from_entries(
        3,
        2,
        [
            (Subset::one_based(&[1, 2]), 0.into()),
            (Subset::one_based(&[1, 3]), 1.into()),
        ],
    )
    .unwrap();
    let mu = ValuatedMatroid::new(t).unwrap();
    assert!(mu.is_coloop(0));
    assert!(!mu.is_loop(2));
    assert_eq!(mu.delete(0).unwrap().rank(), 1);
}
