use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use tropquiver::matroid::{BasisTable, ValuatedMatroid};
use tropquiver::puiseux::{pluecker_coordinates, FieldMatrix, PuiseuxElement};
use tropquiver::quiver::{
    classical_relations, qdr_membership, qdr_membership_via_containment, trop_qgr_witness_check,
    ArrowMatrix, QuiverRepresentation,
};
use tropquiver::random;
use tropquiver::subset::Subset;
use tropquiver::trop::TropMatrix;

fn shifted(mu: &ValuatedMatroid, c: i64) -> BasisTable {
    let c = BigRational::from_integer(c.into());
    BasisTable::from_fn(mu.n(), mu.rank(), |s| mu.value(s).shift(&c)).unwrap()
}

fn tropical_copy(rep: &QuiverRepresentation, shift: i64) -> QuiverRepresentation {
    let a = rep.trop_matrix(0);
    let c = BigRational::from_integer(shift.into());
    let data = (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j).shift(&c))
        .collect();
    let m = TropMatrix::new(a.rows(), a.cols(), data).unwrap();
    QuiverRepresentation::builder(rep.n())
        .vertex("1", rep.dims()[0])
        .vertex("2", rep.dims()[1])
        .arrow("1", "2", ArrowMatrix::Tropical(m))
        .build()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Checked with maps that are not diagonal, where the sign convention
    /// matters.
    #[test]
    fn classical_relations_vanish_on_subrepresentations(seed in any::<u64>()) {
        let inst = random::arrow_instance(&mut random::rng(seed)).unwrap();
        prop_assume!(inst.witness.is_some());
        let witness = inst.witness.unwrap();
        let coords: Vec<BTreeMap<Subset, PuiseuxElement>> =
            witness.iter().map(|w| pluecker_coordinates(w).unwrap().into_iter().collect()).collect();
        for rel in classical_relations(&inst.rep).unwrap() {
            let value = rel.evaluate(|v| coords[v.vertex].get(&v.subset).cloned()).unwrap();
            prop_assert!(value.is_zero(), "{} = {}", inst.rep.format_classical(&rel), value);
        }
    }

    #[test]
    fn witnessed_tuples_are_in_the_dressian(seed in any::<u64>()) {
        let inst = random::arrow_instance(&mut random::rng(seed)).unwrap();
        prop_assume!(inst.witness.is_some());
        let witness = inst.witness.unwrap();
        prop_assert!(trop_qgr_witness_check(&inst.rep, &inst.tuple, &witness).unwrap().holds());
        prop_assert!(qdr_membership(&inst.rep, &inst.tuple).unwrap().holds());
    }

    #[test]
    fn membership_ignores_projective_shifts(seed in any::<u64>(), a in -4i64..=4, b in -4i64..=4, c in -4i64..=4) {
        let inst = random::arrow_instance(&mut random::rng(seed)).unwrap();
        let rep = tropical_copy(&inst.rep, 0);
        let plain = qdr_membership(&rep, &inst.tuple).unwrap().holds();
        let tuple = [shifted(&inst.tuple[0], a), shifted(&inst.tuple[1], b)];
        prop_assert_eq!(qdr_membership(&rep, &tuple).unwrap().holds(), plain);
        prop_assert_eq!(qdr_membership(&tropical_copy(&inst.rep, c), &inst.tuple).unwrap().holds(), plain);
    }

    /// Containment always implies vanishing relations; the converse is
    /// only claimed for weakly monomial maps.
    #[test]
    fn containment_implies_relations(seed in any::<u64>()) {
        let inst = random::arrow_instance(&mut random::rng(seed)).unwrap();
        if qdr_membership_via_containment(&inst.rep, &inst.tuple).unwrap().holds() {
            prop_assert!(qdr_membership(&inst.rep, &inst.tuple).unwrap().holds());
        }
    }

    #[test]
    fn relations_match_containment_for_weakly_monomial_maps(seed in any::<u64>()) {
        let inst = random::monomial_instance(&mut random::rng(seed)).unwrap();
        let rep = QuiverRepresentation::builder(inst.matrix.rows())
            .vertex("1", inst.source.rank())
            .vertex("2", inst.target.rank())
            .arrow("1", "2", ArrowMatrix::Field(inst.matrix.clone()))
            .build()
            .unwrap();
        let tuple = [inst.source, inst.target];
        prop_assert_eq!(
            qdr_membership(&rep, &tuple).unwrap().holds(),
            qdr_membership_via_containment(&rep, &tuple).unwrap().holds()
        );
    }

    /// With n = 1 every vertex carries the single point of Gr(d; 1).
    #[test]
    fn one_dimensional_point(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let dims = [rng.random_range(0..=1usize), rng.random_range(0..=1usize)];
        let m = if rng.random_bool(0.3) { PuiseuxElement::zero() } else { random::nonzero_element(&mut rng) };
        let rep = QuiverRepresentation::builder(1)
            .vertex("a", dims[0])
            .vertex("b", dims[1])
            .arrow("a", "b", ArrowMatrix::Field(FieldMatrix::diagonal(vec![m.clone()])))
            .build()
            .unwrap();
        let point: Vec<BasisTable> = dims.iter().map(|&d| BasisTable::from_fn(1, d, |_| 0.into()).unwrap()).collect();
        // the point is realizable unless a nonzero map sends a line to zero
        let realizable = !(dims == [1, 0] && !m.is_zero());
        prop_assert_eq!(qdr_membership(&rep, &point).unwrap().holds(), realizable);
    }
}

/// Relations of an identity arrow between ranks r and r+1 pair `p_{I∪j}`
/// with `q_{J∖j}`, the shape of the Grassmann-Plücker incidence relations.
#[test]
fn identity_arrows_give_incidence_shapes() {
    for n in 2..=5 {
        for r in 1..n {
            let rep = QuiverRepresentation::identity_flag(n, &[r, r + 1]).unwrap();
            let rels = classical_relations(&rep).unwrap();
            for rel in rels.iter().filter(|rel| {
                rel.terms
                    .iter()
                    .all(|t| t.monomial[0].vertex != t.monomial[1].vertex)
            }) {
                for term in &rel.terms {
                    let (p, q) = (&term.monomial[0], &term.monomial[1]);
                    assert_eq!((p.vertex, q.vertex), (0, 1));
                    assert_eq!((p.subset.len(), q.subset.len()), (r, r + 1));
                    assert!(
                        term.coefficient == PuiseuxElement::one()
                            || term.coefficient == -PuiseuxElement::one()
                    );
                }
                // all terms share I = p ∖ {j} and J = q ∪ {j}
                let common: Vec<usize> = rel.terms[0].monomial[0].subset.elements().to_vec();
                let shared = common
                    .iter()
                    .filter(|e| rel.terms.iter().all(|t| t.monomial[0].subset.contains(**e)))
                    .count();
                assert!(
                    shared + 1 >= r,
                    "terms of a relation share r - 1 source indices"
                );
            }
        }
    }
}
