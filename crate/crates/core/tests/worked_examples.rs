use std::collections::BTreeMap;

use tropquiver::matroid::BasisTable;
use tropquiver::puiseux::{pluecker_coordinates, FieldMatrix, PuiseuxElement};
use tropquiver::quiver::{
    classical_relations, qdr_membership, qdr_membership_via_containment, ArrowMatrix, QdrViolation,
    QuiverRepresentation,
};
use tropquiver::subset::Subset;
use tropquiver::trop::{TropValue, INF};
use tropquiver::{trop_mat, Verdict};

type P = PuiseuxElement;

fn rank_one(a: TropValue, b: TropValue) -> BasisTable {
    BasisTable::from_fn(2, 1, |s| {
        if s.elements()[0] == 0 {
            a.clone()
        } else {
            b.clone()
        }
    })
    .unwrap()
}

/// A tie inside a single row satisfies the relation although the image
/// leaves the target space.
#[test]
fn relations_do_not_imply_containment_for_dense_maps() {
    let a = FieldMatrix::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
    let rep = QuiverRepresentation::builder(2)
        .vertex("1", 1)
        .vertex("2", 1)
        .arrow("1", "2", ArrowMatrix::Field(a.clone()))
        .build()
        .unwrap();
    let tuple = [rank_one(0.into(), 0.into()), rank_one(INF, 0.into())];
    assert!(qdr_membership(&rep, &tuple).unwrap().holds());
    let Verdict::Fails(QdrViolation::Containment { violation, .. }) =
        qdr_membership_via_containment(&rep, &tuple).unwrap()
    else {
        panic!("containment should fail");
    };
    assert_eq!(violation.image.to_string(), "(0,0)");
    assert_eq!(a.valuation().unwrap(), trop_mat![[0, 0], [INF, 0]]);
}

fn four_vertex_quiver() -> QuiverRepresentation {
    let id = || ArrowMatrix::Field(FieldMatrix::identity(4));
    QuiverRepresentation::builder(4)
        .vertex("1", 1)
        .vertex("2", 2)
        .vertex("3", 2)
        .vertex("4", 3)
        .arrow("1", "2", id())
        .arrow("1", "3", id())
        .arrow("2", "4", id())
        .arrow("3", "4", id())
        .build()
        .unwrap()
}

#[test]
fn four_vertex_relations() {
    let rep = four_vertex_quiver();
    let rels = classical_relations(&rep).unwrap();
    assert_eq!(rels.len(), 18);
    let printed: Vec<String> = rels.iter().map(|r| rep.format_classical(r)).collect();
    assert!(
        printed.contains(&"p_2{1,2}*p_2{3,4} - p_2{1,3}*p_2{2,4} + p_2{1,4}*p_2{2,3}".to_string())
    );
    assert!(
        printed.contains(&"p_3{1,2}*p_3{3,4} - p_3{1,3}*p_3{2,4} + p_3{1,4}*p_3{2,3}".to_string())
    );
    // incidence relations have three terms with alternating signs
    for r in rels
        .iter()
        .filter(|r| r.terms[0].monomial[0].vertex != r.terms[0].monomial[1].vertex)
    {
        assert_eq!(r.terms.len(), 3, "{}", rep.format_classical(r));
        let plus = r.terms.iter().filter(|t| t.coefficient == P::one()).count();
        assert!(plus == 1 || plus == 2, "{}", rep.format_classical(r));
    }
}

/// Point and line `<(1,1,1,0)> ⊂ <(1,1,1,0), e1>`: the generated incidence
/// relations vanish, the all-plus version does not.
#[test]
fn incidence_signs_on_a_flag() {
    let rep = four_vertex_quiver();
    let n1 = FieldMatrix::from_ints(&[&[1, 1, 1, 0]]).unwrap();
    let n2 = FieldMatrix::from_ints(&[&[1, 1, 1, 0], &[1, 0, 0, 0]]).unwrap();
    let n3 = n2.clone();
    let n4 = FieldMatrix::from_ints(&[&[1, 1, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 1]]).unwrap();
    let coords: Vec<BTreeMap<Subset, P>> = [&n1, &n2, &n3, &n4]
        .iter()
        .map(|m| pluecker_coordinates(m).unwrap().into_iter().collect())
        .collect();
    let value = |v: usize, s: &[usize]| coords[v][&Subset::one_based(s)].clone();
    for r in classical_relations(&rep).unwrap() {
        assert!(r
            .evaluate(|v| coords[v.vertex].get(&v.subset).cloned())
            .unwrap()
            .is_zero());
    }
    let all_plus = &(&(&value(0, &[1]) * &value(1, &[2, 3]))
        + &(&value(0, &[2]) * &value(1, &[1, 3])))
        + &(&value(0, &[3]) * &value(1, &[1, 2]));
    assert_eq!(all_plus, P::from(-2));
}

#[test]
fn two_towers_point() {
    let rep = four_vertex_quiver();
    let span = |rows: &[&[i64]]| FieldMatrix::from_ints(rows).unwrap();
    let tuple: Vec<_> = [
        span(&[&[1, 0, 0, 0]]),
        span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
        span(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]),
        span(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]),
    ]
    .iter()
    .map(|m| tropquiver::puiseux::pluecker_valuations(m).unwrap())
    .collect();
    assert!(qdr_membership(&rep, &tuple).unwrap().holds());
    assert!(qdr_membership_via_containment(&rep, &tuple)
        .unwrap()
        .holds());
}

#[test]
fn kronecker_relations_have_equal_tropicalizations() {
    let rep = QuiverRepresentation::builder(2)
        .vertex("1", 1)
        .vertex("2", 1)
        .arrow("1", "2", ArrowMatrix::Field(FieldMatrix::identity(2)))
        .arrow(
            "1",
            "2",
            ArrowMatrix::Field(FieldMatrix::diagonal(vec![P::one(), P::one() + P::t()])),
        )
        .build()
        .unwrap();
    let rels = classical_relations(&rep).unwrap();
    assert_eq!(rels.len(), 2);
    assert_eq!(
        rels[0].tropicalize().polynomial,
        rels[1].tropicalize().polynomial
    );
    // v1 + w2 = v2 + w1
    for (v, w, ok) in [
        ((0, 5), (0, 5), true),
        ((0, 0), (0, 1), false),
        ((2, 3), (4, 5), true),
    ] {
        let tuple = [
            rank_one(v.0.into(), v.1.into()),
            rank_one(w.0.into(), w.1.into()),
        ];
        assert_eq!(qdr_membership(&rep, &tuple).unwrap().holds(), ok);
    }
}
