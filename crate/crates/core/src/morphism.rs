//! Ground-set maps with scaling data, affine induced valuated matroids and
//! the dictionary between weakly monomial matrices and such maps.
//!
//! A [`GroundSetMap`] sends each `i ∈ [n]` to `(f1(i), f2(i))` with
//! `f1(i) ∈ [n] ∪ {o}`; the origin `o` is fixed and never stored.
//!
//! ```
//! use tropquiver::morphism::{affine_induced_table, GroundSetMap, Target};
//! use tropquiver::matroid::ValuatedMatroid;
//! use tropquiver::trop::TropValue;
//!
//! let f = GroundSetMap::new(vec![
//!     (Target::Element(0), TropValue::from(3)),
//!     (Target::Element(2), TropValue::from(1)),
//!     (Target::Element(1), TropValue::from(0)),
//! ]).unwrap();
//! let nu = ValuatedMatroid::uniform(3, 2).unwrap();
//! let pulled = affine_induced_table(&nu, &f).unwrap();
//! assert_eq!(pulled.to_string(), "{{1,2}: 4, {1,3}: 3, {2,3}: 1}");
//! ```

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matroid::{BasisTable, ExchangeViolation, ValuatedMatroid};
use crate::puiseux::{classical_containment, pluecker_valuations, FieldMatrix, PuiseuxElement};
use crate::subset::Subset;
use crate::trop::{trop_span_membership, SpanMembership, TropMatrix, TropValue, TropVector};
use crate::verdict::Verdict;

/// Where `f1` sends an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Element(usize),
    Origin,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Element(j) => write!(f, "{}", j + 1),
            Target::Origin => f.write_str("o"),
        }
    }
}

/// A map `f = (f1, f2)` on `[n] ∪ {o}` with `f(o) = (o, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSetMap {
    images: Vec<(Target, TropValue)>,
}

impl GroundSetMap {
    /// Images of `0, …, n−1`. A pair `(j, ∞)` is stored as `(o, ∞)`; a pair
    /// `(o, c)` with finite `c` is rejected.
    pub fn new(images: Vec<(Target, TropValue)>) -> Result<Self> {
        let n = images.len();
        let mut out = Vec::with_capacity(n);
        for (i, (target, shift)) in images.into_iter().enumerate() {
            match (target, shift.is_inf()) {
                (Target::Element(j), _) if j >= n => {
                    return Err(Error::Usage(format!(
                        "f1({}) = {} is outside [{n}]",
                        i + 1,
                        j + 1
                    )))
                }
                (Target::Origin, false) => {
                    return Err(Error::Usage(format!(
                        "f1({}) = o needs f2({}) = inf, got {shift}",
                        i + 1,
                        i + 1
                    )))
                }
                (_, true) => out.push((Target::Origin, TropValue::Inf)),
                (t, false) => out.push((t, shift)),
            }
        }
        Ok(GroundSetMap { images: out })
    }

    pub fn identity(n: usize) -> Self {
        GroundSetMap {
            images: (0..n)
                .map(|i| (Target::Element(i), TropValue::zero()))
                .collect(),
        }
    }

    /// `i ↦ (perm[i], 0)`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        GroundSetMap::new(
            perm.iter()
                .map(|&j| (Target::Element(j), TropValue::zero()))
                .collect(),
        )
    }

    /// `i ↦ (i, shifts[i])`.
    pub fn diagonal(shifts: Vec<TropValue>) -> Result<Self> {
        GroundSetMap::new(
            shifts
                .into_iter()
                .enumerate()
                .map(|(i, s)| (Target::Element(i), s))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self, i: usize) -> Target {
        self.images[i].0
    }

    pub fn shift(&self, i: usize) -> &TropValue {
        &self.images[i].1
    }

    pub fn images(&self) -> &[(Target, TropValue)] {
        &self.images
    }

    /// `f1([n]) ∖ {o}`.
    pub fn image(&self) -> Subset {
        let elements = self
            .images
            .iter()
            .filter_map(|(t, _)| match t {
                Target::Element(j) => Some(*j),
                Target::Origin => None,
            })
            .sorted()
            .dedup()
            .collect();
        Subset::new(elements).expect("deduplicated")
    }
}

impl fmt::Display for GroundSetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .images
            .iter()
            .enumerate()
            .map(|(i, (t, s))| format!("{} -> ({t}, {s})", i + 1));
        write!(
            f,
            "{}",
            parts
                .chain(std::iter::once("o -> (o, inf)".to_string()))
                .join("; ")
        )
    }
}

fn check_same_n(f: &GroundSetMap, n: usize) -> Result<()> {
    if f.n() != n {
        return Err(Error::Shape(format!(
            "map on [{}] used with a matroid on [{n}]",
            f.n()
        )));
    }
    Ok(())
}

/// The affine induced table `f⁻¹(ν)` on `[n]`, before normalization.
///
/// `ν` is first restricted to `f1([n]) ∖ {o}` (rank `r'`). An `r'`-set `B`
/// gets `ρ(f1(B)) + Σ_{i∈B} f2(i)`, or `∞` when `f1` sends an element of
/// `B` to `o` or is not injective on `B`.
pub fn affine_induced_table(nu: &ValuatedMatroid, f: &GroundSetMap) -> Result<BasisTable> {
    check_same_n(f, nu.n())?;
    let image = f.image();
    let rho = nu.restrict(&image)?;
    let position = |j: usize| {
        image
            .elements()
            .binary_search(&j)
            .expect("j is in the image")
    };
    BasisTable::from_fn(f.n(), rho.rank(), |b| {
        let mut targets = Vec::with_capacity(b.len());
        let mut total = TropValue::zero();
        for &i in b.elements() {
            match f.target(i) {
                Target::Origin => return TropValue::Inf,
                Target::Element(j) => targets.push(position(j)),
            }
            total = &total + f.shift(i);
        }
        match Subset::new(targets) {
            Ok(s) => &total + rho.value(&s),
            Err(_) => TropValue::Inf,
        }
    })
}

/// The affine induced valuated matroid on `[n]`, without the loop `o`.
pub fn affine_induced_unpointed(nu: &ValuatedMatroid, f: &GroundSetMap) -> Result<ValuatedMatroid> {
    ValuatedMatroid::from_table_unchecked(affine_induced_table(nu, f)?)
}

/// The pointed affine induced valuated matroid on `[n] ∪ {o}`, with `o` as
/// the last element.
pub fn affine_induced(nu: &ValuatedMatroid, f: &GroundSetMap) -> Result<ValuatedMatroid> {
    affine_induced_unpointed(nu, f)?.add_loop()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    /// `f⁻¹(ν)` has larger rank than `μ`, so it cannot be a quotient.
    RankOrder {
        induced: usize,
        source: usize,
    },
    Quotient(ExchangeViolation),
}

/// Whether `f` is an affine morphism `μ → ν`, i.e. `f⁻¹(ν)` (on `[n]`) is
/// a quotient of `μ`.
pub fn is_affine_morphism(
    f: &GroundSetMap,
    mu: &ValuatedMatroid,
    nu: &ValuatedMatroid,
) -> Result<Verdict<MorphismViolation>> {
    check_same_n(f, mu.n())?;
    let induced = affine_induced_unpointed(nu, f)?;
    if induced.rank() > mu.rank() {
        return Ok(Verdict::Fails(MorphismViolation::RankOrder {
            induced: induced.rank(),
            source: mu.rank(),
        }));
    }
    Ok(induced.quotient_check(mu)?.map(MorphismViolation::Quotient))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizationViolation {
    NotMorphism(MorphismViolation),
    /// A witness is rank deficient or has the wrong Plücker valuations.
    /// `which` is `"induced"` or `"source"`.
    WrongValuations {
        which: &'static str,
    },
    /// The row space of the induced witness is not inside the source one.
    NotNested,
}

/// Whether `f: μ → ν` is a realizable affine morphism, given realizations
/// of `f⁻¹(ν)` and of `μ` as row spaces. Realizing the quotient means the
/// first row space lies in the second.
pub fn realizable_affine_morphism_check(
    f: &GroundSetMap,
    mu: &ValuatedMatroid,
    nu: &ValuatedMatroid,
    induced_witness: &FieldMatrix,
    source_witness: &FieldMatrix,
) -> Result<Verdict<RealizationViolation>> {
    if let Verdict::Fails(v) = is_affine_morphism(f, mu, nu)? {
        return Ok(Verdict::Fails(RealizationViolation::NotMorphism(v)));
    }
    let induced = affine_induced_unpointed(nu, f)?;
    for (which, witness, expected) in [
        ("induced", induced_witness, &induced),
        ("source", source_witness, mu),
    ] {
        let realizes = match pluecker_valuations(witness) {
            Ok(found) => {
                found.n() == expected.n() && found.table() == &expected.table().normalized()?
            }
            Err(Error::NotRealization(_)) => false,
            Err(e) => return Err(e),
        };
        if !realizes {
            return Ok(Verdict::Fails(RealizationViolation::WrongValuations {
                which,
            }));
        }
    }
    let id = FieldMatrix::identity(f.n());
    if !classical_containment(&id, induced_witness, source_witness)? {
        return Ok(Verdict::Fails(RealizationViolation::NotNested));
    }
    Ok(Verdict::Holds)
}

/// At most one nonzero entry in each row.
pub fn is_weakly_monomial(a: &FieldMatrix) -> bool {
    (0..a.rows()).all(|i| a.row(i).iter().filter(|x| !x.is_zero()).count() <= 1)
}

fn require_weakly_monomial(a: &FieldMatrix) -> Result<()> {
    if a.rows() != a.cols() {
        return Err(Error::Shape(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if let Some(i) = (0..a.rows()).find(|&i| a.row(i).iter().filter(|x| !x.is_zero()).count() > 1) {
        return Err(Error::Usage(format!(
            "row {} has more than one nonzero entry",
            i + 1
        )));
    }
    Ok(())
}

/// `i ↦ (j, val(A_ij))` for the nonzero entry of row `i`, or `(o, ∞)` for a
/// zero row.
pub fn associated_map(a: &FieldMatrix) -> Result<GroundSetMap> {
    require_weakly_monomial(a)?;
    GroundSetMap::new(
        (0..a.rows())
            .map(|i| match a.row(i).iter().position(|x| !x.is_zero()) {
                Some(j) => (Target::Element(j), a.get(i, j).valuation()),
                None => (Target::Origin, TropValue::Inf),
            })
            .collect(),
    )
}

/// The matrix with `t^{f2(i)}` at `(i, f1(i))`, and its valuation.
pub fn associated_matrix(f: &GroundSetMap) -> Result<(FieldMatrix, TropMatrix)> {
    let n = f.n();
    let mut a = FieldMatrix::zeros(n, n);
    for (i, (target, shift)) in f.images().iter().enumerate() {
        if let (Target::Element(j), TropValue::Finite(e)) = (target, shift) {
            a.set(
                i,
                *j,
                PuiseuxElement::monomial(num_traits::One::one(), e.clone()),
            );
        }
    }
    let v = a.valuation()?;
    Ok((a, v))
}

/// `A = D · B` with `B` the 0/1 support pattern of `A` and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDecomposition {
    pub pattern: FieldMatrix,
    pub diagonal: FieldMatrix,
}

/// Splits a square weakly monomial matrix into its support pattern and a
/// diagonal carrying the entries (`1` for zero rows).
pub fn decompose_weakly_monomial(a: &FieldMatrix) -> Result<MonomialDecomposition> {
    require_weakly_monomial(a)?;
    let n = a.rows();
    let mut pattern = FieldMatrix::zeros(n, n);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        match a.row(i).iter().position(|x| !x.is_zero()) {
            Some(j) => {
                pattern.set(i, j, PuiseuxElement::one());
                diag.push(a.get(i, j).clone());
            }
            None => diag.push(PuiseuxElement::one()),
        }
    }
    Ok(MonomialDecomposition {
        pattern,
        diagonal: FieldMatrix::diagonal(diag),
    })
}

/// `h ∘ g`: `i ↦ (h1(g1(i)), g2(i) + h2(g1(i)))`. Its associated matrix is
/// `A_g · A_h`.
pub fn compose_maps(g: &GroundSetMap, h: &GroundSetMap) -> Result<GroundSetMap> {
    check_same_n(h, g.n())?;
    GroundSetMap::new(
        g.images()
            .iter()
            .map(|(t, s)| match t {
                Target::Origin => (Target::Origin, TropValue::Inf),
                Target::Element(j) => (h.target(*j), s + h.shift(*j)),
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageViolation {
    /// A cocircuit of `f⁻¹(μ)` outside the span of the cocircuit images.
    CocircuitNotInSpan {
        cocircuit: TropVector,
        membership: Option<SpanMembership>,
    },
    /// A cocircuit image outside `trop(f⁻¹(μ))`.
    ImageNotInSpace {
        image: TropVector,
        circuit: TropVector,
    },
}

/// Checks `trop(f⁻¹(μ)) = val(A_f) ⊙ trop(μ)` on generators, in both
/// directions.
pub fn image_equals_induced(
    f: &GroundSetMap,
    mu: &ValuatedMatroid,
) -> Result<Verdict<ImageViolation>> {
    let induced = affine_induced_unpointed(mu, f)?;
    let (_, a) = associated_matrix(f)?;
    let mut images = Vec::new();
    for c in mu.cocircuits() {
        let image = a.mul_vec(&c)?;
        if !image.is_all_inf() {
            images.push(image);
        }
    }
    for cocircuit in induced.cocircuits() {
        if images.is_empty() {
            return Ok(Verdict::Fails(ImageViolation::CocircuitNotInSpan {
                cocircuit,
                membership: None,
            }));
        }
        let membership = trop_span_membership(&images, &cocircuit)?;
        if !membership.member {
            return Ok(Verdict::Fails(ImageViolation::CocircuitNotInSpan {
                cocircuit,
                membership: Some(membership),
            }));
        }
    }
    for image in images {
        if let Verdict::Fails(circuit) = induced.tls_membership(&image)? {
            return Ok(Verdict::Fails(ImageViolation::ImageNotInSpace {
                image,
                circuit,
            }));
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::containment_check;
    use crate::trop::INF;
    use crate::{trop_mat, trop_vec};

    type P = PuiseuxElement;

    fn example_map() -> GroundSetMap {
        GroundSetMap::new(vec![
            (Target::Element(0), 3.into()),
            (Target::Element(2), 1.into()),
            (Target::Element(1), 0.into()),
        ])
        .unwrap()
    }

    fn example_matrix() -> FieldMatrix {
        let mut a = FieldMatrix::zeros(3, 3);
        a.set(0, 0, P::t_pow(3, 1));
        a.set(1, 2, P::t());
        a.set(2, 1, P::one());
        a
    }

    #[test]
    fn induced_example() {
        let nu = ValuatedMatroid::uniform(3, 2).unwrap();
        let f = example_map();
        assert_eq!(
            affine_induced_table(&nu, &f).unwrap().to_string(),
            "{{1,2}: 4, {1,3}: 3, {2,3}: 1}"
        );
        let pointed = affine_induced(&nu, &f).unwrap();
        assert_eq!((pointed.n(), pointed.rank()), (4, 2));
        assert!(pointed.is_loop(3));
    }

    #[test]
    fn identity_and_projection() {
        let nu = ValuatedMatroid::new(
            BasisTable::from_entries(
                3,
                2,
                [
                    (Subset::one_based(&[1, 2]), 2.into()),
                    (Subset::one_based(&[1, 3]), 0.into()),
                    (Subset::one_based(&[2, 3]), 0.into()),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(affine_induced_unpointed(&nu, &GroundSetMap::identity(3))
            .unwrap()
            .tls_equal(&nu));

        let kill = GroundSetMap::new(vec![
            (Target::Element(0), 0.into()),
            (Target::Element(1), 0.into()),
            (Target::Origin, INF),
        ])
        .unwrap();
        let induced = affine_induced_unpointed(&nu, &kill).unwrap();
        let expected = nu.delete(2).unwrap().add_loop().unwrap();
        assert!(induced.tls_equal(&expected));
    }

    #[test]
    fn inf_shift_is_canonicalized() {
        let f = GroundSetMap::new(vec![
            (Target::Element(1), INF),
            (Target::Element(0), 0.into()),
        ])
        .unwrap();
        assert_eq!(f.target(0), Target::Origin);
        assert!(GroundSetMap::new(vec![(Target::Origin, 0.into())]).is_err());
        assert_eq!(f.to_string(), "1 -> (o, inf); 2 -> (1, 0); o -> (o, inf)");
    }

    #[test]
    fn morphism_examples() {
        let u = ValuatedMatroid::uniform(3, 2).unwrap();
        assert!(is_affine_morphism(&GroundSetMap::identity(3), &u, &u)
            .unwrap()
            .holds());
        let mu = affine_induced_unpointed(&u, &example_map()).unwrap();
        assert!(is_affine_morphism(&example_map(), &mu, &u).unwrap().holds());
    }

    #[test]
    fn associated_map_and_matrix() {
        assert!(is_weakly_monomial(&example_matrix()));
        assert_eq!(associated_map(&example_matrix()).unwrap(), example_map());
        assert_eq!(
            associated_map(&FieldMatrix::identity(3)).unwrap(),
            GroundSetMap::identity(3)
        );
        let zero = associated_map(&FieldMatrix::zeros(2, 2)).unwrap();
        assert!(zero
            .images()
            .iter()
            .all(|(t, s)| *t == Target::Origin && s.is_inf()));

        let (a, v) = associated_matrix(&example_map()).unwrap();
        assert_eq!(a, example_matrix());
        assert_eq!(v, trop_mat![[3, INF, INF], [INF, INF, 1], [INF, 0, INF]]);

        let a1 = FieldMatrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(!is_weakly_monomial(&a1));
        assert!(matches!(associated_map(&a1), Err(Error::Usage(_))));
        assert!(is_weakly_monomial(&FieldMatrix::zeros(3, 3)));
    }

    #[test]
    fn decomposition() {
        let d = decompose_weakly_monomial(&example_matrix()).unwrap();
        assert_eq!(d.diagonal.mul(&d.pattern).unwrap(), example_matrix());
        assert_eq!(
            d.diagonal,
            FieldMatrix::diagonal(vec![P::t_pow(3, 1), P::t(), P::one()])
        );
        assert_eq!(
            d.pattern,
            FieldMatrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).unwrap()
        );

        let id = decompose_weakly_monomial(&FieldMatrix::identity(2)).unwrap();
        assert_eq!(
            (id.pattern, id.diagonal),
            (FieldMatrix::identity(2), FieldMatrix::identity(2))
        );

        let diag = FieldMatrix::diagonal(vec![P::t(), P::t_pow(2, 1)]);
        let dd = decompose_weakly_monomial(&diag).unwrap();
        assert_eq!((dd.pattern, dd.diagonal), (FieldMatrix::identity(2), diag));
    }

    #[test]
    fn composition_of_shift_and_permutation() {
        let shifts = GroundSetMap::diagonal(vec![3.into(), 1.into(), 0.into()]).unwrap();
        let swap = GroundSetMap::permutation(&[0, 2, 1]).unwrap();
        // i ↦ swap(i) after the shift of i
        assert_eq!(compose_maps(&shifts, &swap).unwrap(), example_map());
        assert_ne!(compose_maps(&swap, &shifts).unwrap(), example_map());
        let id = GroundSetMap::identity(3);
        assert_eq!(compose_maps(&id, &example_map()).unwrap(), example_map());
        assert_eq!(compose_maps(&example_map(), &id).unwrap(), example_map());
    }

    #[test]
    fn image_of_the_example() {
        let u = ValuatedMatroid::uniform(3, 2).unwrap();
        let (_, a) = associated_matrix(&example_map()).unwrap();
        let images: Vec<_> = u
            .cocircuits()
            .iter()
            .map(|c| a.mul_vec(c).unwrap())
            .collect();
        assert_eq!(
            images,
            vec![
                trop_vec![INF, 1, 0],
                trop_vec![3, 1, INF],
                trop_vec![3, INF, 0]
            ]
        );
        assert!(image_equals_induced(&example_map(), &u).unwrap().holds());
        assert!(image_equals_induced(&GroundSetMap::identity(3), &u)
            .unwrap()
            .holds());
        let induced = affine_induced_unpointed(&u, &example_map()).unwrap();
        assert!(containment_check(&a, &u, &induced).unwrap().holds());
    }

    #[test]
    fn realizable_example() {
        let u = ValuatedMatroid::uniform(3, 2).unwrap();
        let f = example_map();
        let mu = affine_induced_unpointed(&u, &f).unwrap();
        // minors t^4, t^3, t
        let w = FieldMatrix::from_rows(vec![
            vec![P::t_pow(3, 1), P::zero(), -P::one()],
            vec![P::zero(), P::t(), P::one()],
        ])
        .unwrap();
        assert_eq!(
            pluecker_valuations(&w).unwrap().table(),
            &mu.table().normalized().unwrap()
        );
        assert!(realizable_affine_morphism_check(&f, &mu, &u, &w, &w)
            .unwrap()
            .holds());
        let bad = FieldMatrix::identity(3)
            .submatrix(&Subset::one_based(&[1, 2]), &Subset::one_based(&[1, 2, 3]));
        assert_eq!(
            realizable_affine_morphism_check(&f, &mu, &u, &w, &bad).unwrap(),
            Verdict::Fails(RealizationViolation::WrongValuations { which: "source" })
        );
    }
}
