//! Seeded generators of random instances, used by the randomized cross
//! checks. Coefficients are small nonzero integers and exponents lie in
//! `{0, 1, 2}`, so valuations are varied but arithmetic stays cheap.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matroid::ValuatedMatroid;
use crate::morphism::{GroundSetMap, Target};
use crate::puiseux::{pluecker_valuations, rank_via_minors, FieldMatrix, PuiseuxElement};
use crate::quiver::{ArrowMatrix, QuiverRepresentation};
use crate::trop::TropValue;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero element with one or two terms.
pub fn nonzero_element(rng: &mut InstanceRng) -> PuiseuxElement {
    let terms = rng.random_range(1..=2);
    loop {
        let p = PuiseuxElement::from_terms((0..terms).map(|_| {
            let mut c: i64 = rng.random_range(1..=3);
            if rng.random_bool(0.5) {
                c = -c;
            }
            let e: i64 = rng.random_range(0..=2);
            (
                BigRational::from_integer(c.into()),
                BigRational::from_integer(e.into()),
            )
        }));
        if !p.is_zero() {
            return p;
        }
    }
}

/// Entries are zero with probability `zero_prob`.
pub fn field_matrix(
    rng: &mut InstanceRng,
    rows: usize,
    cols: usize,
    zero_prob: f64,
) -> FieldMatrix {
    let data = (0..rows * cols)
        .map(|_| {
            if rng.random_bool(zero_prob) {
                PuiseuxElement::zero()
            } else {
                nonzero_element(rng)
            }
        })
        .collect();
    FieldMatrix::new(rows, cols, data).expect("sizes agree")
}

/// A `d×n` matrix of full row rank.
pub fn full_rank_matrix(rng: &mut InstanceRng, d: usize, n: usize) -> Result<FieldMatrix> {
    loop {
        let m = field_matrix(rng, d, n, 0.25);
        if rank_via_minors(&m)? == d {
            return Ok(m);
        }
    }
}

/// A realizable valuated matroid together with its realization.
pub fn realizable_matroid(
    rng: &mut InstanceRng,
    d: usize,
    n: usize,
) -> Result<(FieldMatrix, ValuatedMatroid)> {
    let m = full_rank_matrix(rng, d, n)?;
    let mu = pluecker_valuations(&m)?;
    Ok((m, mu))
}

/// Square, at most one nonzero entry per row.
pub fn weakly_monomial_matrix(rng: &mut InstanceRng, n: usize) -> FieldMatrix {
    let mut a = FieldMatrix::zeros(n, n);
    for i in 0..n {
        if rng.random_bool(0.85) {
            let j = rng.random_range(0..n);
            a.set(i, j, nonzero_element(rng));
        }
    }
    a
}

pub fn ground_set_map(rng: &mut InstanceRng, n: usize) -> GroundSetMap {
    let images = (0..n)
        .map(|_| {
            if rng.random_bool(0.15) {
                (Target::Origin, TropValue::Inf)
            } else {
                (
                    Target::Element(rng.random_range(0..n)),
                    TropValue::from(rng.random_range(-3..=3i64)),
                )
            }
        })
        .collect();
    GroundSetMap::new(images).expect("valid by construction")
}

/// Rows of `m` forming a basis of its row space, chosen greedily.
pub fn independent_rows(m: &FieldMatrix) -> Result<FieldMatrix> {
    let mut basis = FieldMatrix::zeros(0, m.cols());
    for i in 0..m.rows() {
        let candidate = basis.vstack(&FieldMatrix::new(1, m.cols(), m.row(i).to_vec())?)?;
        if rank_via_minors(&candidate)? == candidate.rows() {
            basis = candidate;
        }
    }
    Ok(basis)
}

/// Extends independent rows by random rows up to rank `s`.
pub fn extend_to_rank(rng: &mut InstanceRng, rows: FieldMatrix, s: usize) -> Result<FieldMatrix> {
    let mut out = rows;
    while out.rows() < s {
        let candidate = out.vstack(&field_matrix(rng, 1, out.cols(), 0.25))?;
        if rank_via_minors(&candidate)? == candidate.rows() {
            out = candidate;
        }
    }
    Ok(out)
}

/// An instance for comparing relation vanishing with containment.
#[derive(Clone, Debug)]
pub struct ArrowInstance {
    pub rep: QuiverRepresentation,
    pub tuple: Vec<ValuatedMatroid>,
    /// A realizing subrepresentation when the tuple was built from one.
    pub witness: Option<Vec<FieldMatrix>>,
}

/// Two vertices joined by one arrow with a random matrix over the field,
/// `n ≤ 5`, ranks `≤ 3`. Half of the instances come from a genuine
/// subrepresentation, the rest pair independent random matroids.
pub fn arrow_instance(rng: &mut InstanceRng) -> Result<ArrowInstance> {
    let n = rng.random_range(2..=5);
    let zero_prob = [0.0, 0.3, 0.6][rng.random_range(0..3)];
    let a = field_matrix(rng, n, n, zero_prob);
    let r = rng.random_range(1..=n.min(3));
    let (u, mu) = realizable_matroid(rng, r, n)?;
    let (s, v, nu) = if rng.random_bool(0.5) {
        let image = independent_rows(&u.mul(&a.transpose())?)?;
        let s = rng.random_range(image.rows().max(1)..=n.min(3).max(image.rows()));
        let v = extend_to_rank(rng, image, s)?;
        let nu = pluecker_valuations(&v)?;
        (s, Some(v), nu)
    } else {
        let s = rng.random_range(1..=n.min(3));
        let (_, nu) = realizable_matroid(rng, s, n)?;
        (s, None, nu)
    };
    let rep = QuiverRepresentation::builder(n)
        .vertex("1", r)
        .vertex("2", s)
        .arrow("1", "2", ArrowMatrix::Field(a))
        .build()?;
    let witness = v.map(|v| vec![u, v]);
    Ok(ArrowInstance {
        rep,
        tuple: vec![mu, nu],
        witness,
    })
}

/// A weakly monomial matrix with a source and a target matroid.
#[derive(Clone, Debug)]
pub struct MonomialInstance {
    pub matrix: FieldMatrix,
    pub source: ValuatedMatroid,
    pub target: ValuatedMatroid,
    /// Whether `target` was built from the image of a realization of
    /// `source`, in which case containment holds.
    pub genuine: bool,
}

/// `n ≤ 5`, ranks `≤ 3`. Half of the targets contain the image of a
/// realization of the source.
pub fn monomial_instance(rng: &mut InstanceRng) -> Result<MonomialInstance> {
    let n = rng.random_range(2..=5);
    let a = weakly_monomial_matrix(rng, n);
    let r = rng.random_range(1..=n.min(3));
    let (u, source) = realizable_matroid(rng, r, n)?;
    let genuine = rng.random_bool(0.5);
    let target = if genuine {
        let image = independent_rows(&u.mul(&a.transpose())?)?;
        let s = rng.random_range(image.rows().max(1)..=n.min(3).max(image.rows()));
        pluecker_valuations(&extend_to_rank(rng, image, s)?)?
    } else {
        let s = rng.random_range(1..=n.min(3));
        realizable_matroid(rng, s, n)?.1
    };
    Ok(MonomialInstance {
        matrix: a,
        source,
        target,
        genuine,
    })
}

/// Nested row spans `U ⊂ V` on `[n]`: the realizable flag of an identity
/// `A₂` representation.
pub fn flag_instance(rng: &mut InstanceRng) -> Result<(usize, [ValuatedMatroid; 2])> {
    let n = rng.random_range(2..=5);
    let r = rng.random_range(1..n);
    let s = rng.random_range(r + 1..=n);
    let u = full_rank_matrix(rng, r, n)?;
    let v = extend_to_rank(rng, u.clone(), s)?;
    Ok((n, [pluecker_valuations(&u)?, pluecker_valuations(&v)?]))
}

/// A pair of unrelated realizable matroids of ranks `r < s`; usually not a
/// flag.
pub fn unrelated_pair(rng: &mut InstanceRng) -> Result<(usize, [ValuatedMatroid; 2])> {
    let n = rng.random_range(2..=5);
    let r = rng.random_range(1..n);
    let s = rng.random_range(r + 1..=n);
    let (_, a) = realizable_matroid(rng, r, n)?;
    let (_, b) = realizable_matroid(rng, s, n)?;
    Ok((n, [a, b]))
}
