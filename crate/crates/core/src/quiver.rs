//! Quivers, representations with `R_i = Kⁿ` at every vertex, quiver Plücker
//! relations and the decision procedures for quiver Dressians.
//!
//! Arrow matrices follow the usual convention: entry `(i, j)` sits in the
//! target row `i` and the source column `j`, so the map acts on column
//! vectors and tropically by [`trop_matvec`](crate::trop::trop_matvec).

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matroid::{is_valuated_matroid, BasisTable, ExchangeViolation, ValuatedMatroid};
use crate::puiseux::{classical_containment, pluecker_valuations, FieldMatrix, PuiseuxElement};
use crate::subset::Subset;
use crate::trop::{
    min_attained_twice, TropMatrix, TropPolynomial, TropTerm, TropValue, TropVector,
};
use crate::verdict::Verdict;

/// A finite directed multigraph. Parallel arrows and loops are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<QuiverArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverArrow {
    pub name: Option<String>,
    pub src: usize,
    pub dst: usize,
}

impl Quiver {
    pub fn new() -> Self {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.vertices.contains(&name) {
            return Err(Error::Usage(format!("vertex {name:?} declared twice")));
        }
        self.vertices.push(name);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, src: usize, dst: usize, name: Option<String>) -> Result<usize> {
        for v in [src, dst] {
            if v >= self.vertices.len() {
                return Err(Error::Usage(format!("arrow endpoint {v} is not a vertex")));
            }
        }
        self.arrows.push(QuiverArrow { name, src, dst });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[QuiverArrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
}

/// The matrix of one arrow, in the field layer, the tropical layer, or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowMatrix {
    Field(FieldMatrix),
    Tropical(TropMatrix),
    Both(FieldMatrix, TropMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ArrowMap {
    field: Option<FieldMatrix>,
    trop: TropMatrix,
}

/// A quiver representation with `Kⁿ` at every vertex and a dimension
/// vector `d` with `0 ≤ d_i ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRepresentation {
    quiver: Quiver,
    n: usize,
    dims: Vec<usize>,
    maps: Vec<ArrowMap>,
}

impl QuiverRepresentation {
    pub fn new(quiver: Quiver, n: usize, dims: Vec<usize>, maps: Vec<ArrowMatrix>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("ambient dimension must be positive".into()));
        }
        if dims.len() != quiver.vertices.len() {
            return Err(Error::Usage(format!(
                "{} dimensions given for {} vertices",
                dims.len(),
                quiver.vertices.len()
            )));
        }
        if let Some((v, d)) = dims.iter().enumerate().find(|(_, &d)| d > n) {
            return Err(Error::Usage(format!(
                "vertex {:?} has dimension {d} > {n}",
                quiver.vertices[v]
            )));
        }
        if maps.len() != quiver.arrows.len() {
            return Err(Error::Usage(format!(
                "{} matrices given for {} arrows",
                maps.len(),
                quiver.arrows.len()
            )));
        }
        let square = |rows: usize, cols: usize, a: usize| {
            if rows == n && cols == n {
                Ok(())
            } else {
                Err(Error::Shape(format!(
                    "arrow {a} has a {rows}x{cols} matrix, expected {n}x{n}"
                )))
            }
        };
        let mut checked = Vec::with_capacity(maps.len());
        for (a, m) in maps.into_iter().enumerate() {
            let map = match m {
                ArrowMatrix::Field(f) => {
                    square(f.rows(), f.cols(), a)?;
                    ArrowMap {
                        trop: f.valuation()?,
                        field: Some(f),
                    }
                }
                ArrowMatrix::Tropical(t) => {
                    square(t.rows(), t.cols(), a)?;
                    ArrowMap {
                        field: None,
                        trop: t,
                    }
                }
                ArrowMatrix::Both(f, t) => {
                    square(f.rows(), f.cols(), a)?;
                    if f.valuation()? != t {
                        return Err(Error::Usage(format!(
                            "arrow {a}: tropical matrix is not the valuation of the field matrix"
                        )));
                    }
                    ArrowMap {
                        field: Some(f),
                        trop: t,
                    }
                }
            };
            checked.push(map);
        }
        Ok(QuiverRepresentation {
            quiver,
            n,
            dims,
            maps: checked,
        })
    }

    /// Start building a representation on `Kⁿ`.
    pub fn builder(n: usize) -> RepresentationBuilder {
        RepresentationBuilder {
            n,
            quiver: Quiver::new(),
            dims: Vec::new(),
            maps: Vec::new(),
            error: None,
        }
    }

    /// The equioriented type-A quiver `1 → 2 → ⋯ → k` with identity maps,
    /// whose subrepresentations are flags.
    pub fn identity_flag(n: usize, ranks: &[usize]) -> Result<Self> {
        let mut b = QuiverRepresentation::builder(n);
        for (k, &r) in ranks.iter().enumerate() {
            b = b.vertex(&(k + 1).to_string(), r);
        }
        for k in 1..ranks.len() {
            b = b.arrow(
                &k.to_string(),
                &(k + 1).to_string(),
                ArrowMatrix::Field(FieldMatrix::identity(n)),
            );
        }
        b.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &QuiverArrow {
        &self.quiver.arrows[a]
    }

    pub fn field_matrix(&self, a: usize) -> Option<&FieldMatrix> {
        self.maps[a].field.as_ref()
    }

    pub fn trop_matrix(&self, a: usize) -> &TropMatrix {
        &self.maps[a].trop
    }

    pub fn has_field_layer(&self) -> bool {
        self.maps.iter().all(|m| m.field.is_some())
    }

    fn require_field(&self, a: usize) -> Result<&FieldMatrix> {
        self.field_matrix(a).ok_or_else(|| {
            Error::Usage(format!(
                "arrow {} has no field-layer matrix",
                self.describe_arrow(a)
            ))
        })
    }

    pub fn describe_arrow(&self, a: usize) -> String {
        let arrow = self.arrow(a);
        let label = arrow.name.clone().unwrap_or_else(|| (a + 1).to_string());
        format!(
            "{label} ({} -> {})",
            self.vertex_name(arrow.src),
            self.vertex_name(arrow.dst)
        )
    }

    pub fn describe_var(&self, var: &PlueckerVar) -> String {
        let labels = var.subset.one_based_labels().iter().join(",");
        format!("p_{}{{{labels}}}", self.vertex_name(var.vertex))
    }

    pub fn describe_origin(&self, origin: &RelationOrigin) -> String {
        match origin {
            RelationOrigin::GrassmannPluecker {
                vertex,
                i_set,
                j_set,
            } => format!(
                "Grassmann-Pluecker relation at vertex {}, I={i_set}, J={j_set}",
                self.vertex_name(*vertex)
            ),
            RelationOrigin::Arrow {
                arrow,
                i_set,
                j_set,
            } => format!(
                "quiver Pluecker relation of arrow {}, I={i_set}, J={j_set}",
                self.describe_arrow(*arrow)
            ),
        }
    }

    pub fn format_classical(&self, rel: &ClassicalRelation) -> String {
        if rel.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, term) in rel.terms.iter().enumerate() {
            let c = &term.coefficient;
            let (negative, magnitude) = match c.terms().collect_vec().as_slice() {
                [(e, q)] if num_traits::Zero::is_zero(*e) => {
                    let neg = num_traits::Signed::is_negative(*q);
                    (neg, if neg { -c } else { c.clone() })
                }
                _ => (false, c.clone()),
            };
            out.push_str(match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if magnitude != PuiseuxElement::one() {
                if magnitude.terms().count() > 1 {
                    out.push_str(&format!("({magnitude})*"));
                } else {
                    out.push_str(&format!("{magnitude}*"));
                }
            }
            out.push_str(&term.monomial.iter().map(|v| self.describe_var(v)).join("*"));
        }
        out
    }

    pub fn format_tropical(&self, rel: &TropicalRelation) -> String {
        if rel.polynomial.is_empty() {
            return "inf".into();
        }
        rel.polynomial
            .terms()
            .iter()
            .map(|t| {
                let vars = t.monomial.iter().map(|v| self.describe_var(v)).join(" + ");
                format!("{} + {vars}", t.coefficient)
            })
            .map(|s| format!("({s})"))
            .join(" min ")
    }
}

/// Incremental construction of a [`QuiverRepresentation`] by vertex name.
/// Errors are reported by [`RepresentationBuilder::build`].
///
/// ```
/// use tropquiver::quiver::{ArrowMatrix, QuiverRepresentation};
/// use tropquiver::puiseux::{FieldMatrix, PuiseuxElement as P};
///
/// let kronecker = QuiverRepresentation::builder(2)
///     .vertex("1", 1)
///     .vertex("2", 1)
///     .arrow("1", "2", ArrowMatrix::Field(FieldMatrix::identity(2)))
///     .arrow("1", "2", ArrowMatrix::Field(FieldMatrix::diagonal(vec![P::one(), P::one() + P::t()])))
///     .build()
///     .unwrap();
/// assert_eq!(kronecker.quiver().arrows().len(), 2);
/// ```
#[derive(Debug)]
pub struct RepresentationBuilder {
    n: usize,
    quiver: Quiver,
    dims: Vec<usize>,
    maps: Vec<ArrowMatrix>,
    error: Option<Error>,
}

impl RepresentationBuilder {
    pub fn vertex(mut self, name: &str, dim: usize) -> Self {
        if self.error.is_none() {
            match self.quiver.add_vertex(name) {
                Ok(_) => self.dims.push(dim),
                Err(e) => self.error = Some(e),
            }
        }
        self
    }

    pub fn arrow(self, src: &str, dst: &str, matrix: ArrowMatrix) -> Self {
        self.named_arrow(None, src, dst, matrix)
    }

    pub fn named_arrow(
        mut self,
        name: Option<String>,
        src: &str,
        dst: &str,
        matrix: ArrowMatrix,
    ) -> Self {
        if self.error.is_some() {
            return self;
        }
        let lookup = |v: &str| {
            self.quiver
                .vertex_index(v)
                .ok_or_else(|| Error::Usage(format!("unknown vertex {v:?}")))
        };
        match lookup(src).and_then(|s| Ok((s, lookup(dst)?))) {
            Ok((s, d)) => {
                self.quiver.add_arrow(s, d, name).expect("endpoints exist");
                self.maps.push(matrix);
            }
            Err(e) => self.error = Some(e),
        }
        self
    }

    pub fn build(self) -> Result<QuiverRepresentation> {
        if let Some(e) = self.error {
            return Err(e);
        }
        QuiverRepresentation::new(self.quiver, self.n, self.dims, self.maps)
    }
}

/// The Plücker coordinate `p_S` of the subspace at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlueckerVar {
    pub vertex: usize,
    pub subset: Subset,
}

/// Which index data produced a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationOrigin {
    GrassmannPluecker {
        vertex: usize,
        i_set: Subset,
        j_set: Subset,
    },
    Arrow {
        arrow: usize,
        i_set: Subset,
        j_set: Subset,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalTerm {
    pub coefficient: PuiseuxElement,
    /// Sorted variables of the (quadratic) monomial.
    pub monomial: Vec<PlueckerVar>,
}

/// A polynomial relation among Plücker coordinates over the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalRelation {
    pub origin: RelationOrigin,
    /// Terms with equal monomials are merged; zero terms are dropped.
    pub terms: Vec<ClassicalTerm>,
}

impl ClassicalRelation {
    fn from_terms(
        origin: RelationOrigin,
        raw: impl IntoIterator<Item = (PuiseuxElement, Vec<PlueckerVar>)>,
    ) -> Self {
        let mut merged: BTreeMap<Vec<PlueckerVar>, PuiseuxElement> = BTreeMap::new();
        for (c, mut mono) in raw {
            mono.sort();
            let slot = merged.entry(mono).or_default();
            *slot = &*slot + &c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coefficient)| ClassicalTerm {
                coefficient,
                monomial,
            })
            .collect();
        ClassicalRelation { origin, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value of the relation at a classical point.
    pub fn evaluate<F>(&self, assignment: F) -> Result<PuiseuxElement>
    where
        F: Fn(&PlueckerVar) -> Option<PuiseuxElement>,
    {
        let mut total = PuiseuxElement::zero();
        for term in &self.terms {
            let mut value = term.coefficient.clone();
            for var in &term.monomial {
                let x = assignment(var).ok_or_else(|| {
                    Error::Usage(format!("variable {var:?} has no assigned value"))
                })?;
                value = &value * &x;
            }
            total = &total + &value;
        }
        Ok(total)
    }

    /// Tropicalization: coefficients are replaced by their valuations.
    pub fn tropicalize(&self) -> TropicalRelation {
        TropicalRelation {
            origin: self.origin.clone(),
            polynomial: TropPolynomial::new(self.terms.iter().map(|t| TropTerm {
                coefficient: t.coefficient.valuation(),
                monomial: t.monomial.clone(),
            })),
        }
    }

    /// Equality up to a nonzero scalar, tested by cross-multiplication.
    pub fn projectively_eq(&self, other: &ClassicalRelation) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        if self
            .terms
            .iter()
            .zip(&other.terms)
            .any(|(a, b)| a.monomial != b.monomial)
        {
            return false;
        }
        let (Some(a0), Some(b0)) = (self.terms.first(), other.terms.first()) else {
            return true;
        };
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|(a, b)| &a.coefficient * &b0.coefficient == &b.coefficient * &a0.coefficient)
    }
}

/// A tropical polynomial relation among Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalRelation {
    pub origin: RelationOrigin,
    pub polynomial: TropPolynomial<PlueckerVar>,
}

impl TropicalRelation {
    /// Equality up to a common shift of all coefficients.
    pub fn projectively_eq(&self, other: &TropicalRelation) -> bool {
        let (a, b) = (self.polynomial.terms(), other.polynomial.terms());
        if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.monomial != y.monomial) {
            return false;
        }
        let coeffs = |ts: &[TropTerm<PlueckerVar>]| -> TropVector {
            ts.iter().map(|t| t.coefficient.clone()).collect()
        };
        a.is_empty() || coeffs(a).projectively_eq(&coeffs(b))
    }
}

fn parity_sign(count: usize) -> PuiseuxElement {
    PuiseuxElement::from(if count % 2 == 0 { 1 } else { -1 })
}

/// `(−1)^{#{j'∈J : j'>j} + #{i∈I : i>j}}`.
pub fn gp_sign(j: usize, i_set: &Subset, j_set: &Subset) -> PuiseuxElement {
    parity_sign(j_set.count_greater(j) + i_set.count_greater(j))
}

/// Sign of the term `(M)_{i,j} p_{I∪j} p'_{J∖i}`:
/// `(−1)^{#{j'∈J : j'>i} + #{k∈I : k>j}}`. For `i = j` this is [`gp_sign`].
pub fn quiver_sign(i: usize, j: usize, i_set: &Subset, j_set: &Subset) -> PuiseuxElement {
    parity_sign(j_set.count_greater(i) + i_set.count_greater(j))
}

/// Grassmann–Plücker relations of `Gr(r, n)` on the coordinates of
/// `vertex`: one per `I ∈ binom([n], r−1)`, `J ∈ binom([n], r+1)`, with
/// terms `sign(j;I,J) p_{I∪j} p_{J∖j}` for `j ∈ J∖I`. Relations whose
/// terms cancel come out empty.
pub fn grassmann_pluecker(n: usize, r: usize, vertex: usize) -> Vec<ClassicalRelation> {
    let Some(k) = r.checked_sub(1) else {
        return Vec::new();
    };
    let var = |subset| PlueckerVar { vertex, subset };
    Subset::all(n, k)
        .cartesian_product(Subset::all(n, r + 1).collect_vec())
        .map(|(i_set, j_set)| {
            let terms = j_set
                .difference(&i_set)
                .map(|j| {
                    let mono = vec![
                        var(i_set.with(j).expect("j outside I")),
                        var(j_set.without(j).expect("j inside J")),
                    ];
                    (gp_sign(j, &i_set, &j_set), mono)
                })
                .collect_vec();
            ClassicalRelation::from_terms(
                RelationOrigin::GrassmannPluecker {
                    vertex,
                    i_set,
                    j_set,
                },
                terms,
            )
        })
        .collect()
}

/// Whether every tropical Grassmann–Plücker relation vanishes on `table`.
/// Independent of the exchange-axiom check.
pub fn gp_relations_vanish(
    table: &BasisTable,
) -> Result<Verdict<(TropicalRelation, Vec<TropValue>)>> {
    for rel in grassmann_pluecker(table.n(), table.r(), 0) {
        let trop = rel.tropicalize();
        let values = trop
            .polynomial
            .evaluate(|v| Some(table.value(&v.subset).clone()))?;
        if !values.is_empty() && !min_attained_twice(&values)? {
            return Ok(Verdict::Fails((trop, values)));
        }
    }
    Ok(Verdict::Holds)
}

/// Relations contributed by one arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowRelations {
    /// Present when the arrow has a field-layer matrix.
    pub classical: Option<Vec<ClassicalRelation>>,
    pub tropical: Vec<TropicalRelation>,
}

/// Quiver Plücker relations of one arrow `α: a → b` with `r = d_a`,
/// `s = d_b`: for each `I ∈ binom([n], r−1)` and `J ∈ binom([n], s+1)`, the
/// sum over `j ∉ I`, `i ∈ J` of `±(M_α)_{i,j} p_{I∪j} p'_{J∖i}`.
///
/// Every `(I, J)` pair yields a relation, possibly with no terms. With a
/// field layer the tropical relations are the tropicalizations of the
/// classical ones; otherwise they are built from the tropical matrix and
/// repeated monomials (only possible on loops) are merged by minimum.
pub fn generate_quiver_pluecker(
    rep: &QuiverRepresentation,
    arrow: usize,
) -> Result<ArrowRelations> {
    if arrow >= rep.maps.len() {
        return Err(Error::Usage(format!("arrow index {arrow} out of range")));
    }
    let QuiverArrow { src, dst, .. } = *rep.arrow(arrow);
    let (n, r, s) = (rep.n, rep.dims[src], rep.dims[dst]);
    let Some(k) = r.checked_sub(1) else {
        return Ok(ArrowRelations {
            classical: rep.field_matrix(arrow).map(|_| Vec::new()),
            tropical: Vec::new(),
        });
    };
    let index_pairs = Subset::all(n, k)
        .cartesian_product(Subset::all(n, s + 1).collect_vec())
        .collect_vec();
    let term_vars = |i_set: &Subset, j_set: &Subset, i: usize, j: usize| {
        vec![
            PlueckerVar {
                vertex: src,
                subset: i_set.with(j).expect("j outside I"),
            },
            PlueckerVar {
                vertex: dst,
                subset: j_set.without(i).expect("i inside J"),
            },
        ]
    };
    let free = |i_set: &Subset| (0..n).filter(|j| !i_set.contains(*j)).collect_vec();

    match rep.field_matrix(arrow) {
        Some(m) => {
            let classical = index_pairs
                .into_iter()
                .map(|(i_set, j_set)| {
                    let mut terms = Vec::new();
                    for j in free(&i_set) {
                        for &i in j_set.elements() {
                            let entry = m.get(i, j);
                            if entry.is_zero() {
                                continue;
                            }
                            let c = &quiver_sign(i, j, &i_set, &j_set) * entry;
                            terms.push((c, term_vars(&i_set, &j_set, i, j)));
                        }
                    }
                    ClassicalRelation::from_terms(
                        RelationOrigin::Arrow {
                            arrow,
                            i_set,
                            j_set,
                        },
                        terms,
                    )
                })
                .collect_vec();
            let tropical = classical
                .iter()
                .map(ClassicalRelation::tropicalize)
                .collect();
            Ok(ArrowRelations {
                classical: Some(classical),
                tropical,
            })
        }
        None => {
            let t = rep.trop_matrix(arrow);
            let tropical = index_pairs
                .into_iter()
                .map(|(i_set, j_set)| {
                    let mut terms = Vec::new();
                    for j in free(&i_set) {
                        for &i in j_set.elements() {
                            terms.push(TropTerm {
                                coefficient: t.get(i, j).clone(),
                                monomial: term_vars(&i_set, &j_set, i, j),
                            });
                        }
                    }
                    TropicalRelation {
                        origin: RelationOrigin::Arrow {
                            arrow,
                            i_set,
                            j_set,
                        },
                        polynomial: TropPolynomial::new(terms),
                    }
                })
                .collect();
            Ok(ArrowRelations {
                classical: None,
                tropical,
            })
        }
    }
}

/// All classical relations: Grassmann–Plücker relations at every vertex,
/// then quiver Plücker relations of every arrow. Zero relations are
/// dropped and relations equal up to a scalar are listed once.
pub fn classical_relations(rep: &QuiverRepresentation) -> Result<Vec<ClassicalRelation>> {
    let mut all = Vec::new();
    for (v, &d) in rep.dims.iter().enumerate() {
        all.extend(grassmann_pluecker(rep.n, d, v));
    }
    for a in 0..rep.maps.len() {
        rep.require_field(a)?;
        all.extend(
            generate_quiver_pluecker(rep, a)?
                .classical
                .expect("field layer present"),
        );
    }
    let mut out: Vec<ClassicalRelation> = Vec::new();
    for rel in all.into_iter().filter(|r| !r.is_zero()) {
        if !out.iter().any(|kept| kept.projectively_eq(&rel)) {
            out.push(rel);
        }
    }
    Ok(out)
}

/// All tropical relations, in the same order and with the same
/// deduplication as [`classical_relations`]; available without a field
/// layer.
pub fn tropical_relations(rep: &QuiverRepresentation) -> Result<Vec<TropicalRelation>> {
    let mut all = Vec::new();
    for (v, &d) in rep.dims.iter().enumerate() {
        all.extend(
            grassmann_pluecker(rep.n, d, v)
                .iter()
                .map(ClassicalRelation::tropicalize),
        );
    }
    for a in 0..rep.maps.len() {
        all.extend(generate_quiver_pluecker(rep, a)?.tropical);
    }
    let mut out: Vec<TropicalRelation> = Vec::new();
    for rel in all.into_iter().filter(|r| !r.polynomial.is_empty()) {
        if !out.iter().any(|kept| kept.projectively_eq(&rel)) {
            out.push(rel);
        }
    }
    Ok(out)
}

/// Why a tuple of matroids is not a point of the quiver Dressian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QdrViolation {
    NotValuatedMatroid {
        vertex: usize,
        violation: ExchangeViolation,
    },
    Relation {
        relation: TropicalRelation,
        values: Vec<TropValue>,
    },
    Containment {
        arrow: usize,
        violation: ContainmentViolation,
    },
}

/// Shape checks shared by the tuple-consuming procedures.
fn check_tuple<T: AsRef<BasisTable>>(rep: &QuiverRepresentation, tuple: &[T]) -> Result<()> {
    if tuple.len() != rep.dims.len() {
        return Err(Error::Usage(format!(
            "{} matroids given for {} vertices",
            tuple.len(),
            rep.dims.len()
        )));
    }
    for (v, t) in tuple.iter().enumerate() {
        let t = t.as_ref();
        if t.n() != rep.n || t.r() != rep.dims[v] {
            return Err(Error::Usage(format!(
                "vertex {:?} needs a rank-{} matroid on [{}], got rank {} on [{}]",
                rep.vertex_name(v),
                rep.dims[v],
                rep.n,
                t.r(),
                t.n()
            )));
        }
    }
    Ok(())
}

/// Validates each table; the first failure becomes a violation.
fn matroids_of<T: AsRef<BasisTable>>(
    tuple: &[T],
) -> Result<std::result::Result<Vec<ValuatedMatroid>, QdrViolation>> {
    let mut out = Vec::with_capacity(tuple.len());
    for (vertex, t) in tuple.iter().enumerate() {
        match is_valuated_matroid(t.as_ref())? {
            Verdict::Holds => out.push(ValuatedMatroid::from_table_unchecked(t.as_ref().clone())?),
            Verdict::Fails(violation) => {
                return Ok(Err(QdrViolation::NotValuatedMatroid { vertex, violation }))
            }
        }
    }
    Ok(Ok(out))
}

/// Membership in the quiver Dressian: every table is a valuated matroid
/// and every tropical quiver Plücker relation vanishes.
pub fn qdr_membership<T: AsRef<BasisTable>>(
    rep: &QuiverRepresentation,
    tuple: &[T],
) -> Result<Verdict<QdrViolation>> {
    check_tuple(rep, tuple)?;
    if let Err(v) = matroids_of(tuple)? {
        return Ok(Verdict::Fails(v));
    }
    let lookup = |var: &PlueckerVar| Some(tuple[var.vertex].as_ref().value(&var.subset).clone());
    for a in 0..rep.maps.len() {
        for relation in generate_quiver_pluecker(rep, a)?.tropical {
            let values = relation.polynomial.evaluate(lookup)?;
            if !values.is_empty() && !min_attained_twice(&values)? {
                return Ok(Verdict::Fails(QdrViolation::Relation { relation, values }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A cocircuit whose image is not in the target space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentViolation {
    pub cocircuit: TropVector,
    pub image: TropVector,
    pub circuit: TropVector,
}

/// Whether `A ⊙ trop(μ) ⊆ trop(ν)`, tested on the images of the cocircuits
/// of `μ`, which generate `trop(μ)`. All-`∞` images are skipped.
pub fn containment_check(
    a: &TropMatrix,
    mu: &ValuatedMatroid,
    nu: &ValuatedMatroid,
) -> Result<Verdict<ContainmentViolation>> {
    if a.cols() != mu.n() || a.rows() != nu.n() {
        return Err(Error::Shape(format!(
            "a {}x{} matrix cannot map [{}] to [{}]",
            a.rows(),
            a.cols(),
            mu.n(),
            nu.n()
        )));
    }
    for cocircuit in mu.cocircuits() {
        let image = a.mul_vec(&cocircuit)?;
        if image.is_all_inf() {
            continue;
        }
        if let Verdict::Fails(circuit) = nu.tls_membership(&image)? {
            return Ok(Verdict::Fails(ContainmentViolation {
                cocircuit,
                image,
                circuit,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Dressian membership decided arrow by arrow through
/// [`containment_check`] instead of the relations.
pub fn qdr_membership_via_containment<T: AsRef<BasisTable>>(
    rep: &QuiverRepresentation,
    tuple: &[T],
) -> Result<Verdict<QdrViolation>> {
    check_tuple(rep, tuple)?;
    let matroids = match matroids_of(tuple)? {
        Ok(m) => m,
        Err(v) => return Ok(Verdict::Fails(v)),
    };
    for (a, arrow) in rep.quiver.arrows.iter().enumerate() {
        let verdict = containment_check(
            rep.trop_matrix(a),
            &matroids[arrow.src],
            &matroids[arrow.dst],
        )?;
        if let Verdict::Fails(violation) = verdict {
            return Ok(Verdict::Fails(QdrViolation::Containment {
                arrow: a,
                violation,
            }));
        }
    }
    Ok(Verdict::Holds)
}

fn check_candidate(rep: &QuiverRepresentation, candidate: &[FieldMatrix]) -> Result<()> {
    if candidate.len() != rep.dims.len() {
        return Err(Error::Usage(format!(
            "{} subspaces given for {} vertices",
            candidate.len(),
            rep.dims.len()
        )));
    }
    for (v, m) in candidate.iter().enumerate() {
        if m.rows() != rep.dims[v] || m.cols() != rep.n {
            return Err(Error::Usage(format!(
                "vertex {:?} needs a {}x{} matrix, got {}x{}",
                rep.vertex_name(v),
                rep.dims[v],
                rep.n,
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

/// Whether the row spaces `N_v` of `candidate` satisfy `M_α N_{s(α)} ⊆
/// N_{t(α)}` for every arrow; fails with the first violating arrow.
pub fn is_subrepresentation(
    rep: &QuiverRepresentation,
    candidate: &[FieldMatrix],
) -> Result<Verdict<usize>> {
    check_candidate(rep, candidate)?;
    for (a, arrow) in rep.quiver.arrows.iter().enumerate() {
        let m = rep.require_field(a)?;
        if !classical_containment(m, &candidate[arrow.src], &candidate[arrow.dst])? {
            return Ok(Verdict::Fails(a));
        }
    }
    Ok(Verdict::Holds)
}

/// Why a supplied witness does not realize a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessViolation {
    NotSubrepresentation {
        arrow: usize,
    },
    RankDeficient {
        vertex: usize,
    },
    ValuationMismatch {
        vertex: usize,
        expected: BasisTable,
        found: BasisTable,
    },
}

/// Checks a realization witness for a point of the tropicalized quiver
/// Grassmannian: the witness is a subrepresentation and its Plücker
/// valuations reproduce the tuple projectively. A failure only says that
/// this witness does not work.
pub fn trop_qgr_witness_check<T: AsRef<BasisTable>>(
    rep: &QuiverRepresentation,
    tuple: &[T],
    witness: &[FieldMatrix],
) -> Result<Verdict<WitnessViolation>> {
    check_tuple(rep, tuple)?;
    if let Verdict::Fails(arrow) = is_subrepresentation(rep, witness)? {
        return Ok(Verdict::Fails(WitnessViolation::NotSubrepresentation {
            arrow,
        }));
    }
    for (vertex, (m, expected)) in witness.iter().zip(tuple).enumerate() {
        let found = match pluecker_valuations(m) {
            Ok(mu) => mu.into_table(),
            Err(Error::NotRealization(_)) => {
                return Ok(Verdict::Fails(WitnessViolation::RankDeficient { vertex }))
            }
            Err(e) => return Err(e),
        };
        let expected = expected.as_ref().normalized()?;
        if found != expected {
            return Ok(Verdict::Fails(WitnessViolation::ValuationMismatch {
                vertex,
                expected,
                found,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Why a sequence of matroids is not a valuated flag matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagViolation {
    NotValuatedMatroid {
        index: usize,
        violation: ExchangeViolation,
    },
    Quotient {
        index: usize,
        violation: ExchangeViolation,
    },
}

/// Consecutive quotient checks `μ_k ↞ μ_{k+1}` for strictly increasing
/// ranks; `index` in a violation is the position `k` of the smaller rank.
pub fn flag_mode_check<T: AsRef<BasisTable>>(tuple: &[T]) -> Result<Verdict<FlagViolation>> {
    let tables = tuple.iter().map(AsRef::as_ref).collect_vec();
    if let Some(w) = tables.windows(2).find(|w| w[0].n() != w[1].n()) {
        return Err(Error::Shape(format!(
            "ground sets [{}] and [{}] differ",
            w[0].n(),
            w[1].n()
        )));
    }
    if tables.windows(2).any(|w| w[0].r() >= w[1].r()) {
        return Err(Error::Usage(
            "flag ranks must be strictly increasing".into(),
        ));
    }
    let matroids = match matroids_of(tuple)? {
        Ok(m) => m,
        Err(QdrViolation::NotValuatedMatroid { vertex, violation }) => {
            return Ok(Verdict::Fails(FlagViolation::NotValuatedMatroid {
                index: vertex,
                violation,
            }))
        }
        Err(_) => unreachable!("only matroid violations are produced here"),
    };
    for (index, w) in matroids.windows(2).enumerate() {
        if let Verdict::Fails(violation) = w[0].quotient_check(&w[1])? {
            return Ok(Verdict::Fails(FlagViolation::Quotient { index, violation }));
        }
    }
    Ok(Verdict::Holds)
}

impl fmt::Display for RelationOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationOrigin::GrassmannPluecker {
                vertex,
                i_set,
                j_set,
            } => {
                write!(f, "GP(vertex {}, I={i_set}, J={j_set})", vertex + 1)
            }
            RelationOrigin::Arrow {
                arrow,
                i_set,
                j_set,
            } => {
                write!(f, "arrow {} (I={i_set}, J={j_set})", arrow + 1)
            }
        }
    }
}
