//! The tropical semifield `(ℚ ∪ {∞}, min, +)` with exact rational arithmetic.
//!
//! Tropical addition `a ⊕ b` is the minimum and tropical multiplication
//! `a ⊙ b` is ordinary addition. `∞` is the neutral element of `⊕` and
//! absorbs under `⊙`; `0` is the neutral element of `⊙`.
//!
//! ```
//! use tropquiver::trop::{TropValue, INF};
//!
//! let a = TropValue::from(3);
//! let b = TropValue::ratio(1, 2);
//! assert_eq!(a.oplus(&b), b);
//! assert_eq!(&a + &b, TropValue::ratio(7, 2));
//! assert_eq!(&a + &INF, INF);
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of the tropical semifield: an exact rational or `∞`.
///
/// The derived order puts every finite value below `Inf`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropValue {
    Finite(BigRational),
    #[default]
    Inf,
}

pub const INF: TropValue = TropValue::Inf;

impl TropValue {
    pub fn zero() -> Self {
        TropValue::Finite(BigRational::zero())
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        TropValue::Finite(BigRational::new(numer.into(), denom.into()))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, TropValue::Inf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            TropValue::Finite(q) => Some(q),
            TropValue::Inf => None,
        }
    }

    /// Tropical sum `self ⊕ other`.
    pub fn oplus(&self, other: &TropValue) -> TropValue {
        std::cmp::min(self, other).clone()
    }

    /// `self ⊙ c` for a finite scalar `c`.
    pub fn shift(&self, c: &BigRational) -> TropValue {
        match self {
            TropValue::Finite(q) => TropValue::Finite(q + c),
            TropValue::Inf => TropValue::Inf,
        }
    }
}

impl From<BigRational> for TropValue {
    fn from(q: BigRational) -> Self {
        TropValue::Finite(q)
    }
}

impl From<i32> for TropValue {
    fn from(v: i32) -> Self {
        TropValue::Finite(BigRational::from_integer(v.into()))
    }
}

impl From<i64> for TropValue {
    fn from(v: i64) -> Self {
        TropValue::Finite(BigRational::from_integer(v.into()))
    }
}

impl<'a> Add<&'a TropValue> for &'a TropValue {
    type Output = TropValue;

    fn add(self, rhs: &'a TropValue) -> TropValue {
        match (self, rhs) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::Inf,
        }
    }
}

impl Add for TropValue {
    type Output = TropValue;

    fn add(self, rhs: TropValue) -> TropValue {
        &self + &rhs
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Inf => f.write_str("inf"),
            TropValue::Finite(q) => write!(f, "{}", format_rational(q)),
        }
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

impl FromStr for TropValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "∞" => Ok(TropValue::Inf),
            other => parse_rational(other).map(TropValue::Finite),
        }
    }
}

impl Serialize for TropValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TropValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(TropValue::from(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Serde form of an exact rational: a `"p/q"` string, or a JSON integer on
/// input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RationalRepr(pub BigRational);

impl Serialize for RationalRepr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalRepr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match TropValue::deserialize(deserializer)? {
            TropValue::Finite(q) => Ok(RationalRepr(q)),
            TropValue::Inf => Err(serde::de::Error::custom(
                "expected a finite rational, got inf",
            )),
        }
    }
}

/// A vector over the tropical semifield.
///
/// Whether a vector stands for an affine point of `𝕋ⁿ` or a point of the
/// tropical projective space is decided by the operation consuming it;
/// projective points are compared through [`TropVector::normalized`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TropVector(Vec<TropValue>);

impl TropVector {
    pub fn new(entries: Vec<TropValue>) -> Self {
        TropVector(entries)
    }

    pub fn all_inf(len: usize) -> Self {
        TropVector(vec![TropValue::Inf; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TropValue> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[TropValue] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<TropValue> {
        self.0
    }

    pub fn is_all_inf(&self) -> bool {
        self.0.iter().all(TropValue::is_inf)
    }

    /// Indices of the finite coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i].is_finite()).collect()
    }

    /// Tropical scalar multiple `λ ⊙ self`.
    pub fn scale(&self, lambda: &BigRational) -> TropVector {
        TropVector(self.0.iter().map(|x| x.shift(lambda)).collect())
    }

    /// Coordinatewise minimum `self ⊕ other`.
    pub fn oplus(&self, other: &TropVector) -> Result<TropVector> {
        check_len(self.len(), other.len())?;
        Ok(TropVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        ))
    }

    /// Canonical representative of the projective class: the minimum finite
    /// entry becomes `0`.
    pub fn normalized(&self) -> Result<TropVector> {
        projective_normalize(self)
    }

    pub fn projectively_eq(&self, other: &TropVector) -> bool {
        match (self.normalized(), other.normalized()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => self.len() == other.len(),
            _ => false,
        }
    }
}

impl Index<usize> for TropVector {
    type Output = TropValue;

    fn index(&self, i: usize) -> &TropValue {
        &self.0[i]
    }
}

impl FromIterator<TropValue> for TropVector {
    fn from_iter<I: IntoIterator<Item = TropValue>>(iter: I) -> Self {
        TropVector(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a TropVector {
    type Item = &'a TropValue;
    type IntoIter = std::slice::Iter<'a, TropValue>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Builds a [`TropVector`] from integers, rationals or [`INF`].
///
/// ```
/// use tropquiver::{trop_vec, trop::INF};
/// let v = trop_vec![0, -2, INF];
/// assert_eq!(v.to_string(), "(0,-2,inf)");
/// ```
#[macro_export]
macro_rules! trop_vec {
    ($($x:expr),* $(,)?) => {
        $crate::trop::TropVector::new(vec![$($crate::trop::TropValue::from($x)),*])
    };
}

/// Builds a [`TropMatrix`] from rows; panics on ragged input.
#[macro_export]
macro_rules! trop_mat {
    ($([$($x:expr),* $(,)?]),* $(,)?) => {
        $crate::trop::TropMatrix::from_rows(vec![$(vec![$($crate::trop::TropValue::from($x)),*]),*])
            .expect("rectangular tropical matrix")
    };
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Shape(format!("vector lengths {a} and {b} differ")));
    }
    Ok(())
}

/// A dense matrix over the tropical semifield, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    data: Vec<TropValue>,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<TropValue>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(
                "tropical matrix must have positive dimensions".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(TropMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<TropValue>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Shape("ragged rows in tropical matrix".into()));
        }
        TropMatrix::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    /// `0` on the diagonal, `∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        let data = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    TropValue::zero()
                } else {
                    TropValue::Inf
                }
            })
            .collect();
        TropMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TropValue {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[TropValue] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<TropValue>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Tropical product `self ⊙ v`.
    pub fn mul_vec(&self, v: &TropVector) -> Result<TropVector> {
        trop_matvec(self, v)
    }

    /// Tropical matrix product `self ⊙ other`.
    pub fn mul(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let entry = (0..self.cols)
                    .map(|j| self.get(i, j) + other.get(j, k))
                    .min()
                    .unwrap_or(TropValue::Inf);
                data.push(entry);
            }
        }
        TropMatrix::new(self.rows, other.cols, data)
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

/// `(A ⊙ v)_i = min_j (A_ij + v_j)`.
pub fn trop_matvec(a: &TropMatrix, v: &TropVector) -> Result<TropVector> {
    if a.cols() != v.len() {
        return Err(Error::Shape(format!(
            "matrix has {} columns but vector has length {}",
            a.cols(),
            v.len()
        )));
    }
    Ok((0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .map(|(aij, vj)| aij + vj)
                .min()
                .unwrap_or(TropValue::Inf)
        })
        .collect())
}

/// True iff the minimum of `terms` is `∞` or is attained at two or more
/// positions.
pub fn min_attained_twice(terms: &[TropValue]) -> Result<bool> {
    let min = terms
        .iter()
        .min()
        .ok_or_else(|| Error::Usage("minimum of an empty list of terms".into()))?;
    if min.is_inf() {
        return Ok(true);
    }
    Ok(terms.iter().filter(|t| *t == min).count() >= 2)
}

/// Subtracts the minimum finite entry from every finite entry.
pub fn projective_normalize(v: &TropVector) -> Result<TropVector> {
    let min = v
        .iter()
        .filter_map(TropValue::as_finite)
        .min()
        .ok_or(Error::DegeneratePoint)?;
    let shift = -min;
    Ok(v.scale(&shift))
}

/// Outcome of [`trop_span_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMembership {
    pub member: bool,
    /// Principal coefficient per generator; `None` marks an excluded generator.
    pub coefficients: Vec<Option<BigRational>>,
    /// `⊕ λ*_C ⊙ C` over the usable generators.
    pub combination: TropVector,
    /// First coordinate where the combination differs from the target.
    pub mismatch: Option<usize>,
}

/// Decides whether `x` is a finite tropical combination of `generators`.
///
/// The principal coefficient `λ*_C = max_i (x_i − C_i)` is the least scalar
/// with `λ ⊙ C ≥ x`; the combination of all principal multiples is the
/// largest combination bounded below by `x`, so `x` lies in the span exactly
/// when it is reproduced. A generator that is finite where `x` is `∞` would
/// need an infinite coefficient and is excluded.
pub fn trop_span_membership(generators: &[TropVector], x: &TropVector) -> Result<SpanMembership> {
    if generators.is_empty() {
        return Err(Error::Usage(
            "tropical span of an empty generator set".into(),
        ));
    }
    for g in generators {
        check_len(g.len(), x.len())?;
    }
    let mut combination = TropVector::all_inf(x.len());
    let mut coefficients = Vec::with_capacity(generators.len());
    for g in generators {
        let mut lambda: Option<BigRational> = None;
        let mut usable = !g.is_all_inf();
        for (gi, xi) in g.iter().zip(x) {
            match (gi, xi) {
                (TropValue::Finite(_), TropValue::Inf) => usable = false,
                (TropValue::Finite(c), TropValue::Finite(t)) => {
                    let d = t - c;
                    if lambda.as_ref().map_or(true, |l| d > *l) {
                        lambda = Some(d);
                    }
                }
                _ => {}
            }
        }
        let lambda = if usable { lambda } else { None };
        if let Some(l) = &lambda {
            combination = combination.oplus(&g.scale(l))?;
        }
        coefficients.push(lambda);
    }
    let mismatch = (0..x.len()).find(|&i| combination[i] != x[i]);
    Ok(SpanMembership {
        member: mismatch.is_none(),
        coefficients,
        combination,
        mismatch,
    })
}

/// One term `c ⊙ x^u` of a tropical polynomial; the monomial is a sorted
/// multiset of variable labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropTerm<L> {
    pub coefficient: TropValue,
    pub monomial: Vec<L>,
}

/// A tropical polynomial over opaque variable labels.
///
/// Terms with equal monomials are merged by `⊕` and terms with coefficient
/// `∞` are dropped, so no two stored terms share a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPolynomial<L> {
    terms: Vec<TropTerm<L>>,
}

impl<L: Ord + Clone + fmt::Debug> TropPolynomial<L> {
    pub fn new(terms: impl IntoIterator<Item = TropTerm<L>>) -> Self {
        let mut merged: BTreeMap<Vec<L>, TropValue> = BTreeMap::new();
        for TropTerm {
            coefficient,
            mut monomial,
        } in terms
        {
            if coefficient.is_inf() {
                continue;
            }
            monomial.sort();
            merged
                .entry(monomial)
                .and_modify(|c| *c = c.oplus(&coefficient))
                .or_insert(coefficient);
        }
        TropPolynomial {
            terms: merged
                .into_iter()
                .map(|(monomial, coefficient)| TropTerm {
                    coefficient,
                    monomial,
                })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[TropTerm<L>] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value of every term under `assignment`, in term order.
    pub fn evaluate<F>(&self, assignment: F) -> Result<Vec<TropValue>>
    where
        F: Fn(&L) -> Option<TropValue>,
    {
        self.terms
            .iter()
            .map(|term| {
                term.monomial
                    .iter()
                    .try_fold(term.coefficient.clone(), |acc, label| {
                        let value = assignment(label).ok_or_else(|| {
                            Error::Usage(format!("variable {label:?} has no assigned value"))
                        })?;
                        Ok(&acc + &value)
                    })
            })
            .collect()
    }

    /// Whether the assignment lies on the tropical hypersurface. The empty
    /// polynomial has minimum `∞` and therefore vanishes.
    pub fn vanishes<F>(&self, assignment: F) -> Result<bool>
    where
        F: Fn(&L) -> Option<TropValue>,
    {
        let values = self.evaluate(assignment)?;
        if values.is_empty() {
            return Ok(true);
        }
        min_attained_twice(&values)
    }
}

/// Convenience wrapper for [`TropPolynomial::vanishes`] with a map assignment.
pub fn trop_poly_vanishes<L: Ord + Clone + fmt::Debug>(
    poly: &TropPolynomial<L>,
    assignment: &BTreeMap<L, TropValue>,
) -> Result<bool> {
    poly.vanishes(|label| assignment.get(label).cloned())
}
