//! Finite Puiseux polynomials `Σ c_e t^e` with rational coefficients and
//! rational exponents, and matrices over them.
//!
//! Only ring operations are provided. Determinants and ranks are computed
//! from minors, so nothing ever needs division.
//!
//! ```
//! use tropquiver::puiseux::{PuiseuxElement as P, FieldMatrix, det};
//! use tropquiver::trop::TropValue;
//!
//! let one_plus_t = P::one() + P::t();
//! assert_eq!(one_plus_t.valuation(), TropValue::zero());
//!
//! let m = FieldMatrix::from_rows(vec![
//!     vec![P::one(), P::one()],
//!     vec![P::one(), one_plus_t],
//! ]).unwrap();
//! assert_eq!(det(&m).unwrap(), P::t());
//! ```

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matroid::{BasisTable, ValuatedMatroid};
use crate::subset::Subset;
use crate::trop::{format_rational, RationalRepr, TropMatrix, TropValue};

/// Largest square minor evaluated by [`det`].
pub const MAX_DET: usize = 6;
/// Largest long side accepted by [`rank_via_minors`].
pub const MAX_RANK_SIDE: usize = 8;

/// A finite Puiseux polynomial, stored as exponent ↦ nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PuiseuxElement {
    terms: BTreeMap<BigRational, BigRational>,
}

impl PuiseuxElement {
    pub fn zero() -> Self {
        PuiseuxElement::default()
    }

    pub fn one() -> Self {
        PuiseuxElement::constant(BigRational::one())
    }

    /// The uniformizer `t`.
    pub fn t() -> Self {
        PuiseuxElement::monomial(BigRational::one(), BigRational::one())
    }

    /// `t^(numer/denom)`.
    pub fn t_pow(numer: i64, denom: i64) -> Self {
        PuiseuxElement::monomial(
            BigRational::one(),
            BigRational::new(numer.into(), denom.into()),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        PuiseuxElement::monomial(c, BigRational::zero())
    }

    /// `c · t^e`.
    pub fn monomial(c: BigRational, e: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        PuiseuxElement { terms }
    }

    /// Sums `(coefficient, exponent)` pairs, merging repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, BigRational)>) -> Self {
        let mut out = PuiseuxElement::zero();
        for (c, e) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: BigRational, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    /// The least exponent present; `∞` for zero.
    pub fn valuation(&self) -> TropValue {
        self.terms
            .keys()
            .next()
            .map_or(TropValue::Inf, |e| TropValue::Finite(e.clone()))
    }

    /// Coefficient of the lowest-order term.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next()
    }
}

pub fn valuation(p: &PuiseuxElement) -> TropValue {
    p.valuation()
}

impl From<i64> for PuiseuxElement {
    fn from(c: i64) -> Self {
        PuiseuxElement::constant(BigRational::from_integer(c.into()))
    }
}

impl From<i32> for PuiseuxElement {
    fn from(c: i32) -> Self {
        PuiseuxElement::from(i64::from(c))
    }
}

impl From<BigRational> for PuiseuxElement {
    fn from(c: BigRational) -> Self {
        PuiseuxElement::constant(c)
    }
}

impl<'a> Add<&'a PuiseuxElement> for &'a PuiseuxElement {
    type Output = PuiseuxElement;

    fn add(self, rhs: &'a PuiseuxElement) -> PuiseuxElement {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PuiseuxElement> for &'a PuiseuxElement {
    type Output = PuiseuxElement;

    fn sub(self, rhs: &'a PuiseuxElement) -> PuiseuxElement {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a PuiseuxElement> for &'a PuiseuxElement {
    type Output = PuiseuxElement;

    fn mul(self, rhs: &'a PuiseuxElement) -> PuiseuxElement {
        let mut out = PuiseuxElement::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &PuiseuxElement {
    type Output = PuiseuxElement;

    fn neg(self) -> PuiseuxElement {
        PuiseuxElement {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for PuiseuxElement {
            type Output = PuiseuxElement;
            fn $method(self, rhs: PuiseuxElement) -> PuiseuxElement {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for PuiseuxElement {
    type Output = PuiseuxElement;

    fn neg(self) -> PuiseuxElement {
        -&self
    }
}

impl fmt::Display for PuiseuxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            if e.is_zero() {
                f.write_str(&format_rational(&abs))?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            f.write_str("t")?;
            if e.is_one() {
                continue;
            }
            if e.is_integer() {
                write!(f, "^{}", e.numer())?;
            } else {
                write!(f, "^({})", format_rational(e))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    c: RationalRepr,
    e: RationalRepr,
}

impl Serialize for PuiseuxElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(e, c)| TermRepr {
            c: RationalRepr(c.clone()),
            e: RationalRepr(e.clone()),
        }))
    }
}

impl<'de> Deserialize<'de> for PuiseuxElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        Ok(PuiseuxElement::from_terms(
            terms.into_iter().map(|t| (t.c.0, t.e.0)),
        ))
    }
}

/// A dense matrix over finite Puiseux polynomials. Zero rows or columns are
/// allowed, so that the zero subspace has a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<PuiseuxElement>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<PuiseuxElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(FieldMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<PuiseuxElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        FieldMatrix::from_rows_with_cols(rows, cols)
    }

    /// Like [`FieldMatrix::from_rows`], with the column count fixed up front
    /// so that an empty row list still has a width.
    pub fn from_rows_with_cols(rows: Vec<Vec<PuiseuxElement>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("every row must have {cols} entries")));
        }
        let n_rows = rows.len();
        FieldMatrix::new(n_rows, cols, rows.into_iter().flatten().collect())
    }

    /// Integer matrix literal.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        FieldMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| PuiseuxElement::from(c)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![PuiseuxElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        FieldMatrix::diagonal((0..n).map(|_| PuiseuxElement::one()).collect())
    }

    pub fn diagonal(entries: Vec<PuiseuxElement>) -> Self {
        let n = entries.len();
        let mut m = FieldMatrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PuiseuxElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: PuiseuxElement) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[PuiseuxElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<PuiseuxElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(PuiseuxElement::is_zero)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let mut acc = PuiseuxElement::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc = &acc + &(a * other.get(j, k));
                    }
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector given as a slice.
    pub fn mul_vec(&self, v: &[PuiseuxElement]) -> Result<Vec<PuiseuxElement>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "matrix has {} columns but vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(PuiseuxElement::zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect())
    }

    pub fn submatrix(&self, rows: &Subset, cols: &Subset) -> FieldMatrix {
        let data = rows
            .elements()
            .iter()
            .flat_map(|&i| cols.elements().iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        FieldMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn select_columns(&self, cols: &Subset) -> FieldMatrix {
        self.submatrix(&Subset::from_sorted((0..self.rows).collect()), cols)
    }

    /// `self` with the rows of `other` appended.
    pub fn vstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        FieldMatrix::new(self.rows + other.rows, self.cols, data)
    }

    /// Entrywise valuation.
    pub fn valuation(&self) -> Result<TropMatrix> {
        TropMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(PuiseuxElement::valuation).collect(),
        )
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

/// Exact determinant, expanded over column subsets (a memoized Laplace
/// expansion along the rows).
pub fn det(m: &FieldMatrix) -> Result<PuiseuxElement> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n > MAX_DET {
        return Err(Error::Capacity(format!(
            "determinant of size {n} exceeds {MAX_DET}"
        )));
    }
    let mut dp = vec![PuiseuxElement::zero(); 1 << n];
    dp[0] = PuiseuxElement::one();
    for mask in 0usize..(1 << n) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for c in (0..n).filter(|c| mask & (1 << c) == 0) {
            let a = m.get(row, c);
            if a.is_zero() {
                continue;
            }
            // columns already used to the right of c are inversions
            let term = &dp[mask] * a;
            let term = if (mask >> c).count_ones() % 2 == 1 {
                -term
            } else {
                term
            };
            let next = mask | (1 << c);
            dp[next] = &dp[next] + &term;
        }
    }
    Ok(dp.pop().expect("table is nonempty"))
}

/// Size of the largest nonzero minor.
pub fn rank_via_minors(m: &FieldMatrix) -> Result<usize> {
    let (short, long) = (m.rows.min(m.cols), m.rows.max(m.cols));
    if short > MAX_DET || long > MAX_RANK_SIDE {
        return Err(Error::Capacity(format!(
            "rank of a {}x{} matrix exceeds the {MAX_DET}x{MAX_RANK_SIDE} limit",
            m.rows, m.cols
        )));
    }
    let mut rank = 0;
    // once every k-minor vanishes, all larger ones do too
    for k in 1..=short {
        let mut found = false;
        'search: for rows in Subset::all(m.rows, k) {
            for cols in Subset::all(m.cols, k) {
                if !det(&m.submatrix(&rows, &cols))?.is_zero() {
                    found = true;
                    break 'search;
                }
            }
        }
        if !found {
            break;
        }
        rank = k;
    }
    Ok(rank)
}

/// Maximal minors `p_I` of a `d×n` matrix, in lexicographic order of `I`.
pub fn pluecker_coordinates(m: &FieldMatrix) -> Result<Vec<(Subset, PuiseuxElement)>> {
    if m.rows > m.cols {
        return Err(Error::Shape(format!(
            "a {}x{} matrix has no maximal minors of full row size",
            m.rows, m.cols
        )));
    }
    Subset::all(m.cols, m.rows)
        .map(|cols| {
            let p = det(&m.select_columns(&cols))?;
            Ok((cols, p))
        })
        .collect()
}

/// The valuated matroid `I ↦ val(p_I)` of the row space of `m`.
///
/// Full row rank is certified by a nonzero maximal minor.
pub fn pluecker_valuations(m: &FieldMatrix) -> Result<ValuatedMatroid> {
    let coords = pluecker_coordinates(m)?;
    if coords.iter().all(|(_, p)| p.is_zero()) {
        return Err(Error::NotRealization(format!(
            "the {}x{} matrix does not have full row rank",
            m.rows, m.cols
        )));
    }
    let table = BasisTable::from_entries(
        m.cols,
        m.rows,
        coords.into_iter().map(|(s, p)| (s, p.valuation())),
    )?;
    ValuatedMatroid::from_table_unchecked(table)
}

/// Whether `A` maps the row space of `u` into the row space of `v`:
/// appending `A·uₖ` to `v` never raises its rank.
pub fn classical_containment(a: &FieldMatrix, u: &FieldMatrix, v: &FieldMatrix) -> Result<bool> {
    if a.cols != u.cols || a.rows != v.cols {
        return Err(Error::Shape(format!(
            "map is {}x{}, source rows have width {}, target rows have width {}",
            a.rows, a.cols, u.cols, v.cols
        )));
    }
    let base = rank_via_minors(v)?;
    for k in 0..u.rows {
        let image = a.mul_vec(u.row(k))?;
        let stacked = v.vstack(&FieldMatrix::new(1, a.rows, image)?)?;
        if rank_via_minors(&stacked)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trop::INF;

    type P = PuiseuxElement;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn valuation_examples() {
        assert_eq!((P::one() + P::t()).valuation(), TropValue::zero());
        assert_eq!(P::zero().valuation(), INF);
        let p = P::monomial(q(3, 1), q(1, 2)) - P::t();
        assert_eq!(p.valuation(), TropValue::ratio(1, 2));
        assert_eq!(p.to_string(), "3*t^(1/2) - t");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = P::one() + P::t();
        assert!((&p - &p).is_zero());
        assert_eq!((&p * &p).to_string(), "1 + 2*t + t^2");
        assert_eq!((-P::t_pow(-2, 1)).to_string(), "-t^-2");
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&FieldMatrix::identity(2)).unwrap(), P::one());
        let diag = FieldMatrix::diagonal(vec![P::one(), P::one() + P::t()]);
        assert_eq!(det(&diag).unwrap(), P::one() + P::t());
        let m = FieldMatrix::from_rows(vec![
            vec![P::one(), P::one()],
            vec![P::one(), P::one() + P::t()],
        ])
        .unwrap();
        assert_eq!(det(&m).unwrap(), P::t());
        // a permutation matrix of an odd permutation
        let swap = FieldMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(det(&swap).unwrap(), P::from(-1));
        assert_eq!(det(&FieldMatrix::zeros(0, 0)).unwrap(), P::one());
        assert!(matches!(
            det(&FieldMatrix::identity(7)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_via_minors(&FieldMatrix::zeros(2, 3)).unwrap(), 0);
        assert_eq!(rank_via_minors(&FieldMatrix::identity(3)).unwrap(), 3);
        let m =
            FieldMatrix::from_rows(vec![vec![P::one(), P::one()], vec![P::t(), P::t()]]).unwrap();
        assert_eq!(rank_via_minors(&m).unwrap(), 1);
        assert_eq!(rank_via_minors(&FieldMatrix::zeros(0, 4)).unwrap(), 0);
        assert!(matches!(
            rank_via_minors(&FieldMatrix::zeros(2, 9)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn pluecker_examples() {
        let m = FieldMatrix::from_ints(&[&[1, 0, -1], &[0, 1, 1]]).unwrap();
        assert_eq!(
            pluecker_valuations(&m).unwrap(),
            ValuatedMatroid::uniform(3, 2).unwrap()
        );

        let d = FieldMatrix::diagonal(vec![P::one(), P::one() + P::t()]);
        let mu = pluecker_valuations(&d).unwrap();
        assert_eq!(mu.table().to_string(), "{{1,2}: 0}");

        let m = FieldMatrix::from_rows(vec![
            vec![P::one(), P::zero(), P::t()],
            vec![P::zero(), P::one(), P::t()],
        ])
        .unwrap();
        // p12 = 1, p13 = det[[1, t], [0, t]] = t, p23 = det[[0, t], [1, t]] = -t
        let coords = pluecker_coordinates(&m).unwrap();
        assert_eq!(coords[1].1, P::t());
        assert_eq!(coords[2].1, -P::t());
        assert_eq!(
            pluecker_valuations(&m).unwrap().table().to_string(),
            "{{1,2}: 0, {1,3}: 1, {2,3}: 1}"
        );

        let flat = FieldMatrix::from_ints(&[&[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(
            pluecker_valuations(&flat),
            Err(Error::NotRealization(_))
        ));
    }

    #[test]
    fn containment_examples() {
        let id = FieldMatrix::identity(3);
        let u = FieldMatrix::from_ints(&[&[1, 2, 0]]).unwrap();
        assert!(classical_containment(&id, &u, &u).unwrap());

        let a = FieldMatrix::diagonal(vec![P::one(), P::one() + P::t()]);
        let e1 = FieldMatrix::from_ints(&[&[1, 0]]).unwrap();
        assert!(classical_containment(&a, &e1, &e1).unwrap());
        let diag = FieldMatrix::from_ints(&[&[1, 1]]).unwrap();
        assert!(!classical_containment(&a, &diag, &diag).unwrap());
    }

    #[test]
    fn json_terms() {
        let p: P = serde_json::from_str(r#"[{"c": "3", "e": "1/2"}, {"c": -1, "e": 1}]"#).unwrap();
        assert_eq!(p, P::monomial(q(3, 1), q(1, 2)) - P::t());
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"[{"c":"3","e":"1/2"},{"c":"-1","e":"1"}]"#
        );
        let zero: P = serde_json::from_str("[]").unwrap();
        assert!(zero.is_zero());
    }
}
