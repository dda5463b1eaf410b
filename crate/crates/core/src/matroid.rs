//! Valuated matroids on a ground set `{0, …, n−1}`: basis-value tables, the
//! exchange axiom, circuits and cocircuits, tropical linear spaces,
//! quotients and minors.
//!
//! ```
//! use tropquiver::matroid::ValuatedMatroid;
//! use tropquiver::trop_vec;
//!
//! let line = ValuatedMatroid::uniform(3, 2).unwrap();
//! assert_eq!(line.circuits(), vec![trop_vec![0, 0, 0]]);
//! assert!(line.tls_membership(&trop_vec![0, 0, 0]).unwrap().holds());
//! assert!(!line.tls_membership(&trop_vec![0, 1, 2]).unwrap().holds());
//! ```

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::{binomial, Subset};
use crate::trop::{min_attained_twice, TropValue, TropVector};
use crate::verdict::Verdict;

/// Largest supported ground set, counting an added loop.
pub const MAX_GROUND_SET: usize = 13;

/// A candidate basis-value table `binom([n], r) → 𝕋`, not yet known to be a
/// valuated matroid. Stored densely in colex order; absent entries are `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisTable {
    n: usize,
    r: usize,
    values: Vec<TropValue>,
}

impl BasisTable {
    /// The all-`∞` table.
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::Capacity(format!(
                "ground set of size {n} exceeds the limit {MAX_GROUND_SET}"
            )));
        }
        if r > n {
            return Err(Error::Usage(format!(
                "rank {r} exceeds ground set size {n}"
            )));
        }
        Ok(BasisTable {
            n,
            r,
            values: vec![TropValue::Inf; binomial(n, r)],
        })
    }

    pub fn from_fn(n: usize, r: usize, mut f: impl FnMut(&Subset) -> TropValue) -> Result<Self> {
        let mut table = BasisTable::new(n, r)?;
        for s in Subset::all(n, r) {
            let idx = s.colex_rank();
            table.values[idx] = f(&s);
        }
        Ok(table)
    }

    pub fn from_entries(
        n: usize,
        r: usize,
        entries: impl IntoIterator<Item = (Subset, TropValue)>,
    ) -> Result<Self> {
        let mut table = BasisTable::new(n, r)?;
        let mut seen = vec![false; table.values.len()];
        for (s, v) in entries {
            table.check_subset(&s)?;
            let idx = s.colex_rank();
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::Usage(format!("subset {s} listed twice")));
            }
            table.values[idx] = v;
        }
        Ok(table)
    }

    fn check_subset(&self, s: &Subset) -> Result<()> {
        if s.len() != self.r {
            return Err(Error::Shape(format!(
                "subset {s} does not have size {}",
                self.r
            )));
        }
        if s.max_element().is_some_and(|m| m >= self.n) {
            return Err(Error::Shape(format!(
                "subset {s} is not inside [{}]",
                self.n
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Value of an `r`-subset. Panics if `s` has the wrong size or leaves the
    /// ground set.
    pub fn value(&self, s: &Subset) -> &TropValue {
        debug_assert!(self.check_subset(s).is_ok(), "subset {s} outside the table");
        &self.values[s.colex_rank()]
    }

    pub fn set(&mut self, s: &Subset, v: TropValue) -> Result<()> {
        self.check_subset(s)?;
        let idx = s.colex_rank();
        self.values[idx] = v;
        Ok(())
    }

    /// All `(subset, value)` pairs in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (Subset, &TropValue)> + '_ {
        Subset::all(self.n, self.r).map(move |s| {
            let v = &self.values[s.colex_rank()];
            (s, v)
        })
    }

    /// Subsets with finite value, in lexicographic order.
    pub fn support(&self) -> Vec<Subset> {
        self.entries()
            .filter(|(_, v)| v.is_finite())
            .map(|(s, _)| s)
            .collect()
    }

    /// Shifts all finite values so that the smallest becomes `0`.
    pub fn normalized(&self) -> Result<BasisTable> {
        let min = self
            .values
            .iter()
            .filter_map(TropValue::as_finite)
            .min()
            .ok_or(Error::EmptySupport)?;
        let shift = -min;
        Ok(BasisTable {
            n: self.n,
            r: self.r,
            values: self.values.iter().map(|v| v.shift(&shift)).collect(),
        })
    }

    pub fn projectively_eq(&self, other: &BasisTable) -> bool {
        self.n == other.n
            && self.r == other.r
            && match (self.normalized(), other.normalized()) {
                (Ok(a), Ok(b)) => a == b,
                (Err(_), Err(_)) => true,
                _ => false,
            }
    }
}

impl AsRef<BasisTable> for BasisTable {
    fn as_ref(&self) -> &BasisTable {
        self
    }
}

impl fmt::Display for BasisTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (s, v) in self.entries().filter(|(_, v)| v.is_finite()) {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{s}: {v}")?;
        }
        f.write_str("}")
    }
}

/// A failing instance `(I, J, i)` of the exchange or quotient inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeViolation {
    pub first: Subset,
    pub second: Subset,
    pub element: usize,
}

impl fmt::Display for ExchangeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "I={}, J={}, i={}",
            self.first,
            self.second,
            self.element + 1
        )
    }
}

impl Serialize for ExchangeViolation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExchangeViolation", 3)?;
        s.serialize_field("I", &self.first)?;
        s.serialize_field("J", &self.second)?;
        s.serialize_field("i", &(self.element + 1))?;
        s.end()
    }
}

/// For every finite `μ(I)`, `ν(J)` and `i ∈ I∖J`, looks for `j ∈ J∖I` with
/// `μ(I) + ν(J) ≥ μ(I−i+j) + ν(J−j+i)`. Returns the lexicographically first
/// triple without such a `j`.
fn exchange_between(mu: &BasisTable, nu: &BasisTable) -> Option<ExchangeViolation> {
    let nu_support = nu.support();
    for big_i in mu.support() {
        for big_j in &nu_support {
            let lhs = mu.value(&big_i) + nu.value(big_j);
            for i in big_i.difference(big_j) {
                let ok = big_j.difference(&big_i).any(|j| {
                    let left = big_i.exchange(i, j).expect("j is outside I");
                    let right = big_j.exchange(j, i).expect("i is outside J");
                    lhs >= mu.value(&left) + nu.value(&right)
                });
                if !ok {
                    return Some(ExchangeViolation {
                        first: big_i.clone(),
                        second: big_j.clone(),
                        element: i,
                    });
                }
            }
        }
    }
    None
}

/// Brute-force check of the valuated exchange axiom.
///
/// An all-`∞` table is not a point of any Dressian and raises
/// [`Error::EmptySupport`].
pub fn is_valuated_matroid(table: &BasisTable) -> Result<Verdict<ExchangeViolation>> {
    if table.values.iter().all(TropValue::is_inf) {
        return Err(Error::EmptySupport);
    }
    Ok(exchange_between(table, table).into())
}

/// A basis-value table known to satisfy the exchange axiom, stored with
/// minimum finite value `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuatedMatroid {
    table: BasisTable,
}

impl ValuatedMatroid {
    pub fn new(table: BasisTable) -> Result<Self> {
        match is_valuated_matroid(&table)? {
            Verdict::Holds => ValuatedMatroid::from_table_unchecked(table),
            Verdict::Fails(v) => Err(Error::NotValuatedMatroid(v)),
        }
    }

    /// For tables that are valuated matroids by construction.
    pub(crate) fn from_table_unchecked(table: BasisTable) -> Result<Self> {
        Ok(ValuatedMatroid {
            table: table.normalized()?,
        })
    }

    /// The trivially valuated uniform matroid `U_{r,n}`.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        ValuatedMatroid::from_table_unchecked(BasisTable::from_fn(n, r, |_| TropValue::zero())?)
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    pub fn rank(&self) -> usize {
        self.table.r
    }

    pub fn table(&self) -> &BasisTable {
        &self.table
    }

    pub fn into_table(self) -> BasisTable {
        self.table
    }

    pub fn value(&self, s: &Subset) -> &TropValue {
        self.table.value(s)
    }

    /// Bases of the underlying matroid.
    pub fn bases(&self) -> Vec<Subset> {
        self.table.support()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.bases().iter().all(|b| !b.contains(e))
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.bases().iter().all(|b| b.contains(e))
    }

    /// Valuated circuits: for each `(r+1)`-subset `I`, the vector with
    /// `C_i = μ(I∖i)` on `I` and `∞` elsewhere. All-`∞` vectors are dropped
    /// and the rest are normalized and deduplicated, in lexicographic order
    /// of `I`.
    pub fn circuits(&self) -> Vec<TropVector> {
        let n = self.n();
        collect_distinct(Subset::all(n, self.rank() + 1).map(|big_i| {
            (0..n)
                .map(|i| match big_i.without(i) {
                    Some(rest) => self.value(&rest).clone(),
                    None => TropValue::Inf,
                })
                .collect()
        }))
    }

    /// Valuated cocircuits: for each `(r−1)`-subset `I`, the vector with
    /// `C*_i = μ(I∪i)` off `I` and `∞` on `I`.
    pub fn cocircuits(&self) -> Vec<TropVector> {
        let n = self.n();
        let Some(k) = self.rank().checked_sub(1) else {
            return Vec::new();
        };
        collect_distinct(Subset::all(n, k).map(|big_i| {
            (0..n)
                .map(|i| match big_i.with(i) {
                    Some(s) => self.value(&s).clone(),
                    None => TropValue::Inf,
                })
                .collect()
        }))
    }

    /// Whether `x` lies in the tropical linear space, i.e. every circuit
    /// form `min_i (C_i + x_i)` is attained twice. Fails with the first
    /// violating circuit.
    pub fn tls_membership(&self, x: &TropVector) -> Result<Verdict<TropVector>> {
        if x.len() != self.n() {
            return Err(Error::Shape(format!(
                "point has length {} but the ground set has size {}",
                x.len(),
                self.n()
            )));
        }
        for c in self.circuits() {
            let terms: Vec<TropValue> = c.iter().zip(x).map(|(ci, xi)| ci + xi).collect();
            if !min_attained_twice(&terms)? {
                return Ok(Verdict::Fails(c));
            }
        }
        Ok(Verdict::Holds)
    }

    /// Whether `self` (rank `r`) is a quotient of `other` (rank `s ≥ r`).
    pub fn quotient_check(&self, other: &ValuatedMatroid) -> Result<Verdict<ExchangeViolation>> {
        if self.n() != other.n() {
            return Err(Error::Shape(format!(
                "ground sets of size {} and {} differ",
                self.n(),
                other.n()
            )));
        }
        if self.rank() > other.rank() {
            return Err(Error::Usage(format!(
                "quotient needs rank {} <= rank {}",
                self.rank(),
                other.rank()
            )));
        }
        Ok(exchange_between(&self.table, &other.table).into())
    }

    /// The pointed matroid: a loop is appended as element `n`.
    pub fn add_loop(&self) -> Result<ValuatedMatroid> {
        let n = self.n();
        let table = BasisTable::from_fn(n + 1, self.rank(), |s| {
            if s.contains(n) {
                TropValue::Inf
            } else {
                self.value(s).clone()
            }
        })?;
        Ok(ValuatedMatroid { table })
    }

    /// Deletion of `e`; later elements move down by one. A coloop lowers the
    /// rank and the bases become `B ∪ e`.
    pub fn delete(&self, e: usize) -> Result<ValuatedMatroid> {
        let n = self.n();
        if e >= n {
            return Err(Error::Usage(format!("element {} is not in [{n}]", e + 1)));
        }
        let lift = |s: &Subset| s.map(|x| if x < e { x } else { x + 1 }).expect("injective");
        let table = if self.is_coloop(e) {
            BasisTable::from_fn(n - 1, self.rank() - 1, |s| {
                self.value(&lift(s).with(e).expect("e was skipped")).clone()
            })?
        } else {
            BasisTable::from_fn(n - 1, self.rank(), |s| self.value(&lift(s)).clone())?
        };
        ValuatedMatroid::from_table_unchecked(table)
    }

    /// Restriction to `keep` by deleting every other element. The result
    /// lives on `{0, …, |keep|−1}`, in the order of the sorted `keep`.
    pub fn restrict(&self, keep: &Subset) -> Result<ValuatedMatroid> {
        if keep.max_element().is_some_and(|m| m >= self.n()) {
            return Err(Error::Usage(format!("{keep} is not inside [{}]", self.n())));
        }
        let mut out = self.clone();
        for e in (0..self.n()).rev().filter(|&e| !keep.contains(e)) {
            out = out.delete(e)?;
        }
        Ok(out)
    }

    /// Equal rank and projectively equal basis values.
    pub fn tls_equal(&self, other: &ValuatedMatroid) -> bool {
        self.table == other.table
    }
}

impl AsRef<BasisTable> for ValuatedMatroid {
    fn as_ref(&self) -> &BasisTable {
        &self.table
    }
}

impl TryFrom<BasisTable> for ValuatedMatroid {
    type Error = Error;

    fn try_from(table: BasisTable) -> Result<Self> {
        ValuatedMatroid::new(table)
    }
}

impl fmt::Display for ValuatedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.table.fmt(f)
    }
}

fn collect_distinct(vectors: impl Iterator<Item = TropVector>) -> Vec<TropVector> {
    let mut out: Vec<TropVector> = Vec::new();
    for v in vectors {
        let Ok(v) = v.normalized() else { continue };
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}
