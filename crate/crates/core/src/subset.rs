//! Sorted subsets of a ground set `{0, …, n−1}`.
//!
//! Elements are 0-based in memory. Everything user-facing (display, JSON)
//! is 1-based, matching the usual `[n] = {1, …, n}` notation.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A strictly increasing list of ground-set elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    /// Builds a subset from arbitrary 0-based elements; rejects repeats.
    pub fn new(mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Usage(format!(
                "repeated element in subset {elements:?}"
            )));
        }
        Ok(Subset(elements))
    }

    /// Builds a subset from 1-based labels. Panics on `0` or repeats; meant
    /// for literals in tests and examples.
    ///
    /// ```
    /// use tropquiver::subset::Subset;
    /// let s = Subset::one_based(&[3, 1]);
    /// assert_eq!(s.elements(), &[0, 2]);
    /// assert_eq!(s.to_string(), "{1,3}");
    /// ```
    pub fn one_based(labels: &[usize]) -> Self {
        Subset::from_one_based(labels).expect("valid 1-based subset literal")
    }

    pub fn from_one_based(labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::Parse(
                "subset labels are 1-based; 0 is not allowed".into(),
            ));
        }
        Subset::new(labels.iter().map(|&l| l - 1).collect())
    }

    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subset(elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based_labels(&self) -> Vec<usize> {
        self.0.iter().map(|e| e + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn max_element(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `self ∪ {e}`; `None` if `e` is already present.
    pub fn with(&self, e: usize) -> Option<Subset> {
        match self.0.binary_search(&e) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, e);
                Some(Subset(v))
            }
        }
    }

    /// `self ∖ {e}`; `None` if `e` is absent.
    pub fn without(&self, e: usize) -> Option<Subset> {
        self.0.binary_search(&e).ok().map(|pos| {
            let mut v = self.0.clone();
            v.remove(pos);
            Subset(v)
        })
    }

    /// `(self ∖ {out}) ∪ {inn}`, or `None` when that is not an exchange.
    pub fn exchange(&self, out: usize, inn: usize) -> Option<Subset> {
        self.without(out)?.with(inn)
    }

    pub fn difference<'a>(&'a self, other: &'a Subset) -> impl Iterator<Item = usize> + 'a {
        self.0.iter().copied().filter(move |&e| !other.contains(e))
    }

    /// Number of elements of `self` strictly greater than `e`.
    pub fn count_greater(&self, e: usize) -> usize {
        self.0.len() - self.0.partition_point(|&x| x <= e)
    }

    /// Position in the colexicographic order of `k`-subsets, used as a
    /// dense table index.
    pub fn colex_rank(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &c)| binomial(c, i + 1))
            .sum()
    }

    /// All `k`-subsets of `{0, …, n−1}` in lexicographic order.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = Subset> {
        (0..n).combinations(k).map(Subset)
    }

    /// Maps every element through `f`; the images must stay distinct.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Result<Subset> {
        Subset::new(self.0.iter().map(|&e| f(e)).collect())
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|e| e + 1).join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based_labels().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        Subset::from_one_based(&labels).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_rank_is_a_bijection_onto_an_interval() {
        for n in 0..8 {
            for k in 0..=n {
                let mut ranks: Vec<usize> = Subset::all(n, k).map(|s| s.colex_rank()).collect();
                ranks.sort_unstable();
                assert_eq!(ranks, (0..binomial(n, k)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn exchange_and_counts() {
        let s = Subset::one_based(&[1, 3, 4]);
        assert_eq!(s.exchange(2, 1), Some(Subset::one_based(&[1, 2, 4])));
        assert_eq!(s.exchange(1, 2), None);
        assert_eq!(s.count_greater(0), 2);
        assert_eq!(s.count_greater(4), 0);
        assert!(Subset::new(vec![1, 1]).is_err());
        assert!(Subset::from_one_based(&[0]).is_err());
    }

    #[test]
    fn lex_order_and_json() {
        let all: Vec<String> = Subset::all(4, 2).map(|s| s.to_string()).collect();
        assert_eq!(all, ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]);
        let s: Subset = serde_json::from_str("[2, 1]").unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,2]");
    }
}
