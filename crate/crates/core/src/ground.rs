//! Ground-set elements and subsets.
//!
//! A [`SubsetSelection`] keeps its elements sorted and duplicate-free, so
//! iteration order (and therefore greedy tie-breaking) is deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense element index in `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of the ground set `{0, .., n-1}`, stored as a strictly increasing list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetSelection {
    elements: Vec<usize>,
    n: usize,
}

impl SubsetSelection {
    pub fn empty(n: usize) -> Self {
        SubsetSelection {
            elements: Vec::new(),
            n,
        }
    }

    pub fn full(n: usize) -> Self {
        SubsetSelection {
            elements: (0..n).collect(),
            n,
        }
    }

    /// Builds a subset from arbitrary indices; duplicates are rejected.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = indices.into_iter().collect();
        elements.sort_unstable();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Precondition(format!("duplicate element {}", w[0])));
            }
        }
        if let Some(&last) = elements.last() {
            if last >= n {
                return Err(Error::ElementOutOfRange { element: last, n });
            }
        }
        Ok(SubsetSelection { elements, n })
    }

    /// Subset whose members are the set bits of `mask` (bit `i` is element `i`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let elements = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        SubsetSelection { elements, n }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn cardinality(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.elements.iter().map(|&i| ElementId(i))
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.elements.binary_search(&e.0).is_ok()
    }

    /// `self ∪ {e}`; unchanged if `e` is already present.
    pub fn with(&self, e: ElementId) -> Self {
        let mut out = self.clone();
        out.insert(e);
        out
    }

    /// `self ∖ {e}`; unchanged if `e` is absent.
    pub fn without(&self, e: ElementId) -> Self {
        let mut out = self.clone();
        out.remove(e);
        out
    }

    pub fn insert(&mut self, e: ElementId) -> bool {
        assert!(e.0 < self.n, "element {} out of range {}", e.0, self.n);
        match self.elements.binary_search(&e.0) {
            Ok(_) => false,
            Err(pos) => {
                self.elements.insert(pos, e.0);
                true
            }
        }
    }

    pub fn remove(&mut self, e: ElementId) -> bool {
        match self.elements.binary_search(&e.0) {
            Ok(pos) => {
                self.elements.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Merge-based union of two subsets over the same ground set.
    pub fn union(&self, other: &SubsetSelection) -> Self {
        debug_assert_eq!(self.n, other.n);
        let (a, b) = (&self.elements, &other.elements);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SubsetSelection {
            elements: out,
            n: self.n,
        }
    }

    pub fn is_subset_of(&self, other: &SubsetSelection) -> bool {
        let mut j = 0;
        for &e in &self.elements {
            while j < other.elements.len() && other.elements[j] < e {
                j += 1;
            }
            if j == other.elements.len() || other.elements[j] != e {
                return false;
            }
        }
        true
    }

    /// Bit mask of the members; only valid for `n <= 64`.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.n <= 64);
        self.elements.iter().fold(0u64, |m, &i| m | (1 << i))
    }

    /// 0/1 indicator vector of length `n`.
    pub fn indicator(&self) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for &i in &self.elements {
            y[i] = 1.0;
        }
        y
    }
}

impl fmt::Display for SubsetSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
