//! Uniform and partition matroids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::{ElementId, SubsetSelection};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidConstraint {
    /// `|S| <= k`.
    Uniform { n: usize, k: usize },
    /// At most `capacities[b]` elements from each block `b`.
    Partition {
        n: usize,
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
        #[serde(skip)]
        block_of: Vec<usize>,
    },
}

impl MatroidConstraint {
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidConstraint(format!(
                "uniform capacity {k} exceeds ground-set size {n}"
            )));
        }
        Ok(MatroidConstraint::Uniform { n, k })
    }

    pub fn partition(n: usize, blocks: Vec<Vec<usize>>, capacities: Vec<usize>) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(Error::InvalidConstraint(format!(
                "{} blocks but {} capacities",
                blocks.len(),
                capacities.len()
            )));
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if capacities[b] > block.len() {
                return Err(Error::InvalidConstraint(format!(
                    "capacity {} exceeds size {} of block {b}",
                    capacities[b],
                    block.len()
                )));
            }
            for &e in block {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::InvalidConstraint(format!(
                        "element {e} appears in more than one block"
                    )));
                }
                block_of[e] = b;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidConstraint(format!(
                "element {e} is not covered by any block"
            )));
        }
        Ok(MatroidConstraint::Partition {
            n,
            blocks,
            capacities,
            block_of,
        })
    }

    /// Rebuilds derived lookup tables after deserialization.
    pub fn validated(self) -> Result<Self> {
        match self {
            MatroidConstraint::Uniform { n, k } => Self::uniform(n, k),
            MatroidConstraint::Partition {
                n,
                blocks,
                capacities,
                ..
            } => Self::partition(n, blocks, capacities),
        }
    }

    pub fn ground_size(&self) -> usize {
        match self {
            MatroidConstraint::Uniform { n, .. } | MatroidConstraint::Partition { n, .. } => *n,
        }
    }

    /// Size of the largest independent set.
    pub fn rank(&self) -> usize {
        match self {
            MatroidConstraint::Uniform { k, .. } => *k,
            MatroidConstraint::Partition { capacities, .. } => capacities.iter().sum(),
        }
    }

    /// Block containing `e` (always 0 for uniform matroids).
    pub(crate) fn block_index(&self, e: usize) -> usize {
        match self {
            MatroidConstraint::Uniform { .. } => 0,
            MatroidConstraint::Partition { block_of, .. } => block_of[e],
        }
    }

    /// Per-block capacities (a single block for uniform matroids).
    pub(crate) fn capacities(&self) -> Vec<usize> {
        match self {
            MatroidConstraint::Uniform { k, .. } => vec![*k],
            MatroidConstraint::Partition { capacities, .. } => capacities.clone(),
        }
    }

    /// Blocks as element lists (the whole ground set for uniform matroids).
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        match self {
            MatroidConstraint::Uniform { n, .. } => vec![(0..*n).collect()],
            MatroidConstraint::Partition { blocks, .. } => blocks.clone(),
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, MatroidConstraint::Uniform { .. })
    }

    fn check_ground(&self, s: &SubsetSelection) -> Result<()> {
        if s.ground_size() != self.ground_size() {
            return Err(Error::GroundSetMismatch {
                expected: self.ground_size(),
                actual: s.ground_size(),
            });
        }
        Ok(())
    }

    fn block_counts(&self, s: &SubsetSelection) -> Vec<usize> {
        match self {
            MatroidConstraint::Uniform { .. } => vec![s.cardinality()],
            MatroidConstraint::Partition {
                capacities,
                block_of,
                ..
            } => {
                let mut counts = vec![0; capacities.len()];
                for e in s.iter() {
                    counts[block_of[e.index()]] += 1;
                }
                counts
            }
        }
    }

    pub fn is_independent(&self, s: &SubsetSelection) -> Result<bool> {
        self.check_ground(s)?;
        Ok(match self {
            MatroidConstraint::Uniform { k, .. } => s.cardinality() <= *k,
            MatroidConstraint::Partition { capacities, .. } => self
                .block_counts(s)
                .iter()
                .zip(capacities)
                .all(|(c, cap)| c <= cap),
        })
    }

    /// Elements `e ∉ s` such that `s ∪ {e}` stays independent, in increasing order.
    pub fn feasible_additions(&self, s: &SubsetSelection) -> Result<Vec<ElementId>> {
        if !self.is_independent(s)? {
            return Err(Error::Precondition(format!("{s} is not independent")));
        }
        let n = self.ground_size();
        let out = match self {
            MatroidConstraint::Uniform { k, .. } => {
                if s.cardinality() >= *k {
                    Vec::new()
                } else {
                    (0..n)
                        .map(ElementId)
                        .filter(|&e| !s.contains(e))
                        .collect()
                }
            }
            MatroidConstraint::Partition {
                capacities,
                block_of,
                ..
            } => {
                let counts = self.block_counts(s);
                (0..n)
                    .map(ElementId)
                    .filter(|&e| {
                        let b = block_of[e.index()];
                        counts[b] < capacities[b] && !s.contains(e)
                    })
                    .collect()
            }
        };
        Ok(out)
    }

    /// Number of independent sets (including the empty set).
    pub fn count_independent_sets(&self) -> u128 {
        match self {
            MatroidConstraint::Uniform { n, k } => (0..=*k).map(|i| binomial(*n, i)).sum(),
            MatroidConstraint::Partition {
                blocks, capacities, ..
            } => blocks
                .iter()
                .zip(capacities)
                .map(|(b, &cap)| (0..=cap).map(|i| binomial(b.len(), i)).sum::<u128>())
                .fold(1u128, |acc, c| acc.saturating_mul(c)),
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> SubsetSelection {
        SubsetSelection::from_indices(n, xs.iter().copied()).unwrap()
    }

    fn two_blocks() -> MatroidConstraint {
        MatroidConstraint::partition(4, vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap()
    }

    #[test]
    fn uniform_independence() {
        let c = MatroidConstraint::uniform(4, 2).unwrap();
        assert!(c.is_independent(&set(4, &[0, 3])).unwrap());
        assert!(!c.is_independent(&set(4, &[0, 1, 2])).unwrap());
    }

    #[test]
    fn partition_independence() {
        let c = two_blocks();
        assert!(c.is_independent(&set(4, &[0, 2])).unwrap());
        assert!(!c.is_independent(&set(4, &[0, 1])).unwrap());
    }

    #[test]
    fn ground_mismatch_is_an_error() {
        let c = MatroidConstraint::uniform(4, 2).unwrap();
        assert!(matches!(
            c.is_independent(&set(5, &[0])),
            Err(Error::GroundSetMismatch { .. })
        ));
    }

    #[test]
    fn additions() {
        let c = MatroidConstraint::uniform(4, 2).unwrap();
        let adds: Vec<usize> = c
            .feasible_additions(&set(4, &[1]))
            .unwrap()
            .into_iter()
            .map(ElementId::index)
            .collect();
        assert_eq!(adds, vec![0, 2, 3]);

        let c1 = MatroidConstraint::uniform(4, 1).unwrap();
        assert!(c1.feasible_additions(&set(4, &[1])).unwrap().is_empty());

        let p = two_blocks();
        let adds: Vec<usize> = p
            .feasible_additions(&set(4, &[0]))
            .unwrap()
            .into_iter()
            .map(ElementId::index)
            .collect();
        assert_eq!(adds, vec![2, 3]);

        assert!(matches!(
            c1.feasible_additions(&set(4, &[0, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn invalid_constructions() {
        assert!(MatroidConstraint::uniform(3, 4).is_err());
        assert!(MatroidConstraint::partition(4, vec![vec![0, 1], vec![1, 2, 3]], vec![1, 1]).is_err());
        assert!(MatroidConstraint::partition(4, vec![vec![0, 1], vec![2]], vec![1, 1]).is_err());
        assert!(MatroidConstraint::partition(4, vec![vec![0, 1], vec![2, 3]], vec![3, 1]).is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(MatroidConstraint::uniform(8, 3).unwrap().count_independent_sets(), 93);
        assert_eq!(two_blocks().count_independent_sets(), 9);
        assert_eq!(binomial(30, 5), 142_506);
    }
}
