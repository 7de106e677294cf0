use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;

/// A nonempty weight set `A ⊆ [1, exp(G) - 1]`, sorted and deduplicated.
///
/// `{±1}` is stored as `{1, exp - 1}` (just `{1}` in exponent 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSet {
    weights: Vec<u64>,
    exponent: u64,
}

impl WeightSet {
    pub fn new(weights: &[u64], exponent: u64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyWeightSet);
        }
        if let Some(&w) = weights.iter().find(|&&w| w == 0 || w >= exponent) {
            return Err(Error::WeightOutOfRange {
                weight: w as i64,
                max: exponent - 1,
            });
        }
        let mut weights = weights.to_vec();
        weights.sort_unstable();
        weights.dedup();
        Ok(WeightSet { weights, exponent })
    }

    pub fn for_group(weights: &[u64], group: &Group) -> Result<Self> {
        Self::new(weights, group.exponent())
    }

    /// Reduces arbitrary integers mod `exp` first; a weight `≡ 0` is rejected.
    pub fn reduced(weights: &[i64], exponent: u64) -> Result<Self> {
        let e = exponent as i64;
        let mut out = Vec::with_capacity(weights.len());
        for &w in weights {
            let r = w.rem_euclid(e);
            if r == 0 {
                return Err(Error::WeightOutOfRange {
                    weight: w,
                    max: exponent - 1,
                });
            }
            out.push(r as u64);
        }
        Self::new(&out, exponent)
    }

    pub fn plus_minus_one(exponent: u64) -> Self {
        Self::new(&[1, exponent - 1], exponent).expect("exponent >= 2")
    }

    /// `[1, l]`.
    pub fn interval(l: u64, exponent: u64) -> Result<Self> {
        Self::new(&(1..=l).collect::<Vec<_>>(), exponent)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `A = -A` modulo the exponent.
    pub fn is_symmetric(&self) -> bool {
        self.weights
            .iter()
            .all(|&a| self.weights.binary_search(&(self.exponent - a)).is_ok())
    }

    pub fn is_plus_minus_one(&self) -> bool {
        *self == Self::plus_minus_one(self.exponent)
    }

    pub fn contains(&self, a: u64) -> bool {
        self.weights.binary_search(&a).is_ok()
    }

    pub fn canonical(&self) -> String {
        self.weights
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub(crate) fn check_group(&self, group: &Group) -> Result<()> {
        if self.exponent != group.exponent() {
            let bad = self
                .weights
                .iter()
                .copied()
                .find(|&w| w >= group.exponent())
                .unwrap_or(self.weights[0]);
            return Err(Error::WeightOutOfRange {
                weight: bad as i64,
                max: group.exponent() - 1,
            });
        }
        Ok(())
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_plus_minus_one() {
            write!(f, "{{±1}}")
        } else {
            write!(f, "{{{}}}", self.canonical())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_symmetry() {
        assert_eq!(WeightSet::new(&[], 8), Err(Error::EmptyWeightSet));
        assert!(matches!(
            WeightSet::new(&[0], 8),
            Err(Error::WeightOutOfRange { .. })
        ));
        assert!(matches!(
            WeightSet::new(&[8], 8),
            Err(Error::WeightOutOfRange { .. })
        ));
        let pm = WeightSet::plus_minus_one(8);
        assert_eq!(pm.weights(), &[1, 7]);
        assert!(pm.is_symmetric());
        assert_eq!(WeightSet::plus_minus_one(2).weights(), &[1]);
        assert!(WeightSet::plus_minus_one(2).is_symmetric());
        assert!(!WeightSet::new(&[1, 2], 9).unwrap().is_symmetric());
        assert!(WeightSet::new(&[1, 2], 3).unwrap().is_symmetric());
        assert_eq!(
            WeightSet::reduced(&[-1, 1, 9], 8).unwrap().weights(),
            &[1, 7]
        );
    }
}
