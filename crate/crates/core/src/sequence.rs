//! Sequences over a group as unordered multisets of element indices.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group};

/// A multiset of element indices. Zero counts are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequence {
    mults: BTreeMap<usize, usize>,
}

impl Sequence {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(terms: I) -> Self {
        let mut s = Self::empty();
        for t in terms {
            s.push(t, 1);
        }
        s
    }

    pub fn from_elements(group: &Group, terms: &[Element]) -> Result<Self> {
        terms
            .iter()
            .map(|g| group.index_of(g))
            .collect::<Result<Vec<_>>>()
            .map(Self::from_indices)
    }

    pub fn push(&mut self, index: usize, count: usize) {
        if count > 0 {
            *self.mults.entry(index).or_default() += count;
        }
    }

    pub fn len(&self) -> usize {
        self.mults.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn multiplicity(&self, index: usize) -> usize {
        self.mults.get(&index).copied().unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.mults.keys().copied().collect()
    }

    /// `(index, multiplicity)` pairs in ascending index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mults.iter().map(|(&i, &m)| (i, m))
    }

    /// Terms expanded by multiplicity, nondecreasing.
    pub fn terms(&self) -> Vec<usize> {
        self.mults
            .iter()
            .flat_map(|(&i, &m)| std::iter::repeat(i).take(m))
            .collect()
    }

    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut out = self.clone();
        for (i, m) in other.entries() {
            out.push(i, m);
        }
        out
    }

    /// `S T^{-1}`; fails unless `T | S`.
    pub fn remove(&self, other: &Sequence) -> Result<Sequence> {
        let mut out = self.clone();
        for (i, m) in other.entries() {
            let have = out.multiplicity(i);
            if have < m {
                return Err(Error::NotASubsequence);
            }
            if have == m {
                out.mults.remove(&i);
            } else {
                out.mults.insert(i, have - m);
            }
        }
        Ok(out)
    }

    pub fn divides(&self, other: &Sequence) -> bool {
        self.entries().all(|(i, m)| other.multiplicity(i) >= m)
    }

    pub fn check_group(&self, group: &Group) -> Result<()> {
        match self.mults.keys().next_back() {
            Some(&i) if i >= group.order() => Err(Error::IndexOutOfRange {
                index: i,
                order: group.order(),
            }),
            _ => Ok(()),
        }
    }

    /// `σ(S)`, with `σ(empty) = 0`.
    pub fn sum(&self, group: &Group) -> Result<Element> {
        self.check_group(group)?;
        let mut acc = 0usize;
        for (i, m) in self.entries() {
            acc = group.add_index(acc, group.scalar_mul_index(m as i64, i));
        }
        group.element_of(acc)
    }

    /// Replaces every term by the smaller index of `{g, -g}`. Only meaningful
    /// for weight sets closed under negation.
    pub fn canonicalize_negation(&self, group: &Group) -> Sequence {
        let mut out = Sequence::empty();
        for (i, m) in self.entries() {
            out.push(group.negation_representative(i), m);
        }
        out
    }

    /// Replaces `count` copies of `index` by its negation.
    pub fn negate_term(&self, group: &Group, index: usize, count: usize) -> Result<Sequence> {
        let mut rem = Sequence::empty();
        rem.push(index, count);
        let mut out = self.remove(&rem)?;
        out.push(group.neg_index(index), count);
        Ok(out)
    }
}

/// Emits every multiset of a fixed length over an allowed support exactly
/// once, as nondecreasing position tuples into the support list.
#[derive(Clone, Debug)]
pub struct EnumerationCursor {
    support: Vec<usize>,
    positions: Vec<usize>,
    done: bool,
}

impl EnumerationCursor {
    pub fn new(support: Vec<usize>, length: usize) -> Self {
        let done = support.is_empty() && length > 0;
        EnumerationCursor {
            support,
            positions: vec![0; length],
            done,
        }
    }

    fn advance(&mut self) {
        let k = self.support.len();
        let mut i = self.positions.len();
        while i > 0 {
            i -= 1;
            if self.positions[i] + 1 < k {
                let v = self.positions[i] + 1;
                for p in &mut self.positions[i..] {
                    *p = v;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for EnumerationCursor {
    type Item = Sequence;

    fn next(&mut self) -> Option<Sequence> {
        if self.done {
            return None;
        }
        let out = Sequence::from_indices(self.positions.iter().map(|&p| self.support[p]));
        self.advance();
        Some(out)
    }
}

pub fn enumerate_multisets(support: &[usize], length: usize) -> EnumerationCursor {
    EnumerationCursor::new(support.to_vec(), length)
}

/// I.i.d. uniform terms; a deterministic function of `(group, length, seed)`.
pub fn random_sequence(group: &Group, length: usize, seed: u64) -> Sequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sequence_with(group, length, &mut rng)
}

pub fn random_sequence_with<R: Rng>(group: &Group, length: usize, rng: &mut R) -> Sequence {
    let n = group.order();
    Sequence::from_indices((0..length).map(|_| rng.gen_range(0..n)))
}
