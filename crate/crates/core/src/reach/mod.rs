//! Weighted subsequence sums of a fixed sequence, tracked per length.
//!
//! Terms are inserted one at a time. For an exact length cap the layers are
//! swept from the top down, so each inserted term contributes at most once
//! to every new sum. Predicates that only care about lengths modulo `m` (or
//! about nonemptiness) fold lengths into a small cyclic set of states
//! instead, which keeps the state count independent of `|S|`.

mod translate;
mod weights;
mod witness;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::Group;
use crate::sequence::Sequence;

pub(crate) use translate::for_each_bit;
use translate::Translator;
pub use weights::WeightSet;
pub use witness::{extract_witness, WeightedWitness};

/// How subsequence lengths are grouped into states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LengthScheme {
    /// States `0..=cap`; lengths above `cap` are dropped.
    Exact(usize),
    /// State 0 is the empty subsequence, state 1 every nonempty one.
    Nonempty,
    /// State 0 is the empty subsequence; state `j ∈ [1, m]` holds the
    /// nonempty lengths `≡ j (mod m)`, so state `m` means "positive multiple of m".
    Periodic(usize),
}

impl LengthScheme {
    pub fn states(&self) -> usize {
        match *self {
            LengthScheme::Exact(cap) => cap + 1,
            LengthScheme::Nonempty => 2,
            LengthScheme::Periodic(m) => m + 1,
        }
    }

    pub fn successor(&self, s: usize) -> Option<usize> {
        match *self {
            LengthScheme::Exact(cap) => (s < cap).then_some(s + 1),
            LengthScheme::Nonempty => Some(1),
            LengthScheme::Periodic(m) => Some(if s == m { 1 } else { s + 1 }),
        }
    }
}

/// Shared, immutable data for repeated reach computations over one
/// `(group, weight set)` pair.
#[derive(Debug)]
pub struct ReachContext {
    group: Group,
    weights: WeightSet,
    translator: Translator,
    images: Option<Vec<Box<[usize]>>>,
}

impl ReachContext {
    pub fn new(group: &Group, weights: &WeightSet) -> Result<Self> {
        weights.check_group(group)?;
        let images = (group.order() <= 4096).then(|| {
            (0..group.order())
                .map(|g| weighted_images(group, weights, g).into_boxed_slice())
                .collect()
        });
        Ok(ReachContext {
            group: group.clone(),
            weights: weights.clone(),
            translator: Translator::new(group),
            images,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn weights(&self) -> &WeightSet {
        &self.weights
    }

    pub fn words(&self) -> usize {
        self.translator.words()
    }

    pub fn empty_state(&self, scheme: LengthScheme) -> ReachState {
        let words = self.words();
        let mut data = vec![0u64; scheme.states() * words];
        data[0] = 1;
        ReachState {
            scheme,
            words,
            data,
            scratch: Vec::new(),
            terms: 0,
        }
    }

    pub fn state_of(&self, seq: &Sequence, scheme: LengthScheme) -> Result<ReachState> {
        seq.check_group(&self.group)?;
        let mut st = self.empty_state(scheme);
        for t in seq.terms() {
            self.push(&mut st, t);
        }
        Ok(st)
    }

    /// Inserts one term with every weight of the set.
    pub fn push(&self, st: &mut ReachState, g: usize) {
        let owned;
        let images: &[usize] = match &self.images {
            Some(v) => &v[g],
            None => {
                owned = weighted_images(&self.group, &self.weights, g);
                &owned
            }
        };
        let w = st.words;
        match st.scheme {
            LengthScheme::Exact(cap) => {
                if cap > 0 {
                    let top = st.terms.min(cap - 1);
                    for s in (0..=top).rev() {
                        let (lo, hi) = st.data.split_at_mut((s + 1) * w);
                        let src = &lo[s * w..];
                        let dst = &mut hi[..w];
                        for &x in images {
                            self.translator.translate_or(src, x, dst);
                        }
                    }
                }
            }
            scheme => {
                st.scratch.clear();
                st.scratch.extend_from_slice(&st.data);
                for s in 0..scheme.states() {
                    let t = scheme.successor(s).expect("folded schemes are total");
                    let src = &st.scratch[s * w..(s + 1) * w];
                    let dst = &mut st.data[t * w..(t + 1) * w];
                    for &x in images {
                        self.translator.translate_or(src, x, dst);
                    }
                }
            }
        }
        st.terms += 1;
    }

    pub fn holds(&self, st: &ReachState, pred: &ZeroSumPredicate, total_len: usize) -> bool {
        pred.holds(st, total_len)
    }
}

/// Distinct elements `a·g`, `a ∈ A`, ascending.
pub(crate) fn weighted_images(group: &Group, weights: &WeightSet, g: usize) -> Vec<usize> {
    let mut v: Vec<usize> = weights
        .weights()
        .iter()
        .map(|&a| group.scalar_mul_index(a as i64, g))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Per-state membership sets for one sequence.
#[derive(Clone, Debug)]
pub struct ReachState {
    scheme: LengthScheme,
    words: usize,
    data: Vec<u64>,
    scratch: Vec<u64>,
    terms: usize,
}

impl ReachState {
    /// Overwrites `self` with `other` without reallocating when shapes match.
    pub fn copy_from(&mut self, other: &ReachState) {
        self.scheme = other.scheme;
        self.words = other.words;
        self.terms = other.terms;
        self.data.clear();
        self.data.extend_from_slice(&other.data);
    }

    pub fn scheme(&self) -> LengthScheme {
        self.scheme
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    #[inline]
    pub fn contains(&self, state: usize, g: usize) -> bool {
        self.data[state * self.words + (g >> 6)] >> (g & 63) & 1 == 1
    }

    #[inline]
    pub fn has_zero(&self, state: usize) -> bool {
        self.data[state * self.words] & 1 == 1
    }

    pub fn state_words(&self, state: usize) -> &[u64] {
        &self.data[state * self.words..(state + 1) * self.words]
    }

    pub fn members(&self, state: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for_each_bit(self.state_words(state), |i| out.push(i));
        out
    }
}

/// Length-based zero-sum predicates. All of them are monotone: if a sequence
/// satisfies one, so does every sequence containing it (for the "proper"
/// variants, at a fixed total length).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroSumPredicate {
    /// A nonempty weighted zero-sum subsequence.
    Nonempty,
    /// A weighted zero-sum subsequence of exactly this length.
    OfLength(usize),
    /// A nonempty one whose length is divisible by `q`.
    LengthDivisibleBy(usize),
    /// A nonempty one of length `≡ residue (mod modulus)`.
    LengthCongruent { residue: usize, modulus: usize },
    /// One whose length lies in the given set (entries ≥ 1).
    LengthIn(Vec<usize>),
    /// A nonempty one strictly shorter than the whole sequence.
    Proper,
    /// A nonempty, even-length one strictly shorter than the whole sequence.
    ProperEven,
    /// A nonempty one of even length.
    Even,
}

impl ZeroSumPredicate {
    pub fn scheme(&self, total_len: usize) -> LengthScheme {
        match self {
            ZeroSumPredicate::Nonempty => LengthScheme::Nonempty,
            ZeroSumPredicate::OfLength(n) => LengthScheme::Exact(*n),
            ZeroSumPredicate::LengthDivisibleBy(q) => LengthScheme::Periodic((*q).max(1)),
            ZeroSumPredicate::LengthCongruent { modulus, .. } => {
                LengthScheme::Periodic((*modulus).max(1))
            }
            ZeroSumPredicate::LengthIn(set) => {
                LengthScheme::Exact(set.iter().copied().max().unwrap_or(0))
            }
            ZeroSumPredicate::Proper | ZeroSumPredicate::ProperEven => {
                LengthScheme::Exact(total_len.saturating_sub(1))
            }
            ZeroSumPredicate::Even => LengthScheme::Periodic(2),
        }
    }

    /// Evaluates the predicate on a state built with `self.scheme(total_len)`.
    pub fn holds(&self, st: &ReachState, total_len: usize) -> bool {
        match self {
            ZeroSumPredicate::Nonempty => st.has_zero(1),
            ZeroSumPredicate::OfLength(n) => *n < st.scheme.states() && st.has_zero(*n),
            ZeroSumPredicate::LengthDivisibleBy(q) => st.has_zero((*q).max(1)),
            ZeroSumPredicate::LengthCongruent { residue, modulus } => {
                let m = (*modulus).max(1);
                let r = residue % m;
                st.has_zero(if r == 0 { m } else { r })
            }
            ZeroSumPredicate::LengthIn(set) => set
                .iter()
                .any(|&l| l >= 1 && l < st.scheme.states() && st.has_zero(l)),
            ZeroSumPredicate::Proper => {
                (1..total_len.min(st.scheme.states())).any(|l| st.has_zero(l))
            }
            ZeroSumPredicate::ProperEven => (2..total_len.min(st.scheme.states()))
                .step_by(2)
                .any(|l| st.has_zero(l)),
            ZeroSumPredicate::Even => st.has_zero(2),
        }
    }

    /// Whether a zero-sum subsequence of length `l` satisfies the predicate.
    pub fn accepts_length(&self, l: usize, total_len: usize) -> bool {
        match self {
            ZeroSumPredicate::Nonempty => l >= 1,
            ZeroSumPredicate::OfLength(n) => l == *n,
            ZeroSumPredicate::LengthDivisibleBy(q) => l >= 1 && l % (*q).max(1) == 0,
            ZeroSumPredicate::LengthCongruent { residue, modulus } => {
                let m = (*modulus).max(1);
                l >= 1 && l % m == residue % m
            }
            ZeroSumPredicate::LengthIn(set) => l >= 1 && set.contains(&l),
            ZeroSumPredicate::Proper => l >= 1 && l < total_len,
            ZeroSumPredicate::ProperEven => l >= 2 && l % 2 == 0 && l < total_len,
            ZeroSumPredicate::Even => l >= 2 && l % 2 == 0,
        }
    }

    /// Evaluates on a whole sequence, stopping as soon as the predicate holds.
    pub fn evaluate(&self, ctx: &ReachContext, seq: &Sequence) -> Result<bool> {
        seq.check_group(ctx.group())?;
        let total = seq.len();
        let mut st = ctx.empty_state(self.scheme(total));
        for t in seq.terms() {
            ctx.push(&mut st, t);
            if self.holds(&st, total) {
                return Ok(true);
            }
        }
        Ok(self.holds(&st, total))
    }
}

/// Layer `ℓ` of the table is the set of all `A`-weighted `ℓ`-term
/// subsequence sums of the sequence, for `0 ≤ ℓ ≤ max_length`.
#[derive(Clone, Debug)]
pub struct ReachTable {
    group: Group,
    state: ReachState,
}

impl ReachTable {
    pub fn max_length(&self) -> usize {
        self.state.scheme.states() - 1
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn contains(&self, length: usize, g: usize) -> bool {
        length <= self.max_length() && self.state.contains(length, g)
    }

    /// Sorted element indices of layer `length`.
    pub fn layer(&self, length: usize) -> Vec<usize> {
        if length > self.max_length() {
            return Vec::new();
        }
        self.state.members(length)
    }

    pub fn layers(&self) -> Vec<Vec<usize>> {
        (0..=self.max_length()).map(|l| self.layer(l)).collect()
    }

    pub fn zero_lengths(&self) -> BTreeSet<usize> {
        (1..=self.max_length())
            .filter(|&l| self.state.has_zero(l))
            .collect()
    }
}

pub fn reach_table(
    group: &Group,
    seq: &Sequence,
    weights: &WeightSet,
    max_length: usize,
) -> Result<ReachTable> {
    let ctx = ReachContext::new(group, weights)?;
    reach_table_in(&ctx, seq, max_length)
}

pub fn reach_table_in(ctx: &ReachContext, seq: &Sequence, max_length: usize) -> Result<ReachTable> {
    let state = ctx.state_of(seq, LengthScheme::Exact(max_length))?;
    Ok(ReachTable {
        group: ctx.group().clone(),
        state,
    })
}

/// Every `ℓ ≥ 1` for which zero is an `A`-weighted `ℓ`-term subsequence sum.
pub fn zero_sum_lengths(
    group: &Group,
    seq: &Sequence,
    weights: &WeightSet,
) -> Result<BTreeSet<usize>> {
    Ok(reach_table(group, seq, weights, seq.len())?.zero_lengths())
}

fn eval(group: &Group, seq: &Sequence, weights: &WeightSet, p: ZeroSumPredicate) -> Result<bool> {
    let ctx = ReachContext::new(group, weights)?;
    p.evaluate(&ctx, seq)
}

pub fn has_zero_of_length(
    group: &Group,
    seq: &Sequence,
    weights: &WeightSet,
    n: usize,
) -> Result<bool> {
    if n > seq.len() {
        return Ok(false);
    }
    eval(group, seq, weights, ZeroSumPredicate::OfLength(n))
}

pub fn has_nonempty_zero(group: &Group, seq: &Sequence, weights: &WeightSet) -> Result<bool> {
    eval(group, seq, weights, ZeroSumPredicate::Nonempty)
}

pub fn has_zero_length_divisible_by(
    group: &Group,
    seq: &Sequence,
    weights: &WeightSet,
    q: usize,
) -> Result<bool> {
    eval(group, seq, weights, ZeroSumPredicate::LengthDivisibleBy(q))
}

pub fn has_zero_length_congruent(
    group: &Group,
    seq: &Sequence,
    weights: &WeightSet,
    residue: usize,
    modulus: usize,
) -> Result<bool> {
    eval(
        group,
        seq,
        weights,
        ZeroSumPredicate::LengthCongruent { residue, modulus },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::brute_sums;
    use crate::error::Error;

    fn pm(g: &Group) -> WeightSet {
        WeightSet::plus_minus_one(g.exponent())
    }

    #[test]
    fn single_zero_term() {
        let g = Group::new(&[5]).unwrap();
        let t = reach_table(
            &g,
            &Sequence::from_indices([0]),
            &WeightSet::new(&[2, 3], 5).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!(t.layer(0), vec![0]);
        assert_eq!(t.layer(1), vec![0]);
    }

    #[test]
    fn binary_basis_in_z8() {
        let g = Group::new(&[8]).unwrap();
        let s = Sequence::from_indices([1, 2, 4]);
        let t = reach_table(&g, &s, &pm(&g), 3).unwrap();
        assert_eq!(t.layer(3), vec![1, 3, 5, 7]);
        assert!(t.zero_lengths().is_empty());
        assert_eq!(t.layer(4), Vec::<usize>::new());
    }

    #[test]
    fn zero_sum_length_examples() {
        let g = Group::new(&[2, 2]).unwrap();
        let e = g.index_of(&g.element(&[1, 0]).unwrap()).unwrap();
        let one = WeightSet::new(&[1], 2).unwrap();
        let s = Sequence::from_indices([e, e]);
        assert_eq!(zero_sum_lengths(&g, &s, &one).unwrap(), BTreeSet::from([2]));
        assert!(zero_sum_lengths(&g, &Sequence::empty(), &one)
            .unwrap()
            .is_empty());

        let g = Group::new(&[8, 8]).unwrap();
        let mut s = Sequence::empty();
        s.push(0, 7);
        for c in [[1, 0], [2, 0], [4, 0], [0, 1], [0, 2], [0, 4]] {
            s.push(g.index_of(&g.element(&c).unwrap()).unwrap(), 1);
        }
        let lens = zero_sum_lengths(&g, &s, &pm(&g)).unwrap();
        assert!(!lens.contains(&8));
        assert_eq!(lens, (1..=7).collect());
    }

    #[test]
    fn predicate_examples() {
        let g = Group::new(&[9]).unwrap();
        let w = WeightSet::new(&[1, 2], 9).unwrap();
        let zeros = Sequence::from_indices([0; 9]);
        assert!(has_zero_length_divisible_by(&g, &zeros, &w, 9).unwrap());
        let s = Sequence::from_indices([3, 3, 3]);
        assert!(has_nonempty_zero(&g, &s, &w).unwrap());
        assert!(has_zero_of_length(&g, &s, &w, 2).unwrap());
        assert!(!has_zero_of_length(&g, &s, &w, 1).unwrap());

        // 1·1 + 2·1 = 3 ≡ 0 in Z_3, so the naive sign intuition is wrong here
        let g3 = Group::new(&[3]).unwrap();
        let w3 = WeightSet::new(&[1, 2], 3).unwrap();
        assert!(has_nonempty_zero(&g3, &Sequence::from_indices([1, 1]), &w3).unwrap());

        let g8 = Group::new(&[8]).unwrap();
        let s = Sequence::from_indices([1, 1, 2, 4]);
        assert!(has_zero_length_congruent(&g8, &s, &pm(&g8), 0, 4).unwrap());
        assert!(has_zero_length_congruent(&g8, &s, &pm(&g8), 2, 4).unwrap());
        assert!(!has_zero_length_congruent(&g8, &s, &pm(&g8), 1, 4).unwrap());
    }

    #[test]
    fn weight_range_is_checked() {
        let g = Group::new(&[4]).unwrap();
        let w = WeightSet::new(&[5], 8).unwrap();
        assert!(matches!(
            reach_table(&g, &Sequence::empty(), &w, 0),
            Err(Error::WeightOutOfRange { .. })
        ));
    }

    #[test]
    fn matches_brute_force_in_z3_squared() {
        let g = Group::new(&[3, 3]).unwrap();
        let w = WeightSet::new(&[1, 2], 3).unwrap();
        let ctx = ReachContext::new(&g, &w).unwrap();
        for len in 0..=5 {
            for (k, s) in
                crate::sequence::enumerate_multisets(&(0..9).collect::<Vec<_>>(), len).enumerate()
            {
                if k % 11 != 0 {
                    continue;
                }
                let t = reach_table_in(&ctx, &s, len).unwrap();
                let brute = brute_sums(&g, &s, &w);
                for l in 0..=len {
                    let want: Vec<usize> = brute
                        .iter()
                        .filter(|(bl, _)| *bl == l)
                        .map(|&(_, x)| x)
                        .collect();
                    assert_eq!(t.layer(l), want, "{s:?} layer {l}");
                }
            }
        }
    }

    #[test]
    fn folded_schemes_agree_with_exact_layers() {
        let g = Group::new(&[2, 6]).unwrap();
        let w = WeightSet::new(&[1, 5], 6).unwrap();
        let ctx = ReachContext::new(&g, &w).unwrap();
        for seed in 0..200 {
            let s = crate::sequence::random_sequence(&g, 9, seed);
            let lens = reach_table_in(&ctx, &s, 9).unwrap().zero_lengths();
            for m in 1..5usize {
                for r in 0..m {
                    let p = ZeroSumPredicate::LengthCongruent {
                        residue: r,
                        modulus: m,
                    };
                    let want = lens.iter().any(|&l| l % m == r);
                    assert_eq!(p.evaluate(&ctx, &s).unwrap(), want);
                }
            }
            assert_eq!(
                ZeroSumPredicate::Nonempty.evaluate(&ctx, &s).unwrap(),
                !lens.is_empty()
            );
            assert_eq!(
                ZeroSumPredicate::Even.evaluate(&ctx, &s).unwrap(),
                lens.iter().any(|l| l % 2 == 0)
            );
            assert_eq!(
                ZeroSumPredicate::Proper.evaluate(&ctx, &s).unwrap(),
                lens.iter().any(|&l| l < 9)
            );
            assert_eq!(
                ZeroSumPredicate::ProperEven.evaluate(&ctx, &s).unwrap(),
                lens.iter().any(|&l| l < 9 && l % 2 == 0)
            );
        }
    }
}
