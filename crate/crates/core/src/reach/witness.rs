use serde::{Deserialize, Serialize};

use super::{LengthScheme, ReachContext, ReachState, WeightSet};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::sequence::Sequence;

/// A sub-multiset of a sequence together with one weight per chosen term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedWitness {
    /// `(element index, weight)`, one entry per chosen term.
    pub terms: Vec<(usize, u64)>,
    pub target: usize,
}

impl WeightedWitness {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn subsequence(&self) -> Sequence {
        Sequence::from_indices(self.terms.iter().map(|&(g, _)| g))
    }

    pub fn weighted_sum(&self, group: &Group) -> usize {
        self.terms.iter().fold(0, |acc, &(g, a)| {
            group.add_index(acc, group.scalar_mul_index(a as i64, g))
        })
    }

    /// Checks the witness against its source sequence without the DP.
    pub fn verify(
        &self,
        group: &Group,
        seq: &Sequence,
        weights: &WeightSet,
        length: usize,
    ) -> bool {
        self.len() == length
            && self.subsequence().divides(seq)
            && self.terms.iter().all(|&(_, a)| weights.contains(a))
            && self.weighted_sum(group) == self.target
    }
}

/// Recovers explicit terms and weights for an `n`-term weighted subsequence
/// sum equal to `target`, by walking back through the prefix tables.
pub fn extract_witness(
    group: &Group,
    seq: &Sequence,
    weights: &WeightSet,
    n: usize,
    target: usize,
) -> Result<WeightedWitness> {
    let ctx = ReachContext::new(group, weights)?;
    extract_witness_in(&ctx, seq, n, target)
}

pub(crate) fn extract_witness_in(
    ctx: &ReachContext,
    seq: &Sequence,
    n: usize,
    target: usize,
) -> Result<WeightedWitness> {
    seq.check_group(ctx.group())?;
    if target >= ctx.group().order() {
        return Err(Error::IndexOutOfRange {
            index: target,
            order: ctx.group().order(),
        });
    }
    let terms = seq.terms();
    let mut prefixes: Vec<ReachState> = Vec::with_capacity(terms.len() + 1);
    let mut st = ctx.empty_state(LengthScheme::Exact(n));
    prefixes.push(st.clone());
    for &t in &terms {
        ctx.push(&mut st, t);
        prefixes.push(st.clone());
    }
    if n > terms.len() || !st.contains(n, target) {
        return Err(Error::TargetNotReachable { length: n });
    }

    let g = ctx.group();
    let (mut l, mut x) = (n, target);
    let mut chosen = Vec::with_capacity(n);
    for i in (0..terms.len()).rev() {
        if l == 0 {
            break;
        }
        let before = &prefixes[i];
        if before.contains(l, x) {
            continue;
        }
        let t = terms[i];
        let a = ctx
            .weights()
            .weights()
            .iter()
            .copied()
            .find(|&a| {
                before.contains(
                    l - 1,
                    g.add_index(x, g.neg_index(g.scalar_mul_index(a as i64, t))),
                )
            })
            .expect("prefix tables are consistent");
        chosen.push((t, a));
        x = g.add_index(x, g.neg_index(g.scalar_mul_index(a as i64, t)));
        l -= 1;
    }
    debug_assert!(l == 0 && x == 0);
    chosen.reverse();
    Ok(WeightedWitness {
        terms: chosen,
        target,
    })
}
