//! Direct enumeration of weighted subsequence sums, independent of the
//! layered DP. Every term is either skipped or taken with one weight, so the
//! cost is `(1 + |A|)^|S|`; only for short sequences.

use std::collections::BTreeSet;

use crate::group::Group;
use crate::reach::WeightSet;
use crate::sequence::Sequence;

/// Work limit for [`brute_feasible`].
pub const BRUTE_LIMIT: u128 = 1 << 24;

pub fn brute_feasible(len: usize, weights: &WeightSet) -> bool {
    let base = 1 + weights.len() as u128;
    base.checked_pow(len as u32)
        .is_some_and(|c| c <= BRUTE_LIMIT)
}

/// All `(length, sum)` pairs achievable by weighted subsequences.
pub fn brute_sums(group: &Group, seq: &Sequence, weights: &WeightSet) -> BTreeSet<(usize, usize)> {
    let terms = seq.terms();
    let mut out = BTreeSet::new();
    walk(group, &terms, weights.weights(), 0, 0, &mut |l, x| {
        out.insert((l, x));
        false
    });
    out
}

/// True iff some weighted zero-sum subsequence has a length accepted by `ok`.
pub fn brute_has_zero(
    group: &Group,
    seq: &Sequence,
    weights: &WeightSet,
    ok: impl Fn(usize) -> bool,
) -> bool {
    let terms = seq.terms();
    walk(group, &terms, weights.weights(), 0, 0, &mut |l, x| {
        x == 0 && ok(l)
    })
}

fn walk(
    group: &Group,
    terms: &[usize],
    weights: &[u64],
    len: usize,
    acc: usize,
    f: &mut impl FnMut(usize, usize) -> bool,
) -> bool {
    match terms.split_first() {
        None => f(len, acc),
        Some((&t, rest)) => {
            if walk(group, rest, weights, len, acc, f) {
                return true;
            }
            for &a in weights {
                let y = group.add_index(acc, group.scalar_mul_index(a as i64, t));
                if walk(group, rest, weights, len + 1, y, f) {
                    return true;
                }
            }
            false
        }
    }
}
