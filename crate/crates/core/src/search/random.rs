//! Seeded sampling. Sample `i` draws from a ChaCha stream selected by `i`,
//! so results do not depend on how samples are split across workers.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::reach::{ReachContext, ZeroSumPredicate};
use crate::sequence::{random_sequence_with, Sequence};

use super::dfs::Limits;
use super::SearchBudget;

fn rng_for(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Greedy random extensions: append support elements in random order while
/// the predicate stays false. Keeps the longest sequence found (ties go to
/// the lowest sample index).
pub(crate) fn longest_avoiding(
    ctx: &ReachContext,
    support: &[usize],
    pred: &ZeroSumPredicate,
    budget: &SearchBudget,
    limits: &Limits,
) -> Vec<usize> {
    let results: Vec<Vec<usize>> = (0..budget.samples)
        .into_par_iter()
        .map(|i| {
            if limits.stopped() {
                return Vec::new();
            }
            let mut rng = rng_for(budget.seed, i);
            let mut st = ctx.empty_state(pred.scheme(usize::MAX));
            let mut trial = st.clone();
            let mut terms = Vec::new();
            let mut order = support.to_vec();
            let mut nodes = 0u64;
            loop {
                order.shuffle(&mut rng);
                let mut extended = false;
                for &g in &order {
                    nodes += 1;
                    trial.copy_from(&st);
                    ctx.push(&mut trial, g);
                    if !pred.holds(&trial, usize::MAX) {
                        std::mem::swap(&mut st, &mut trial);
                        terms.push(g);
                        extended = true;
                        break;
                    }
                }
                if !extended {
                    break;
                }
            }
            limits.add(nodes, 0);
            terms.sort_unstable();
            terms
        })
        .collect();
    let mut best = Vec::new();
    for r in results {
        if r.len() > best.len() {
            best = r;
        }
    }
    best
}

/// Draws `budget.samples` i.i.d. uniform sequences of length `n` and returns
/// the first (lowest index) that violates `pred`, with the number drawn.
pub(crate) fn sample_universal(
    ctx: &ReachContext,
    pred: &ZeroSumPredicate,
    n: usize,
    budget: &SearchBudget,
    limits: &Limits,
) -> (Option<Sequence>, u64) {
    let found = (0..budget.samples).into_par_iter().find_first(|&i| {
        if limits.stopped() {
            return false;
        }
        let mut rng = rng_for(budget.seed, i);
        let seq = random_sequence_with(ctx.group(), n, &mut rng);
        limits.add(1, 0);
        !pred
            .evaluate(ctx, &seq)
            .expect("sampled indices are in range")
    });
    match found {
        Some(i) => {
            let mut rng = rng_for(budget.seed, i);
            (Some(random_sequence_with(ctx.group(), n, &mut rng)), i + 1)
        }
        None => (None, limits.nodes().min(budget.samples)),
    }
}
