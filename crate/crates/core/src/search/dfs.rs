//! Depth-first scans over nondecreasing index sequences.
//!
//! A node is a sequence `support[p_1] ≤ … ≤ support[p_d]` in position order;
//! its children append a position `≥ p_d`. Preorder is lexicographic, so the
//! first hit in preorder is also the lexicographically least one, which is
//! what makes the parallel merge independent of scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::arith::binom_u128;
use crate::reach::{ReachContext, ReachState, ZeroSumPredicate};

use super::SearchBudget;

const SPLIT_DEPTH: usize = 2;
const CHECK_EVERY: u64 = 1 << 10;

/// Shared node/time accounting across workers.
pub(crate) struct Limits {
    start: Instant,
    node_cap: Option<u64>,
    time_cap_ms: Option<u64>,
    nodes: AtomicU64,
    prunes: AtomicU64,
    stop: AtomicBool,
}

impl Limits {
    pub fn new(budget: &SearchBudget) -> Self {
        Limits {
            start: Instant::now(),
            node_cap: budget.node_cap,
            time_cap_ms: budget.time_cap_ms,
            nodes: AtomicU64::new(0),
            prunes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    /// Flushes local counters; returns false once a cap is hit.
    fn flush(&self, nodes: &mut u64, prunes: &mut u64) -> bool {
        let total = self.nodes.fetch_add(*nodes, Ordering::Relaxed) + *nodes;
        self.prunes.fetch_add(*prunes, Ordering::Relaxed);
        *nodes = 0;
        *prunes = 0;
        let over_nodes = self.node_cap.is_some_and(|c| total >= c);
        let over_time = self
            .time_cap_ms
            .is_some_and(|c| self.start.elapsed().as_millis() as u64 >= c);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stopped()
    }

    pub fn add(&self, nodes: u64, prunes: u64) -> bool {
        let (mut n, mut p) = (nodes, prunes);
        self.flush(&mut n, &mut p)
    }

    pub fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn prunes(&self) -> u64 {
        self.prunes.load(Ordering::Relaxed)
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}

struct Walker<'a> {
    ctx: &'a ReachContext,
    support: &'a [usize],
    pred: &'a ZeroSumPredicate,
    total_len: usize,
    limits: &'a Limits,
    states: Vec<ReachState>,
    path: Vec<usize>,
    nodes: u64,
    prunes: u64,
}

impl<'a> Walker<'a> {
    fn new(
        ctx: &'a ReachContext,
        support: &'a [usize],
        pred: &'a ZeroSumPredicate,
        total_len: usize,
        limits: &'a Limits,
    ) -> Self {
        Walker {
            ctx,
            support,
            pred,
            total_len,
            limits,
            states: vec![ctx.empty_state(pred.scheme(total_len))],
            path: Vec::new(),
            nodes: 0,
            prunes: 0,
        }
    }

    /// Starts from a given prefix of positions. Returns false if the prefix
    /// itself satisfies the predicate.
    fn seed(&mut self, prefix: &[usize]) -> bool {
        for &p in prefix {
            if !self.step(p) {
                return false;
            }
        }
        true
    }

    /// Pushes position `p` on the path. Returns false (and leaves the path
    /// unchanged) when the extended sequence satisfies the predicate.
    fn step(&mut self, p: usize) -> bool {
        let d = self.path.len();
        if self.states.len() == d + 1 {
            let s = self.states[d].clone();
            self.states.push(s);
        } else {
            let (lo, hi) = self.states.split_at_mut(d + 1);
            hi[0].copy_from(&lo[d]);
        }
        self.ctx.push(&mut self.states[d + 1], self.support[p]);
        if self.pred.holds(&self.states[d + 1], self.total_len) {
            self.prunes += 1;
            return false;
        }
        self.path.push(p);
        true
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= CHECK_EVERY {
            return self.limits.flush(&mut self.nodes, &mut self.prunes);
        }
        !self.limits.stopped()
    }

    fn finish(&mut self) {
        self.limits.flush(&mut self.nodes, &mut self.prunes);
    }

    fn terms(&self) -> Vec<usize> {
        self.path.iter().map(|&p| self.support[p]).collect()
    }

    /// Longest path reachable below the current node; ties keep the first.
    fn longest(&mut self, best: &mut Vec<usize>) {
        if !self.tick() {
            return;
        }
        if self.path.len() > best.len() {
            *best = self.terms();
        }
        let from = self.path.last().copied().unwrap_or(0);
        for p in from..self.support.len() {
            if self.step(p) {
                self.longest(best);
                self.path.pop();
                if self.limits.stopped() {
                    return;
                }
            }
        }
    }

    /// Scans all completions to `target_len`. Adds covered completions to
    /// `covered` and returns the first completion violating the predicate.
    fn universal(&mut self, target_len: usize, covered: &mut u128) -> Option<Vec<usize>> {
        if !self.tick() {
            return None;
        }
        let d = self.path.len();
        if d == target_len {
            return Some(self.terms());
        }
        let k = self.support.len();
        let from = self.path.last().copied().unwrap_or(0);
        let rest = target_len - d - 1;
        for p in from..k {
            if self.step(p) {
                let found = self.universal(target_len, covered);
                self.path.pop();
                if found.is_some() {
                    return found;
                }
                if self.limits.stopped() {
                    return None;
                }
            } else {
                *covered += completions(k - p, rest);
            }
        }
        None
    }
}

/// Nondecreasing completions of length `rest` over `avail` symbols.
fn completions(avail: usize, rest: usize) -> u128 {
    if rest == 0 {
        1
    } else {
        binom_u128((avail + rest - 1) as u64, rest as u64)
    }
}

/// Expands the tree to `depth` in preorder. Nodes shallower than `depth`
/// go to `visit`; nodes at `depth` that survive the predicate become tasks.
fn frontier(
    ctx: &ReachContext,
    support: &[usize],
    pred: &ZeroSumPredicate,
    total_len: usize,
    limits: &Limits,
    depth: usize,
    mut visit: impl FnMut(&[usize], bool),
) -> Vec<Vec<usize>> {
    fn rec(
        w: &mut Walker<'_>,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
        visit: &mut impl FnMut(&[usize], bool),
    ) {
        if w.path.len() == depth {
            out.push(w.path.clone());
            return;
        }
        w.tick();
        let from = w.path.last().copied().unwrap_or(0);
        for p in from..w.support.len() {
            if w.step(p) {
                visit(&w.path, true);
                rec(w, depth, out, visit);
                w.path.pop();
            } else {
                let mut pruned = w.path.clone();
                pruned.push(p);
                visit(&pruned, false);
            }
        }
    }
    let mut w = Walker::new(ctx, support, pred, total_len, limits);
    let mut out = Vec::new();
    rec(&mut w, depth, &mut out, &mut visit);
    w.finish();
    out
}

fn lex_better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

/// Longest sequence over `support` (nondecreasing, repetition allowed) that
/// does not satisfy `pred`. The result is the lexicographically least one
/// among those of maximal length.
pub(crate) fn longest_avoiding(
    ctx: &ReachContext,
    support: &[usize],
    pred: &ZeroSumPredicate,
    limits: &Limits,
) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    let tasks = frontier(
        ctx,
        support,
        pred,
        usize::MAX,
        limits,
        SPLIT_DEPTH,
        |path, ok| {
            if ok && path.len() > best.len() {
                best = path.iter().map(|&p| support[p]).collect();
            }
        },
    );
    let results: Vec<Vec<usize>> = tasks
        .par_iter()
        .map(|prefix| {
            let mut w = Walker::new(ctx, support, pred, usize::MAX, limits);
            let mut local = Vec::new();
            if w.seed(prefix) {
                w.longest(&mut local);
            }
            w.finish();
            local
        })
        .collect();
    for r in results {
        if lex_better(&r, &best) {
            best = r;
        }
    }
    best
}

pub(crate) struct UniversalScan {
    pub counterexample: Option<Vec<usize>>,
    pub covered: u128,
    pub total: u128,
}

/// Every nondecreasing sequence of length `n` over `support` is checked
/// against `pred`; the first violation in lexicographic order is returned.
pub(crate) fn scan_universal(
    ctx: &ReachContext,
    support: &[usize],
    pred: &ZeroSumPredicate,
    n: usize,
    limits: &Limits,
) -> UniversalScan {
    let k = support.len();
    let total = if k == 0 {
        u128::from(n == 0)
    } else {
        completions(k, n)
    };
    let depth = SPLIT_DEPTH.min(n);
    let mut covered = 0u128;
    let mut early: Option<Vec<usize>> = None;
    let tasks = frontier(ctx, support, pred, n, limits, depth, |path, ok| {
        if !ok {
            let last = *path.last().expect("pruned node is nonempty");
            covered += completions(k - last, n - path.len());
        }
    });
    if depth == 0 || k == 0 {
        // the empty sequence is the only candidate
        let w = Walker::new(ctx, support, pred, n, limits);
        if n == 0 && !pred.holds(&w.states[0], n) {
            early = Some(Vec::new());
        } else if n == 0 {
            covered = 1;
        }
        return UniversalScan {
            counterexample: early,
            covered,
            total,
        };
    }
    let first_bad = AtomicUsize::new(usize::MAX);
    let results: Vec<(Option<Vec<usize>>, u128)> = tasks
        .par_iter()
        .enumerate()
        .map(|(i, prefix)| {
            if first_bad.load(Ordering::Relaxed) < i {
                return (None, 0);
            }
            let mut w = Walker::new(ctx, support, pred, n, limits);
            let mut cov = 0u128;
            let found = if w.seed(prefix) {
                w.universal(n, &mut cov)
            } else {
                None
            };
            w.finish();
            if found.is_some() {
                first_bad.fetch_min(i, Ordering::Relaxed);
            }
            (found, cov)
        })
        .collect();
    let mut counterexample = None;
    for (found, cov) in results {
        covered += cov;
        if found.is_some() {
            counterexample = found;
            break;
        }
    }
    UniversalScan {
        counterexample,
        covered,
        total,
    }
}
