//! Exact and randomized computation of `D_A(G)`, `s_A(G)` and `E_A(G)`, and
//! universal checks of zero-sum statements over all sequences of a length.

mod dfs;
mod random;
pub mod theorems;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{sandwich, SandwichCheck};
use crate::brute::{brute_feasible, brute_has_zero};
use crate::constructions;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::reach::{ReachContext, WeightSet, ZeroSumPredicate};
use crate::sequence::Sequence;

use dfs::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvariantKind {
    /// Davenport constant: nonempty zero-sums.
    #[serde(rename = "D")]
    D,
    /// Zero-sums of length `exp(G)`.
    #[serde(rename = "s")]
    S,
    /// Zero-sums of length `|G|`.
    #[serde(rename = "E")]
    E,
}

impl InvariantKind {
    pub fn predicate(&self, group: &Group) -> ZeroSumPredicate {
        match self {
            InvariantKind::D => ZeroSumPredicate::Nonempty,
            InvariantKind::S => ZeroSumPredicate::OfLength(group.exponent() as usize),
            InvariantKind::E => ZeroSumPredicate::OfLength(group.order()),
        }
    }

    /// Zero is excluded for `D`, since `a·0 = 0` is already a zero-sum.
    pub fn allows_zero(&self) -> bool {
        !matches!(self, InvariantKind::D)
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantKind::D => "D",
            InvariantKind::S => "s",
            InvariantKind::E => "E",
        })
    }
}

impl FromStr for InvariantKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(InvariantKind::D),
            "s" | "S" => Ok(InvariantKind::S),
            "E" | "e" => Ok(InvariantKind::E),
            _ => Err(Error::Parse(format!("unknown invariant kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    LowerBoundOnly,
    RefutedCandidate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Exhaustive,
    Randomized,
    ConstructionOnly,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "random" | "randomized" => Ok(Mode::Randomized),
            "construction" | "construction-only" => Ok(Mode::ConstructionOnly),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub mode: Mode,
    pub node_cap: Option<u64>,
    pub time_cap_ms: Option<u64>,
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// A claimed value to try to refute in randomized mode.
    pub candidate: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            mode: Mode::Exhaustive,
            node_cap: None,
            time_cap_ms: None,
            samples: 10_000,
            seed: 0,
            workers: None,
            candidate: None,
        }
    }
}

impl SearchBudget {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn randomized(samples: u64, seed: u64) -> Self {
        SearchBudget {
            mode: Mode::Randomized,
            samples,
            seed,
            ..Self::default()
        }
    }

    pub fn construction_only() -> Self {
        SearchBudget {
            mode: Mode::ConstructionOnly,
            ..Self::default()
        }
    }

    /// Runs `f` on a pool of the requested size.
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.workers {
            Some(n) => match rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
            {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            None => f(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub wall_ms: u64,
    pub budget_exhausted: bool,
}

impl SearchStats {
    fn from_limits(l: &Limits) -> Self {
        SearchStats {
            nodes: l.nodes(),
            prunes: l.prunes(),
            wall_ms: l.elapsed_ms(),
            budget_exhausted: l.stopped(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub group: Group,
    pub weights: WeightSet,
    pub kind: InvariantKind,
    pub value: usize,
    pub status: Status,
    /// A sequence of length `value - 1` without the target zero-sum.
    pub witness: Sequence,
    pub stats: SearchStats,
    /// Whether the witness was also rechecked by direct enumeration.
    pub brute_checked: bool,
    pub sandwich: Vec<SandwichCheck>,
}

impl InvariantResult {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

/// The search support: negation representatives when `A = -A`, all of `G`
/// otherwise, with zero removed when the invariant forbids it.
pub fn search_support(group: &Group, weights: &WeightSet, allow_zero: bool) -> Vec<usize> {
    let base: Vec<usize> = if weights.is_symmetric() {
        group.negation_orbit_representatives()
    } else {
        (0..group.order()).collect()
    };
    base.into_iter().filter(|&g| allow_zero || g != 0).collect()
}

/// Rechecks that `seq` avoids `pred`, through a fresh DP and, when small
/// enough, by direct enumeration. Returns whether brute force was used.
pub(crate) fn recheck_avoids(
    ctx: &ReachContext,
    seq: &Sequence,
    pred: &ZeroSumPredicate,
) -> Result<bool> {
    if pred.evaluate(ctx, seq)? {
        return Err(Error::WitnessInvalid);
    }
    let n = seq.len();
    if n <= 12 && brute_feasible(n, ctx.weights()) {
        if brute_has_zero(ctx.group(), seq, ctx.weights(), |l| {
            pred.accepts_length(l, n)
        }) {
            return Err(Error::WitnessInvalid);
        }
        return Ok(true);
    }
    Ok(false)
}

pub fn davenport_weighted(
    group: &Group,
    weights: &WeightSet,
    budget: &SearchBudget,
) -> Result<InvariantResult> {
    compute_invariant(group, weights, InvariantKind::D, budget)
}

pub fn small_s(
    group: &Group,
    weights: &WeightSet,
    budget: &SearchBudget,
) -> Result<InvariantResult> {
    compute_invariant(group, weights, InvariantKind::S, budget)
}

pub fn e_weighted(
    group: &Group,
    weights: &WeightSet,
    budget: &SearchBudget,
) -> Result<InvariantResult> {
    compute_invariant(group, weights, InvariantKind::E, budget)
}

pub fn compute_invariant(
    group: &Group,
    weights: &WeightSet,
    kind: InvariantKind,
    budget: &SearchBudget,
) -> Result<InvariantResult> {
    let ctx = ReachContext::new(group, weights)?;
    let pred = kind.predicate(group);
    let support = search_support(group, weights, kind.allows_zero());
    let limits = Limits::new(budget);

    let (witness, status) = match budget.mode {
        Mode::Exhaustive => {
            let best = budget.install(|| dfs::longest_avoiding(&ctx, &support, &pred, &limits));
            let status = if limits.stopped() {
                Status::LowerBoundOnly
            } else {
                Status::Exact
            };
            (Sequence::from_indices(best), status)
        }
        Mode::Randomized => {
            let best =
                budget.install(|| random::longest_avoiding(&ctx, &support, &pred, budget, &limits));
            let seq = Sequence::from_indices(best);
            let refuted = budget.candidate.is_some_and(|c| seq.len() >= c);
            let status = if refuted {
                Status::RefutedCandidate
            } else {
                Status::LowerBoundOnly
            };
            (seq, status)
        }
        Mode::ConstructionOnly => {
            let mut best = Sequence::empty();
            for cand in constructions::lower_bound_candidates(group, weights, kind) {
                if cand.len() > best.len() && !pred.evaluate(&ctx, &cand)? {
                    best = cand;
                }
            }
            (best, Status::LowerBoundOnly)
        }
    };

    let brute_checked = recheck_avoids(&ctx, &witness, &pred)?;
    let value = witness.len() + 1;
    let known_d = match kind {
        InvariantKind::D => None,
        _ if status == Status::Exact && group.order() <= 64 => {
            let d = davenport_weighted(group, weights, &SearchBudget::exhaustive())?;
            d.is_exact().then_some(d.value as u64)
        }
        _ => None,
    };
    let sandwich = if status == Status::Exact {
        sandwich(group, weights, kind, value as u64, known_d)?
    } else {
        Vec::new()
    };
    Ok(InvariantResult {
        group: group.clone(),
        weights: weights.clone(),
        kind,
        value,
        status,
        witness,
        stats: SearchStats::from_limits(&limits),
        brute_checked,
        sandwich,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Counterexample { sequence: Sequence },
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalResult {
    pub group: Group,
    pub weights: WeightSet,
    pub length: usize,
    pub predicate: ZeroSumPredicate,
    pub mode: Mode,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Exhaustive mode: multisets settled, against the total over the
    /// support (decimal strings, they can exceed 2^64).
    pub covered: Option<String>,
    pub total: Option<String>,
    /// Randomized mode: samples actually drawn.
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub stats: SearchStats,
}

impl UniversalResult {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Checks that every sequence of the given length satisfies `pred`.
pub fn verify_universal(
    group: &Group,
    weights: &WeightSet,
    length: usize,
    pred: &ZeroSumPredicate,
    budget: &SearchBudget,
) -> Result<UniversalResult> {
    let ctx = ReachContext::new(group, weights)?;
    let limits = Limits::new(budget);
    let mut out = UniversalResult {
        group: group.clone(),
        weights: weights.clone(),
        length,
        predicate: pred.clone(),
        mode: budget.mode,
        verdict: Verdict::Holds,
        covered: None,
        total: None,
        samples: None,
        seed: None,
        stats: SearchStats::default(),
    };
    match budget.mode {
        Mode::Exhaustive | Mode::ConstructionOnly => {
            let support = search_support(group, weights, true);
            let scan =
                budget.install(|| dfs::scan_universal(&ctx, &support, pred, length, &limits));
            out.covered = Some(scan.covered.to_string());
            out.total = Some(scan.total.to_string());
            out.verdict = match scan.counterexample {
                Some(c) => Verdict::Counterexample {
                    sequence: Sequence::from_indices(c),
                },
                None if limits.stopped() => Verdict::BudgetExhausted,
                None if scan.covered != scan.total => {
                    return Err(Error::BadParameters(format!(
                        "coverage mismatch: {} of {}",
                        scan.covered, scan.total
                    )))
                }
                None => Verdict::Holds,
            };
        }
        Mode::Randomized => {
            let (found, drawn) =
                budget.install(|| random::sample_universal(&ctx, pred, length, budget, &limits));
            out.samples = Some(drawn);
            out.seed = Some(budget.seed);
            out.verdict = match found {
                Some(c) => Verdict::Counterexample { sequence: c },
                None if limits.stopped() => Verdict::BudgetExhausted,
                None => Verdict::Holds,
            };
        }
    }
    if let Verdict::Counterexample { sequence } = &out.verdict {
        recheck_avoids(&ctx, sequence, pred)?;
    }
    out.stats = SearchStats::from_limits(&limits);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(g: &Group) -> WeightSet {
        WeightSet::plus_minus_one(g.exponent())
    }

    #[test]
    fn small_values() {
        let z22 = Group::new(&[2, 2]).unwrap();
        let r = davenport_weighted(&z22, &pm(&z22), &SearchBudget::exhaustive()).unwrap();
        assert_eq!((r.value, r.status), (3, Status::Exact));
        assert!(r.brute_checked);
        let r = small_s(&z22, &pm(&z22), &SearchBudget::exhaustive()).unwrap();
        assert_eq!(r.value, 5);
        assert!(r.sandwich.iter().all(|c| c.holds));
        let r = e_weighted(&z22, &pm(&z22), &SearchBudget::exhaustive()).unwrap();
        assert_eq!(r.value, 6);

        let z4 = Group::new(&[4]).unwrap();
        assert_eq!(
            e_weighted(&z4, &pm(&z4), &SearchBudget::exhaustive())
                .unwrap()
                .value,
            6
        );
        let z3 = Group::new(&[3]).unwrap();
        let one = WeightSet::new(&[1], 3).unwrap();
        assert_eq!(
            e_weighted(&z3, &one, &SearchBudget::exhaustive())
                .unwrap()
                .value,
            5
        );
        assert_eq!(
            small_s(&z3, &one, &SearchBudget::exhaustive())
                .unwrap()
                .value,
            5
        );
    }

    #[test]
    fn cyclic_davenport() {
        for n in 2..=32u64 {
            let g = Group::new(&[n]).unwrap();
            let r = davenport_weighted(&g, &pm(&g), &SearchBudget::exhaustive()).unwrap();
            assert_eq!(r.value as u32, crate::arith::floor_log2(n) + 1, "n = {n}");
        }
        let g = Group::new(&[4, 8]).unwrap();
        assert_eq!(
            davenport_weighted(&g, &pm(&g), &SearchBudget::exhaustive())
                .unwrap()
                .value,
            6
        );
    }

    #[test]
    fn exhaustive_is_deterministic_across_workers() {
        let g = Group::new(&[3, 3]).unwrap();
        let w = pm(&g);
        let a = small_s(
            &g,
            &w,
            &SearchBudget {
                workers: Some(1),
                ..SearchBudget::exhaustive()
            },
        )
        .unwrap();
        let b = small_s(
            &g,
            &w,
            &SearchBudget {
                workers: Some(3),
                seed: 9,
                ..SearchBudget::exhaustive()
            },
        )
        .unwrap();
        assert_eq!((a.value, &a.witness), (b.value, &b.witness));
    }

    #[test]
    fn node_cap_gives_lower_bound() {
        let g = Group::new(&[5, 5]).unwrap();
        let budget = SearchBudget {
            node_cap: Some(10),
            ..SearchBudget::exhaustive()
        };
        let r = small_s(&g, &pm(&g), &budget).unwrap();
        assert_eq!(r.status, Status::LowerBoundOnly);
        assert!(r.stats.budget_exhausted);
    }

    #[test]
    fn randomized_never_exact() {
        let g = Group::new(&[4, 4]).unwrap();
        let r = small_s(&g, &pm(&g), &SearchBudget::randomized(200, 1)).unwrap();
        assert_eq!(r.status, Status::LowerBoundOnly);
        assert!(r.value <= 8);
        let budget = SearchBudget {
            candidate: Some(2),
            ..SearchBudget::randomized(50, 1)
        };
        let r = small_s(&g, &pm(&g), &budget).unwrap();
        assert_eq!(r.status, Status::RefutedCandidate);
    }

    #[test]
    fn construction_mode_lower_bound() {
        let g = Group::new(&[8, 8]).unwrap();
        let r = small_s(&g, &pm(&g), &SearchBudget::construction_only()).unwrap();
        assert_eq!((r.value, r.status), (14, Status::LowerBoundOnly));
    }

    #[test]
    fn universal_exhaustive_and_counterexample() {
        let g = Group::new(&[9]).unwrap();
        let w = WeightSet::new(&[1, 2], 9).unwrap();
        let r = verify_universal(
            &g,
            &w,
            13,
            &ZeroSumPredicate::LengthDivisibleBy(9),
            &SearchBudget::exhaustive(),
        )
        .unwrap();
        assert!(r.holds());
        assert_eq!(r.covered, r.total);
        let r = verify_universal(
            &g,
            &w,
            12,
            &ZeroSumPredicate::LengthDivisibleBy(9),
            &SearchBudget::exhaustive(),
        )
        .unwrap();
        assert!(matches!(r.verdict, Verdict::Counterexample { .. }));
        let z = Group::new(&[2]).unwrap();
        let one = WeightSet::new(&[1], 2).unwrap();
        let r = verify_universal(
            &z,
            &one,
            0,
            &ZeroSumPredicate::Nonempty,
            &SearchBudget::exhaustive(),
        )
        .unwrap();
        assert!(matches!(r.verdict, Verdict::Counterexample { .. }));
    }

    #[test]
    fn universal_random_mode() {
        let g = Group::new(&[4, 4]).unwrap();
        let b = SearchBudget::randomized(2000, 3);
        let r = verify_universal(&g, &pm(&g), 8, &ZeroSumPredicate::OfLength(4), &b).unwrap();
        assert!(r.holds());
        assert_eq!(r.samples, Some(2000));
        let r = verify_universal(&g, &pm(&g), 5, &ZeroSumPredicate::OfLength(4), &b).unwrap();
        assert!(matches!(r.verdict, Verdict::Counterexample { .. }));
    }
}
