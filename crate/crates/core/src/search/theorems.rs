//! Drivers that instantiate the universal checker at the thresholds of the
//! classical weighted zero-sum statements.

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_log2, floor_log2};
use crate::bounds::{self, thm11_applicable, thm11_length};
use crate::error::{Error, Result};
use crate::group::{groups_up_to, Group};
use crate::reach::{WeightSet, ZeroSumPredicate};

use super::{verify_universal, SearchBudget, UniversalResult, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub theorem: String,
    pub cases: Vec<UniversalResult>,
    /// Groups skipped because the statement excludes them, with the reason.
    pub skipped: Vec<(Group, String)>,
}

impl TheoremCheck {
    pub fn holds(&self) -> bool {
        self.cases.iter().all(|c| c.holds())
    }

    pub fn counterexample(&self) -> Option<&UniversalResult> {
        self.cases
            .iter()
            .find(|c| matches!(c.verdict, Verdict::Counterexample { .. }))
    }

    pub fn budget_exhausted(&self) -> bool {
        self.cases
            .iter()
            .any(|c| c.verdict == Verdict::BudgetExhausted)
    }
}

/// Every sequence of length `p^k - 1 + ⌈(d*(G) + 1)/|A|⌉` has a nonempty
/// weighted zero-sum whose length is divisible by `p^k`.
pub fn verify_thm11(
    group: &Group,
    weights: &WeightSet,
    k: u32,
    budget: &SearchBudget,
) -> Result<UniversalResult> {
    let a = thm11_applicable(group, weights)?;
    if !a.applicable {
        return Err(Error::HypothesesFail(a.reason));
    }
    if k == 0 {
        return Err(Error::BadParameters("k must be positive".into()));
    }
    let p = group.is_p_group().ok_or(Error::NotAPGroup)?;
    let len = thm11_length(group, weights, k)? as usize;
    let pred = ZeroSumPredicate::LengthDivisibleBy(p.pow(k) as usize);
    verify_universal(group, weights, len, &pred, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Thm41Part {
    I,
    II,
    III,
}

impl std::str::FromStr for Thm41Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Thm41Part::I),
            "ii" | "2" => Ok(Thm41Part::II),
            "iii" | "3" => Ok(Thm41Part::III),
            _ => Err(Error::Parse(format!("unknown part {s:?}"))),
        }
    }
}

/// `(length, predicate)` pairs to check for one group, or the reason the
/// statement does not apply. Thresholds use `⌈log₂|G|⌉` for `≥` and
/// `⌊log₂|G|⌋` for `>`.
pub fn thm41_cases(
    group: &Group,
    part: Thm41Part,
) -> std::result::Result<Vec<(usize, ZeroSumPredicate)>, String> {
    let order = group.order() as u64;
    let (lo, hi) = (floor_log2(order) as usize, ceil_log2(order) as usize);
    match part {
        Thm41Part::I => {
            if group.is_elementary_2_group() {
                return Err("elementary 2-group".into());
            }
            Ok(vec![(hi + 1, ZeroSumPredicate::Proper)])
        }
        Thm41Part::II => {
            if group.is_elementary_2_group() && group.rank() % 2 == 0 {
                return Err("elementary 2-group of even rank".into());
            }
            Ok(vec![(hi + 2, ZeroSumPredicate::ProperEven)])
        }
        Thm41Part::III => Ok(vec![
            (lo + 1, ZeroSumPredicate::Nonempty),
            (lo + 2, ZeroSumPredicate::Even),
        ]),
    }
}

/// Runs one part over every group of order in `[2, max_order]`, with `{±1}` weights.
pub fn verify_thm41(
    part: Thm41Part,
    max_order: u64,
    budget: &SearchBudget,
) -> Result<TheoremCheck> {
    let mut out = TheoremCheck {
        theorem: format!("4.1({part:?})").to_lowercase(),
        cases: Vec::new(),
        skipped: Vec::new(),
    };
    for g in groups_up_to(max_order) {
        match thm41_cases(&g, part) {
            Err(why) => out.skipped.push((g, why)),
            Ok(cases) => {
                let w = WeightSet::plus_minus_one(g.exponent());
                for (len, pred) in cases {
                    let r = verify_universal(&g, &w, len, &pred, budget)?;
                    let stop = !r.holds();
                    out.cases.push(r);
                    if stop {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Length-10 sequences over `Z_8 ⊕ Z_8` have a `{±1}`-weighted zero-sum of
/// length 2, 4 or 8.
pub fn verify_lemma42(budget: &SearchBudget) -> Result<UniversalResult> {
    let g = Group::power(8, 2)?;
    verify_universal(
        &g,
        &WeightSet::plus_minus_one(8),
        10,
        &ZeroSumPredicate::LengthIn(vec![2, 4, 8]),
        budget,
    )
}

/// `s_{±1}(Z_n ⊕ Z_n)` upper bound, checked at that length.
pub fn verify_thm43(n: u64, budget: &SearchBudget) -> Result<UniversalResult> {
    let g = Group::power(n, 2)?;
    let (len, _) = bounds::thm43_s_upper(n)?;
    verify_universal(
        &g,
        &WeightSet::plus_minus_one(n),
        len as usize,
        &ZeroSumPredicate::OfLength(n as usize),
        budget,
    )
}

/// Upper bound on `D_{±1}(G)`: every sequence of length `⌊log₂|G|⌋ + 1` has a
/// nonempty `{±1}`-weighted zero-sum.
pub fn verify_thm13_upper(group: &Group, budget: &SearchBudget) -> Result<UniversalResult> {
    let len = bounds::thm13_bounds(group).d_upper as usize;
    verify_universal(
        group,
        &WeightSet::plus_minus_one(group.exponent()),
        len,
        &ZeroSumPredicate::Nonempty,
        budget,
    )
}
