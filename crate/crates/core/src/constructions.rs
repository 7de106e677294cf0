//! Explicit extremal sequences. Each builder checks its defining property
//! through the reach engine before returning.

use serde::{Deserialize, Serialize};

use crate::arith::{floor_log2, is_prime};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::reach::{ReachContext, WeightSet, ZeroSumPredicate};
use crate::search::InvariantKind;
use crate::sequence::Sequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    PGroupExample,
    BinaryBasis,
    PaddedDavenportWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub kind: ConstructionKind,
    pub parameters: serde_json::Value,
    pub expected_length: usize,
    pub predicate: ZeroSumPredicate,
    /// Whether the sequence is expected to satisfy `predicate`.
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub recipe: ConstructionRecipe,
    pub group: Group,
    pub weights: WeightSet,
    pub sequence: Sequence,
    pub verified: bool,
}

impl Construction {
    fn verify(mut self) -> Result<Self> {
        if self.sequence.len() != self.recipe.expected_length {
            return Err(Error::BadParameters(format!(
                "length {} differs from the formula value {}",
                self.sequence.len(),
                self.recipe.expected_length
            )));
        }
        let ctx = ReachContext::new(&self.group, &self.weights)?;
        let got = self.recipe.predicate.evaluate(&ctx, &self.sequence)?;
        if got != self.recipe.expected {
            return Err(Error::WitnessInvalid);
        }
        self.verified = true;
        Ok(self)
    }
}

/// `p^{k_r} - 1 + Σ⌊(p^{k_t} - 1)/l⌋`.
pub fn example_length(p: u64, ks: &[u32], l: u64) -> u64 {
    let exp = p.pow(*ks.iter().max().unwrap_or(&0));
    exp - 1 + ks.iter().map(|&k| (p.pow(k) - 1) / l).sum::<u64>()
}

/// `0^{p^{k_r} - 1}` followed by each unit vector `e_t` repeated
/// `⌊(p^{k_t} - 1)/l⌋` times, over `⊕ Z_{p^{k_t}}`. It has no
/// `[1, l]`-weighted zero-sum subsequence of length `p^{k_r}`.
pub fn example_sequence(p: u64, ks: &[u32], l: u64) -> Result<Construction> {
    if !is_prime(p) {
        return Err(Error::BadParameters(format!("{p} is not prime")));
    }
    if ks.is_empty() || ks.contains(&0) || ks.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::BadParameters(
            "ks must be a nonempty nondecreasing list of positive exponents".into(),
        ));
    }
    let factors: Vec<u64> = ks
        .iter()
        .map(|&k| {
            p.checked_pow(k)
                .ok_or_else(|| Error::BadParameters("p^k overflows".into()))
        })
        .collect::<Result<_>>()?;
    let group = Group::new(&factors)?;
    let exp = group.exponent();
    if l == 0 || l > exp - 1 {
        return Err(Error::BadParameters(format!(
            "l = {l} outside [1, {}]",
            exp - 1
        )));
    }
    let mut seq = Sequence::empty();
    seq.push(0, (exp - 1) as usize);
    for (t, &q) in factors.iter().enumerate() {
        let e = group.index_of(&group.generator(t))?;
        seq.push(e, ((q - 1) / l) as usize);
    }
    Construction {
        recipe: ConstructionRecipe {
            kind: ConstructionKind::PGroupExample,
            parameters: serde_json::json!({ "p": p, "ks": ks, "l": l }),
            expected_length: example_length(p, ks, l) as usize,
            predicate: ZeroSumPredicate::OfLength(exp as usize),
            expected: false,
        },
        group,
        weights: WeightSet::interval(l, exp)?,
        sequence: seq,
        verified: false,
    }
    .verify()
}

fn binary_basis(group: &Group) -> Result<Sequence> {
    let mut seq = Sequence::empty();
    for (i, &n) in group.factors().iter().enumerate() {
        let e = group.generator(i);
        for j in 0..floor_log2(n) {
            let g = group.scalar_mul(1i64 << j, &e)?;
            seq.push(group.index_of(&g)?, 1);
        }
    }
    Ok(seq)
}

/// `(2^0 e_i)(2^1 e_i)…(2^{⌊log₂ n_i⌋ - 1} e_i)` over all `i`: no nonempty
/// `{±1}`-weighted zero-sum.
pub fn binary_basis_sequence(group: &Group) -> Result<Construction> {
    let seq = binary_basis(group)?;
    Construction {
        recipe: ConstructionRecipe {
            kind: ConstructionKind::BinaryBasis,
            parameters: serde_json::json!({ "group": group.factors() }),
            expected_length: group
                .factors()
                .iter()
                .map(|&n| floor_log2(n) as usize)
                .sum(),
            predicate: ZeroSumPredicate::Nonempty,
            expected: false,
        },
        group: group.clone(),
        weights: WeightSet::plus_minus_one(group.exponent()),
        sequence: seq,
        verified: false,
    }
    .verify()
}

/// `0^{exp(G) - 1} W` for a zero-sum-free `W`: no zero-sum of length `exp(G)`.
pub fn padded_witness(group: &Group, weights: &WeightSet, w: &Sequence) -> Result<Construction> {
    let ctx = ReachContext::new(group, weights)?;
    if ZeroSumPredicate::Nonempty.evaluate(&ctx, w)? {
        return Err(Error::WitnessInvalid);
    }
    let exp = group.exponent() as usize;
    let mut seq = w.clone();
    seq.push(0, exp - 1);
    Construction {
        recipe: ConstructionRecipe {
            kind: ConstructionKind::PaddedDavenportWitness,
            parameters: serde_json::json!({ "witness_length": w.len() }),
            expected_length: exp - 1 + w.len(),
            predicate: ZeroSumPredicate::OfLength(exp),
            expected: false,
        },
        group: group.clone(),
        weights: weights.clone(),
        sequence: seq,
        verified: false,
    }
    .verify()
}

/// Candidate sequences avoiding the zero-sum of `kind`. Callers must still
/// check them; candidates that do not apply to `weights` may fail.
pub(crate) fn lower_bound_candidates(
    group: &Group,
    weights: &WeightSet,
    kind: InvariantKind,
) -> Vec<Sequence> {
    let mut out = Vec::new();
    let Ok(bb) = binary_basis(group) else {
        return out;
    };
    match kind {
        InvariantKind::D => out.push(bb),
        InvariantKind::S | InvariantKind::E => {
            let pad = if kind == InvariantKind::S {
                group.exponent() as usize - 1
            } else {
                group.order() - 1
            };
            let mut s = bb;
            s.push(0, pad);
            out.push(s);
            if kind == InvariantKind::S {
                if let Some(p) = group.is_p_group() {
                    let ks: Vec<u32> = group.factors().iter().map(|&n| n.ilog(p)).collect();
                    let l = *weights.weights().last().expect("weight sets are nonempty");
                    if let Ok(c) = example_sequence(p, &ks, l) {
                        if c.group == *group {
                            out.push(c.sequence);
                        }
                    }
                }
            }
        }
    }
    out
}
