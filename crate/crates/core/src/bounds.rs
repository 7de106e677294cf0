//! Closed-form bounds for the weighted invariants, each paired with a check
//! of its hypotheses. Logarithms are integer bit lengths throughout.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{floor_log2, is_prime};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::reach::WeightSet;
use crate::search::InvariantKind;

/// `Σ (p^{k_t} - 1)` over the cyclic summands of a p-group.
pub fn d_star(group: &Group) -> Result<u64> {
    group.is_p_group().ok_or(Error::NotAPGroup)?;
    Ok(group
        .primary_decomposition()
        .prime_powers()
        .iter()
        .map(|q| q - 1)
        .sum())
}

/// `D(G) = d*(G) + 1` for p-groups.
pub fn davenport_olson(group: &Group) -> Result<u64> {
    Ok(d_star(group)? + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Applicability {
    pub applicable: bool,
    pub reason: String,
}

impl Applicability {
    fn yes(reason: impl Into<String>) -> Self {
        Applicability {
            applicable: true,
            reason: reason.into(),
        }
    }

    fn no(reason: impl Into<String>) -> Self {
        Applicability {
            applicable: false,
            reason: reason.into(),
        }
    }
}

/// Hypotheses on `A` for the length-divisible-by-`p^k` theorem: a p-group,
/// no weight divisible by `p`, and weights pairwise incongruent mod `p`.
pub fn thm11_applicable(group: &Group, weights: &WeightSet) -> Result<Applicability> {
    let p = group.is_p_group().ok_or(Error::NotAPGroup)?;
    if weights.exponent() != group.exponent() {
        return Ok(Applicability::no(
            "weight set built for a different exponent",
        ));
    }
    if let Some(a) = weights.weights().iter().find(|&&a| a % p == 0) {
        return Ok(Applicability::no(format!("{a} is divisible by {p}")));
    }
    let w = weights.weights();
    for (i, a) in w.iter().enumerate() {
        if let Some(b) = w[i + 1..].iter().find(|&&b| (b - a) % p == 0) {
            return Ok(Applicability::no(format!("{a} ≡ {b} (mod {p})")));
        }
    }
    Ok(Applicability::yes(format!(
        "p = {p}; weights are units, pairwise incongruent mod {p}"
    )))
}

/// `p^k - 1 + ⌈(d*(G) + 1)/|A|⌉`.
pub fn thm11_length(group: &Group, weights: &WeightSet, k: u32) -> Result<u64> {
    let p = group.is_p_group().ok_or(Error::NotAPGroup)?;
    let pk = p
        .checked_pow(k)
        .ok_or_else(|| Error::BadParameters(format!("{p}^{k} overflows")))?;
    Ok(pk - 1 + (d_star(group)? + 1).div_ceil(weights.len() as u64))
}

/// `exp(G) - 1 + ⌈D(G)/|A|⌉`, when the hypotheses hold and `|A|(exp - 1) ≥ d*`.
pub fn thm11_s_upper(group: &Group, weights: &WeightSet) -> Result<Option<u64>> {
    if !thm11_applicable(group, weights)?.applicable {
        return Ok(None);
    }
    let ds = d_star(group)?;
    let exp = group.exponent();
    if (weights.len() as u64) * (exp - 1) < ds {
        return Ok(None);
    }
    Ok(Some(exp - 1 + (ds + 1).div_ceil(weights.len() as u64)))
}

/// `|A| ≥ rank` implies the side condition of [`thm11_s_upper`]; reported
/// for information only.
pub fn thm11_rank_condition(group: &Group, weights: &WeightSet) -> bool {
    weights.len() >= group.rank()
}

/// `⌈D(G)/|A|⌉`.
pub fn thangadurai_upper(group: &Group, weights: &WeightSet) -> Result<u64> {
    let a = thm11_applicable(group, weights)?;
    if !a.applicable {
        return Err(Error::HypothesesFail(a.reason));
    }
    Ok(davenport_olson(group)?.div_ceil(weights.len() as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm13Bounds {
    pub d_lower: u64,
    pub d_upper: u64,
    pub s_lower: u64,
}

/// `(Σ⌊log₂ n_i⌋ + 1, ⌊log₂|G|⌋ + 1, exp(G) + Σ⌊log₂ n_i⌋)`.
pub fn thm13_bounds(group: &Group) -> Thm13Bounds {
    let sum: u64 = group.factors().iter().map(|&n| floor_log2(n) as u64).sum();
    Thm13Bounds {
        d_lower: sum + 1,
        d_upper: floor_log2(group.order() as u64) as u64 + 1,
        s_lower: group.exponent() + sum,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Thm43Case {
    /// `n ∈ {2, 4, 8}`: the value is known exactly.
    Exact,
    /// `v₂(n) ≤ 1`.
    OddPart,
    /// `v₂(n) = 2`.
    FourDivides,
    /// `v₂(n) ≥ 3`.
    EightDivides,
}

/// Upper bound for `s_{±1}(Z_n ⊕ Z_n)`.
pub fn thm43_s_upper(n: u64) -> Result<(u64, Thm43Case)> {
    if n < 2 {
        return Err(Error::BadParameters(format!("n = {n} < 2")));
    }
    Ok(match n {
        2 => (5, Thm43Case::Exact),
        4 => (8, Thm43Case::Exact),
        8 => (14, Thm43Case::Exact),
        _ => match n.trailing_zeros() {
            0 | 1 => (2 * n + 1, Thm43Case::OddPart),
            2 => (2 * n, Thm43Case::FourDivides),
            _ => (15 * (n / 8) + 1, Thm43Case::EightDivides),
        },
    })
}

/// `r(p-1)/|A| + p` as a reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalBound {
    pub numerator: u64,
    pub denominator: u64,
    pub applicable: bool,
}

impl RationalBound {
    /// Largest integer not exceeding the bound.
    pub fn floor(&self) -> u64 {
        self.numerator / self.denominator
    }
}

/// Applicable when `p` is prime and `1 ≤ r < p|A|/(p-1)`.
pub fn aas_upper(p: u64, r: u64, a_size: u64) -> RationalBound {
    let den = a_size.max(1);
    let num = r * (p.saturating_sub(1)) + p * den;
    let g = num.gcd(&den).max(1);
    RationalBound {
        numerator: num / g,
        denominator: den / g,
        applicable: is_prime(p) && a_size >= 1 && r >= 1 && r * (p - 1) < p * a_size,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedBound {
    pub name: String,
    pub value: Option<u64>,
    /// Set only for bounds that are not integers in general.
    pub exact_value: Option<(u64, u64)>,
    pub applicable: bool,
    pub reason: String,
}

impl NamedBound {
    fn int(name: &str, value: Option<u64>, applicable: bool, reason: impl Into<String>) -> Self {
        NamedBound {
            name: name.into(),
            value,
            exact_value: None,
            applicable,
            reason: reason.into(),
        }
    }
}

/// Every bound tabulated side by side; inapplicable ones stay present and flagged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group: Group,
    pub weights: WeightSet,
    pub bounds: Vec<NamedBound>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&NamedBound> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

/// `k` values for which the length bound is listed: `1..=k_r`.
pub fn bound_report(group: &Group, weights: &WeightSet) -> Result<BoundReport> {
    weights.check_group(group)?;
    let mut bounds = Vec::new();
    let pg = group.is_p_group();
    let not_p = "not a p-group";

    match d_star(group) {
        Ok(d) => {
            bounds.push(NamedBound::int("d_star", Some(d), true, "p-group"));
            bounds.push(NamedBound::int(
                "davenport_olson",
                Some(d + 1),
                true,
                "p-group",
            ));
        }
        Err(_) => {
            bounds.push(NamedBound::int("d_star", None, false, not_p));
            bounds.push(NamedBound::int("davenport_olson", None, false, not_p));
        }
    }

    match pg {
        Some(p) => {
            let app = thm11_applicable(group, weights)?;
            let kr = group
                .primary_decomposition()
                .components
                .iter()
                .map(|c| c.exponent)
                .max()
                .unwrap_or(1);
            for k in 1..=kr {
                bounds.push(NamedBound::int(
                    &format!("thm11_length(k={k})"),
                    Some(thm11_length(group, weights, k)?),
                    app.applicable,
                    format!("{}; zero-sum length divisible by {}", app.reason, p.pow(k)),
                ));
            }
            let s_up = thm11_s_upper(group, weights)?;
            let reason = if !app.applicable {
                app.reason.clone()
            } else if s_up.is_none() {
                "|A|(exp - 1) < d*".to_string()
            } else {
                "|A|(exp - 1) ≥ d*".to_string()
            };
            bounds.push(NamedBound::int(
                "thm11_s_upper",
                s_up,
                s_up.is_some(),
                reason,
            ));
            bounds.push(match thangadurai_upper(group, weights) {
                Ok(v) => NamedBound::int("thangadurai_upper", Some(v), true, app.reason.clone()),
                Err(_) => NamedBound::int("thangadurai_upper", None, false, app.reason.clone()),
            });
        }
        None => {
            bounds.push(NamedBound::int("thm11_length(k=1)", None, false, not_p));
            bounds.push(NamedBound::int("thm11_s_upper", None, false, not_p));
            bounds.push(NamedBound::int("thangadurai_upper", None, false, not_p));
        }
    }

    let pm = weights.is_plus_minus_one();
    let t13 = thm13_bounds(group);
    let why = if pm {
        "weights {±1}"
    } else {
        "stated for weights {±1} only"
    };
    bounds.push(NamedBound::int("thm13_D_lower", Some(t13.d_lower), pm, why));
    bounds.push(NamedBound::int("thm13_D_upper", Some(t13.d_upper), pm, why));
    bounds.push(NamedBound::int("thm13_s_lower", Some(t13.s_lower), pm, why));

    let square = group.rank() == 2 && group.factors()[0] == group.factors()[1];
    if square {
        let (v, case) = thm43_s_upper(group.exponent())?;
        bounds.push(NamedBound::int(
            "thm43_s_upper",
            Some(v),
            pm,
            format!("{why}; case {case:?}"),
        ));
    } else {
        bounds.push(NamedBound::int(
            "thm43_s_upper",
            None,
            false,
            "group is not Z_n ⊕ Z_n",
        ));
    }

    if let Some(p) = group
        .factors()
        .iter()
        .all(|&n| n == group.exponent())
        .then_some(group.exponent())
    {
        let r = aas_upper(p, group.rank() as u64, weights.len() as u64);
        bounds.push(NamedBound {
            name: "aas_upper".into(),
            value: Some(r.floor()),
            exact_value: Some((r.numerator, r.denominator)),
            applicable: r.applicable,
            reason: if r.applicable {
                format!("Z_{p}^r with r < p|A|/(p - 1)")
            } else {
                "needs prime p and 1 ≤ r < p|A|/(p - 1)".into()
            },
        });
    } else {
        bounds.push(NamedBound::int(
            "aas_upper",
            None,
            false,
            "group is not Z_p^r",
        ));
    }

    Ok(BoundReport {
        group: group.clone(),
        weights: weights.clone(),
        bounds,
    })
}

/// One inequality from the consistency sandwich.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichCheck {
    pub name: String,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

fn le(name: &str, lhs: u64, rhs: u64) -> SandwichCheck {
    SandwichCheck {
        name: name.into(),
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

/// The bounds that an exactly computed invariant value must respect.
/// `known_d` is an exact `D_A(G)` when available; it enables the
/// `s ≥ exp + D - 1` and `E = |G| + D - 1` checks.
pub fn sandwich(
    group: &Group,
    weights: &WeightSet,
    kind: InvariantKind,
    value: u64,
    known_d: Option<u64>,
) -> Result<Vec<SandwichCheck>> {
    let mut out = Vec::new();
    let pm = weights.is_plus_minus_one();
    let t13 = thm13_bounds(group);
    let applicable = match group.is_p_group() {
        Some(_) => thm11_applicable(group, weights)?.applicable,
        None => false,
    };
    match kind {
        InvariantKind::D => {
            if pm {
                out.push(le("thm13_D_lower <= D", t13.d_lower, value));
                out.push(le("D <= thm13_D_upper", value, t13.d_upper));
            }
            if applicable {
                out.push(le(
                    "D <= thangadurai_upper",
                    value,
                    thangadurai_upper(group, weights)?,
                ));
            }
        }
        InvariantKind::S => {
            if pm {
                out.push(le("thm13_s_lower <= s", t13.s_lower, value));
                if let Some(d) = known_d {
                    out.push(le("exp + D - 1 <= s", group.exponent() + d - 1, value));
                }
                if group.rank() == 2 && group.factors()[0] == group.factors()[1] {
                    out.push(le(
                        "s <= thm43_s_upper",
                        value,
                        thm43_s_upper(group.exponent())?.0,
                    ));
                }
            }
            if applicable {
                if let Some(u) = thm11_s_upper(group, weights)? {
                    out.push(le("s <= thm11_s_upper", value, u));
                }
            }
        }
        InvariantKind::E => {
            if let Some(d) = known_d {
                let want = group.order() as u64 + d - 1;
                out.push(SandwichCheck {
                    name: "E == |G| + D - 1".into(),
                    lhs: value,
                    rhs: want,
                    holds: value == want,
                });
            }
        }
    }
    Ok(out)
}
