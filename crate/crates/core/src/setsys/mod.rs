//! L-intersecting set systems: membership checks, the uniform and
//! prime-power family bounds, and exact maxima for small parameters.

mod clique;
mod separation;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::binom;
use crate::error::{Error, Result};

pub use clique::{max_family_exhaustive, FamilyMaximum};
pub use separation::{
    check_separation, find_separating_degree, step3_polynomial, Polynomial, SeparatingDegree,
    SeparationCertificate, DEFAULT_VALUATION_CAP,
};

/// Distinct subsets of `[1, n]`, each stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    pub n: usize,
    pub members: Vec<Vec<usize>>,
}

impl SetFamily {
    /// Sorts each member, drops duplicates (first occurrence wins) and
    /// rejects entries outside `[1, n]`.
    pub fn new(n: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for m in members {
            let set: BTreeSet<usize> = m.into_iter().collect();
            if let Some(&x) = set.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::BadParameters(format!(
                    "element {x} outside [1, {n}]"
                )));
            }
            let v: Vec<usize> = set.into_iter().collect();
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
        Ok(SetFamily { n, members: out })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// One subset per line as whitespace- or comma-separated indices.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut members = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let m = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            members.push(m);
        }
        Self::new(n, members)
    }

    pub fn to_text(&self) -> String {
        self.members
            .iter()
            .map(|m| {
                m.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum UniformCheck {
    Holds,
    SizeViolation {
        member: Vec<usize>,
    },
    IntersectionViolation {
        a: Vec<usize>,
        b: Vec<usize>,
        size: usize,
    },
}

/// All members have size `k` and pairwise intersections lie in `l`.
pub fn check_uniform_l(family: &SetFamily, k: usize, l: &BTreeSet<usize>) -> UniformCheck {
    if let Some(m) = family.members.iter().find(|m| m.len() != k) {
        return UniformCheck::SizeViolation { member: m.clone() };
    }
    for (i, a) in family.members.iter().enumerate() {
        for b in &family.members[i + 1..] {
            let s = intersection_size(a, b);
            if !l.contains(&s) {
                return UniformCheck::IntersectionViolation {
                    a: a.clone(),
                    b: b.clone(),
                    size: s,
                };
            }
        }
    }
    UniformCheck::Holds
}

/// `C(n, |L|)`.
pub fn frw_uniform_bound(n: u64, l_size: u64) -> BigUint {
    binom(n, l_size)
}

/// Prime-power data for the modular family bound. `degree` is the
/// separating degree bound `D`, found by search or the `2^{|L|-1}` fallback.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionProfile {
    pub p: u64,
    pub q: u64,
    pub k_set: BTreeSet<u64>,
    pub l_set: BTreeSet<u64>,
    pub degree: u32,
}

impl IntersectionProfile {
    pub fn new(
        p: u64,
        q: u64,
        k_set: BTreeSet<u64>,
        l_set: BTreeSet<u64>,
        degree: u32,
    ) -> Result<Self> {
        separation::check_prime_power(p, q)?;
        if !k_set.is_disjoint(&l_set) {
            return Err(Error::BadParameters("K and L intersect".into()));
        }
        if k_set.iter().chain(&l_set).any(|&x| x >= q) {
            return Err(Error::BadParameters(format!(
                "entries must be below q = {q}"
            )));
        }
        Ok(IntersectionProfile {
            p,
            q,
            k_set,
            l_set,
            degree,
        })
    }
}

/// `Σ_{i=0}^{D} C(n, i)`.
pub fn prime_power_bound(n: u64, profile: &IntersectionProfile) -> BigUint {
    (0..=profile.degree as u64).map(|i| binom(n, i)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionRow {
    pub sizes: (usize, usize),
    /// Intersection sizes `t` compatible with the forbidden lengths.
    pub allowed: Vec<usize>,
}

/// For distinct index sets `I, J ⊆ [1, n]` whose signed sums agree, the
/// symmetric difference yields a zero-sum of length `|I| + |J| - 2|I ∩ J|`.
/// Lists, per size pair, the intersection sizes that avoid `forbidden`.
pub fn restriction_table(
    n: usize,
    sizes: &[usize],
    forbidden: &BTreeSet<usize>,
) -> Vec<RestrictionRow> {
    let mut out = Vec::new();
    for (i, &a) in sizes.iter().enumerate() {
        for &b in &sizes[i..] {
            let lo = (a + b).saturating_sub(n);
            let hi = if a == b {
                a.saturating_sub(1)
            } else {
                a.min(b)
            };
            let allowed = (lo..=hi)
                .filter(|&t| {
                    let d = a + b - 2 * t;
                    d > 0 && !forbidden.contains(&d)
                })
                .collect();
            out.push(RestrictionRow {
                sizes: (a, b),
                allowed,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn uniform_checks() {
        let all2: Vec<Vec<usize>> = (1..=4)
            .flat_map(|a| (a + 1..=4).map(move |b| vec![a, b]))
            .collect();
        let f = SetFamily::new(4, all2).unwrap();
        assert_eq!(check_uniform_l(&f, 2, &set(&[0, 1])), UniformCheck::Holds);
        let f = SetFamily::new(3, vec![vec![1, 2], vec![1, 2, 3]]).unwrap();
        assert!(matches!(
            check_uniform_l(&f, 2, &set(&[0, 1])),
            UniformCheck::SizeViolation { .. }
        ));
        // three 4-sets pairwise meeting in one point, no common point
        let f = SetFamily::new(
            10,
            vec![vec![1, 2, 3, 4], vec![1, 5, 6, 7], vec![2, 5, 8, 9]],
        )
        .unwrap();
        assert_eq!(check_uniform_l(&f, 4, &set(&[1])), UniformCheck::Holds);
        assert!(SetFamily::new(3, vec![vec![4]]).is_err());
    }

    #[test]
    fn family_text_round_trip() {
        let f = SetFamily::parse(5, "1 2\n# comment\n3,4\n2 1\n").unwrap();
        assert_eq!(f.members, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(SetFamily::parse(5, &f.to_text()).unwrap(), f);
    }

    #[test]
    fn bound_values() {
        assert_eq!(frw_uniform_bound(10, 3), BigUint::from(120u32));
        assert_eq!(frw_uniform_bound(10, 4), BigUint::from(210u32));
        assert_eq!(frw_uniform_bound(7, 0), BigUint::from(1u32));
        let p = IntersectionProfile::new(2, 4, set64(&[0]), set64(&[1, 2]), 2).unwrap();
        assert_eq!(prime_power_bound(10, &p), BigUint::from(56u32));
        let p = IntersectionProfile::new(2, 4, set64(&[0]), set64(&[]), 0).unwrap();
        assert_eq!(prime_power_bound(10, &p), BigUint::from(1u32));
        assert!(IntersectionProfile::new(2, 4, set64(&[1]), set64(&[1]), 0).is_err());
        assert!(IntersectionProfile::new(2, 6, set64(&[]), set64(&[1]), 0).is_err());
    }

    fn set64(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn restriction_rows() {
        let t = restriction_table(10, &[2, 4], &set(&[2, 4, 8]));
        let get = |a, b| {
            t.iter()
                .find(|r| r.sizes == (a, b))
                .unwrap()
                .allowed
                .clone()
        };
        assert_eq!(get(2, 2), Vec::<usize>::new());
        assert_eq!(get(2, 4), vec![0]);
        assert_eq!(get(4, 4), vec![1]);
    }
}
