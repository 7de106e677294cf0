//! Finite abelian groups presented as `Z_{n_1} ⊕ … ⊕ Z_{n_r}` with
//! `n_1 | n_2 | … | n_r`.
//!
//! Elements are coordinate vectors. For dense membership arrays every element
//! also has a mixed-radix index in `[0, |G|)`: the **last** invariant factor
//! varies fastest, so `index = Σ c_i · stride_i` with `stride_r = 1` and
//! `stride_i = n_{i+1} · … · n_r`. In `Z_4 ⊕ Z_8` the element `(1,0)` has
//! index 8 and `(0,1)` has index 1.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::error::{Error, Result};

/// Default cap on `|G|` so membership arrays stay in memory.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Element {
    coords: Vec<u64>,
}

impl Element {
    pub fn new(coords: Vec<u64>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// One `Z_{p^k}` summand of the primary decomposition, repeated `multiplicity` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimaryComponent {
    pub prime: u64,
    pub exponent: u32,
    pub multiplicity: usize,
}

impl PrimaryComponent {
    pub fn prime_power(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryDecomposition {
    pub components: Vec<PrimaryComponent>,
}

impl PrimaryDecomposition {
    pub fn order(&self) -> u128 {
        self.components
            .iter()
            .map(|c| (c.prime_power() as u128).pow(c.multiplicity as u32))
            .product()
    }

    /// The cyclic factors `p^k`, expanded by multiplicity, sorted ascending.
    pub fn prime_powers(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .components
            .iter()
            .flat_map(|c| std::iter::repeat(c.prime_power()).take(c.multiplicity))
            .collect();
        out.sort_unstable();
        out
    }
}

/// A finite abelian group in invariant-factor form. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Group {
    factors: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
}

impl TryFrom<Vec<u64>> for Group {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Group::new(&v)
    }
}

impl From<Group> for Vec<u64> {
    fn from(g: Group) -> Self {
        g.factors
    }
}

impl Group {
    /// Builds a group from an invariant-factor chain; rejects anything else.
    pub fn new(factors: &[u64]) -> Result<Self> {
        Self::with_options(factors, false, DEFAULT_ORDER_CAP)
    }

    /// Builds a group from an arbitrary list of cyclic factors, merging them
    /// into invariant-factor form (e.g. `[3, 2]` becomes `Z_6`).
    pub fn normalized(factors: &[u64]) -> Result<Self> {
        Self::with_options(factors, true, DEFAULT_ORDER_CAP)
    }

    pub fn with_options(factors: &[u64], normalize: bool, order_cap: u64) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::FactorBelowTwo(bad));
        }
        let order: u128 = factors.iter().map(|&n| n as u128).product();
        if order > order_cap as u128 {
            return Err(Error::OrderTooLarge {
                order,
                cap: order_cap,
            });
        }
        let chain = factors.windows(2).all(|w| w[1] % w[0] == 0);
        let factors = if chain {
            factors.to_vec()
        } else if normalize {
            invariant_factors(factors)
        } else {
            return Err(Error::NotDivisibilityChain(factors.to_vec()));
        };
        let mut strides = vec![1u64; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(Group {
            order: order as u64,
            factors,
            strides,
        })
    }

    /// `Z_n^r`.
    pub fn power(n: u64, r: usize) -> Result<Self> {
        Self::new(&vec![n; r])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent(&self) -> u64 {
        *self.factors.last().expect("nonempty")
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub(crate) fn strides(&self) -> &[u64] {
        &self.strides
    }

    /// Canonical text form, e.g. `"4,8"`.
    pub fn canonical(&self) -> String {
        self.factors
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn zero(&self) -> Element {
        Element::new(vec![0; self.rank()])
    }

    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::GroupMismatch);
        }
        Ok(Element::new(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    /// The unit vector `e_t` (0-based `t`).
    pub fn generator(&self, t: usize) -> Element {
        let mut c = vec![0; self.rank()];
        c[t] = 1;
        Element::new(c)
    }

    fn check(&self, g: &Element) -> Result<()> {
        if g.coords.len() != self.rank()
            || g.coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n)
        {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(Element::new(
            g.coords
                .iter()
                .zip(&h.coords)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(Element::new(
            g.coords
                .iter()
                .zip(&self.factors)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        ))
    }

    /// `a · g`; `a` is reduced modulo each `n_i`, so any integer is accepted.
    pub fn scalar_mul(&self, a: i64, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(Element::new(
            g.coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| {
                    let a = a.rem_euclid(n as i64) as u128;
                    ((a * c as u128) % n as u128) as u64
                })
                .collect(),
        ))
    }

    pub fn index_of(&self, g: &Element) -> Result<usize> {
        self.check(g)?;
        Ok(g.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| (c * s) as usize)
            .sum())
    }

    pub fn element_of(&self, index: usize) -> Result<Element> {
        if index >= self.order() {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.order(),
            });
        }
        Ok(Element::new(self.coords_of(index)))
    }

    pub(crate) fn coords_of(&self, index: usize) -> Vec<u64> {
        let idx = index as u64;
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (idx / s) % n)
            .collect()
    }

    pub(crate) fn coord_at(&self, index: usize, i: usize) -> u64 {
        (index as u64 / self.strides[i]) % self.factors[i]
    }

    /// Index arithmetic; callers guarantee the indices are in range.
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = (i as u64, j as u64);
        let mut out = 0;
        for (&n, &s) in self.factors.iter().zip(&self.strides) {
            out += ((i / s % n + j / s % n) % n) * s;
        }
        out as usize
    }

    pub fn neg_index(&self, i: usize) -> usize {
        let i = i as u64;
        let mut out = 0;
        for (&n, &s) in self.factors.iter().zip(&self.strides) {
            out += ((n - i / s % n) % n) * s;
        }
        out as usize
    }

    pub fn scalar_mul_index(&self, a: i64, i: usize) -> usize {
        let i = i as u64;
        let mut out = 0;
        for (&n, &s) in self.factors.iter().zip(&self.strides) {
            let a = a.rem_euclid(n as i64) as u128;
            out += ((a * (i / s % n) as u128 % n as u128) as u64) * s;
        }
        out as usize
    }

    /// Order of the element with the given index.
    pub fn element_order(&self, i: usize) -> u64 {
        self.factors
            .iter()
            .enumerate()
            .map(|(t, &n)| n / self.coord_at(i, t).gcd(&n))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn primary_decomposition(&self) -> PrimaryDecomposition {
        let mut counts: BTreeMap<(u64, u32), usize> = BTreeMap::new();
        for &n in &self.factors {
            for (p, k) in factorize(n) {
                *counts.entry((p, k)).or_default() += 1;
            }
        }
        PrimaryDecomposition {
            components: counts
                .into_iter()
                .map(|((prime, exponent), multiplicity)| PrimaryComponent {
                    prime,
                    exponent,
                    multiplicity,
                })
                .collect(),
        }
    }

    /// `Some(p)` iff `|G|` is a power of the single prime `p`.
    pub fn is_p_group(&self) -> Option<u64> {
        let primes: Vec<u64> = factorize(self.order).into_iter().map(|(p, _)| p).collect();
        match primes.as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    pub fn is_elementary_2_group(&self) -> bool {
        self.exponent() == 2
    }

    pub fn is_self_inverse(&self, i: usize) -> bool {
        self.neg_index(i) == i
    }

    /// One representative (the smaller index) per orbit `{g, -g}`, ascending.
    pub fn negation_orbit_representatives(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| i <= self.neg_index(i))
            .collect()
    }

    pub fn negation_representative(&self, i: usize) -> usize {
        i.min(self.neg_index(i))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Merges arbitrary cyclic factors into an invariant-factor chain.
fn invariant_factors(factors: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &n in factors {
        for (p, k) in factorize(n) {
            by_prime.entry(p).or_default().push(p.pow(k));
        }
    }
    let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; rank];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        // largest power goes to the last invariant factor
        for (j, &q) in powers.iter().enumerate() {
            out[rank - 1 - j] *= q;
        }
    }
    out
}

/// Every abelian group of order in `[2, max_order]`, as invariant-factor chains.
pub fn groups_up_to(max_order: u64) -> Vec<Group> {
    fn rec(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<Group>) {
        let last = *prefix.last().unwrap();
        out.push(Group::new(prefix).expect("valid chain"));
        let mut next = last;
        while order * next <= max {
            prefix.push(next);
            rec(prefix, order * next, max, out);
            prefix.pop();
            next += last;
        }
    }
    let mut out = Vec::new();
    for n1 in 2..=max_order {
        let mut prefix = vec![n1];
        rec(&mut prefix, n1, max_order, &mut out);
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then(a.factors().cmp(b.factors())));
    out
}
