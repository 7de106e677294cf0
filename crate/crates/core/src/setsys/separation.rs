//! Separating polynomials: `f ∈ Z[x]` with `v_p(f(α)) < v_p(f(b))` for all
//! `b ≡ l (mod q)`, `l ∈ L`.
//!
//! With `M = v_p(f(α)) + 1`, the condition is `f(b) ≡ 0 (mod p^M)` on the
//! whole of `L + qZ`. Since `f(b) mod p^M` depends only on `b mod p^M`, it
//! suffices to test the residues `b mod p^e`, `e = max(M, k)`, that reduce
//! into `L` mod `q`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, v_p, Valuation};
use crate::error::{Error, Result};

pub const DEFAULT_VALUATION_CAP: u32 = 64;

/// Residue scans larger than this are refused.
const RESIDUE_LIMIT: u64 = 1 << 26;

/// Integer polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "decimal")]
    pub coeffs: Vec<BigInt>,
}

/// Coefficients as decimal strings, so JSON stays readable at any size.
mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(D::Error::custom))
            .collect()
    }
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial { coeffs };
        while p.coeffs.len() > 1 && p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        if p.coeffs.is_empty() {
            p.coeffs.push(BigInt::zero());
        }
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![BigInt::from(c)])
    }

    /// `∏ (x - r)`.
    pub fn from_roots(roots: &[i64]) -> Self {
        let mut c = vec![BigInt::one()];
        for &r in roots {
            let mut next = vec![BigInt::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn reduced(&self, m: u64) -> Vec<u128> {
        let mb = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&mb).to_u128().expect("residue fits"))
            .collect()
    }
}

fn eval_mod(coeffs: &[u128], x: u128, m: u128) -> u128 {
    coeffs.iter().rev().fold(0u128, |acc, &c| (acc * x + c) % m)
}

/// Returns `k` with `q = p^k`.
pub(crate) fn check_prime_power(p: u64, q: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut k = 0;
    let mut x = 1u64;
    while x < q {
        x = x.saturating_mul(p);
        k += 1;
    }
    if x != q || k == 0 {
        return Err(Error::BadParameters(format!(
            "q = {q} is not a positive power of {p}"
        )));
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub polynomial: Polynomial,
    pub alpha: i64,
    pub p: u64,
    pub q: u64,
    pub l_set: BTreeSet<u64>,
    /// `v_p(f(α))`.
    pub valuation: u32,
    /// Every `b ∈ L + qZ` has `v_p(f(b)) ≥ valuation + margin`.
    pub margin: u32,
    /// Residues actually evaluated.
    pub residues_checked: u64,
}

/// `Ok(Some(cert))` if `f` separates `α` from `L + qZ`, `Ok(None)` if not.
pub fn check_separation(
    f: &Polynomial,
    alpha: i64,
    l_set: &BTreeSet<u64>,
    q: u64,
    p: u64,
    valuation_cap: u32,
) -> Result<Option<SeparationCertificate>> {
    let k = check_prime_power(p, q)?;
    if l_set.iter().any(|&l| l >= q) {
        return Err(Error::BadParameters(format!(
            "L entries must be below q = {q}"
        )));
    }
    if l_set.contains(&(alpha.rem_euclid(q as i64) as u64)) {
        return Err(Error::BadParameters(format!(
            "alpha = {alpha} lies in L mod {q}"
        )));
    }
    let v = match v_p(&f.eval(&BigInt::from(alpha)), p)? {
        Valuation::Infinite => return Err(Error::ValuationCapExceeded { cap: valuation_cap }),
        Valuation::Finite(v) if v >= valuation_cap => {
            return Err(Error::ValuationCapExceeded { cap: valuation_cap })
        }
        Valuation::Finite(v) => v,
    };
    let big_m = v + 1;
    let e = big_m.max(k);
    let pe = p
        .checked_pow(e)
        .filter(|&x| x <= RESIDUE_LIMIT)
        .ok_or(Error::ResidueSpaceTooLarge { exponent: e })?;
    let pm = p.pow(big_m);
    let coeffs = f.reduced(pm);
    let mut checked = 0u64;
    for &l in l_set {
        let mut b = l;
        while b < pe {
            checked += 1;
            if eval_mod(&coeffs, b as u128, pm as u128) != 0 {
                return Ok(None);
            }
            b += q;
        }
    }
    Ok(Some(SeparationCertificate {
        polynomial: f.clone(),
        alpha,
        p,
        q,
        l_set: l_set.clone(),
        valuation: v,
        margin: 1,
        residues_checked: checked,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingDegree {
    pub degree: u32,
    pub certificate: Option<SeparationCertificate>,
    /// True when no product of linear factors up to `max_degree` separated
    /// and `2^{|L|-1}` is reported instead.
    pub fallback: bool,
}

/// Least degree among monic products of `(x - r)`, `r ∈ [0, q-1]`, that
/// separates `α` from `L + qZ`. This is an upper bound on the true minimal
/// degree, never a claim of minimality.
pub fn find_separating_degree(
    alpha: i64,
    l_set: &BTreeSet<u64>,
    q: u64,
    p: u64,
    max_degree: u32,
) -> Result<SeparatingDegree> {
    check_prime_power(p, q)?;
    for d in 0..=max_degree {
        let mut roots = vec![0i64; d as usize];
        loop {
            let f = Polynomial::from_roots(&roots);
            match check_separation(&f, alpha, l_set, q, p, DEFAULT_VALUATION_CAP) {
                Ok(Some(cert)) => {
                    return Ok(SeparatingDegree {
                        degree: d,
                        certificate: Some(cert),
                        fallback: false,
                    })
                }
                Ok(None)
                | Err(Error::ValuationCapExceeded { .. })
                | Err(Error::ResidueSpaceTooLarge { .. }) => {}
                Err(e) => return Err(e),
            }
            if !next_multiset(&mut roots, q as i64) {
                break;
            }
        }
    }
    let fallback = if l_set.is_empty() {
        0
    } else {
        1u32 << (l_set.len() - 1)
    };
    Ok(SeparatingDegree {
        degree: fallback,
        certificate: None,
        fallback: true,
    })
}

/// Advances a nondecreasing tuple over `[0, q)`.
fn next_multiset(v: &mut [i64], q: i64) -> bool {
    let mut i = v.len();
    while i > 0 {
        i -= 1;
        if v[i] + 1 < q {
            let x = v[i] + 1;
            for y in &mut v[i..] {
                *y = x;
            }
            return true;
        }
    }
    false
}

/// `∏_{i=1}^{2^r - 1} (x - i)`.
pub fn step3_polynomial(r: u32) -> Polynomial {
    let roots: Vec<i64> = (1..(1i64 << r)).collect();
    Polynomial::from_roots(&roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn polynomial_basics() {
        let f = Polynomial::from_roots(&[1, 2, 3]);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.eval(&BigInt::from(0)), BigInt::from(-6));
        assert_eq!(Polynomial::from_roots(&[]).coeffs, vec![BigInt::one()]);
    }

    #[test]
    fn separation_examples() {
        let f = Polynomial::from_roots(&[1, 2, 3]);
        let c = check_separation(&f, 0, &set(&[1, 2, 3]), 4, 2, 64)
            .unwrap()
            .unwrap();
        assert_eq!(c.valuation, 1);
        assert!(
            check_separation(&Polynomial::constant(1), 0, &set(&[1]), 2, 2, 64)
                .unwrap()
                .is_none()
        );
        let c = check_separation(&Polynomial::from_roots(&[1]), 0, &set(&[1]), 2, 2, 64)
            .unwrap()
            .unwrap();
        assert_eq!(c.valuation, 0);
        assert_eq!(
            check_separation(&Polynomial::from_roots(&[0]), 0, &set(&[1]), 2, 2, 64),
            Err(Error::ValuationCapExceeded { cap: 64 })
        );
        assert!(check_separation(&f, 1, &set(&[1]), 4, 2, 64).is_err());
        assert_eq!(
            check_separation(&f, 0, &set(&[1]), 4, 3, 64).unwrap_err(),
            Error::BadParameters("q = 4 is not a positive power of 3".into())
        );
    }

    #[test]
    fn separation_is_periodic() {
        // shifting residues by q·p^M leaves the decision unchanged
        let f = Polynomial::from_roots(&[1, 3, 5]);
        let l = set(&[1, 3, 5]);
        let base = check_separation(&f, 0, &l, 8, 2, 64).unwrap();
        let m = base.as_ref().map_or(1, |c| c.valuation + 1);
        let shift = 8 * 2i64.pow(m);
        let shifted = check_separation(&f, shift, &l, 8, 2, 64).unwrap();
        assert_eq!(base.is_some(), shifted.is_some());
    }

    #[test]
    fn degree_search_examples() {
        let d = find_separating_degree(0, &set(&[3]), 4, 2, 3).unwrap();
        assert_eq!((d.degree, d.fallback), (1, false));
        let d = find_separating_degree(2, &set(&[0]), 3, 3, 2).unwrap();
        assert_eq!(d.degree, 1);
        let d = find_separating_degree(0, &set(&[1, 2, 3]), 4, 2, 0).unwrap();
        assert!(d.fallback);
        assert_eq!(d.degree, 4);
        let d = find_separating_degree(0, &set(&[]), 4, 2, 3).unwrap();
        assert_eq!(d.degree, 0);
    }

    #[test]
    fn step3_certificates() {
        for r in 1..=4u32 {
            let q = 1u64 << r;
            let l: BTreeSet<u64> = (1..q).collect();
            let f = step3_polynomial(r);
            assert_eq!(f.degree() as u64, q - 1);
            assert!(
                check_separation(&f, 0, &l, q, 2, 64).unwrap().is_some(),
                "r = {r}"
            );
        }
    }
}
