//! Exact integer utilities: binomials, p-adic valuations, binomial
//! congruences modulo a prime and periodic binomial sums.
//!
//! Nothing here uses floating point; every inequality involving `2^n / m`
//! is compared as `m · x` against `2^n`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `⌊log₂ n⌋` by bit length; `n ≥ 1`.
pub fn floor_log2(n: u64) -> u32 {
    assert!(n > 0, "floor_log2(0)");
    63 - n.leading_zeros()
}

/// `⌈log₂ n⌉`; `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n > 0, "ceil_log2(0)");
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

pub fn div_ceil(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Exact `C(n, r)`, zero when `r > n`.
pub fn binom(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, r)` as `u128`; panics on overflow. For counting enumeration spaces.
pub fn binom_u128(n: u64, r: u64) -> u128 {
    binom(n, r).to_u128().expect("binomial overflows u128")
}

/// A p-adic valuation; `v_p(0) = +∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

pub fn v_p(x: &BigInt, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut e = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        e += 1;
    }
    Ok(Valuation::Finite(e))
}

pub fn v_p_i128(x: i128, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x == 0 {
        return Ok(Valuation::Infinite);
    }
    let p = p as i128;
    let (mut x, mut e) = (x, 0);
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    Ok(Valuation::Finite(e))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Generalized binomial `C(top, j) = top(top-1)…(top-j+1) / j!` modulo the
/// prime `p`, for any integer `top`. The p-parts of numerator and denominator
/// are stripped and counted separately; the unit parts are reduced mod p.
pub fn binom_mod_prime(top: i64, j: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pi = p as i128;
    let (mut num_unit, mut den_unit) = (1u64, 1u64);
    let (mut num_v, mut den_v) = (0u64, 0u64);
    for i in 0..j as i128 {
        let mut x = top as i128 - i;
        if x == 0 {
            // the falling factorial vanishes, so does the binomial
            return Ok(0);
        }
        while x % pi == 0 {
            x /= pi;
            num_v += 1;
        }
        num_unit = (num_unit as u128 * x.rem_euclid(pi) as u128 % p as u128) as u64;
        let mut y = i + 1;
        while y % pi == 0 {
            y /= pi;
            den_v += 1;
        }
        den_unit = (den_unit as u128 * y.rem_euclid(pi) as u128 % p as u128) as u64;
    }
    debug_assert!(num_v >= den_v);
    if num_v > den_v {
        return Ok(0);
    }
    let inv = pow_mod(den_unit, p - 2, p);
    Ok((num_unit as u128 * inv as u128 % p as u128) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCheck {
    pub computed: u64,
    pub expected: u64,
    pub equal: bool,
}

/// `C(m-1, p^k-1) mod p` against the indicator of `p^k | m`.
pub fn lemma22_check(m: i64, p: u64, k: u32) -> Result<CongruenceCheck> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = p
        .checked_pow(k)
        .ok_or_else(|| Error::BadParameters(format!("{p}^{k} overflows")))?;
    let computed = binom_mod_prime(m - 1, q - 1, p)?;
    let expected = u64::from((m as i128).rem_euclid(q as i128) == 0);
    Ok(CongruenceCheck {
        computed,
        expected,
        equal: computed == expected,
    })
}

/// `Σ_{0 ≤ i ≤ n, i ≡ r (mod m)} C(n, i)`.
pub fn sbinom(n: u64, r: i64, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::BadParameters("modulus must be at least 1".into()));
    }
    let start = r.rem_euclid(m as i64) as u64;
    let mut acc = BigUint::zero();
    let mut i = start;
    while i <= n {
        acc += binom(n, i);
        i += m;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicSumCheck {
    pub n: u64,
    pub m: u64,
    /// `m · ⟨n, ⌊(n+1)/2⌋⟩_m ≥ 2^n`
    pub lower_bound_holds: bool,
    /// `⟨n, r⟩_m` nonincreasing for `r` from `⌊(n+1)/2⌋` to `⌊(n+m)/2⌋`
    pub chain_holds: bool,
    pub chain: Vec<String>,
}

impl PeriodicSumCheck {
    pub fn holds(&self) -> bool {
        self.lower_bound_holds && self.chain_holds
    }
}

pub fn lemma53_check(n: u64, m: u64) -> Result<PeriodicSumCheck> {
    if n == 0 || m == 0 {
        return Err(Error::BadParameters("n and m must be positive".into()));
    }
    let start = (n + 1) / 2;
    let end = (n + m) / 2;
    let values: Vec<BigUint> = (start..=end)
        .map(|r| sbinom(n, r as i64, m))
        .collect::<Result<_>>()?;
    let lower_bound_holds = BigUint::from(m) * &values[0] >= BigUint::one() << n;
    let chain_holds = values.windows(2).all(|w| w[0] >= w[1]);
    Ok(PeriodicSumCheck {
        n,
        m,
        lower_bound_holds,
        chain_holds,
        chain: values.iter().map(|v| v.to_string()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingCheck {
    pub pairs: u64,
    pub quadruples: u64,
    pub distinct_sums_lower: u64,
    pub group_order: u64,
    pub exceeds: bool,
}

/// The pigeonhole count over the 2- and 4-subsets of a 10-term sequence in
/// `Z_8^2`: every 2-subset pairs with two 4-subsets and the rest group in
/// fives, giving at least `45 + (210 - 2·45)/5` distinct sums against 64.
pub fn lemma41_counting_check() -> CountingCheck {
    let pairs = binom(10, 2).to_u64().unwrap();
    let quadruples = binom(10, 4).to_u64().unwrap();
    let distinct_sums_lower = pairs + (quadruples - 2 * pairs) / 5;
    let group_order = 8 * 8;
    CountingCheck {
        pairs,
        quadruples,
        distinct_sums_lower,
        group_order,
        exceeds: distinct_sums_lower > group_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(10, 4), BigUint::from(210u32));
        assert_eq!(binom(10, 2), BigUint::from(45u32));
        assert_eq!(binom(17, 0), BigUint::one());
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom_u128(16, 7), 11440);
    }

    #[test]
    fn pascal_rule_grid() {
        for n in (1..=200u64).step_by(7) {
            for r in (1..n).step_by(5) {
                assert_eq!(binom(n, r), binom(n - 1, r - 1) + binom(n - 1, r));
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(v_p(&BigInt::from(-6), 2).unwrap(), Valuation::Finite(1));
        assert_eq!(v_p(&BigInt::from(27), 3).unwrap(), Valuation::Finite(3));
        assert_eq!(v_p(&BigInt::zero(), 2).unwrap(), Valuation::Infinite);
        assert_eq!(v_p(&BigInt::from(5), 4), Err(Error::NotPrime(4)));
        assert_eq!(v_p_i128(-48, 2).unwrap(), Valuation::Finite(4));
    }

    #[test]
    fn logs() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(64), 6);
        assert_eq!(floor_log2(63), 5);
        assert_eq!(ceil_log2(64), 6);
        assert_eq!(ceil_log2(65), 7);
        assert_eq!(ceil_log2(3), 2);
    }

    /// Direct big-integer generalized binomial, reduced mod p.
    fn oracle_binom_mod(top: i64, j: u64, p: u64) -> u64 {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..j as i64 {
            num *= top - i;
            den *= i + 1;
        }
        let q = num / den;
        let p = BigInt::from(p);
        (((q % &p) + &p) % &p).to_u64().unwrap()
    }

    #[test]
    fn binom_mod_prime_matches_bigint() {
        for p in [2u64, 3, 5, 7] {
            for top in -40i64..=40 {
                for j in 0..=12u64 {
                    assert_eq!(
                        binom_mod_prime(top, j, p).unwrap(),
                        oracle_binom_mod(top, j, p),
                        "C({top},{j}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn lemma22_examples() {
        assert_eq!(
            lemma22_check(9, 3, 2).unwrap(),
            CongruenceCheck {
                computed: 1,
                expected: 1,
                equal: true
            }
        );
        assert_eq!(lemma22_check(6, 3, 1).unwrap().computed, 1);
        let c = lemma22_check(5, 3, 1).unwrap();
        assert_eq!((c.computed, c.expected), (0, 0));
        assert_eq!(lemma22_check(5, 9, 1), Err(Error::NotPrime(9)));
        assert!(lemma22_check(0, 2, 3).unwrap().equal);
        assert!(lemma22_check(-8, 2, 3).unwrap().equal);
    }

    #[test]
    fn sbinom_examples() {
        assert_eq!(sbinom(4, 2, 2).unwrap(), BigUint::from(8u32));
        assert_eq!(sbinom(9, 3, 1).unwrap(), BigUint::from(512u32));
        assert_eq!(sbinom(5, 0, 4).unwrap(), BigUint::from(6u32));
        assert_eq!(sbinom(5, -4, 4).unwrap(), BigUint::from(6u32));
        for n in 0..20u64 {
            for m in 1..10u64 {
                let total: BigUint = (0..m as i64).map(|r| sbinom(n, r, m).unwrap()).sum();
                assert_eq!(total, BigUint::one() << n);
            }
        }
    }

    #[test]
    fn lemma53_boundary() {
        let c = lemma53_check(4, 2).unwrap();
        assert!(c.lower_bound_holds && c.chain_holds);
        assert_eq!(c.chain, vec!["8", "8"]);
        assert!(lemma53_check(3, 9).unwrap().holds());
    }

    #[test]
    fn counting_check() {
        let c = lemma41_counting_check();
        assert_eq!(
            (c.distinct_sums_lower, c.group_order, c.exceeds),
            (69, 64, true)
        );
        assert_eq!((c.pairs, c.quadruples), (45, 210));
    }
}
