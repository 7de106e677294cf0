//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails. Values marked "reference" are published
//! values; everything else is cross-checked against the brute-force oracle
//! below, which shares no code with the library.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wzs::arith::{lemma22_check, lemma41_counting_check, lemma53_check};
use wzs::bounds::{thangadurai_upper, thm11_s_upper, thm13_bounds, thm43_s_upper};
use wzs::constructions::{binary_basis_sequence, example_length, example_sequence, padded_witness};
use wzs::group::groups_up_to;
use wzs::reach::reach_table;
use wzs::search::theorems::{verify_lemma42, verify_thm11, verify_thm41, Thm41Part};
use wzs::search::{compute_invariant, verify_universal};
use wzs::setsys::{
    check_separation, find_separating_degree, frw_uniform_bound, max_family_exhaustive,
    step3_polynomial,
};
use wzs::{
    Group, InvariantKind, InvariantResult, SearchBudget, Sequence, WeightSet, ZeroSumPredicate,
};

/// Plain coordinate arithmetic and subset enumeration.
mod oracle {
    pub struct G {
        pub f: Vec<u64>,
    }

    impl G {
        pub fn new(f: &[u64]) -> Self {
            G { f: f.to_vec() }
        }

        pub fn order(&self) -> usize {
            self.f.iter().product::<u64>() as usize
        }

        /// Mixed radix, last coordinate fastest.
        pub fn coords(&self, mut i: usize) -> Vec<u64> {
            let mut c = vec![0; self.f.len()];
            for t in (0..self.f.len()).rev() {
                c[t] = i as u64 % self.f[t];
                i /= self.f[t] as usize;
            }
            c
        }

        pub fn index(&self, c: &[u64]) -> usize {
            c.iter()
                .zip(&self.f)
                .fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
        }

        fn add_scaled(&self, acc: &[u64], a: u64, g: &[u64]) -> Vec<u64> {
            acc.iter()
                .zip(g)
                .zip(&self.f)
                .map(|((&x, &y), &n)| (x + a * y) % n)
                .collect()
        }

        /// Every `(length, weighted sum)` over subsets and weight choices.
        pub fn sums(
            &self,
            seq: &[Vec<u64>],
            weights: &[u64],
        ) -> std::collections::BTreeSet<(usize, usize)> {
            let mut out = std::collections::BTreeSet::new();
            self.walk(seq, weights, 0, &vec![0; self.f.len()], 0, &mut |l, s| {
                out.insert((l, self.index(s)));
                false
            });
            out
        }

        /// Whether some subset of accepted length has a zero weighted sum.
        pub fn has_zero(
            &self,
            seq: &[Vec<u64>],
            weights: &[u64],
            ok: impl Fn(usize) -> bool,
        ) -> bool {
            self.walk(seq, weights, 0, &vec![0; self.f.len()], 0, &mut |l, s| {
                l > 0 && ok(l) && s.iter().all(|&x| x == 0)
            })
        }

        fn walk(
            &self,
            seq: &[Vec<u64>],
            weights: &[u64],
            i: usize,
            acc: &[u64],
            len: usize,
            visit: &mut dyn FnMut(usize, &[u64]) -> bool,
        ) -> bool {
            if i == seq.len() {
                return visit(len, acc);
            }
            if self.walk(seq, weights, i + 1, acc, len, visit) {
                return true;
            }
            for &a in weights {
                let next = self.add_scaled(acc, a, &seq[i]);
                if self.walk(seq, weights, i + 1, &next, len + 1, visit) {
                    return true;
                }
            }
            false
        }

        /// All multisets of `len` element indices, as nondecreasing vectors.
        pub fn multisets(&self, len: usize) -> Vec<Vec<usize>> {
            fn rec(
                n: usize,
                len: usize,
                start: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if cur.len() == len {
                    out.push(cur.clone());
                    return;
                }
                for x in start..n {
                    cur.push(x);
                    rec(n, len, x, cur, out);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            rec(self.order(), len, 0, &mut Vec::new(), &mut out);
            out
        }

        pub fn elems(&self, idx: &[usize]) -> Vec<Vec<u64>> {
            idx.iter().map(|&i| self.coords(i)).collect()
        }
    }
}

use oracle::G;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn pm(g: &Group) -> WeightSet {
    WeightSet::plus_minus_one(g.exponent())
}

fn oracle_weights(w: &WeightSet) -> Vec<u64> {
    w.weights().to_vec()
}

/// The library witness avoids the target zero-sum and every sequence of
/// length `value` contains one, both by the oracle.
fn oracle_confirms(r: &InvariantResult) -> Result<(), String> {
    let g = G::new(r.group.factors());
    let w = oracle_weights(&r.weights);
    let target = |l: usize| match r.kind {
        InvariantKind::D => true,
        InvariantKind::S => l == r.group.exponent() as usize,
        InvariantKind::E => l == r.group.order(),
    };
    let wit = g.elems(&r.witness.terms());
    ensure(wit.len() + 1 == r.value, || "witness length".into())?;
    ensure(!g.has_zero(&wit, &w, target), || {
        format!("oracle finds a zero-sum in witness {:?}", wit)
    })?;
    let skip_zero = r.kind == InvariantKind::D;
    for m in g.multisets(r.value) {
        if skip_zero && m.contains(&0) {
            continue;
        }
        ensure(g.has_zero(&g.elems(&m), &w, target), || {
            format!("oracle: {m:?} avoids the zero-sum at length {}", r.value)
        })?;
    }
    Ok(())
}

fn criterion1(results: &mut Vec<InvariantResult>) -> Outcome {
    let b = SearchBudget::exhaustive();
    let cases: [(u64, InvariantKind, usize, bool); 5] = [
        (2, InvariantKind::S, 5, true),
        (2, InvariantKind::D, 3, true),
        (4, InvariantKind::S, 8, false),
        (3, InvariantKind::S, 5, true),
        (5, InvariantKind::S, 9, false),
    ];
    let mut notes = Vec::new();
    for (n, kind, want, brute) in cases {
        let g = Group::power(n, 2).map_err(e)?;
        let r = compute_invariant(&g, &pm(&g), kind, &b).map_err(e)?;
        ensure(r.is_exact() && r.value == want, || {
            format!(
                "{kind}(Z_{n}^2) = {} ({:?}), reference {want}",
                r.value, r.status
            )
        })?;
        if brute {
            oracle_confirms(&r)?;
        }
        notes.push(format!("{kind}(Z_{n}^2)={}", r.value));
        results.push(r);
    }
    Ok(notes.join(", "))
}

fn criterion2(results: &mut Vec<InvariantResult>) -> Outcome {
    let b = SearchBudget::exhaustive();
    for n in 2..=64u64 {
        let g = Group::new(&[n]).map_err(e)?;
        let r = compute_invariant(&g, &pm(&g), InvariantKind::D, &b).map_err(e)?;
        let want = n.ilog2() as usize + 1;
        ensure(r.is_exact() && r.value == want, || {
            format!("D(Z_{n}) = {}, expected {want}", r.value)
        })?;
        if n <= 16 {
            oracle_confirms(&r)?;
        }
        results.push(r);
    }
    Ok("n = 2..64 exact, oracle-confirmed for n <= 16".into())
}

fn criterion3(samples: u64) -> Outcome {
    let t = Instant::now();
    let g = Group::power(8, 2).map_err(e)?;
    let w = pm(&g);
    let bb = binary_basis_sequence(&g).map_err(e)?;
    let padded = padded_witness(&g, &w, &bb.sequence).map_err(e)?;
    ensure(padded.sequence.len() == 13 && padded.verified, || {
        "padded sequence".into()
    })?;
    let og = G::new(&[8, 8]);
    ensure(
        !og.has_zero(&og.elems(&padded.sequence.terms()), &[1, 7], |l| l == 8),
        || "oracle finds a length-8 zero-sum in the padded sequence".into(),
    )?;
    let exact_ms = t.elapsed().as_millis();
    ensure(exact_ms < 1000, || {
        format!("exact check took {exact_ms} ms")
    })?;
    ensure(thm43_s_upper(8).map_err(e)?.0 == 14, || {
        "upper bound formula".into()
    })?;

    let budget = SearchBudget::randomized(samples, 20240607);
    let r = verify_universal(&g, &w, 14, &ZeroSumPredicate::OfLength(8), &budget).map_err(e)?;
    ensure(r.holds() && r.samples == Some(samples), || {
        format!("length-14 sampling: {:?}", r.verdict)
    })?;
    let l = verify_lemma42(&SearchBudget::randomized(samples, 20240608)).map_err(e)?;
    ensure(l.holds() && l.samples == Some(samples), || {
        format!("length-10 sampling: {:?}", l.verdict)
    })?;
    Ok(format!(
        "s >= 14 exact in {exact_ms} ms; {samples} + {samples} samples without counterexample"
    ))
}

fn criterion4() -> Outcome {
    let b = SearchBudget::exhaustive();
    let cases: [(&[u64], &[u64], &[u32]); 5] = [
        (&[3], &[1, 2], &[1]),
        (&[9], &[1, 2], &[1, 2]),
        (&[3, 3], &[1, 2], &[1]),
        (&[5], &[1, 2, 3, 4], &[1]),
        (&[2, 4], &[1], &[1, 2]),
    ];
    let mut count = 0;
    for (f, a, ks) in cases {
        let g = Group::new(f).map_err(e)?;
        let w = WeightSet::for_group(a, &g).map_err(e)?;
        for &k in ks {
            let r = verify_thm11(&g, &w, k, &b).map_err(e)?;
            ensure(r.holds(), || {
                format!("{f:?} A={a:?} k={k}: {:?}", r.verdict)
            })?;
            ensure(r.covered.is_some() && r.covered == r.total, || {
                "incomplete coverage".into()
            })?;
            // the oracle repeats the scan when it is small enough
            let og = G::new(f);
            let q = g.is_p_group().unwrap().pow(k) as usize;
            let total: u128 =
                wzs::arith::binom_u128((og.order() + r.length - 1) as u64, r.length as u64);
            if total <= 5000 {
                for m in og.multisets(r.length) {
                    ensure(og.has_zero(&og.elems(&m), a, |l| l % q == 0), || {
                        format!("oracle: {m:?} fails")
                    })?;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} (group, A, k) cases exhaustive"))
}

fn ks_lists(p: u64, max_rank: usize, max_order: u64) -> Vec<Vec<u32>> {
    let kmax = (1..).take_while(|&k| p.pow(k) <= 27).last().unwrap();
    let mut out = Vec::new();
    fn rec(
        p: u64,
        kmax: u32,
        max_rank: usize,
        max_order: u64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_rank {
            return;
        }
        let lo = *cur.last().unwrap_or(&1);
        for k in lo..=kmax {
            let order: u64 = cur.iter().map(|&c| p.pow(c)).product::<u64>() * p.pow(k);
            if order > max_order {
                break;
            }
            cur.push(k);
            rec(p, kmax, max_rank, max_order, cur, out);
            cur.pop();
        }
    }
    rec(p, kmax, max_rank, max_order, &mut Vec::new(), &mut out);
    out
}

fn criterion5() -> Outcome {
    let mut count = 0;
    let mut oracle_count = 0;
    for p in [2u64, 3, 5] {
        for ks in ks_lists(p, 4, 1 << 16) {
            let exp = p.pow(*ks.last().unwrap());
            for l in 1..exp {
                let c = example_sequence(p, &ks, l).map_err(e)?;
                let want: u64 = exp - 1 + ks.iter().map(|&k| (p.pow(k) - 1) / l).sum::<u64>();
                ensure(
                    c.sequence.len() as u64 == want && example_length(p, &ks, l) == want,
                    || format!("p={p} ks={ks:?} l={l}: length {}", c.sequence.len()),
                )?;
                ensure(c.verified, || "not verified".into())?;
                let factors: Vec<u64> = ks.iter().map(|&k| p.pow(k)).collect();
                let n = c.sequence.len() as u128;
                let subsets = wzs::arith::binom_u128(n as u64, exp);
                if subsets.saturating_mul((l as u128).pow(exp as u32)) <= 200_000 {
                    let og = G::new(&factors);
                    let ws: Vec<u64> = (1..=l).collect();
                    ensure(
                        !og.has_zero(&og.elems(&c.sequence.terms()), &ws, |x| x == exp as usize),
                        || format!("oracle: p={p} ks={ks:?} l={l} has a zero-sum"),
                    )?;
                    oracle_count += 1;
                }
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} constructions (rank <= 4, order <= 2^16), {oracle_count} oracle-confirmed"
    ))
}

fn criterion6() -> Outcome {
    let b = SearchBudget::exhaustive();
    let mut cases = 0;
    let mut skipped = 0;
    for part in [Thm41Part::I, Thm41Part::II, Thm41Part::III] {
        let r = verify_thm41(part, 16, &b).map_err(e)?;
        ensure(r.holds(), || {
            format!("part {part:?}: {:?}", r.counterexample())
        })?;
        ensure(r.cases.iter().all(|c| c.covered == c.total), || {
            "coverage".into()
        })?;
        ensure(part != Thm41Part::III || r.cases.len() == 48, || {
            "every group checked twice in part iii".into()
        })?;
        cases += r.cases.len();
        skipped += r.skipped.len();
    }
    ensure(groups_up_to(16).len() == 24, || {
        "expected 24 groups of order <= 16".into()
    })?;
    Ok(format!(
        "{cases} (group, threshold) cases, {skipped} excluded by hypothesis"
    ))
}

fn criterion7(results: &[InvariantResult]) -> Outcome {
    let mut names = BTreeSet::new();
    let mut checks = 0;
    for r in results {
        for c in &r.sandwich {
            ensure(c.holds, || {
                format!(
                    "{} on {:?}: {} vs {}",
                    c.name,
                    r.group.factors(),
                    c.lhs,
                    c.rhs
                )
            })?;
            names.insert(c.name.clone());
            checks += 1;
        }
    }
    // the weighted cases of the divisibility statement, computed exactly
    let b = SearchBudget::exhaustive();
    let cases: [(&[u64], &[u64]); 5] = [
        (&[3], &[1, 2]),
        (&[9], &[1, 2]),
        (&[3, 3], &[1, 2]),
        (&[5], &[1, 2, 3, 4]),
        (&[2, 4], &[1]),
    ];
    for (f, a) in cases {
        let g = Group::new(f).map_err(e)?;
        let w = WeightSet::for_group(a, &g).map_err(e)?;
        let d = compute_invariant(&g, &w, InvariantKind::D, &b).map_err(e)?;
        let s = compute_invariant(&g, &w, InvariantKind::S, &b).map_err(e)?;
        let dup = thangadurai_upper(&g, &w).map_err(e)?;
        ensure(d.value as u64 <= dup, || {
            format!("D_A({f:?}) = {} > {dup}", d.value)
        })?;
        names.insert("D <= thangadurai_upper".to_string());
        checks += 1;
        if let Some(u) = thm11_s_upper(&g, &w).map_err(e)? {
            ensure(s.value as u64 <= u, || {
                format!("s_A({f:?}) = {} > {u}", s.value)
            })?;
            names.insert("s <= thm11_s_upper".to_string());
            checks += 1;
        }
        for r in [&d, &s] {
            ensure(r.sandwich.iter().all(|c| c.holds), || {
                format!("sandwich on {f:?}")
            })?;
            checks += r.sandwich.len();
        }
    }
    // the sampled Z_8^2 value sits inside its bounds
    let t = thm13_bounds(&Group::power(8, 2).map_err(e)?);
    ensure(
        t.s_lower <= 14 && 14 <= thm43_s_upper(8).map_err(e)?.0,
        || "Z_8^2 bounds".into(),
    )?;
    for need in [
        "thm13_D_lower <= D",
        "D <= thm13_D_upper",
        "thm13_s_lower <= s",
        "s <= thm11_s_upper",
        "D <= thangadurai_upper",
    ] {
        ensure(names.contains(need), || format!("no check of {need}"))?;
    }
    Ok(format!(
        "{checks} inequalities over {} bound families",
        names.len()
    ))
}

fn naive_max_family(n: usize, k: usize, l: &BTreeSet<usize>) -> usize {
    let verts: Vec<u32> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect();
    fn rec(verts: &[u32], l: &BTreeSet<usize>, i: usize, chosen: &mut Vec<u32>, best: &mut usize) {
        if chosen.len() + (verts.len() - i) <= *best {
            return;
        }
        if i == verts.len() {
            *best = chosen.len();
            return;
        }
        let v = verts[i];
        if chosen
            .iter()
            .all(|&c| l.contains(&((c & v).count_ones() as usize)))
        {
            chosen.push(v);
            rec(verts, l, i + 1, chosen, best);
            chosen.pop();
        }
        rec(verts, l, i + 1, chosen, best);
    }
    let mut best = 0;
    rec(&verts, l, 0, &mut Vec::new(), &mut best);
    best
}

fn criterion8() -> Outcome {
    let b = SearchBudget::exhaustive();
    let mut instances = 0;
    let mut cross = 0;
    for n in 1..=9usize {
        for k in 1..=n.min(4) {
            for mask in 0u32..1 << k {
                let l: BTreeSet<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                let r = max_family_exhaustive(n, k, &l, &b).map_err(e)?;
                ensure(r.exact, || "inexact".into())?;
                let bound = frw_uniform_bound(n as u64, l.len() as u64);
                ensure(BigUint::from(r.size) <= bound, || {
                    format!("n={n} k={k} L={l:?}: {} > {bound}", r.size)
                })?;
                if n <= 6 {
                    let want = naive_max_family(n, k, &l);
                    ensure(r.size == want, || {
                        format!("n={n} k={k} L={l:?}: {} vs oracle {want}", r.size)
                    })?;
                    cross += 1;
                }
                instances += 1;
            }
        }
    }
    for r in 1..=4u32 {
        let q = 1u64 << r;
        let lset: BTreeSet<u64> = (1..q).collect();
        let f = step3_polynomial(r);
        ensure(f.degree() as u64 == q - 1, || "degree".into())?;
        ensure(
            check_separation(&f, 0, &lset, q, 2, 64)
                .map_err(e)?
                .is_some(),
            || format!("r={r} does not separate"),
        )?;
        if r <= 3 {
            let d = find_separating_degree(0, &lset, q, 2, (q - 1) as u32).map_err(e)?;
            ensure(!d.fallback && d.degree as u64 == q - 1, || {
                format!("r={r}: search found degree {}", d.degree)
            })?;
        }
    }
    Ok(format!("{instances} instances within the bound ({cross} oracle-matched); certificates for r = 1..4"))
}

/// `C(m-1, j) mod p` straight from the product formula, for any integer `m`.
fn binom_mod_p_oracle(m: i64, j: u64, p: u64) -> u64 {
    // C(t, j) = t (t-1) ... (t-j+1) / j! as an exact rational
    let t = m - 1;
    let mut num = num_bigint::BigInt::from(1);
    for i in 0..j as i64 {
        num *= t - i;
    }
    let den: num_bigint::BigInt = (1..=j).map(num_bigint::BigInt::from).product();
    let q = num / den;
    let r = ((q % p as i64) + p as i64) % p as i64;
    r.to_u64().unwrap()
}

fn criterion9() -> Outcome {
    let mut checks = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for k in 0..=3u32 {
            let pk = p.pow(k);
            for m in -2000i64..=2000 {
                let c = lemma22_check(m, p, k).map_err(e)?;
                ensure(c.equal, || format!("m={m} p={p} k={k}: {c:?}"))?;
                let want_ind = u64::from(m.rem_euclid(pk as i64) == 0);
                ensure(c.expected == want_ind, || "indicator".into())?;
                if pk <= 125 && m.abs() <= 300 {
                    ensure(binom_mod_p_oracle(m, pk - 1, p) == c.computed, || {
                        format!("oracle residue m={m} p={p} k={k}")
                    })?;
                }
                checks += 1;
            }
        }
    }
    for n in 1..=30u64 {
        for m in 1..=16u64 {
            let c = lemma53_check(n, m).map_err(e)?;
            ensure(c.holds(), || format!("n={n} m={m}: {c:?}"))?;
            // independent recomputation of the first chain value
            let r0 = (n + 1) / 2;
            let s: BigUint = (0..=n)
                .filter(|i| (*i as i64 - r0 as i64).rem_euclid(m as i64) == 0)
                .map(|i| binom_oracle(n, i))
                .sum();
            ensure(c.chain[0] == s.to_string(), || {
                format!("n={n} m={m}: sum mismatch")
            })?;
            ensure(BigUint::from(m) * &s >= BigUint::from(1u32) << n, || {
                "2^n/m".into()
            })?;
            checks += 1;
        }
    }
    let c = lemma41_counting_check();
    ensure(c.pairs == 45 && c.quadruples == 210, || format!("{c:?}"))?;
    ensure(
        c.distinct_sums_lower == 69 && c.group_order == 64 && c.exceeds,
        || format!("{c:?}"),
    )?;
    Ok(format!("{checks} checks; counting 69 > 64"))
}

fn binom_oracle(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![BigUint::from(1u32); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row[r as usize].clone()
}

fn criterion10(cases: usize) -> Outcome {
    let groups = groups_up_to(16);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for c in 0..cases {
        let g = &groups[rng.gen_range(0..groups.len())];
        let exp = g.exponent();
        let size = rng.gen_range(1..=3usize.min(exp as usize - 1));
        let mut ws = BTreeSet::new();
        while ws.len() < size {
            ws.insert(rng.gen_range(1..exp));
        }
        let ws: Vec<u64> = ws.into_iter().collect();
        let w = WeightSet::new(&ws, exp).map_err(e)?;
        let len = rng.gen_range(0..=6usize);
        let idx: Vec<usize> = (0..len).map(|_| rng.gen_range(0..g.order())).collect();
        let seq = Sequence::from_indices(idx.clone());
        let table = reach_table(g, &seq, &w, len).map_err(e)?;
        let og = G::new(g.factors());
        let want = og.sums(&og.elems(&seq.terms()), &ws);
        let got: BTreeSet<(usize, usize)> = table
            .layers()
            .iter()
            .enumerate()
            .flat_map(|(l, layer)| layer.iter().map(move |&x| (l, x)))
            .collect();
        ensure(got == want, || {
            format!("case {c}: {:?} A={ws:?} S={idx:?}", g.factors())
        })?;
    }
    Ok(format!(
        "{cases} sampled cases over {} groups",
        groups.len()
    ))
}

fn main() {
    let mut exact = Vec::new();
    let limits = [600u64, 300, 1800, 600, 300, 900, 600, 600, 600, 600];
    let mut failed = 0;
    let mut run = |n: usize, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let r = r.and_then(|msg| {
            if dt > Duration::from_secs(limits[n - 1]) {
                Err(format!("took {dt:?}, limit {} s", limits[n - 1]))
            } else {
                Ok(msg)
            }
        });
        match r {
            Ok(msg) => println!("[PASS] criterion {n}: {msg} ({:.2} s)", dt.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {msg} ({:.2} s)", dt.as_secs_f64());
            }
        }
    };
    run(1, &mut || criterion1(&mut exact));
    run(2, &mut || criterion2(&mut exact));
    run(3, &mut || criterion3(1_000_000));
    run(4, &mut criterion4);
    run(5, &mut criterion5);
    run(6, &mut criterion6);
    run(7, &mut || criterion7(&exact));
    run(8, &mut criterion8);
    run(9, &mut criterion9);
    run(10, &mut || criterion10(10_000));
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
