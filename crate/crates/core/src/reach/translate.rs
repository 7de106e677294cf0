//! Translation of dense membership bitsets by a fixed group element.
//!
//! Groups of order at most 64 fit in one machine word. With the last factor
//! varying fastest, translating by `h_i · e_i` rotates every aligned block of
//! `n_i · stride_i` bits by `h_i · stride_i`, so a full translation is at most
//! `rank` masked shift pairs. Larger groups use per-element index
//! permutations built on first use, or direct index arithmetic past 2^16.

use std::sync::OnceLock;

use crate::group::Group;

const TABLE_LIMIT: usize = 1 << 16;

#[derive(Clone, Copy, Debug)]
struct Rotation {
    shift: u32,
    back: u32,
    hi: u64,
    lo: u64,
}

#[derive(Debug)]
enum Kind {
    Word(Vec<Box<[Rotation]>>),
    Table(Vec<OnceLock<Box<[u32]>>>),
    Direct,
}

#[derive(Debug)]
pub(crate) struct Translator {
    group: Group,
    words: usize,
    kind: Kind,
}

pub(crate) fn words_for(order: usize) -> usize {
    order.div_ceil(64)
}

impl Translator {
    pub fn new(group: &Group) -> Self {
        let order = group.order();
        let kind = if order <= 64 {
            Kind::Word((0..order).map(|h| rotations(group, h)).collect())
        } else if order <= TABLE_LIMIT {
            Kind::Table((0..order).map(|_| OnceLock::new()).collect())
        } else {
            Kind::Direct
        };
        Translator {
            group: group.clone(),
            words: words_for(order),
            kind,
        }
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// `dst |= src + h`.
    #[inline]
    pub fn translate_or(&self, src: &[u64], h: usize, dst: &mut [u64]) {
        if h == 0 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d |= *s;
            }
            return;
        }
        match &self.kind {
            Kind::Word(rots) => {
                let mut w = src[0];
                if w == 0 {
                    return;
                }
                for r in rots[h].iter() {
                    w = ((w << r.shift) & r.hi) | ((w >> r.back) & r.lo);
                }
                dst[0] |= w;
            }
            Kind::Table(perms) => {
                let perm = perms[h].get_or_init(|| {
                    (0..self.group.order())
                        .map(|i| self.group.add_index(i, h) as u32)
                        .collect()
                });
                for_each_bit(src, |i| {
                    let j = perm[i] as usize;
                    dst[j >> 6] |= 1u64 << (j & 63);
                });
            }
            Kind::Direct => {
                for_each_bit(src, |i| {
                    let j = self.group.add_index(i, h);
                    dst[j >> 6] |= 1u64 << (j & 63);
                });
            }
        }
    }
}

#[inline]
pub(crate) fn for_each_bit(words: &[u64], mut f: impl FnMut(usize)) {
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            f(wi * 64 + b);
            w &= w - 1;
        }
    }
}

fn rotations(group: &Group, h: usize) -> Box<[Rotation]> {
    let order = group.order();
    let mut out = Vec::new();
    for (i, (&n, &s)) in group.factors().iter().zip(group.strides()).enumerate() {
        let c = group.coord_at(h, i);
        if c == 0 {
            continue;
        }
        let block = n * s;
        let shift = c * s;
        let (mut hi, mut lo) = (0u64, 0u64);
        for p in 0..order as u64 {
            if p % block >= shift {
                hi |= 1 << p;
            } else {
                lo |= 1 << p;
            }
        }
        out.push(Rotation {
            shift: shift as u32,
            back: (block - shift) as u32,
            hi,
            lo,
        });
    }
    out.into_boxed_slice()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_group(g: &Group) {
        let t = Translator::new(g);
        let n = g.order();
        let words = t.words();
        // single bits and a pseudo-random dense set
        let mut dense = vec![0u64; words];
        for i in (0..n).filter(|i| (i * 7 + 3) % 5 < 2) {
            dense[i >> 6] |= 1 << (i & 63);
        }
        for h in 0..n {
            for i in 0..n {
                let mut src = vec![0u64; words];
                src[i >> 6] |= 1 << (i & 63);
                let mut dst = vec![0u64; words];
                t.translate_or(&src, h, &mut dst);
                let j = g.add_index(i, h);
                let mut want = vec![0u64; words];
                want[j >> 6] |= 1 << (j & 63);
                assert_eq!(dst, want, "{g} i={i} h={h}");
            }
            let mut dst = vec![0u64; words];
            t.translate_or(&dense, h, &mut dst);
            let mut want = vec![0u64; words];
            for_each_bit(&dense, |i| {
                let j = g.add_index(i, h);
                want[j >> 6] |= 1 << (j & 63);
            });
            assert_eq!(dst, want);
        }
    }

    #[test]
    fn word_translation_matches_index_arithmetic() {
        for f in [
            &[2u64][..],
            &[64],
            &[8, 8],
            &[2, 2, 2, 2, 2, 2],
            &[3, 3],
            &[2, 6],
            &[5, 5],
            &[2, 4, 8],
            &[7],
        ] {
            check_group(&Group::new(f).unwrap());
        }
    }

    #[test]
    fn table_translation_matches_index_arithmetic() {
        check_group(&Group::new(&[3, 27]).unwrap());
        check_group(&Group::new(&[130]).unwrap());
    }
}
