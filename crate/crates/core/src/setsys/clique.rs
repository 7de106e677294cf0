//! Exact maximum `L`-intersecting `k`-uniform families on `[1, n]`, as a
//! maximum clique in the compatibility graph on `k`-subsets.
//!
//! Branch and bound with a greedy coloring bound over bitset vertex sets.
//! The symmetric group on `[1, n]` acts transitively on `k`-subsets and
//! preserves the graph, so some maximum clique contains the first subset;
//! the search is rooted there.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::SearchBudget;

use super::SetFamily;

pub const MAX_GROUND_SET: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMaximum {
    pub size: usize,
    pub family: SetFamily,
    /// False when the node budget ran out; `size` is then only a lower bound.
    pub exact: bool,
    pub nodes: u64,
}

type Bits = Vec<u64>;

fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

struct Search<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    cap: Option<u64>,
    stopped: bool,
}

fn first_bit(b: &Bits) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(wi, &w)| wi * 64 + w.trailing_zeros() as usize)
}

fn is_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

impl Search<'_> {
    /// Greedy sequential coloring; returns vertices with their color,
    /// in nondecreasing color order.
    fn color(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncolored = p.clone();
        let mut color = 0;
        while !is_empty(&uncolored) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                q[v >> 6] &= !(1 << (v & 63));
                uncolored[v >> 6] &= !(1 << (v & 63));
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bits) {
        self.nodes += 1;
        if self.cap.is_some_and(|c| self.nodes >= c) {
            self.stopped = true;
            return;
        }
        let order = self.color(&p);
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.best.len() || self.stopped {
                return;
            }
            self.current.push(v);
            let next: Bits = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p[v >> 6] &= !(1 << (v & 63));
        }
    }
}

/// Exact maximum size of a family of `k`-subsets of `[1, n]` whose pairwise
/// intersections all lie in `l`. `budget.node_cap` bounds the search.
pub fn max_family_exhaustive(
    n: usize,
    k: usize,
    l: &BTreeSet<usize>,
    budget: &SearchBudget,
) -> Result<FamilyMaximum> {
    if n > MAX_GROUND_SET {
        return Err(Error::BadParameters(format!(
            "n = {n} exceeds {MAX_GROUND_SET}"
        )));
    }
    if k > n {
        return Err(Error::BadParameters(format!("k = {k} exceeds n = {n}")));
    }
    let verts = k_subsets(n, k);
    let nv = verts.len();
    let words = nv.div_ceil(64).max(1);
    let mut adj = vec![vec![0u64; words]; nv];
    for i in 0..nv {
        for j in i + 1..nv {
            if l.contains(&((verts[i] & verts[j]).count_ones() as usize)) {
                adj[i][j >> 6] |= 1 << (j & 63);
                adj[j][i >> 6] |= 1 << (i & 63);
            }
        }
    }
    let mut s = Search {
        adj: &adj,
        best: vec![0],
        current: vec![0],
        nodes: 0,
        cap: budget.node_cap,
        stopped: false,
    };
    if nv > 0 {
        s.expand(adj[0].clone());
    } else {
        s.best.clear();
    }
    let members = s
        .best
        .iter()
        .map(|&v| {
            (0..n)
                .filter(|b| verts[v] >> b & 1 == 1)
                .map(|b| b + 1)
                .collect()
        })
        .collect();
    Ok(FamilyMaximum {
        size: s.best.len(),
        family: SetFamily::new(n, members)?,
        exact: !s.stopped,
        nodes: s.nodes,
    })
}
