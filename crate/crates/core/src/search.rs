//! Best-ordering search over the HRQF zero pattern.
//!
//! Any ordering decodes as `{Λ1, Λ2, Λ3}`. `Λ1` is the block jointly
//! decoded with the first variable. `Λ2` is HR-orthogonal to all of `Λ1`.
//! `Λ3` holds the conditioned variables. `Λ1` and `Λ2` are then ordered
//! recursively, and the cost is `|Λ3| + max(cost(Λ1), cost(Λ2))`.
//!
//! [`marker_search`] is the rotation procedure. Each variable in turn
//! becomes the first one, and the Λ sets are grown by scanning zeros of
//! the HRQF matrix. It builds a single partition per rotation.
//!
//! [`optimize`] runs that procedure and then an exact search over
//! conditioned sets. For a connected block, conditioning one variable
//! at a time until the remainder falls apart yields every admissible
//! `Λ3`. The disconnected remainder's components are `Λ1` and the blocks
//! of `Λ2`. Results are memoized per variable subset. The exact search
//! is what makes `optimize` agree with [`brute_force`].

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::Ordering;
use crate::complexity::{exponent_of, fsd_exponent, ComplexityTree, Exponent};
use crate::error::{Error, Result};
use crate::hrqf::{HrqfMatrix, ZeroPattern, DEFAULT_ZERO_TOL};

/// Default limit for [`brute_force`]; 8! = 40320 orderings.
pub const DEFAULT_BRUTE_MAX_K: usize = 8;

/// Largest K the exact subset search handles (bitmask width).
pub const MAX_EXACT_K: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_exponent: Exponent,
    pub best_ordering: Ordering,
    pub tree: ComplexityTree,
}

impl SearchResult {
    fn evaluate(p: &ZeroPattern, perm: Vec<usize>) -> Self {
        let ord = Ordering::new(perm).expect("search produces permutations");
        let permuted = p.permute(&ord).expect("length checked");
        let (best_exponent, tree) = fsd_exponent(&permuted).expect("non-empty pattern");
        Self {
            best_exponent,
            best_ordering: ord,
            tree,
        }
    }

    fn key(&self) -> (Exponent, &[usize]) {
        (self.best_exponent, self.best_ordering.as_slice())
    }
}

/// Best ordering for the code behind `m`.
pub fn optimize(m: &HrqfMatrix) -> Result<SearchResult> {
    optimize_pattern(&m.zero_pattern(DEFAULT_ZERO_TOL))
}

pub fn optimize_pattern(p: &ZeroPattern) -> Result<SearchResult> {
    let k = p.k();
    if k == 0 {
        return Err(Error::InvalidPattern("empty pattern".into()));
    }
    if k > MAX_EXACT_K {
        return Err(Error::TooLarge { k, max_k: MAX_EXACT_K });
    }
    let greedy = marker_search_pattern(p)?;
    let mut exact = ExactSearch::new(p);
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let exact = SearchResult::evaluate(p, exact.order(full));
    Ok(if greedy.key() <= exact.key() { greedy } else { exact })
}

/// The rotation/Marker-loop procedure on its own.
pub fn marker_search(m: &HrqfMatrix) -> Result<SearchResult> {
    marker_search_pattern(&m.zero_pattern(DEFAULT_ZERO_TOL))
}

pub fn marker_search_pattern(p: &ZeroPattern) -> Result<SearchResult> {
    if p.k() == 0 {
        return Err(Error::InvalidPattern("empty pattern".into()));
    }
    let all: Vec<usize> = (0..p.k()).collect();
    let (_, perm) = order_rotations(p, &all);
    Ok(SearchResult::evaluate(p, perm))
}

/// Exhaustive minimum over all `K!` orderings. Ties go to the
/// lexicographically smallest permutation.
pub fn brute_force(m: &HrqfMatrix, max_k: usize) -> Result<SearchResult> {
    brute_force_pattern(&m.zero_pattern(DEFAULT_ZERO_TOL), max_k)
}

pub fn brute_force_pattern(p: &ZeroPattern, max_k: usize) -> Result<SearchResult> {
    let k = p.k();
    if k == 0 {
        return Err(Error::InvalidPattern("empty pattern".into()));
    }
    if k > max_k {
        return Err(Error::TooLarge { k, max_k });
    }
    // One chunk per leading variable; chunks are scanned in lexicographic
    // order internally and reduced in index order.
    let best = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut perm: Vec<usize> = std::iter::once(first).chain((0..k).filter(|&i| i != first)).collect();
            let mut best = (exponent_of_perm(p, &perm), perm.clone());
            while next_permutation(&mut perm[1..]) {
                let e = exponent_of_perm(p, &perm);
                if e < best.0 {
                    best = (e, perm.clone());
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .min()
        .expect("k >= 1");
    Ok(SearchResult::evaluate(p, best.1))
}

fn exponent_of_perm(p: &ZeroPattern, perm: &[usize]) -> usize {
    let ord = Ordering::new(perm.to_vec()).expect("valid permutation");
    exponent_of(&p.permute(&ord).expect("length matches"))
}

/// Rearranges into the next lexicographic permutation; false when `v`
/// was already the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("v[i+1] > v[i]");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn adjacent_to_any(p: &ZeroPattern, x: usize, set: &[usize]) -> bool {
    set.iter().any(|&y| p.get(x, y))
}

/// One pass over every rotation of `set`; returns the best score and
/// ordering. Equal scores go to the lexicographically smaller ordering.
fn order_rotations(p: &ZeroPattern, set: &[usize]) -> (usize, Vec<usize>) {
    let n = set.len();
    if n <= 1 {
        return (n, set.to_vec());
    }
    let mut best = (n, set.to_vec());
    for shift in 0..n {
        let rot: Vec<usize> = set[shift..].iter().chain(&set[..shift]).copied().collect();
        let cand = partition_and_recurse(p, &rot);
        if cand < best {
            best = cand;
        }
    }
    best
}

fn partition_and_recurse(p: &ZeroPattern, rot: &[usize]) -> (usize, Vec<usize>) {
    let n = rot.len();
    let first = rot[0];
    let mut pending: Vec<usize> = rot[1..].iter().copied().filter(|&x| !p.get(first, x)).collect();
    let mut lam3: Vec<usize> = rot[1..].iter().copied().filter(|&x| p.get(first, x)).collect();
    if pending.is_empty() {
        return (n, rot.to_vec());
    }
    let mut lam1 = vec![first];
    let mut lam2: Vec<usize> = Vec::new();

    while !pending.is_empty() {
        let x = pending.remove(0);
        if adjacent_to_any(p, x, &lam1) {
            lam3.push(x);
            continue;
        }
        if !adjacent_to_any(p, x, &lam2) {
            // Marker loop: pull in every variable orthogonal to x that
            // touches Λ1, scanning the rest of the ordering, to a fixpoint.
            let mut pulled = false;
            loop {
                let hit = pending
                    .iter()
                    .chain(&lam3)
                    .copied()
                    .find(|&u| !p.get(u, x) && adjacent_to_any(p, u, &lam1));
                let Some(u) = hit else { break };
                pending.retain(|&y| y != u);
                lam3.retain(|&y| y != u);
                lam1.push(u);
                pulled = true;
            }
            if pulled && !lam2.is_empty() {
                lam1.append(&mut lam2);
            }
        }
        lam2.push(x);
    }

    let (e1, o1) = order_rotations(p, &lam1);
    let (e2, o2) = order_rotations(p, &lam2);
    let score = lam3.len() + e1.max(e2);
    let mut ord = o1;
    ord.extend(o2);
    ord.extend(lam3);
    (score, ord)
}

/// Memoized exact search over variable subsets (bitmasks).
struct ExactSearch {
    neighbors: Vec<u64>,
    memo: HashMap<u64, (usize, Option<usize>)>,
}

impl ExactSearch {
    fn new(p: &ZeroPattern) -> Self {
        let k = p.k();
        let neighbors = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| j != i && p.get(i, j))
                    .fold(0u64, |acc, j| acc | (1 << j))
            })
            .collect();
        Self {
            neighbors,
            memo: HashMap::new(),
        }
    }

    fn components(&self, set: u64) -> Vec<u64> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.neighbors[v] & set & !comp;
                comp |= new;
                frontier |= new;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    /// Minimum cost of `set`, and for a connected set the variable to
    /// condition first (`None` when joint search is optimal).
    fn cost(&mut self, set: u64) -> usize {
        let n = set.count_ones() as usize;
        if n <= 1 {
            return n;
        }
        if let Some(&(c, _)) = self.memo.get(&set) {
            return c;
        }
        let comps = self.components(set);
        let result = if comps.len() > 1 {
            (comps.into_iter().map(|c| self.cost(c)).max().unwrap_or(0), None)
        } else {
            let mut best = (n, None);
            let mut bits = set;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let c = 1 + self.cost(set & !(1 << v));
                if c < best.0 {
                    best = (c, Some(v));
                }
            }
            best
        };
        self.memo.insert(set, result);
        result.0
    }

    fn order(&mut self, set: u64) -> Vec<usize> {
        let n = set.count_ones() as usize;
        if n <= 1 {
            return bits_of(set);
        }
        self.cost(set);
        let comps = self.components(set);
        if comps.len() > 1 {
            return comps.into_iter().flat_map(|c| self.order(c)).collect();
        }
        // Condition along the memoized chain until the remainder splits.
        let mut chain = Vec::new();
        let mut rest = set;
        loop {
            if rest.count_ones() <= 1 || self.components(rest).len() > 1 {
                break;
            }
            self.cost(rest);
            match self.memo[&rest].1 {
                Some(v) => {
                    chain.push(v);
                    rest &= !(1 << v);
                }
                None => break,
            }
        }
        if rest.count_ones() > 1 && self.components(rest).len() == 1 {
            // Joint search of the remainder is optimal.
            let mut out = bits_of(rest);
            out.extend(chain.into_iter().rev());
            return out;
        }
        let mut out = self.order(rest);
        out.extend(chain.into_iter().rev());
        out
    }
}

fn bits_of(set: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut bits = set;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

/// Optimal exponent of `p` over all orderings, via the exact subset search.
pub fn exact_exponent(p: &ZeroPattern) -> Result<Exponent> {
    let k = p.k();
    if k == 0 || k > MAX_EXACT_K {
        return Err(Error::InvalidPattern(format!(
            "exact search needs 1 <= K <= {MAX_EXACT_K}"
        )));
    }
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    Ok(Exponent(ExactSearch::new(p).cost(full)))
}
