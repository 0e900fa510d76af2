//! Fast-sphere-decoding complexity of a fixed variable ordering.
//!
//! The complexity is `M^e` for a symbolic constellation size `M`; only the
//! exponent `e` is computed. For an ordered range `S` of variables:
//!
//! 1. `|S| <= 1` costs `|S|`.
//! 2. Find the largest `L >= 2` such that the leading `L` variables of `S`
//!    split into contiguous runs with no pattern edge between runs.
//! 3. If there is none, all of `S` is searched jointly: cost `|S|`.
//! 4. Otherwise the trailing `|S| - L` variables are conditioned, the
//!    leading `L` split at every valid point, and the cost is
//!    `(|S| - L) + max` over the groups.
//!
//! `L = |S|` is plain multi-group decoding (nothing conditioned).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hrqf::ZeroPattern;
use crate::matrix::RealMatrix;

/// Exponent of the symbolic constellation size `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Exponent(pub usize);

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M^{}", self.0)
    }
}

/// How the number of decoupled leading variables is chosen at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    /// Largest `L` admitting a split, i.e. the fewest conditioned variables.
    #[default]
    MaximalL,
    /// Minimum over every `L` admitting a split.
    ExhaustiveL,
}

/// Recursive record of one evaluation. `span` holds positions in the
/// evaluated ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityTree {
    pub span: Vec<usize>,
    pub conditioned: usize,
    pub groups: Vec<ComplexityTree>,
    pub exponent: usize,
}

impl ComplexityTree {
    fn leaf(span: Vec<usize>) -> Self {
        let n = span.len();
        Self {
            span,
            conditioned: n,
            groups: Vec::new(),
            exponent: n,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.groups.is_empty()
    }

    /// Positions `(i, j)`, `i < j`, that lie in different groups at some
    /// level. These are the entries the decoupling requires to vanish.
    pub fn cross_group_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.collect_cross(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_cross(&self, out: &mut Vec<(usize, usize)>) {
        for (a, ga) in self.groups.iter().enumerate() {
            for gb in &self.groups[a + 1..] {
                for &i in &ga.span {
                    for &j in &gb.span {
                        out.push((i.min(j), i.max(j)));
                    }
                }
            }
        }
        for g in &self.groups {
            g.collect_cross(out);
        }
    }

    /// Sum of conditioned counts down to a leaf (leaf span included), for
    /// every root-to-leaf path.
    pub fn path_costs(&self) -> Vec<usize> {
        if self.is_leaf() {
            return vec![self.conditioned];
        }
        self.groups
            .iter()
            .flat_map(|g| g.path_costs())
            .map(|c| c + self.conditioned)
            .collect()
    }

    /// Indented rendering; `name` maps a position to a display label.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let mut s = String::new();
        self.render_into(0, name, &mut s);
        s
    }

    fn render_into(&self, depth: usize, name: &dyn Fn(usize) -> String, out: &mut String) {
        let pad = "  ".repeat(depth);
        let labels: Vec<String> = self.span.iter().map(|&p| name(p)).collect();
        if self.is_leaf() {
            out.push_str(&format!(
                "{pad}[{}] joint search of {} (M^{})\n",
                labels.join(", "),
                self.span.len(),
                self.exponent
            ));
            return;
        }
        let l = self.conditioned;
        let cond = &labels[labels.len() - l..];
        out.push_str(&format!(
            "{pad}[{}] condition {l}{}, {} groups (M^{})\n",
            labels.join(", "),
            if l > 0 {
                format!(" {{{}}}", cond.join(", "))
            } else {
                String::new()
            },
            self.groups.len(),
            self.exponent
        ));
        for g in &self.groups {
            g.render_into(depth + 1, name, out);
        }
    }
}

/// Exponent and tree for the pattern in its given ordering.
pub fn fsd_exponent(p: &ZeroPattern) -> Result<(Exponent, ComplexityTree)> {
    fsd_exponent_with(p, EvalMode::MaximalL)
}

pub fn fsd_exponent_with(p: &ZeroPattern, mode: EvalMode) -> Result<(Exponent, ComplexityTree)> {
    if p.k() == 0 {
        return Err(Error::InvalidPattern("empty pattern".into()));
    }
    let tree = eval((0..p.k()).collect(), p, mode);
    Ok((Exponent(tree.exponent), tree))
}

/// Exponent only, skipping tree allocation where possible.
pub fn exponent_of(p: &ZeroPattern) -> usize {
    eval_cost(&(0..p.k()).collect::<Vec<_>>(), p)
}

/// Group boundaries of the leading `len` entries of `span`: sizes of the
/// prefixes after which no edge crosses. Empty if no split exists.
fn split_points(span: &[usize], len: usize, p: &ZeroPattern) -> Vec<usize> {
    let mut cuts = Vec::new();
    let mut reach = 0;
    for a in 0..len - 1 {
        let far = (a + 1..len).rev().find(|&b| p.get(span[a], span[b])).unwrap_or(a);
        reach = reach.max(far);
        if reach <= a {
            cuts.push(a + 1);
        }
    }
    cuts
}

fn groups_from_cuts(span: &[usize], len: usize, cuts: &[usize]) -> Vec<Vec<usize>> {
    let mut bounds = Vec::with_capacity(cuts.len() + 2);
    bounds.push(0);
    bounds.extend_from_slice(cuts);
    bounds.push(len);
    bounds.windows(2).map(|w| span[w[0]..w[1]].to_vec()).collect()
}

fn eval(span: Vec<usize>, p: &ZeroPattern, mode: EvalMode) -> ComplexityTree {
    let n = span.len();
    if n <= 1 {
        return ComplexityTree::leaf(span);
    }
    let mut best: Option<ComplexityTree> = None;
    for len in (2..=n).rev() {
        let cuts = split_points(&span, len, p);
        if cuts.is_empty() {
            continue;
        }
        let groups: Vec<ComplexityTree> = groups_from_cuts(&span, len, &cuts)
            .into_iter()
            .map(|g| eval(g, p, mode))
            .collect();
        let conditioned = n - len;
        let exponent = conditioned + groups.iter().map(|g| g.exponent).max().unwrap_or(0);
        let node = ComplexityTree {
            span: span.clone(),
            conditioned,
            groups,
            exponent,
        };
        match mode {
            EvalMode::MaximalL => return node,
            EvalMode::ExhaustiveL => {
                if best.as_ref().is_none_or(|b| node.exponent < b.exponent) {
                    best = Some(node);
                }
            }
        }
    }
    best.unwrap_or_else(|| ComplexityTree::leaf(span))
}

fn eval_cost(span: &[usize], p: &ZeroPattern) -> usize {
    let n = span.len();
    if n <= 1 {
        return n;
    }
    for len in (2..=n).rev() {
        let cuts = split_points(span, len, p);
        if cuts.is_empty() {
            continue;
        }
        let mut start = 0;
        let mut worst = 0;
        for end in cuts.iter().copied().chain(std::iter::once(len)) {
            worst = worst.max(eval_cost(&span[start..end], p));
            start = end;
        }
        return n - len + worst;
    }
    n
}

/// Adjacency of a numerical upper-triangular `R`: `(i, j)` is nonzero when
/// `|r_ij| > tol * ||R||_F / K`.
pub fn pattern_from_r(r: &RealMatrix, tol: f64) -> Result<ZeroPattern> {
    let k = r.rows();
    if r.cols() != k {
        return Err(Error::DimensionMismatch {
            op: "pattern_from_r",
            left: r.shape(),
            right: (k, k),
        });
    }
    let norm = r.frobenius_norm();
    for i in 0..k {
        for j in 0..i {
            if r.get(i, j).abs() > 1e-12 * norm {
                return Err(Error::NotUpperTriangular {
                    row: i,
                    col: j,
                    value: r.get(i, j),
                });
            }
        }
    }
    let threshold = if k == 0 { 0.0 } else { tol * norm / k as f64 };
    let mut p = ZeroPattern::diagonal(k);
    for i in 0..k {
        for j in i + 1..k {
            p.set(i, j, r.get(i, j).abs() > threshold);
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_pattern_is_single_symbol() {
        for k in 1..=6 {
            let (e, tree) = fsd_exponent(&ZeroPattern::diagonal(k)).unwrap();
            assert_eq!(e, Exponent(1));
            if k > 1 {
                assert_eq!(tree.conditioned, 0);
                assert_eq!(tree.groups.len(), k);
            }
        }
    }

    #[test]
    fn full_pattern_is_joint() {
        for k in 1..=6 {
            let (e, tree) = fsd_exponent(&ZeroPattern::full(k)).unwrap();
            assert_eq!(e, Exponent(k));
            assert!(tree.is_leaf());
        }
    }

    #[test]
    fn empty_pattern_rejected() {
        assert!(fsd_exponent(&ZeroPattern::diagonal(0)).is_err());
    }

    #[test]
    fn cost_matches_tree() {
        let p = ZeroPattern::from_upper_rows(&["t t 0 t", "0 t 0 0", "0 0 t t", "0 0 0 t"]).unwrap();
        let (e, _) = fsd_exponent(&p).unwrap();
        assert_eq!(exponent_of(&p), e.0);
    }

    #[test]
    fn pattern_from_r_examples() {
        let diag = RealMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        assert_eq!(pattern_from_r(&diag, 1e-8).unwrap(), ZeroPattern::diagonal(2));

        let blocks = RealMatrix::from_rows(&[
            vec![1.0, 0.5, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, -0.2],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let p = pattern_from_r(&blocks, 1e-8).unwrap();
        for i in 0..2 {
            for j in 2..4 {
                assert!(!p.get(i, j));
            }
        }
        assert!(p.get(0, 1) && p.get(2, 3));

        assert!(pattern_from_r(&RealMatrix::zeros(2, 3), 1e-8).is_err());
        let lower = RealMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            pattern_from_r(&lower, 1e-8),
            Err(Error::NotUpperTriangular { row: 1, col: 0, .. })
        ));
    }

    #[test]
    fn exhaustive_never_worse() {
        let p =
            ZeroPattern::from_upper_rows(&["t 0 t t 0", "0 t 0 t t", "0 0 t 0 t", "0 0 0 t 0", "0 0 0 0 t"]).unwrap();
        let (a, _) = fsd_exponent_with(&p, EvalMode::MaximalL).unwrap();
        let (b, _) = fsd_exponent_with(&p, EvalMode::ExhaustiveL).unwrap();
        assert!(b <= a);
    }
}
