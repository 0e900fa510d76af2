//! Linear space-time block codes over real variables.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{tilde_vec, ComplexMatrix, RealMatrix};
use crate::qr::gram_schmidt_qr;

/// A minimal-delay linear STBC `X(x) = sum_i x_i A_i` with `K` real
/// variables and square `nt x nt` weight matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearStbc {
    name: String,
    nt: usize,
    weights: Vec<ComplexMatrix>,
    labels: Vec<String>,
}

impl LinearStbc {
    /// Validates and builds a code. Rejects non-square or zero weight
    /// matrices, duplicate labels, and rank-deficient generator matrices.
    pub fn new(name: impl Into<String>, nt: usize, weights: Vec<ComplexMatrix>, labels: Vec<String>) -> Result<Self> {
        if nt == 0 {
            return Err(Error::Validation("nt must be at least 1".into()));
        }
        if weights.is_empty() {
            return Err(Error::Validation("code needs at least one weight matrix".into()));
        }
        if weights.len() != labels.len() {
            return Err(Error::Validation(format!(
                "{} weight matrices but {} labels",
                weights.len(),
                labels.len()
            )));
        }
        for (i, w) in weights.iter().enumerate() {
            if w.shape() != (nt, nt) {
                return Err(Error::Validation(format!(
                    "weights[{i}] ({}) is {}x{}, expected {nt}x{nt}",
                    labels[i],
                    w.rows(),
                    w.cols()
                )));
            }
            if w.is_zero() {
                return Err(Error::Validation(format!(
                    "weights[{i}] ({}) is the zero matrix",
                    labels[i]
                )));
            }
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Validation(format!("duplicate label '{l}'")));
            }
        }
        let code = Self {
            name: name.into(),
            nt,
            weights,
            labels,
        };
        if code.k() > 2 * nt * nt {
            return Err(Error::Validation(format!(
                "K = {} exceeds 2*nt^2 = {}, generator cannot have full column rank",
                code.k(),
                2 * nt * nt
            )));
        }
        match gram_schmidt_qr(&code.generator_matrix()) {
            Ok(_) => Ok(code),
            Err(Error::RankDeficient { column }) => Err(Error::Validation(format!(
                "generator matrix is rank deficient: weights[{column}] ({}) is a linear combination of earlier weights",
                code.labels[column]
            ))),
            Err(e) => Err(e),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    /// Number of real variables.
    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[ComplexMatrix] {
        &self.weights
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `sum_i x_i A_i`.
    pub fn evaluate_codeword(&self, x: &[f64]) -> Result<ComplexMatrix> {
        if x.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: x.len(),
            });
        }
        let mut acc = ComplexMatrix::zeros(self.nt, self.nt);
        for (&xi, a) in x.iter().zip(&self.weights) {
            acc = acc.add(&a.scale(Complex64::new(xi, 0.0)))?;
        }
        Ok(acc)
    }

    /// `G = [tilde(vec(A_1)) ... tilde(vec(A_K))]`, of size `2 nt^2 x K`.
    pub fn generator_matrix(&self) -> RealMatrix {
        let cols: Vec<Vec<f64>> = self.weights.iter().map(|a| tilde_vec(&a.vec())).collect();
        RealMatrix::from_columns(&cols).expect("weights share one shape")
    }

    /// Permutes weights and labels so slot `p` holds original variable `ord[p]`.
    pub fn reorder(&self, ord: &Ordering) -> Result<Self> {
        ord.check_len(self.k())?;
        Ok(Self {
            name: self.name.clone(),
            nt: self.nt,
            weights: ord.apply(&self.weights),
            labels: ord.apply(&self.labels),
        })
    }
}

/// A permutation of `0..K`: position `p` holds the original index decoded
/// at slot `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering(Vec<usize>);

impl Ordering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n {
                return Err(Error::InvalidPermutation(format!(
                    "index {p} out of range for length {n}"
                )));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("index {p} repeated")));
            }
        }
        Ok(Self(perm))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (p, &i) in self.0.iter().enumerate() {
            inv[i] = p;
        }
        Self(inv)
    }

    /// `self` applied after `inner`: slot `p` holds `inner[self[p]]`.
    pub fn compose(&self, inner: &Ordering) -> Self {
        Self(self.0.iter().map(|&i| inner.0[i]).collect())
    }

    /// Returns `[items[ord[0]], items[ord[1]], ...]`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| items[i].clone()).collect()
    }

    pub(crate) fn check_len(&self, k: usize) -> Result<()> {
        if self.0.len() != k {
            return Err(Error::InvalidPermutation(format!(
                "ordering has length {}, expected {k}",
                self.0.len()
            )));
        }
        Ok(())
    }

    /// Looks up each label in `labels` and builds the ordering that lists
    /// them in the given sequence.
    pub fn from_labels<S: AsRef<str>>(labels: &[String], wanted: &[S]) -> Result<Self> {
        let perm = wanted
            .iter()
            .map(|w| {
                labels
                    .iter()
                    .position(|l| l == w.as_ref())
                    .ok_or_else(|| Error::InvalidPermutation(format!("unknown label '{}'", w.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        if perm.len() != labels.len() {
            return Err(Error::InvalidPermutation(format!(
                "{} labels given, code has {}",
                perm.len(),
                labels.len()
            )));
        }
        Self::new(perm)
    }
}

impl serde::Serialize for Ordering {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}
