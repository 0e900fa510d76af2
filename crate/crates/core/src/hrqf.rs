//! Hurwitz-Radon quadratic form of a linear STBC.
//!
//! For weight matrices `A_i`, the form is `Q(x) = x M x^T` with
//! `m_ij = ||A_i A_j^H + A_j A_i^H||_F^2`. A zero entry means the pair is
//! Hurwitz-Radon orthogonal; the boolean [`ZeroPattern`] of nonzero entries
//! is all that the complexity evaluation consumes.

use crate::code::{LinearStbc, Ordering};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, RealMatrix};

/// Relative threshold below which an HRQF entry counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-18;

/// `A B^H + B A^H`.
pub fn hr_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.shape() != b.shape() || a.rows() != a.cols() {
        return Err(Error::DimensionMismatch {
            op: "hr_product",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let ab = a.matmul(&b.hermitian())?;
    let ba = b.matmul(&a.hermitian())?;
    ab.add(&ba)
}

/// Symmetric nonnegative `K x K` matrix of the form, together with the
/// squared Frobenius norms of the weights (used to scale zero tests).
#[derive(Debug, Clone, PartialEq)]
pub struct HrqfMatrix {
    m: RealMatrix,
    weight_norms_sq: Vec<f64>,
}

impl HrqfMatrix {
    pub fn from_code(code: &LinearStbc) -> Self {
        let w = code.weights();
        let k = w.len();
        let mut m = RealMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let d = hr_product(&w[i], &w[j])
                    .expect("code weights share one square shape")
                    .frobenius_norm_sq();
                m.set(i, j, d);
                m.set(j, i, d);
            }
        }
        Self {
            m,
            weight_norms_sq: w.iter().map(ComplexMatrix::frobenius_norm_sq).collect(),
        }
    }

    /// Wraps a precomputed matrix. It must be square, exactly symmetric and
    /// nonnegative, with a positive diagonal.
    pub fn from_entries(m: RealMatrix, weight_norms_sq: Vec<f64>) -> Result<Self> {
        let k = m.rows();
        if m.cols() != k || weight_norms_sq.len() != k {
            return Err(Error::DimensionMismatch {
                op: "hrqf",
                left: m.shape(),
                right: (weight_norms_sq.len(), 1),
            });
        }
        for i in 0..k {
            if m.get(i, i) <= 0.0 {
                return Err(Error::InvalidPattern(format!("diagonal entry {i} is not positive")));
            }
            for j in 0..k {
                if m.get(i, j) < 0.0 || m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidPattern(format!(
                        "entry ({i}, {j}) breaks symmetry or nonnegativity"
                    )));
                }
            }
        }
        Ok(Self { m, weight_norms_sq })
    }

    pub fn k(&self) -> usize {
        self.m.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m.get(i, j)
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.m
    }

    pub fn weight_norms_sq(&self) -> &[f64] {
        &self.weight_norms_sq
    }

    /// Multiplies every entry by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            m: self.m.scale(c),
            weight_norms_sq: self.weight_norms_sq.clone(),
        }
    }

    /// `x M x^T`.
    pub fn evaluate_qf(&self, x: &[f64]) -> Result<f64> {
        self.bilinear_matrix(x, x)
    }

    /// `B(x, y) = (Q(x + y) - Q(x) - Q(y)) / 2`.
    pub fn bilinear_form(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        Ok(0.5 * (self.evaluate_qf(&sum)? - self.evaluate_qf(x)? - self.evaluate_qf(y)?))
    }

    /// `x M y^T`.
    pub fn bilinear_matrix(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let my = self.m.matvec(y)?;
        Ok(x.iter().zip(&my).map(|(a, b)| a * b).sum())
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Entry `(p, q)` of the result is `m[ord[p]][ord[q]]`.
    pub fn permute(&self, ord: &Ordering) -> Result<Self> {
        ord.check_len(self.k())?;
        let k = self.k();
        let p = ord.as_slice();
        let mut m = RealMatrix::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                m.set(a, b, self.m.get(p[a], p[b]));
            }
        }
        Ok(Self {
            m,
            weight_norms_sq: ord.apply(&self.weight_norms_sq),
        })
    }

    /// Pairs that are not Hurwitz-Radon orthogonal: `m_ij > tol * |A_i|^2 |A_j|^2`.
    pub fn zero_pattern(&self, tol: f64) -> ZeroPattern {
        let k = self.k();
        let mut adj = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                let scale = self.weight_norms_sq[i] * self.weight_norms_sq[j];
                adj[i * k + j] = i == j || self.m.get(i, j) > tol * scale;
            }
        }
        ZeroPattern { k, adj }
    }
}

/// Symmetric boolean adjacency of non-orthogonal variable pairs, with a
/// true diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroPattern {
    k: usize,
    adj: Vec<bool>,
}

impl ZeroPattern {
    pub fn new(k: usize, adj: Vec<bool>) -> Result<Self> {
        if adj.len() != k * k {
            return Err(Error::LengthMismatch {
                expected: k * k,
                got: adj.len(),
            });
        }
        for i in 0..k {
            if !adj[i * k + i] {
                return Err(Error::InvalidPattern(format!("diagonal entry {i} is false")));
            }
            for j in 0..i {
                if adj[i * k + j] != adj[j * k + i] {
                    return Err(Error::InvalidPattern(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { k, adj })
    }

    /// Parses rows of `t`/`0` characters (whitespace ignored), the display
    /// convention for nonzero/zero entries. Only the upper triangle is read
    /// and mirrored, so an upper-triangular display is accepted as is.
    pub fn from_upper_rows(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace() && *c != '&')
                    .map(|c| match c {
                        't' | '1' | 'x' => Ok(true),
                        '0' | '.' => Ok(false),
                        other => Err(Error::InvalidPattern(format!("unexpected symbol '{other}'"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let k = parsed.len();
        if let Some(bad) = parsed.iter().find(|r| r.len() != k) {
            return Err(Error::LengthMismatch {
                expected: k,
                got: bad.len(),
            });
        }
        let mut p = Self::diagonal(k);
        for (i, row) in parsed.iter().enumerate() {
            for (j, &v) in row.iter().enumerate().skip(i + 1) {
                p.set(i, j, v);
            }
        }
        Ok(p)
    }

    /// Diagonal-only pattern.
    pub fn diagonal(k: usize) -> Self {
        let mut adj = vec![false; k * k];
        for i in 0..k {
            adj[i * k + i] = true;
        }
        Self { k, adj }
    }

    pub fn full(k: usize) -> Self {
        Self {
            k,
            adj: vec![true; k * k],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.k + j]
    }

    /// Sets `(i, j)` and its mirror. Diagonal entries stay true.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if i != j {
            self.adj[i * self.k + j] = value;
            self.adj[j * self.k + i] = value;
        }
    }

    pub fn permute(&self, ord: &Ordering) -> Result<Self> {
        ord.check_len(self.k)?;
        let p = ord.as_slice();
        let k = self.k;
        let mut adj = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                adj[a * k + b] = self.get(p[a], p[b]);
            }
        }
        Ok(Self { k, adj })
    }

    /// Grid of `t` (nonzero) and `0` entries, one row per line.
    pub fn to_grid(&self) -> String {
        let mut s = String::new();
        for i in 0..self.k {
            let row: Vec<&str> = (0..self.k).map(|j| if self.get(i, j) { "t" } else { "0" }).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Upper-triangular view of the grid (`0` below the diagonal), the
    /// layout an R matrix would show.
    pub fn to_upper_grid(&self) -> String {
        let mut s = String::new();
        for i in 0..self.k {
            let row: Vec<&str> = (0..self.k)
                .map(|j| if j >= i && self.get(i, j) { "t" } else { "0" })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hr_product_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(hr_product(&i2, &i2).unwrap(), i2.scale_real(2.0));

        let a2 = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(hr_product(&i2, &a2).unwrap().is_zero());

        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 2.0), c(0.5, -1.0)], vec![c(0.0, 3.0), c(-2.0, 0.0)]]).unwrap();
        let p = hr_product(&a, &a).unwrap();
        assert_eq!(p, a.matmul(&a.hermitian()).unwrap().scale_real(2.0));
        assert_eq!(p, p.hermitian());
        // PSD: z^H P z >= 0 for a few probes.
        for z in [[c(1.0, 0.0), c(0.0, 1.0)], [c(-2.0, 1.0), c(0.3, 0.3)]] {
            let v = ComplexMatrix::column(z.to_vec()).unwrap();
            let q = v.hermitian().matmul(&p).unwrap().matmul(&v).unwrap().get(0, 0);
            assert!(q.re >= 0.0 && q.im.abs() < 1e-12);
        }

        assert!(hr_product(&i2, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn alamouti_is_diagonal() {
        let m = HrqfMatrix::from_code(&catalog::alamouti());
        for i in 0..4 {
            assert!(m.get(i, i) > 0.0);
            for j in 0..4 {
                if i != j {
                    assert_eq!(m.get(i, j), 0.0);
                }
            }
        }
        assert_eq!(m.zero_pattern(DEFAULT_ZERO_TOL), ZeroPattern::diagonal(4));
    }

    #[test]
    fn single_weight_code() {
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(2.0, 0.0)]]).unwrap();
        let code = LinearStbc::new("one", 2, vec![a.clone()], vec!["x".into()]).unwrap();
        let m = HrqfMatrix::from_code(&code);
        let expect = a.matmul(&a.hermitian()).unwrap().scale_real(2.0).frobenius_norm_sq();
        assert_eq!(m.k(), 1);
        assert_eq!(m.get(0, 0), expect);
    }

    #[test]
    fn qf_examples() {
        let m = HrqfMatrix::from_code(&catalog::silver());
        assert_eq!(m.evaluate_qf(&[0.0; 8]).unwrap(), 0.0);
        assert_eq!(m.bilinear_form(&[1.0; 8], &[0.0; 8]).unwrap(), 0.0);
        assert!(m.evaluate_qf(&[1.0; 3]).is_err());
        assert!(m.bilinear_form(&[1.0; 8], &[1.0; 7]).is_err());
    }

    #[test]
    fn exact_zeros_stay_false_for_any_tol() {
        let m = HrqfMatrix::from_code(&catalog::alamouti());
        assert_eq!(m.zero_pattern(0.0), ZeroPattern::diagonal(4));
    }

    #[test]
    fn pattern_validation() {
        assert!(ZeroPattern::new(2, vec![true, true, false, true]).is_err());
        assert!(ZeroPattern::new(2, vec![false, false, false, true]).is_err());
        assert!(ZeroPattern::new(2, vec![true, true, true, true]).is_ok());
    }

    #[test]
    fn permute_transposition() {
        let m = HrqfMatrix::from_code(&catalog::abba());
        assert_eq!(m.permute(&Ordering::identity(4)).unwrap(), m);
        let swap = Ordering::new(vec![2, 1, 0, 3]).unwrap();
        let p = m.permute(&swap).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (swap.as_slice()[i], swap.as_slice()[j]);
                assert_eq!(p.get(i, j), m.get(a, b));
            }
        }
    }

    #[test]
    fn from_entries_validation() {
        let good = RealMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert!(HrqfMatrix::from_entries(good, vec![1.0, 1.0]).is_ok());
        let asym = RealMatrix::from_rows(&[vec![2.0, 1.0], vec![0.5, 3.0]]).unwrap();
        assert!(HrqfMatrix::from_entries(asym, vec![1.0, 1.0]).is_err());
    }
}
