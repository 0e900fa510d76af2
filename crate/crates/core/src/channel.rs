//! Random channels, the equivalent real channel, and Monte-Carlo checks
//! that the QR factor of the equivalent channel has the zero structure the
//! HRQF predicts.
//!
//! Sampling uses ChaCha20 seeded with `seed_from_u64`. Entries are drawn
//! row-major, one Box-Muller pair per entry: `u1, u2` uniform, then
//! `sqrt(-ln u1) * (cos 2 pi u2 + i sin 2 pi u2)`, which gives real and
//! imaginary parts of variance 1/2 each.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearStbc;
use crate::complexity::{exponent_of, fsd_exponent, pattern_from_r, Exponent};
use crate::error::{Error, Result};
use crate::hrqf::{HrqfMatrix, DEFAULT_ZERO_TOL};
use crate::matrix::{tilde_vec, ComplexMatrix, RealMatrix};
use crate::qr::gram_schmidt_qr;

/// Default bound on relative structural residuals.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-8;

/// Entries with `m_ij != 0` below this fraction of `||R||_F` are reported.
pub const NONZERO_WARN_TOL: f64 = 1e-6;

/// Resampling attempts per trial before giving up.
const MAX_RESAMPLES: u64 = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    /// `nr x nt` channel matrix.
    pub h: ComplexMatrix,
    pub seed: u64,
}

/// Draws an `nr x nt` matrix of i.i.d. unit-variance complex Gaussians.
pub fn sample_channel(nt: usize, nr: usize, seed: u64) -> Result<ChannelSample> {
    if nt == 0 || nr == 0 {
        return Err(Error::InvalidArgument(format!(
            "channel needs nt, nr >= 1, got nt = {nt}, nr = {nr}"
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let data = (0..nr * nt)
        .map(|_| {
            // 1 - [0, 1) keeps the log argument in (0, 1].
            let u1: f64 = 1.0 - rng.gen::<f64>();
            let u2: f64 = rng.gen();
            Complex64::from_polar((-u1.ln()).sqrt(), 2.0 * PI * u2)
        })
        .collect();
    Ok(ChannelSample {
        h: ComplexMatrix::new(nr, nt, data)?,
        seed,
    })
}

/// `H_eq = (I_nt (x) check(H)) G`, of size `2 nr nt x K`.
pub fn equivalent_channel(code: &LinearStbc, sample: &ChannelSample) -> Result<RealMatrix> {
    let h = &sample.h;
    if h.cols() != code.nt() {
        return Err(Error::DimensionMismatch {
            op: "equivalent_channel",
            left: h.shape(),
            right: (code.nt(), code.nt()),
        });
    }
    RealMatrix::identity(code.nt())
        .kron(&h.check_realify())
        .matmul(&code.generator_matrix())
}

/// `||Y - H X||_F^2`.
pub fn ml_metric(y: &ComplexMatrix, h: &ComplexMatrix, x_cw: &ComplexMatrix) -> Result<f64> {
    Ok(y.sub(&h.matmul(x_cw)?)?.frobenius_norm_sq())
}

/// The same metric in real form, `||tilde(vec(Y)) - H_eq x||^2`.
pub fn ml_metric_real(y: &ComplexMatrix, h_eq: &RealMatrix, x: &[f64]) -> Result<f64> {
    let yv = tilde_vec(&y.vec());
    let hx = h_eq.matvec(x)?;
    if hx.len() != yv.len() {
        return Err(Error::LengthMismatch {
            expected: hx.len(),
            got: yv.len(),
        });
    }
    Ok(yv.iter().zip(&hx).map(|(a, b)| (a - b) * (a - b)).sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyWarning {
    /// `m_ij != 0` but `|r_ij|` fell below the nonzero threshold.
    NearZero {
        i: usize,
        j: usize,
        trial: usize,
        relative: f64,
    },
    /// The trial's channel gave a rank-deficient `H_eq` and was redrawn.
    Resampled { trial: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub nr: usize,
    pub predicted_exponent: Exponent,
    pub matches: usize,
    /// Largest `|r_ij| / ||R||_F` over tree-implied zero positions.
    pub max_structural_residual: f64,
    pub warnings: Vec<VerifyWarning>,
}

impl VerifyReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.matches == self.trials && self.max_structural_residual <= tol
    }
}

struct TrialOutcome {
    matched: bool,
    residual: f64,
    warnings: Vec<VerifyWarning>,
}

/// Runs `trials` channel draws with seeds `seed, seed + 1, ...`. A
/// rank-deficient draw for trial `t` is redrawn with seed
/// `seed + t + a * trials` for attempt `a = 1, 2, ...`.
///
/// Each trial's `R` is thresholded at `tol * ||R||_F` and its exponent
/// compared with the HRQF prediction.
pub fn verify(code: &LinearStbc, trials: usize, nr: usize, seed: u64, tol: f64) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if nr == 0 {
        return Err(Error::InvalidArgument("nr must be at least 1".into()));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be finite and >= 0, got {tol}"
        )));
    }
    let k = code.k();
    let rows = 2 * nr * code.nt();
    if rows < k {
        return Err(Error::InsufficientReceive { rows, k });
    }
    let m = HrqfMatrix::from_code(code);
    let m_pattern = m.zero_pattern(DEFAULT_ZERO_TOL);
    let (predicted, tree) = fsd_exponent(&m_pattern)?;
    let cross = tree.cross_group_pairs();

    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<TrialOutcome> {
            let mut warnings = Vec::new();
            let mut attempt = 0u64;
            let r = loop {
                let s = seed
                    .wrapping_add(t as u64)
                    .wrapping_add(attempt.wrapping_mul(trials as u64));
                let h_eq = equivalent_channel(code, &sample_channel(code.nt(), nr, s)?)?;
                match gram_schmidt_qr(&h_eq) {
                    Ok((_, r)) => break r,
                    Err(Error::RankDeficient { column }) => {
                        warnings.push(VerifyWarning::Resampled { trial: t, seed: s });
                        attempt += 1;
                        if attempt >= MAX_RESAMPLES {
                            return Err(Error::InvalidArgument(format!(
                                "H_eq was rank deficient at column {column} in {MAX_RESAMPLES} consecutive draws; \
                                 nr = {nr} is too small for this code"
                            )));
                        }
                    }
                    Err(e) => return Err(e),
                }
            };
            let norm = r.frobenius_norm();
            let r_pattern = pattern_from_r(&r, tol * k as f64)?;
            let residual = cross.iter().map(|&(i, j)| r.get(i, j).abs() / norm).fold(0.0, f64::max);
            for i in 0..k {
                for j in i + 1..k {
                    let rel = r.get(i, j).abs() / norm;
                    if m_pattern.get(i, j) && rel <= NONZERO_WARN_TOL {
                        warnings.push(VerifyWarning::NearZero {
                            i,
                            j,
                            trial: t,
                            relative: rel,
                        });
                    }
                }
            }
            Ok(TrialOutcome {
                matched: exponent_of(&r_pattern) == predicted.0,
                residual,
                warnings,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerifyReport {
        trials,
        nr,
        predicted_exponent: predicted,
        matches: 0,
        max_structural_residual: 0.0,
        warnings: Vec::new(),
    };
    for o in outcomes {
        report.matches += usize::from(o.matched);
        report.max_structural_residual = report.max_structural_residual.max(o.residual);
        report.warnings.extend(o.warnings);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_channel(2, 3, 7).unwrap();
        assert_eq!(a, sample_channel(2, 3, 7).unwrap());
        assert_ne!(a.h, sample_channel(2, 3, 8).unwrap().h);
        assert_eq!(a.h.shape(), (3, 2));
        assert!(sample_channel(0, 1, 0).is_err());
    }

    #[test]
    fn sample_moments() {
        let n = 10_000;
        let mut sum = [Complex64::new(0.0, 0.0); 4];
        let mut power = 0.0;
        for s in 0..n {
            let h = sample_channel(2, 2, s).unwrap().h;
            for (acc, z) in sum.iter_mut().zip(h.as_slice()) {
                *acc += z;
                power += z.norm_sqr();
            }
        }
        for acc in sum {
            let mean = acc / n as f64;
            assert!(mean.re.abs() < 0.05 && mean.im.abs() < 0.05, "{mean}");
        }
        let var = power / (4 * n) as f64;
        assert!((var - 1.0).abs() < 0.05, "{var}");
    }

    #[test]
    fn identity_channel_gives_generator() {
        let code = catalog::silver();
        let sample = ChannelSample {
            h: ComplexMatrix::identity(2),
            seed: 0,
        };
        assert_eq!(equivalent_channel(&code, &sample).unwrap(), code.generator_matrix());
    }

    #[test]
    fn silver_heq_shape() {
        let code = catalog::silver();
        let h = equivalent_channel(&code, &sample_channel(2, 2, 1).unwrap()).unwrap();
        assert_eq!(h.shape(), (8, 8));
        let wrong = sample_channel(3, 2, 1).unwrap();
        assert!(equivalent_channel(&code, &wrong).is_err());
    }

    #[test]
    fn noiseless_metric_is_zero() {
        let code = catalog::abba();
        let sample = sample_channel(2, 2, 3).unwrap();
        let x = code.evaluate_codeword(&[0.3, -1.0, 2.0, 0.5]).unwrap();
        let y = sample.h.matmul(&x).unwrap();
        assert!(ml_metric(&y, &sample.h, &x).unwrap() < 1e-24);
        let h_eq = equivalent_channel(&code, &sample).unwrap();
        assert!(ml_metric_real(&y, &h_eq, &[0.3, -1.0, 2.0, 0.5]).unwrap() < 1e-24);
        assert!(ml_metric(&y, &sample.h, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn verify_preconditions() {
        let silver = catalog::silver();
        assert_eq!(
            verify(&silver, 10, 1, 0, 1e-8).unwrap_err(),
            Error::InsufficientReceive { rows: 4, k: 8 }
        );
        assert!(verify(&silver, 0, 2, 0, 1e-8).is_err());
    }

    #[test]
    fn structurally_rank_deficient_receive_count() {
        // 24 rows for K = 17, but the equivalent channel has rank 16.
        let err = verify(&catalog::fgd4x4(), 2, 3, 0, 1e-8).unwrap_err();
        assert!(err.to_string().contains("nr = 3"), "{err}");
    }

    #[test]
    fn verify_alamouti() {
        let report = verify(&catalog::alamouti(), 20, 1, 5, 1e-8).unwrap();
        assert_eq!(report.predicted_exponent, Exponent(1));
        assert_eq!(report.matches, 20);
        assert!(report.passed(1e-8));
    }
}
