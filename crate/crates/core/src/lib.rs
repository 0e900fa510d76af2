//! Hurwitz-Radon quadratic form (HRQF) analysis of linear space-time block
//! codes.
//!
//! Given the weight matrices of a code, the crate builds the HRQF matrix,
//! evaluates the fast-sphere-decoding complexity exponent of a variable
//! ordering, searches for the ordering with the smallest exponent, and
//! checks by Monte-Carlo that the QR factor of random equivalent channels
//! has the zero structure the HRQF predicts.
//!
//! ```
//! use stbc_hrqf::{catalog, fsd_exponent, optimize, HrqfMatrix, DEFAULT_ZERO_TOL};
//!
//! let code = catalog::silver();
//! let m = HrqfMatrix::from_code(&code);
//! let (e, _tree) = fsd_exponent(&m.zero_pattern(DEFAULT_ZERO_TOL)).unwrap();
//! assert_eq!(e.0, 5);
//! assert_eq!(optimize(&m).unwrap().best_exponent.0, 5);
//! ```

pub mod catalog;
pub mod channel;
pub mod code;
pub mod complexity;
pub mod error;
pub mod hrqf;
pub mod io;
pub mod matrix;
pub mod qr;
pub mod search;

pub use channel::{
    equivalent_channel, ml_metric, ml_metric_real, sample_channel, verify, ChannelSample, VerifyReport, VerifyWarning,
    DEFAULT_VERIFY_TOL,
};
pub use code::{LinearStbc, Ordering};
pub use complexity::{
    exponent_of, fsd_exponent, fsd_exponent_with, pattern_from_r, ComplexityTree, EvalMode, Exponent,
};
pub use error::{Error, Result};
pub use hrqf::{hr_product, HrqfMatrix, ZeroPattern, DEFAULT_ZERO_TOL};
pub use matrix::{tilde_vec, untilde_vec, ComplexMatrix, RealMatrix};
pub use qr::gram_schmidt_qr;
pub use search::{
    brute_force, brute_force_pattern, exact_exponent, marker_search, marker_search_pattern, optimize, optimize_pattern,
    SearchResult, DEFAULT_BRUTE_MAX_K,
};
