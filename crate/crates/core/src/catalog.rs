//! Builtin codes, each expanded to real-variable weight matrices.
//!
//! | name       | nt | K  | variables                   |
//! |------------|----|----|-----------------------------|
//! | `alamouti` | 2  | 4  | `s_1I s_1Q s_2I s_2Q`       |
//! | `silver`   | 2  | 8  | `s_1I .. s_4Q`              |
//! | `abba`     | 2  | 4  | `x_1 .. x_4`                |
//! | `fgd4x4`   | 4  | 17 | `s_1 .. s_17`               |

use num_complex::Complex64;

use crate::code::LinearStbc;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub const BUILTIN_NAMES: [&str; 4] = ["alamouti", "silver", "abba", "fgd4x4"];

pub fn builtin(name: &str) -> Result<LinearStbc> {
    match name {
        "alamouti" => Ok(alamouti()),
        "silver" => Ok(silver()),
        "abba" => Ok(abba()),
        "fgd4x4" => Ok(fgd4x4()),
        _ => Err(Error::UnknownCode {
            name: name.to_string(),
            valid: BUILTIN_NAMES.join(", "),
        }),
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const J: Complex64 = Complex64::new(0.0, 1.0);

fn mat2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![a, b, c, d]).expect("finite 2x2")
}

/// `[[s1, -s2*], [s2, s1*]]`.
pub fn alamouti_block(s1: Complex64, s2: Complex64) -> ComplexMatrix {
    mat2(s1, -s2.conj(), s2, s1.conj())
}

/// Unitary mixing matrix of the Silver code.
pub fn silver_mixing() -> [[Complex64; 2]; 2] {
    let k = 1.0 / 7f64.sqrt();
    [
        [Complex64::new(k, k), Complex64::new(-k, 2.0 * k)],
        [Complex64::new(k, 2.0 * k), Complex64::new(k, -k)],
    ]
}

/// Silver codeword `X_a(s1, s2) + T X_b(z1, z2)` with `[z1, z2] = U [s3, s4]`
/// and `T = diag(1, -1)`.
pub fn silver_codeword(s: [Complex64; 4]) -> ComplexMatrix {
    let u = silver_mixing();
    let z1 = u[0][0] * s[2] + u[0][1] * s[3];
    let z2 = u[1][0] * s[2] + u[1][1] * s[3];
    let xa = alamouti_block(s[0], s[1]);
    let xb = alamouti_block(z1, z2);
    let t = mat2(ONE, ZERO, ZERO, -ONE);
    xa.add(&t.matmul(&xb).expect("2x2")).expect("2x2")
}

/// Expands a map of complex symbols into real weight matrices by
/// evaluating it at `s_k = 1` and `s_k = j` for each symbol in turn.
fn realify_symbols<const N: usize>(f: impl Fn([Complex64; N]) -> ComplexMatrix) -> (Vec<ComplexMatrix>, Vec<String>) {
    let mut weights = Vec::with_capacity(2 * N);
    let mut labels = Vec::with_capacity(2 * N);
    for k in 0..N {
        for (unit, suffix) in [(ONE, 'I'), (J, 'Q')] {
            let mut s = [ZERO; N];
            s[k] = unit;
            weights.push(f(s));
            labels.push(format!("s_{}{}", k + 1, suffix));
        }
    }
    (weights, labels)
}

pub fn alamouti() -> LinearStbc {
    let (w, l) = realify_symbols(|s: [Complex64; 2]| alamouti_block(s[0], s[1]));
    LinearStbc::new("alamouti", 2, w, l).expect("alamouti is a valid code")
}

pub fn silver() -> LinearStbc {
    let (w, l) = realify_symbols(silver_codeword);
    LinearStbc::new("silver", 2, w, l).expect("silver is a valid code")
}

pub fn abba() -> LinearStbc {
    // [[x1 + j x4, -x2 + j x3], [-x2 + j x3, x1 + j x4]]
    let w = vec![
        mat2(ONE, ZERO, ZERO, ONE),
        mat2(ZERO, -ONE, -ONE, ZERO),
        mat2(ZERO, J, J, ZERO),
        mat2(J, ZERO, ZERO, J),
    ];
    let l = (1..=4).map(|i| format!("x_{i}")).collect();
    LinearStbc::new("abba", 2, w, l).expect("abba is a valid code")
}

/// One term `coef * s_var` of a codeword entry, `var` 1-based.
type Term = (usize, Complex64);

const fn t(var: usize, re: f64, im: f64) -> Term {
    (var, Complex64::new(re, im))
}

/// Entries of the 4x4 fast-group-decodable code in 17 real variables.
#[rustfmt::skip]
const FGD4X4_ENTRIES: [[&[Term]; 4]; 4] = [
    [
        &[t(1, 1., 0.), t(2, 0., 1.), t(15, 0., 1.), t(16, 0., 1.), t(17, 0., 1.)],
        &[t(7, 1., 0.), t(8, 0., 1.), t(13, 1., 0.), t(14, 0., 1.)],
        &[t(3, 1., 0.), t(4, 0., 1.), t(11, 1., 0.), t(12, 0., 1.)],
        &[t(5, -1., 0.), t(6, 0., -1.), t(9, 1., 0.), t(10, 0., 1.)],
    ],
    [
        &[t(7, -1., 0.), t(8, 0., 1.), t(13, -1., 0.), t(14, 0., 1.)],
        &[t(1, 1., 0.), t(2, 0., 1.), t(15, 0., 1.), t(16, 0., -1.), t(17, 0., -1.)],
        &[t(5, 1., 0.), t(6, 0., -1.), t(9, 1., 0.), t(10, 0., -1.)],
        &[t(3, 1., 0.), t(4, 0., -1.), t(11, -1., 0.), t(12, 0., 1.)],
    ],
    [
        &[t(3, -1., 0.), t(4, 0., 1.), t(11, -1., 0.), t(12, 0., 1.)],
        &[t(5, -1., 0.), t(6, 0., -1.), t(9, -1., 0.), t(10, 0., -1.)],
        &[t(1, 1., 0.), t(2, 0., -1.), t(15, 0., 1.), t(16, 0., -1.), t(17, 0., 1.)],
        &[t(7, 1., 0.), t(8, 0., -1.), t(13, -1., 0.), t(14, 0., 1.)],
    ],
    [
        &[t(5, 1., 0.), t(6, 0., -1.), t(9, -1., 0.), t(10, 0., 1.)],
        &[t(3, -1., 0.), t(4, 0., -1.), t(11, 1., 0.), t(12, 0., 1.)],
        &[t(7, -1., 0.), t(8, 0., -1.), t(13, 1., 0.), t(14, 0., 1.)],
        &[t(1, 1., 0.), t(2, 0., -1.), t(15, 0., 1.), t(16, 0., 1.), t(17, 0., -1.)],
    ],
];

pub fn fgd4x4() -> LinearStbc {
    let mut data = vec![vec![ZERO; 16]; 17];
    for (r, row) in FGD4X4_ENTRIES.iter().enumerate() {
        for (c, terms) in row.iter().enumerate() {
            for &(var, coef) in terms.iter() {
                data[var - 1][r * 4 + c] += coef;
            }
        }
    }
    let w = data
        .into_iter()
        .map(|d| ComplexMatrix::new(4, 4, d).expect("finite 4x4"))
        .collect();
    let l = (1..=17).map(|i| format!("s_{i}")).collect();
    LinearStbc::new("fgd4x4", 4, w, l).expect("fgd4x4 is a valid code")
}
