#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stbc_hrqf::{ComplexMatrix, ZeroPattern};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric pattern with K in `k_range` and an edge density drawn
/// per pattern, so both sparse and dense cases appear.
pub fn random_pattern(seed: u64, k_min: usize, k_max: usize) -> ZeroPattern {
    let mut r = rng(seed);
    let k = r.gen_range(k_min..=k_max);
    let density: f64 = r.gen_range(0.1..0.7);
    let mut p = ZeroPattern::diagonal(k);
    for i in 0..k {
        for j in i + 1..k {
            if r.gen_bool(density) {
                p.set(i, j, true);
            }
        }
    }
    p
}

pub fn random_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.gen_range(-2.0..2.0)).collect()
}

pub fn random_complex(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)))
        .collect();
    ComplexMatrix::new(rows, cols, data).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

pub fn vec_rel_err(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let scale: f64 = a
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(b.iter().map(|x| x * x).sum::<f64>().sqrt());
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
