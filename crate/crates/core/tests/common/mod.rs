//! Test helpers: random inputs and brute-force oracles written independently
//! of the library code they check.
#![allow(dead_code)]

use herdisc::linalg::DenseMatrix;
use herdisc::rng::{seeded, DiscRng};
use rand::Rng;

pub fn rng(seed: u64) -> DiscRng {
    seeded(seed)
}

/// Entries uniform in `[-1, 1]`.
pub fn uniform_real(m: usize, n: usize, rng: &mut impl Rng) -> DenseMatrix {
    DenseMatrix::from_fn(m, n, |_, _| rng.random_range(-1.0..=1.0))
}

/// Entries uniform in `{-1, 0, 1}`.
pub fn ternary(m: usize, n: usize, rng: &mut impl Rng) -> DenseMatrix {
    DenseMatrix::from_fn(m, n, |_, _| f64::from(rng.random_range(-1i8..=1)))
}

pub fn signs(m: usize, n: usize, rng: &mut impl Rng) -> DenseMatrix {
    DenseMatrix::from_fn(m, n, |_, _| if rng.random::<bool>() { 1.0 } else { -1.0 })
}

/// `RᵀR` for a random `rows × k` matrix `R`.
pub fn random_psd(k: usize, rows: usize, rng: &mut impl Rng) -> DenseMatrix {
    let r = uniform_real(rows, k, rng);
    DenseMatrix::from_fn(k, k, |p, q| (0..rows).map(|i| r.get(i, p) * r.get(i, q)).sum())
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    let k = m.len();
    match k {
        0 => 1.0,
        1 => m[0][0],
        _ => (0..k)
            .map(|c| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * cofactor_det(&minor)
            })
            .sum(),
    }
}

pub fn to_rows(a: &DenseMatrix) -> Vec<Vec<f64>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

/// `det(CᵀC)` for the listed columns, by cofactor expansion.
pub fn gram_det(a: &DenseMatrix, cols: &[usize]) -> f64 {
    let g: Vec<Vec<f64>> = cols
        .iter()
        .map(|&p| {
            cols.iter()
                .map(|&q| (0..a.rows()).map(|i| a.get(i, p) * a.get(i, q)).sum())
                .collect()
        })
        .collect();
    cofactor_det(&g)
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Minimum over all `2^|cols|` colorings of the chosen columns, plain loop.
pub fn brute_disc(a: &DenseMatrix, cols: &[usize], l2: bool) -> f64 {
    let mut best = f64::INFINITY;
    for mask in 0u32..1 << cols.len() {
        let mut worst = 0.0f64;
        let mut sq = 0.0;
        for i in 0..a.rows() {
            let s: f64 = cols
                .iter()
                .enumerate()
                .map(|(b, &j)| if mask >> b & 1 == 1 { a.get(i, j) } else { -a.get(i, j) })
                .sum();
            worst = worst.max(s.abs());
            sq += s * s;
        }
        let v = if l2 { (sq / a.rows() as f64).sqrt() } else { worst };
        best = best.min(v);
    }
    best
}

/// Maximum of [`brute_disc`] over nonempty column subsets.
pub fn brute_herdisc(a: &DenseMatrix, l2: bool) -> f64 {
    let n = a.cols();
    (1u32..1 << n)
        .map(|mask| {
            let cols: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            brute_disc(a, &cols, l2)
        })
        .fold(0.0, f64::max)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Summary of one partial-coloring call made by [`drive`].
#[derive(Debug, Clone)]
pub struct CheckedCall {
    pub k: usize,
    pub frozen: usize,
    pub iterations: usize,
    /// `‖A(x ⊕ γ)‖² − ‖Ax‖²` with both products recomputed from scratch.
    pub increase: f64,
    pub cap: f64,
    pub max_eigvec_leak: f64,
    pub max_frozen_leak: f64,
    pub max_cross_term: f64,
}

/// Runs audited partial colorings from `x = 0` to completion, recomputing
/// `Ax` directly before every call, and asserts the per-call structural
/// contract (cube membership, exact snapping, halving).
pub fn drive(a: &DenseMatrix, rng: &mut impl Rng) -> (Vec<f64>, Vec<CheckedCall>) {
    use herdisc::coloring::{partial_color_audited, PartialColoring};
    use herdisc::linalg::norm2;

    let mut state = PartialColoring::zeros(a.cols());
    let mut calls = Vec::new();
    while !state.is_complete() {
        let ax = a.mul_vec(state.x()).unwrap();
        let k = state.live_count();
        let r = partial_color_audited(a, &state, &ax, rng).unwrap();
        assert_eq!(r.k, k);
        assert!(r.frozen_count >= k.div_ceil(2), "froze {} of {k}", r.frozen_count);
        assert!(r.iterations <= k);
        assert!(r.values.iter().all(|v| v.abs() <= 1.0));
        assert_eq!(r.values.iter().filter(|v| v.abs() == 1.0).count(), r.frozen_count);
        for ((v, g), &i) in r.values.iter().zip(&r.gamma).zip(state.live_indices()) {
            assert!((state.x()[i] + g - v).abs() <= 1e-15);
        }
        state.apply(&r).unwrap();
        assert!(state.live_count() <= k / 2);
        let after = a.mul_vec(state.x()).unwrap();
        let audit = r.audit.clone().unwrap();
        calls.push(CheckedCall {
            k,
            frozen: r.frozen_count,
            iterations: r.iterations,
            increase: norm2(&after).powi(2) - norm2(&ax).powi(2),
            cap: r.increase_cap(),
            max_eigvec_leak: audit.max_eigvec_leak,
            max_frozen_leak: audit.max_frozen_leak,
            max_cross_term: audit.max_cross_term,
        });
    }
    (state.x().to_vec(), calls)
}

pub fn ceil_log2(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}
