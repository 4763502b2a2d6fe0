//! Lower bounds on hereditary discrepancy from the spectrum of `AᵀA`.
//!
//! Products of eigenvalues and binomial coefficients are evaluated as sums of
//! logarithms. Eigenvalues below `1e-12 · λ₁` are treated as exact zeros.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::linalg::{sym_eigen, DenseMatrix};
use crate::{Error, Result};

const RANK_TOL: f64 = 1e-12;

/// Every bound for one matrix, all derived from a single eigendecomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    /// Spectrum of `AᵀA`, descending.
    pub eigenvalues: Vec<f64>,
    /// `(k, (k/2e)·√(λ_k/mn))`
    pub per_k_inf: Vec<(usize, f64)>,
    /// `(k, ½·(Πλᵢ / C(n,k)C(m,k))^{1/2k})`
    pub per_k_inf_prod: Vec<(usize, f64)>,
    /// `(k, (k/e)·√(λ_k/8πmn))`
    pub per_k_l2: Vec<(usize, f64)>,
    pub trace_bound: f64,
    /// `None` when `AᵀA` is singular.
    pub det_bound_l2: Option<f64>,
    /// Lower bound on `herdisc(A)`.
    pub best_inf: f64,
    /// Lower bound on `herdisc₂(A)`.
    pub best_l2: f64,
}

fn check_k(k: usize, m: usize, n: usize, eigenvalues: &[f64]) -> Result<()> {
    let max = m.min(n).min(eigenvalues.len());
    if k == 0 || k > max {
        return Err(Error::BadK { k, max });
    }
    Ok(())
}

/// `λ_k`, or zero when it is below the numerical rank threshold.
fn effective(eigenvalues: &[f64], i: usize) -> f64 {
    let top = eigenvalues.first().copied().unwrap_or(0.0);
    let v = eigenvalues[i];
    if v <= RANK_TOL * top {
        0.0
    } else {
        v
    }
}

pub(crate) fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64).ln() - (i as f64).ln())
        .sum()
}

/// `herdisc(A) ≥ (k / 2e) · √(λ_k / mn)`.
pub fn eigen_bound_inf(eigenvalues: &[f64], m: usize, n: usize, k: usize) -> Result<f64> {
    check_k(k, m, n, eigenvalues)?;
    let lambda = effective(eigenvalues, k - 1);
    Ok(k as f64 / (2.0 * E) * (lambda / (m as f64 * n as f64)).sqrt())
}

/// `herdisc(A) ≥ ½ · (Π_{i≤k} λᵢ / (C(n,k)·C(m,k)))^{1/2k}`.
pub fn eigen_bound_inf_prod(eigenvalues: &[f64], m: usize, n: usize, k: usize) -> Result<f64> {
    check_k(k, m, n, eigenvalues)?;
    let mut log_prod = 0.0;
    for i in 0..k {
        let lambda = effective(eigenvalues, i);
        if lambda == 0.0 {
            return Ok(0.0);
        }
        log_prod += lambda.ln();
    }
    let log_ratio = log_prod - ln_binomial(n, k) - ln_binomial(m, k);
    Ok(0.5 * (log_ratio / (2.0 * k as f64)).exp())
}

/// `herdisc₂(A) ≥ (k / e) · √(λ_k / 8πmn)`.
pub fn eigen_bound_l2(eigenvalues: &[f64], m: usize, n: usize, k: usize) -> Result<f64> {
    check_k(k, m, n, eigenvalues)?;
    let lambda = effective(eigenvalues, k - 1);
    Ok(k as f64 / E * (lambda / (8.0 * PI * m as f64 * n as f64)).sqrt())
}

/// The trace bound with `M = AᵀA`:
/// `herdisc(A) ≥ tr²M / (8e·min(m,n)·tr M²) · √(tr M / max(m,n))`.
pub fn trace_bound(a: &DenseMatrix) -> Result<f64> {
    let tr = a.as_slice().iter().map(|v| v * v).sum::<f64>();
    if tr == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let tr_sq = a.gram().frobenius_norm().powi(2);
    Ok(trace_bound_from(tr, tr_sq, a.rows(), a.cols()))
}

fn trace_bound_from(tr: f64, tr_sq: f64, m: usize, n: usize) -> f64 {
    let lo = m.min(n) as f64;
    let hi = m.max(n) as f64;
    tr * tr / (8.0 * E * lo * tr_sq) * (tr / hi).sqrt()
}

/// `herdisc₂(A) ≥ √(n / 8πem) · det(AᵀA)^{1/2n}`; zero when `AᵀA` is singular.
pub fn det_bound_l2(a: &DenseMatrix) -> Result<f64> {
    let eig = sym_eigen(&a.gram())?;
    Ok(det_bound_from(eig.values(), a.rows(), a.cols()).unwrap_or(0.0))
}

fn det_bound_from(eigenvalues: &[f64], m: usize, n: usize) -> Option<f64> {
    let mut log_det = 0.0;
    for i in 0..eigenvalues.len() {
        let lambda = effective(eigenvalues, i);
        if lambda == 0.0 {
            return None;
        }
        log_det += lambda.ln();
    }
    let scale = (n as f64 / (8.0 * PI * E * m as f64)).sqrt();
    Some(scale * (log_det / (2.0 * n as f64)).exp())
}

/// Largest `det(CᵀC)` over `m × k` column submatrices `C`, and its columns
/// (lexicographically first among ties). Exhaustive; `n ≤ 16`.
pub fn best_submatrix_det(a: &DenseMatrix, k: usize) -> Result<(f64, Vec<usize>)> {
    const MAX_N: usize = 16;
    let (m, n) = (a.rows(), a.cols());
    if n > MAX_N {
        return Err(Error::TooLarge { n, max: MAX_N });
    }
    if k == 0 || k > m.min(n) {
        return Err(Error::BadK { k, max: m.min(n) });
    }
    let g = a.gram();
    let mut subset: Vec<usize> = (0..k).collect();
    let mut best = f64::NEG_INFINITY;
    let mut best_subset = subset.clone();
    let mut minor = vec![0.0; k * k];
    loop {
        for (r, &p) in subset.iter().enumerate() {
            for (c, &q) in subset.iter().enumerate() {
                minor[r * k + c] = g.get(p, q);
            }
        }
        let d = determinant(&mut minor, k);
        if d > best {
            best = d;
            best_subset.copy_from_slice(&subset);
        }
        // next k-combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok((best, best_subset))
}

/// Determinant by Gaussian elimination with partial pivoting (destroys `a`).
pub(crate) fn determinant(a: &mut [f64], k: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&i, &j| a[i * k + col].abs().total_cmp(&a[j * k + col].abs()))
            .unwrap();
        if a[pivot * k + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..k {
                a.swap(pivot * k + c, col * k + c);
            }
            det = -det;
        }
        let p = a[col * k + col];
        det *= p;
        for r in col + 1..k {
            let f = a[r * k + col] / p;
            if f != 0.0 {
                for c in col..k {
                    a[r * k + c] -= f * a[col * k + c];
                }
            }
        }
    }
    det
}

/// Computes `AᵀA` and its spectrum once and evaluates every bound.
pub fn bound_report(a: &DenseMatrix) -> Result<BoundReport> {
    let (m, n) = (a.rows(), a.cols());
    let gram = a.gram();
    let eig = sym_eigen(&gram)?;
    let eigenvalues = eig.values().to_vec();
    let kmax = m.min(n);

    let mut per_k_inf = Vec::with_capacity(kmax);
    let mut per_k_inf_prod = Vec::with_capacity(kmax);
    let mut per_k_l2 = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        per_k_inf.push((k, eigen_bound_inf(&eigenvalues, m, n, k)?));
        per_k_inf_prod.push((k, eigen_bound_inf_prod(&eigenvalues, m, n, k)?));
        per_k_l2.push((k, eigen_bound_l2(&eigenvalues, m, n, k)?));
    }

    let tr = gram.trace();
    let trace_bound = if tr == 0.0 {
        0.0
    } else {
        trace_bound_from(tr, gram.frobenius_norm().powi(2), m, n)
    };
    let det_bound_l2 = det_bound_from(&eigenvalues, m, n);

    let best_inf = per_k_inf
        .iter()
        .chain(&per_k_inf_prod)
        .map(|&(_, v)| v)
        .fold(trace_bound, f64::max);
    let best_l2 = per_k_l2
        .iter()
        .map(|&(_, v)| v)
        .fold(det_bound_l2.unwrap_or(0.0), f64::max);

    Ok(BoundReport {
        m,
        n,
        eigenvalues,
        per_k_inf,
        per_k_inf_prod,
        per_k_l2,
        trace_bound,
        det_bound_l2,
        best_inf,
        best_l2,
    })
}
