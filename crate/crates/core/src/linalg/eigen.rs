use super::DenseMatrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 64;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-6;

/// Spectrum of a symmetric positive semidefinite matrix.
///
/// Eigenvalues are sorted descending and clamped at zero; `vector(i)` is the
/// unit eigenvector for `values()[i]`. Each eigenvector's sign is fixed so that
/// its first largest-magnitude component is positive, which makes the output
/// a deterministic function of the input.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    /// Row `i` holds eigenvector `i`.
    vectors: Vec<f64>,
    dim: usize,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[f64]> {
        self.vectors.chunks_exact(self.dim)
    }

    /// `Σ λᵢ μᵢ μᵢᵀ`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let k = self.dim;
        DenseMatrix::from_fn(k, k, |p, q| {
            (0..k)
                .map(|i| self.values[i] * self.vector(i)[p] * self.vector(i)[q])
                .sum()
        })
    }
}

/// Eigendecomposition of a symmetric PSD matrix.
///
/// Householder reduction to tridiagonal form followed by implicit QL
/// iterations. Eigenvalues in `[-1e-6·‖M‖_F, 0)` are roundoff and clamped to
/// zero; anything more negative is reported as [`Error::NotPsd`].
pub fn sym_eigen(m: &DenseMatrix) -> Result<EigenDecomposition> {
    let (mut a, k, fro) = symmetrised(m)?;
    let mut d = vec![0.0; k];
    let mut e = vec![0.0; k];
    if k > 0 {
        tridiagonalize(&mut a, &mut d, &mut e, k);
        tridiagonal_ql(&mut a, &mut d, &mut e, k)?;
    }
    finish(d, &a, k, fro)
}

/// Same contract as [`sym_eigen`], computed by cyclic Jacobi rotations.
///
/// Sweeps run until the off-diagonal Frobenius norm drops to `1e-12 · ‖M‖_F`
/// (at most 64 sweeps). Slower than [`sym_eigen`] by a large constant but
/// independent of it, which makes it a useful cross-check.
pub fn sym_eigen_jacobi(m: &DenseMatrix) -> Result<EigenDecomposition> {
    let (mut a, k, fro) = symmetrised(m)?;
    let mut vt = vec![0.0; k * k];
    for i in 0..k {
        vt[i * k + i] = 1.0;
    }
    jacobi_sweeps(&mut a, &mut vt, k, OFF_DIAGONAL_TOL * fro);
    let diag: Vec<f64> = (0..k).map(|i| a[i * k + i]).collect();
    finish(diag, &vt, k, fro)
}

/// Validates `m` and returns its symmetrised row-major copy, order and norm.
fn symmetrised(m: &DenseMatrix) -> Result<(Vec<f64>, usize, f64)> {
    let k = m.rows();
    if m.cols() != k {
        return Err(Error::NotSquare {
            rows: k,
            cols: m.cols(),
        });
    }
    let fro = m.frobenius_norm();
    let mut asymmetry = 0.0f64;
    for p in 0..k {
        for q in p + 1..k {
            asymmetry = asymmetry.max((m.get(p, q) - m.get(q, p)).abs());
        }
    }
    if asymmetry > SYMMETRY_TOL * fro {
        return Err(Error::NotSymmetric { asymmetry });
    }
    let a = (0..k * k)
        .map(|idx| {
            let (p, q) = (idx / k, idx % k);
            0.5 * (m.get(p, q) + m.get(q, p))
        })
        .collect();
    Ok((a, k, fro))
}

/// Sorts, clamps and sign-normalises. Row `i` of `vt` is the eigenvector of
/// `diag[i]`.
fn finish(diag: Vec<f64>, vt: &[f64], k: usize, fro: f64) -> Result<EigenDecomposition> {
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));

    let neg_tol = PSD_TOL * fro;
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k * k);
    for &i in &order {
        let lambda = diag[i];
        if lambda < -neg_tol {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        values.push(lambda.max(0.0));
        let v = &vt[i * k..(i + 1) * k];
        let sign = canonical_sign(v);
        vectors.extend(v.iter().map(|x| sign * x));
    }
    Ok(EigenDecomposition {
        values,
        vectors,
        dim: k,
    })
}

/// Householder tridiagonalisation (EISPACK `tred2` ordering).
///
/// `u` holds the symmetric input on entry and the accumulated transform on
/// exit, stored so that row `j` is column `j` of the transform. Keeping the
/// transposed layout makes every inner loop run over contiguous memory.
fn tridiagonalize(u: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) {
    // v(r, c) of the textbook algorithm lives at u[c * n + r].
    for j in 0..n {
        d[j] = u[j * n + n - 1];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = u[j * n + i - 1];
                u[j * n + i] = 0.0;
                u[i * n + j] = 0.0;
            }
        } else {
            for x in &mut d[..i] {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);

            for j in 0..i {
                let f = d[j];
                u[i * n + j] = f;
                let col = &u[j * n..j * n + i];
                let mut g = e[j] + col[j] * f;
                for kk in j + 1..i {
                    g += col[kk] * d[kk];
                    e[kk] += col[kk] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                let col = &mut u[j * n..j * n + i];
                for kk in j..i {
                    col[kk] -= f * e[kk] + g * d[kk];
                }
                d[j] = col[i - 1];
                u[j * n + i] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        u[i * n + n - 1] = u[i * n + i];
        u[i * n + i] = 1.0;
        let h = d[i + 1];
        let (head, tail) = u.split_at_mut((i + 1) * n);
        let next = &mut tail[..n];
        if h != 0.0 {
            for kk in 0..=i {
                d[kk] = next[kk] / h;
            }
            for j in 0..=i {
                let col = &mut head[j * n..j * n + i + 1];
                let g: f64 = super::dot(&next[..=i], col);
                for kk in 0..=i {
                    col[kk] -= g * d[kk];
                }
            }
        }
        next[..=i].fill(0.0);
    }
    for j in 0..n {
        d[j] = u[j * n + n - 1];
        u[j * n + n - 1] = 0.0;
    }
    u[(n - 1) * n + n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal `(d, e)` from [`tridiagonalize`]. On exit
/// `d` holds eigenvalues and row `i` of `u` the matching eigenvector.
fn tridiagonal_ql(u: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) -> Result<()> {
    const MAX_ITER_PER_VALUE: usize = 64;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > f64::EPSILON * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_ITER_PER_VALUE {
                    return Err(Error::NumericalStall { iteration: iter });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for x in &mut d[l + 2..n] {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (head, tail) = u.split_at_mut((i + 1) * n);
                    let vi = &mut head[i * n..];
                    let vj = &mut tail[..n];
                    for (a, b) in vi.iter_mut().zip(vj.iter_mut()) {
                        let h = *b;
                        *b = s * *a + c * h;
                        *a = c * *a - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= f64::EPSILON * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn canonical_sign(v: &[f64]) -> f64 {
    let max = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let lead = v
        .iter()
        .find(|x| x.abs() >= max * (1.0 - 1e-9))
        .copied()
        .unwrap_or(1.0);
    if lead < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn off_diagonal_norm(a: &[f64], k: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..k {
        for q in p + 1..k {
            s += 2.0 * a[p * k + q] * a[p * k + q];
        }
    }
    s.sqrt()
}

/// Applies cyclic Jacobi sweeps to the full symmetric matrix `a` (row-major), and
/// accumulates the rotations into `vt`, whose rows end up as eigenvectors.
fn jacobi_sweeps(a: &mut [f64], vt: &mut [f64], k: usize, target: f64) {
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a, k) <= target {
            return;
        }
        for p in 0..k.saturating_sub(1) {
            for q in p + 1..k {
                let apq = a[p * k + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * k + p];
                let aqq = a[q * k + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + theta.mul_add(theta, 1.0).sqrt())
                };
                let c = 1.0 / t.mul_add(t, 1.0).sqrt();
                let s = t * c;

                let (head, tail) = a.split_at_mut(q * k);
                let row_p = &mut head[p * k..(p + 1) * k];
                let row_q = &mut tail[..k];
                for r in 0..k {
                    let x = row_p[r];
                    let y = row_q[r];
                    row_p[r] = c * x - s * y;
                    row_q[r] = s * x + c * y;
                }
                row_p[p] = app - t * apq;
                row_q[q] = aqq + t * apq;
                row_p[q] = 0.0;
                row_q[p] = 0.0;
                for r in 0..k {
                    if r != p && r != q {
                        a[r * k + p] = a[p * k + r];
                        a[r * k + q] = a[q * k + r];
                    }
                }

                let (head, tail) = vt.split_at_mut(q * k);
                let vp = &mut head[p * k..(p + 1) * k];
                let vq = &mut tail[..k];
                for r in 0..k {
                    let x = vp[r];
                    let y = vq[r];
                    vp[r] = c * x - s * y;
                    vq[r] = s * x + c * y;
                }
            }
        }
    }
}
