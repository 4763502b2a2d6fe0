//! Dense linear algebra used by every solver in the crate.

mod basis;
mod eigen;
mod matrix;

pub use basis::{sample_unit_in_complement, OrthonormalBasis, SAMPLE_RETRIES};
pub use eigen::{sym_eigen, sym_eigen_jacobi, EigenDecomposition};
pub use matrix::DenseMatrix;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    // Four accumulators let the compiler vectorise without reassociating.
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut tail = 0.0;
    for i in 4 * chunks..a.len() {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn gaussian_vector<R: rand::Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    use rand_distr::StandardNormal;
    (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}
