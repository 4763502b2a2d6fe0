use std::time::{Duration, Instant};

use rand::Rng;

use super::SolveStats;
use crate::linalg::DenseMatrix;
use crate::measures::{ColorVector, NormKind};
use crate::Result;

/// How long [`sample_many`] keeps drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Time(Duration),
    Draws(usize),
}

fn draw<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect()
}

/// One uniformly random ±1 coloring.
pub fn sample<R: Rng + ?Sized>(a: &DenseMatrix, rng: &mut R) -> Result<(ColorVector, SolveStats)> {
    let started = Instant::now();
    let x = draw(a.cols(), rng);
    let mut stats = SolveStats::finish(a, &x, started, Vec::new())?;
    stats.draws = 1;
    Ok((ColorVector::from_signs(&x), stats))
}

/// The best of repeated uniform draws by ℓ₂-discrepancy. At least one draw is
/// always made; ties keep the earlier draw.
pub fn sample_many<R: Rng + ?Sized>(
    a: &DenseMatrix,
    budget: Budget,
    rng: &mut R,
) -> Result<(ColorVector, SolveStats)> {
    let started = Instant::now();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut draws = 0usize;
    loop {
        let done = match budget {
            Budget::Time(limit) => draws > 0 && started.elapsed() >= limit,
            Budget::Draws(limit) => draws > 0 && draws >= limit,
        };
        if done {
            break;
        }
        let x = draw(a.cols(), rng);
        let value = NormKind::L2.of(&a.mul_vec(&x)?);
        draws += 1;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, x));
        }
    }
    let (_, x) = best.expect("at least one draw");
    let mut stats = SolveStats::finish(a, &x, started, Vec::new())?;
    stats.draws = draws;
    Ok((ColorVector::from_signs(&x), stats))
}
