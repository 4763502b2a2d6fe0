use rand::Rng;

use super::{PartialColorResult, PartialColoring};
use crate::linalg::{axpy, dot, sample_unit_in_complement, sym_eigen, DenseMatrix, OrthonormalBasis};
use crate::{Error, Result};

/// Values this close to ±1 after a step are snapped onto the boundary.
const SNAP: f64 = 4.0 * f64::EPSILON;

/// What the accepted steps of one call looked like. Collected only by
/// [`partial_color_audited`].
#[derive(Debug, Clone, Default)]
pub struct StepAudit {
    pub steps: usize,
    /// Largest `|⟨v, μᵢ⟩|` over steps and excluded eigenvectors.
    pub max_eigvec_leak: f64,
    /// Largest `|vⱼ|` on an already-frozen coordinate, before zeroing.
    pub max_frozen_leak: f64,
    /// Largest `⟨Ax, A(0 ⊕ σβv)⟩`; nonpositive when every step is sound.
    pub max_cross_term: f64,
}

/// One eigenvector-avoiding partial coloring of the live coordinates of `state`.
///
/// `ax` must hold `A·x` for the current `x`. Works on `C`, the live columns of
/// `A`: decomposes `CᵀC`, excludes the top `⌊k/4⌋` eigenvectors, and walks
/// along random unit directions orthogonal to them and to every coordinate
/// frozen so far. Each step moves by the largest multiple that keeps the
/// point in the cube, in the direction that does not increase `⟨Ax, Cv⟩`.
/// Stops once `⌈k/2⌉` coordinates sit at ±1.
pub fn partial_color<R: Rng + ?Sized>(
    a: &DenseMatrix,
    state: &PartialColoring,
    ax: &[f64],
    rng: &mut R,
) -> Result<PartialColorResult> {
    run(a, state, ax, rng, false)
}

/// [`partial_color`] that also records a [`StepAudit`].
pub fn partial_color_audited<R: Rng + ?Sized>(
    a: &DenseMatrix,
    state: &PartialColoring,
    ax: &[f64],
    rng: &mut R,
) -> Result<PartialColorResult> {
    run(a, state, ax, rng, true)
}

fn run<R: Rng + ?Sized>(
    a: &DenseMatrix,
    state: &PartialColoring,
    ax: &[f64],
    rng: &mut R,
    audit: bool,
) -> Result<PartialColorResult> {
    a.check_cols(state.x().len())?;
    if ax.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: ax.len(),
        });
    }
    let live = state.live_indices();
    let k = live.len();
    if k == 0 {
        return Err(Error::NoLiveCoordinates);
    }

    let c = a.select_columns(live)?;
    let eig = sym_eigen(&c.gram())?;
    // Columns of C as contiguous rows, so Cv can skip frozen coordinates.
    let ct = c.transpose();
    let excluded = k / 4;
    let lambda_cap = eig.values()[excluded];

    let mut basis = OrthonormalBasis::new(k);
    for i in 0..excluded {
        basis.add(eig.vector(i))?;
    }

    let mut values: Vec<f64> = live.iter().map(|&i| state.x()[i]).collect();
    let mut frozen = vec![false; k];
    let mut frozen_count = 0;
    let need = k.div_ceil(2);
    let mut iterations = 0;
    let mut log = audit.then(StepAudit::default);

    while frozen_count < need {
        iterations += 1;
        let mut v = sample_unit_in_complement(&basis, rng)?;
        if let Some(log) = log.as_mut() {
            for i in 0..excluded {
                log.max_eigvec_leak = log.max_eigvec_leak.max(dot(&v, eig.vector(i)).abs());
            }
            for (vj, _) in v.iter().zip(&frozen).filter(|(_, &f)| f) {
                log.max_frozen_leak = log.max_frozen_leak.max(vj.abs());
            }
        }
        for (vj, _) in v.iter_mut().zip(&frozen).filter(|(_, &f)| f) {
            *vj = 0.0;
        }

        let mut cv = vec![0.0; c.rows()];
        for (j, &vj) in v.iter().enumerate() {
            if vj != 0.0 {
                axpy(vj, ct.row(j), &mut cv);
            }
        }
        let inner = dot(ax, &cv);
        let sigma = if inner > 0.0 { -1.0 } else { 1.0 };

        // Largest step keeping every coordinate in [-1, 1].
        let mut beta = f64::INFINITY;
        let mut limiting = None;
        for j in 0..k {
            let w = sigma * v[j];
            if frozen[j] || w == 0.0 {
                continue;
            }
            let room = if w > 0.0 { 1.0 - values[j] } else { -1.0 - values[j] };
            let step = room / w;
            if step < beta {
                beta = step;
                limiting = Some(j);
            }
        }
        let Some(limiting) = limiting.filter(|_| beta.is_finite()) else {
            return Err(Error::NumericalStall {
                iteration: iterations,
            });
        };
        let beta = beta.max(0.0);

        for j in 0..k {
            if !frozen[j] {
                values[j] += sigma * beta * v[j];
            }
        }
        values[limiting] = (sigma * v[limiting]).signum();
        if let Some(log) = log.as_mut() {
            log.steps += 1;
            log.max_cross_term = if log.steps == 1 {
                sigma * beta * inner
            } else {
                log.max_cross_term.max(sigma * beta * inner)
            };
        }

        for j in 0..k {
            if frozen[j] {
                continue;
            }
            if values[j].abs() >= 1.0 - SNAP {
                values[j] = values[j].signum();
                frozen[j] = true;
                frozen_count += 1;
                basis.add_coordinate(j)?;
            }
        }
    }

    let gamma = values
        .iter()
        .zip(live)
        .map(|(v, &i)| v - state.x()[i])
        .collect();
    Ok(PartialColorResult {
        gamma,
        values,
        iterations,
        frozen_count,
        k,
        lambda_cap,
        audit: log,
    })
}
