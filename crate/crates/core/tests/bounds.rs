mod common;

use std::f64::consts::{E, PI};

use common::{binomial, brute_herdisc, cofactor_det, gram_det, rng, signs, subsets, ternary, to_rows, uniform_real};
use herdisc::bounds::{
    best_submatrix_det, bound_report, det_bound_l2, eigen_bound_inf, eigen_bound_inf_prod, eigen_bound_l2,
    trace_bound,
};
use herdisc::linalg::{sym_eigen, DenseMatrix};
use herdisc::measures::{herdisc_exact, NormKind};
use herdisc::Error;

fn spectrum(a: &DenseMatrix) -> Vec<f64> {
    sym_eigen(&a.gram()).unwrap().values().to_vec()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn identity_values() {
    for n in [1, 3, 5] {
        let id = DenseMatrix::identity(n);
        let ones = vec![1.0; n];
        assert!(rel_close(eigen_bound_inf(&ones, n, n, n).unwrap(), 1.0 / (2.0 * E), 1e-14));
        assert!(rel_close(eigen_bound_inf_prod(&ones, n, n, n).unwrap(), 0.5, 1e-14));
        assert!(rel_close(eigen_bound_l2(&ones, n, n, n).unwrap(), 1.0 / (E * (8.0 * PI).sqrt()), 1e-14));
        assert!(rel_close(trace_bound(&id).unwrap(), 1.0 / (8.0 * E), 1e-14));
        assert!(rel_close(det_bound_l2(&id).unwrap(), (1.0 / (8.0 * PI * E)).sqrt(), 1e-12));
        let report = bound_report(&id).unwrap();
        assert!(rel_close(report.best_inf, 0.5, 1e-12));
        for k in 1..=n {
            assert_eq!(best_submatrix_det(&id, k).unwrap().0, 1.0);
        }
    }
}

#[test]
fn scaled_identity_trace_bound() {
    // tr M = 4n, tr M² = 16n: 16n²/(8e·n·16n)·√(4n/n) = 1/(4e).
    let a = DenseMatrix::identity(4).scaled(2.0);
    let t = trace_bound(&a).unwrap();
    assert!(rel_close(t, 1.0 / (4.0 * E), 1e-14));
    assert!(t <= herdisc_exact(&a, NormKind::LInfinity).unwrap());
    assert_eq!(herdisc_exact(&a, NormKind::LInfinity).unwrap(), 2.0);
}

#[test]
fn degenerate_inputs() {
    let zero = DenseMatrix::zeros(3, 3);
    assert!(matches!(trace_bound(&zero), Err(Error::ZeroMatrix)));
    let report = bound_report(&zero).unwrap();
    assert_eq!(report.best_inf, 0.0);
    assert_eq!(report.best_l2, 0.0);
    assert_eq!(report.trace_bound, 0.0);
    assert_eq!(report.det_bound_l2, None);
    assert!(report.per_k_inf.iter().chain(&report.per_k_l2).all(|&(_, v)| v == 0.0));

    let rank_one = DenseMatrix::from_fn(4, 3, |i, _| i as f64 + 1.0);
    assert_eq!(det_bound_l2(&rank_one).unwrap(), 0.0);
    let s = spectrum(&rank_one);
    assert_eq!(eigen_bound_inf(&s, 4, 3, 2).unwrap(), 0.0);
    assert_eq!(eigen_bound_inf_prod(&s, 4, 3, 3).unwrap(), 0.0);
    assert_eq!(eigen_bound_l2(&s, 4, 3, 3).unwrap(), 0.0);

    assert!(matches!(eigen_bound_inf(&s, 4, 3, 0), Err(Error::BadK { .. })));
    assert!(matches!(eigen_bound_l2(&s, 4, 3, 4), Err(Error::BadK { .. })));
    assert!(matches!(eigen_bound_inf_prod(&s, 2, 3, 3), Err(Error::BadK { .. })));
    assert!(matches!(best_submatrix_det(&DenseMatrix::zeros(2, 17), 1), Err(Error::TooLarge { .. })));
}

#[test]
fn submatrix_det_example() {
    let a = DenseMatrix::from_rows(&[[2.0, 0.0], [0.0, 1.0]]).unwrap();
    assert_eq!(best_submatrix_det(&a, 1).unwrap(), (4.0, vec![0]));
    // Ties go to the lexicographically first subset.
    let b = DenseMatrix::from_rows(&[[1.0, 1.0, 1.0]]).unwrap();
    assert_eq!(best_submatrix_det(&b, 1).unwrap(), (1.0, vec![0]));
}

#[test]
fn formulas_match_direct_evaluation() {
    let mut g = rng(31);
    let a = uniform_real(7, 5, &mut g);
    let (m, n) = (7.0, 5.0);
    let s = spectrum(&a);
    for k in 1..=5 {
        let kf = k as f64;
        let inf = kf / (2.0 * E) * (s[k - 1] / (m * n)).sqrt();
        assert!(rel_close(eigen_bound_inf(&s, 7, 5, k).unwrap(), inf, 1e-12));
        let l2 = kf / E * (s[k - 1] / (8.0 * PI * m * n)).sqrt();
        assert!(rel_close(eigen_bound_l2(&s, 7, 5, k).unwrap(), l2, 1e-12));
        let prod: f64 = s[..k].iter().product();
        let direct = 0.5 * (prod / (binomial(5, k) * binomial(7, k))).powf(1.0 / (2.0 * kf));
        assert!(rel_close(eigen_bound_inf_prod(&s, 7, 5, k).unwrap(), direct, 1e-12));
    }
    let gram = a.gram();
    let tr = gram.trace();
    let tr2: f64 = gram.as_slice().iter().map(|v| v * v).sum();
    let t = tr * tr / (8.0 * E * 5.0 * tr2) * (tr / 7.0).sqrt();
    assert!(rel_close(trace_bound(&a).unwrap(), t, 1e-12));
    let det = cofactor_det(&to_rows(&gram));
    let d = (n / (8.0 * PI * E * m)).sqrt() * det.powf(1.0 / (2.0 * n));
    assert!(rel_close(det_bound_l2(&a).unwrap(), d, 1e-10));
}

#[test]
fn log_space_survives_large_binomials() {
    let n = 400;
    let s = vec![1e3; n];
    let v = eigen_bound_inf_prod(&s, n, n, 200).unwrap();
    assert!(v.is_finite() && v > 0.0);
}

#[test]
fn bounds_are_sound_on_small_oracles() {
    let mut g = rng(32);
    for trial in 0..60 {
        let (rows, cols) = (2 + trial % 5, 2 + (trial / 5) % 5);
        let a = match trial % 3 {
            0 => signs(rows, cols, &mut g),
            1 => ternary(rows, cols, &mut g),
            _ => uniform_real(rows, cols, &mut g),
        };
        let hinf = brute_herdisc(&a, false);
        let h2 = brute_herdisc(&a, true);
        let r = bound_report(&a).unwrap();
        for &(_, v) in r.per_k_inf.iter().chain(&r.per_k_inf_prod) {
            assert!(v <= hinf + 1e-9, "trial {trial}: {v} > {hinf}");
        }
        for &(_, v) in &r.per_k_l2 {
            assert!(v <= h2 + 1e-9, "trial {trial}: {v} > {h2}");
        }
        assert!(r.trace_bound <= hinf + 1e-9);
        assert!(r.det_bound_l2.unwrap_or(0.0) <= h2 + 1e-9);
        assert!(r.best_l2 <= h2 + 1e-9 && h2 <= hinf + 1e-12);
        assert!(r.best_inf <= hinf + 1e-9);
    }
}

#[test]
fn report_maxima_are_consistent() {
    let a = signs(6, 6, &mut rng(33));
    let r = bound_report(&a).unwrap();
    assert_eq!(r.per_k_inf.len(), 6);
    let inf = r.per_k_inf.iter().chain(&r.per_k_inf_prod).map(|p| p.1).fold(r.trace_bound, f64::max);
    let l2 = r.per_k_l2.iter().map(|p| p.1).fold(r.det_bound_l2.unwrap_or(0.0), f64::max);
    assert_eq!(r.best_inf, inf);
    assert_eq!(r.best_l2, l2);
    assert!(r.best_l2 <= herdisc_exact(&a, NormKind::L2).unwrap());
}

#[test]
fn scale_covariance() {
    let mut g = rng(34);
    for c in [0.25, 3.0, 17.5] {
        let a = uniform_real(6, 5, &mut g);
        let ra = bound_report(&a).unwrap();
        let rc = bound_report(&a.scaled(c)).unwrap();
        for (x, y) in ra
            .per_k_inf
            .iter()
            .chain(&ra.per_k_inf_prod)
            .chain(&ra.per_k_l2)
            .zip(rc.per_k_inf.iter().chain(&rc.per_k_inf_prod).chain(&rc.per_k_l2))
        {
            assert!(rel_close(c * x.1, y.1, 1e-10));
        }
        assert!(rel_close(c * ra.trace_bound, rc.trace_bound, 1e-10));
        assert!(rel_close(c * ra.det_bound_l2.unwrap(), rc.det_bound_l2.unwrap(), 1e-10));
    }
}

#[test]
fn submatrix_det_floor_and_enumeration() {
    let mut g = rng(35);
    for trial in 0..50 {
        let (rows, cols) = (3 + trial % 4, 2 + trial % 5);
        let a = if trial % 2 == 0 { uniform_real(rows, cols, &mut g) } else { ternary(rows, cols, &mut g) };
        let s = spectrum(&a);
        for k in 1..=rows.min(cols) {
            let (best, cols_k) = best_submatrix_det(&a, k).unwrap();
            let floor: f64 = s[..k].iter().product::<f64>() / binomial(cols, k);
            assert!(best >= floor - 1e-9 * (1.0 + floor), "k={k}: {best} < {floor}");
            // The reported maximum is the brute-force maximum and is attained.
            let brute = subsets(cols, k).iter().map(|c| gram_det(&a, c)).fold(f64::MIN, f64::max);
            assert!((best - brute).abs() <= 1e-9 * (1.0 + brute));
            assert!((gram_det(&a, &cols_k) - best).abs() <= 1e-9 * (1.0 + best));
        }
    }
}

#[test]
fn cauchy_binet() {
    let mut g = rng(36);
    for _ in 0..10 {
        let c = uniform_real(5, 3, &mut g);
        let lhs = gram_det(&c, &[0, 1, 2]);
        let rhs: f64 = subsets(5, 3)
            .iter()
            .map(|rows| {
                let sq: Vec<Vec<f64>> = rows.iter().map(|&i| c.row(i).to_vec()).collect();
                cofactor_det(&sq).powi(2)
            })
            .sum();
        assert!(rel_close(lhs, rhs, 1e-8));
    }
}
