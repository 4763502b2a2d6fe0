//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::f64::consts::{E, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{binomial, ceil_log2, cofactor_det, drive, random_psd, rng, signs, ternary, to_rows, uniform_real};
use herdisc::bounds::{best_submatrix_det, bound_report};
use herdisc::coloring::{
    l2_minimize, l2_minimize_randomized, partial_color_randomized, sample, sample_many, Budget, RandomizedParams,
};
use herdisc::edgewalk::{edge_walk, edge_walk_observed, spencer_driver, EdgeWalkProblem, SpencerConfig, WalkParams};
use herdisc::instances::{generate, gen_uniform, MatrixKind};
use herdisc::linalg::{dot, sym_eigen};
use herdisc::measures::{disc_inf, disc_l2, herdisc_exact, NormKind};
use herdisc::rng::{seeded, solver_stream};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn table_one() -> Outcome {
    let trials = 10u64;
    let mut notes = Vec::new();
    let mut pass = true;
    let mut means = std::collections::HashMap::new();
    for kind in MatrixKind::ALL {
        let (mut l2, mut one, mut many) = (Vec::new(), Vec::new(), Vec::new());
        for seed in 0..trials {
            let a = generate(kind, 200, 200, &mut seeded(seed));
            let mut g = solver_stream(seed);
            let (_, s) = l2_minimize(&a, &mut g).unwrap();
            l2.push(s.disc2);
            one.push(sample(&a, &mut g).unwrap().1.disc2);
            many.push(sample_many(&a, Budget::Time(s.wall_time), &mut g).unwrap().1.disc2);
        }
        let m = (mean(&l2), mean(&many), mean(&one));
        notes.push(format!("{kind}: l2min {:.2} samplemany {:.2} sample {:.2}", m.0, m.1, m.2));
        means.insert(kind, m);
    }
    let uni = means[&MatrixKind::Uniform];
    let cor = means[&MatrixKind::Corner];
    let half = means[&MatrixKind::Halfspace];
    pass &= (4.8..=10.8).contains(&uni.0);
    pass &= cor.0 <= 3.0 && half.0 <= 3.2;
    pass &= (11.7..=16.6).contains(&uni.2);
    pass &= cor.0 < cor.1 && cor.1 < cor.2;
    pass &= half.0 < half.1 && half.1 < half.2;
    Outcome::new(pass, notes.join("; "))
}

fn per_call_inequality() -> Outcome {
    let mut calls = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut pass = true;
    let mut g = rng(200);
    let started = Instant::now();
    for trial in 0..80 {
        let size = if trial % 2 == 0 { 64 } else { 200 };
        let kind = MatrixKind::ALL[trial % 3];
        let a = if trial % 5 == 4 {
            uniform_real(size, size, &mut g)
        } else {
            generate(kind, size, size, &mut g)
        };
        let slack = 1e-6 * a.frobenius_norm().powi(2);
        for c in drive(&a, &mut g).1 {
            calls += 1;
            worst = worst.max(c.increase - c.cap);
            pass &= c.increase <= c.cap + slack;
        }
    }
    let elapsed = started.elapsed();
    pass &= calls >= 500 && elapsed < Duration::from_secs(60);
    Outcome::new(
        pass,
        format!("{calls} calls, max(increase - cap) = {worst:.3e}, {:.1}s", elapsed.as_secs_f64()),
    )
}

fn bound_soundness() -> Outcome {
    let mut g = rng(300);
    let mut pass = true;
    let mut worst = f64::NEG_INFINITY;
    let started = Instant::now();
    for trial in 0..200 {
        let (m, n) = (1 + trial % 6, 1 + (trial / 6) % 6);
        let a = if trial % 2 == 0 { ternary(m, n, &mut g) } else { uniform_real(m, n, &mut g) };
        let hinf = herdisc_exact(&a, NormKind::LInfinity).unwrap();
        let h2 = herdisc_exact(&a, NormKind::L2).unwrap();
        let r = bound_report(&a).unwrap();
        let inf_bounds = r.per_k_inf.iter().chain(&r.per_k_inf_prod).map(|p| p.1).chain([r.trace_bound]);
        for v in inf_bounds {
            worst = worst.max(v - hinf);
            pass &= v <= hinf + 1e-9;
        }
        for v in r.per_k_l2.iter().map(|p| p.1).chain(r.det_bound_l2) {
            worst = worst.max(v - h2);
            pass &= v <= h2 + 1e-9;
        }
        for k in 1..=m.min(n) {
            let floor = r.eigenvalues[..k].iter().product::<f64>() / binomial(n, k);
            pass &= best_submatrix_det(&a, k).unwrap().0 >= floor - 1e-9 * (1.0 + floor);
        }
    }
    let elapsed = started.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    Outcome::new(
        pass,
        format!("200 matrices, max(bound - herdisc) = {worst:.3e}, {:.1}s", elapsed.as_secs_f64()),
    )
}

fn hereditary_guarantee() -> Outcome {
    let mut g = rng(400);
    let mut pass = true;
    let mut worst_ratio = 0.0f64;
    let started = Instant::now();
    for trial in 0..50 {
        let (m, n) = (1 + trial % 12, 1 + (trial * 7) % 12);
        let a = match trial % 3 {
            0 => signs(m, n, &mut g),
            1 => ternary(m, n, &mut g),
            _ => uniform_real(m, n, &mut g),
        };
        let (x, _) = l2_minimize(&a, &mut g).unwrap();
        let got = disc_l2(&a, &x.to_f64()).unwrap();
        let h2 = herdisc_exact(&a, NormKind::L2).unwrap();
        let factor = 128.0 * E * E * PI * (n as f64).log2().max(1.0).sqrt();
        pass &= got <= factor * h2 + 1e-9;
        if h2 > 0.0 {
            worst_ratio = worst_ratio.max(got / h2);
        }
    }
    let elapsed = started.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    Outcome::new(
        pass,
        format!("50 matrices, max disc2/herdisc2 = {worst_ratio:.3}, {:.1}s", elapsed.as_secs_f64()),
    )
}

fn halving() -> Outcome {
    let sizes = [5, 17, 33, 64, 100, 128, 200, 256, 384, 512];
    let mut pass = true;
    let mut total_calls = 0;
    for run in 0..100u64 {
        let n = sizes[run as usize % sizes.len()];
        let kind = MatrixKind::ALL[run as usize % 3];
        let a = generate(kind, n, n, &mut seeded(run));
        let (x, calls) = drive(&a, &mut solver_stream(run));
        pass &= x.iter().all(|v| v.abs() <= 1.0);
        pass &= calls.len() <= ceil_log2(n) + 1;
        pass &= calls.iter().all(|c| c.frozen >= c.k.div_ceil(2));
        total_calls += calls.len();
    }
    Outcome::new(pass, format!("100 runs up to 512, {total_calls} calls"))
}

fn eigensolver() -> Outcome {
    let mut g = rng(600);
    let mut pass = true;
    let (mut res, mut orth, mut tr, mut det) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for trial in 0..100 {
        let k = 1 + trial % 64;
        let m = random_psd(k, 1 + (trial * 13) % 70, &mut g);
        let e = sym_eigen(&m).unwrap();
        let fro = m.frobenius_norm();
        for i in 0..k {
            let mv = m.mul_vec(e.vector(i)).unwrap();
            let r: f64 = mv.iter().zip(e.vector(i)).map(|(a, b)| (a - e.values()[i] * b).powi(2)).sum::<f64>().sqrt();
            res = res.max(r / (1.0 + fro));
            for j in 0..k {
                let target = if i == j { 1.0 } else { 0.0 };
                orth = orth.max((dot(e.vector(i), e.vector(j)) - target).abs());
            }
        }
        let sum: f64 = e.values().iter().sum();
        tr = tr.max((sum - m.trace()).abs() / (1.0 + m.trace().abs()));
        if k <= 6 {
            let d = cofactor_det(&to_rows(&m));
            let p: f64 = e.values().iter().product();
            if d.abs() > 1e-12 {
                det = det.max((p - d).abs() / d.abs());
            }
        }
    }
    pass &= res <= 1e-8 && orth <= 1e-10 && tr <= 1e-8 && det <= 1e-6;
    Outcome::new(
        pass,
        format!("residual {res:.1e}, orthonormality {orth:.1e}, trace {tr:.1e}, det {det:.1e}"),
    )
}

fn edge_walk_properties() -> Outcome {
    let mut pass = true;
    let mut g = rng(700);

    // Feasibility and permanence on walks with live row constraints.
    let mut row_hits = 0;
    for _ in 0..10 {
        let n = 16;
        let a = signs(24, n, &mut g);
        let rows: Vec<Vec<f64>> = (0..24).map(|j| a.row(j).to_vec()).collect();
        let p = EdgeWalkProblem::new(&rows, &[6.0; 24], &[0.0; 16], WalkParams::with_gamma(0.1, 0.01)).unwrap();
        let mut frozen: Vec<Option<f64>> = vec![None; n];
        let mut rows_seen = [false; 24];
        let out = edge_walk_observed(&p, &mut g, |s| {
            for j in 0..24 {
                pass &= dot(p.row(j), s.x).abs() <= p.threshold(j) + 1e-9;
                pass &= !rows_seen[j] || s.row_hit[j];
            }
            for i in 0..n {
                pass &= s.x[i].abs() <= 1.0;
                match frozen[i] {
                    Some(v) => pass &= s.x[i] == v && s.var_hit[i],
                    None if s.var_hit[i] => frozen[i] = Some(s.x[i]),
                    None => {}
                }
            }
            rows_seen.copy_from_slice(s.row_hit);
        });
        pass &= !out.failed;
        row_hits += out.hit_rows.len();
    }

    let line = EdgeWalkProblem::new(&[], &[], &[0.0], WalkParams::with_gamma(0.1, 0.01)).unwrap();
    let absorbed = (0..100).filter(|&s| edge_walk(&line, &mut seeded(s)).x[0].abs() >= 0.9).count();
    pass &= absorbed >= 95;

    let config = SpencerConfig {
        gamma: Some(0.01),
        ..SpencerConfig::default()
    };
    let mut worst = 0.0f64;
    let mut rounds = 0;
    for seed in 0..10 {
        let a = gen_uniform(64, 64, &mut seeded(seed));
        let out = spencer_driver(&a, &config, &mut solver_stream(seed)).unwrap();
        for r in &out.rounds {
            pass &= r.max_row_shift <= r.threshold + 1e-9;
            rounds += 1;
        }
        let d = disc_inf(&a, &out.signs().to_f64()).unwrap();
        worst = worst.max(d);
        pass &= d <= out.threshold;
    }
    Outcome::new(
        pass,
        format!(
            "{row_hits} row hits, 1-D absorbed {absorbed}/100, {rounds} Spencer rounds, max disc_inf {worst} <= 64"
        ),
    )
}

fn performance() -> Outcome {
    let time = |n: usize| {
        let a = gen_uniform(n, n, &mut seeded(800));
        (0..2)
            .map(|s| {
                let t = Instant::now();
                l2_minimize(&a, &mut solver_stream(s)).unwrap();
                t.elapsed()
            })
            .min()
            .unwrap()
    };
    let small = time(500);
    let large = time(1000);
    let ratio = large.as_secs_f64() / small.as_secs_f64();
    Outcome::new(
        large <= Duration::from_secs(60) && ratio <= 12.0,
        format!("500: {:.2}s, 1000: {:.2}s, ratio {ratio:.2}", small.as_secs_f64(), large.as_secs_f64()),
    )
}

fn randomized_success() -> Outcome {
    let params = RandomizedParams::new(0.2);
    let mut successes = 0;
    for seed in 0..200 {
        let a = gen_uniform(16, 16, &mut seeded(seed));
        if partial_color_randomized(&a, &[0.0; 16], params, &mut solver_stream(seed)).unwrap().is_success() {
            successes += 1;
        }
    }
    let mut valid = true;
    for seed in 0..20 {
        let a = gen_uniform(16, 16, &mut seeded(1000 + seed));
        let (x, stats) = l2_minimize_randomized(&a, RandomizedParams::DEFAULT_C0, &mut solver_stream(seed)).unwrap();
        valid &= x.len() == 16 && x.signs().iter().all(|s| s.abs() == 1);
        valid &= (disc_l2(&a, &x.to_f64()).unwrap() - stats.disc2).abs() < 1e-12;
    }
    Outcome::new(
        successes * 8 >= 200 && valid,
        format!("{successes}/200 attempts succeeded, 20 complete runs valid: {valid}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("desk-scale benchmark table", table_one),
        ("per-call increase bound", per_call_inequality),
        ("bound soundness vs exact oracle", bound_soundness),
        ("end-to-end hereditary guarantee", hereditary_guarantee),
        ("halving and boundedness", halving),
        ("eigensolver accuracy", eigensolver),
        ("Edge-Walk properties", edge_walk_properties),
        ("performance at 1000x1000", performance),
        ("randomized variant success rate", randomized_success),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let out = check();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failed += 1;
        }
        println!(
            "[{tag}] criterion {}: {name} ({:.1}s) - {}",
            i + 1,
            started.elapsed().as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
