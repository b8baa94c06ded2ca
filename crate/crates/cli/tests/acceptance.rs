//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::process::{Command, ExitCode};

use complexon::density::{density_in_complexon, Estimator};
use complexon::experiment::{
    mean_triangle_limits, run_convergence, ConvergenceTable, ExperimentConfig,
};
use complexon::hom::hom_density;
use complexon::marginal::{marginal, Quadrature};
use complexon::rng::{self, Rng};
use complexon::sampling::empirical_simplex_rate;
use complexon::spectral::{
    apply_cso, cso_spectrum, discretized_kernel_spectrum, raised_adjacency, ComplexonSignal,
    ShiftForm,
};
use complexon::{Complexon, SimplicialComplex, StepComplexon};

const SEED: u64 = 1;
const TRIALS: usize = 20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn convergence(n_min: usize, n_max: usize) -> ConvergenceTable {
    let cfg = ExperimentConfig {
        n_min,
        n_max,
        dim: 2,
        indices: vec![1, 2, -1, -2],
        trials: TRIALS,
        seed: SEED,
    };
    run_convergence(&cfg, &Complexon::mean_triangle()).expect("convergence run")
}

fn analytic_limits(large: &ConvergenceTable) -> Outcome {
    let (top, bottom) = mean_triangle_limits();
    let l1 = large.mean(149, 1).unwrap();
    let l2 = large.mean(149, 2).unwrap();
    let lm1 = large.mean(149, -1).unwrap();
    let lm2 = large.mean(149, -2).unwrap();
    let pass = (l1 - top).abs() <= 0.03
        && (lm1 - bottom).abs() <= 0.03
        && l2.abs() <= 0.05
        && lm2.abs() <= 0.05;
    outcome(
        pass,
        format!("n=149: λ1={l1:.6} λ-1={lm1:.6} λ2={l2:.6} λ-2={lm2:.6}"),
    )
}

fn mean_gap(table: &ConvergenceTable) -> f64 {
    let (top, _) = mean_triangle_limits();
    let gaps: Vec<f64> = table
        .summary
        .iter()
        .map(|s| (s.mean[0] - top).abs())
        .collect();
    gaps.iter().sum::<f64>() / gaps.len() as f64
}

fn convergence_trend(small: &ConvergenceTable, large: &ConvergenceTable) -> Outcome {
    let a = mean_gap(small);
    let b = mean_gap(large);
    outcome(
        a > b,
        format!("mean |λ1 - limit|: n∈[10,30] {a:.5}, n∈[120,149] {b:.5}"),
    )
}

/// 50 complexes on at most 8 nodes, each paired with d ∈ {2, 3} and holding
/// at least one d-simplex.
fn corpus() -> Vec<(SimplicialComplex, usize)> {
    let mut r = rng::seeded(0xc0de);
    let pick = |r: &mut Rng, k: usize| (rng::uniform(r) * k as f64) as usize;
    (0..50)
        .map(|i| {
            let d = 2 + i % 2;
            let n = d + 1 + pick(&mut r, 8 - d);
            let mut facets = vec![random_subset(&mut r, n, d + 1)];
            for _ in 0..pick(&mut r, 6) {
                let size = 1 + pick(&mut r, 4.min(n));
                facets.push(random_subset(&mut r, n, size));
            }
            (SimplicialComplex::from_zero_based(n, facets).unwrap(), d)
        })
        .collect()
}

fn random_subset(r: &mut Rng, n: usize, size: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = i + (rng::uniform(r) * (n - i) as f64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(size);
    pool
}

/// Every length-`len` tuple over `0..n`.
fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |mut code| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

/// Cell-summed marginal of the induced complexon, read directly off `k`.
fn induced_marginal_oracle(k: &SimplicialComplex, d: usize) -> Vec<f64> {
    let n = k.n();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let hits = tuples(n, d - 1)
                .filter(|c| {
                    let mut s = vec![i, j];
                    s.extend(c);
                    s.sort_unstable();
                    s.windows(2).all(|w| w[0] < w[1]) && k.contains(&s)
                })
                .count();
            out[i * n + j] = hits as f64 / (n as f64).powi(d as i32 - 1);
        }
    }
    out
}

fn prop1_bridge(corpus: &[(SimplicialComplex, usize)]) -> Outcome {
    let mut worst = 0.0f64;
    let mut exact = 0;
    for (k, d) in corpus {
        let m = marginal(&Complexon::induced(k), *d, Quadrature::Exact).unwrap();
        let m = m.as_step().unwrap().values().to_vec();
        let n = raised_adjacency(k, *d).unwrap();
        let oracle = induced_marginal_oracle(k, *d);
        let dev = m
            .iter()
            .zip(n.matrix.as_slice())
            .chain(oracle.iter().zip(n.matrix.as_slice()))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
        if dev == 0.0 {
            exact += 1;
        }
    }
    outcome(
        worst <= 1e-12,
        format!("{exact}/{} exact, max deviation {worst:e}", corpus.len()),
    )
}

fn prop2_residuals(corpus: &[(SimplicialComplex, usize)]) -> Outcome {
    let mut residual = 0.0f64;
    let mut gram = 0.0f64;
    for (k, d) in corpus {
        let s = cso_spectrum(k, *d).unwrap();
        let w = Complexon::induced(k);
        let phis: Vec<ComplexonSignal> = s
            .pairs()
            .iter()
            .map(|p| ComplexonSignal::Step(p.vector.clone()))
            .collect();
        for (p, phi) in s.pairs().iter().zip(&phis) {
            let t = apply_cso(&w, *d, phi, ShiftForm::Marginal).unwrap();
            for (y, v) in t.as_step().unwrap().iter().zip(&p.vector) {
                residual = residual.max((y - p.value * v).abs());
            }
        }
        for (a, i) in phis.iter().zip(0..) {
            for (b, j) in phis.iter().zip(0..) {
                let want = if i == j { 1.0 } else { 0.0 };
                gram = gram.max((a.inner_product(b).unwrap() - want).abs());
            }
        }
    }
    outcome(
        residual <= 1e-10 && gram <= 1e-10,
        format!("max residual {residual:e}, max Gram deviation {gram:e}"),
    )
}

fn corollary() -> Outcome {
    let c =
        |n: usize, f: &[&[usize]]| SimplicialComplex::new(n, f.iter().map(|s| s.to_vec())).unwrap();
    let patterns = [
        c(1, &[]),
        c(2, &[&[1, 2]]),
        c(3, &[&[1, 2], &[2, 3]]),
        c(3, &[&[1, 2], &[2, 3], &[1, 3]]),
        c(3, &[&[1, 2, 3]]),
        c(4, &[&[1, 2, 3], &[3, 4]]),
        c(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]),
        c(4, &[&[1, 2, 3, 4]]),
    ];
    let targets = [
        c(3, &[&[1, 2, 3]]),
        c(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]),
        c(5, &[&[1, 2, 3], &[3, 4, 5]]),
        c(5, &[&[1, 2, 3, 4], &[4, 5]]),
        c(6, &[&[1, 2, 3], &[2, 3, 4], &[4, 5, 6], &[1, 6]]),
        c(7, &[&[1, 2, 3, 4], &[4, 5, 6], &[6, 7], &[1, 7], &[2, 5]]),
        SimplicialComplex::full_skeleton(7, 2).unwrap(),
    ];
    let mut pairs = 0;
    let mut mismatches = 0;
    for f in &patterns {
        for k in &targets {
            let direct = hom_density(f, k).unwrap().value;
            let grid = density_in_complexon(f, &Complexon::induced(k), Estimator::exact())
                .unwrap()
                .value;
            pairs += 1;
            if direct != grid {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{pairs} pairs, {mismatches} mismatches"),
    )
}

fn random_step(r: &mut Rng, n: usize, dim: usize) -> StepComplexon {
    let mut cells = Vec::new();
    for d in 1..=dim {
        for key in tuples(n, d + 1).filter(|t| t.windows(2).all(|w| w[0] <= w[1])) {
            if rng::uniform(r) < 0.6 {
                cells.push((key, rng::uniform(r)));
            }
        }
    }
    StepComplexon::new(n, dim, cells).unwrap()
}

fn shift_forms() -> Outcome {
    let mut r = rng::seeded(0xf0f0);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = 1 + (rng::uniform(&mut r) * 6.0) as usize;
        let dim = 1 + i % 3;
        let w = random_step(&mut r, n, dim);
        let x: Vec<f64> = (0..n).map(|_| rng::uniform(&mut r) * 2.0 - 1.0).collect();
        let wc = Complexon::Step(w);
        let sig = ComplexonSignal::Step(x);
        let a = apply_cso(&wc, dim, &sig, ShiftForm::Marginal).unwrap();
        let b = apply_cso(&wc, dim, &sig, ShiftForm::MessagePassing).unwrap();
        for (p, q) in a.as_step().unwrap().iter().zip(b.as_step().unwrap()) {
            worst = worst.max((p - q).abs());
        }
    }
    outcome(
        worst <= 1e-10,
        format!("100 pairs, max difference {worst:e}"),
    )
}

fn nystrom() -> Outcome {
    let k = marginal(&Complexon::mean_triangle(), 2, Quadrature::Exact).unwrap();
    let s = discretized_kernel_spectrum(&k, 512).unwrap();
    let l1 = s.eigenvalue(1);
    let big = s.values().iter().filter(|v| v.abs() > 1e-3).count();
    outcome(
        (l1 - 0.5178791878).abs() <= 1e-3 && big == 2,
        format!("m=512: λ1={l1:.10}, {big} eigenvalues with |λ| > 1e-3"),
    )
}

fn simplex_rate() -> Outcome {
    let r = empirical_simplex_rate(&Complexon::mean_triangle(), 2, 10, 1000, SEED).unwrap();
    outcome(
        (0.48..=0.52).contains(&r.rate),
        format!("rate {:.5} over {} trials", r.rate, r.trials),
    )
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("complexon-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_complexon"))
            .args(["converge", "--n-min", "6", "--n-max", "40", "--trials", "3"])
            .args(["--seed", "11", "--indices", "1,2,-1,-2", "--out-csv"])
            .arg(&path)
            .status()
            .expect("run converge");
        assert!(status.success());
        fs::read(path).unwrap()
    };
    let a = run("a.csv");
    let b = run("b.csv");
    let _ = fs::remove_dir_all(&dir);
    outcome(
        !a.is_empty() && a == b,
        format!("{} bytes, identical: {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let large = convergence(120, 149);
    let small = convergence(10, 30);
    let corpus = corpus();
    let results = [
        ("1 analytic limits at n=149", analytic_limits(&large)),
        ("2 convergence trend", convergence_trend(&small, &large)),
        ("3 marginal equals raised adjacency", prop1_bridge(&corpus)),
        ("4 eigenfunction residuals", prop2_residuals(&corpus)),
        ("5 induced density identity", corollary()),
        ("6 marginal and message-passing forms", shift_forms()),
        ("7 discretized spectrum", nystrom()),
        ("8 sampling rate", simplex_rate()),
        ("9 deterministic converge CSV", determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
