//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails. Pass a substring to run only matching criteria, e.g.
//! `cargo test -p eigenid-core --test acceptance -- interlacing`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use eigenid_core::bench::{run_benchmark, speedup_table, BenchConfig, Task, Variant};
use eigenid_core::eigensolve::{eigenvalues, jacobi_eigendecomposition};
use eigenid_core::identity::{default_workers, Evaluation, SIGN_TOL};
use eigenid_core::matrix::{random_gaussian, SymmetryPolicy};
use eigenid_core::verify::interlacing_violations;
use eigenid_core::{Engine, Error, IdentityConfig, SymmetricMatrix};

type Outcome = Result<String, String>;

fn engine(batch_size: usize, workers: usize, evaluation: Evaluation) -> Engine {
    Engine::new(IdentityConfig {
        batch_size,
        workers,
        evaluation,
        ..IdentityConfig::default()
    })
    .expect("valid config")
}

fn oracle(a: &SymmetricMatrix) -> eigenid_core::EigenDecomposition {
    jacobi_eigendecomposition(a, 1e-12 * a.frobenius_norm()).expect("Jacobi converges")
}

fn rel_diff(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let e = engine(64, 1, Evaluation::PairedBatched);
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let n = 2 + (seed as usize * 37) % 63;
        let a = random_gaussian(seed, n).map_err(|e| e.to_string())?;
        let m = e
            .all_magnitudes(&a)
            .map_err(|e| format!("seed {seed}: {e}"))?;
        let dev = m
            .as_slice()
            .iter()
            .zip(oracle(&a).squared_components())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
        ensure(dev <= 1e-8, || {
            format!("seed {seed}, n={n}: deviation {dev:e}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "max deviation {worst:.2e} over 100 matrices in {elapsed:.2?}"
    ))
}

fn hand_case() -> Outcome {
    let a = SymmetricMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]], SymmetryPolicy::Strict)
        .map_err(|e| e.to_string())?;
    let batched = engine(1, 1, Evaluation::PairedBatched);
    let log = engine(1, 1, Evaluation::LogDomain);
    for i in 0..2 {
        for j in 0..2 {
            let values = [
                batched.component_magnitude_baseline(&a, i, j),
                batched.component_magnitude(&a, i, j, None, None),
                log.component_magnitude(&a, i, j, None, None),
            ];
            for v in values {
                let v = v.map_err(|e| e.to_string())?.value;
                ensure((v - 0.5).abs() <= 1e-12, || format!("({i}, {j}) = {v}"))?;
            }
        }
    }
    Ok("all four components are 0.5".into())
}

fn doubly_stochastic() -> Outcome {
    let a = random_gaussian(100, 100).map_err(|e| e.to_string())?;
    let m = engine(64, 1, Evaluation::PairedBatched)
        .all_magnitudes(&a)
        .map_err(|e| e.to_string())?;
    let worst = m
        .row_sums()
        .into_iter()
        .chain(m.column_sums())
        .map(|s| (s - 1.0).abs())
        .fold(0.0, f64::max);
    ensure(worst <= 1e-8, || format!("sum deviation {worst:e}"))?;
    Ok(format!("max row/column sum deviation {worst:.2e}"))
}

fn interlacing() -> Outcome {
    let mut checked = 0;
    for seed in 0..50u64 {
        let n = 2 + (seed as usize * 13) % 63;
        let a = random_gaussian(1000 + seed, n).map_err(|e| e.to_string())?;
        let slack = 1e-9 * a.frobenius_norm();
        let s = eigenvalues(&a).map_err(|e| e.to_string())?;
        for j in 0..n {
            let m =
                eigenvalues(&a.minor(j).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let bad = interlacing_violations(&s, &m, slack);
            ensure(bad == 0, || {
                format!("seed {seed}, n={n}, j={j}: {bad} violations")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} minor spectra interlace"))
}

fn variant_agreement() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let n = 2 + (seed as usize * 29) % 63;
        let a = random_gaussian(2000 + seed, n).map_err(|e| e.to_string())?;
        let base_engine = engine(64, 1, Evaluation::PairedBatched);
        let mut baseline = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                baseline[j * n + i] = base_engine
                    .component_magnitude_baseline(&a, i, j)
                    .map_err(|e| format!("seed {seed}: {e}"))?
                    .raw;
            }
        }
        let mut compare = |label: &str, values: &[f64]| -> Result<(), String> {
            for (k, (x, y)) in values.iter().zip(&baseline).enumerate() {
                let d = rel_diff(*x, *y);
                worst = worst.max(d);
                ensure(d <= 1e-10, || {
                    format!("seed {seed}, n={n}, {label}, entry {k}: {x:e} vs {y:e}")
                })?;
            }
            Ok(())
        };
        for bs in [1, 8, 64, n] {
            let reference = engine(bs, 1, Evaluation::PairedBatched)
                .all_magnitudes(&a)
                .map_err(|e| e.to_string())?;
            compare(&format!("batched bs={bs}"), reference.raw_slice())?;
            for workers in [1, 2, 8] {
                let e = engine(bs, workers, Evaluation::PairedBatched);
                let m = e.all_magnitudes(&a).map_err(|e| e.to_string())?;
                ensure(m.raw_slice() == reference.raw_slice(), || {
                    format!("seed {seed}: bs={bs} workers={workers} not bit-identical")
                })?;
                for (i, j) in [(0, 0), (n / 2, n - 1), (n - 1, n / 2)] {
                    let r = e
                        .component_magnitude(&a, i, j, None, None)
                        .map_err(|e| e.to_string())?;
                    ensure(r.raw == reference.raw(j, i), || {
                        format!("seed {seed}: component ({i}, {j}) bs={bs} workers={workers} not bit-identical")
                    })?;
                }
            }
        }
        let log = engine(64, 1, Evaluation::LogDomain)
            .all_magnitudes(&a)
            .map_err(|e| e.to_string())?;
        compare("log-domain", log.raw_slice())?;
    }
    Ok(format!(
        "max relative difference {worst:.2e}; bit-identical across workers"
    ))
}

fn degeneracy() -> Outcome {
    let id = SymmetricMatrix::identity(5).map_err(|e| e.to_string())?;
    let engines = [
        ("batched", engine(64, 1, Evaluation::PairedBatched)),
        ("parallel", engine(64, 2, Evaluation::PairedBatched)),
        ("log-domain", engine(64, 1, Evaluation::LogDomain)),
    ];
    let degenerate = |r: Result<(), Error>| matches!(r, Err(Error::DegenerateEigenvalue { .. }));
    for (label, e) in &engines {
        let checks = [
            (
                "baseline",
                degenerate(e.component_magnitude_baseline(&id, 0, 0).map(drop)),
            ),
            (
                "component",
                degenerate(e.component_magnitude(&id, 2, 3, None, None).map(drop)),
            ),
            ("vector", degenerate(e.vector_magnitudes(&id, 1).map(drop))),
            ("all", degenerate(e.all_magnitudes(&id).map(drop))),
        ];
        for (op, ok) in checks {
            ensure(ok, || {
                format!("{label}/{op} did not raise DegenerateEigenvalue")
            })?;
        }
    }
    Ok("every variant raises DegenerateEigenvalue".into())
}

fn overflow_robustness() -> Outcome {
    let a = random_gaussian(1, 300)
        .and_then(|a| a.scaled(1e3))
        .map_err(|e| e.to_string())?;
    let e = engine(64, 1, Evaluation::PairedBatched);
    let spectrum = e.spectrum(&a).map_err(|e| e.to_string())?;
    let j = 7;
    let minor = e
        .spectrum(&a.minor(j).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let i = 150;
    match e.component_magnitude_baseline(&a, i, j) {
        Err(Error::NonFiniteIntermediate { .. }) => {}
        other => return Err(format!("baseline did not overflow: {other:?}")),
    }
    let batched = e
        .component_magnitude(&a, i, j, Some(&spectrum), Some(&minor))
        .map_err(|e| e.to_string())?;
    let log = engine(64, 1, Evaluation::LogDomain)
        .component_magnitude(&a, i, j, Some(&spectrum), Some(&minor))
        .map_err(|e| e.to_string())?;
    ensure(batched.raw.is_finite(), || {
        "batched value not finite".into()
    })?;
    let d = rel_diff(batched.raw, log.raw);
    ensure(d <= 1e-10, || {
        format!("batched {:e} vs log-domain {:e}", batched.raw, log.raw)
    })?;
    Ok(format!(
        "baseline overflows; batched {:.6e} (fallback: {}) vs log-domain, rel diff {d:.1e}",
        batched.raw, batched.log_domain_fallback
    ))
}

fn sign_recovery() -> Outcome {
    let e = engine(64, 1, Evaluation::PairedBatched);
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let n = 2 + (seed as usize * 7) % 31;
        let a = random_gaussian(3000 + seed, n).map_err(|e| e.to_string())?;
        let reference = oracle(&a);
        let spectrum = e.spectrum(&a).map_err(|e| e.to_string())?;
        let tol = 1e-6 * a.frobenius_norm();
        for i in 0..n {
            let mags: Vec<f64> = e
                .vector_magnitudes(&a, i)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|r| r.value)
                .collect();
            let v = e
                .recover_signs(&a, i, &mags, spectrum[i])
                .map_err(|e| format!("seed {seed}, i={i}: {e}"))?;
            let residual = a
                .mul_vec(&v)
                .iter()
                .zip(&v)
                .map(|(av, x)| (av - spectrum[i] * x).powi(2))
                .sum::<f64>()
                .sqrt();
            ensure(residual <= tol, || {
                format!("seed {seed}, i={i}: residual {residual:e}")
            })?;
            let col = reference.vector(i);
            let first = col.iter().position(|x| x * x > SIGN_TOL).unwrap_or(0);
            let flip = col[first].signum();
            let diff = v
                .iter()
                .zip(col)
                .map(|(x, y)| (x - flip * y).abs())
                .fold(0.0, f64::max);
            worst = worst.max(diff);
            ensure(diff <= 1e-6, || {
                format!("seed {seed}, i={i}: differs from oracle by {diff:e}")
            })?;
        }
    }
    Ok(format!("max deviation from oracle columns {worst:.2e}"))
}

fn solve_count() -> Outcome {
    let n = 24;
    let a = random_gaussian(5, n).map_err(|e| e.to_string())?;
    let e = engine(8, 1, Evaluation::PairedBatched);
    e.component_magnitude(&a, 3, 4, None, None)
        .map_err(|e| e.to_string())?;
    let single = e.solve_count();
    e.reset_solve_count();
    e.vector_magnitudes(&a, 3).map_err(|e| e.to_string())?;
    let vector = e.solve_count();
    e.reset_solve_count();
    e.all_magnitudes(&a).map_err(|e| e.to_string())?;
    let all = e.solve_count();
    ensure(single == 2 && vector == n + 1 && all == n + 1, || {
        format!("single {single}, vector {vector}, all {all} (n = {n})")
    })?;
    Ok(format!(
        "single-component 2, single-vector {vector}, all-vectors {all} at n={n}"
    ))
}

fn performance_trend() -> Outcome {
    let start = Instant::now();
    let cfg = BenchConfig {
        sizes: vec![500, 1000, 2000],
        repetitions: 10,
        variants: vec![Variant::BatchedParallel, Variant::OracleFull],
        task: Task::SingleComponent,
        workers: default_workers(),
        ..BenchConfig::default()
    };
    let report = run_benchmark(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if let Ok(table) = speedup_table(&report) {
        println!("{table}");
    }
    let speedup = |n| {
        report
            .speedup(Task::SingleComponent, Variant::BatchedParallel, n)
            .unwrap_or(f64::NAN)
    };
    let (s500, s1000, s2000) = (speedup(500), speedup(1000), speedup(2000));
    let summary =
        format!("speedups 500: {s500:.2}x, 1000: {s1000:.2}x, 2000: {s2000:.2}x in {elapsed:.0?}");
    ensure(s1000 > 1.0, || format!("no speedup at n=1000; {summary}"))?;
    ensure(s2000 > s500, || format!("speedup does not grow; {summary}"))?;
    ensure(elapsed < Duration::from_secs(15 * 60), || {
        format!("too slow; {summary}")
    })?;
    Ok(summary)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle-equivalence", oracle_equivalence),
        ("hand-case", hand_case),
        ("doubly-stochastic", doubly_stochastic),
        ("interlacing", interlacing),
        ("variant-agreement", variant_agreement),
        ("degeneracy", degeneracy),
        ("overflow-robustness", overflow_robustness),
        ("sign-recovery", sign_recovery),
        ("solve-count", solve_count),
        ("performance-trend", performance_trend),
    ];
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
