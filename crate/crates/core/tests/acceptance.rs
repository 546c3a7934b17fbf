//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run
//! with `cargo test --test acceptance -- --nocapture --test-threads 1` to
//! see them in order.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlms_sparse::adaptive::{za_cost, za_cost_gradient_conj, FilterState};
use qlms_sparse::config::parse_config;
use qlms_sparse::experiment::{
    run_scenario, run_scenario_with, Algorithm, Execution, Experiment, LearningCurve, ScenarioConfig,
};
use qlms_sparse::qcalculus::{check_product_rule, num_grad, num_grad_conj, real_field, Component};
use qlms_sparse::{QVector, Quaternion};

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!(
        "[{}] criterion {id}: {name} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {detail}");
}

fn rand_quat(rng: &mut ChaCha8Rng, scale: f64) -> Quaternion {
    Quaternion::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

fn max_abs(q: Quaternion) -> f64 {
    q.to_array().iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn scenario(name: &str) -> ScenarioConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name);
    parse_config(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn c1_algebra() {
    let start = Instant::now();
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    // Expected products of [1, i, j, k] x [1, i, j, k] as (sign, basis index).
    let table: [[(f64, usize); 4]; 4] = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
        [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
        [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
    ];
    let mut table_ok = true;
    for (r, row) in table.iter().enumerate() {
        for (c, &(sign, idx)) in row.iter().enumerate() {
            table_ok &= basis[r] * basis[c] == basis[idx].scale(sign);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut assoc, mut anti, mut mult) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let (p, q, r) = (
            rand_quat(&mut rng, 1.0),
            rand_quat(&mut rng, 1.0),
            rand_quat(&mut rng, 1.0),
        );
        assoc = assoc.max(max_abs((p * q) * r - p * (q * r)));
        anti = anti.max(max_abs((p * q).conj() - q.conj() * p.conj()));
        mult = mult.max(((p * q).norm() - p.norm() * q.norm()).abs() / (p.norm() * q.norm()));
    }
    let elapsed = start.elapsed();
    let pass = table_ok && assoc < 1e-10 && anti < 1e-10 && mult < 1e-10 && elapsed < Duration::from_secs(1);
    report(
        1,
        "quaternion algebra",
        pass,
        format!("table {table_ok}, assoc {assoc:.1e}, conj {anti:.1e}, norm rel {mult:.1e}, {elapsed:?}"),
    );
}

#[test]
fn c2_calculus_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let id = |v: &QVector| v[0];
    let mut deriv_err = 0.0f64;
    for _ in 0..20 {
        let w = QVector::new(vec![rand_quat(&mut rng, 2.0)]).unwrap();
        let g = num_grad(&id, &w, 1e-5).unwrap();
        let gc = num_grad_conj(&id, &w, 1e-5).unwrap();
        deriv_err = deriv_err.max(max_abs(g[0] - Quaternion::ONE));
        deriv_err = deriv_err.max(max_abs(gc[0] - Quaternion::real(-0.5)));
    }

    let mut residual = 0.0f64;
    for _ in 0..50 {
        // Degree-1 fields: a·q·b + c.
        let (a1, b1, c1) = (
            rand_quat(&mut rng, 1.0),
            rand_quat(&mut rng, 1.0),
            rand_quat(&mut rng, 1.0),
        );
        let (a2, b2, c2) = (
            rand_quat(&mut rng, 1.0),
            rand_quat(&mut rng, 1.0),
            rand_quat(&mut rng, 1.0),
        );
        let f = move |v: &QVector| a1 * v[0] * b1 + c1;
        let g = move |v: &QVector| a2 * v[0] * b2 + c2;
        let w = QVector::new(vec![rand_quat(&mut rng, 1.0)]).unwrap();
        for comp in Component::ALL {
            residual = residual.max(check_product_rule(&f, &g, &w, 0, comp, 1e-5).unwrap());
        }
    }
    let elapsed = start.elapsed();
    let pass = deriv_err < 1e-6 && residual < 1e-5 && elapsed < Duration::from_secs(1);
    report(
        2,
        "calculus oracle",
        pass,
        format!("dq/dq, dq/dq* err {deriv_err:.1e}, product rule residual {residual:.1e}, {elapsed:?}"),
    );
}

#[test]
fn c3_gradient_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let len = [2, 4, 8][trial % 3];
        let gamma = [0.0, 0.01][(trial / 3) % 2];
        let w: Vec<Quaternion> = (0..len)
            .map(|_| loop {
                let q = rand_quat(&mut rng, 1.0);
                if q.norm() > 0.1 {
                    break q;
                }
            })
            .collect();
        let w = QVector::new(w).unwrap();
        let x = QVector::new((0..len).map(|_| rand_quat(&mut rng, 1.0)).collect()).unwrap();
        let d = rand_quat(&mut rng, 1.0);

        let cost = real_field(|v: &QVector| za_cost(v, &x, d, gamma).unwrap());
        let numeric = num_grad_conj(&cost, &w, 1e-5).unwrap();
        let closed = za_cost_gradient_conj(&w, &x, d, gamma).unwrap();
        let scale = closed.iter().map(|q| max_abs(*q)).fold(0.0f64, f64::max);
        let diff = numeric
            .iter()
            .zip(&closed)
            .map(|(a, b)| max_abs(*a - *b))
            .fold(0.0f64, f64::max);
        worst = worst.max(diff / scale);
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-5 && elapsed < Duration::from_secs(5);
    report(
        3,
        "closed-form conjugate gradient matches oracle",
        pass,
        format!("worst relative error {worst:.2e} over 100 trials, {elapsed:?}"),
    );
}

#[test]
fn c4_reduction_to_qlms() {
    let cfg = ScenarioConfig {
        rho: 0.0,
        num_runs: 20,
        num_iterations: 5000,
        ..scenario("scenario1_desk.cfg")
    };
    let curves = run_scenario(&cfg).unwrap();
    let identical = curves[0]
        .mse_linear
        .iter()
        .zip(&curves[1].mse_linear)
        .all(|(a, b)| a.to_bits() == b.to_bits());
    report(
        4,
        "rho = 0 reduces ZA-QLMS to QLMS",
        identical,
        "bit-identical curves".into(),
    );
}

#[test]
fn c5_identification_correctness() {
    let start = Instant::now();
    let len = 8;
    let input_power = 1.0;
    let cfg = ScenarioConfig {
        length: len,
        active_taps: vec![2, 5],
        tap_values: None,
        mu: 0.01 / (len as f64 * input_power),
        rho: 0.0,
        snr_db: f64::INFINITY,
        num_iterations: 5000,
        num_runs: 1,
        // A single unit-modulus tap keeps the source white.
        coloring_len: 1,
        input_power,
        master_seed: 5,
        algorithms: vec![Algorithm::Qlms],
        ..ScenarioConfig::default()
    };
    let exp = Experiment::new(&cfg).unwrap();
    let realization = exp.realization(0).unwrap();
    let (_, w) = exp.adapt(&realization, Algorithm::Qlms, 0).unwrap();
    let err = w
        .iter()
        .zip(exp.system())
        .map(|(a, b)| max_abs(*a - *b))
        .fold(0.0f64, f64::max);
    // The mean weight error decays as (1 - mu*P)^n from its zero start.
    let largest = exp.system().iter().map(|q| max_abs(*q)).fold(0.0f64, f64::max);
    let mean_decay = largest * (1.0 - cfg.mu * input_power).powi(cfg.num_iterations as i32);
    let elapsed = start.elapsed();
    report(
        5,
        "noiseless identification",
        err < 1e-3 && elapsed < Duration::from_secs(5),
        format!(
            "max per-component weight error {err:.3e} after 5000 iterations \
             (mean-decay estimate {mean_decay:.3e}), {elapsed:?}"
        ),
    );
}

fn compare(curves: &[LearningCurve]) -> (f64, f64, Option<usize>, Option<usize>) {
    let ss_q = curves[0].steady_state_db(0.1).unwrap();
    let ss_z = curves[1].steady_state_db(0.1).unwrap();
    let conv_q = curves[0].convergence_iteration(ss_q + 3.0);
    let conv_z = curves[1].convergence_iteration(ss_z + 3.0);
    (ss_q, ss_z, conv_q, conv_z)
}

fn earlier(z: Option<usize>, q: Option<usize>) -> bool {
    match (z, q) {
        (Some(z), Some(q)) => z < q,
        (Some(_), None) => true,
        _ => false,
    }
}

#[test]
fn c6_scenario_one() {
    let start = Instant::now();
    let cfg = scenario("scenario1_desk.cfg");
    assert_eq!(cfg.algorithms, vec![Algorithm::Qlms, Algorithm::ZaQlms]);
    assert_eq!(
        (cfg.length, cfg.active_taps.clone(), cfg.num_runs),
        (32, vec![1, 7, 15, 30], 100)
    );
    assert!(cfg.num_iterations <= 20_000 && cfg.snr_db == 30.0);
    assert!((cfg.rho / cfg.mu - 5.0 / 3.0).abs() < 1e-12);
    let curves = run_scenario(&cfg).unwrap();
    let (ss_q, ss_z, conv_q, conv_z) = compare(&curves);
    let elapsed = start.elapsed();
    let pass = earlier(conv_z, conv_q) && (ss_z - ss_q).abs() <= 2.0 && elapsed < Duration::from_secs(120);
    report(
        6,
        "scenario one: ZA-QLMS faster, similar steady state",
        pass,
        format!("conv qlms {conv_q:?} za {conv_z:?}; steady state qlms {ss_q:.3} dB za {ss_z:.3} dB; {elapsed:?}"),
    );
}

#[test]
fn c7_scenario_two() {
    let start = Instant::now();
    let cfg = scenario("scenario2_desk.cfg");
    assert_eq!((cfg.length, cfg.active_taps.len(), cfg.num_runs), (16, 4, 100));
    assert_eq!(cfg.rho, cfg.mu);
    let curves = run_scenario(&cfg).unwrap();
    let (ss_q, ss_z, conv_q, conv_z) = compare(&curves);
    let elapsed = start.elapsed();
    let pass = earlier(conv_z, conv_q) && ss_z <= ss_q + 0.5 && elapsed < Duration::from_secs(60);
    report(
        7,
        "scenario two: ZA-QLMS faster, no worse steady state",
        pass,
        format!("conv qlms {conv_q:?} za {conv_z:?}; steady state qlms {ss_q:.3} dB za {ss_z:.3} dB; {elapsed:?}"),
    );
}

#[test]
fn c8_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join("scenario2_desk.cfg");
    let invoke = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_qlms-sparse"))
            .arg("--config")
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .args(["--seed", "42", "--runs", "10", "--quiet"])
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let first = invoke("a.csv");
    let second = invoke("b.csv");

    let cfg = ScenarioConfig {
        num_runs: 10,
        master_seed: 42,
        ..scenario("scenario2_desk.cfg")
    };
    let serial = run_scenario_with(&cfg, Execution::Serial).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let parallel = pool.install(|| run_scenario_with(&cfg, Execution::Parallel)).unwrap();
    let library = qlms_sparse::output::render_csv(&serial).unwrap();

    let pass = first == second && serial == parallel && library.as_bytes() == first.as_slice();
    report(
        8,
        "deterministic CSV across invocations and scheduling",
        pass,
        format!("{} bytes", first.len()),
    );
}

#[test]
fn c9_zero_attractor_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    let mut zeros_kept = true;
    for _ in 0..1000 {
        let len = rng.random_range(1..10);
        let w: Vec<Quaternion> = (0..len)
            .map(|_| {
                if rng.random_bool(0.3) {
                    Quaternion::ZERO
                } else {
                    let q = rand_quat(&mut rng, 2.0);
                    q.scale(0.05 / q.norm() + 1.0)
                }
            })
            .collect();
        let w = QVector::new(w).unwrap();
        let min_nonzero = w
            .iter()
            .filter(|q| !q.is_zero())
            .map(|q| q.norm())
            .fold(f64::INFINITY, f64::min);
        let rho = rng.random_range(0.0..0.05f64.min(min_nonzero));
        let x = QVector::new((0..len).map(|_| rand_quat(&mut rng, 1.0)).collect()).unwrap();
        let d = w.dot_t(&x).unwrap();
        let mut state = FilterState::with_weights(w.clone(), 0.1, rho).unwrap();
        let rec = state.step(&x, d).unwrap();
        assert_eq!(rec.e, Quaternion::ZERO);
        for (old, new) in w.iter().zip(state.weights()) {
            if old.is_zero() {
                zeros_kept &= new.is_zero();
            } else {
                worst = worst.max((new.norm() - (old.norm() - rho)).abs());
            }
        }
    }
    report(
        9,
        "zero attractor shrinks by exactly rho",
        worst < 1e-12 && zeros_kept,
        format!("worst modulus error {worst:.1e}, zeros kept {zeros_kept}"),
    );
}
