//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use selfdec::bdrv::{
    bdrv_exponent, grid_on, log_grid, next_density, positivity_scan, DerivativeConfig,
};
use selfdec::catalog::{spec, ChainLevel, DistributionId, DistributionSpec};
use selfdec::quadrature::{
    integrate_kernel, integrate_with, Domain, KernelKind, QuadratureConfig, TailKind,
};
use selfdec::specfun::{
    bessel_i0_minus_i1_scaled, bessel_i_scaled, digamma, log_gamma, BesselOrder,
};
use selfdec::verify::{verify_all, Suite, DEFAULT_GRID};
use selfdec::Complex;
use std::process::Command;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn all_specs() -> Vec<DistributionSpec> {
    DistributionId::ALL.into_iter().map(spec).collect()
}

fn identity_suite() -> Outcome {
    let reports = verify_all(&Suite::standard()).expect("standard suite is valid");
    let mut worst = String::new();
    let mut ok = true;
    for r in &reports {
        println!(
            "    {} {:<6} max_residual={:.2e} tol={:.0e}",
            if r.passed { "pass" } else { "FAIL" },
            r.case_id.token(),
            r.max_residual,
            r.tolerance
        );
        ok &= r.passed;
        if !r.passed {
            worst.push_str(&format!(" {}", r.case_id));
        }
    }
    let detail = if ok {
        format!("{} reports, all within tolerance", reports.len())
    } else {
        format!("failing:{worst}")
    };
    outcome(ok && reports.len() == 15, detail)
}

fn chain_oracle() -> Outcome {
    let cfg = DerivativeConfig::default();
    let positive = log_grid(1e-3, 30.0, 120);
    let mut worst = (0.0f64, String::new());
    for s in all_specs() {
        let grid = grid_on(s.triple.support(), &positive);
        let mut prev = s.triple.density;
        for stored in &s.bdrv_chain {
            for &x in &grid {
                let numeric =
                    next_density(|y| prev.eval(y), x, &cfg).expect("x inside the support");
                let exact = stored.eval(x);
                let rel = ((numeric - exact) / exact).abs();
                if !(rel <= worst.0) {
                    worst = (
                        rel,
                        format!(
                            "{} {} at x={x:.3e}",
                            s.id,
                            stored.level().unwrap_or(ChainLevel::H)
                        ),
                    );
                }
            }
            prev = *stored;
        }
    }
    outcome(
        worst.0 <= 1e-6,
        format!("max relative error {:.2e} ({})", worst.0, worst.1),
    )
}

fn positivity() -> Outcome {
    let positive = log_grid(1e-3, 30.0, 400);
    let mut failures = Vec::new();
    let mut scans = 0;
    for s in all_specs() {
        let grid = grid_on(s.triple.support(), &positive);
        for d in &s.bdrv_chain {
            let r = positivity_scan(|x| d.eval(x), &grid).expect("grid is nonempty");
            scans += 1;
            if !r.all_nonnegative {
                failures.push(format!(
                    "{}:{} min {:.2e} at {}",
                    s.id,
                    d.level().unwrap_or(ChainLevel::H),
                    r.min_value,
                    r.argmin
                ));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{scans} chain densities scanned; {}",
            if failures.is_empty() {
                "all nonnegative".to_string()
            } else {
                failures.join("; ")
            }
        ),
    )
}

fn feller_spitzer() -> Outcome {
    let cfg = QuadratureConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-13,
        tail: TailKind::Algebraic,
        ..Default::default()
    };
    let mass = integrate_with(
        |x| Complex::new(bessel_i0_minus_i1_scaled(x).unwrap(), 0.0),
        Domain::PosHalf,
        &cfg,
    )
    .unwrap();
    let mass_err = (mass.value - 1.0).norm();
    let s = spec(DistributionId::FellerSpitzer);
    let k = |x: f64| s.triple.density.eval(x);
    let qcfg = QuadratureConfig {
        abs_tol: 1e-11,
        rel_tol: 1e-13,
        tail: TailKind::Algebraic,
        ..Default::default()
    };
    let mut lk_err: f64 = 0.0;
    for &t in &[0.5, 1.0, 2.0] {
        let integral = integrate_kernel(KernelKind::Lk, t, k, Domain::PosHalf, &qcfg).unwrap();
        let rebuilt = Complex::new(0.0, t * s.triple.shift) + integral.value;
        lk_err = lk_err.max((rebuilt - s.log_cf(t)).norm());
    }
    outcome(
        mass_err <= 1e-10 && lk_err <= 1e-7,
        format!("|mass - 1| = {mass_err:.2e}; max LK reconstruction error {lk_err:.2e}"),
    )
}

fn transform_consistency() -> Outcome {
    let cfg = DerivativeConfig::default();
    let halved = cfg.with_base_step(cfg.base_step / 2.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut halving: f64 = 0.0;
    let required = [
        DistributionId::HypSine,
        DistributionId::HypCosine,
        DistributionId::HypTangent,
        DistributionId::Meixner,
    ];
    for s in all_specs() {
        for &t in DEFAULT_GRID
            .iter()
            .chain(DEFAULT_GRID.iter().map(|t| -t).collect::<Vec<_>>().iter())
        {
            let e = bdrv_exponent(|u| s.cf(u), t, &cfg).unwrap();
            let e2 = bdrv_exponent(|u| s.cf(u), t, &halved).unwrap();
            let err = (e.exp() - s.psi(t)).norm();
            if required.contains(&s.id) {
                worst = worst.max(err);
            } else if err > 1e-7 {
                println!("    note: {} at t={t}: {err:.2e}", s.id);
            }
            halving = halving.max((e - e2).norm());
        }
    }
    outcome(
        worst <= 1e-7,
        format!(
            "max |exp(numeric exponent) - psi| = {worst:.2e}; step-halving change {halving:.2e}"
        ),
    )
}

fn cf_sanity() -> Outcome {
    let mut sym: f64 = 0.0;
    let mut modulus: f64 = 0.0;
    let mut at_zero = true;
    for s in all_specs() {
        at_zero &= s.cf(0.0) == Complex::new(1.0, 0.0);
        for k in 0..=4000 {
            let t = -20.0 + 0.01 * k as f64;
            let p = s.cf(t);
            sym = sym.max((s.cf(-t) - p.conj()).norm());
            modulus = modulus.max(p.norm());
        }
    }
    outcome(
        at_zero && sym <= 1e-13 && modulus <= 1.0 + 1e-12,
        format!("9 specs; cf(0) = 1: {at_zero}; Hermitian error {sym:.2e}; max |cf| {modulus:.17}"),
    )
}

fn special_functions() -> Outcome {
    let mut rec: f64 = 0.0;
    let mut fd: f64 = 0.0;
    let h = 1e-5;
    let i = Complex::new(0.0, 1.0);
    for &c in &[0.5, 1.0, 2.0, 5.0] {
        for k in -100..=100 {
            let z = Complex::new(c, 0.1 * k as f64);
            rec = rec.max((digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z).norm());
            let d = (log_gamma(z + i * h).unwrap() - log_gamma(z - i * h).unwrap()) / (2.0 * h);
            fd = fd.max((d - i * digamma(z).unwrap()).norm());
        }
    }
    let grid = log_grid(1e-6, 50.0, 500);
    let min_diff = grid
        .iter()
        .map(|&x| {
            bessel_i_scaled(BesselOrder::Zero, x).unwrap()
                - bessel_i_scaled(BesselOrder::One, x).unwrap()
        })
        .fold(f64::INFINITY, f64::min);
    outcome(
        rec < 1e-12 && fd < 1e-7 && min_diff > 0.0,
        format!(
            "recurrence {rec:.2e}; log_gamma/digamma FD {fd:.2e}; min e^-x(I0-I1) {min_diff:.2e}"
        ),
    )
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_selfdec"))
        .args(args)
        .env_remove("SELFDEC_EVAL_BUDGET")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn strip_timing(json: &[u8]) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(json).expect("strict JSON");
    for r in v.as_array_mut().expect("array of reports") {
        r.as_object_mut().unwrap().remove("wall_time_ms");
    }
    v
}

fn determinism_and_cli() -> Outcome {
    let (c1, a) = run_cli(&["verify", "all", "--format", "json", "--no-timing"]);
    let (c2, b) = run_cli(&["verify", "all", "--format", "json", "--no-timing"]);
    let (c3, x) = run_cli(&["verify", "all", "--tol", "1e-8", "--format", "json"]);
    let (c4, y) = run_cli(&["verify", "all", "--tol", "1e-8", "--format", "json"]);
    let bitwise = a == b;
    let stable = strip_timing(&x) == strip_timing(&y);
    let count = strip_timing(&x).as_array().map_or(0, |v| v.len());
    let (c6, _) = run_cli(&["verify", "C6", "--params", "nu=1"]);
    let (fail, _) = run_cli(&["verify", "L1i", "--tol", "1e-30", "--grid", "1"]);
    let (unknown, _) = run_cli(&["verify", "L7"]);
    let (malformed, _) = run_cli(&["verify", "C6", "--params", "nu"]);
    let codes = [c1, c2, c3, c4, c6] == [0; 5] && fail == 1 && unknown == 2 && malformed == 2;
    outcome(
        bitwise && stable && codes && count == 15,
        format!(
            "--no-timing runs bitwise equal: {bitwise}; timed runs equal except wall time: {stable}; {count} reports; exit codes ok: {codes}"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 identity suite", identity_suite),
        ("2 density-chain oracle", chain_oracle),
        ("3 positivity evidence", positivity),
        (
            "4 Feller-Spitzer normalization and LK reconstruction",
            feller_spitzer,
        ),
        ("5 transform consistency", transform_consistency),
        ("6 characteristic-function sanity", cf_sanity),
        ("7 special-function checks", special_functions),
        ("8 determinism and CLI contract", determinism_and_cli),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        println!(
            "[{}] criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
