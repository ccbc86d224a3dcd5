//! Invariant checks of the special functions and the quadrature engine.

use crate::catalog::{identity_case, IdentityId};
use crate::quadrature::{
    eval_kernel, integrate, integrate_kernel, integrate_scaled, Domain, KernelKind,
    QuadratureConfig,
};
use crate::specfun::{bessel_i_scaled, coth, csch, digamma, log_gamma, BesselOrder, Complex};
use crate::verify::verification_quadrature;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, value: f64, bound: f64) -> Check {
    Check {
        name,
        passed: value <= bound,
        detail: format!("{value:.3e} (bound {bound:.0e})"),
    }
}

fn vertical_grid() -> Vec<Complex> {
    let mut zs = Vec::new();
    for &c in &[0.5, 1.0, 2.0, 5.0] {
        for k in -20..=20 {
            zs.push(Complex::new(c, 0.5 * k as f64));
        }
    }
    zs
}

fn digamma_recurrence() -> Check {
    let worst = vertical_grid()
        .into_iter()
        .map(|z| {
            let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
            d.norm()
        })
        .fold(0.0, f64::max);
    check("digamma recurrence", worst, 1e-12)
}

fn log_gamma_derivative() -> Check {
    let h = 1e-5;
    let worst = vertical_grid()
        .into_iter()
        .map(|z| {
            let up = log_gamma(z + Complex::new(0.0, h)).unwrap();
            let down = log_gamma(z - Complex::new(0.0, h)).unwrap();
            let fd = (up - down) / (2.0 * h);
            (fd - Complex::new(0.0, 1.0) * digamma(z).unwrap()).norm()
        })
        .fold(0.0, f64::max);
    check("log_gamma derivative along imaginary axis", worst, 1e-7)
}

fn conjugate_symmetry() -> Check {
    let worst = vertical_grid()
        .into_iter()
        .map(|z| {
            let a = (log_gamma(z.conj()).unwrap() - log_gamma(z).unwrap().conj()).norm();
            let b = (digamma(z.conj()).unwrap() - digamma(z).unwrap().conj()).norm();
            a.max(b)
        })
        .fold(0.0, f64::max);
    check("conjugate symmetry (exact)", worst, 0.0)
}

fn bessel_difference_positive() -> Check {
    let n = 400;
    let (lo, hi) = (1e-6f64.ln(), 50f64.ln());
    let min = (0..=n)
        .map(|i| {
            let x = (lo + (hi - lo) * i as f64 / n as f64).exp();
            bessel_i_scaled(BesselOrder::Zero, x).unwrap()
                - bessel_i_scaled(BesselOrder::One, x).unwrap()
        })
        .fold(f64::INFINITY, f64::min);
    Check {
        name: "e^-x (I0 - I1) > 0 on [1e-6, 50]",
        passed: min > 0.0,
        detail: format!("min {min:.3e}"),
    }
}

fn quadrature_examples() -> Vec<Check> {
    let tol = 1e-11;
    let exp = integrate(
        |x| Complex::new((-x).exp(), 0.0),
        Domain::PosHalf,
        tol,
        1e-12,
    )
    .unwrap();
    let gauss = integrate(
        |x| Complex::new(x * (-x * x).exp(), 0.0),
        Domain::PosHalf,
        tol,
        1e-12,
    )
    .unwrap();
    let l1i = integrate(
        |x| {
            let c = csch(0.5 * std::f64::consts::PI * x);
            eval_kernel(KernelKind::Cos1, 1.0, x) * (0.5 * std::f64::consts::PI * c * c)
        },
        Domain::PosHalf,
        tol,
        1e-12,
    )
    .unwrap();
    vec![
        check(
            "integral of e^-x over (0,inf) = 1",
            (exp.value - 1.0).norm(),
            tol,
        ),
        check(
            "integral of x e^-x^2 over (0,inf) = 1/2",
            (gauss.value - 0.5).norm(),
            tol,
        ),
        check(
            "cos-kernel integral equals 1 - coth(1)",
            (l1i.value.re - (1.0 - coth(1.0))).abs(),
            1e-10,
        ),
    ]
}

fn splitting_invariance() -> Check {
    let case = identity_case(IdentityId::C5);
    let cfg = verification_quadrature();
    let d = |x: f64| case.density_unchecked(x);
    let whole = integrate_kernel(KernelKind::Kolm, 1.0, d, Domain::PuncturedLine, &cfg).unwrap();
    let neg = integrate_kernel(KernelKind::Kolm, 1.0, d, Domain::NegHalf, &cfg).unwrap();
    let pos = integrate_kernel(KernelKind::Kolm, 1.0, d, Domain::PosHalf, &cfg).unwrap();
    check(
        "punctured line = negative + positive half-lines",
        (whole.value - neg.value - pos.value).norm(),
        2.0 * cfg.abs_tol,
    )
}

fn cancellation_at_origin() -> Check {
    let mut worst: f64 = 0.0;
    for id in IdentityId::ALL {
        let case = identity_case(id);
        for k in 3..=9 {
            let x = 10f64.powi(-k);
            let x = if case.domain == Domain::NegHalf {
                -x
            } else {
                x
            };
            let v = (eval_kernel(case.kernel, 1.0, x) * case.density_unchecked(x)).norm();
            worst = worst.max(if v.is_finite() { v } else { f64::INFINITY });
        }
    }
    check("kernel x density bounded near 0", worst, 10.0)
}

fn scaling() -> Check {
    let cfg = QuadratureConfig::with_tolerances(1e-11, 1e-12);
    let f = |x: f64| Complex::new((x.cos() - 1.0) / (1.0 + x * x) * (-0.5 * x).exp(), 0.0);
    let base = integrate_scaled(f, 1.0, Domain::PosHalf, &cfg)
        .unwrap()
        .value;
    let worst = [-1.0, 2.0, 10.0]
        .into_iter()
        .map(|c| {
            let direct = crate::quadrature::integrate_with(|x| f(x) * c, Domain::PosHalf, &cfg)
                .unwrap()
                .value;
            (direct - base * c).norm()
        })
        .fold(0.0, f64::max);
    check("integral of c f = c times integral of f", worst, 1e-10)
}

fn tail_truncation() -> Check {
    let case = identity_case(IdentityId::L2i);
    let d = |x: f64| case.density_unchecked(x);
    let near = QuadratureConfig {
        tail_start: 40.0,
        ..verification_quadrature()
    };
    let far = QuadratureConfig {
        tail_start: 80.0,
        ..near
    };
    let a = integrate_kernel(KernelKind::Cos1, 1.0, d, Domain::PosHalf, &near).unwrap();
    let b = integrate_kernel(KernelKind::Cos1, 1.0, d, Domain::PosHalf, &far).unwrap();
    let bound = a
        .abs_error_estimate
        .max(b.abs_error_estimate)
        .max(near.abs_tol);
    check("doubling the tail start", (a.value - b.value).norm(), bound)
}

/// Runs every invariant check.
pub fn run_checks() -> Vec<Check> {
    let mut out = vec![
        digamma_recurrence(),
        log_gamma_derivative(),
        conjugate_symmetry(),
        bessel_difference_positive(),
    ];
    out.extend(quadrature_examples());
    out.push(splitting_invariance());
    out.push(cancellation_at_origin());
    out.push(scaling());
    out.push(tail_truncation());
    out
}
