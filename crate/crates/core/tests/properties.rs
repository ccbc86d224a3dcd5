use proptest::prelude::*;
use selfdec::catalog::{
    identity_case, spec, spec_with, DistributionId, IdentityId, ParamOverrides,
};
use selfdec::quadrature::{eval_kernel, integrate_kernel, Domain, KernelKind, QuadratureConfig};
use selfdec::specfun::{digamma, log_gamma};
use selfdec::verify::{lhs, verification_quadrature, verify_identity};
use selfdec::Complex;

fn dist() -> impl Strategy<Value = DistributionId> {
    prop::sample::select(DistributionId::ALL.to_vec())
}

fn kernel() -> impl Strategy<Value = KernelKind> {
    prop::sample::select(KernelKind::ALL.to_vec())
}

proptest! {
    #[test]
    fn cf_is_hermitian_and_bounded(id in dist(), t in -50.0f64..50.0) {
        let s = spec(id);
        let p = s.cf(t);
        prop_assert!(p.norm() <= 1.0 + 1e-12);
        prop_assert!((s.cf(-t) - p.conj()).norm() <= 1e-13);
    }

    #[test]
    fn meixner_cf_bounded_over_parameters(
        a in 0.1f64..10.0, b in -3.1f64..3.1, d in 0.05f64..5.0, t in -30.0f64..30.0
    ) {
        let o: ParamOverrides = [("a", a), ("b", b), ("d", d)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let s = spec_with(DistributionId::Meixner, &o).unwrap();
        prop_assert!(s.cf(t).norm() <= 1.0 + 1e-12);
        prop_assert!(s.log_cf(t).re.is_finite());
    }

    #[test]
    fn kernel_reflection(kind in kernel(), t in -20.0f64..20.0, x in -20.0f64..20.0) {
        prop_assert_eq!(eval_kernel(kind, t, -x), eval_kernel(kind, -t, x));
    }

    #[test]
    fn digamma_recurrence(re in 0.05f64..20.0, im in -50.0f64..50.0) {
        let z = Complex::new(re, im);
        let r = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
        prop_assert!(r.norm() <= 1e-12 * (1.0 + 1.0 / z.norm()));
    }

    #[test]
    fn log_gamma_conjugate_symmetry(re in 0.05f64..20.0, im in -50.0f64..50.0) {
        let z = Complex::new(re, im);
        prop_assert_eq!(log_gamma(z.conj()).unwrap(), log_gamma(z).unwrap().conj());
    }

    #[test]
    fn chain_densities_nonnegative(id in dist(), x in 1e-4f64..60.0, neg in any::<bool>()) {
        let s = spec(id);
        let x = if neg { -x } else { x };
        for d in &s.bdrv_chain {
            let v = d.eval(x);
            prop_assert!(v >= -1e-12 && v.is_finite(), "{:?} at {}: {}", d, x, v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identities_hold_at_random_t(idx in 0usize..15, t in -12.0f64..12.0) {
        let id = IdentityId::ALL[idx];
        let r = verify_identity(&identity_case(id), &[t], id.default_tolerance()).unwrap();
        prop_assert!(r.passed, "{} at t = {}: {:e}", id, t, r.max_residual);
    }

    #[test]
    fn complex_lhs_is_hermitian(idx in 0usize..5, t in 0.05f64..10.0) {
        let ids = [IdentityId::C2a, IdentityId::C2b, IdentityId::C4, IdentityId::C5, IdentityId::C6];
        let case = identity_case(ids[idx]);
        let cfg = verification_quadrature();
        let p = lhs(&case, t, &cfg).unwrap();
        let q = lhs(&case, -t, &cfg).unwrap();
        prop_assert!((p.value - q.value.conj()).norm() <= 2.0 * cfg.abs_tol);
    }

    #[test]
    fn splitting_invariance(t in -8.0f64..8.0) {
        let case = identity_case(IdentityId::C4);
        let cfg = QuadratureConfig { abs_tol: 1e-11, rel_tol: 1e-13, ..Default::default() };
        let d = |x: f64| case.density_unchecked(x);
        let whole = integrate_kernel(KernelKind::Kolm, t, d, Domain::PuncturedLine, &cfg).unwrap();
        let neg = integrate_kernel(KernelKind::Kolm, t, d, Domain::NegHalf, &cfg).unwrap();
        let pos = integrate_kernel(KernelKind::Kolm, t, d, Domain::PosHalf, &cfg).unwrap();
        prop_assert!((whole.value - neg.value - pos.value).norm() <= 2.0 * cfg.abs_tol);
    }
}

#[test]
fn c4_residual_bounded_by_log_gamma_cases() {
    let one = |id, k: &str, v: f64| {
        let mut o = ParamOverrides::new();
        o.insert(k.to_string(), v);
        selfdec::catalog::identity_case_with(id, &o).unwrap()
    };
    let grid = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
    let c4 = verify_identity(&identity_case(IdentityId::C4), &grid, 1e-8).unwrap();
    let a = verify_identity(&one(IdentityId::C2a, "alpha", 1.0), &grid, 1e-8).unwrap();
    let b = verify_identity(&one(IdentityId::C2b, "beta", 2.0), &grid, 1e-8).unwrap();
    assert!(c4.max_residual <= a.max_residual + b.max_residual + 1e-10);
}

#[test]
fn enlarging_the_grid_never_lowers_max_residual() {
    let case = identity_case(IdentityId::C5);
    let small = verify_identity(&case, &[0.5, 1.0], 1e-8).unwrap();
    let large = verify_identity(&case, &[0.5, 1.0, 3.0, 7.0], 1e-8).unwrap();
    assert!(large.max_residual >= small.max_residual);
}

#[test]
fn repeated_runs_are_bitwise_identical() {
    let s = selfdec::verify::Suite {
        timing: false,
        ..selfdec::verify::Suite::standard()
    };
    let a = selfdec::verify::verify_all(&s).unwrap();
    let b = selfdec::verify::verify_all(&s).unwrap();
    for (x, y) in a.iter().zip(&b) {
        let bx: Vec<u64> = x.residuals.iter().map(|v| v.to_bits()).collect();
        let by: Vec<u64> = y.residuals.iter().map(|v| v.to_bits()).collect();
        assert_eq!(bx, by);
    }
    assert_eq!(a, b);
}
