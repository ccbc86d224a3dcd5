//! Identity verification: left-hand sides by quadrature over a `t` grid,
//! compared with the closed-form right-hand sides.

use crate::catalog::{identity_case_with, IdentityCase, IdentityId, ParamOverrides};
use crate::quadrature::{
    integrate_kernel, KernelKind, QuadratureConfig, QuadratureError, QuadratureResult,
};
use crate::specfun::Complex;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::time::Instant;
use thiserror::Error;

pub const DEFAULT_GRID: [f64; 7] = [0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0];
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("t grid is empty")]
    EmptyGrid,
    #[error("suite has no cases")]
    EmptySuite,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("t = {t} is not a valid point for {id}")]
    OutOfRange { id: IdentityId, t: f64 },
    #[error("{0} has no real/imaginary split")]
    NotSplittable(IdentityId),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

fn ms<S: Serializer>(d: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(*d)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    #[serde(rename = "id")]
    pub case_id: IdentityId,
    #[serde(rename = "grid")]
    pub t_grid: Vec<f64>,
    /// `|LHS(t) - RHS(t)|` per grid point; for a point whose quadrature did
    /// not converge, the larger of that and the quadrature error estimate;
    /// infinite if the quadrature failed outright.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    #[serde(skip)]
    pub tolerance: f64,
    pub passed: bool,
    /// Total integrand evaluations.
    pub evaluations: usize,
    #[serde(serialize_with = "ms")]
    pub wall_time_ms: f64,
    #[serde(skip)]
    pub lhs: Vec<Complex>,
    #[serde(skip)]
    pub rhs: Vec<Complex>,
    #[serde(skip)]
    pub diagnostics: Vec<String>,
}

/// An ordered list of cases with a shared grid and tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Suite {
    pub cases: Vec<IdentityCase>,
    pub t_grid: Vec<f64>,
    pub tolerance: f64,
    /// Per-case tolerances replacing `tolerance`.
    pub tolerance_overrides: Vec<(IdentityId, f64)>,
    /// Append `-t` for every grid point of complex-valued cases.
    pub mirror_complex: bool,
    pub quadrature: QuadratureConfig,
    /// Record wall time; off gives bitwise-reproducible reports.
    pub timing: bool,
}

/// Quadrature settings used for verification: the absolute tolerance sits
/// well below the acceptance threshold and the relative one is tight enough
/// not to dominate it at `|LHS| ~ 10`.
pub fn verification_quadrature() -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-11,
        rel_tol: 1e-13,
        ..Default::default()
    }
}

impl Suite {
    /// Every identity with default parameters, grid and tolerances.
    pub fn standard() -> Suite {
        Suite::standard_with(&ParamOverrides::new()).expect("defaults are valid")
    }

    /// Every identity, with `overrides` applied to the cases that carry the
    /// named parameters.
    pub fn standard_with(
        overrides: &ParamOverrides,
    ) -> Result<Suite, crate::catalog::CatalogError> {
        let cases = IdentityId::ALL
            .into_iter()
            .map(|id| {
                let own: ParamOverrides = overrides
                    .iter()
                    .filter(|(k, _)| crate::catalog::identity_case(id).parameter(k).is_some())
                    .map(|(k, v)| (k.clone(), *v))
                    .collect();
                identity_case_with(id, &own)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Suite {
            cases,
            t_grid: DEFAULT_GRID.to_vec(),
            tolerance: DEFAULT_TOLERANCE,
            tolerance_overrides: IdentityId::ALL
                .into_iter()
                .filter(|id| id.default_tolerance() != DEFAULT_TOLERANCE)
                .map(|id| (id, id.default_tolerance()))
                .collect(),
            mirror_complex: true,
            quadrature: verification_quadrature(),
            timing: true,
        })
    }

    /// A suite with a fixed grid and uniform tolerance.
    pub fn new(
        cases: Vec<IdentityCase>,
        t_grid: Vec<f64>,
        tolerance: f64,
    ) -> Result<Suite, VerifyError> {
        let suite = Suite {
            cases,
            t_grid,
            tolerance,
            tolerance_overrides: Vec::new(),
            mirror_complex: false,
            quadrature: verification_quadrature(),
            timing: true,
        };
        suite.validate()?;
        Ok(suite)
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.cases.is_empty() {
            return Err(VerifyError::EmptySuite);
        }
        for case in &self.cases {
            check_inputs(case, &self.grid_for(case), self.tolerance_for(case.id))?;
        }
        Ok(())
    }

    pub fn grid_for(&self, case: &IdentityCase) -> Vec<f64> {
        let mut grid = self.t_grid.clone();
        if self.mirror_complex && case.id.is_complex() {
            grid.extend(self.t_grid.iter().filter(|&&t| t != 0.0).map(|t| -t));
        }
        grid
    }

    pub fn tolerance_for(&self, id: IdentityId) -> f64 {
        self.tolerance_overrides
            .iter()
            .find(|(i, _)| *i == id)
            .map_or(self.tolerance, |&(_, tol)| tol)
    }
}

fn check_inputs(case: &IdentityCase, grid: &[f64], tolerance: f64) -> Result<(), VerifyError> {
    if grid.is_empty() {
        return Err(VerifyError::EmptyGrid);
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(VerifyError::BadTolerance(tolerance));
    }
    if let Some(&t) = grid
        .iter()
        .find(|&&t| !t.is_finite() || !case.contains_t(t))
    {
        return Err(VerifyError::OutOfRange { id: case.id, t });
    }
    Ok(())
}

/// Left-hand side `∫ K(t,x) d(x) dx` of `case` at `t`.
pub fn lhs(
    case: &IdentityCase,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError> {
    lhs_with_kernel(case, case.kernel, t, cfg)
}

fn lhs_with_kernel(
    case: &IdentityCase,
    kernel: KernelKind,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError> {
    let cfg = QuadratureConfig {
        tail: case.tail,
        ..*cfg
    };
    integrate_kernel(kernel, t, |x| case.density_unchecked(x), case.domain, &cfg)
}

/// Verifies one case with the standard verification quadrature.
pub fn verify_identity(
    case: &IdentityCase,
    t_grid: &[f64],
    tolerance: f64,
) -> Result<VerificationReport, VerifyError> {
    verify_identity_with(case, t_grid, tolerance, &verification_quadrature(), true)
}

/// Verifies one case. Quadrature failures become failed points with a
/// diagnostic; only invalid inputs are errors.
pub fn verify_identity_with(
    case: &IdentityCase,
    t_grid: &[f64],
    tolerance: f64,
    cfg: &QuadratureConfig,
    timing: bool,
) -> Result<VerificationReport, VerifyError> {
    check_inputs(case, t_grid, tolerance)?;
    let start = Instant::now();
    let mut residuals = Vec::with_capacity(t_grid.len());
    let mut lhs_values = Vec::with_capacity(t_grid.len());
    let mut rhs_values = Vec::with_capacity(t_grid.len());
    let mut diagnostics = Vec::new();
    let mut evaluations = 0;
    for &t in t_grid {
        let rhs = case.rhs(t);
        rhs_values.push(rhs);
        match lhs(case, t, cfg) {
            Ok(r) => {
                evaluations += r.evaluations;
                let mut residual = (r.value - rhs).norm();
                if !r.converged {
                    diagnostics.push(format!(
                        "t = {t}: quadrature did not converge (error estimate {:e})",
                        r.abs_error_estimate
                    ));
                    residual = residual.max(r.abs_error_estimate);
                }
                residuals.push(residual);
                lhs_values.push(r.value);
            }
            Err(e) => {
                diagnostics.push(format!("t = {t}: {e}"));
                residuals.push(f64::INFINITY);
                lhs_values.push(Complex::new(f64::NAN, f64::NAN));
            }
        }
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(VerificationReport {
        case_id: case.id,
        t_grid: t_grid.to_vec(),
        residuals,
        max_residual,
        tolerance,
        passed: max_residual <= tolerance,
        evaluations,
        wall_time_ms: if timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        },
        lhs: lhs_values,
        rhs: rhs_values,
        diagnostics,
    })
}

/// Verifies every case of `suite` in parallel; reports come back in suite
/// order.
pub fn verify_all(suite: &Suite) -> Result<Vec<VerificationReport>, VerifyError> {
    suite.validate()?;
    suite
        .cases
        .par_iter()
        .map(|case| {
            verify_identity_with(
                case,
                &suite.grid_for(case),
                suite.tolerance_for(case.id),
                &suite.quadrature,
                suite.timing,
            )
        })
        .collect()
}

/// Separate residuals of the real (`cos(tx) - 1`) and imaginary
/// (`sin(tx) - tx`) parts of a complex Kolmogorov-kernel identity.
pub fn real_imag_split_check(case: &IdentityCase, t: f64) -> Result<(f64, f64), VerifyError> {
    if case.kernel != KernelKind::Kolm {
        return Err(VerifyError::NotSplittable(case.id));
    }
    check_inputs(case, &[t], 1.0)?;
    let cfg = verification_quadrature();
    let rhs = case.rhs(t);
    let re = lhs_with_kernel(case, KernelKind::Cos1, t, &cfg)?.value.re;
    let im = lhs_with_kernel(case, KernelKind::Sinl, t, &cfg)?.value.re;
    Ok(((re - rhs.re).abs(), (im - rhs.im).abs()))
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// JSON array with one object per report.
pub fn to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    t: f64,
    lhs_re: f64,
    lhs_im: f64,
    rhs_re: f64,
    rhs_im: f64,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

/// One row per `(case, t)`.
pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        for (i, &t) in r.t_grid.iter().enumerate() {
            w.serialize(CsvRow {
                id: r.case_id.token(),
                t,
                lhs_re: r.lhs[i].re,
                lhs_im: r.lhs[i].im,
                rhs_re: r.rhs[i].re,
                rhs_im: r.rhs[i].im,
                residual: r.residuals[i],
                tolerance: r.tolerance,
                passed: r.residuals[i] <= r.tolerance,
            })
            .expect("in-memory csv write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

/// One line per report.
pub fn to_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{} {:<6} max_residual={:.3e} tol={:.0e} points={} evaluations={} time_ms={:.1}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.case_id.token(),
            r.max_residual,
            r.tolerance,
            r.t_grid.len(),
            r.evaluations,
            r.wall_time_ms,
        ));
        for d in &r.diagnostics {
            out.push_str(&format!("     {d}\n"));
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} passed\n", reports.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::identity_case;

    #[test]
    fn l1i_on_small_grid() {
        let r =
            verify_identity(&identity_case(IdentityId::L1i), &[0.5, 1.0, 2.0, 5.0], 1e-8).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.residuals.len(), 4);
    }

    #[test]
    fn zero_grid_point_has_zero_residual() {
        for id in IdentityId::ALL {
            let r = verify_identity(&identity_case(id), &[0.0], 1e-12).unwrap();
            assert_eq!(r.residuals, vec![0.0], "{id}");
        }
    }

    #[test]
    fn preconditions() {
        let c = identity_case(IdentityId::L1i);
        assert_eq!(
            verify_identity(&c, &[], 1e-8).unwrap_err(),
            VerifyError::EmptyGrid
        );
        assert!(matches!(
            verify_identity(&c, &[1.0], 0.0),
            Err(VerifyError::BadTolerance(_))
        ));
        assert!(matches!(
            verify_identity(&c, &[f64::NAN], 1e-8),
            Err(VerifyError::OutOfRange { .. })
        ));
        assert_eq!(
            Suite::new(vec![], vec![1.0], 1e-8).unwrap_err(),
            VerifyError::EmptySuite
        );
    }

    #[test]
    fn split_check_at_zero_and_symmetric() {
        let c5 = identity_case(IdentityId::C5);
        assert_eq!(real_imag_split_check(&c5, 0.0).unwrap(), (0.0, 0.0));
        let mut o = ParamOverrides::new();
        o.insert("b".into(), 0.0);
        let sym = identity_case_with(IdentityId::C5, &o).unwrap();
        let (re, im) = real_imag_split_check(&sym, 1.0).unwrap();
        assert!(re < 1e-8 && im < 1e-8, "{re} {im}");
        assert!(real_imag_split_check(&identity_case(IdentityId::L1i), 1.0).is_err());
    }

    #[test]
    fn single_case_suite() {
        let s = Suite::new(vec![identity_case(IdentityId::L1i)], vec![1.0], 1e-8).unwrap();
        let r = verify_all(&s).unwrap();
        assert_eq!(r.len(), 1);
        let json: serde_json::Value = serde_json::from_str(&to_json(&r)).unwrap();
        let obj = json[0].as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "evaluations",
                "grid",
                "id",
                "max_residual",
                "passed",
                "residuals",
                "wall_time_ms"
            ]
        );
        let csv = to_csv(&r);
        assert_eq!(csv.lines().count(), 2);
    }
}
