//! Numeric background-driving-variable transform.
//!
//! For a self-decomposable `X` with characteristic function `φ`, the
//! background driving variable has characteristic function
//! `ψ(t) = exp(t (log φ)'(t))`, and Lévy density `h = (-x k)'` where `k` is
//! the Lévy density of `X`. These routines compute both by finite
//! differences so they can be checked against closed forms.

use crate::catalog::{ChainLevel, Density, DistributionSpec, LevyTriple};
use crate::quadrature::{integrate_with, Domain, KernelKind, QuadratureConfig, QuadratureError};
use crate::specfun::Complex;
use serde::Serialize;
use thiserror::Error;

/// Tolerance below which a scanned value counts as negative.
pub const POSITIVITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Two-point central difference, `O(h²)`.
    Central,
    /// Central differences at `h` and `h/2` combined, `O(h⁴)`.
    Richardson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeConfig {
    pub scheme: Scheme,
    pub base_step: f64,
}

impl DerivativeConfig {
    pub fn new(scheme: Scheme, base_step: f64) -> Result<Self, BdrvError> {
        if !(base_step > 0.0 && base_step.is_finite()) {
            return Err(BdrvError::InvalidStep(base_step));
        }
        Ok(DerivativeConfig { scheme, base_step })
    }

    pub fn central() -> Self {
        DerivativeConfig {
            scheme: Scheme::Central,
            base_step: f64::EPSILON.cbrt(),
        }
    }

    pub fn richardson() -> Self {
        DerivativeConfig {
            scheme: Scheme::Richardson,
            base_step: f64::EPSILON.powf(0.2),
        }
    }

    pub fn with_base_step(self, base_step: f64) -> Result<Self, BdrvError> {
        DerivativeConfig::new(self.scheme, base_step)
    }
}

impl Default for DerivativeConfig {
    fn default() -> Self {
        DerivativeConfig::richardson()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BdrvError {
    #[error("base step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("characteristic function vanishes or is not finite at t = {t}")]
    DegenerateCf { t: f64 },
    #[error("density is not finite at x = {x} (outside its support?)")]
    DegenerateDensity { x: f64 },
    #[error("x must be nonzero and finite, got {0}")]
    BadAbscissa(f64),
    #[error("scan grid is empty")]
    EmptyGrid,
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("shift quadrature did not converge (error estimate {0:e})")]
    NotConverged(f64),
}

fn derivative<F>(f: F, h: f64, scheme: Scheme) -> Result<Complex, BdrvError>
where
    F: Fn(f64) -> Result<Complex, BdrvError>,
{
    let d = |h: f64| -> Result<Complex, BdrvError> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
    match scheme {
        Scheme::Central => d(h),
        Scheme::Richardson => {
            let coarse = d(h)?;
            let fine = d(0.5 * h)?;
            Ok((4.0 * fine - coarse) / 3.0)
        }
    }
}

/// `t (log φ)'(t)` by finite differences of `log φ`.
///
/// The logarithm is taken of `φ(t + s)/φ(t)`, which stays near 1 on the
/// stencil, so no branch cut is crossed. Exactly 0 at `t = 0`.
pub fn bdrv_exponent<F>(cf: F, t: f64, cfg: &DerivativeConfig) -> Result<Complex, BdrvError>
where
    F: Fn(f64) -> Complex,
{
    DerivativeConfig::new(cfg.scheme, cfg.base_step)?;
    if t == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let check = |s: f64| {
        let v = cf(s);
        if v.norm() > 0.0 && v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(BdrvError::DegenerateCf { t: s })
        }
    };
    let center = check(t)?;
    let h = cfg.base_step * t.abs().max(1.0);
    let d = derivative(|s| Ok((check(t + s)? / center).ln()), h, cfg.scheme)?;
    Ok(t * d)
}

/// `d/dx [-x k(x)]` at `x != 0`, with a step proportional to `|x|`.
pub fn next_density<K>(k: K, x: f64, cfg: &DerivativeConfig) -> Result<f64, BdrvError>
where
    K: Fn(f64) -> f64,
{
    DerivativeConfig::new(cfg.scheme, cfg.base_step)?;
    if x == 0.0 || !x.is_finite() {
        return Err(BdrvError::BadAbscissa(x));
    }
    let g = |s: f64| {
        let y = x + s;
        let v = -y * k(y);
        if v.is_finite() {
            Ok(Complex::new(v, 0.0))
        } else {
            Err(BdrvError::DegenerateDensity { x: y })
        }
    };
    Ok(derivative(g, cfg.base_step * x.abs(), cfg.scheme)?.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityReport {
    pub min_value: f64,
    pub argmin: f64,
    pub all_nonnegative: bool,
}

/// Minimum of `d` over `grid`. NaN values count as failures.
pub fn positivity_scan<D>(d: D, grid: &[f64]) -> Result<PositivityReport, BdrvError>
where
    D: Fn(f64) -> f64,
{
    let mut best: Option<(f64, f64)> = None;
    for &x in grid {
        let v = d(x);
        let v = if v.is_nan() { f64::NEG_INFINITY } else { v };
        if best.is_none_or(|(m, _)| v < m) {
            best = Some((v, x));
        }
    }
    let (min_value, argmin) = best.ok_or(BdrvError::EmptyGrid)?;
    Ok(PositivityReport {
        min_value,
        argmin,
        all_nonnegative: min_value >= -POSITIVITY_SLACK,
    })
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Puts a positive grid on the support of `domain`.
pub fn grid_on(domain: Domain, positive: &[f64]) -> Vec<f64> {
    match domain {
        Domain::PosHalf => positive.to_vec(),
        Domain::NegHalf => positive.iter().map(|x| -x).collect(),
        Domain::PuncturedLine => positive
            .iter()
            .rev()
            .map(|x| -x)
            .chain(positive.iter().copied())
            .collect(),
    }
}

/// Shift `b` of the background driving variable.
///
/// Under the Kolmogorov convention `b = a`. Under the Lévy–Khintchine
/// convention `b = a + ∫ (x/(1+x²) - arctan x) h(x) dx`, with `h` obtained
/// numerically from the triple's density.
pub fn shift_transform(triple: &LevyTriple) -> Result<f64, BdrvError> {
    if triple.kernel_convention != KernelKind::Lk || triple.density == Density::Zero {
        return Ok(triple.shift);
    }
    let cfg = DerivativeConfig::richardson();
    let k = |x: f64| triple.density.eval(x);
    let f = |x: f64| {
        let h = next_density(k, x, &cfg).unwrap_or(f64::NAN);
        Complex::new((x / (1.0 + x * x) - x.atan()) * h, 0.0)
    };
    let qcfg = QuadratureConfig {
        abs_tol: 1e-10,
        rel_tol: 1e-10,
        tail: triple.density.tail(),
        ..Default::default()
    };
    let r = integrate_with(f, triple.support(), &qcfg)?;
    if !r.converged {
        return Err(BdrvError::NotConverged(r.abs_error_estimate));
    }
    Ok(triple.shift + r.value.re)
}

/// Lévy triple of the background driving variable: shift from
/// [`shift_transform`], Gaussian variance `2σ²`, closed-form density `h`.
pub fn bdrv_triple(spec: &DistributionSpec) -> Result<LevyTriple, BdrvError> {
    Ok(LevyTriple {
        shift: shift_transform(&spec.triple)?,
        gaussian_var: 2.0 * spec.triple.gaussian_var,
        density: spec.bdrv_chain.first().copied().unwrap_or(Density::Zero),
        kernel_convention: spec.triple.kernel_convention,
    })
}

/// Grid-positivity evidence for the Urbanik classes `L_0 ⊃ L_1 ⊃ L_2`.
///
/// `L_n` evidence means the first `n + 1` members of the closed-form chain
/// are nonnegative on the scan grid. A scan is evidence, not a proof.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UrbanikEvidence {
    pub distribution: &'static str,
    pub scans: Vec<(ChainLevel, PositivityReport)>,
    /// Highest `n` with `L_n` evidence; `None` if `h` itself fails.
    pub class_evidence: Option<usize>,
}

pub fn urbanik_evidence(
    spec: &DistributionSpec,
    positive_grid: &[f64],
) -> Result<UrbanikEvidence, BdrvError> {
    let grid = grid_on(spec.triple.support(), positive_grid);
    let mut scans = Vec::new();
    let mut class_evidence = None;
    let mut unbroken = true;
    for (n, d) in spec.bdrv_chain.iter().enumerate() {
        let report = positivity_scan(|x| d.eval(x), &grid)?;
        unbroken &= report.all_nonnegative;
        if unbroken {
            class_evidence = Some(n);
        }
        scans.push((d.level().unwrap_or(ChainLevel::H), report));
    }
    Ok(UrbanikEvidence {
        distribution: spec.id.token(),
        scans,
        class_evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{spec, DistributionId};

    #[test]
    fn exponent_of_hyperbolic_laws() {
        let s = spec(DistributionId::HypSine);
        let c = spec(DistributionId::HypCosine);
        let cfg = DerivativeConfig::default();
        let v = bdrv_exponent(|t| s.cf(t), 1.0, &cfg).unwrap();
        assert!((v.re + 0.313_035_285_499_331_3).abs() < 1e-10 && v.im.abs() < 1e-15);
        let v = bdrv_exponent(|t| c.cf(t), 1.0, &cfg).unwrap();
        assert!((v.re + 0.761_594_155_955_764_9).abs() < 1e-10);
        assert_eq!(
            bdrv_exponent(|t| s.cf(t), 0.0, &cfg).unwrap(),
            Complex::new(0.0, 0.0)
        );
    }

    #[test]
    fn central_is_second_order() {
        let c = spec(DistributionId::HypCosine);
        let exact = -2f64 * 2f64.tanh();
        let err = |h: f64| {
            let cfg = DerivativeConfig::new(Scheme::Central, h).unwrap();
            (bdrv_exponent(|t| c.cf(t), 2.0, &cfg).unwrap().re - exact).abs()
        };
        let ratio = err(1e-2) / err(5e-3);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn vanishing_cf_is_reported() {
        let r = bdrv_exponent(
            |t| Complex::new(t - 1.0, 0.0),
            1.0,
            &DerivativeConfig::default(),
        );
        assert!(matches!(r, Err(BdrvError::DegenerateCf { .. })));
        assert!(DerivativeConfig::new(Scheme::Central, 0.0).is_err());
    }

    #[test]
    fn next_density_examples() {
        let cfg = DerivativeConfig::default();
        let k = |x: f64| Density::HypSine(ChainLevel::K).eval(x);
        let v = next_density(k, 1.0, &cfg).unwrap();
        // (π/4) csch²(π/2)
        assert!((v / 0.148_300_911_638_751_03 - 1.0).abs() < 1e-9);
        assert!((next_density(k, -1.0, &cfg).unwrap() - v).abs() < 1e-15);
        let fs = |x: f64| {
            Density::FellerSpitzer {
                nu: 1.0,
                level: ChainLevel::K,
            }
            .eval(x)
        };
        let v = next_density(fs, 2.0, &cfg).unwrap();
        assert!((v / 0.093_239_033_304_733_38 - 1.0).abs() < 1e-9);
        assert!(matches!(
            next_density(k, 0.0, &cfg),
            Err(BdrvError::BadAbscissa(_))
        ));
    }

    #[test]
    fn positivity_examples() {
        let grid = log_grid(1e-3, 30.0, 200);
        let h = positivity_scan(|x| Density::HypSine(ChainLevel::H).eval(x), &grid).unwrap();
        assert!(h.all_nonnegative);
        let r = positivity_scan(|x| Density::HypSine(ChainLevel::R).eval(x), &grid).unwrap();
        assert!(r.all_nonnegative);
        let neg = positivity_scan(|_| -1.0, &grid).unwrap();
        assert!(!neg.all_nonnegative && neg.min_value == -1.0);
        assert!(matches!(
            positivity_scan(|_| 0.0, &[]),
            Err(BdrvError::EmptyGrid)
        ));
        let nan = positivity_scan(|_| f64::NAN, &[1.0]).unwrap();
        assert!(!nan.all_nonnegative);
    }

    #[test]
    fn symmetric_shift_is_unchanged() {
        let s = spec(DistributionId::HypSine);
        assert!(shift_transform(&s.triple).unwrap().abs() < 1e-10);
        let mut zero = s.triple;
        zero.density = Density::Zero;
        zero.shift = 0.25;
        assert_eq!(shift_transform(&zero).unwrap(), 0.25);
    }

    #[test]
    fn feller_spitzer_shift() {
        // mpmath: ∫ x/(1+x²) e^{-x}(I0 - I1) dx over (0, ∞)
        let s = spec(DistributionId::FellerSpitzer);
        let b = shift_transform(&s.triple).unwrap();
        assert!((b - 0.277_400_485_130_613_77).abs() < 1e-8, "{b}");
    }

    #[test]
    fn urbanik_levels() {
        let grid = log_grid(1e-3, 30.0, 100);
        let e = urbanik_evidence(&spec(DistributionId::HypCosine), &grid).unwrap();
        assert_eq!(e.class_evidence, Some(2));
        let e = urbanik_evidence(&spec(DistributionId::FellerSpitzer), &grid).unwrap();
        assert_eq!(e.class_evidence, Some(0));
    }

    #[test]
    fn grids() {
        let g = log_grid(1e-3, 30.0, 5);
        assert_eq!((g[0], g[4]), (1e-3, 30.0));
        assert_eq!(
            grid_on(Domain::PuncturedLine, &[1.0, 2.0]),
            vec![-2.0, -1.0, 1.0, 2.0]
        );
    }
}
