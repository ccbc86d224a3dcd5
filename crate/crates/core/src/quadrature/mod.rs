//! Adaptive quadrature over half-lines and the punctured real line.
//!
//! Integrands are complex-valued. A half-line `(0, ∞)` is covered by a
//! near-origin panel `[0, origin_panel]`, geometrically growing panels up to
//! `tail_start` (capped at a half-period when the oscillation frequency
//! exceeds 4), and a tail panel carried by a change of variables. The
//! tail map depends on [`TailKind`]:
//!
//! * `Exponential`: `x = X + u/(1-u)`.
//! * `Algebraic`: `x = X/(1-u)^2`, which makes `x^{-3/2}` amplitudes bounded
//!   in `u`. Oscillatory kernels on such tails are split by
//!   [`integrate_kernel`] into a Fourier part, summed over half-periods with
//!   epsilon extrapolation, and a non-oscillatory remainder.

mod adaptive;
mod extrapolation;
mod kernel;
mod oscillatory;

pub use kernel::{eval_kernel, KernelKind};

use crate::specfun::Complex;
use adaptive::{integrate_panels, Map, PanelSpec};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_ABS_TOL: f64 = 1e-11;
pub const DEFAULT_REL_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

const OSCILLATION_CAP_ABOVE: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    /// `(0, ∞)`
    PosHalf,
    /// `(-∞, 0)`
    NegHalf,
    /// `ℝ \ {0}`, integrated as the sum of both half-lines.
    PuncturedLine,
}

impl Domain {
    pub fn contains(self, x: f64) -> bool {
        match self {
            Domain::PosHalf => x > 0.0,
            Domain::NegHalf => x < 0.0,
            Domain::PuncturedLine => x != 0.0 && !x.is_nan(),
        }
    }

    pub fn notation(self) -> &'static str {
        match self {
            Domain::PosHalf => "(0,∞)",
            Domain::NegHalf => "(-∞,0)",
            Domain::PuncturedLine => "ℝ\\{0}",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TailKind {
    Exponential,
    Algebraic,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("integrand is not finite at x = {x:e}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: Complex,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    fn zero() -> Self {
        QuadratureResult {
            value: Complex::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    fn combine(self, other: QuadratureResult) -> Self {
        QuadratureResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    fn scaled(self, c: f64) -> Self {
        QuadratureResult {
            value: self.value * c,
            abs_error_estimate: self.abs_error_estimate * c.abs(),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Refinement budget per integral, in integrand evaluations.
    pub max_evaluations: usize,
    /// Angular frequency of the integrand's oscillation, if known.
    pub frequency: f64,
    pub tail: TailKind,
    /// Abscissa where the mapped tail panel begins.
    pub tail_start: f64,
    pub origin_panel: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: DEFAULT_ABS_TOL,
            rel_tol: DEFAULT_REL_TOL,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            frequency: 0.0,
            tail: TailKind::Exponential,
            tail_start: 40.0,
            origin_panel: 1e-3,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol >= 0.0) {
            return Err(QuadratureError::InvalidConfig(format!(
                "tolerances must be positive (abs_tol = {}, rel_tol = {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if !(self.tail_start > self.origin_panel) || !(self.origin_panel > 0.0) {
            return Err(QuadratureError::InvalidConfig(format!(
                "need 0 < origin_panel < tail_start (got {} and {})",
                self.origin_panel, self.tail_start
            )));
        }
        if !self.frequency.is_finite() {
            return Err(QuadratureError::InvalidConfig(
                "frequency must be finite".into(),
            ));
        }
        Ok(())
    }

    fn halved(&self) -> Self {
        QuadratureConfig {
            abs_tol: self.abs_tol * 0.5,
            max_evaluations: self.max_evaluations / 2,
            ..*self
        }
    }
}

/// Panels covering `[0, tail_start]`.
fn core_panels(cfg: &QuadratureConfig) -> Vec<PanelSpec> {
    let cap = if cfg.frequency.abs() > OSCILLATION_CAP_ABOVE {
        PI / cfg.frequency.abs()
    } else {
        f64::INFINITY
    };
    let mut panels = vec![PanelSpec {
        a: 0.0,
        b: cfg.origin_panel,
        map: Map::Identity,
    }];
    let mut lo = cfg.origin_panel;
    while lo < cfg.tail_start {
        let hi = (2.0 * lo).min(cfg.tail_start);
        let pieces = ((hi - lo) / cap).ceil().max(1.0) as usize;
        let width = (hi - lo) / pieces as f64;
        let edge = |k: usize| {
            if k == pieces {
                hi
            } else {
                lo + k as f64 * width
            }
        };
        for k in 0..pieces {
            panels.push(PanelSpec {
                a: edge(k),
                b: edge(k + 1),
                map: Map::Identity,
            });
        }
        lo = hi;
    }
    panels
}

fn tail_panels(cfg: &QuadratureConfig) -> Vec<PanelSpec> {
    let map = match cfg.tail {
        TailKind::Exponential => Map::ExpTail {
            start: cfg.tail_start,
        },
        TailKind::Algebraic => Map::PowerTail {
            start: cfg.tail_start,
        },
    };
    vec![
        PanelSpec {
            a: 0.0,
            b: 0.5,
            map,
        },
        PanelSpec {
            a: 0.5,
            b: 1.0,
            map,
        },
    ]
}

fn run_panels<F>(
    f: &F,
    panels: &[PanelSpec],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> Complex + ?Sized,
{
    let out = integrate_panels(f, panels, cfg.abs_tol, cfg.rel_tol, cfg.max_evaluations)?;
    Ok(QuadratureResult {
        value: out.value,
        abs_error_estimate: out.error,
        evaluations: out.evaluations,
        converged: out.converged,
    })
}

fn positive_half<F>(f: &F, cfg: &QuadratureConfig) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> Complex + ?Sized,
{
    let mut panels = core_panels(cfg);
    panels.extend(tail_panels(cfg));
    run_panels(f, &panels, cfg)
}

/// Integrates `f` over `domain` with default settings and the given
/// tolerances.
pub fn integrate<F>(
    f: F,
    domain: Domain,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> Complex,
{
    integrate_with(
        f,
        domain,
        &QuadratureConfig::with_tolerances(abs_tol, rel_tol),
    )
}

/// Integrates `f` over `domain`.
///
/// Budget exhaustion is reported through `converged = false`, not as an
/// error. A NaN or infinite integrand value aborts with
/// [`QuadratureError::NonFinite`].
pub fn integrate_with<F>(
    f: F,
    domain: Domain,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> Complex,
{
    cfg.validate()?;
    match domain {
        Domain::PosHalf => positive_half(&f, cfg),
        Domain::NegHalf => positive_half(&|x: f64| f(-x), cfg),
        Domain::PuncturedLine => {
            let half = cfg.halved();
            let neg = positive_half(&|x: f64| f(-x), &half)?;
            let pos = positive_half(&f, &half)?;
            Ok(neg.combine(pos))
        }
    }
}

/// Integrates `K(t, x) · density(x)` over `domain`.
///
/// With an exponential tail this is [`integrate_with`] on the product. With
/// an algebraic tail and `t != 0` the part beyond `tail_start` is split into
/// `∫ e^{itx} density` (half-period summation with extrapolation) and the
/// kernel's non-oscillatory remainder.
pub fn integrate_kernel<D>(
    kind: KernelKind,
    t: f64,
    density: D,
    domain: Domain,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    D: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !t.is_finite() {
        return Err(QuadratureError::InvalidConfig(format!(
            "t must be finite, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(QuadratureResult::zero());
    }
    let mut cfg = *cfg;
    cfg.frequency = t;
    // K(t, -x) = K(-t, x) for every kernel, so the negative half-line is the
    // positive one with t and the density reflected.
    match domain {
        Domain::PosHalf => kernel_half(kind, t, &density, &cfg),
        Domain::NegHalf => kernel_half(kind, -t, &|x: f64| density(-x), &cfg),
        Domain::PuncturedLine => {
            let half = cfg.halved();
            let neg = kernel_half(kind, -t, &|x: f64| density(-x), &half)?;
            let pos = kernel_half(kind, t, &density, &half)?;
            Ok(neg.combine(pos))
        }
    }
}

fn kernel_half<D>(
    kind: KernelKind,
    t: f64,
    density: &D,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    D: Fn(f64) -> f64 + ?Sized,
{
    let product = |x: f64| eval_kernel(kind, t, x) * density(x);
    match cfg.tail {
        TailKind::Exponential => positive_half(&product, cfg),
        TailKind::Algebraic => {
            let part = QuadratureConfig {
                abs_tol: cfg.abs_tol / 3.0,
                max_evaluations: cfg.max_evaluations / 3,
                ..*cfg
            };
            let near = run_panels(&product, &core_panels(&part), &part)?;
            let remainder = |x: f64| kind.remainder(t, x) * density(x);
            let rest = run_panels(&remainder, &tail_panels(&part), &part)?;
            let fourier = oscillatory::fourier_tail(
                density,
                t,
                part.tail_start,
                part.abs_tol,
                part.max_evaluations,
            )?;
            let osc = QuadratureResult {
                value: kind.oscillatory_part(fourier.value),
                abs_error_estimate: fourier.error,
                evaluations: fourier.evaluations,
                converged: fourier.converged,
            };
            Ok(near.combine(rest).combine(osc))
        }
    }
}

/// Integrates `c · f` by integrating `f` and scaling; used by property
/// tests of linearity.
#[doc(hidden)]
pub fn integrate_scaled<F>(
    f: F,
    c: f64,
    domain: Domain,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> Complex,
{
    integrate_with(f, domain, cfg).map(|r| r.scaled(c))
}
