//! Fourier-type tails `∫_start^∞ e^{iωx} g(x) dx` for amplitudes that decay
//! only algebraically.
//!
//! The tail is cut into half-periods of `e^{iωx}`; the partial sums then
//! alternate in sign around the limit and are accelerated with the epsilon
//! algorithm.

use super::adaptive::{integrate_panels, Map, PanelSpec};
use super::extrapolation::wynn_epsilon;
use super::QuadratureError;
use crate::specfun::Complex;
use std::f64::consts::PI;

const MAX_CYCLES: usize = 2000;
const MIN_CYCLES: usize = 8;
const WINDOW: usize = 40;

pub(crate) struct FourierTail {
    pub value: Complex,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

pub(crate) fn fourier_tail<G>(
    g: &G,
    omega: f64,
    start: f64,
    abs_tol: f64,
    max_evaluations: usize,
) -> Result<FourierTail, QuadratureError>
where
    G: Fn(f64) -> f64 + ?Sized,
{
    debug_assert!(omega != 0.0);
    let half_period = PI / omega.abs();
    let integrand = |x: f64| Complex::new(0.0, omega * x).exp() * g(x);
    let cycle_tol = abs_tol * 1e-3;

    let mut sums = Vec::new();
    let mut acc = Complex::new(0.0, 0.0);
    let mut cycle_err = 0.0;
    let mut evaluations = 0;
    let mut estimate = (Complex::new(0.0, 0.0), f64::INFINITY);

    for n in 0..MAX_CYCLES {
        let a = start + n as f64 * half_period;
        let panel = [PanelSpec {
            a,
            b: a + half_period,
            map: Map::Identity,
        }];
        let budget = max_evaluations.saturating_sub(evaluations);
        let out = integrate_panels(&integrand, &panel, cycle_tol, 0.0, budget.min(20_000))?;
        evaluations += out.evaluations;
        acc += out.value;
        cycle_err += out.error;
        sums.push(acc);

        if sums.len() >= MIN_CYCLES {
            let window = &sums[sums.len().saturating_sub(WINDOW)..];
            estimate = wynn_epsilon(window);
            // Terms that have died out need no extrapolation.
            if out.value.norm() <= f64::EPSILON * acc.norm().max(abs_tol) {
                estimate = (acc, out.value.norm());
            }
            if estimate.1 + cycle_err <= abs_tol {
                return Ok(FourierTail {
                    value: estimate.0,
                    error: estimate.1 + cycle_err,
                    evaluations,
                    converged: true,
                });
            }
        }
        if evaluations >= max_evaluations {
            break;
        }
    }
    Ok(FourierTail {
        value: estimate.0,
        error: estimate.1 + cycle_err,
        evaluations,
        converged: false,
    })
}
