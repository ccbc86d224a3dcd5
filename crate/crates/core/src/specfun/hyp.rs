//! Hyperbolic functions with stable behavior near the origin and for
//! large arguments.

use super::SpecfunError;

const SERIES_BELOW: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hyperbolic {
    Coth,
    Csch,
    Sech,
    Tanh,
    /// `x^2 csch^2(x)`, continuous through 0 with value 1.
    CschSqTimesXSq,
}

/// Evaluates the named hyperbolic function. `coth` and `csch` reject 0.
pub fn hyp(kind: Hyperbolic, x: f64) -> Result<f64, SpecfunError> {
    if x.is_nan() {
        return Err(SpecfunError::domain("hyp", x, "x must not be NaN"));
    }
    match kind {
        Hyperbolic::Coth if x == 0.0 => Err(SpecfunError::domain("coth", x, "x != 0")),
        Hyperbolic::Csch if x == 0.0 => Err(SpecfunError::domain("csch", x, "x != 0")),
        Hyperbolic::Coth => Ok(coth(x)),
        Hyperbolic::Csch => Ok(csch(x)),
        Hyperbolic::Sech => Ok(sech(x)),
        Hyperbolic::Tanh => Ok(x.tanh()),
        Hyperbolic::CschSqTimesXSq => Ok(csch_sq_times_xsq(x)),
    }
}

pub(crate) fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

pub(crate) fn csch(x: f64) -> f64 {
    1.0 / x.sinh()
}

pub(crate) fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

pub(crate) fn csch_sq_times_xsq(x: f64) -> f64 {
    if x.abs() < SERIES_BELOW {
        let x2 = x * x;
        1.0 - x2 / 3.0 + x2 * x2 / 15.0 - 2.0 * x2 * x2 * x2 / 189.0
    } else {
        let r = x / x.sinh();
        r * r
    }
}

/// `x coth(x)`, equal to 1 at the origin.
pub(crate) fn x_coth_x(x: f64) -> f64 {
    if x.abs() < SERIES_BELOW {
        let x2 = x * x;
        1.0 + x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0
    } else {
        x / x.tanh()
    }
}
