//! Compensated exponential kernels `K(t, x)` of Lévy–Khintchine type
//! exponents.
//!
//! `cos(u) - 1` is evaluated as `-2 sin^2(u/2)` and `sin(u) - u` by its
//! Taylor series for `|u| < 1`, so the small-`u` behavior keeps full
//! relative precision at every `u`, not just below a switchover.

use crate::specfun::Complex;
use serde::{Deserialize, Serialize};
use std::fmt;

const SINL_SERIES_BELOW: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum KernelKind {
    /// `cos(tx) - 1`
    Cos1,
    /// `e^{itx} - 1 - itx`
    Kolm,
    /// `e^{itx} - 1 - itx/(1+x^2)`
    Lk,
    /// `e^{itx} - 1`
    Pois,
    /// `sin(tx) - tx`
    Sinl,
}

impl KernelKind {
    pub const ALL: [KernelKind; 5] = [
        KernelKind::Cos1,
        KernelKind::Kolm,
        KernelKind::Lk,
        KernelKind::Pois,
        KernelKind::Sinl,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            KernelKind::Cos1 => "COS1",
            KernelKind::Kolm => "KOLM",
            KernelKind::Lk => "LK",
            KernelKind::Pois => "POIS",
            KernelKind::Sinl => "SINL",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            KernelKind::Cos1 => "cos(tx) - 1",
            KernelKind::Kolm => "exp(itx) - 1 - itx",
            KernelKind::Lk => "exp(itx) - 1 - itx/(1+x^2)",
            KernelKind::Pois => "exp(itx) - 1",
            KernelKind::Sinl => "sin(tx) - tx",
        }
    }

    /// Whether the kernel takes complex values for real `t, x`.
    pub fn is_complex(self) -> bool {
        matches!(self, KernelKind::Kolm | KernelKind::Lk | KernelKind::Pois)
    }

    /// `K(t, x) - e^{itx}` (or minus `cos`/`sin` for the real kernels):
    /// the non-oscillatory part of the kernel.
    pub(crate) fn remainder(self, t: f64, x: f64) -> Complex {
        match self {
            KernelKind::Cos1 | KernelKind::Pois => Complex::new(-1.0, 0.0),
            KernelKind::Kolm => Complex::new(-1.0, -t * x),
            KernelKind::Lk => Complex::new(-1.0, -t * x / (1.0 + x * x)),
            KernelKind::Sinl => Complex::new(-t * x, 0.0),
        }
    }

    /// Maps `F = ∫ e^{itx} g(x) dx` to the oscillatory part of this kernel's
    /// integral against `g`.
    pub(crate) fn oscillatory_part(self, fourier: Complex) -> Complex {
        match self {
            KernelKind::Cos1 => Complex::new(fourier.re, 0.0),
            KernelKind::Sinl => Complex::new(fourier.im, 0.0),
            _ => fourier,
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `cos(u) - 1` without cancellation.
pub(crate) fn cos_m1(u: f64) -> f64 {
    let s = (0.5 * u).sin();
    -2.0 * s * s
}

/// `sin(u) - u` without cancellation.
pub(crate) fn sin_minus_id(u: f64) -> f64 {
    if u.abs() >= SINL_SERIES_BELOW {
        return u.sin() - u;
    }
    let u2 = u * u;
    let mut term = -u * u2 / 6.0;
    let mut sum = term;
    let mut k = 2.0;
    while term.abs() > f64::EPSILON * 1e-3 * sum.abs() {
        term *= -u2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        k += 1.0;
    }
    sum
}

/// Evaluates `K(t, x)` for the given kernel.
pub fn eval_kernel(kind: KernelKind, t: f64, x: f64) -> Complex {
    let u = t * x;
    match kind {
        KernelKind::Cos1 => Complex::new(cos_m1(u), 0.0),
        KernelKind::Sinl => Complex::new(sin_minus_id(u), 0.0),
        KernelKind::Pois => Complex::new(cos_m1(u), u.sin()),
        KernelKind::Kolm => Complex::new(cos_m1(u), sin_minus_id(u)),
        KernelKind::Lk => {
            let x2 = x * x;
            let compensation = if x2.is_finite() {
                u * x2 / (1.0 + x2)
            } else {
                u
            };
            Complex::new(cos_m1(u), sin_minus_id(u) + compensation)
        }
    }
}
