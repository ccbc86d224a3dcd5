//! Closed-form Lévy densities and their background-driving chains.
//!
//! Each variant names a family and a [`ChainLevel`]: `k` is the Lévy
//! density of the distribution itself, `h = (-x k)'` the Lévy density of its
//! background driving variable, then `g = (-x h)'` and `r = (-x g)'`.
//! Densities are stored on the full line; half-line identity integrands
//! fold the even ones with a factor 2 (see `IdentityCase`).

use crate::quadrature::{Domain, TailKind};
use crate::specfun::{
    bessel_i0_minus_i1_scaled, bessel_i_scaled, coth, csch, csch_sq_times_xsq, sech, x_coth_x,
    BesselOrder,
};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

const HYPERBOLIC_UNDERFLOW: f64 = 500.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainLevel {
    K,
    H,
    G,
    R,
}

impl ChainLevel {
    pub fn name(self) -> &'static str {
        match self {
            ChainLevel::K => "k",
            ChainLevel::H => "h",
            ChainLevel::G => "g",
            ChainLevel::R => "r",
        }
    }

    pub fn next(self) -> Option<ChainLevel> {
        match self {
            ChainLevel::K => Some(ChainLevel::H),
            ChainLevel::H => Some(ChainLevel::G),
            ChainLevel::G => Some(ChainLevel::R),
            ChainLevel::R => None,
        }
    }
}

impl fmt::Display for ChainLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    Zero,
    HypSine(ChainLevel),
    HypCosine(ChainLevel),
    HypTangent(ChainLevel),
    /// Log-gamma with shape `alpha`; supported on `(-∞, 0)`.
    LogGamma {
        alpha: f64,
        level: ChainLevel,
    },
    /// Negative log-gamma with shape `beta`; supported on `(0, ∞)`.
    NegLogGamma {
        beta: f64,
        level: ChainLevel,
    },
    Logistic {
        alpha: f64,
        level: ChainLevel,
    },
    /// Generalized z: `weight` times the log-gamma density (shape `b1`) on
    /// the negative axis plus the negative log-gamma density (shape `b2`)
    /// on the positive axis, both dilated by `scale = a/(2π)`.
    GeneralizedZ {
        scale: f64,
        b1: f64,
        b2: f64,
        weight: f64,
        level: ChainLevel,
    },
    Meixner {
        a: f64,
        b: f64,
        d: f64,
        level: ChainLevel,
    },
    FellerSpitzer {
        nu: f64,
        level: ChainLevel,
    },
}

/// `e^{-αw}/(w(1-e^{-w}))` and its `h`, for `w > 0`.
fn log_gamma_tail(alpha: f64, w: f64, level: ChainLevel) -> f64 {
    let one_minus = -(-w).exp_m1();
    let e = (-alpha * w).exp();
    match level {
        ChainLevel::K => e / (w * one_minus),
        ChainLevel::H => e * (alpha * one_minus + (-w).exp()) / (one_minus * one_minus),
        _ => f64::NAN,
    }
}

impl Density {
    pub fn level(&self) -> Option<ChainLevel> {
        match *self {
            Density::Zero => None,
            Density::HypSine(l) | Density::HypCosine(l) | Density::HypTangent(l) => Some(l),
            Density::LogGamma { level, .. }
            | Density::NegLogGamma { level, .. }
            | Density::Logistic { level, .. }
            | Density::GeneralizedZ { level, .. }
            | Density::Meixner { level, .. }
            | Density::FellerSpitzer { level, .. } => Some(level),
        }
    }

    /// The same family one step further down the chain.
    pub fn with_level(&self, level: ChainLevel) -> Density {
        match *self {
            Density::Zero => Density::Zero,
            Density::HypSine(_) => Density::HypSine(level),
            Density::HypCosine(_) => Density::HypCosine(level),
            Density::HypTangent(_) => Density::HypTangent(level),
            Density::LogGamma { alpha, .. } => Density::LogGamma { alpha, level },
            Density::NegLogGamma { beta, .. } => Density::NegLogGamma { beta, level },
            Density::Logistic { alpha, .. } => Density::Logistic { alpha, level },
            Density::GeneralizedZ {
                scale,
                b1,
                b2,
                weight,
                ..
            } => Density::GeneralizedZ {
                scale,
                b1,
                b2,
                weight,
                level,
            },
            Density::Meixner { a, b, d, .. } => Density::Meixner { a, b, d, level },
            Density::FellerSpitzer { nu, .. } => Density::FellerSpitzer { nu, level },
        }
    }

    pub fn support(&self) -> Domain {
        match self {
            Density::LogGamma { .. } => Domain::NegHalf,
            Density::NegLogGamma { .. } | Density::FellerSpitzer { .. } => Domain::PosHalf,
            _ => Domain::PuncturedLine,
        }
    }

    /// Decay class of the density at infinity.
    pub fn tail(&self) -> TailKind {
        match self {
            Density::FellerSpitzer { .. } => TailKind::Algebraic,
            _ => TailKind::Exponential,
        }
    }

    /// Whether the density is even in `x`.
    pub fn is_even(&self) -> bool {
        matches!(
            self,
            Density::Zero
                | Density::HypSine(_)
                | Density::HypCosine(_)
                | Density::HypTangent(_)
                | Density::Logistic { .. }
        ) || matches!(self, Density::Meixner { b, .. } if *b == 0.0)
            || matches!(self, Density::GeneralizedZ { b1, b2, .. } if b1 == b2)
    }

    /// Evaluates the density; zero outside the support. Undefined at 0.
    pub fn eval(&self, x: f64) -> f64 {
        if !self.support().contains(x) {
            return 0.0;
        }
        let ax = x.abs();
        // Beyond this the hyperbolic chain values are below e^{-780}, which
        // underflows, while the intermediate products would overflow.
        if matches!(self, Density::HypSine(_) | Density::HypCosine(_)) && ax > HYPERBOLIC_UNDERFLOW
        {
            return 0.0;
        }
        match *self {
            Density::Zero => 0.0,
            Density::HypSine(level) => {
                let y = 0.5 * PI * ax;
                let csch2 = csch_sq_times_xsq(y) / (y * y);
                match level {
                    ChainLevel::K => 1.0 / (ax * (PI * ax).exp_m1()),
                    ChainLevel::H => 0.25 * PI * csch2,
                    ChainLevel::G => 0.25 * PI * csch2 * (2.0 * x_coth_x(y) - 1.0),
                    ChainLevel::R => {
                        let yc = x_coth_x(y);
                        let bracket = 8.0 * yc * yc + 4.0 * csch_sq_times_xsq(y) - 12.0 * yc + 2.0;
                        0.125 * PI * csch2 * bracket
                    }
                }
            }
            Density::HypCosine(level) => {
                let y = 0.5 * PI * ax;
                match level {
                    ChainLevel::K => 0.5 / (ax * y.sinh()),
                    ChainLevel::H => 0.25 * PI * coth(y) * csch(y),
                    ChainLevel::G => {
                        let yc = x_coth_x(y);
                        0.25 * PI * csch(y) * (yc * yc - yc + csch_sq_times_xsq(y)) / y
                    }
                    ChainLevel::R => {
                        let yc = x_coth_x(y);
                        let c2 = csch_sq_times_xsq(y);
                        let bracket = 4.0 * yc * yc * yc + yc * (20.0 * c2 + 4.0)
                            - 12.0 * yc * yc
                            - 12.0 * c2;
                        PI / 16.0 * csch(y) * bracket / y
                    }
                }
            }
            Density::HypTangent(level) => {
                let z = 0.25 * PI * ax;
                match level {
                    ChainLevel::K => 1.0 / (ax * ((2.0 * z).exp() + 1.0)),
                    ChainLevel::H => {
                        let s = sech(z);
                        0.125 * PI * s * s
                    }
                    _ => f64::NAN,
                }
            }
            Density::LogGamma { alpha, level } => log_gamma_tail(alpha, ax, level),
            Density::NegLogGamma { beta, level } => log_gamma_tail(beta, ax, level),
            Density::Logistic { alpha, level } => {
                let w = PI * ax;
                match level {
                    ChainLevel::K => PI * log_gamma_tail(alpha, w, ChainLevel::K),
                    ChainLevel::H => PI * log_gamma_tail(alpha, w, ChainLevel::H),
                    _ => f64::NAN,
                }
            }
            Density::GeneralizedZ {
                scale,
                b1,
                b2,
                weight,
                level,
            } => {
                let shape = if x < 0.0 { b1 } else { b2 };
                match level {
                    // k_{cX}(x) = k_X(x/c)/c
                    ChainLevel::K | ChainLevel::H => {
                        weight * log_gamma_tail(shape, ax / scale, level) / scale
                    }
                    _ => f64::NAN,
                }
            }
            Density::Meixner { a, b, d, level } => {
                let s = x.signum();
                let decay = (b * x - PI * ax) / a;
                let denom = -(-2.0 * PI * ax / a).exp_m1();
                match level {
                    ChainLevel::K => 2.0 * d * decay.exp() / (ax * denom),
                    ChainLevel::H => {
                        let fast = (b * x - 3.0 * PI * ax) / a;
                        2.0 * d / a * ((PI - b * s) * decay.exp() + (PI + b * s) * fast.exp())
                            / (denom * denom)
                    }
                    _ => f64::NAN,
                }
            }
            Density::FellerSpitzer { nu, level } => match level {
                ChainLevel::K => {
                    nu * bessel_i_scaled(BesselOrder::Zero, ax).unwrap_or(f64::NAN) / ax
                }
                ChainLevel::H => nu * bessel_i0_minus_i1_scaled(ax).unwrap_or(f64::NAN),
                _ => f64::NAN,
            },
        }
    }

    /// Human-readable formula of the density.
    pub fn formula(&self) -> String {
        let s = match *self {
            Density::Zero => "0",
            Density::HypSine(ChainLevel::K) => "1/(|x|(e^{π|x|}-1))",
            Density::HypSine(ChainLevel::H) => "(π/4)csch²(πx/2)",
            Density::HypSine(ChainLevel::G) => "(π/4)csch²(πx/2)(πx·coth(πx/2)-1)",
            Density::HypSine(ChainLevel::R) => {
                "(π/8)csch²(πx/2)[2π²x²coth²(πx/2)+π²x²csch²(πx/2)-6πx·coth(πx/2)+2]"
            }
            Density::HypCosine(ChainLevel::K) => "1/(2|x|sinh(π|x|/2))",
            Density::HypCosine(ChainLevel::H) => "(π/4)cosh(πx/2)/sinh²(πx/2)",
            Density::HypCosine(ChainLevel::G) => {
                "(π/8)csch(πx/2)[πx·coth²(πx/2)-2coth(πx/2)+πx·csch²(πx/2)]"
            }
            Density::HypCosine(ChainLevel::R) => {
                "(π/16)csch(πx/2)[(πx)²coth³(πx/2)+coth(πx/2)(5(πx)²csch²(πx/2)+4)-6πx·coth²(πx/2)-6πx·csch²(πx/2)]"
            }
            Density::HypTangent(ChainLevel::K) => "e^{-π|x|/4}/(2|x|cosh(π|x|/4))",
            Density::HypTangent(_) => "(π/8)sech²(πx/4)",
            Density::LogGamma { level: ChainLevel::K, .. } => "e^{αx}/(|x|(1-e^x)), x<0",
            Density::LogGamma { .. } => "e^{αx}(α(1-e^x)+e^x)/(1-e^x)², x<0",
            Density::NegLogGamma { level: ChainLevel::K, .. } => "e^{-βx}/(x(1-e^{-x})), x>0",
            Density::NegLogGamma { .. } => "e^{-βx}(β(1-e^{-x})+e^{-x})/(1-e^{-x})², x>0",
            Density::Logistic { level: ChainLevel::K, .. } => "e^{-απ|x|}/(|x|(1-e^{-π|x|}))",
            Density::Logistic { .. } => "(π/4)e^{-(α-1)π|x|}(α+(1-α)e^{-π|x|})/sinh²(π|x|/2)",
            Density::GeneralizedZ { level: ChainLevel::K, .. } => {
                "2d[e^{b₁x/c}/(|x|(1-e^{x/c})) 1(x<0) + e^{-b₂x/c}/(x(1-e^{-x/c})) 1(x>0)], c=a/2π"
            }
            Density::GeneralizedZ { .. } => {
                "(2d/c)[e^{b₁u}(b₁(1-e^u)+e^u)/(1-e^u)² 1(u<0) + e^{-b₂u}(b₂(1-e^{-u})+e^{-u})/(1-e^{-u})² 1(u>0)], u=x/c"
            }
            Density::Meixner { level: ChainLevel::K, .. } => "d·e^{bx/a}/(x·sinh(πx/a))",
            Density::Meixner { .. } => "(d/2a)e^{bx/a}[e^{πx/a}(π-b)+e^{-πx/a}(π+b)]/sinh²(πx/a)",
            Density::FellerSpitzer { level: ChainLevel::K, .. } => "ν·e^{-x}I₀(x)/x, x>0",
            Density::FellerSpitzer { .. } => "ν·e^{-x}(I₀(x)-I₁(x)), x>0",
        };
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_sine_levy_density_at_one() {
        // 1/(e^π - 1)
        let v = Density::HypSine(ChainLevel::K).eval(1.0);
        assert!((v - 0.045_165_705_363_684_115).abs() < 1e-16);
    }

    #[test]
    fn half_line_folded_h_at_one() {
        // (π/2) csch²(π/2)
        let v = 2.0 * Density::HypSine(ChainLevel::H).eval(1.0);
        assert!((v - 0.296_601_823_277_502_07).abs() < 1e-15);
    }

    #[test]
    fn even_densities_are_symmetric() {
        let even = [
            Density::HypSine(ChainLevel::R),
            Density::HypCosine(ChainLevel::H),
            Density::HypCosine(ChainLevel::G),
            Density::HypCosine(ChainLevel::R),
            Density::HypTangent(ChainLevel::H),
            Density::Logistic {
                alpha: 0.7,
                level: ChainLevel::H,
            },
            Density::Meixner {
                a: 1.0,
                b: 0.0,
                d: 0.5,
                level: ChainLevel::H,
            },
        ];
        for d in even {
            assert!(d.is_even());
            for &x in &[1e-6, 0.3, 2.0, 17.0] {
                assert_eq!(d.eval(x), d.eval(-x), "{d:?} at {x}");
            }
        }
    }

    #[test]
    fn support_is_respected() {
        let lg = Density::LogGamma {
            alpha: 1.5,
            level: ChainLevel::H,
        };
        assert_eq!(lg.eval(1.0), 0.0);
        assert!(lg.eval(-1.0) > 0.0);
        let fs = Density::FellerSpitzer {
            nu: 1.0,
            level: ChainLevel::H,
        };
        assert_eq!(fs.eval(-2.0), 0.0);
        assert!((fs.eval(1e-12) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn logistic_forms_agree() {
        // Stored form vs the sinh² form with α + (1-α)e^{-π|x|}.
        let alpha = 1.5;
        let d = Density::Logistic {
            alpha,
            level: ChainLevel::H,
        };
        for &x in &[0.01, 0.5, 3.0] {
            let w = PI * x;
            let s = (0.5 * w).sinh();
            let other =
                0.25 * PI * (-(alpha - 1.0) * w).exp() * (alpha + (1.0 - alpha) * (-w).exp())
                    / (s * s);
            assert!((d.eval(x) / other - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn stable_at_extreme_abscissae() {
        let all = [
            Density::HypSine(ChainLevel::R),
            Density::HypCosine(ChainLevel::R),
            Density::HypTangent(ChainLevel::H),
            Density::LogGamma {
                alpha: 0.2,
                level: ChainLevel::H,
            },
            Density::NegLogGamma {
                beta: 0.2,
                level: ChainLevel::H,
            },
            Density::Logistic {
                alpha: 0.3,
                level: ChainLevel::H,
            },
            Density::GeneralizedZ {
                scale: 1.0,
                b1: 1.0,
                b2: 2.0,
                weight: 1.0,
                level: ChainLevel::H,
            },
            Density::Meixner {
                a: 2.0,
                b: 3.0,
                d: 0.5,
                level: ChainLevel::H,
            },
            Density::FellerSpitzer {
                nu: 1.0,
                level: ChainLevel::H,
            },
        ];
        for d in all {
            for &x in &[1e-12, 1e-6, 500.0, 1e5, 1e300, -1e-12, -800.0, -1e300] {
                let v = d.eval(x);
                assert!(v.is_finite() && v >= 0.0, "{d:?} at {x}: {v}");
            }
        }
    }
}
