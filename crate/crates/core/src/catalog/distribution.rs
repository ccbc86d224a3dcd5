//! Catalog distributions: parameters, characteristic functions, Lévy
//! triples and closed-form background-driving transforms.

use super::density::{ChainLevel, Density};
use super::CatalogError;
use crate::quadrature::{integrate_with, Domain, KernelKind, QuadratureConfig, TailKind};
use crate::specfun::{
    bessel_i_scaled, digamma, log_beta, log_gamma, x_coth_x, BesselOrder, Complex,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// Parameter overrides keyed by parameter name.
pub type ParamOverrides = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionId {
    HypSine,
    HypCosine,
    HypTangent,
    LogGamma,
    NegLogGamma,
    Logistic,
    GeneralizedZ,
    Meixner,
    FellerSpitzer,
}

impl DistributionId {
    pub const ALL: [DistributionId; 9] = [
        DistributionId::HypSine,
        DistributionId::HypCosine,
        DistributionId::HypTangent,
        DistributionId::LogGamma,
        DistributionId::NegLogGamma,
        DistributionId::Logistic,
        DistributionId::GeneralizedZ,
        DistributionId::Meixner,
        DistributionId::FellerSpitzer,
    ];

    pub fn token(self) -> &'static str {
        match self {
            DistributionId::HypSine => "hyp_sine",
            DistributionId::HypCosine => "hyp_cosine",
            DistributionId::HypTangent => "hyp_tangent",
            DistributionId::LogGamma => "log_gamma",
            DistributionId::NegLogGamma => "neg_log_gamma",
            DistributionId::Logistic => "logistic",
            DistributionId::GeneralizedZ => "generalized_z",
            DistributionId::Meixner => "meixner",
            DistributionId::FellerSpitzer => "feller_spitzer",
        }
    }

    /// Parameters with their default values.
    pub fn default_parameters(self) -> Vec<Parameter> {
        use Constraint::*;
        let p = Parameter::new;
        match self {
            DistributionId::HypSine | DistributionId::HypCosine | DistributionId::HypTangent => {
                vec![]
            }
            DistributionId::LogGamma => vec![p("alpha", 1.5, Positive), p("lambda", 1.0, Positive)],
            DistributionId::NegLogGamma => vec![p("beta", 1.5, Positive)],
            DistributionId::Logistic => vec![p("alpha", 1.5, Positive)],
            DistributionId::GeneralizedZ => vec![
                p("a", 2.0 * PI, Positive),
                p("b1", 1.0, Positive),
                p("b2", 2.0, Positive),
                p("d", 0.5, Positive),
                p("m", 0.0, Real),
            ],
            DistributionId::Meixner => vec![
                p("a", 2.0, Positive),
                p("b", PI / 2.0, OpenInterval(-PI, PI)),
                p("d", 0.5, Positive),
                p("m", 0.0, Real),
            ],
            DistributionId::FellerSpitzer => vec![p("nu", 1.0, Positive)],
        }
    }
}

impl fmt::Display for DistributionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for DistributionId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DistributionId::ALL
            .into_iter()
            .find(|id| id.token() == s)
            .ok_or_else(|| CatalogError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "bounds")]
pub enum Constraint {
    Positive,
    Real,
    OpenInterval(f64, f64),
}

impl Constraint {
    pub fn admits(self, v: f64) -> bool {
        match self {
            Constraint::Positive => v.is_finite() && v > 0.0,
            Constraint::Real => v.is_finite(),
            Constraint::OpenInterval(lo, hi) => v > lo && v < hi,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Positive => f.write_str("> 0"),
            Constraint::Real => f.write_str("real"),
            Constraint::OpenInterval(lo, hi) => write!(f, "in ({lo}, {hi})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Parameter {
    pub name: &'static str,
    pub value: f64,
    pub constraint: Constraint,
}

impl Parameter {
    pub fn new(name: &'static str, value: f64, constraint: Constraint) -> Self {
        Parameter {
            name,
            value,
            constraint,
        }
    }
}

/// Applies `overrides` to `params`, checking names and ranges.
pub(crate) fn apply_overrides(
    target: &str,
    mut params: Vec<Parameter>,
    overrides: &ParamOverrides,
) -> Result<Vec<Parameter>, CatalogError> {
    let valid = if params.is_empty() {
        "none".to_string()
    } else {
        params.iter().map(|p| p.name).collect::<Vec<_>>().join(", ")
    };
    for (name, &value) in overrides {
        let p = params.iter_mut().find(|p| p.name == name).ok_or_else(|| {
            CatalogError::UnknownParameter {
                target: target.to_string(),
                name: name.clone(),
                valid: valid.clone(),
            }
        })?;
        if !p.constraint.admits(value) {
            return Err(CatalogError::OutOfRange {
                name: name.clone(),
                value,
                constraint: p.constraint.to_string(),
            });
        }
        p.value = value;
    }
    Ok(params)
}

pub(crate) fn value_of(params: &[Parameter], name: &str) -> f64 {
    params
        .iter()
        .find(|p| p.name == name)
        .map(|p| p.value)
        .unwrap_or_else(|| panic!("parameter {name} missing"))
}

/// `[shift, Gaussian variance, Lévy density]` together with the kernel
/// convention under which the shift is meant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevyTriple {
    pub shift: f64,
    pub gaussian_var: f64,
    #[serde(skip)]
    pub density: Density,
    pub kernel_convention: KernelKind,
}

impl LevyTriple {
    pub fn support(&self) -> Domain {
        self.density.support()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    HypSine,
    HypCosine,
    HypTangent,
    LogGamma {
        alpha: f64,
        lambda: f64,
    },
    NegLogGamma {
        beta: f64,
    },
    Logistic {
        alpha: f64,
    },
    GeneralizedZ {
        a: f64,
        b1: f64,
        b2: f64,
        d: f64,
        m: f64,
    },
    Meixner {
        a: f64,
        b: f64,
        d: f64,
        m: f64,
    },
    FellerSpitzer {
        nu: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSpec {
    pub id: DistributionId,
    pub parameters: Vec<Parameter>,
    pub triple: LevyTriple,
    /// Closed-form chain `[h, g, r]`, possibly shorter.
    pub bdrv_chain: Vec<Density>,
    pub notes: &'static str,
    family: Family,
}

fn cx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

// Catalog parameters keep every argument in the right half-plane, so the
// domain errors of the special functions cannot occur here.
fn lgamma(z: Complex) -> Complex {
    log_gamma(z).expect("argument in the right half-plane")
}

fn psi(z: Complex) -> Complex {
    digamma(z).expect("argument in the right half-plane")
}

/// `ln cosh(u)` for real `u`, without overflow.
fn ln_cosh(u: f64) -> f64 {
    let u = u.abs();
    u + (-2.0 * u).exp().ln_1p() - LN_2
}

/// Principal `ln cosh(w)` for `w = u + iv`, `|v| < π/2`.
fn ln_cosh_complex(w: Complex) -> Complex {
    if w.re.abs() < 1.0 {
        return w.cosh().ln();
    }
    let s = w.re.signum();
    s * w + (1.0 + (-2.0 * s * w).exp()).ln() - LN_2
}

/// `tanh(w)` for `w = u + iv`, without overflow in `u`.
pub(crate) fn tanh_complex(w: Complex) -> Complex {
    let (u2, v2) = (2.0 * w.re, 2.0 * w.im);
    if u2.abs() < 1.0 {
        return w.tanh();
    }
    let sech = 1.0 / u2.cosh();
    cx(u2.tanh(), v2.sin() * sech) / (1.0 + v2.cos() * sech)
}

/// `sqrt(-t(t + 2i))`, principal branch.
pub(crate) fn feller_spitzer_root(t: f64) -> Complex {
    cx(-t * t, -2.0 * t).sqrt()
}

/// `∫_0^∞ e^{-x} I_0(x)/(1+x²) dx`, the LK shift of the Feller–Spitzer law
/// per unit `ν`.
pub fn feller_spitzer_unit_shift() -> f64 {
    static SHIFT: OnceLock<f64> = OnceLock::new();
    *SHIFT.get_or_init(|| {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            tail: TailKind::Algebraic,
            ..Default::default()
        };
        let f = |x: f64| {
            cx(
                bessel_i_scaled(BesselOrder::Zero, x).unwrap_or(f64::NAN) / (1.0 + x * x),
                0.0,
            )
        };
        integrate_with(f, Domain::PosHalf, &cfg)
            .expect("finite integrand")
            .value
            .re
    })
}

/// Builds the spec of `id` with default parameters.
pub fn spec(id: DistributionId) -> DistributionSpec {
    spec_with(id, &ParamOverrides::new()).expect("default parameters are in range")
}

/// Builds the spec of `id` with parameter overrides.
pub fn spec_with(
    id: DistributionId,
    overrides: &ParamOverrides,
) -> Result<DistributionSpec, CatalogError> {
    let parameters = apply_overrides(id.token(), id.default_parameters(), overrides)?;
    let v = |name: &str| value_of(&parameters, name);
    let (family, triple_density, shift, kernel, notes) = match id {
        DistributionId::HypSine => (
            Family::HypSine,
            Density::HypSine(ChainLevel::K),
            0.0,
            KernelKind::Lk,
            "cf t/sinh(t); BDRV chain h, g, r all nonnegative",
        ),
        DistributionId::HypCosine => (
            Family::HypCosine,
            Density::HypCosine(ChainLevel::K),
            0.0,
            KernelKind::Lk,
            "cf 1/cosh(t); BDRV chain h, g, r all nonnegative",
        ),
        DistributionId::HypTangent => (
            Family::HypTangent,
            Density::HypTangent(ChainLevel::K),
            0.0,
            KernelKind::Lk,
            "cf taken as tanh(t)/t; the BDRV transform is 2t/sinh(2t) - 1 in the exponent",
        ),
        DistributionId::LogGamma => {
            let (alpha, lambda) = (v("alpha"), v("lambda"));
            (
                Family::LogGamma { alpha, lambda },
                Density::LogGamma { alpha, level: ChainLevel::K },
                psi(cx(alpha, 0.0)).re - lambda.ln(),
                KernelKind::Kolm,
                "law of log of a gamma(alpha, lambda) variable; the scale lambda enters only the shift",
            )
        }
        DistributionId::NegLogGamma => {
            let beta = v("beta");
            (
                Family::NegLogGamma { beta },
                Density::NegLogGamma {
                    beta,
                    level: ChainLevel::K,
                },
                -psi(cx(beta, 0.0)).re,
                KernelKind::Kolm,
                "law of minus the log of a gamma(beta, 1) variable",
            )
        }
        DistributionId::Logistic => {
            let alpha = v("alpha");
            (
                Family::Logistic { alpha },
                Density::Logistic {
                    alpha,
                    level: ChainLevel::K,
                },
                0.0,
                KernelKind::Lk,
                "cf |Gamma(alpha + it/pi)|^2 / Gamma(alpha)^2; alpha = 1 is the logistic law",
            )
        }
        DistributionId::GeneralizedZ => {
            let (a, b1, b2, d, m) = (v("a"), v("b1"), v("b2"), v("d"), v("m"));
            let c = a / (2.0 * PI);
            (
                Family::GeneralizedZ { a, b1, b2, d, m },
                Density::GeneralizedZ {
                    scale: c,
                    b1,
                    b2,
                    weight: 2.0 * d,
                    level: ChainLevel::K,
                },
                m + 2.0 * d * c * (psi(cx(b1, 0.0)).re - psi(cx(b2, 0.0)).re),
                KernelKind::Kolm,
                "BDRV shift is m + 2d(a/2pi)(Psi(b1) - Psi(b2)) under the KOLM convention",
            )
        }
        DistributionId::Meixner => {
            let (a, b, d, m) = (v("a"), v("b"), v("d"), v("m"));
            (
                Family::Meixner { a, b, d, m },
                Density::Meixner {
                    a,
                    b,
                    d,
                    level: ChainLevel::K,
                },
                m + d * a * (0.5 * b).tan(),
                KernelKind::Kolm,
                "a = 2, b = 0, d = 1/2, m = 0 gives the hyperbolic cosine law",
            )
        }
        DistributionId::FellerSpitzer => {
            let nu = v("nu");
            (
                Family::FellerSpitzer { nu },
                Density::FellerSpitzer { nu, level: ChainLevel::K },
                nu * feller_spitzer_unit_shift(),
                KernelKind::Lk,
                "log cf is linear in nu; the BDRV is compound Poisson with jump law e^{-x}(I0 - I1) dx",
            )
        }
    };
    let depth = match id {
        DistributionId::HypSine | DistributionId::HypCosine => 3,
        _ => 1,
    };
    let mut bdrv_chain = Vec::with_capacity(depth);
    let mut level = ChainLevel::K;
    for _ in 0..depth {
        level = level.next().expect("chain depth at most 3");
        bdrv_chain.push(triple_density.with_level(level));
    }
    Ok(DistributionSpec {
        id,
        parameters,
        triple: LevyTriple {
            shift,
            gaussian_var: 0.0,
            density: triple_density,
            kernel_convention: kernel,
        },
        bdrv_chain,
        notes,
        family,
    })
}

impl DistributionSpec {
    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters
            .iter()
            .find(|p| p.name == name)
            .map(|p| p.value)
    }

    /// Tail behavior of the Lévy density chain, which picks the quadrature
    /// tail map.
    pub fn tail_kind(&self) -> TailKind {
        self.triple.density.tail()
    }

    /// Characteristic function `φ(t)`. Exactly 1 at `t = 0`.
    pub fn cf(&self, t: f64) -> Complex {
        if t == 0.0 {
            return cx(1.0, 0.0);
        }
        self.log_cf(t).exp()
    }

    /// `log φ(t)`, continuous in `t` with `log φ(0) = 0`.
    pub fn log_cf(&self, t: f64) -> Complex {
        if t == 0.0 {
            return cx(0.0, 0.0);
        }
        match self.family {
            Family::HypSine => {
                let u = t.abs();
                let re = if u < 1.0 {
                    (u / u.sinh()).ln()
                } else {
                    u.ln() - u - (-(-2.0 * u).exp()).ln_1p() + LN_2
                };
                cx(re, 0.0)
            }
            Family::HypCosine => cx(-ln_cosh(t), 0.0),
            Family::HypTangent => {
                let u = t.abs();
                let re = if u < 1.0 {
                    (u.tanh() / u).ln()
                } else {
                    let e = (-2.0 * u).exp();
                    (-e).ln_1p() - e.ln_1p() - u.ln()
                };
                cx(re, 0.0)
            }
            Family::LogGamma { alpha, lambda } => {
                cx(0.0, -t * lambda.ln()) + lgamma(cx(alpha, t)) - lgamma(cx(alpha, 0.0))
            }
            Family::NegLogGamma { beta } => lgamma(cx(beta, -t)) - lgamma(cx(beta, 0.0)),
            Family::Logistic { alpha } => {
                let re = 2.0 * (lgamma(cx(alpha, t / PI)) - lgamma(cx(alpha, 0.0))).re;
                cx(re, 0.0)
            }
            Family::GeneralizedZ { a, b1, b2, d, m } => {
                let c = a / (2.0 * PI);
                let lb = log_beta(cx(b1, c * t), cx(b2, -c * t))
                    .expect("argument in the right half-plane");
                let lb0 =
                    log_beta(cx(b1, 0.0), cx(b2, 0.0)).expect("argument in the right half-plane");
                2.0 * d * (lb - lb0) + cx(0.0, m * t)
            }
            Family::Meixner { a, b, d, m } => {
                let lc = ln_cosh_complex(cx(0.5 * a * t, -0.5 * b));
                2.0 * d * (cx((0.5 * b).cos().ln(), 0.0) - lc) + cx(0.0, m * t)
            }
            Family::FellerSpitzer { nu } => -nu * (cx(1.0, -t) + feller_spitzer_root(t)).ln(),
        }
    }

    /// Closed-form BDRV exponent `t (log φ)'(t)`, so that `ψ = exp` of it.
    pub fn bdrv_exponent(&self, t: f64) -> Complex {
        if t == 0.0 {
            return cx(0.0, 0.0);
        }
        match self.family {
            Family::HypSine => cx(1.0 - x_coth_x(t), 0.0),
            Family::HypCosine => cx(-t * t.tanh(), 0.0),
            Family::HypTangent => cx(2.0 * t / (2.0 * t).sinh() - 1.0, 0.0),
            Family::LogGamma { alpha, lambda } => cx(0.0, t) * (psi(cx(alpha, t)) - lambda.ln()),
            Family::NegLogGamma { beta } => cx(0.0, -t) * psi(cx(beta, -t)),
            Family::Logistic { alpha } => cx(-2.0 * t / PI * psi(cx(alpha, t / PI)).im, 0.0),
            Family::GeneralizedZ { a, b1, b2, d, m } => {
                let c = a / (2.0 * PI);
                2.0 * d * c * cx(0.0, t) * (psi(cx(b1, c * t)) - psi(cx(b2, -c * t)))
                    + cx(0.0, m * t)
            }
            Family::Meixner { a, b, d, m } => {
                -2.0 * d * (0.5 * a * t) * tanh_complex(cx(0.5 * a * t, -0.5 * b)) + cx(0.0, m * t)
            }
            Family::FellerSpitzer { nu } => nu * cx(0.0, t) / feller_spitzer_root(t),
        }
    }

    /// Closed-form BDRV characteristic function `ψ(t)`.
    pub fn psi(&self, t: f64) -> Complex {
        self.bdrv_exponent(t).exp()
    }

    pub fn cf_formula(&self) -> &'static str {
        match self.family {
            Family::HypSine => "t/sinh(t)",
            Family::HypCosine => "1/cosh(t)",
            Family::HypTangent => "tanh(t)/t",
            Family::LogGamma { .. } => "e^{-it log λ} Γ(α+it)/Γ(α)",
            Family::NegLogGamma { .. } => "Γ(β-it)/Γ(β)",
            Family::Logistic { .. } => "Γ(α+it/π)Γ(α-it/π)/Γ(α)²",
            Family::GeneralizedZ { .. } => "[B(b₁+iat/2π, b₂-iat/2π)/B(b₁,b₂)]^{2d} e^{imt}",
            Family::Meixner { .. } => "[cos(b/2)/cosh((at-ib)/2)]^{2d} e^{imt}",
            Family::FellerSpitzer { .. } => "[1-it-√((1-it)²-1)]^ν",
        }
    }

    pub fn bdrv_exponent_formula(&self) -> &'static str {
        match self.family {
            Family::HypSine => "1 - t coth(t)",
            Family::HypCosine => "-t tanh(t)",
            Family::HypTangent => "2t/sinh(2t) - 1",
            Family::LogGamma { .. } => "it(Ψ(α+it) - log λ)",
            Family::NegLogGamma { .. } => "-itΨ(β-it)",
            Family::Logistic { .. } => "(2t/π) Re[iΨ(α+it/π)]",
            Family::GeneralizedZ { .. } => "2d(a/2π) it[Ψ(b₁+iat/2π) - Ψ(b₂-iat/2π)] + imt",
            Family::Meixner { .. } => "-2d(at/2) tanh((at-ib)/2) + imt",
            Family::FellerSpitzer { .. } => "ν it/√(-t(t+2i))",
        }
    }
}
