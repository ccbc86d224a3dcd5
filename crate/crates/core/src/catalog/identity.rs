//! The verifiable integral identities: `∫ K(t,x) d(x) dx = rhs(t)` over a
//! domain, for a kernel `K`, a (possibly half-line folded) density `d` and a
//! closed-form right-hand side.

use super::density::{ChainLevel, Density};
use super::distribution::{
    apply_overrides, feller_spitzer_root, tanh_complex, value_of, Constraint, DistributionId,
    ParamOverrides, Parameter,
};
use super::CatalogError;
use crate::quadrature::{Domain, KernelKind, TailKind};
use crate::specfun::{csch_sq_times_xsq, digamma, sech, x_coth_x, Complex};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    L1i,
    L1ii,
    L1iii,
    L2i,
    L2ii,
    L2iii,
    C1,
    C2a,
    C2b,
    C3,
    C4,
    C5,
    C5re,
    C5im,
    C6,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::L1i,
        IdentityId::L1ii,
        IdentityId::L1iii,
        IdentityId::L2i,
        IdentityId::L2ii,
        IdentityId::L2iii,
        IdentityId::C1,
        IdentityId::C2a,
        IdentityId::C2b,
        IdentityId::C3,
        IdentityId::C4,
        IdentityId::C5,
        IdentityId::C5re,
        IdentityId::C5im,
        IdentityId::C6,
    ];

    pub fn token(self) -> &'static str {
        match self {
            IdentityId::L1i => "L1i",
            IdentityId::L1ii => "L1ii",
            IdentityId::L1iii => "L1iii",
            IdentityId::L2i => "L2i",
            IdentityId::L2ii => "L2ii",
            IdentityId::L2iii => "L2iii",
            IdentityId::C1 => "C1",
            IdentityId::C2a => "C2a",
            IdentityId::C2b => "C2b",
            IdentityId::C3 => "C3",
            IdentityId::C4 => "C4",
            IdentityId::C5 => "C5",
            IdentityId::C5re => "C5re",
            IdentityId::C5im => "C5im",
            IdentityId::C6 => "C6",
        }
    }

    /// Citation tag of the identity's closed form.
    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::L1i => "Lemma 1(i)",
            IdentityId::L1ii => "Lemma 1(ii)",
            IdentityId::L1iii => "Lemma 1(iii)",
            IdentityId::L2i => "Lemma 2(i)",
            IdentityId::L2ii => "Lemma 2(ii)",
            IdentityId::L2iii => "Lemma 2(iii)",
            IdentityId::C1 => "Corollary 1",
            IdentityId::C2a => "Corollary 2 (log-gamma)",
            IdentityId::C2b => "Corollary 2 (negative log-gamma)",
            IdentityId::C3 => "Corollary 3",
            IdentityId::C4 => "Corollary 4",
            IdentityId::C5 => "Corollary 5",
            IdentityId::C5re => "Corollary 5, real part",
            IdentityId::C5im => "Corollary 5, imaginary part",
            IdentityId::C6 => "Corollary 6",
        }
    }

    pub fn distribution(self) -> DistributionId {
        use IdentityId::*;
        match self {
            L1i | L1ii | L1iii => DistributionId::HypSine,
            L2i | L2ii | L2iii => DistributionId::HypCosine,
            C1 => DistributionId::HypTangent,
            C2a => DistributionId::LogGamma,
            C2b => DistributionId::NegLogGamma,
            C3 => DistributionId::Logistic,
            C4 => DistributionId::GeneralizedZ,
            C5 | C5re | C5im => DistributionId::Meixner,
            C6 => DistributionId::FellerSpitzer,
        }
    }

    /// Identities whose left-hand side is complex for real `t`.
    pub fn is_complex(self) -> bool {
        matches!(
            self,
            IdentityId::C2a | IdentityId::C2b | IdentityId::C4 | IdentityId::C5 | IdentityId::C6
        )
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            IdentityId::C6 => 1e-7,
            _ => 1e-8,
        }
    }

    fn default_parameters(self) -> Vec<Parameter> {
        use Constraint::*;
        use IdentityId::*;
        let p = Parameter::new;
        match self {
            C2a | C3 => vec![p("alpha", 1.5, Positive)],
            C2b => vec![p("beta", 1.5, Positive)],
            C4 => vec![p("b1", 1.0, Positive), p("b2", 2.0, Positive)],
            C5 | C5re | C5im => vec![
                p("a", 2.0, Positive),
                p("b", PI / 2.0, OpenInterval(-PI, PI)),
            ],
            C6 => vec![p("nu", 1.0, Positive)],
            _ => vec![],
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for IdentityId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.token() == s)
            .ok_or_else(|| CatalogError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub kernel: KernelKind,
    pub domain: Domain,
    pub tail: TailKind,
    /// Full-line density before folding.
    pub base_density: Density,
    /// Factor applied to `base_density`: 2 for even densities restricted to
    /// the half-line, 1 otherwise.
    pub fold: f64,
    pub t_range: (f64, f64),
    pub parameters: Vec<Parameter>,
}

fn cx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn psi(z: Complex) -> Complex {
    digamma(z).expect("argument in the right half-plane")
}

/// Builds the identity case with default parameters.
pub fn identity_case(id: IdentityId) -> IdentityCase {
    identity_case_with(id, &ParamOverrides::new()).expect("default parameters are in range")
}

/// Builds the identity case with parameter overrides.
pub fn identity_case_with(
    id: IdentityId,
    overrides: &ParamOverrides,
) -> Result<IdentityCase, CatalogError> {
    use IdentityId::*;
    let parameters = apply_overrides(id.token(), id.default_parameters(), overrides)?;
    let v = |name: &str| value_of(&parameters, name);
    let h = ChainLevel::H;
    let (kernel, domain, base_density, fold) = match id {
        L1i => (KernelKind::Cos1, Domain::PosHalf, Density::HypSine(h), 2.0),
        L1ii => (
            KernelKind::Cos1,
            Domain::PosHalf,
            Density::HypSine(ChainLevel::G),
            2.0,
        ),
        L1iii => (
            KernelKind::Cos1,
            Domain::PosHalf,
            Density::HypSine(ChainLevel::R),
            2.0,
        ),
        L2i => (
            KernelKind::Cos1,
            Domain::PosHalf,
            Density::HypCosine(h),
            2.0,
        ),
        L2ii => (
            KernelKind::Cos1,
            Domain::PosHalf,
            Density::HypCosine(ChainLevel::G),
            2.0,
        ),
        L2iii => (
            KernelKind::Cos1,
            Domain::PosHalf,
            Density::HypCosine(ChainLevel::R),
            2.0,
        ),
        C1 => (
            KernelKind::Cos1,
            Domain::PosHalf,
            Density::HypTangent(h),
            2.0,
        ),
        C2a => (
            KernelKind::Kolm,
            Domain::NegHalf,
            Density::LogGamma {
                alpha: v("alpha"),
                level: h,
            },
            1.0,
        ),
        C2b => (
            KernelKind::Kolm,
            Domain::PosHalf,
            Density::NegLogGamma {
                beta: v("beta"),
                level: h,
            },
            1.0,
        ),
        C3 => (
            KernelKind::Cos1,
            Domain::PosHalf,
            Density::Logistic {
                alpha: v("alpha"),
                level: h,
            },
            2.0,
        ),
        C4 => (
            KernelKind::Kolm,
            Domain::PuncturedLine,
            Density::GeneralizedZ {
                scale: 1.0,
                b1: v("b1"),
                b2: v("b2"),
                weight: 1.0,
                level: h,
            },
            1.0,
        ),
        C5 | C5re | C5im => {
            let kernel = match id {
                C5 => KernelKind::Kolm,
                C5re => KernelKind::Cos1,
                _ => KernelKind::Sinl,
            };
            (
                kernel,
                Domain::PuncturedLine,
                Density::Meixner {
                    a: v("a"),
                    b: v("b"),
                    d: 0.5,
                    level: h,
                },
                1.0,
            )
        }
        C6 => (
            KernelKind::Pois,
            Domain::PosHalf,
            Density::FellerSpitzer {
                nu: v("nu"),
                level: h,
            },
            1.0,
        ),
    };
    let tail = if id == C6 {
        TailKind::Algebraic
    } else {
        TailKind::Exponential
    };
    Ok(IdentityCase {
        id,
        kernel,
        domain,
        tail,
        base_density,
        fold,
        t_range: (f64::NEG_INFINITY, f64::INFINITY),
        parameters,
    })
}

/// The integrand density of `id` at `x`, with default parameters.
pub fn identity_density(id: IdentityId, x: f64) -> Result<f64, CatalogError> {
    identity_case(id).density(x)
}

impl IdentityCase {
    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters
            .iter()
            .find(|p| p.name == name)
            .map(|p| p.value)
    }

    fn p(&self, name: &str) -> f64 {
        value_of(&self.parameters, name)
    }

    /// Integrand density at `x`; `x` must lie in the case's domain.
    pub fn density(&self, x: f64) -> Result<f64, CatalogError> {
        if !self.domain.contains(x) {
            return Err(CatalogError::OutsideDomain {
                id: self.id.token().to_string(),
                x,
                domain: self.domain.notation(),
            });
        }
        Ok(self.density_unchecked(x))
    }

    /// Integrand density without the domain check, for quadrature.
    pub fn density_unchecked(&self, x: f64) -> f64 {
        self.fold * self.base_density.eval(x)
    }

    pub fn contains_t(&self, t: f64) -> bool {
        t >= self.t_range.0 && t <= self.t_range.1
    }

    /// Closed-form right-hand side. Exactly 0 at `t = 0`.
    pub fn rhs(&self, t: f64) -> Complex {
        use IdentityId::*;
        if t == 0.0 {
            return cx(0.0, 0.0);
        }
        let it = cx(0.0, t);
        match self.id {
            L1i => cx(1.0 - x_coth_x(t), 0.0),
            L1ii => cx(csch_sq_times_xsq(t) - x_coth_x(t), 0.0),
            L1iii => {
                let c2 = csch_sq_times_xsq(t);
                cx(3.0 * c2 - x_coth_x(t) * (2.0 * c2 + 1.0), 0.0)
            }
            L2i => cx(-t * t.tanh(), 0.0),
            L2ii => {
                let s = sech(t);
                cx(-t * t.tanh() - t * t * s * s, 0.0)
            }
            L2iii => {
                let s = sech(t);
                let tt = t * t.tanh();
                cx(-tt - t * t * (3.0 - 2.0 * tt) * s * s, 0.0)
            }
            C1 => cx(2.0 * t / (2.0 * t).sinh() - 1.0, 0.0),
            C2a => {
                let alpha = self.p("alpha");
                it * (psi(cx(alpha, t)) - psi(cx(alpha, 0.0)))
            }
            C2b => {
                let beta = self.p("beta");
                -it * (psi(cx(beta, -t)) - psi(cx(beta, 0.0)))
            }
            C3 => {
                let alpha = self.p("alpha");
                cx(-2.0 * t / PI * psi(cx(alpha, t / PI)).im, 0.0)
            }
            C4 => {
                let (b1, b2) = (self.p("b1"), self.p("b2"));
                it * ((psi(cx(b1, t)) - psi(cx(b1, 0.0))) - (psi(cx(b2, -t)) - psi(cx(b2, 0.0))))
            }
            C5 | C5re | C5im => {
                let (a, b) = (self.p("a"), self.p("b"));
                let half = 0.5 * a * t;
                let full =
                    cx(0.0, -half * (0.5 * b).tan()) - half * tanh_complex(cx(half, -0.5 * b));
                match self.id {
                    C5 => full,
                    C5re => cx(full.re, 0.0),
                    _ => cx(full.im, 0.0),
                }
            }
            C6 => self.p("nu") * it / feller_spitzer_root(t),
        }
    }

    pub fn rhs_formula(&self) -> &'static str {
        use IdentityId::*;
        match self.id {
            L1i => "1 - t coth(t)",
            L1ii => "t² csch²(t) - t coth(t)",
            L1iii => "3t² csch²(t) - t coth(t)(2t² csch²(t) + 1)",
            L2i => "-t tanh(t)",
            L2ii => "-t tanh(t) - t² sech²(t)",
            L2iii => "-t tanh(t) - t²(3 - 2t tanh(t)) sech²(t)",
            C1 => "2t/sinh(2t) - 1",
            C2a => "it(Ψ(α+it) - Ψ(α))",
            C2b => "-it(Ψ(β-it) - Ψ(β))",
            C3 => "(2t/π) Re[iΨ(it/π+α)]",
            C4 => "it[(Ψ(b₁+it) - Ψ(b₁)) - (Ψ(b₂-it) - Ψ(b₂))]",
            C5 => "-i(at/2)tan(b/2) - (at/2)tanh((at-ib)/2)",
            C5re => "-(at/2) sinh(at)/(cosh(at) + cos(b))",
            C5im => "-(at/2)(tan(b/2) - sin(b)/(cosh(at) + cos(b)))",
            C6 => "ν it/√(-t(t+2i))",
        }
    }

    /// Formula of the integrand density, including the half-line fold.
    pub fn density_formula(&self) -> String {
        let base = self.base_density.formula();
        if self.fold == 1.0 {
            base
        } else {
            format!("{} × {}", self.fold, base)
        }
    }
}
