//! The distribution catalog and the identity cases built on it.
//!
//! Distributions and identities are addressed by token (`hyp_sine`, `L1i`,
//! ...). Parameters can be overridden per call; specs are immutable values.

mod density;
mod distribution;
mod identity;

pub use density::{ChainLevel, Density};
pub use distribution::{
    feller_spitzer_unit_shift, spec, spec_with, Constraint, DistributionId, DistributionSpec,
    LevyTriple, ParamOverrides, Parameter,
};
pub use identity::{identity_case, identity_case_with, identity_density, IdentityCase, IdentityId};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown id '{0}'")]
    UnknownId(String),
    #[error("'{target}' has no parameter '{name}' (valid: {valid})")]
    UnknownParameter {
        target: String,
        name: String,
        valid: String,
    },
    #[error("parameter {name} = {value} is out of range ({constraint})")]
    OutOfRange {
        name: String,
        value: f64,
        constraint: String,
    },
    #[error("{id}: x = {x} is outside the domain {domain}")]
    OutsideDomain {
        id: String,
        x: f64,
        domain: &'static str,
    },
}

/// Every valid token, distributions first.
pub fn all_tokens() -> Vec<&'static str> {
    DistributionId::ALL
        .iter()
        .map(|d| d.token())
        .chain(IdentityId::ALL.iter().map(|i| i.token()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainEntry {
    pub name: &'static str,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionDescriptor {
    pub kind: &'static str,
    pub id: &'static str,
    pub parameters: Vec<Parameter>,
    pub characteristic_function: &'static str,
    pub levy_density: String,
    pub support: &'static str,
    pub kernel_convention: &'static str,
    pub shift: f64,
    pub gaussian_var: f64,
    pub bdrv_exponent: &'static str,
    pub bdrv_chain: Vec<ChainEntry>,
    pub identities: Vec<&'static str>,
    pub notes: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityDescriptor {
    pub kind: &'static str,
    pub id: &'static str,
    pub tag: &'static str,
    pub distribution: &'static str,
    pub parameters: Vec<Parameter>,
    pub kernel: &'static str,
    pub kernel_formula: &'static str,
    pub domain: &'static str,
    pub density: String,
    pub rhs: &'static str,
    pub t_range: &'static str,
    pub default_tolerance: f64,
}

/// Serializable description of a catalog entry, used by `show`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Descriptor {
    Distribution(DistributionDescriptor),
    Identity(IdentityDescriptor),
}

impl DistributionSpec {
    pub fn descriptor(&self) -> DistributionDescriptor {
        DistributionDescriptor {
            kind: "distribution",
            id: self.id.token(),
            parameters: self.parameters.clone(),
            characteristic_function: self.cf_formula(),
            levy_density: self.triple.density.formula(),
            support: self.triple.support().notation(),
            kernel_convention: self.triple.kernel_convention.tag(),
            shift: self.triple.shift,
            gaussian_var: self.triple.gaussian_var,
            bdrv_exponent: self.bdrv_exponent_formula(),
            bdrv_chain: self
                .bdrv_chain
                .iter()
                .map(|d| ChainEntry {
                    name: d.level().map_or("?", |l| l.name()),
                    formula: d.formula(),
                })
                .collect(),
            identities: IdentityId::ALL
                .iter()
                .filter(|i| i.distribution() == self.id)
                .map(|i| i.token())
                .collect(),
            notes: self.notes,
        }
    }
}

impl IdentityCase {
    pub fn descriptor(&self) -> IdentityDescriptor {
        IdentityDescriptor {
            kind: "identity",
            id: self.id.token(),
            tag: self.id.tag(),
            distribution: self.id.distribution().token(),
            parameters: self.parameters.clone(),
            kernel: self.kernel.tag(),
            kernel_formula: self.kernel.formula(),
            domain: self.domain.notation(),
            density: self.density_formula(),
            rhs: self.rhs_formula(),
            t_range: "(-∞,∞)",
            default_tolerance: self.id.default_tolerance(),
        }
    }
}

/// Looks up `token` as a distribution or an identity and describes it.
pub fn describe(token: &str, overrides: &ParamOverrides) -> Result<Descriptor, CatalogError> {
    if let Ok(id) = token.parse::<DistributionId>() {
        return Ok(Descriptor::Distribution(
            spec_with(id, overrides)?.descriptor(),
        ));
    }
    if let Ok(id) = token.parse::<IdentityId>() {
        return Ok(Descriptor::Identity(
            identity_case_with(id, overrides)?.descriptor(),
        ));
    }
    Err(CatalogError::UnknownId(token.to_string()))
}

impl Descriptor {
    /// `key=value` lines.
    pub fn to_text(&self) -> String {
        let params = |ps: &[Parameter]| {
            ps.iter()
                .map(|p| format!("{}={} ({})", p.name, p.value, p.constraint))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut lines = Vec::new();
        match self {
            Descriptor::Distribution(d) => {
                lines.push(format!("id={}", d.id));
                lines.push("kind=distribution".into());
                lines.push(format!("parameters={}", params(&d.parameters)));
                lines.push(format!("cf={}", d.characteristic_function));
                lines.push(format!("levy_density={}", d.levy_density));
                lines.push(format!("support={}", d.support));
                lines.push(format!("kernel={}", d.kernel_convention));
                lines.push(format!("shift={}", d.shift));
                lines.push(format!("gaussian_var={}", d.gaussian_var));
                lines.push(format!("bdrv_exponent={}", d.bdrv_exponent));
                for c in &d.bdrv_chain {
                    lines.push(format!("chain.{}={}", c.name, c.formula));
                }
                lines.push(format!("identities={}", d.identities.join(",")));
                lines.push(format!("notes={}", d.notes));
            }
            Descriptor::Identity(i) => {
                lines.push(format!("id={}", i.id));
                lines.push("kind=identity".into());
                lines.push(format!("tag={}", i.tag));
                lines.push(format!("distribution={}", i.distribution));
                lines.push(format!("parameters={}", params(&i.parameters)));
                lines.push(format!("kernel={}", i.kernel));
                lines.push(format!("kernel_formula={}", i.kernel_formula));
                lines.push(format!("domain={}", i.domain));
                lines.push(format!("density={}", i.density));
                lines.push(format!("rhs={}", i.rhs));
                lines.push(format!("t_range={}", i.t_range));
                lines.push(format!("default_tolerance={:e}", i.default_tolerance));
            }
        }
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_token_is_described() {
        for t in all_tokens() {
            let d = describe(t, &ParamOverrides::new()).unwrap();
            let json = serde_json::to_string(&d).unwrap();
            assert!(json.contains(t));
        }
        assert!(matches!(
            describe("x", &ParamOverrides::new()),
            Err(CatalogError::UnknownId(_))
        ));
    }

    #[test]
    fn show_text_for_l1i() {
        let text = describe("L1i", &ParamOverrides::new()).unwrap().to_text();
        assert!(text.contains("kernel=COS1"));
        assert!(text.contains("domain=(0,∞)"));
        assert!(text.contains("Lemma 1(i)"));
    }

    #[test]
    fn distribution_lists_its_identities() {
        match describe("meixner", &ParamOverrides::new()).unwrap() {
            Descriptor::Distribution(d) => assert_eq!(d.identities, vec!["C5", "C5re", "C5im"]),
            _ => panic!(),
        }
    }
}
