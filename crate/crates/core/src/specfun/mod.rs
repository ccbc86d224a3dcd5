//! Elementary and special functions used by the catalog.
//!
//! Everything here is a pure function of its arguments. The complex
//! functions are conjugate-symmetric by construction: inputs in the lower
//! half-plane are evaluated through their mirror image.

mod bessel;
mod gamma;
mod hyp;

pub use bessel::{bessel_i0_minus_i1_scaled, bessel_i_scaled, BesselOrder};
pub use gamma::{digamma, log_beta, log_gamma};
pub use hyp::{hyp, Hyperbolic};

pub(crate) use hyp::{coth, csch, csch_sq_times_xsq, sech, x_coth_x};

use thiserror::Error;

/// Complex number type used throughout the crate.
pub type Complex = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("{function}: argument {argument} is outside the supported domain ({requirement})")]
    Domain {
        function: &'static str,
        argument: String,
        requirement: &'static str,
    },
}

impl SpecfunError {
    pub(crate) fn domain(
        function: &'static str,
        argument: impl ToString,
        requirement: &'static str,
    ) -> Self {
        SpecfunError::Domain {
            function,
            argument: argument.to_string(),
            requirement,
        }
    }
}
