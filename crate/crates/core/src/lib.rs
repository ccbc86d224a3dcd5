//! Self-decomposable distributions, their background driving variables,
//! and numerical verification of the definite integrals that follow from
//! them.
//!
//! * [`specfun`]: complex log-gamma / digamma, scaled Bessel `I_0`, `I_1`,
//!   stable hyperbolic functions.
//! * [`quadrature`]: compensated kernels and adaptive half-line quadrature.
//! * [`catalog`]: distributions (characteristic functions, Lévy densities,
//!   density chains) and the identity cases.
//! * [`bdrv`]: numeric background-driving-variable transform, used as an
//!   independent check of the catalog's closed forms.
//! * [`verify`]: identity verification engine and report emitters.
//! * [`cli`]: the `selfdec` command-line front end.

pub mod bdrv;
pub mod catalog;
pub mod cli;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use specfun::Complex;
