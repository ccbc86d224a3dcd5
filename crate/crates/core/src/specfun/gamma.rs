//! Complex log-gamma and digamma on the right half-plane.
//!
//! Both functions shift the argument with the recurrence until
//! `re(z) >= LIFT` and then apply the Stirling / asymptotic series with
//! eight Bernoulli terms. At `|z| >= 8` the first omitted term is below
//! 1e-16 relative.

use super::{Complex, SpecfunError};

const LIFT: f64 = 8.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;

// B_{2k} / (2k (2k - 1)), k = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// B_{2k} / (2k), k = 1..=8
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

fn check_domain(function: &'static str, z: Complex) -> Result<(), SpecfunError> {
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(SpecfunError::domain(function, z, "finite z with re(z) > 0"));
    }
    Ok(())
}

/// Horner evaluation of `sum c_k w^k`.
fn horner(coeffs: &[f64], w: Complex) -> Complex {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, &c| acc * w + c)
}

/// Log-gamma for `re(z) > 0`, continuous along vertical lines.
///
/// The branch is the analytic continuation from the positive real axis
/// (the sum of principal logs in the recurrence), not the principal log of
/// `Γ(z)`; it agrees with the principal value wherever `|im| < π`.
pub fn log_gamma(z: Complex) -> Result<Complex, SpecfunError> {
    check_domain("log_gamma", z)?;
    if z.im < 0.0 {
        return log_gamma_upper(z.conj()).map(|w| w.conj());
    }
    log_gamma_upper(z)
}

fn log_gamma_upper(z: Complex) -> Result<Complex, SpecfunError> {
    if z.im == 0.0 && (z.re == 1.0 || z.re == 2.0) {
        return Ok(Complex::new(0.0, 0.0));
    }
    let mut shift = Complex::new(0.0, 0.0);
    let mut w = z;
    while w.re < LIFT {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let series = inv * horner(&STIRLING, inv * inv);
    Ok((w - 0.5) * w.ln() - w + HALF_LN_2PI + series - shift)
}

/// Digamma `Ψ(z) = d/dz log Γ(z)` for `re(z) > 0`.
pub fn digamma(z: Complex) -> Result<Complex, SpecfunError> {
    check_domain("digamma", z)?;
    if z.im < 0.0 {
        return Ok(digamma_upper(z.conj()).conj());
    }
    Ok(digamma_upper(z))
}

fn digamma_upper(z: Complex) -> Complex {
    let mut shift = Complex::new(0.0, 0.0);
    let mut w = z;
    while w.re < LIFT {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    w.ln() - 0.5 * inv - inv2 * horner(&DIGAMMA_ASYMPTOTIC, inv2) - shift
}

/// `log B(z1, z2) = log Γ(z1) + log Γ(z2) - log Γ(z1 + z2)`.
pub fn log_beta(z1: Complex, z2: Complex) -> Result<Complex, SpecfunError> {
    Ok(log_gamma(z1)? + log_gamma(z2)? - log_gamma(z1 + z2)?)
}
