//! Scalar special functions used across the crate.

use errorfunctions::RealErrorFunctions;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub const LAMBDA0: f64 = PI * PI / 8.0;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal density.
pub fn norm_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal cdf, accurate in both tails.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * RealErrorFunctions::erfc(-x * FRAC_1_SQRT_2)
}

/// Upper tail `1 - Φ(x)`.
pub fn norm_sf(x: f64) -> f64 {
    0.5 * RealErrorFunctions::erfc(x * FRAC_1_SQRT_2)
}

/// Scaled complementary error function `exp(x²) erfc(x)` for real x.
pub fn erfcx(x: f64) -> f64 {
    RealErrorFunctions::erfcx(x)
}

pub fn erfc(x: f64) -> f64 {
    RealErrorFunctions::erfc(x)
}
