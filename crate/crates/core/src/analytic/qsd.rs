//! The quasi-stationary distribution ν of Brownian motion killed at ±1.

use rand::distr::{Distribution, Open01};
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};

/// Density `(π/4) cos(πy/2)` on (-1,1), zero elsewhere.
pub fn qsd_density(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        return 0.0;
    }
    PI / 4.0 * (FRAC_PI_2 * y).cos()
}

pub fn qsd_cdf(y: f64) -> f64 {
    if y <= -1.0 {
        0.0
    } else if y >= 1.0 {
        1.0
    } else {
        0.5 * (1.0 + (FRAC_PI_2 * y).sin())
    }
}

/// Inverse of [`qsd_cdf`] on (0,1).
pub fn qsd_quantile(u: f64) -> f64 {
    (2.0 / PI) * (2.0 * u - 1.0).asin()
}

/// Draw from ν by inversion; the uniform is taken from the open interval.
pub fn qsd_sample<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = Open01.sample(rng);
    qsd_quantile(u)
}
