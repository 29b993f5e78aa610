//! Exit probabilities and exit-time densities of Brownian motion killed at ±1.
//!
//! For `t ≥ 0.1` the eigenfunction expansion
//!
//! ```text
//! P_y(τ > t) = (4/π) Σ_k (-1)^k/(2k+1) cos((2k+1)πy/2) exp(-(2k+1)²π²t/8)
//! ```
//!
//! converges geometrically. Below that the method of images is used instead.

use crate::error::{Error, Result};
use crate::special::{norm_cdf, norm_pdf, norm_sf};
use std::f64::consts::PI;

/// Crossover between eigen-series and image sums.
pub const SMALL_TIME: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTolerance {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        SeriesTolerance { abs_tol: 1e-15, max_terms: 100_000 }
    }
}

impl SeriesTolerance {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::config("abs_tol must be positive and finite"));
        }
        if max_terms == 0 {
            return Err(Error::config("max_terms must be positive"));
        }
        Ok(SeriesTolerance { abs_tol, max_terms })
    }
}

/// Dirichlet eigenpair of `½ d²/dy²` on (-1,1) in the even sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub n: usize,
    pub lambda_n: f64,
}

impl EigenPair {
    pub fn new(n: usize) -> Self {
        let k = (2 * n + 1) as f64;
        EigenPair { n, lambda_n: k * k * PI * PI / 8.0 }
    }

    /// Coefficient function `φ_n(y) = 4(-1)^n/(π(2n+1)) cos((2n+1)πy/2)`.
    pub fn phi(&self, y: f64) -> f64 {
        if y.abs() >= 1.0 {
            return 0.0;
        }
        let k = (2 * self.n + 1) as f64;
        let sign = if self.n.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * 4.0 / (PI * k) * (k * PI * y / 2.0).cos()
    }

    pub fn phi_bound(&self) -> f64 {
        4.0 / (PI * (2 * self.n + 1) as f64)
    }
}

fn check_y_closed(y: f64) -> Result<()> {
    if !(y.abs() <= 1.0) {
        return Err(Error::domain(format!("start point {y} outside [-1, 1]")));
    }
    Ok(())
}

/// `P_y(|B_t| < 1 for all t ≤ T)`.
pub fn exit_prob_zero(y: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    check_y_closed(y)?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("horizon {t} must be finite and non-negative")));
    }
    if y.abs() == 1.0 {
        return Ok(0.0);
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let p = if t >= SMALL_TIME { survival_series(y, t, tol)? } else { survival_images(y, t, tol)? };
    Ok(p.clamp(0.0, 1.0))
}

/// Eigen-series form of the survival probability, valid for every `t > 0`.
pub fn survival_series(y: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    let mut sum = 0.0;
    for n in 0..tol.max_terms {
        let e = EigenPair::new(n);
        sum += e.phi(y) * (-e.lambda_n * t).exp();
        let next = EigenPair::new(n + 1);
        let bound = next.phi_bound() * (-next.lambda_n * t).exp();
        if bound < tol.abs_tol {
            return Ok(sum);
        }
    }
    Err(Error::Truncation { terms: tol.max_terms, last_bound: f64::NAN })
}

// Φ(a) - Φ(b) without cancellation in the tails.
fn phi_diff(a: f64, b: f64) -> f64 {
    if a >= 0.0 && b >= 0.0 {
        norm_sf(b) - norm_sf(a)
    } else {
        norm_cdf(a) - norm_cdf(b)
    }
}

/// Image-sum form of the survival probability, valid for every `t > 0`.
pub fn survival_images(y: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    let x = y + 1.0;
    let st = t.sqrt();
    let term = |k: f64| {
        let s = 4.0 * k;
        phi_diff((2.0 - x + s) / st, (-x + s) / st) - phi_diff((2.0 + x + s) / st, (x + s) / st)
    };
    let mut sum = term(0.0);
    for k in 1..tol.max_terms {
        let kf = k as f64;
        let a = term(kf);
        let b = term(-kf);
        sum += a + b;
        // every image at distance ≥ 4k-2 from the start
        let bound = 8.0 * norm_sf((4.0 * kf - 2.0) / st);
        if bound < tol.abs_tol {
            return Ok(sum);
        }
    }
    Err(Error::Truncation { terms: tol.max_terms, last_bound: f64::NAN })
}

/// Density of the first exit time τ from (-1,1) started at `y`.
pub fn exit_time_density(y: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    if !(y.abs() < 1.0) {
        return Err(Error::domain(format!("start point {y} outside (-1, 1)")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("time {t} must be positive")));
    }
    let f = if t >= SMALL_TIME { density_series(y, t, tol)? } else { density_images(y, t, tol)? };
    Ok(f.max(0.0))
}

pub fn density_series(y: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    let mut sum = 0.0;
    for n in 0..tol.max_terms {
        let e = EigenPair::new(n);
        sum += e.lambda_n * (-e.lambda_n * t).exp() * e.phi(y);
        let next = EigenPair::new(n + 1);
        let bound = next.lambda_n * next.phi_bound() * (-next.lambda_n * t).exp();
        if bound < tol.abs_tol {
            return Ok(sum);
        }
    }
    Err(Error::Truncation { terms: tol.max_terms, last_bound: f64::NAN })
}

pub fn density_images(y: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    let x = y + 1.0;
    let st = t.sqrt();
    let g = |c: f64| c * norm_pdf(c / st);
    let term = |k: f64| {
        let s = 4.0 * k;
        g(2.0 - x + s) - g(-x + s) - g(2.0 + x + s) + g(x + s)
    };
    let scale = 1.0 / (2.0 * t * st);
    let mut sum = term(0.0);
    for k in 1..tol.max_terms {
        let kf = k as f64;
        sum += term(kf) + term(-kf);
        let c = 4.0 * kf - 2.0;
        let bound = 8.0 * (c + 4.0) * norm_pdf(c / st) * scale;
        if bound < tol.abs_tol {
            return Ok(sum * scale);
        }
    }
    Err(Error::Truncation { terms: tol.max_terms, last_bound: f64::NAN })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn tol() -> SeriesTolerance {
        SeriesTolerance::new(1e-15, 100_000).unwrap()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(exit_prob_zero(0.0, 0.0, tol()).unwrap(), 1.0);
        assert_eq!(exit_prob_zero(1.0, 0.5, tol()).unwrap(), 0.0);
        assert_eq!(exit_prob_zero(-1.0, 0.5, tol()).unwrap(), 0.0);
        assert!(exit_prob_zero(1.5, 1.0, tol()).is_err());
        assert!(exit_prob_zero(0.0, -1.0, tol()).is_err());
    }

    #[test]
    fn series_and_images_agree_at_crossover() {
        for &y in &[0.0, 0.3, -0.7, 0.95] {
            let a = survival_series(y, SMALL_TIME, tol()).unwrap();
            let b = survival_images(y, SMALL_TIME, tol()).unwrap();
            assert!((a - b).abs() < 1e-10, "{y}: {a} {b}");
            let a = density_series(y, SMALL_TIME, tol()).unwrap();
            let b = density_images(y, SMALL_TIME, tol()).unwrap();
            assert!((a - b).abs() < 1e-10 * a.max(1.0), "{y}: {a} {b}");
        }
        // both forms are exact everywhere, check away from the crossover too
        for &t in &[0.5, 2.0] {
            let a = survival_series(0.2, t, tol()).unwrap();
            let b = survival_images(0.2, t, tol()).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn reference_value_at_two() {
        // independent route: first term dominates, remainder from the image sum
        let p = exit_prob_zero(0.0, 2.0, tol()).unwrap();
        let img = survival_images(0.0, 2.0, tol()).unwrap();
        assert!((p - img).abs() < 1e-13);
        assert!((p - 0.107_977_044_444_109_05).abs() < 1e-14, "{p}");
    }

    #[test]
    fn one_term_tail_at_five() {
        let full = exit_time_density(0.0, 5.0, tol()).unwrap();
        let e = EigenPair::new(0);
        let one = e.lambda_n * (4.0 / PI) * (-e.lambda_n * 5.0).exp();
        assert!(((one - full) / full).abs() <= 1e-6);
    }

    #[test]
    fn density_normalizes() {
        for &y in &[0.0, 0.5, -0.5] {
            let small =
                quad::integrate(|t| exit_time_density(y, t, tol()).unwrap_or(0.0), 0.0, 1.0, 1e-12).unwrap().value;
            let large =
                quad::integrate_to_inf(|t| exit_time_density(y, t, tol()).unwrap_or(0.0), 1.0, 1e-12).unwrap().value;
            assert!((small + large - 1.0).abs() < 1e-8, "{y}: {}", small + large);
        }
    }

    #[test]
    fn survival_plus_cdf_is_one() {
        for &(y, t) in &[(0.0, 0.05), (0.3, 0.7), (-0.8, 2.0)] {
            let cdf = quad::integrate(|s| exit_time_density(y, s, tol()).unwrap_or(0.0), 0.0, t, 1e-12).unwrap().value;
            let p = exit_prob_zero(y, t, tol()).unwrap();
            assert!((p + cdf - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn density_near_boundary_is_finite() {
        let f = exit_time_density(0.999, 1.0, tol()).unwrap();
        assert!(f.is_finite() && f >= 0.0);
    }

    #[test]
    fn eigenpair_invariants() {
        let e0 = EigenPair::new(0);
        assert!((e0.lambda_n - PI * PI / 8.0).abs() < 1e-15);
        for n in 0..20 {
            let e = EigenPair::new(n);
            assert_eq!(e.phi(1.0), 0.0);
            assert_eq!(e.phi(-1.0), 0.0);
            for i in 0..50 {
                let y = -1.0 + 2.0 * i as f64 / 50.0;
                assert!(e.phi(y).abs() <= e.phi_bound() + 1e-15);
            }
        }
    }
}
