//! The saddle function `V` and its inverse-derivative `h`.
//!
//! ```text
//! V(λ)  = (π⁴/(32λ²) - 3π²/(8λ) + (π²+21)/24) s
//! h(T)  solves  -V'(h) = T,  i.e.  (T/s) h³ + (3π²/8) h - π⁴/16 = 0
//! ```

use super::asymptotics::stretched_exponent;
use crate::error::{Error, Result};
use std::f64::consts::PI;

const PI2: f64 = PI * PI;
const PI4: f64 = PI2 * PI2;

/// Right end of the interval on which `V'' > 0` is used.
pub const SADDLE_EPS: f64 = PI2 / 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleFunctions {
    pub s: f64,
}

impl SaddleFunctions {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("budget s = {s} must be positive")));
        }
        Ok(SaddleFunctions { s })
    }

    pub fn v(&self, l: f64) -> f64 {
        saddle_v(l, self.s)
    }

    pub fn vp(&self, l: f64) -> f64 {
        saddle_vp(l, self.s)
    }

    pub fn vpp(&self, l: f64) -> f64 {
        saddle_vpp(l, self.s)
    }

    pub fn t0(&self) -> f64 {
        saddle_t0(self.s)
    }

    pub fn h(&self, t: f64) -> Result<f64> {
        saddle_h(t, self.s)
    }
}

pub fn saddle_v(l: f64, s: f64) -> f64 {
    (PI4 / (32.0 * l * l) - 3.0 * PI2 / (8.0 * l) + (PI2 + 21.0) / 24.0) * s
}

pub fn saddle_vp(l: f64, s: f64) -> f64 {
    (-PI4 / (16.0 * l * l * l) + 3.0 * PI2 / (8.0 * l * l)) * s
}

pub fn saddle_vpp(l: f64, s: f64) -> f64 {
    (3.0 * PI4 / (16.0 * l.powi(4)) - 3.0 * PI2 / (4.0 * l * l * l)) * s
}

/// `T₀ = -V'(ε)`; `h` is defined on `(T₀, ∞)`.
pub fn saddle_t0(s: f64) -> f64 {
    -saddle_vp(SADDLE_EPS, s)
}

/// Distance from `λ` to the boundary of the wedge `|arg λ| < π/4`, for real λ.
pub fn wedge_distance(l: f64) -> f64 {
    l / std::f64::consts::SQRT_2
}

/// Real root of `(T/s)h³ + (3π²/8)h - π⁴/16` by Cardano's formula, one Newton polish.
///
/// Defined for every `T, s > 0`; see [`saddle_h`] for the range-checked version.
pub fn cardano_root(t: f64, s: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite() && s > 0.0 && s.is_finite()) {
        return Err(Error::domain("T and s must be positive"));
    }
    let a = PI4 * s / (32.0 * t);
    let z = 2.0 * s / (PI2 * t);
    let r = (1.0 + z).sqrt();
    let h0 = a.cbrt() * ((r + 1.0).cbrt() - (z / (r + 1.0)).cbrt());
    let f = |h: f64| (t / s) * h * h * h + 3.0 * PI2 / 8.0 * h - PI4 / 16.0;
    let fp = |h: f64| 3.0 * (t / s) * h * h + 3.0 * PI2 / 8.0;
    Ok(h0 - f(h0) / fp(h0))
}

/// Relative residual of the defining cubic at `h`.
pub fn cubic_residual(h: f64, t: f64, s: f64) -> f64 {
    ((t / s) * h * h * h + 3.0 * PI2 / 8.0 * h - PI4 / 16.0).abs() / (PI4 / 16.0)
}

/// `h(T)`, the inverse of `-V'` on `(0, ε)`.
pub fn saddle_h(t: f64, s: f64) -> Result<f64> {
    SaddleFunctions::new(s)?;
    let t0 = saddle_t0(s);
    if !(t > t0) {
        return Err(Error::OutOfRange { value: t, lower: t0 });
    }
    cardano_root(t, s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleExponent {
    pub h: f64,
    /// `T h(T) + V(h(T))`.
    pub exact: f64,
    /// `C1 T^{2/3} - C2 T^{1/3} + C3`.
    pub expansion: f64,
    pub difference: f64,
}

pub fn saddle_exponent(t: f64, s: f64) -> Result<SaddleExponent> {
    let h = saddle_h(t, s)?;
    let exact = t * h + saddle_v(h, s);
    let expansion = stretched_exponent(s, t);
    Ok(SaddleExponent { h, exact, expansion, difference: exact - expansion })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_residual_small() {
        for &t in &[1.0, 1e3, 1e6] {
            for &s in &[0.1, 1.0, 10.0] {
                let h = cardano_root(t, s).unwrap();
                assert!(cubic_residual(h, t, s) <= 1e-10, "{t} {s}");
            }
        }
    }

    #[test]
    fn inverse_derivative_identity() {
        for &t in &[20.0, 1e3, 1e6] {
            let h = saddle_h(t, 1.0).unwrap();
            assert!(h > 0.0 && h < SADDLE_EPS);
            assert!(((-saddle_vp(h, 1.0) - t) / t).abs() < 1e-9);
        }
    }

    #[test]
    fn leading_order_of_h() {
        // first correction is -2h/π², about 1.7% at T = 1e4 s and 0.8% at 1e5 s
        let s = 2.0;
        for &(f, bound) in &[(1e4, 0.02), (1e5, 0.01)] {
            let t = f * s;
            let h = saddle_h(t, s).unwrap();
            let lead = (16.0 * t / (PI4 * s)).cbrt();
            let gap = 1.0 - h * lead;
            assert!(gap > 0.0 && gap < bound, "{f}: {gap}");
            assert!((gap / (2.0 * h / PI2) - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn t0_and_range() {
        let t0 = saddle_t0(1.0);
        assert!((t0 - 160.0 / PI2).abs() < 1e-12);
        assert!(matches!(saddle_h(t0 * 0.9, 1.0), Err(Error::OutOfRange { .. })));
        assert!(saddle_vpp(SADDLE_EPS * 0.999, 1.0) > 0.0);
    }

    #[test]
    fn exponent_gap() {
        let e = saddle_exponent(1e6, 1.0).unwrap();
        assert!((e.difference / e.exact).abs() <= 1e-4);
        for k in 0..9 {
            let t = 10f64.powf(2.0 + 0.5 * k as f64);
            let e = saddle_exponent(t, 1.0).unwrap();
            assert!(e.exact >= e.expansion - 1.0);
        }
    }
}
