//! The functions `u, v, w` on `H←` and their shifted versions `u→(λ) = u(λ - π²/8)`.
//!
//! With `z = √(2λ)`:
//!
//! ```text
//! v = z tanh z,   u = cosh(yz)/cosh z,   w = v²/2 - λ
//! ```
//!
//! All three are even in `z`. Near `λ = -π²/8` the shifted variables
//! `ζ = √(π²/4 - 2λ)` and `ε = π/2 - ζ = 2λ/(π/2 + ζ)` give
//! `v→ = -ζ cot ε` and `u→ = cos(yζ)/sin ε` without cancellation.

use super::lambda::ComplexLambda;
use crate::error::{Error, Result};
use crate::special::LAMBDA0;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uvw {
    pub u: C,
    pub v: C,
    pub w: C,
}

fn pole_check(l: C) -> Result<()> {
    if l.re > -LAMBDA0 * 0.5 {
        return Ok(());
    }
    // closest odd n with (2n+1)²π²/8 near -λ
    let k = ((-l.re / LAMBDA0).max(0.0)).sqrt();
    let odd = (2.0 * ((k - 1.0) / 2.0).round() + 1.0).max(1.0);
    let pole = -odd * odd * LAMBDA0;
    if (l - pole).norm() <= 1e-12 * pole.abs() {
        return Err(Error::Pole(format!("λ = {l} is a pole at {pole}")));
    }
    Ok(())
}

/// `u, v, w` at λ, principal branch and overflow-free for large `Re z`.
pub fn uvw_raw(l: C, y: f64) -> Result<Uvw> {
    if !(l.re.is_finite() && l.im.is_finite()) {
        return Err(Error::domain("λ must be finite"));
    }
    pole_check(l)?;
    if l == C::new(0.0, 0.0) {
        return Ok(Uvw { u: C::new(1.0, 0.0), v: C::new(0.0, 0.0), w: C::new(0.0, 0.0) });
    }
    let z = (2.0 * l).sqrt();
    let e = (-2.0 * z).exp();
    let v = z * (1.0 - e) / (1.0 + e);
    let ay = y.abs();
    let u = ((ay - 1.0) * z).exp() * (1.0 + (-2.0 * ay * z).exp()) / (1.0 + e);
    let w = 0.5 * v * v - l;
    if !(v.re.is_finite() && v.im.is_finite() && u.re.is_finite() && u.im.is_finite()) {
        return Err(Error::Pole(format!("λ = {l} too close to a pole")));
    }
    Ok(Uvw { u, v, w })
}

/// `u, v, w` computed from an arbitrary square root `z` of `2λ` with textbook formulas.
pub fn uvw_from_root(z: C, y: f64) -> Uvw {
    let l = 0.5 * z * z;
    let v = z * z.tanh();
    let u = (y * z).cosh() / z.cosh();
    Uvw { u, v, w: 0.5 * v * v - l }
}

/// `u→, v→, w→` at λ, i.e. `u, v, w` at `λ - π²/8`.
pub fn uvw_shift_raw(l: C, y: f64) -> Result<Uvw> {
    if l.norm() > 1.0 {
        return uvw_raw(l - LAMBDA0, y);
    }
    if l == C::new(0.0, 0.0) {
        return Err(Error::Pole("λ = 0 is a pole of the shifted functions".into()));
    }
    let zeta = (PI * PI / 4.0 - 2.0 * l).sqrt();
    let eps = 2.0 * l / (FRAC_PI_2 + zeta);
    let (se, ce) = (eps.sin(), eps.cos());
    let v = -zeta * ce / se;
    let u = (y * zeta).cos() / se;
    let w = 0.5 * v * v - (l - LAMBDA0);
    Ok(Uvw { u, v, w })
}

fn h_left(l: &ComplexLambda) -> Result<C> {
    let z = l.value();
    if !(z.re > -LAMBDA0) {
        return Err(Error::domain(format!("λ = {z} outside H←")));
    }
    Ok(z)
}

fn right_half(l: &ComplexLambda) -> Result<C> {
    let z = l.value();
    if !(z.re > 0.0) {
        return Err(Error::domain(format!("λ = {z} outside H")));
    }
    Ok(z)
}

pub fn fn_v(l: ComplexLambda) -> Result<C> {
    Ok(uvw_raw(h_left(&l)?, 0.0)?.v)
}

pub fn fn_u(l: ComplexLambda, y: f64) -> Result<C> {
    if !(y.abs() <= 1.0) {
        return Err(Error::domain(format!("y = {y} outside [-1, 1]")));
    }
    Ok(uvw_raw(h_left(&l)?, y)?.u)
}

pub fn fn_w(l: ComplexLambda) -> Result<C> {
    Ok(uvw_raw(h_left(&l)?, 0.0)?.w)
}

/// `v(λ - π²/8)` for `λ ∈ H`.
pub fn fn_v_shift(l: ComplexLambda) -> Result<C> {
    Ok(uvw_shift_raw(right_half(&l)?, 0.0)?.v)
}

pub fn fn_u_shift(l: ComplexLambda, y: f64) -> Result<C> {
    if !(y.abs() <= 1.0) {
        return Err(Error::domain(format!("y = {y} outside [-1, 1]")));
    }
    Ok(uvw_shift_raw(right_half(&l)?, y)?.u)
}

pub fn fn_w_shift(l: ComplexLambda) -> Result<C> {
    Ok(uvw_shift_raw(right_half(&l)?, 0.0)?.w)
}

/// `v→(λ) - (-π²/(4λ) + 3/2 + (3+π²)λ/(3π²))`, which is `O(λ²)`.
pub fn expansion_residual_v(l: ComplexLambda) -> Result<C> {
    let z = right_half(&l)?;
    let v = uvw_shift_raw(z, 0.0)?.v;
    let pi2 = PI * PI;
    Ok(v - (-pi2 / (4.0 * z) + 1.5 + (3.0 + pi2) * z / (3.0 * pi2)))
}

/// `w→(λ) - (π⁴/(32λ²) - 3π²/(8λ) + (π²+21)/24)`, which is `O(λ)`.
pub fn expansion_residual_w(l: ComplexLambda) -> Result<C> {
    let z = right_half(&l)?;
    let w = uvw_shift_raw(z, 0.0)?.w;
    let pi2 = PI * PI;
    Ok(w - (pi2 * pi2 / (32.0 * z * z) - 3.0 * pi2 / (8.0 * z) + (pi2 + 21.0) / 24.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplace::lambda::DomainTag;

    fn lam(re: f64, im: f64) -> ComplexLambda {
        ComplexLambda::new(re, im, DomainTag::HLeft).unwrap()
    }

    #[test]
    fn u_at_wall_is_one() {
        for &(re, im) in &[(0.3, 0.0), (1.0, 2.0), (-1.0, 0.5)] {
            let u = fn_u(lam(re, im), 1.0).unwrap();
            assert!((u - C::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn v_at_half() {
        let v = fn_v(lam(0.5, 0.0)).unwrap();
        assert!((v.re - 1f64.tanh()).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn removable_point_at_zero() {
        let r = uvw_raw(C::new(0.0, 0.0), 0.4).unwrap();
        assert_eq!(r.u, C::new(1.0, 0.0));
        assert_eq!(r.v, C::new(0.0, 0.0));
        let r = uvw_raw(C::new(1e-12, 1e-12), 0.4).unwrap();
        assert!((r.u - 1.0).norm() < 1e-11 && r.v.norm() < 1e-11 && r.w.norm() < 1e-11);
    }

    #[test]
    fn branch_invariance() {
        for &(re, im) in &[(0.5, 0.0), (1.0, 2.0), (-1.0, 0.5), (3.0, -4.0)] {
            let l = C::new(re, im);
            let a = uvw_raw(l, 0.3).unwrap();
            let z = (2.0 * l).sqrt();
            let b = uvw_from_root(-z, 0.3);
            let scale = a.v.norm().max(1.0);
            assert!((a.v - b.v).norm() <= 1e-13 * scale);
            assert!((a.u - b.u).norm() <= 1e-13 * a.u.norm().max(1.0));
            assert!((a.w - b.w).norm() <= 1e-13 * a.w.norm().max(1.0));
        }
    }

    #[test]
    fn large_arguments_do_not_overflow() {
        let r = uvw_raw(C::new(1e6, 3e5), 0.2).unwrap();
        assert!(r.u.norm() < 1e-100 && r.v.re > 0.0);
    }

    #[test]
    fn pole_detected() {
        assert!(matches!(uvw_raw(C::new(-LAMBDA0, 0.0), 0.0), Err(Error::Pole(_))));
        assert!(matches!(uvw_raw(C::new(-9.0 * LAMBDA0, 0.0), 0.0), Err(Error::Pole(_))));
        assert!(uvw_raw(C::new(-4.0 * LAMBDA0, 0.0), 0.0).is_ok());
    }

    #[test]
    fn shifted_forms_agree_with_direct() {
        for &(re, im) in &[(0.9, 0.1), (0.5, -0.6), (0.7, 0.0)] {
            let l = C::new(re, im);
            let a = uvw_shift_raw(l, -0.4).unwrap();
            let b = uvw_raw(l - LAMBDA0, -0.4).unwrap();
            assert!((a.u - b.u).norm() < 1e-12 * a.u.norm());
            assert!((a.v - b.v).norm() < 1e-12 * a.v.norm());
            assert!((a.w - b.w).norm() < 1e-11 * a.w.norm());
        }
    }

    #[test]
    fn shifted_u_leading_order() {
        let l = ComplexLambda::new(1e-3, 0.0, DomainTag::H).unwrap();
        let u = fn_u_shift(l, 0.0).unwrap();
        assert!((u.re / (PI / (2.0 * 1e-3)) - 1.0).abs() < 0.01);
    }
}
