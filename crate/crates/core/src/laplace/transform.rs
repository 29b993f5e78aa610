//! Laplace transform of `R(T) = P_y(Γ_T ∈ (0, s])` and derived quantities.
//!
//! ```text
//! L(R)(λ) = u(λ)/λ · (1 - e^{-λs} erfcx(v(λ) √(s/2)))
//! ```
//!
//! which equals `u/(√(2π)λ) (√(2π) - 2 e^{ws} ∫_0^∞ e^{-(x+v√s)²/2} dx)`. The
//! value is assembled in log form so that `e^{w s}` never overflows.

use super::lambda::ComplexLambda;
use super::uvw::{uvw_raw, uvw_shift_raw};
use super::value::TransformValue;
use crate::analytic::{qsd_density, saddle_v};
use crate::error::{Error, Result};
use crate::quad;
use crate::special::LAMBDA0;
use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

type C = Complex64;

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("budget s = {s} must be positive")));
    }
    Ok(())
}

fn check_y(y: f64) -> Result<()> {
    if !(y.abs() <= 1.0) {
        return Err(Error::domain(format!("y = {y} outside [-1, 1]")));
    }
    Ok(())
}

/// `ln erfcx(a)` without overflow for `Re a ≪ 0`.
pub fn ln_erfcx(a: C) -> C {
    let a2 = a * a;
    if a.re < 0.0 && a2.re > 600.0 {
        // erfcx(a) = 2 e^{a²} - erfcx(-a)
        let tail = (-a).erfcx() * (-a2).exp() * 0.5;
        a2 + LN_2 + (1.0 - tail).ln()
    } else {
        a.erfcx().ln()
    }
}

/// `ln(1 - e^{le})`.
fn ln_one_minus_exp(le: C) -> C {
    if le.re > 35.0 {
        le + ((-le).exp() - 1.0).ln()
    } else if le.re < -35.0 {
        let e = le.exp();
        -e - 0.5 * e * e
    } else {
        (1.0 - le.exp()).ln()
    }
}

/// Log of `u/μ · (1 - e^{-μs} erfcx(v√(s/2)))`.
fn ln_core(mu: C, u: C, v: C, s: f64) -> C {
    let a = v * (0.5 * s).sqrt();
    let le = -mu * s + ln_erfcx(a);
    u.ln() - mu.ln() + ln_one_minus_exp(le)
}

fn h_left_nonzero(l: &ComplexLambda) -> Result<C> {
    let z = l.value();
    if !(z.re > -LAMBDA0) {
        return Err(Error::domain(format!("λ = {z} outside H←")));
    }
    if z == C::new(0.0, 0.0) {
        return Err(Error::domain("λ = 0 excluded"));
    }
    Ok(z)
}

/// `L(R)(λ)` at `λ ∈ H← \ {0}`.
pub fn laplace_r(l: ComplexLambda, y: f64, s: f64) -> Result<TransformValue> {
    let z = h_left_nonzero(&l)?;
    check_y(y)?;
    check_s(s)?;
    let f = uvw_raw(z, y)?;
    Ok(TransformValue::from_ln(ln_core(z, f.u, f.v, s)))
}

/// Plain-arithmetic evaluation of the same closed form; overflows where the log form does not.
pub fn laplace_r_plain(l: ComplexLambda, y: f64, s: f64) -> Result<C> {
    let z = h_left_nonzero(&l)?;
    check_y(y)?;
    check_s(s)?;
    let f = uvw_raw(z, y)?;
    let e = (-z * s).exp() * (f.v * (0.5 * s).sqrt()).erfcx();
    let r = f.u / z * (1.0 - e);
    if !(r.re.is_finite() && r.im.is_finite()) {
        return Err(Error::Accuracy { message: "plain evaluation overflowed".into(), estimate: r.re, other: None });
    }
    Ok(r)
}

/// Raw double integral defining `L(R)`, by nested adaptive quadrature.
///
/// With `x = ρ t`, `r = ρ²` the integrand becomes the smooth
/// `e^{-vρt - λρ² - t²/2}(2ρ + v t/λ)` on `[0, √s] × [0, ∞)`.
pub fn laplace_r_raw(l: ComplexLambda, y: f64, s: f64) -> Result<C> {
    let z = h_left_nonzero(&l)?;
    check_y(y)?;
    check_s(s)?;
    let f = uvw_raw(z, y)?;
    let v = f.v;
    let integrand =
        move |rho: f64, t: f64| (-v * rho * t - z * rho * rho - 0.5 * t * t).exp() * (2.0 * rho + v * t / z);
    let total = double_integral(integrand, s.sqrt(), t_cutoff(v, s), 1e-13)?;
    Ok(2.0 * f.u / (2.0 * PI).sqrt() * total)
}

// Beyond this t the Gaussian factor is below e^{-60} relative to the peak.
fn t_cutoff(v: C, s: f64) -> f64 {
    let drift = (-v.re * s.sqrt()).max(0.0);
    drift + 12.0
}

fn double_integral<F: Fn(f64, f64) -> C>(g: F, rho_max: f64, t_max: f64, rel_tol: f64) -> Result<C> {
    let v = quad::smooth_complex_2d(g, rho_max, t_max, rel_tol)?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Accuracy {
            message: "raw quadrature produced a non-finite value".into(),
            estimate: v.re,
            other: Some(v.im),
        });
    }
    Ok(v)
}

/// `∬ |integrand|` of [`laplace_r_raw`], finite whenever the raw integral converges absolutely.
pub fn laplace_r_raw_abs_bound(l: ComplexLambda, s: f64) -> Result<f64> {
    let z = h_left_nonzero(&l)?;
    check_s(s)?;
    let v = uvw_raw(z, 0.0)?.v;
    let g = move |rho: f64, t: f64| {
        C::new(((-v * rho * t - z * rho * rho - 0.5 * t * t).exp() * (2.0 * rho + v * t / z)).norm(), 0.0)
    };
    Ok(double_integral(g, s.sqrt(), t_cutoff(v, s), 1e-4)?.re)
}

fn h_plane(l: &ComplexLambda) -> Result<C> {
    let z = l.value();
    if !(z.re > 0.0) {
        return Err(Error::domain(format!("λ = {z} outside H")));
    }
    Ok(z)
}

/// `Ŝ(λ) = λ · L(R)(λ - π²/8)`, the transform of `S = e^{π²T/8} R` times λ.
pub fn fn_s_hat(l: ComplexLambda, y: f64, s: f64) -> Result<TransformValue> {
    let z = h_plane(&l)?;
    check_y(y)?;
    check_s(s)?;
    let f = uvw_shift_raw(z, y)?;
    let mu = z - LAMBDA0;
    Ok(TransformValue::from_ln(z.ln() + ln_core(mu, f.u, f.v, s)))
}

/// `∫ u→(λ, y) dν(y)` by quadrature over the qsd.
pub fn nu_average_u_shift(l: C) -> Result<C> {
    let f = |y: f64| uvw_shift_raw(l, y).map(|r| r.u * qsd_density(y)).unwrap_or(C::new(f64::NAN, 0.0));
    let scale = uvw_shift_raw(l, 0.0)?.u.norm().max(1.0);
    quad::integrate_complex(f, -1.0, 1.0, 1e-13 * scale)
}

/// `Ŝ_ν(λ) = ∫ Ŝ_y(λ) dν(y)`; only `u` depends on `y`, so the quadrature acts on it.
pub fn fn_s_hat_nu(l: ComplexLambda, s: f64) -> Result<TransformValue> {
    let z = h_plane(&l)?;
    check_s(s)?;
    let ubar = nu_average_u_shift(z)?;
    let v = uvw_shift_raw(z, 0.0)?.v;
    let mu = z - LAMBDA0;
    Ok(TransformValue::from_ln(z.ln() + ln_core(mu, ubar, v, s)))
}

/// `(16/π²) λ u→(λ) e^{V(λ)}`.
pub fn ingham_equivalent(l: ComplexLambda, y: f64, s: f64) -> Result<TransformValue> {
    let z = h_plane(&l)?;
    check_y(y)?;
    check_s(s)?;
    let u = uvw_shift_raw(z, y)?.u;
    Ok(TransformValue::from_ln((16.0 / (PI * PI)).ln() + z.ln() + u.ln() + saddle_v_complex(z, s)))
}

/// `V(λ)` continued to complex λ.
pub fn saddle_v_complex(l: C, s: f64) -> C {
    if l.im == 0.0 {
        return C::new(saddle_v(l.re, s), 0.0);
    }
    let pi2 = PI * PI;
    (pi2 * pi2 / (32.0 * l * l) - 3.0 * pi2 / (8.0 * l) + (pi2 + 21.0) / 24.0) * s
}
