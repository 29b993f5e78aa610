//! Brownian motion killed at ±1 and its Doob transform, the taboo process
//! `dY = -(π/2) tan(πY/2) dt + dW`.
//!
//! With `θ = π(x+1)/2` the killed kernel is `Σ e^{-n²π²t/8} sin(nθ₁) sin(nθ₂)` and
//! the taboo kernel becomes
//!
//! ```text
//! p̃_t(x₁,x₂) = sin θ₂ Σ_{n≥1} e^{-(n²-1)π²t/8} U_{n-1}(cos θ₁) sin(nθ₂)
//! ```
//!
//! with `U` the Chebyshev polynomials of the second kind, which keeps the
//! `1/cos(πx₁/2)` factor bounded near the walls.

use super::series::{SeriesTolerance, SMALL_TIME};
use crate::error::{Error, Result};
use crate::special::norm_pdf;
use std::f64::consts::{FRAC_PI_2, PI};

fn check_open(x: f64, name: &str) -> Result<()> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("{name} = {x} must lie in (-1, 1)")));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("time {t} must be positive")));
    }
    Ok(())
}

/// Drift `-(π/2) tan(πy/2)` of the taboo process.
pub fn taboo_drift(y: f64) -> Result<f64> {
    check_open(y, "y")?;
    Ok(-FRAC_PI_2 * (FRAC_PI_2 * y).tan())
}

/// Transition density of Brownian motion absorbed at ±1.
pub fn absorbed_density(x1: f64, x2: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    check_time(t)?;
    if !(x1.abs() <= 1.0 && x2.abs() <= 1.0) {
        return Err(Error::domain("absorbed density needs points in [-1, 1]"));
    }
    if x1.abs() == 1.0 || x2.abs() == 1.0 {
        return Ok(0.0);
    }
    let p = if t >= SMALL_TIME { absorbed_series(x1, x2, t, tol)? } else { absorbed_images(x1, x2, t, tol)? };
    Ok(p.max(0.0))
}

fn absorbed_series(x1: f64, x2: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    let a = FRAC_PI_2 * (x1 + 1.0);
    let b = FRAC_PI_2 * (x2 + 1.0);
    let c = PI * PI * t / 8.0;
    let mut sum = 0.0;
    for n in 1..=tol.max_terms {
        let nf = n as f64;
        sum += (-nf * nf * c).exp() * (nf * a).sin() * (nf * b).sin();
        let m = nf + 1.0;
        if (-m * m * c).exp() < tol.abs_tol {
            return Ok(sum);
        }
    }
    Err(Error::Truncation { terms: tol.max_terms, last_bound: f64::NAN })
}

fn absorbed_images(x1: f64, x2: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    let st = t.sqrt();
    let g = |z: f64| norm_pdf(z / st) / st;
    let term = |k: f64| g(x2 - x1 + 4.0 * k) - g(x2 + x1 + 2.0 + 4.0 * k);
    let mut sum = term(0.0);
    for k in 1..tol.max_terms {
        let kf = k as f64;
        sum += term(kf) + term(-kf);
        if 4.0 * g(4.0 * kf - 4.0) < tol.abs_tol {
            return Ok(sum);
        }
    }
    Err(Error::Truncation { terms: tol.max_terms, last_bound: f64::NAN })
}

// Σ_{n≥1} e^{-(n²-1)c} U_{n-1}(cos θ₁) g(n), stopping on the bound n e^{-(n²-1)c} h(n).
fn chebyshev_sum<G, H>(theta1: f64, c: f64, tol: SeriesTolerance, g: G, h: H) -> Result<f64>
where
    G: Fn(usize) -> f64,
    H: Fn(usize) -> f64,
{
    let cos1 = theta1.cos();
    let (mut u_prev, mut u_cur) = (0.0, 1.0);
    let mut sum = 0.0;
    for n in 1..=tol.max_terms {
        let nf = n as f64;
        sum += (-(nf * nf - 1.0) * c).exp() * u_cur * g(n);
        let u_next = 2.0 * cos1 * u_cur - u_prev;
        u_prev = u_cur;
        u_cur = u_next;
        let m = nf + 1.0;
        if (-(m * m - 1.0) * c).exp() * m * h(n + 1) < tol.abs_tol {
            return Ok(sum);
        }
    }
    Err(Error::Truncation { terms: tol.max_terms, last_bound: f64::NAN })
}

/// Transition density of the taboo process.
pub fn taboo_transition_density(x1: f64, x2: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    check_open(x1, "x1")?;
    check_open(x2, "x2")?;
    check_time(t)?;
    if t < SMALL_TIME {
        let p = absorbed_images(x1, x2, t, tol)?;
        let ratio = (FRAC_PI_2 * x2).cos() / (FRAC_PI_2 * x1).cos();
        return Ok((PI * PI * t / 8.0).exp() * ratio * p.max(0.0));
    }
    let th1 = FRAC_PI_2 * (x1 + 1.0);
    let th2 = FRAC_PI_2 * (x2 + 1.0);
    let s = chebyshev_sum(th1, PI * PI * t / 8.0, tol, |n| (n as f64 * th2).sin(), |_| 1.0)?;
    Ok((th2.sin() * s).max(0.0))
}

/// `∫_0^Θ sin θ sin(nθ) dθ`.
fn sin_product_integral(n: usize, big_theta: f64) -> f64 {
    if n == 1 {
        0.5 * (big_theta - 0.5 * (2.0 * big_theta).sin())
    } else {
        let a = (n - 1) as f64;
        let b = (n + 1) as f64;
        0.5 * ((a * big_theta).sin() / a - (b * big_theta).sin() / b)
    }
}

/// Distribution function of `p̃_t(x1, ·)` evaluated at `x2`.
pub fn taboo_transition_cdf(x1: f64, x2: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    check_open(x1, "x1")?;
    check_time(t)?;
    if x2 <= -1.0 {
        return Ok(0.0);
    }
    if x2 >= 1.0 {
        return Ok(1.0);
    }
    let th1 = FRAC_PI_2 * (x1 + 1.0);
    let big = FRAC_PI_2 * (x2 + 1.0);
    let s = chebyshev_sum(
        th1,
        PI * PI * t / 8.0,
        tol,
        |n| sin_product_integral(n, big),
        |n| if n == 1 { PI } else { 2.0 / (n - 1) as f64 },
    )?;
    Ok((2.0 / PI * s).clamp(0.0, 1.0))
}

/// Inverse of [`taboo_transition_cdf`] in its second argument.
pub fn taboo_transition_quantile(x1: f64, u: f64, t: f64, tol: SeriesTolerance) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain(format!("probability {u} must lie in (0, 1)")));
    }
    let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
    let mut x = x1;
    for _ in 0..200 {
        let f = taboo_transition_cdf(x1, x, t, tol)? - u;
        if f == 0.0 {
            return Ok(x);
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo < 1e-13 {
            break;
        }
        let d = taboo_transition_density(x1, x, t, tol)?;
        let step = f / d;
        let newton = x - step;
        if d > 0.0 && step.abs() < 1e-14 {
            return Ok(newton.clamp(lo, hi));
        }
        x = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    Ok(x)
}

/// Long-run density `cos²(πy/2)` of the taboo process.
pub fn taboo_stationary_density(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        return 0.0;
    }
    let c = (FRAC_PI_2 * y).cos();
    c * c
}

pub fn taboo_stationary_cdf(y: f64) -> f64 {
    if y <= -1.0 {
        0.0
    } else if y >= 1.0 {
        1.0
    } else {
        0.5 * (y + 1.0) + (PI * y).sin() / (2.0 * PI)
    }
}
