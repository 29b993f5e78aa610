//! Trapezoidal Bromwich integral on `Re λ = σ` with Euler summation.
//!
//! With step `π/T` the phase factor `e^{iωT}` is `(-1)^k`, so
//!
//! ```text
//! f(T) ≈ e^{σT}/T · [F(σ)/2 + Σ_{k≥1} (-1)^k Re F(σ + ikπ/T)]
//! ```
//!
//! The aliasing error is `O(e^{-2(σ-σ₀)T})`; with `σ = σ₀ + A/(2T)` it is
//! about `e^{-A}` relative. Samples are rescaled by their largest modulus
//! so transforms known only in log form never overflow.

use super::transform::Transform;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct BromwichOutput {
    /// `f(T)`; infinite if only the logarithm is representable.
    pub value: f64,
    /// `ln |f(T)|`.
    pub ln_abs: f64,
    /// Euler tail estimate plus the `e^{-A}` aliasing term, relative to `|f(T)|`.
    pub rel_error: f64,
    pub sigma: f64,
}

fn binomials(m: usize) -> Vec<f64> {
    let mut row = vec![1.0f64];
    for _ in 0..m {
        let mut next = vec![1.0; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row
}

fn euler_mean(partial: &[f64], n: usize, m: usize) -> f64 {
    let b = binomials(m);
    let total: f64 = b.iter().sum();
    (0..=m).map(|j| b[j] * partial[n + j]).sum::<f64>() / total
}

/// Inverts `tr` at `t` with `n` partial sums and Euler depth `m`.
pub fn bromwich<Tr: Transform + ?Sized>(tr: &Tr, t: f64, shift: f64, n: usize, m: usize) -> Result<BromwichOutput> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("T = {t} must be positive")));
    }
    let sigma = tr.abscissa(t) + shift / (2.0 * t);
    let h = PI / t;
    let logs: Vec<Complex64> = (0..=n + m)
        .into_par_iter()
        .map(|k| tr.eval(Complex64::new(sigma, k as f64 * h)).map(|v| v.ln()))
        .collect::<Result<Vec<_>>>()?;
    let top = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return Err(Error::Accuracy { message: "transform samples are not finite".into(), estimate: top, other: None });
    }
    let mut partial = Vec::with_capacity(logs.len());
    let mut acc = 0.0;
    for (k, l) in logs.iter().enumerate() {
        let term = (l - top).exp().re;
        acc += match k {
            0 => 0.5 * term,
            k if k % 2 == 1 => -term,
            _ => term,
        };
        partial.push(acc);
    }
    let a = euler_mean(&partial, n, m);
    let b = euler_mean(&partial, n - 1, m);
    let scale = sigma * t + top - t.ln();
    let ln_abs = a.abs().ln() + scale;
    let value = if ln_abs < 709.0 { a * scale.exp() } else { a.signum() * f64::INFINITY };
    let rel_error = (a - b).abs() / a.abs() + (-shift).exp();
    if !a.is_finite() {
        return Err(Error::Accuracy { message: "Euler sum is not finite".into(), estimate: a, other: None });
    }
    Ok(BromwichOutput { value, ln_abs, rel_error, sigma })
}
