//! Gaver–Stehfest inversion in software floating point.
//!
//! ```text
//! f(T) ≈ (ln 2/T) Σ_{k=1}^{N} V_k F(k ln 2/T)
//! V_k = (-1)^{k+M} Σ_{j=⌊(k+1)/2⌋}^{min(k,M)} j^M (2j)! / ((M-j)! j! (j-1)! (k-j)! (2j-k)!),  M = N/2
//! ```

use super::transform::Transform;
use crate::error::{Error, Result};
use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

fn consts() -> Result<Consts> {
    Consts::new().map_err(|e| Error::config(format!("extended precision unavailable: {e:?}")))
}

pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    x.to_string().parse().unwrap_or(f64::NAN)
}

/// Stehfest weights `V_1 … V_N`.
pub fn stehfest_weights(n: usize, p: usize) -> Vec<BigFloat> {
    let m = n / 2;
    let mut fact = vec![BigFloat::from_u64(1, p)];
    for i in 1..=2 * n {
        let next = fact[i - 1].mul(&BigFloat::from_u64(i as u64, p), p, RM);
        fact.push(next);
    }
    (1..=n)
        .map(|k| {
            let mut acc = BigFloat::from_u64(0, p);
            for j in k.div_ceil(2)..=k.min(m) {
                let num = BigFloat::from_u64(j as u64, p).powi(m, p, RM).mul(&fact[2 * j], p, RM);
                let den = fact[m - j].mul(&fact[j], p, RM).mul(&fact[j - 1], p, RM).mul(&fact[k - j], p, RM).mul(
                    &fact[2 * j - k],
                    p,
                    RM,
                );
                acc = acc.add(&num.div(&den, p, RM), p, RM);
            }
            if (k + m) % 2 == 1 {
                acc.neg()
            } else {
                acc
            }
        })
        .collect()
}

/// Output of a Gaver–Stehfest run.
#[derive(Debug, Clone, PartialEq)]
pub struct GaverOutput {
    pub value: f64,
    /// `ln |value|`, finite even when `value` overflows.
    pub ln_abs: f64,
    /// Whether every sample came from the extended-precision path.
    pub extended_samples: bool,
}

fn sample_f64<Tr: Transform + ?Sized>(tr: &Tr, x: f64, p: usize, cc: &mut Consts) -> Result<BigFloat> {
    let v = tr.eval(Complex64::new(x, 0.0))?;
    let plain = v.to_complex().re;
    if plain.is_finite() && plain != 0.0 {
        return Ok(BigFloat::from_f64(plain, p));
    }
    let mag = BigFloat::from_f64(v.log_modulus(), p).exp(p, RM, cc);
    Ok(if v.phase().cos() < 0.0 { mag.neg() } else { mag })
}

/// Inverts `tr` at `t` with `n` terms at `p` bits.
pub fn gaver_stehfest<Tr: Transform + ?Sized>(tr: &Tr, t: f64, n: usize, p: usize) -> Result<GaverOutput> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("T = {t} must be positive")));
    }
    let mut cc = consts()?;
    let weights = stehfest_weights(n, p);
    let tt = BigFloat::from_f64(t, p);
    let step = BigFloat::from_u64(2, p).ln(p, RM, &mut cc).div(&tt, p, RM);
    let mut sum = BigFloat::from_u64(0, p);
    let mut extended = true;
    for (i, w) in weights.iter().enumerate() {
        let x = step.mul(&BigFloat::from_u64(i as u64 + 1, p), p, RM);
        let fx = match tr.eval_mp(&x, p, &mut cc) {
            Some(v) => v,
            None => {
                extended = false;
                sample_f64(tr, to_f64(&x), p, &mut cc)?
            }
        };
        sum = sum.add(&w.mul(&fx, p, RM), p, RM);
    }
    let res = sum.mul(&step, p, RM);
    let value = to_f64(&res);
    let ln_abs = if res.is_zero() { f64::NEG_INFINITY } else { to_f64(&res.abs().ln(p, RM, &mut cc)) };
    if value.is_nan() {
        return Err(Error::Accuracy {
            message: "Gaver–Stehfest sum is not a number".into(),
            estimate: value,
            other: None,
        });
    }
    Ok(GaverOutput { value, ln_abs, extended_samples: extended })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_zero() {
        // Σ V_k = 0 because F = 1/λ (f = 1) must be reproduced exactly.
        for n in [8usize, 16, 24] {
            let p = 256;
            let w = stehfest_weights(n, p);
            let mut s = BigFloat::from_u64(0, p);
            for x in &w {
                s = s.add(x, p, RM);
            }
            assert!(to_f64(&s).abs() < 1e-40, "n = {n}: {}", to_f64(&s));
        }
    }

    #[test]
    fn small_order_weights() {
        // N = 4: V = (-2, 26, -48, 24)
        let w: Vec<f64> = stehfest_weights(4, 128).iter().map(to_f64).collect();
        assert_eq!(w, vec![-2.0, 26.0, -48.0, 24.0]);
    }

    #[test]
    fn conversion() {
        let x = BigFloat::from_f64(-1.25e-30, 128);
        assert_eq!(to_f64(&x), -1.25e-30);
    }
}
