//! Large-T asymptotics of `P_y(Γ_T ≤ s)` and of `S_ν(T) = e^{π²T/8} P_ν(Γ_T ∈ (0,s])`.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

/// Starting point, occupation budget and horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticInput {
    pub y: f64,
    pub s: f64,
    pub t: f64,
}

impl AsymptoticInput {
    pub fn new(y: f64, s: f64, t: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("budget s = {s} must be positive")));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("horizon T = {t} must be positive")));
        }
        Ok(AsymptoticInput { y, s, t })
    }
}

/// A positive quantity `exp(log_prefactor + exponent)` kept in log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScale {
    pub log_prefactor: f64,
    pub exponent: f64,
}

impl LogScale {
    pub fn ln(&self) -> f64 {
        self.log_prefactor + self.exponent
    }

    /// Plain value; `None` when it lies below `e^{-700}` or overflows.
    pub fn value(&self) -> Option<f64> {
        let l = self.ln();
        if !(-700.0..=709.0).contains(&l) {
            None
        } else {
            Some(l.exp())
        }
    }
}

/// Coefficient of `T^{2/3}` in the stretched exponential.
pub fn c1(s: f64) -> f64 {
    3.0 / 2f64.powf(7.0 / 3.0) * PI.powf(4.0 / 3.0) * s.cbrt()
}

/// Coefficient of `T^{1/3}`.
pub fn c2(s: f64) -> f64 {
    3.0 / 2f64.powf(5.0 / 3.0) * PI.powf(2.0 / 3.0) * s.powf(2.0 / 3.0)
}

pub fn c3(s: f64) -> f64 {
    (PI * PI + 12.0) * s / 24.0
}

/// `C1 T^{2/3} - C2 T^{1/3} + C3`, the three-term saddle expansion.
pub fn stretched_exponent(s: f64, t: f64) -> f64 {
    let t13 = t.cbrt();
    c1(s) * t13 * t13 - c2(s) * t13 + c3(s)
}

pub fn log_asymp_prob_leq_s(inp: AsymptoticInput) -> Result<LogScale> {
    if !(inp.y.abs() < 1.0) {
        return Err(Error::domain(format!("start point {} must lie in (-1, 1)", inp.y)));
    }
    let log_prefactor = (FRAC_PI_2 * inp.y).cos().ln() + 19.0 / 6.0 * LN_2
        - 0.5 * 3f64.ln()
        - 13.0 / 6.0 * PI.ln()
        - inp.s.ln() / 6.0
        - inp.t.ln() / 3.0;
    let exponent = -PI * PI * inp.t / 8.0 + stretched_exponent(inp.s, inp.t);
    Ok(LogScale { log_prefactor, exponent })
}

/// Asymptotic equivalent of `P_y(Γ_T ≤ s)`; errors when below `e^{-700}`.
pub fn asymp_prob_leq_s(inp: AsymptoticInput) -> Result<f64> {
    let l = log_asymp_prob_leq_s(inp)?;
    l.value().ok_or_else(|| Error::domain(format!("value e^{} not representable, use the log form", l.ln())))
}

pub fn log_asymp_snu(s: f64, t: f64) -> Result<LogScale> {
    let inp = AsymptoticInput::new(0.0, s, t)?;
    let log_prefactor = 7.0 / 6.0 * LN_2 - 0.5 * 3f64.ln() - 7.0 / 6.0 * PI.ln() - inp.s.ln() / 6.0 - inp.t.ln() / 3.0;
    Ok(LogScale { log_prefactor, exponent: stretched_exponent(s, t) })
}

/// Asymptotic equivalent of `S_ν(T)` (already rescaled by `e^{π²T/8}`).
pub fn asymp_snu(s: f64, t: f64) -> Result<f64> {
    let l = log_asymp_snu(s, t)?;
    l.value().ok_or_else(|| Error::domain(format!("value e^{} not representable, use the log form", l.ln())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_factorization() {
        let a0 = asymp_prob_leq_s(AsymptoticInput::new(0.0, 0.7, 9.0).unwrap()).unwrap();
        for &y in &[-0.9, -0.3, 0.5, 0.99] {
            let a = asymp_prob_leq_s(AsymptoticInput::new(y, 0.7, 9.0).unwrap()).unwrap();
            assert!((a / a0 - (FRAC_PI_2 * y).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_with_snu() {
        for &(y, s, t) in &[(0.0, 1.0, 20.0), (0.4, 0.5, 5.0), (-0.8, 3.0, 60.0)] {
            let p = log_asymp_prob_leq_s(AsymptoticInput::new(y, s, t).unwrap()).unwrap().ln();
            let q = log_asymp_snu(s, t).unwrap().ln() - PI * PI * t / 8.0 + (4.0 / PI * (FRAC_PI_2 * y).cos()).ln();
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn budget_scaling() {
        let t = 500.0;
        let s = 0.3;
        let d = log_asymp_snu(8.0 * s, t).unwrap().ln() - log_asymp_snu(s, t).unwrap().ln();
        let expected = -(8.0f64).ln() / 6.0 + stretched_exponent(8.0 * s, t) - stretched_exponent(s, t);
        assert!((d - expected).abs() < 1e-9);
    }

    #[test]
    fn log_form_at_t100() {
        let inp = AsymptoticInput::new(0.0, 1.0, 100.0).unwrap();
        let l = log_asymp_prob_leq_s(inp).unwrap();
        let expected = -PI * PI * 100.0 / 8.0 + c1(1.0) * 100f64.powf(2.0 / 3.0) - c2(1.0) * 100f64.cbrt() + c3(1.0);
        assert!((l.exponent - expected).abs() < 1e-12);
        assert!(asymp_prob_leq_s(inp).unwrap() > 0.0);
        let far = AsymptoticInput::new(0.0, 1.0, 1e4).unwrap();
        assert!(asymp_prob_leq_s(far).is_err());
        assert!(log_asymp_prob_leq_s(far).unwrap().ln().is_finite());
    }

    #[test]
    fn domain_errors() {
        assert!(log_asymp_prob_leq_s(AsymptoticInput::new(1.0, 1.0, 1.0).unwrap()).is_err());
        assert!(AsymptoticInput::new(0.0, 0.0, 1.0).is_err());
        assert!(asymp_snu(1.0, -2.0).is_err());
    }
}
