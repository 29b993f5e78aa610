//! Finite-horizon trend rules.

use crate::stats::strictly_less;

/// `|v_i - target|` strictly decreasing along the sequence.
pub fn monotone_toward(values: &[f64], target: f64) -> bool {
    values.len() >= 2 && values.windows(2).all(|w| (w[1] - target).abs() < (w[0] - target).abs())
}

/// Strictly decreasing, each step beyond `k` joint standard errors.
pub fn decreasing_beyond(values: &[f64], errs: &[f64], k: f64) -> bool {
    values.len() >= 2 && (1..values.len()).all(|i| strictly_less(values[i], errs[i], values[i - 1], errs[i - 1], k))
}

/// Strictly decreasing point estimates.
pub fn decreasing(values: &[f64]) -> bool {
    values.len() >= 2 && values.windows(2).all(|w| w[1] < w[0])
}

/// Strictly increasing point estimates.
pub fn increasing(values: &[f64]) -> bool {
    values.len() >= 2 && values.windows(2).all(|w| w[1] > w[0])
}

/// Ratio `a/b` and its delta-method standard error.
pub fn ratio_with_err(a: f64, sa: f64, b: f64, sb: f64) -> (f64, f64) {
    let r = a / b;
    (r, r.abs() * ((sa / a).powi(2) + (sb / b).powi(2)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        assert!(monotone_toward(&[1.5, 1.3, 1.1], 1.0));
        assert!(monotone_toward(&[0.5, 0.8, 1.1], 1.0));
        assert!(!monotone_toward(&[0.5, 1.6], 1.0));
        assert!(decreasing_beyond(&[1.0, 0.9], &[0.01, 0.01], 3.0));
        assert!(!decreasing_beyond(&[1.0, 0.97], &[0.01, 0.01], 3.0));
        assert!(increasing(&[0.1, 0.2]) && !increasing(&[0.2, 0.2]));
        let (r, e) = ratio_with_err(2.0, 0.2, 4.0, 0.4);
        assert!((r - 0.5).abs() < 1e-15 && (e - 0.5 * (0.02f64).sqrt()).abs() < 1e-15);
    }
}
