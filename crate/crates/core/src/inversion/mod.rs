//! Numerical Laplace inversion with a cross-method error estimate.

pub mod bromwich;
pub mod config;
pub mod fixtures;
pub mod gaver;
pub mod transform;

pub use bromwich::{bromwich, BromwichOutput};
pub use config::{InversionConfig, Method};
pub use fixtures::{ExitCdfTransform, ExponentialTransform, RTransform, SnuTransform, SurvivalTransform, SyTransform};
pub use gaver::{gaver_stehfest, stehfest_weights, GaverOutput};
pub use transform::{FnTransform, Transform};

use crate::error::{Error, Result};
use crate::special::LAMBDA0;

/// Largest horizon for which `S_ν(T)` is returned as a plain double.
pub const SNU_T_MAX: f64 = 80.0;

#[derive(Debug, Clone, PartialEq)]
pub struct InversionResult {
    pub value: f64,
    pub ln_abs: f64,
    /// `|GS - Bromwich|` when cross-checked, otherwise the method's own estimate.
    pub error_estimate: f64,
    pub method: Method,
    /// Value from the other method, when cross-checked.
    pub other: Option<f64>,
}

fn run<Tr: Transform + ?Sized>(tr: &Tr, t: f64, cfg: &InversionConfig, method: Method) -> Result<(f64, f64, f64)> {
    match method {
        Method::GaverStehfest => {
            let g = gaver_stehfest(tr, t, cfg.n_terms, cfg.precision_bits)?;
            // no internal estimate: half-order run as a proxy
            let h = gaver_stehfest(tr, t, cfg.n_terms - 2, cfg.precision_bits)?;
            Ok((g.value, g.ln_abs, (g.value - h.value).abs()))
        }
        Method::BromwichTrapezoid => {
            let b = bromwich(tr, t, cfg.bromwich_shift, cfg.bromwich_terms, cfg.euler_terms)?;
            Ok((b.value, b.ln_abs, b.rel_error * b.value.abs()))
        }
    }
}

/// Inverse transform at `t`.
///
/// With `cfg.cross_check` both methods run; disagreement beyond
/// `max(1e-8, 1e-6 |value|)` is an accuracy error carrying both values.
pub fn invert<Tr: Transform + ?Sized>(tr: &Tr, t: f64, cfg: &InversionConfig) -> Result<InversionResult> {
    cfg.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("T = {t} must be positive")));
    }
    let (value, ln_abs, own) = run(tr, t, cfg, cfg.method)?;
    if !cfg.cross_check {
        return Ok(InversionResult { value, ln_abs, error_estimate: own, method: cfg.method, other: None });
    }
    let other_method = match cfg.method {
        Method::GaverStehfest => Method::BromwichTrapezoid,
        Method::BromwichTrapezoid => Method::GaverStehfest,
    };
    let (other, _, _) = run(tr, t, cfg, other_method)?;
    let diff = (value - other).abs();
    if !(diff <= 1e-8f64.max(1e-6 * value.abs())) {
        return Err(Error::Accuracy {
            message: "Gaver–Stehfest and Bromwich disagree".into(),
            estimate: value,
            other: Some(other),
        });
    }
    Ok(InversionResult { value, ln_abs, error_estimate: diff, method: cfg.method, other: Some(other) })
}

/// `ln S_ν(T)` for any horizon.
pub fn snu_log_from_transform(s: f64, t: f64, cfg: &InversionConfig) -> Result<f64> {
    let tr = SnuTransform::new(s)?;
    let r = invert(&tr, t, cfg)?;
    if !(r.value > 0.0) {
        return Err(Error::Accuracy {
            message: "inverted S_ν is not positive".into(),
            estimate: r.value,
            other: r.other,
        });
    }
    Ok(r.ln_abs)
}

/// `S_ν(T) = e^{π²T/8} P_ν(Γ_T ∈ (0, s])` by inversion of `Ŝ_ν(λ)/λ`, for `T ≤ 80`.
pub fn snu_from_transform(s: f64, t: f64, cfg: &InversionConfig) -> Result<f64> {
    if t > SNU_T_MAX {
        return Err(Error::domain(format!("T = {t} above {SNU_T_MAX}; use snu_log_from_transform")));
    }
    Ok(snu_log_from_transform(s, t, cfg)?.exp())
}

/// `P_ν(Γ_T ∈ (0, s]) = e^{-π²T/8} S_ν(T)`.
pub fn prob_nu_in_0s(s: f64, t: f64, cfg: &InversionConfig) -> Result<f64> {
    Ok((snu_log_from_transform(s, t, cfg)? - LAMBDA0 * t).exp())
}

/// `P_y(Γ_T ∈ (0, s])` by direct inversion of `L(R)`.
pub fn r_from_transform(y: f64, s: f64, t: f64, cfg: &InversionConfig) -> Result<f64> {
    Ok(invert(&RTransform::new(y, s)?, t, cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{exit_prob_zero, SeriesTolerance};

    #[test]
    fn exponential_fixture() {
        let a = LAMBDA0;
        let exact = (-a * 3.0).exp();
        let tr = ExponentialTransform { a };
        let b = invert(&tr, 3.0, &InversionConfig::bromwich()).unwrap();
        assert!((b.value - exact).abs() <= 1e-10 * exact, "{} vs {exact}", b.value);
        let g = invert(&tr, 3.0, &InversionConfig { cross_check: false, ..InversionConfig::gaver_stehfest() }).unwrap();
        assert!((g.value - exact).abs() <= 1e-10 * exact, "{} vs {exact}", g.value);
        let both = invert(&tr, 3.0, &InversionConfig::default()).unwrap();
        assert!(both.error_estimate <= 1e-6 * exact);
    }

    #[test]
    fn exit_cdf_fixture() {
        let r = invert(&ExitCdfTransform::new(0.0).unwrap(), 2.0, &InversionConfig::default()).unwrap();
        let p0 = exit_prob_zero(0.0, 2.0, SeriesTolerance::default()).unwrap();
        assert!((1.0 - r.value - p0).abs() <= 1e-8, "{} vs {p0}", 1.0 - r.value);
        let r = invert(&SurvivalTransform::new(0.0).unwrap(), 2.0, &InversionConfig::default()).unwrap();
        assert!((r.value - p0).abs() <= 1e-8);
    }

    #[test]
    fn disagreement_is_an_accuracy_error() {
        // GS from double-precision samples with many terms is hopeless
        let tr = FnTransform::new(|l| ExponentialTransform { a: 1.0 }.eval(l), -1.0);
        let cfg = InversionConfig { n_terms: 40, ..InversionConfig::default() };
        match invert(&tr, 2.0, &cfg) {
            Err(Error::Accuracy { other: Some(_), .. }) => {}
            other => panic!("expected disagreement, got {other:?}"),
        }
    }

    #[test]
    fn snu_cap() {
        assert!(matches!(snu_from_transform(1.0, 81.0, &InversionConfig::bromwich()), Err(Error::Domain(_))));
    }

    #[test]
    fn snu_matches_reference() {
        let cfg = InversionConfig::bromwich();
        let p4 = prob_nu_in_0s(1.0, 4.0, &cfg).unwrap();
        assert!((p4 / 0.28921720156115243 - 1.0).abs() < 1e-9, "{p4}");
        let s20 = snu_from_transform(1.0, 20.0, &cfg).unwrap();
        assert!((s20 / 1115311.4752059022 - 1.0).abs() < 1e-9, "{s20}");
        let l80 = snu_log_from_transform(1.0, 80.0, &cfg).unwrap();
        assert!((l80 - 4.9170378766168507e17f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn snu_non_decreasing() {
        let cfg = InversionConfig::bromwich();
        let v: Vec<f64> = [5.0, 10.0, 20.0, 40.0].iter().map(|&t| snu_from_transform(0.5, t, &cfg).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]), "{v:?}");
    }

    #[test]
    fn snu_large_budget_is_finite_and_positive() {
        let v = snu_from_transform(1e3, 4.0, &InversionConfig::bromwich()).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}
