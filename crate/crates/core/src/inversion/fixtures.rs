//! Transforms with known inverses, and the transforms of `S_y`, `S_ν`, `R`.

use super::transform::Transform;
use crate::analytic::cardano_root;
use crate::error::{Error, Result};
use crate::laplace::{fn_s_hat, fn_s_hat_nu, laplace_r, ComplexLambda, DomainTag, TransformValue};
use crate::special::LAMBDA0;
use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

/// `1/(λ + a)`, the transform of `e^{-aT}`.
#[derive(Debug, Clone, Copy)]
pub struct ExponentialTransform {
    pub a: f64,
}

impl Transform for ExponentialTransform {
    fn eval(&self, l: Complex64) -> Result<TransformValue> {
        let d = l + self.a;
        if d.norm() == 0.0 {
            return Err(Error::Pole(format!("λ = {l}")));
        }
        Ok(TransformValue::from_complex(1.0 / d))
    }

    fn eval_mp(&self, l: &BigFloat, p: usize, _cc: &mut Consts) -> Option<BigFloat> {
        let d = l.add(&BigFloat::from_f64(self.a, p), p, RM);
        Some(BigFloat::from_u64(1, p).div(&d, p, RM))
    }

    fn abscissa(&self, _t: f64) -> f64 {
        -self.a
    }
}

fn check_y(y: f64) -> Result<()> {
    if !(y.abs() <= 1.0) {
        return Err(Error::domain(format!("y = {y} outside [-1, 1]")));
    }
    Ok(())
}

fn u_mp(l: &BigFloat, y: f64, p: usize, cc: &mut Consts) -> BigFloat {
    let z = l.mul(&BigFloat::from_u64(2, p), p, RM).sqrt(p, RM);
    let num = z.mul(&BigFloat::from_f64(y, p), p, RM).cosh(p, RM, cc);
    num.div(&z.cosh(p, RM, cc), p, RM)
}

fn u_complex(l: Complex64, y: f64) -> Result<Complex64> {
    Ok(crate::laplace::uvw::uvw_raw(l, y)?.u)
}

/// `u(λ, y)/λ = E_y[e^{-λτ}]/λ`, the transform of `P_y(τ ≤ T)`.
#[derive(Debug, Clone, Copy)]
pub struct ExitCdfTransform {
    y: f64,
}

impl ExitCdfTransform {
    pub fn new(y: f64) -> Result<Self> {
        check_y(y)?;
        Ok(ExitCdfTransform { y })
    }
}

impl Transform for ExitCdfTransform {
    fn eval(&self, l: Complex64) -> Result<TransformValue> {
        Ok(TransformValue::from_complex(u_complex(l, self.y)? / l))
    }

    fn eval_mp(&self, l: &BigFloat, p: usize, cc: &mut Consts) -> Option<BigFloat> {
        Some(u_mp(l, self.y, p, cc).div(l, p, RM))
    }
}

/// `(1 - u(λ, y))/λ`, the transform of `P_y(τ > T)`.
#[derive(Debug, Clone, Copy)]
pub struct SurvivalTransform {
    y: f64,
}

impl SurvivalTransform {
    pub fn new(y: f64) -> Result<Self> {
        check_y(y)?;
        Ok(SurvivalTransform { y })
    }
}

impl Transform for SurvivalTransform {
    fn eval(&self, l: Complex64) -> Result<TransformValue> {
        Ok(TransformValue::from_complex((1.0 - u_complex(l, self.y)?) / l))
    }

    fn eval_mp(&self, l: &BigFloat, p: usize, cc: &mut Consts) -> Option<BigFloat> {
        let one = BigFloat::from_u64(1, p);
        Some(one.sub(&u_mp(l, self.y, p, cc), p, RM).div(l, p, RM))
    }

    fn abscissa(&self, _t: f64) -> f64 {
        -LAMBDA0
    }
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("budget s = {s} must be positive")));
    }
    Ok(())
}

fn saddle_abscissa(t: f64, s: f64) -> f64 {
    cardano_root(t, s).unwrap_or(1.0)
}

/// `Ŝ_y(λ)/λ`, the transform of `S_y(T) = e^{π²T/8} P_y(Γ_T ∈ (0, s])`.
#[derive(Debug, Clone, Copy)]
pub struct SyTransform {
    y: f64,
    s: f64,
}

impl SyTransform {
    pub fn new(y: f64, s: f64) -> Result<Self> {
        check_y(y)?;
        check_s(s)?;
        Ok(SyTransform { y, s })
    }
}

impl Transform for SyTransform {
    fn eval(&self, l: Complex64) -> Result<TransformValue> {
        let v = fn_s_hat(ComplexLambda::from_complex(l, DomainTag::H)?, self.y, self.s)?;
        Ok(TransformValue::from_ln(v.ln() - l.ln()))
    }

    fn abscissa(&self, t: f64) -> f64 {
        saddle_abscissa(t, self.s)
    }
}

/// `Ŝ_ν(λ)/λ`, the ν-average of [`SyTransform`] by quadrature.
#[derive(Debug, Clone, Copy)]
pub struct SnuTransform {
    s: f64,
}

impl SnuTransform {
    pub fn new(s: f64) -> Result<Self> {
        check_s(s)?;
        Ok(SnuTransform { s })
    }
}

impl Transform for SnuTransform {
    fn eval(&self, l: Complex64) -> Result<TransformValue> {
        let v = fn_s_hat_nu(ComplexLambda::from_complex(l, DomainTag::H)?, self.s)?;
        Ok(TransformValue::from_ln(v.ln() - l.ln()))
    }

    fn abscissa(&self, t: f64) -> f64 {
        saddle_abscissa(t, self.s)
    }
}

/// `L(R)(λ)`, the transform of `P_y(Γ_T ∈ (0, s])`.
#[derive(Debug, Clone, Copy)]
pub struct RTransform {
    y: f64,
    s: f64,
}

impl RTransform {
    pub fn new(y: f64, s: f64) -> Result<Self> {
        check_y(y)?;
        check_s(s)?;
        Ok(RTransform { y, s })
    }
}

impl Transform for RTransform {
    fn eval(&self, l: Complex64) -> Result<TransformValue> {
        laplace_r(ComplexLambda::from_complex(l, DomainTag::HLeft)?, self.y, self.s)
    }

    fn abscissa(&self, t: f64) -> f64 {
        saddle_abscissa(t, self.s) - LAMBDA0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inversion::gaver::to_f64;

    #[test]
    fn mp_and_f64_paths_agree() {
        let p = 192;
        let mut cc = Consts::new().unwrap();
        let tr = ExitCdfTransform::new(0.3).unwrap();
        let x = 1.7;
        let a = to_f64(&tr.eval_mp(&BigFloat::from_f64(x, p), p, &mut cc).unwrap());
        let b = tr.eval(Complex64::new(x, 0.0)).unwrap().to_complex().re;
        assert!((a - b).abs() < 1e-15 * a.abs());
        let tr = SurvivalTransform::new(-0.6).unwrap();
        let a = to_f64(&tr.eval_mp(&BigFloat::from_f64(0.4, p), p, &mut cc).unwrap());
        let b = tr.eval(Complex64::new(0.4, 0.0)).unwrap().to_complex().re;
        assert!((a - b).abs() < 1e-14 * a.abs());
    }

    #[test]
    fn s_transforms_are_consistent() {
        // L(S_y)(λ) = L(R)(λ - π²/8)
        let l = Complex64::new(0.7, 0.4);
        let a = SyTransform::new(0.2, 1.0).unwrap().eval(l).unwrap().to_complex();
        let b = RTransform::new(0.2, 1.0).unwrap().eval(l - LAMBDA0).unwrap().to_complex();
        assert!((a - b).norm() < 1e-13 * a.norm());
    }
}
