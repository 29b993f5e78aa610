use crate::error::Result;
use crate::laplace::TransformValue;
use astro_float::{BigFloat, Consts};
use num_complex::Complex64;

/// A Laplace transform `λ ↦ F(λ)` of a real function of time.
pub trait Transform: Sync {
    fn eval(&self, l: Complex64) -> Result<TransformValue>;

    /// Extended-precision value on the positive real axis, when available.
    fn eval_mp(&self, _l: &BigFloat, _p: usize, _cc: &mut Consts) -> Option<BigFloat> {
        None
    }

    /// Real part of the contour used for inversion at time `t`, before the `A/(2T)` shift.
    fn abscissa(&self, _t: f64) -> f64 {
        0.0
    }
}

/// Closure-backed transform with a fixed abscissa.
pub struct FnTransform<F> {
    f: F,
    abscissa: f64,
}

impl<F: Fn(Complex64) -> Result<TransformValue> + Sync> FnTransform<F> {
    pub fn new(f: F, abscissa: f64) -> Self {
        FnTransform { f, abscissa }
    }
}

impl<F: Fn(Complex64) -> Result<TransformValue> + Sync> Transform for FnTransform<F> {
    fn eval(&self, l: Complex64) -> Result<TransformValue> {
        (self.f)(l)
    }

    fn abscissa(&self, _t: f64) -> f64 {
        self.abscissa
    }
}
