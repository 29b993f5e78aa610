use crate::error::{Error, Result};
use crate::special::LAMBDA0;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

/// Admissible region of a Laplace variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainTag {
    /// `Re λ > 0`.
    H,
    /// `Re λ > -π²/8`.
    HLeft,
    /// `|arg λ| < π/4`, `λ ≠ 0`.
    WedgeD,
}

impl DomainTag {
    pub fn contains(&self, l: Complex64) -> bool {
        if !(l.re.is_finite() && l.im.is_finite()) {
            return false;
        }
        match self {
            DomainTag::H => l.re > 0.0,
            DomainTag::HLeft => l.re > -LAMBDA0,
            DomainTag::WedgeD => l != Complex64::new(0.0, 0.0) && l.arg().abs() < FRAC_PI_4,
        }
    }
}

/// A complex Laplace variable that is known to lie in its tagged domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLambda {
    value: Complex64,
    tag: DomainTag,
}

impl ComplexLambda {
    pub fn new(re: f64, im: f64, tag: DomainTag) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im), tag)
    }

    pub fn from_complex(value: Complex64, tag: DomainTag) -> Result<Self> {
        if !tag.contains(value) {
            return Err(Error::domain(format!("λ = {value} not in domain {tag:?}")));
        }
        Ok(ComplexLambda { value, tag })
    }

    pub fn real(re: f64, tag: DomainTag) -> Result<Self> {
        Self::new(re, 0.0, tag)
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn tag(&self) -> DomainTag {
        self.tag
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_enforce_domains() {
        assert!(ComplexLambda::new(0.1, 5.0, DomainTag::H).is_ok());
        assert!(ComplexLambda::new(-0.1, 5.0, DomainTag::H).is_err());
        assert!(ComplexLambda::new(-1.0, 0.0, DomainTag::HLeft).is_ok());
        assert!(ComplexLambda::new(-1.3, 0.0, DomainTag::HLeft).is_err());
        assert!(ComplexLambda::new(1.0, 0.9, DomainTag::WedgeD).is_ok());
        assert!(ComplexLambda::new(1.0, 1.1, DomainTag::WedgeD).is_err());
        assert!(ComplexLambda::new(0.0, 0.0, DomainTag::WedgeD).is_err());
        assert!(ComplexLambda::new(f64::NAN, 0.0, DomainTag::HLeft).is_err());
    }
}
