use num_complex::Complex64;
use std::f64::consts::PI;

/// Threshold on `|log|z||` below which values are stored plainly.
pub const PLAIN_LIMIT: f64 = 300.0;

/// A complex number stored either plainly or as `exp(log_modulus + i·phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformValue {
    Plain(Complex64),
    Log { log_modulus: f64, phase: f64 },
}

/// Reduce an angle to `(-π, π]`.
pub fn wrap_phase(p: f64) -> f64 {
    let mut r = p.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

impl TransformValue {
    /// From a complex logarithm; picks the plain form when representable.
    pub fn from_ln(l: Complex64) -> Self {
        if l.re.abs() < PLAIN_LIMIT {
            TransformValue::Plain(l.exp())
        } else {
            TransformValue::Log { log_modulus: l.re, phase: wrap_phase(l.im) }
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let lm = z.norm().ln();
        if lm.abs() < PLAIN_LIMIT {
            TransformValue::Plain(z)
        } else {
            TransformValue::Log { log_modulus: lm, phase: z.arg() }
        }
    }

    pub fn log_modulus(&self) -> f64 {
        match *self {
            TransformValue::Plain(z) => z.norm().ln(),
            TransformValue::Log { log_modulus, .. } => log_modulus,
        }
    }

    pub fn phase(&self) -> f64 {
        match *self {
            TransformValue::Plain(z) => z.arg(),
            TransformValue::Log { phase, .. } => phase,
        }
    }

    /// Complex logarithm with the phase in `(-π, π]`.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.log_modulus(), self.phase())
    }

    pub fn is_plain(&self) -> bool {
        matches!(self, TransformValue::Plain(_))
    }

    /// Plain value; may overflow to infinity or underflow to zero in log form.
    pub fn to_complex(&self) -> Complex64 {
        match *self {
            TransformValue::Plain(z) => z,
            TransformValue::Log { log_modulus, phase } => Complex64::from_polar(log_modulus.exp(), phase),
        }
    }

    pub fn mul(&self, other: &TransformValue) -> TransformValue {
        TransformValue::from_ln(self.ln() + other.ln())
    }

    pub fn div(&self, other: &TransformValue) -> TransformValue {
        TransformValue::from_ln(self.ln() - other.ln())
    }
}
