use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    GaverStehfest,
    BromwichTrapezoid,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaver_stehfest" | "gaver-stehfest" | "gs" => Ok(Method::GaverStehfest),
            "bromwich_trapezoid" | "bromwich-trapezoid" | "bromwich" => Ok(Method::BromwichTrapezoid),
            other => Err(Error::config(format!("unknown inversion method `{other}`"))),
        }
    }
}

/// Inversion settings.
///
/// `n_terms` is the Gaver–Stehfest order, `bromwich_shift` the constant `A`
/// in the contour abscissa `σ = σ₀ + A/(2T)` and `bromwich_terms`,
/// `euler_terms` the partial-sum length and Euler averaging depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionConfig {
    pub method: Method,
    pub precision_bits: usize,
    pub n_terms: usize,
    pub bromwich_shift: f64,
    pub bromwich_terms: usize,
    pub euler_terms: usize,
    pub cross_check: bool,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            method: Method::BromwichTrapezoid,
            precision_bits: 512,
            n_terms: 48,
            bromwich_shift: 30.0,
            bromwich_terms: 200,
            euler_terms: 30,
            cross_check: true,
        }
    }
}

impl InversionConfig {
    pub fn bromwich() -> Self {
        InversionConfig { cross_check: false, ..Default::default() }
    }

    pub fn gaver_stehfest() -> Self {
        InversionConfig { method: Method::GaverStehfest, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(Error::config("precision_bits must be at least 64"));
        }
        if self.n_terms == 0 || !self.n_terms.is_multiple_of(2) || self.n_terms > 64 {
            return Err(Error::config(format!("n_terms = {} must be even and in 2..=64", self.n_terms)));
        }
        let gs_used = self.method == Method::GaverStehfest || self.cross_check;
        if gs_used && self.precision_bits < 8 * self.n_terms {
            return Err(Error::config(format!(
                "precision_bits = {} below 8·n_terms = {}",
                self.precision_bits,
                8 * self.n_terms
            )));
        }
        if !(self.bromwich_shift > 0.0 && self.bromwich_shift.is_finite()) {
            return Err(Error::config("bromwich_shift must be positive"));
        }
        if self.bromwich_terms < 10 || self.euler_terms < 1 || self.euler_terms > 60 {
            return Err(Error::config("bromwich_terms ≥ 10 and 1 ≤ euler_terms ≤ 60 required"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        InversionConfig::default().validate().unwrap();
        InversionConfig::bromwich().validate().unwrap();
    }

    #[test]
    fn digit_loss_rule() {
        let c = InversionConfig { precision_bits: 256, n_terms: 48, ..InversionConfig::gaver_stehfest() };
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let c = InversionConfig { n_terms: 7, ..Default::default() };
        assert!(c.validate().is_err());
        let c = InversionConfig { n_terms: 66, precision_bits: 1024, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn method_parse() {
        assert_eq!("gs".parse::<Method>().unwrap(), Method::GaverStehfest);
        assert_eq!("bromwich".parse::<Method>().unwrap(), Method::BromwichTrapezoid);
        assert!("talbot".parse::<Method>().is_err());
    }
}
