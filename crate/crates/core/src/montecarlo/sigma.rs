//! Budget-exhaustion time of a path started at 1.

use super::path::{Kernel, OccupationMode};
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

/// Runaway cap `10³ (s + 1)`.
pub fn sigma_cap(s: f64) -> f64 {
    1e3 * (s + 1.0)
}

/// Time at which the outside clock of a path from 1 first exceeds `s`.
///
/// The crossing inside the last step is placed by linear interpolation of the
/// step's expected occupation.
pub fn sample_sigma<R: Rng + ?Sized>(s: f64, dt: f64, rng: &mut R) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("budget s = {s} must be positive")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::config(format!("dt = {dt} must be positive")));
    }
    let cap = sigma_cap(s);
    let mut k = Kernel::new(OccupationMode::BridgeExact, 1.0);
    let sq = dt.sqrt();
    let mut x = 1.0;
    while k.time < cap {
        let before = k.gamma;
        let z: f64 = rng.sample(StandardNormal);
        let y = x + sq * z;
        k.step(x, y, dt, rng);
        x = y;
        if k.gamma > s {
            let frac = (s - before) / (k.gamma - before);
            return Ok(k.time - dt + frac * dt);
        }
    }
    Err(Error::Cap { t_max: cap })
}
