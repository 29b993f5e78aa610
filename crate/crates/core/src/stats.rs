//! Goodness-of-fit statistics and small regression helpers.

use crate::error::{Error, Result};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Asymptotic Kolmogorov constant `c(α) = √(-ln(α/2)/2)`; 1.628 at α = 1%.
pub fn ks_constant(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

/// One-sample critical distance at level `alpha`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    ks_constant(alpha) / (n as f64).sqrt()
}

/// Two-sample critical distance at level `alpha`.
pub fn ks_critical_two(n: usize, m: usize, alpha: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    ks_constant(alpha) * ((n + m) / (n * m)).sqrt()
}

fn sorted(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.is_empty() {
        return Err(Error::domain("empty sample"));
    }
    let mut v = xs.to_vec();
    if v.iter().any(|x| x.is_nan()) {
        return Err(Error::domain("sample contains NaN"));
    }
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// `sup |F_n - F|`.
pub fn ks_statistic<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> Result<f64> {
    let v = sorted(xs)?;
    let n = v.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// `sup |F_n - G_m|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    let a = sorted(a)?;
    let b = sorted(b)?;
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson test of `xs` against `cdf` on `bins` equal-probability cells.
pub fn chi_square_gof<F: Fn(f64) -> f64, Q: Fn(f64) -> f64>(
    xs: &[f64],
    cdf: F,
    quantile: Q,
    bins: usize,
) -> Result<ChiSquare> {
    if bins < 2 || xs.len() < 5 * bins {
        return Err(Error::config("need at least 2 bins and 5 expected counts per bin"));
    }
    let edges: Vec<f64> = (1..bins).map(|k| quantile(k as f64 / bins as f64)).collect();
    let mut counts = vec![0usize; bins];
    for &x in xs {
        let k = edges.partition_point(|&e| e < x);
        counts[k] += 1;
    }
    let n = xs.len() as f64;
    let mut stat = 0.0;
    let mut lo = 0.0;
    for (k, &c) in counts.iter().enumerate() {
        let hi = if k + 1 == bins { 1.0 } else { cdf(edges[k]) };
        let e = n * (hi - lo);
        stat += (c as f64 - e).powi(2) / e;
        lo = hi;
    }
    let dof = bins - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::config(e.to_string()))?;
    Ok(ChiSquare { statistic: stat, dof, p_value: 1.0 - dist.cdf(stat) })
}

/// Least-squares line `y = a + b x`, returned as `(b, a)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::domain("need at least two paired points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("abscissae are all equal"));
    }
    let b = sxy / sxx;
    Ok((b, my - b * mx))
}

/// Slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.iter().chain(ys).any(|v| !(*v > 0.0)) {
        return Err(Error::domain("log-log fit needs positive data"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    Ok(linear_fit(&lx, &ly)?.0)
}

/// Whether `a < b` holds beyond `k` joint standard errors.
pub fn strictly_less(a: f64, sa: f64, b: f64, sb: f64, k: f64) -> bool {
    b - a > k * (sa * sa + sb * sb).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_constant_value() {
        assert!((ks_constant(0.01) - 1.6276).abs() < 1e-4);
    }

    #[test]
    fn ks_uniform_grid() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let d = ks_statistic(&xs, |x| x).unwrap();
        assert!((d - 0.005).abs() < 1e-12);
    }

    #[test]
    fn two_sample_identical_and_shifted() {
        let a: Vec<f64> = (0..50).map(|i| i as f64).collect();
        assert_eq!(ks_two_sample(&a, &a).unwrap(), 0.0);
        let b: Vec<f64> = (0..50).map(|i| i as f64 + 100.0).collect();
        assert_eq!(ks_two_sample(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn chi_square_uniform() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let c = chi_square_gof(&xs, |x| x, |u| u, 10).unwrap();
        assert!(c.statistic < 1e-9 && c.p_value > 0.999);
    }

    #[test]
    fn slopes() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-0.5)).collect();
        assert!((log_log_slope(&xs, &ys).unwrap() + 0.5).abs() < 1e-12);
    }
}
