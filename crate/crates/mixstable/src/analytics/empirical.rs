//! Empirical transform estimators with standard errors.
//!
//! Both estimators average bounded integrands (cos, sin, e^{−sx}), so the CLT
//! error bars stay valid for every tail regime the crate produces.

use num_complex::Complex64;

use crate::batch::SampleBatch;
use crate::error::{Error, Result};

/// Empirical CF value at one point, with componentwise standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfEstimate {
    pub value: Complex64,
    pub se_re: f64,
    pub se_im: f64,
    pub n: usize,
}

/// Empirical LST value at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LstEstimate {
    pub value: f64,
    pub se: f64,
    pub n: usize,
}

fn mean_and_se(values: impl Iterator<Item = f64>, n: usize) -> (f64, f64) {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut count = 0.0;
    for v in values {
        count += 1.0;
        let d = v - mean;
        mean += d / count;
        m2 += d * (v - mean);
    }
    debug_assert_eq!(count as usize, n);
    let var = if n > 1 { m2 / (n as f64 - 1.0) } else { 0.0 };
    (mean, (var / n as f64).sqrt())
}

/// Mean of exp{i tᵀx} over the batch.
pub fn empirical_cf(batch: &SampleBatch, t: &[f64]) -> Result<CfEstimate> {
    if batch.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if t.len() != batch.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cf argument length {} against batch dimension {}",
            t.len(),
            batch.dim()
        )));
    }
    let n = batch.len();
    let proj = batch.project(t)?;
    let (re, se_re) = mean_and_se(proj.iter().map(|p| p.cos()), n);
    let (im, se_im) = mean_and_se(proj.iter().map(|p| p.sin()), n);
    Ok(CfEstimate {
        value: Complex64::new(re, im),
        se_re,
        se_im,
        n,
    })
}

/// Mean of e^{−sx} over a nonnegative univariate batch.
pub fn empirical_lst(batch: &SampleBatch, s: f64) -> Result<LstEstimate> {
    if batch.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let xs = batch.scalars()?;
    if xs.iter().any(|&x| x < 0.0) {
        return Err(Error::InvalidConfig(
            "empirical_lst requires nonnegative draws".into(),
        ));
    }
    if s.is_nan() || s < 0.0 {
        return Err(Error::domain("empirical_lst", format!("need s >= 0, got {s}")));
    }
    let n = xs.len();
    let (value, se) = mean_and_se(xs.iter().map(|&x| (-s * x).exp()), n);
    Ok(LstEstimate { value, se, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::batch::{BatchMeta, SampleBatch};
    use std::f64::consts::PI;

    fn batch(values: Vec<f64>) -> SampleBatch {
        SampleBatch::univariate(values, BatchMeta::default()).unwrap()
    }

    #[test]
    fn constant_batch_at_pi_gives_minus_one() {
        let est = empirical_cf(&batch(vec![1.0, 1.0, 1.0]), &[PI]).unwrap();
        assert!((est.value.re + 1.0).abs() < 1e-15);
        assert!(est.value.im.abs() < 1e-15);
        assert!(est.se_re < 1e-15 && est.se_im < 1e-15);
    }

    #[test]
    fn lst_at_zero_is_exactly_one() {
        let est = empirical_lst(&batch(vec![0.3, 2.0, 5.5]), 0.0).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.se, 0.0);
    }

    #[test]
    fn negative_values_rejected() {
        assert!(empirical_lst(&batch(vec![1.0, -0.1]), 1.0).is_err());
    }

    #[test]
    fn se_scales_as_inverse_sqrt_n() {
        use crate::rng::RngStream;
        use crate::univariate::UnivariateSpec;
        let mut rng = RngStream::new(77, 0);
        let small = UnivariateSpec::Exponential.sample(10_000, &mut rng).unwrap();
        let big = UnivariateSpec::Exponential.sample(40_000, &mut rng).unwrap();
        let se_small = empirical_lst(&small, 1.0).unwrap().se;
        let se_big = empirical_lst(&big, 1.0).unwrap().se;
        let ratio = se_big / se_small;
        assert!((ratio - 0.5).abs() < 0.05, "ratio {ratio}");
    }
}
