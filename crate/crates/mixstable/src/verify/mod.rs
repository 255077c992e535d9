//! Two-sample statistical testing toolkit: Kolmogorov–Smirnov, energy
//! distance with permutation p-values, CF-distance checks, and the Holm
//! correction used across registry runs.
//!
//! Rejection is `p <= level` everywhere. With B permutations the permutation
//! p-value lives on the lattice k/(B+1), so B must satisfy
//! (B+1)·level >= 1 for a test to be able to reject at all; B = 1999 at
//! level 1e-3 gives P(p <= level) = level exactly under the null.

pub mod recipe;
pub mod registry;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::special::{inverse_normal_cdf, normal_sf};
use crate::analytics::{empirical_cf, CfEstimate};
use crate::batch::SampleBatch;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use num_complex::Complex64;

/// Default significance level for identity testing.
pub const DEFAULT_LEVEL: f64 = 1e-3;

/// Outcome of one statistical test, serializable for registry export.
/// The JSON form carries a derived `"verdict"` string alongside the fields.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct TestReport {
    /// Identity id for registry runs, empty for ad-hoc tests.
    pub id: String,
    /// Source anchor of the identity, empty for ad-hoc tests.
    pub citation: String,
    /// Parameter echo of the tested recipes.
    pub params: String,
    pub method: String,
    pub statistic: f64,
    pub p_value: f64,
    /// Holm-adjusted p-value when the test ran inside a registry sweep.
    pub adjusted_p: Option<f64>,
    pub n_lhs: usize,
    pub n_rhs: usize,
    /// Per-side size actually used by the statistic after subsampling.
    pub subsampled_to: Option<usize>,
    /// Spread of the permutation-null statistics (energy tests only); the
    /// Monte Carlo error bar used by trend checks.
    #[serde(default)]
    pub null_sd: Option<f64>,
    pub seed: u64,
    pub level: f64,
    /// True when the null (distributional equality) is rejected at `level`,
    /// using the adjusted p-value when present.
    pub reject: bool,
}

impl TestReport {
    pub fn verdict(&self) -> &'static str {
        if self.reject {
            "fail"
        } else {
            "pass"
        }
    }
}

impl Serialize for TestReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("TestReport", 15)?;
        s.serialize_field("id", &self.id)?;
        s.serialize_field("citation", &self.citation)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("method", &self.method)?;
        s.serialize_field("statistic", &self.statistic)?;
        s.serialize_field("p_value", &self.p_value)?;
        s.serialize_field("adjusted_p", &self.adjusted_p)?;
        s.serialize_field("n_lhs", &self.n_lhs)?;
        s.serialize_field("n_rhs", &self.n_rhs)?;
        s.serialize_field("subsampled_to", &self.subsampled_to)?;
        s.serialize_field("null_sd", &self.null_sd)?;
        s.serialize_field("seed", &self.seed)?;
        s.serialize_field("level", &self.level)?;
        s.serialize_field("reject", &self.reject)?;
        s.serialize_field("verdict", self.verdict())?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// Kolmogorov–Smirnov
// ---------------------------------------------------------------------------

/// Two-sample KS statistic, tie-aware.
pub fn ks_statistic(xs: &[f64], ys: &[f64]) -> f64 {
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    ys.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        let v = xs[i].min(ys[j]);
        while i < n && xs[i] <= v {
            i += 1;
        }
        while j < m && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    d
}

/// Asymptotic two-sample KS p-value with Stephens' small-sample correction.
pub fn ks_p_value(d: f64, n: usize, m: usize) -> f64 {
    let ne = (n as f64 * m as f64) / (n as f64 + m as f64);
    let sqrt_ne = ne.sqrt();
    let lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
    kolmogorov_survival(lambda)
}

fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov–Smirnov test for univariate batches (n, m >= 100).
pub fn ks_two_sample(a: &SampleBatch, b: &SampleBatch) -> Result<TestReport> {
    let xs = a.scalars()?;
    let ys = b.scalars()?;
    if xs.len() < 100 || ys.len() < 100 {
        return Err(Error::InvalidConfig(format!(
            "ks_two_sample needs at least 100 draws per side, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let d = ks_statistic(xs, ys);
    let p = ks_p_value(d, xs.len(), ys.len());
    Ok(TestReport {
        id: String::new(),
        citation: String::new(),
        params: format!("{} vs {}", a.meta.label, b.meta.label),
        method: "ks".into(),
        statistic: d,
        p_value: p,
        adjusted_p: None,
        n_lhs: xs.len(),
        n_rhs: ys.len(),
        subsampled_to: None,
        null_sd: None,
        seed: a.meta.seed,
        level: DEFAULT_LEVEL,
        reject: p <= DEFAULT_LEVEL,
    })
}

// ---------------------------------------------------------------------------
// Energy distance
// ---------------------------------------------------------------------------

/// Options for the energy permutation test.
#[derive(Debug, Clone)]
pub struct EnergyOptions {
    /// Number of label permutations (>= 200).
    pub permutations: usize,
    /// Per-side size cap; larger batches are subsampled (recorded sub-seed).
    pub cap_per_side: usize,
    pub level: f64,
}

impl Default for EnergyOptions {
    fn default() -> Self {
        EnergyOptions {
            permutations: 1999,
            cap_per_side: 4000,
            level: DEFAULT_LEVEL,
        }
    }
}

/// V-statistic energy distance between two equal-dimension samples together
/// with a permutation p-value. The pooled pairwise distance matrix is held in
/// f32 (sums accumulate in f64); each permutation reuses it, so cost per
/// permutation is O((n+m)^2) additions, not distance evaluations.
pub fn energy_test(
    a: &SampleBatch,
    b: &SampleBatch,
    opts: &EnergyOptions,
    perm_stream: RngStream,
) -> Result<TestReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "energy test across dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    if a.len() < 500 || b.len() < 500 {
        return Err(Error::InvalidConfig(format!(
            "energy_test needs at least 500 draws per side, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if opts.permutations < 200 {
        return Err(Error::InvalidConfig(format!(
            "energy_test needs at least 200 permutations, got {}",
            opts.permutations
        )));
    }

    // child 0 drives subsampling; children 1..=B drive the permutations
    let mut sub_rng = perm_stream.substream(0);
    let rows_a = subsample(a, opts.cap_per_side, &mut sub_rng);
    let rows_b = subsample(b, opts.cap_per_side, &mut sub_rng);
    let (ma, mb) = (rows_a.len(), rows_b.len());
    let n_pool = ma + mb;
    let dim = a.dim();

    // pooled distance matrix, f32, full symmetric storage
    let mut pooled: Vec<&[f64]> = Vec::with_capacity(n_pool);
    pooled.extend(rows_a.iter());
    pooled.extend(rows_b.iter());
    let mut matrix = vec![0.0f32; n_pool * n_pool];
    matrix
        .par_chunks_mut(n_pool)
        .enumerate()
        .for_each(|(i, row)| {
            let xi = pooled[i];
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j {
                    *slot = euclidean(xi, pooled[j], dim) as f32;
                }
            }
        });
    let row_sums: Vec<f64> = matrix
        .par_chunks(n_pool)
        .map(|row| row.iter().map(|&v| v as f64).sum())
        .collect();
    let total: f64 = row_sums.iter().sum();

    let identity: Vec<u32> = (0..n_pool as u32).collect();
    let observed = energy_statistic(&matrix, &row_sums, total, n_pool, &identity[..ma], ma, mb);

    let perm_stats: Vec<f64> = (0..opts.permutations)
        .into_par_iter()
        .map(|k| {
            let mut rng = perm_stream.substream(k as u64 + 1);
            let mut idx: Vec<u32> = (0..n_pool as u32).collect();
            let (chosen, _) = idx.partial_shuffle(&mut rng, ma);
            energy_statistic(&matrix, &row_sums, total, n_pool, chosen, ma, mb)
        })
        .collect();
    let ge_count = perm_stats.iter().filter(|&&s| s >= observed).count();
    let p = (1 + ge_count) as f64 / (opts.permutations + 1) as f64;
    let null_mean = perm_stats.iter().sum::<f64>() / perm_stats.len() as f64;
    let null_sd = (perm_stats
        .iter()
        .map(|s| (s - null_mean) * (s - null_mean))
        .sum::<f64>()
        / (perm_stats.len() as f64 - 1.0))
        .sqrt();

    Ok(TestReport {
        id: String::new(),
        citation: String::new(),
        params: format!("{} vs {}", a.meta.label, b.meta.label),
        method: "energy".into(),
        statistic: observed,
        p_value: p,
        adjusted_p: None,
        n_lhs: a.len(),
        n_rhs: b.len(),
        subsampled_to: if ma < a.len() || mb < b.len() {
            Some(ma.max(mb))
        } else {
            None
        },
        null_sd: Some(null_sd),
        seed: perm_stream.seed(),
        level: opts.level,
        reject: p <= opts.level,
    })
}

fn subsample<'a>(batch: &'a SampleBatch, cap: usize, rng: &mut RngStream) -> Vec<&'a [f64]> {
    let n = batch.len();
    if n <= cap {
        return batch.rows().collect();
    }
    let mut idx: Vec<u32> = (0..n as u32).collect();
    let (chosen, _) = idx.partial_shuffle(rng, cap);
    chosen.iter().map(|&i| batch.row(i as usize)).collect()
}

#[inline]
fn euclidean(a: &[f64], b: &[f64], dim: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..dim {
        let d = a[k] - b[k];
        acc += d * d;
    }
    acc.sqrt()
}

/// E_V = 2 S_AB/(ma·mb) − S_AA/ma² − S_BB/mb², from the pooled matrix and the
/// index set assigned to side A. Nonnegative by construction.
fn energy_statistic(
    matrix: &[f32],
    row_sums: &[f64],
    total: f64,
    n_pool: usize,
    a_idx: &[u32],
    ma: usize,
    mb: usize,
) -> f64 {
    let mut s_aa = 0.0f64;
    let mut r_a = 0.0f64;
    for (k, &i) in a_idx.iter().enumerate() {
        let row = &matrix[i as usize * n_pool..(i as usize + 1) * n_pool];
        r_a += row_sums[i as usize];
        // sum within A, ordered pairs counted twice via symmetric loop
        let mut acc = 0.0f64;
        for &j in &a_idx[k + 1..] {
            acc += row[j as usize] as f64;
        }
        s_aa += acc;
    }
    let s_aa = 2.0 * s_aa;
    let s_ab = r_a - s_aa;
    let s_bb = total - s_aa - 2.0 * s_ab;
    let (ma, mb) = (ma as f64, mb as f64);
    2.0 * s_ab / (ma * mb) - s_aa / (ma * ma) - s_bb / (mb * mb)
}

// ---------------------------------------------------------------------------
// CF distance
// ---------------------------------------------------------------------------

/// Outcome of the empirical-vs-analytic CF comparison over a grid.
#[derive(Debug, Clone, Serialize)]
pub struct CfDistanceReport {
    /// max over grid points and components of |empirical − analytic| / SE.
    pub max_abs_z: f64,
    /// Multiplicity-corrected 3-SE threshold on that maximum.
    pub threshold: f64,
    /// Bonferroni-adjusted normal tail probability of the maximum.
    pub p_value: f64,
    pub comparisons: usize,
    pub worst_point: Vec<f64>,
    pub pass: bool,
}

/// Compare the empirical CF of a batch against an analytic CF over a grid of
/// points. Verdict by the 3-SE rule with Bonferroni multiplicity correction
/// over grid points and real/imaginary components.
pub fn cf_distance_test<F>(
    batch: &SampleBatch,
    analytic: F,
    grid: &[Vec<f64>],
) -> Result<CfDistanceReport>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    if grid.is_empty() {
        return Err(Error::InvalidConfig("cf_distance_test needs a nonempty grid".into()));
    }
    let comparisons = 2 * grid.len();
    // single-comparison 3-SE tail prob, split across comparisons
    let p3 = 2.0 * normal_sf(3.0);
    let threshold = inverse_normal_cdf(1.0 - 0.5 * p3 / comparisons as f64);

    let mut max_abs_z = 0.0f64;
    let mut worst_point = grid[0].clone();
    for t in grid {
        let est: CfEstimate = empirical_cf(batch, t)?;
        let reference = analytic(t)?;
        for (diff, se) in [
            (est.value.re - reference.re, est.se_re),
            (est.value.im - reference.im, est.se_im),
        ] {
            let z = if se > 0.0 {
                (diff / se).abs()
            } else if diff.abs() < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            if z > max_abs_z {
                max_abs_z = z;
                worst_point = t.clone();
            }
        }
    }
    let p_value = (comparisons as f64 * 2.0 * normal_sf(max_abs_z)).min(1.0);
    Ok(CfDistanceReport {
        max_abs_z,
        threshold,
        p_value,
        comparisons,
        worst_point,
        pass: max_abs_z <= threshold,
    })
}

// ---------------------------------------------------------------------------
// Holm correction
// ---------------------------------------------------------------------------

/// Holm step-down adjusted p-values, in the input order.
pub fn holm_adjust(p_values: &[f64]) -> Vec<f64> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| p_values[i].partial_cmp(&p_values[j]).unwrap());
    let mut adjusted = vec![0.0; m];
    let mut running_max = 0.0f64;
    for (rank, &idx) in order.iter().enumerate() {
        let scaled = ((m - rank) as f64 * p_values[idx]).min(1.0);
        running_max = running_max.max(scaled);
        adjusted[idx] = running_max;
    }
    adjusted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::batch::BatchMeta;
    use crate::univariate::UnivariateSpec;

    #[test]
    fn ks_identical_batches() {
        let mut rng = RngStream::new(4, 0);
        let a = UnivariateSpec::Exponential.sample(500, &mut rng).unwrap();
        let r = ks_two_sample(&a, &a).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
        assert!(!r.reject);
    }

    #[test]
    fn ks_separates_exp_from_gamma2() {
        let mut rng = RngStream::new(4, 1);
        let a = UnivariateSpec::Exponential.sample(10_000, &mut rng).unwrap();
        let b = UnivariateSpec::Gamma { shape: 2.0, rate: 1.0 }
            .sample(10_000, &mut rng)
            .unwrap();
        let r = ks_two_sample(&a, &b).unwrap();
        assert!(r.p_value < 1e-6, "p = {}", r.p_value);
        assert!(r.reject);
    }

    #[test]
    fn ks_statistic_handles_ties() {
        let d = ks_statistic(&[1.0, 1.0, 4.0, 4.0], &[1.0, 1.0, 1.0, 4.0]);
        assert!((d - 0.25).abs() < 1e-12);
    }

    #[test]
    fn ks_requires_univariate_and_size() {
        let mut rng = RngStream::new(4, 2);
        let small = UnivariateSpec::Exponential.sample(50, &mut rng).unwrap();
        assert!(ks_two_sample(&small, &small).is_err());
        let mv = crate::multivariate::sample_mv_normal(
            &crate::spd::SpdMatrix::identity(2),
            200,
            &mut rng,
        )
        .unwrap();
        assert!(ks_two_sample(&mv, &mv).is_err());
    }

    #[test]
    fn energy_same_batch_never_rejects() {
        let mut rng = RngStream::new(9, 0);
        let a = crate::multivariate::sample_mv_normal(
            &crate::spd::SpdMatrix::identity(2),
            600,
            &mut rng,
        )
        .unwrap();
        let opts = EnergyOptions {
            permutations: 400,
            ..Default::default()
        };
        let r = energy_test(&a, &a, &opts, RngStream::new(9, 99)).unwrap();
        assert!(r.statistic.abs() < 1e-9);
        assert!(r.p_value > 0.99);
    }

    #[test]
    fn energy_detects_scale_difference() {
        let mut rng = RngStream::new(9, 1);
        let sigma1 = crate::spd::SpdMatrix::identity(2);
        let sigma2 = crate::spd::make_spd(&[vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let a = crate::multivariate::sample_mv_normal(&sigma1, 5000, &mut rng).unwrap();
        let b = crate::multivariate::sample_mv_normal(&sigma2, 5000, &mut rng).unwrap();
        let r = energy_test(&a, &b, &EnergyOptions::default(), RngStream::new(9, 100)).unwrap();
        assert!(r.p_value <= 1e-3, "p = {}", r.p_value);
        assert!(r.reject);
    }

    #[test]
    fn energy_dimension_mismatch() {
        let mut rng = RngStream::new(9, 2);
        let a = crate::multivariate::sample_mv_normal(&crate::spd::SpdMatrix::identity(2), 600, &mut rng).unwrap();
        let b = UnivariateSpec::Normal.sample(600, &mut rng).unwrap();
        assert!(energy_test(&a, &b, &EnergyOptions::default(), RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn holm_adjustment_is_monotone_and_bounded() {
        let adj = holm_adjust(&[0.01, 0.04, 0.03, 0.005]);
        assert!((adj[3] - 0.02).abs() < 1e-12);
        assert!(adj.iter().all(|&p| (0.0..=1.0).contains(&p)));
        let sorted_in = [0.005, 0.01, 0.03, 0.04];
        let sorted_adj: Vec<f64> = holm_adjust(&sorted_in);
        assert!(sorted_adj.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn cf_distance_accepts_matching_and_rejects_wrong_scale() {
        let mut rng = RngStream::new(21, 0);
        let sigma = crate::spd::SpdMatrix::identity(2);
        let batch = crate::multivariate::sample_mv_normal(&sigma, 100_000, &mut rng).unwrap();
        let grid: Vec<Vec<f64>> = vec![
            vec![0.5, 0.0],
            vec![0.0, 0.5],
            vec![1.0, 1.0],
            vec![-0.7, 0.9],
        ];
        let spec_ok = crate::multivariate::MultivariateSpec::MvNormal { sigma: sigma.clone() };
        let ok = cf_distance_test(&batch, |t| crate::analytics::cf_multivariate(&spec_ok, t), &grid).unwrap();
        assert!(ok.pass, "z = {}", ok.max_abs_z);
        let sigma_2x = crate::spd::make_spd(&[vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let spec_bad = crate::multivariate::MultivariateSpec::MvNormal { sigma: sigma_2x };
        let bad = cf_distance_test(&batch, |t| crate::analytics::cf_multivariate(&spec_bad, t), &grid).unwrap();
        assert!(!bad.pass);
    }

    #[test]
    fn empty_grid_errors() {
        let b = SampleBatch::univariate(vec![1.0; 200], BatchMeta::default()).unwrap();
        assert!(cf_distance_test(&b, |_| Ok(Complex64::new(1.0, 0.0)), &[]).is_err());
    }
}
