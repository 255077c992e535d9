//! Oracle tests for the univariate samplers: frozen moments, transform
//! values, CDF points, and the distributional identities the samplers must
//! satisfy by construction.

use mixstable::analytics::{empirical_lst, gamma, lst_univariate};
use mixstable::univariate::*;
use mixstable::verify::{ks_statistic, ks_two_sample};
use mixstable::{RngStream, UnivariateSpec};
use std::f64::consts::PI;

fn stream(id: u64) -> RngStream {
    RngStream::new(0x1CEB_00DA, id)
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn gamma_mean_matches_shape_over_rate() {
    let b = UnivariateSpec::Gamma { shape: 2.0, rate: 3.0 }
        .sample(400_000, &mut stream(1))
        .unwrap();
    let (mean, se) = mean_and_se(b.scalars().unwrap());
    assert!((mean - 2.0 / 3.0).abs() < 3.0 * se, "mean {mean} se {se}");
}

#[test]
fn weibull_cdf_point() {
    // P(W_2 < 1) = 1 − e^{−1}
    let b = UnivariateSpec::Weibull { shape: 2.0 }
        .sample(100_000, &mut stream(2))
        .unwrap();
    let p = b.scalars().unwrap().iter().filter(|&&x| x < 1.0).count() as f64 / b.len() as f64;
    let exact = 1.0 - (-1.0_f64).exp();
    let se = (exact * (1.0 - exact) / b.len() as f64).sqrt();
    assert!((p - exact).abs() < 3.0 * se, "p {p}");
}

#[test]
fn negative_binomial_unit_shape_is_geometric() {
    let nb = UnivariateSpec::NegativeBinomial { nu: 1.0, p: 0.3 }
        .sample(100_000, &mut stream(3))
        .unwrap();
    let geo = UnivariateSpec::Geometric { p: 0.3 }
        .sample(100_000, &mut stream(4))
        .unwrap();
    let r = ks_two_sample(&nb, &geo).unwrap();
    assert!(!r.reject, "p = {}", r.p_value);
}

#[test]
fn one_sided_levy_fractional_moment() {
    // E S(1/2,1)^{1/4} = 4^{−1/4}Γ(1/4)/√π ≈ 1.4465; the order sits at the
    // boundary where the estimator variance diverges, so the tolerance is
    // absolute rather than SE-based
    let b = sample_one_sided_stable(0.5, 1_000_000, &mut stream(5)).unwrap();
    let mean = b.scalars().unwrap().iter().map(|x| x.powf(0.25)).sum::<f64>() / b.len() as f64;
    let exact = 0.25_f64.powf(0.25) * gamma(0.25) / PI.sqrt();
    assert!((mean - exact).abs() < 0.02, "mean {mean} vs {exact}");
}

#[test]
fn one_sided_lst_at_unit_argument() {
    let b = sample_one_sided_stable(0.7, 1_000_000, &mut stream(6)).unwrap();
    let est = empirical_lst(&b, 1.0).unwrap();
    let exact = (-1.0_f64).exp();
    assert!((est.value - exact).abs() < 3.0 * est.se, "{} vs {exact}", est.value);
}

#[test]
fn empirical_lst_battery_within_three_se() {
    // every positive family with a closed-form LST, on s in {0.25, 1, 4}
    let specs = [
        UnivariateSpec::Exponential,
        UnivariateSpec::Gamma { shape: 1.8, rate: 1.3 },
        UnivariateSpec::OneSidedStable { alpha: 0.6 },
        UnivariateSpec::MittagLeffler { delta: 0.6 },
        UnivariateSpec::GenMittagLeffler { delta: 0.7, nu: 2.0 },
    ];
    for (k, spec) in specs.iter().enumerate() {
        let b = spec.sample(1_000_000, &mut stream(100 + k as u64)).unwrap();
        for s in [0.25, 1.0, 4.0] {
            let est = empirical_lst(&b, s).unwrap();
            let exact = lst_univariate(spec, s).unwrap();
            assert!(
                (est.value - exact).abs() < 3.0 * est.se,
                "{} at s={s}: {} vs {exact} (se {})",
                spec.label(),
                est.value,
                est.se
            );
        }
    }
}

#[test]
fn symmetric_stable_alpha_two_variance() {
    let b = sample_symmetric_stable(2.0, 1_000_000, &mut stream(7)).unwrap();
    let var = b.scalars().unwrap().iter().map(|x| x * x).sum::<f64>() / b.len() as f64;
    assert!((var - 2.0).abs() < 0.01, "var {var}");
}

#[test]
fn symmetric_stable_alpha_one_is_cauchy() {
    let b = sample_symmetric_stable(1.0, 400_000, &mut stream(8)).unwrap();
    let p = b.scalars().unwrap().iter().filter(|x| x.abs() <= 1.0).count() as f64 / b.len() as f64;
    let se = (0.25f64 / b.len() as f64).sqrt();
    assert!((p - 0.5).abs() < 3.0 * se, "p {p}");
}

#[test]
fn symmetric_stable_cf_point() {
    let b = sample_symmetric_stable(1.5, 1_000_000, &mut stream(9)).unwrap();
    let est = mixstable::analytics::empirical_cf(&b, &[1.0]).unwrap();
    let exact = (-1.0_f64).exp();
    assert!((est.value.re - exact).abs() < 3.0 * est.se_re);
    assert!(est.value.im.abs() < 3.0 * est.se_im);
}

#[test]
fn mittag_leffler_delta_one_is_exponential() {
    let ml = sample_mittag_leffler(1.0, 100_000, &mut stream(10)).unwrap();
    let ex = UnivariateSpec::Exponential.sample(100_000, &mut stream(11)).unwrap();
    let r = ks_two_sample(&ml, &ex).unwrap();
    assert!(!r.reject, "p = {}", r.p_value);
}

#[test]
fn mittag_leffler_lst_half() {
    let b = sample_mittag_leffler(0.5, 1_000_000, &mut stream(12)).unwrap();
    let est = empirical_lst(&b, 1.0).unwrap();
    assert!((est.value - 0.5).abs() < 3.0 * est.se, "{}", est.value);
}

#[test]
fn gen_mittag_leffler_reduces_and_transforms() {
    // ν = 1 reduces to the ordinary law
    let a = sample_gen_mittag_leffler(0.6, 1.0, 100_000, &mut stream(13)).unwrap();
    let b = sample_mittag_leffler(0.6, 100_000, &mut stream(14)).unwrap();
    assert!(!ks_two_sample(&a, &b).unwrap().reject);
    // LST (1+s^δ)^{−ν} at s = 1, δ = 0.5, ν = 2 -> 1/4
    let c = sample_gen_mittag_leffler(0.5, 2.0, 1_000_000, &mut stream(15)).unwrap();
    let est = empirical_lst(&c, 1.0).unwrap();
    assert!((est.value - 0.25).abs() < 3.0 * est.se, "{}", est.value);
}

#[test]
fn gen_mittag_leffler_moment_against_formula() {
    // E M^β at a boundary order (2β = δ): absolute tolerance; and at a
    // finite-variance order: 3 SE
    let b = sample_gen_mittag_leffler(0.8, 0.5, 1_000_000, &mut stream(16)).unwrap();
    let spec: mixstable::DistributionSpec =
        UnivariateSpec::GenMittagLeffler { delta: 0.8, nu: 0.5 }.into();
    let m04: Vec<f64> = b.scalars().unwrap().iter().map(|x| x.powf(0.4)).collect();
    let (mean04, _) = mean_and_se(&m04);
    let exact04 = mixstable::analytics::analytic_moment(&spec, 0.4).unwrap();
    assert!((mean04 - exact04).abs() < 0.02, "{mean04} vs {exact04}");
    let m03: Vec<f64> = b.scalars().unwrap().iter().map(|x| x.powf(0.3)).collect();
    let (mean03, se03) = mean_and_se(&m03);
    let exact03 = mixstable::analytics::analytic_moment(&spec, 0.3).unwrap();
    assert!((mean03 - exact03).abs() < 3.0 * se03, "{mean03} vs {exact03}");
}

#[test]
fn mixer_harmonic_mean_and_gamma_identity() {
    // E(1/Z_{r,μ}) = r/μ
    let b = sample_mixed_exp_mixer(0.4, 2.0, 400_000, &mut stream(17)).unwrap();
    let inv: Vec<f64> = b.scalars().unwrap().iter().map(|z| 1.0 / z).collect();
    let (mean, se) = mean_and_se(&inv);
    assert!((mean - 0.2).abs() < 3.0 * se, "{mean}");

    // W₁ ∘ Z^{−1}_{r,μ} ≐ G_{r,μ} at (r, μ) = (0.5, 1)
    let z = sample_mixed_exp_mixer(0.5, 1.0, 100_000, &mut stream(18)).unwrap();
    let w = UnivariateSpec::Exponential.sample(100_000, &mut stream(19)).unwrap();
    let ratio: Vec<f64> = w
        .scalars()
        .unwrap()
        .iter()
        .zip(z.scalars().unwrap())
        .map(|(wi, zi)| wi / zi)
        .collect();
    let lhs = mixstable::SampleBatch::univariate(ratio, Default::default()).unwrap();
    let g = UnivariateSpec::Gamma { shape: 0.5, rate: 1.0 }
        .sample(100_000, &mut stream(20))
        .unwrap();
    assert!(!ks_two_sample(&lhs, &g).unwrap().reject);
}

#[test]
fn stable_ratio_median_density_and_log_symmetry() {
    let b = sample_stable_ratio(0.5, 200_000, &mut stream(21)).unwrap();
    let xs = b.scalars().unwrap();
    // P(R <= 1) = 1/2 by exchangeability
    let p = xs.iter().filter(|&&x| x <= 1.0).count() as f64 / xs.len() as f64;
    let se = (0.25f64 / xs.len() as f64).sqrt();
    assert!((p - 0.5).abs() < 3.0 * se, "p {p}");

    // chi-square against the closed-form density via its quantiles:
    // CDF(x) = (2/π) arctan √x at δ = 1/2, so equiprobable bin edges are
    // tan²(kπ/40)
    let bins = 20usize;
    let edges: Vec<f64> = (1..bins)
        .map(|k| (k as f64 * PI / (2.0 * bins as f64)).tan().powi(2))
        .collect();
    let mut counts = vec![0usize; bins];
    for &x in xs {
        let idx = edges.partition_point(|&e| e < x);
        counts[idx] += 1;
    }
    let expect = xs.len() as f64 / bins as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
    // chi2(19) upper 1e-3 quantile
    assert!(chi2 < 43.82, "chi2 {chi2}");

    // skewness of log R vanishes by symmetry of the log-ratio; log R has
    // exponential-type tails, so use a block SE instead of the normal-theory
    // sqrt(6/n)
    let logs: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let block_skews: Vec<f64> = logs
        .chunks_exact(4000)
        .map(|block| {
            let n = block.len() as f64;
            let m = block.iter().sum::<f64>() / n;
            let m2 = block.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
            let m3 = block.iter().map(|x| (x - m).powi(3)).sum::<f64>() / n;
            m3 / m2.powf(1.5)
        })
        .collect();
    let (skew, se_skew) = mean_and_se(&block_skews);
    assert!(skew.abs() < 3.0 * se_skew, "skew {skew} se {se_skew}");
}

#[test]
fn weibull_power_identity_exact_cdf_and_samples() {
    // W_{γγ'} ≐ W_{γ'}^{1/γ}: identical analytic CDFs…
    let (g, gp) = (2.0, 0.5);
    for x in [0.2f64, 0.7, 1.0, 1.9, 3.4] {
        let lhs = 1.0 - (-x.powf(g * gp)).exp();
        // P(W_{γ'}^{1/γ} < x) = P(W_{γ'} < x^γ)
        let rhs = 1.0 - (-(x.powf(g)).powf(gp)).exp();
        assert!((lhs - rhs).abs() < 1e-15);
    }
    // …and KS on samples
    let a = UnivariateSpec::Weibull { shape: 1.0 }.sample(100_000, &mut stream(22)).unwrap();
    let pow: Vec<f64> = UnivariateSpec::Weibull { shape: 0.5 }
        .sample(100_000, &mut stream(23))
        .unwrap()
        .scalars()
        .unwrap()
        .iter()
        .map(|x| x.powf(0.5))
        .collect();
    let b = mixstable::SampleBatch::univariate(pow, Default::default()).unwrap();
    assert!(!ks_two_sample(&a, &b).unwrap().reject);
}

#[test]
fn multiplication_theorem_for_one_sided_stables() {
    for (alpha, alpha_prime, sid) in [(0.5, 0.5, 24u64), (0.8, 0.9, 27u64)] {
        let lhs = sample_one_sided_stable(alpha * alpha_prime, 100_000, &mut stream(sid)).unwrap();
        let outer = sample_one_sided_stable(alpha_prime, 100_000, &mut stream(sid + 1)).unwrap();
        let inner = sample_one_sided_stable(alpha, 100_000, &mut stream(sid + 2)).unwrap();
        let prod: Vec<f64> = outer
            .scalars()
            .unwrap()
            .iter()
            .zip(inner.scalars().unwrap())
            .map(|(s_out, s_in)| s_out.powf(1.0 / alpha) * s_in)
            .collect();
        let rhs = mixstable::SampleBatch::univariate(prod, Default::default()).unwrap();
        let r = ks_two_sample(&lhs, &rhs).unwrap();
        assert!(!r.reject, "({alpha},{alpha_prime}): p = {}", r.p_value);
    }
}

#[test]
fn partitioned_streams_match_sequential_generation() {
    // generating chunks on disjoint stream ids and concatenating is identical
    // to generating the same streams sequentially
    let spec = UnivariateSpec::SymmetricStable { alpha: 1.2 };
    let chunked: Vec<f64> = (0..4u64)
        .flat_map(|c| {
            spec.sample(250, &mut RngStream::new(99, c))
                .unwrap()
                .scalars()
                .unwrap()
                .to_vec()
        })
        .collect();
    let mut sequential = Vec::new();
    for c in 0..4u64 {
        let mut rng = RngStream::new(99, c);
        sequential.extend(spec.sample(250, &mut rng).unwrap().scalars().unwrap().to_vec());
    }
    assert_eq!(chunked, sequential);
}

#[test]
fn ks_statistic_is_scale_free_sanity() {
    // same law through two different representations: W_{0.6} vs W₁ ∘ S^{−1}(0.6,1)
    let a = UnivariateSpec::Weibull { shape: 0.6 }.sample(100_000, &mut stream(30)).unwrap();
    let w = UnivariateSpec::Exponential.sample(100_000, &mut stream(31)).unwrap();
    let s = sample_one_sided_stable(0.6, 100_000, &mut stream(32)).unwrap();
    let vals: Vec<f64> = w
        .scalars()
        .unwrap()
        .iter()
        .zip(s.scalars().unwrap())
        .map(|(wi, si)| wi / si)
        .collect();
    let d = ks_statistic(a.scalars().unwrap(), &vals);
    assert!(d < 0.01, "d = {d}");
}
