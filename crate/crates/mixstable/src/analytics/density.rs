//! Closed-form probability densities.

use std::f64::consts::PI;

use crate::analytics::mittag::mittag_leffler_density;
use crate::analytics::special::{gamma, ln_gamma};
use crate::error::{Error, Result};
use crate::multivariate::MultivariateSpec;
use crate::spec::DistributionSpec;
use crate::univariate::UnivariateSpec;

/// Density of a supported family at `x`. Points outside the support return 0.
///
/// Supported: Mittag-Leffler, the 1-d Laplace marginal, the mixed-exponential
/// mixer density p(z;r,μ), Snedecor–Fisher, the stable ratio, gamma,
/// generalized gamma, Weibull, exponential, and the standard normal.
pub fn density(spec: &DistributionSpec, x: f64) -> Result<f64> {
    spec.validate()?;
    match spec {
        DistributionSpec::Univariate(u) => density_univariate(u, x),
        DistributionSpec::Multivariate(m) => density_multivariate(m, x),
    }
}

fn density_univariate(spec: &UnivariateSpec, x: f64) -> Result<f64> {
    use UnivariateSpec::*;
    Ok(match *spec {
        Normal => (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
        Exponential => {
            if x < 0.0 {
                0.0
            } else {
                (-x).exp()
            }
        }
        Gamma { shape, rate } => gamma_density(x, shape, rate),
        GeneralizedGamma { shape, power, rate } => {
            if x <= 0.0 {
                0.0
            } else {
                // |α| λ^r x^{αr−1} e^{−λ x^α} / Γ(r)
                (power.abs().ln() + shape * rate.ln() + (power * shape - 1.0) * x.ln()
                    - rate * x.powf(power)
                    - ln_gamma(shape))
                .exp()
            }
        }
        Weibull { shape } => {
            if x < 0.0 {
                0.0
            } else if x == 0.0 {
                match shape.partial_cmp(&1.0).unwrap() {
                    std::cmp::Ordering::Less => f64::INFINITY,
                    std::cmp::Ordering::Equal => 1.0,
                    std::cmp::Ordering::Greater => 0.0,
                }
            } else {
                shape * x.powf(shape - 1.0) * (-x.powf(shape)).exp()
            }
        }
        MittagLeffler { delta } => mittag_leffler_density(delta, x)?,
        MixedExpMixer { shape, scale } => mixed_exp_mixer_density(x, shape, scale),
        SnedecorFisher { shape } => snedecor_density(x, shape),
        StableRatio { delta } => {
            if delta == 1.0 {
                return Err(Error::unsupported(
                    "density (point mass at 1 has no density)",
                    spec.label(),
                ));
            }
            stable_ratio_density(x, delta)
        }
        ref other => return Err(Error::unsupported("density", other.label())),
    })
}

fn density_multivariate(spec: &MultivariateSpec, x: f64) -> Result<f64> {
    match spec {
        MultivariateSpec::MvLaplace { sigma } if sigma.dim() == 1 => {
            // (2W₁)^{1/2} σ X has the Laplace density e^{−|x|/σ}/(2σ)
            let s = sigma.entry(0, 0).sqrt();
            Ok((-(x.abs()) / s).exp() / (2.0 * s))
        }
        other => Err(Error::unsupported("density", other.label())),
    }
}

fn gamma_density(x: f64, shape: f64, rate: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return match shape.partial_cmp(&1.0).unwrap() {
            std::cmp::Ordering::Less => f64::INFINITY,
            std::cmp::Ordering::Equal => rate,
            std::cmp::Ordering::Greater => 0.0,
        };
    }
    (shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma(shape)).exp()
}

/// p(z; r, μ) = μ^r / (Γ(1−r)Γ(r)) · 1(z ≥ μ) / ((z−μ)^r z).
fn mixed_exp_mixer_density(z: f64, r: f64, mu: f64) -> f64 {
    if z < mu {
        return 0.0;
    }
    if z == mu {
        return f64::INFINITY;
    }
    mu.powf(r) / (gamma(1.0 - r) * gamma(r)) / ((z - mu).powf(r) * z)
}

/// q(x; 1−r, r) = (1−r)^{1−r} r^r / (Γ(1−r)Γ(r)) · x^{−r} / (r + (1−r)x).
fn snedecor_density(x: f64, r: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    (1.0 - r).powf(1.0 - r) * r.powf(r) / (gamma(1.0 - r) * gamma(r))
        / (x.powf(r) * (r + (1.0 - r) * x))
}

/// f^{(R)}_δ(x) = sin(πδ) x^{δ−1} / (π [1 + x^{2δ} + 2 x^δ cos(πδ)]).
fn stable_ratio_density(x: f64, delta: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return if delta < 1.0 { f64::INFINITY } else { 0.0 };
    }
    let xd = x.powf(delta);
    (PI * delta).sin() * x.powf(delta - 1.0)
        / (PI * (1.0 + xd * xd + 2.0 * xd * (PI * delta).cos()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spd::SpdMatrix;

    #[test]
    fn mittag_leffler_delta_one_is_exponential() {
        let f = density(&UnivariateSpec::MittagLeffler { delta: 1.0 }.into(), 2.0).unwrap();
        assert!((f - (-2.0_f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn stable_ratio_half_at_one() {
        // sin(π/2)·1/(π·(1+1+0)) = 1/(2π)
        let f = density(&UnivariateSpec::StableRatio { delta: 0.5 }.into(), 1.0).unwrap();
        assert!((f - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn laplace_marginal() {
        let spec: DistributionSpec = MultivariateSpec::MvLaplace {
            sigma: SpdMatrix::identity(1),
        }
        .into();
        let f = density(&spec, 0.0).unwrap();
        assert!((f - 0.5).abs() < 1e-15);
        let f1 = density(&spec, 1.5).unwrap();
        assert!((f1 - 0.5 * (-1.5_f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn outside_support_is_zero() {
        assert_eq!(density(&UnivariateSpec::Exponential.into(), -1.0).unwrap(), 0.0);
        assert_eq!(
            density(&UnivariateSpec::MixedExpMixer { shape: 0.4, scale: 1.0 }.into(), 0.5).unwrap(),
            0.0
        );
    }

    #[test]
    fn unsupported_families_error() {
        assert!(density(&UnivariateSpec::Geometric { p: 0.5 }.into(), 1.0).is_err());
        assert!(density(&UnivariateSpec::SymmetricStable { alpha: 1.5 }.into(), 0.0).is_err());
    }
}
