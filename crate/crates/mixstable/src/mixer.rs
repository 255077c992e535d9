//! Nonnegative mixing random variables U for scale-mixed stable laws.

use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::univariate::{UniSampler, UnivariateSpec};

/// A nonnegative mixing random variable.
///
/// `GammaScaleMixture` is the class of laws U = V ∘ G_{ν,1} (scale mixtures of
/// gamma laws): gamma itself, and with suitable V also Pareto and
/// Snedecor–Fisher mixing. `Scaled` multiplies any mixer by a positive
/// constant, e.g. 2·M_{α/2,ν} as required by the finite-covariance random-sum
/// route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mixer", rename_all = "kebab-case")]
pub enum MixerSpec {
    /// A nonnegative univariate family used directly as U.
    Base { spec: UnivariateSpec },
    /// U = V ∘ G_{ν,1} with V a positive random variable.
    GammaScaleMixture { v: UnivariateSpec, nu: f64 },
    /// Point mass at c > 0.
    Constant { c: f64 },
    /// factor · U for a positive constant factor.
    Scaled { factor: f64, base: Box<MixerSpec> },
}

impl MixerSpec {
    pub fn base(spec: UnivariateSpec) -> Self {
        MixerSpec::Base { spec }
    }

    pub fn constant(c: f64) -> Self {
        MixerSpec::Constant { c }
    }

    pub fn scaled(factor: f64, base: MixerSpec) -> Self {
        MixerSpec::Scaled {
            factor,
            base: Box::new(base),
        }
    }

    /// Exponential mixer W₁ (the multivariate Linnik case).
    pub fn exponential() -> Self {
        MixerSpec::Base {
            spec: UnivariateSpec::Exponential,
        }
    }

    /// Gamma mixer G_{ν,1} (the multivariate generalized Linnik case).
    pub fn gamma(nu: f64) -> Self {
        MixerSpec::Base {
            spec: UnivariateSpec::Gamma { shape: nu, rate: 1.0 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MixerSpec::Base { spec } => {
                spec.validate()?;
                if !spec.is_nonnegative() {
                    return Err(Error::domain(
                        "MixerSpec",
                        format!("mixer must be nonnegative, got {}", spec.label()),
                    ));
                }
                Ok(())
            }
            MixerSpec::GammaScaleMixture { v, nu } => {
                v.validate()?;
                if !v.is_nonnegative() {
                    return Err(Error::domain(
                        "MixerSpec",
                        format!("V in a gamma scale mixture must be nonnegative, got {}", v.label()),
                    ));
                }
                if !(nu.is_finite() && *nu > 0.0) {
                    return Err(Error::domain("MixerSpec", format!("need nu > 0, got {nu}")));
                }
                Ok(())
            }
            MixerSpec::Constant { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::domain("MixerSpec", format!("need constant c > 0, got {c}")));
                }
                Ok(())
            }
            MixerSpec::Scaled { factor, base } => {
                if !(factor.is_finite() && *factor > 0.0) {
                    return Err(Error::domain(
                        "MixerSpec",
                        format!("need scale factor > 0, got {factor}"),
                    ));
                }
                base.validate()
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            MixerSpec::Base { spec } => spec.label(),
            MixerSpec::GammaScaleMixture { v, nu } => {
                format!("gamma-scale-mixture(v={}, nu={nu})", v.label())
            }
            MixerSpec::Constant { c } => format!("constant({c})"),
            MixerSpec::Scaled { factor, base } => format!("scaled({factor}, {})", base.label()),
        }
    }

    pub fn sampler(&self) -> Result<MixerSampler> {
        self.validate()?;
        Ok(MixerSampler {
            node: MixNode::prepare(self)?,
        })
    }
}

#[derive(Debug, Clone)]
enum MixNode {
    Uni(UniSampler),
    GammaMix {
        v: UniSampler,
        gamma: rand_distr::Gamma<f64>,
    },
    Constant(f64),
    Scaled(f64, Box<MixNode>),
}

impl MixNode {
    fn prepare(spec: &MixerSpec) -> Result<Self> {
        Ok(match spec {
            MixerSpec::Base { spec } => MixNode::Uni(spec.sampler()?),
            MixerSpec::GammaScaleMixture { v, nu } => MixNode::GammaMix {
                v: v.sampler()?,
                gamma: rand_distr::Gamma::new(*nu, 1.0)
                    .map_err(|e| Error::domain("MixerSpec", e.to_string()))?,
            },
            MixerSpec::Constant { c } => MixNode::Constant(*c),
            MixerSpec::Scaled { factor, base } => {
                MixNode::Scaled(*factor, Box::new(MixNode::prepare(base)?))
            }
        })
    }

    fn ln_draw(&self, rng: &mut RngStream) -> f64 {
        match self {
            MixNode::Uni(s) => s.draw(rng).ln(),
            MixNode::GammaMix { v, gamma } => v.draw(rng).ln() + gamma.sample(rng).ln(),
            MixNode::Constant(c) => c.ln(),
            MixNode::Scaled(f, base) => f.ln() + base.ln_draw(rng),
        }
    }
}

/// Prepared sampler for a mixer.
#[derive(Debug, Clone)]
pub struct MixerSampler {
    node: MixNode,
}

impl MixerSampler {
    /// ln U. A constant mixer consumes no generator state, so e.g. a
    /// `Constant(1)` scale-mixed stable batch is draw-for-draw identical to
    /// the plain elliptically contoured stable batch on the same stream.
    #[inline]
    pub fn ln_draw(&self, rng: &mut RngStream) -> f64 {
        self.node.ln_draw(rng)
    }

    #[inline]
    pub fn draw(&self, rng: &mut RngStream) -> f64 {
        self.ln_draw(rng).exp()
    }
}
