//! Samplers for the r-variate laws: normal, elliptically contoured stable,
//! scale-mixed stable, Laplace, Linnik, generalized Linnik.
//!
//! Every law here is a normal scale mixture: a draw is exp(ln scale) · A z
//! with z standard normal and A the Cholesky factor of Σ. The scalar scale
//! factor is assembled in log space so products of heavy-tailed positives
//! cannot overflow intermediate results; rows that still fail to be finite
//! after the single exponentiation are rejected, redrawn and counted in the
//! batch metadata. Within each row the scale draws precede the normal vector.

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::batch::{BatchMeta, SampleBatch};
use crate::error::{Error, Result};
use crate::mixer::{MixerSampler, MixerSpec};
use crate::rng::RngStream;
use crate::spd::SpdMatrix;
use crate::univariate::{ln_one_sided_stable, UniSampler, UnivariateSpec};

/// Generative recipe for the Linnik families, which admit two equivalent
/// constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Mixer-powered stable vector, e.g. W₁^{1/α} ∘ S(α,Σ,0).
    Stable,
    /// Normal scale mixture, e.g. (2 M_{α/2})^{1/2} ∘ X.
    NormalMixture,
}

/// Tagged parameterization of the multivariate families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum MultivariateSpec {
    /// 𝔑_Σ: centered normal with covariance Σ, CF exp{−½ tᵀΣt}.
    MvNormal { sigma: SpdMatrix },
    /// S(α,Σ,0): CF exp{−(tᵀΣt)^{α/2}}, 0 < α ≤ 2.
    EcStable { alpha: f64, sigma: SpdMatrix },
    /// U^{1/α} ∘ S(α,Σ,0): CF ψ^{(U)}((tᵀΣt)^{α/2}).
    ScaleMixedStable {
        alpha: f64,
        sigma: SpdMatrix,
        mixer: MixerSpec,
    },
    /// Λ_Σ = (2W₁)^{1/2} ∘ X: CF (1 + tᵀΣt)^{−1}.
    MvLaplace { sigma: SpdMatrix },
    /// L_{α,Σ}: CF [1 + (tᵀΣt)^{α/2}]^{−1}.
    MvLinnik { alpha: f64, sigma: SpdMatrix },
    /// L_{α,Σ,ν}: CF [1 + (tᵀΣt)^{α/2}]^{−ν}.
    MvGenLinnik {
        alpha: f64,
        sigma: SpdMatrix,
        nu: f64,
    },
}

fn check_alpha(alpha: f64, family: &str) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::domain(family, format!("need alpha in (0,2], got {alpha}")))
    }
}

impl MultivariateSpec {
    pub fn dim(&self) -> usize {
        self.sigma().dim()
    }

    pub fn sigma(&self) -> &SpdMatrix {
        match self {
            MultivariateSpec::MvNormal { sigma }
            | MultivariateSpec::EcStable { sigma, .. }
            | MultivariateSpec::ScaleMixedStable { sigma, .. }
            | MultivariateSpec::MvLaplace { sigma }
            | MultivariateSpec::MvLinnik { sigma, .. }
            | MultivariateSpec::MvGenLinnik { sigma, .. } => sigma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MultivariateSpec::MvNormal { .. } | MultivariateSpec::MvLaplace { .. } => Ok(()),
            MultivariateSpec::EcStable { alpha, .. } => check_alpha(*alpha, "EcStable"),
            MultivariateSpec::ScaleMixedStable { alpha, mixer, .. } => {
                check_alpha(*alpha, "ScaleMixedStable")?;
                mixer.validate()
            }
            MultivariateSpec::MvLinnik { alpha, .. } => check_alpha(*alpha, "MvLinnik"),
            MultivariateSpec::MvGenLinnik { alpha, nu, .. } => {
                check_alpha(*alpha, "MvGenLinnik")?;
                if !(nu.is_finite() && *nu > 0.0) {
                    return Err(Error::domain("MvGenLinnik", format!("need nu > 0, got {nu}")));
                }
                Ok(())
            }
        }
    }

    pub fn label(&self) -> String {
        let d = self.dim();
        match self {
            MultivariateSpec::MvNormal { .. } => format!("mv-normal(dim={d})"),
            MultivariateSpec::EcStable { alpha, .. } => format!("ec-stable(alpha={alpha}, dim={d})"),
            MultivariateSpec::ScaleMixedStable { alpha, mixer, .. } => {
                format!("scale-mixed-stable(alpha={alpha}, mixer={}, dim={d})", mixer.label())
            }
            MultivariateSpec::MvLaplace { .. } => format!("mv-laplace(dim={d})"),
            MultivariateSpec::MvLinnik { alpha, .. } => format!("mv-linnik(alpha={alpha}, dim={d})"),
            MultivariateSpec::MvGenLinnik { alpha, nu, .. } => {
                format!("mv-gen-linnik(alpha={alpha}, nu={nu}, dim={d})")
            }
        }
    }

    /// The route used when none is requested: the normal-mixture construction,
    /// which multiplies one fewer heavy-tailed factor.
    pub fn default_route(&self) -> Option<Route> {
        match self {
            MultivariateSpec::MvLinnik { .. } | MultivariateSpec::MvGenLinnik { .. } => {
                Some(Route::NormalMixture)
            }
            _ => None,
        }
    }

    /// Build the prepared sampler; `route` is only meaningful for the Linnik
    /// families and rejected elsewhere.
    pub fn sampler(&self, route: Option<Route>) -> Result<MvSampler> {
        self.validate()?;
        let scale = match self {
            MultivariateSpec::MvNormal { .. } => ScaleKind::Unit,
            MultivariateSpec::EcStable { alpha, .. } => ScaleKind::EcStable { alpha: *alpha },
            MultivariateSpec::ScaleMixedStable { alpha, mixer, .. } => ScaleKind::Mixed {
                alpha: *alpha,
                mixer: mixer.sampler()?,
            },
            MultivariateSpec::MvLaplace { .. } => ScaleKind::Laplace,
            MultivariateSpec::MvLinnik { alpha, .. } => {
                linnik_scale(*alpha, 1.0, route.unwrap_or(Route::NormalMixture))?
            }
            MultivariateSpec::MvGenLinnik { alpha, nu, .. } => {
                linnik_scale(*alpha, *nu, route.unwrap_or(Route::NormalMixture))?
            }
        };
        if route.is_some() && self.default_route().is_none() {
            return Err(Error::InvalidConfig(format!(
                "sampling route is only selectable for the Linnik families, not {}",
                self.label()
            )));
        }
        Ok(MvSampler {
            sigma: self.sigma().clone(),
            scale,
            label: self.label(),
        })
    }

    pub fn sample(&self, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
        self.sample_routed(None, n, rng)
    }

    pub fn sample_routed(&self, route: Option<Route>, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
        self.sampler(route)?.sample(n, rng)
    }
}

fn linnik_scale(alpha: f64, nu: f64, route: Route) -> Result<ScaleKind> {
    Ok(match route {
        Route::Stable => ScaleKind::LinnikStable {
            alpha,
            mixer: MixerSpec::gamma(nu).sampler()?,
        },
        Route::NormalMixture => ScaleKind::LinnikNormalMixture {
            ml: UnivariateSpec::GenMittagLeffler { delta: alpha / 2.0, nu }.sampler()?,
        },
    })
}

#[derive(Debug, Clone)]
enum ScaleKind {
    Unit,
    /// (2 S(α/2,1))^{1/2}
    EcStable { alpha: f64 },
    /// U^{1/α} (2 S(α/2,1))^{1/2}
    Mixed { alpha: f64, mixer: MixerSampler },
    /// (2 W₁)^{1/2}
    Laplace,
    /// G_{ν,1}^{1/α} (2 S(α/2,1))^{1/2}
    LinnikStable { alpha: f64, mixer: MixerSampler },
    /// (2 M_{α/2,ν})^{1/2}
    LinnikNormalMixture { ml: UniSampler },
}

impl ScaleKind {
    /// ln of the scalar scale multiplying A z.
    #[inline]
    fn ln_scale(&self, rng: &mut RngStream) -> f64 {
        match self {
            ScaleKind::Unit => 0.0,
            ScaleKind::EcStable { alpha } => 0.5 * (LN_2 + ln_half_alpha_stable(*alpha, rng)),
            ScaleKind::Mixed { alpha, mixer } => {
                let ln_u = mixer.ln_draw(rng);
                ln_u / alpha + 0.5 * (LN_2 + ln_half_alpha_stable(*alpha, rng))
            }
            ScaleKind::Laplace => 0.5 * (LN_2 + rng.standard_exp().ln()),
            ScaleKind::LinnikStable { alpha, mixer } => {
                let ln_g = mixer.ln_draw(rng);
                ln_g / alpha + 0.5 * (LN_2 + ln_half_alpha_stable(*alpha, rng))
            }
            ScaleKind::LinnikNormalMixture { ml } => 0.5 * (LN_2 + ml.draw(rng).ln()),
        }
    }
}

/// ln S(α/2, 1); α = 2 gives the constant S(1,1) = 1 without consuming state.
#[inline]
fn ln_half_alpha_stable(alpha: f64, rng: &mut RngStream) -> f64 {
    if alpha == 2.0 {
        0.0
    } else {
        ln_one_sided_stable(alpha / 2.0, rng)
    }
}

/// Prepared sampler for one multivariate law.
#[derive(Debug, Clone)]
pub struct MvSampler {
    sigma: SpdMatrix,
    scale: ScaleKind,
    label: String,
}

impl MvSampler {
    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    /// Draw one row into `row` (length dim). Returns false when the row must
    /// be rejected (non-finite after exponentiation).
    pub fn draw_row(&self, rng: &mut RngStream, z: &mut [f64], row: &mut [f64]) -> bool {
        let scale = self.scale.ln_scale(rng).exp();
        for zi in z.iter_mut() {
            *zi = rng.standard_normal();
        }
        self.sigma.factor_mul(z, row);
        let mut ok = true;
        for r in row.iter_mut() {
            *r *= scale;
            ok &= r.is_finite();
        }
        ok
    }

    pub fn sample(&self, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
        if n == 0 {
            return Err(Error::EmptyBatch);
        }
        let d = self.dim();
        let mut values = vec![0.0; n * d];
        let mut z = vec![0.0; d];
        let mut rejected = 0u64;
        let mut i = 0;
        while i < n {
            let (a, b) = (i * d, (i + 1) * d);
            if self.draw_row(rng, &mut z, &mut values[a..b]) {
                i += 1;
            } else {
                rejected += 1;
                if rejected > 1_000_000 {
                    return Err(Error::Accuracy {
                        context: format!("sampling {}", self.label),
                        estimate: rejected as f64,
                        target: 1e6,
                    });
                }
            }
        }
        SampleBatch::new(
            d,
            values,
            BatchMeta {
                seed: rng.seed(),
                stream_id: rng.stream_id(),
                label: self.label.clone(),
                rejected,
            },
        )
    }
}

// ---------------------------------------------------------------------------
// Spec-surface entry points
// ---------------------------------------------------------------------------

pub fn sample_mv_normal(sigma: &SpdMatrix, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
    MultivariateSpec::MvNormal { sigma: sigma.clone() }.sample(n, rng)
}

pub fn sample_ec_stable(
    alpha: f64,
    sigma: &SpdMatrix,
    n: usize,
    rng: &mut RngStream,
) -> Result<SampleBatch> {
    MultivariateSpec::EcStable { alpha, sigma: sigma.clone() }.sample(n, rng)
}

pub fn sample_scale_mixed_stable(
    alpha: f64,
    sigma: &SpdMatrix,
    mixer: &MixerSpec,
    n: usize,
    rng: &mut RngStream,
) -> Result<SampleBatch> {
    MultivariateSpec::ScaleMixedStable {
        alpha,
        sigma: sigma.clone(),
        mixer: mixer.clone(),
    }
    .sample(n, rng)
}

pub fn sample_mv_laplace(sigma: &SpdMatrix, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
    MultivariateSpec::MvLaplace { sigma: sigma.clone() }.sample(n, rng)
}

pub fn sample_mv_linnik(
    alpha: f64,
    sigma: &SpdMatrix,
    route: Route,
    n: usize,
    rng: &mut RngStream,
) -> Result<SampleBatch> {
    MultivariateSpec::MvLinnik { alpha, sigma: sigma.clone() }.sample_routed(Some(route), n, rng)
}

pub fn sample_mv_gen_linnik(
    alpha: f64,
    sigma: &SpdMatrix,
    nu: f64,
    route: Route,
    n: usize,
    rng: &mut RngStream,
) -> Result<SampleBatch> {
    MultivariateSpec::MvGenLinnik {
        alpha,
        sigma: sigma.clone(),
        nu,
    }
    .sample_routed(Some(route), n, rng)
}
