//! The catalog of distributional identities, each executable as a two-sample
//! test. Every `≐` relation among the product representations is registered
//! exactly once, under the id of its source display.
//!
//! Parameter guards mirror the theorem hypotheses: the cases built on the
//! mixed-exponential mixer Z_{ν,1} (eq. 23, eq. 36, eq. 37, eq. 42 and the
//! two corollaries of it) refuse shape parameters outside (0,1).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixer::MixerSpec;
use crate::multivariate::{MultivariateSpec, Route};
use crate::rng::RngStream;
use crate::spd::{make_spd, SpdMatrix};
use crate::univariate::UnivariateSpec;
use crate::verify::recipe::Recipe;
use crate::verify::{energy_test, holm_adjust, ks_two_sample, EnergyOptions, TestReport};

/// One registered identity: two generative recipes asserted equal in law.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: String,
    /// Anchor of the identity in the source material.
    pub citation: String,
    /// Human-readable parameter echo.
    pub params: String,
    pub dim: usize,
    pub lhs: Recipe,
    pub rhs: Recipe,
}

impl IdentityCase {
    fn new(
        id: &str,
        citation: &str,
        params: String,
        lhs: Recipe,
        rhs: Recipe,
    ) -> Result<IdentityCase> {
        lhs.validate()?;
        rhs.validate()?;
        if lhs.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch(format!(
                "identity {id}: lhs dim {} vs rhs dim {}",
                lhs.dim(),
                rhs.dim()
            )));
        }
        Ok(IdentityCase {
            id: id.into(),
            citation: citation.into(),
            params,
            dim: lhs.dim(),
            lhs,
            rhs,
        })
    }
}

fn uni(spec: UnivariateSpec) -> Recipe {
    Recipe::Uni(spec)
}

fn exponential() -> Recipe {
    uni(UnivariateSpec::Exponential)
}

fn normal() -> Recipe {
    uni(UnivariateSpec::Normal)
}

fn one_sided(alpha: f64) -> Recipe {
    uni(UnivariateSpec::OneSidedStable { alpha })
}

fn sym_stable(alpha: f64) -> Recipe {
    uni(UnivariateSpec::SymmetricStable { alpha })
}

fn gamma_r(shape: f64) -> Recipe {
    uni(UnivariateSpec::Gamma { shape, rate: 1.0 })
}

fn gen_ml(delta: f64, nu: f64) -> Recipe {
    uni(UnivariateSpec::GenMittagLeffler { delta, nu })
}

fn mixer_z(nu: f64) -> Recipe {
    uni(UnivariateSpec::MixedExpMixer { shape: nu, scale: 1.0 })
}

fn gen_linnik_1d(alpha: f64, nu: f64) -> MultivariateSpec {
    MultivariateSpec::MvGenLinnik {
        alpha,
        sigma: SpdMatrix::identity(1),
        nu,
    }
}

/// Guard shared by every case built on the mixer Z_{ν,1}.
fn require_mixer_shape(id: &str, nu: f64) -> Result<()> {
    if nu > 1.0 {
        return Err(Error::domain(
            id,
            format!("this identity requires nu in (0,1], got {nu}"),
        ));
    }
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::domain(
            id,
            format!("the mixer Z_(nu,1) needs nu in (0,1); at nu = 1 the mixer degenerates to the constant 1 (got {nu})"),
        ));
    }
    Ok(())
}

fn require_open_unit(id: &str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(id, format!("need {name} in (0,1), got {v}")))
    }
}

/// Parameterized constructors for every identity case.
pub mod cases {
    use super::*;

    /// W_{γγ'} ≐ W_{γ'}^{1/γ}.
    pub fn eq2(g: f64, g_prime: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq2",
            "eq. (2)",
            format!("gamma={g}, gamma'={g_prime}"),
            uni(UnivariateSpec::Weibull { shape: g * g_prime }),
            uni(UnivariateSpec::Weibull { shape: g_prime }).power(1.0 / g),
        )
    }

    /// G_{r,μ} ≐ W₁ ∘ Z_{r,μ}^{−1}.
    pub fn eq4(r: f64, mu: f64) -> Result<IdentityCase> {
        require_open_unit("eq4", "r", r)?;
        IdentityCase::new(
            "eq4",
            "eq. (4)",
            format!("r={r}, mu={mu}"),
            uni(UnivariateSpec::Gamma { shape: r, rate: mu }),
            Recipe::Product(vec![
                exponential(),
                uni(UnivariateSpec::MixedExpMixer { shape: r, scale: mu }).power(-1.0),
            ]),
        )
    }

    /// S(αα',1) ≐ S^{1/α}(α',1) ∘ S(α,1).
    pub fn eq9(alpha: f64, alpha_prime: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq9",
            "eq. (9)",
            format!("alpha={alpha}, alpha'={alpha_prime}"),
            one_sided(alpha * alpha_prime),
            Recipe::Product(vec![
                one_sided(alpha_prime).power(1.0 / alpha),
                one_sided(alpha),
            ]),
        )
    }

    /// S(α,Σ,0) ≐ (2 S(α/2,1))^{1/2} ∘ X, exercised through the univariate
    /// marginal where the two sides follow genuinely different kernels.
    pub fn eq10(alpha: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq10",
            "eq. (10)",
            format!("alpha={alpha}"),
            sym_stable(alpha),
            Recipe::Product(vec![
                one_sided(alpha / 2.0).scale(2.0).power(0.5),
                normal(),
            ]),
        )
    }

    /// S(αα',Σ,0) ≐ S^{1/α}(α',1) ∘ S(α,Σ,0).
    pub fn eq11(alpha: f64, alpha_prime: f64, sigma: SpdMatrix) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq11",
            "eq. (11)",
            format!("alpha={alpha}, alpha'={alpha_prime}, dim={}", sigma.dim()),
            Recipe::Multi(MultivariateSpec::EcStable {
                alpha: alpha * alpha_prime,
                sigma: sigma.clone(),
            }),
            Recipe::Product(vec![
                one_sided(alpha_prime).power(1.0 / alpha),
                Recipe::Multi(MultivariateSpec::EcStable { alpha, sigma }),
            ]),
        )
    }

    /// M_{δ,ν} ≐ S(δ,1) ∘ G_{ν,1}^{1/δ}.
    pub fn eq22(delta: f64, nu: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq22",
            "eq. (22)",
            format!("delta={delta}, nu={nu}"),
            gen_ml(delta, nu),
            Recipe::Product(vec![one_sided(delta), gamma_r(nu).power(1.0 / delta)]),
        )
    }

    /// M_{δ,ν} ≐ Z_{ν,1}^{−1/δ} ∘ M_δ (ν in (0,1]).
    pub fn eq23(delta: f64, nu: f64) -> Result<IdentityCase> {
        require_mixer_shape("eq23", nu)?;
        IdentityCase::new(
            "eq23",
            "eq. (23)",
            format!("delta={delta}, nu={nu}"),
            gen_ml(delta, nu),
            Recipe::Product(vec![
                mixer_z(nu).power(-1.0 / delta),
                uni(UnivariateSpec::MittagLeffler { delta }),
            ]),
        )
    }

    /// M_{δδ',ν} ≐ S(δ,1) ∘ M_{δ',ν}^{1/δ}.
    pub fn eq24(delta: f64, delta_prime: f64, nu: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq24",
            "eq. (24)",
            format!("delta={delta}, delta'={delta_prime}, nu={nu}"),
            gen_ml(delta * delta_prime, nu),
            Recipe::Product(vec![
                one_sided(delta),
                gen_ml(delta_prime, nu).power(1.0 / delta),
            ]),
        )
    }

    /// L_α ≐ W₁^{1/α} ∘ S(α,0) ≐ (2 M_{α/2})^{1/2} ∘ X; the two product forms
    /// are tested against each other.
    pub fn eq27(alpha: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq27",
            "eq. (27)",
            format!("alpha={alpha}"),
            Recipe::Product(vec![exponential().power(1.0 / alpha), sym_stable(alpha)]),
            Recipe::Product(vec![
                gen_ml(alpha / 2.0, 1.0).scale(2.0).power(0.5),
                normal(),
            ]),
        )
    }

    /// L_{α,ν} ≐ S(α,0) ∘ G_{ν,1}^{1/α}.
    pub fn eq32(alpha: f64, nu: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq32",
            "eq. (32)",
            format!("alpha={alpha}, nu={nu}"),
            Recipe::MultiRouted(gen_linnik_1d(alpha, nu), Route::NormalMixture),
            Recipe::Product(vec![sym_stable(alpha), gamma_r(nu).power(1.0 / alpha)]),
        )
    }

    /// L_{α,ν} ≐ X ∘ (2 M_{α/2,ν})^{1/2}.
    pub fn eq33(alpha: f64, nu: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq33",
            "eq. (33)",
            format!("alpha={alpha}, nu={nu}"),
            Recipe::MultiRouted(gen_linnik_1d(alpha, nu), Route::Stable),
            Recipe::Product(vec![
                normal(),
                gen_ml(alpha / 2.0, nu).scale(2.0).power(0.5),
            ]),
        )
    }

    /// Ḡ_{ν,αα',1} ≐ Ḡ_{ν,α',1}^{1/α}.
    pub fn eq34(alpha: f64, alpha_prime: f64, nu: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq34",
            "eq. (34)",
            format!("alpha={alpha}, alpha'={alpha_prime}, nu={nu}"),
            uni(UnivariateSpec::GeneralizedGamma {
                shape: nu,
                power: alpha * alpha_prime,
                rate: 1.0,
            }),
            uni(UnivariateSpec::GeneralizedGamma {
                shape: nu,
                power: alpha_prime,
                rate: 1.0,
            })
            .power(1.0 / alpha),
        )
    }

    /// L_{αα',ν} ≐ S(α,0) ∘ M_{α',ν}^{1/α}.
    pub fn eq35(alpha: f64, alpha_prime: f64, nu: f64) -> Result<IdentityCase> {
        require_open_unit("eq35", "alpha'", alpha_prime)?;
        IdentityCase::new(
            "eq35",
            "eq. (35)",
            format!("alpha={alpha}, alpha'={alpha_prime}, nu={nu}"),
            Recipe::Multi(gen_linnik_1d(alpha * alpha_prime, nu)),
            Recipe::Product(vec![
                sym_stable(alpha),
                gen_ml(alpha_prime, nu).power(1.0 / alpha),
            ]),
        )
    }

    /// L_{α,ν} ≐ L_α ∘ Z_{ν,1}^{−1/α} (ν in (0,1]).
    pub fn eq36(alpha: f64, nu: f64) -> Result<IdentityCase> {
        require_mixer_shape("eq36", nu)?;
        IdentityCase::new(
            "eq36",
            "eq. (36)",
            format!("alpha={alpha}, nu={nu}"),
            Recipe::Multi(gen_linnik_1d(alpha, nu)),
            Recipe::Product(vec![
                Recipe::Multi(MultivariateSpec::MvLinnik {
                    alpha,
                    sigma: SpdMatrix::identity(1),
                }),
                mixer_z(nu).power(-1.0 / alpha),
            ]),
        )
    }

    /// L_{α,ν} ≐ Λ ∘ Z_{ν,1}^{−1/α} ∘ R_{α/2}^{1/2} (ν in (0,1]).
    pub fn eq37(alpha: f64, nu: f64) -> Result<IdentityCase> {
        require_mixer_shape("eq37", nu)?;
        IdentityCase::new(
            "eq37",
            "eq. (37)",
            format!("alpha={alpha}, nu={nu}"),
            Recipe::Multi(gen_linnik_1d(alpha, nu)),
            Recipe::Product(vec![
                Recipe::Multi(MultivariateSpec::MvLaplace {
                    sigma: SpdMatrix::identity(1),
                }),
                mixer_z(nu).power(-1.0 / alpha),
                uni(UnivariateSpec::StableRatio { delta: alpha / 2.0 }).power(0.5),
            ]),
        )
    }

    /// L_{αα',Σ,ν} ≐ M_{α',ν}^{1/α} ∘ S(α,Σ,0).
    pub fn eq41(alpha: f64, alpha_prime: f64, nu: f64, sigma: SpdMatrix) -> Result<IdentityCase> {
        require_open_unit("eq41", "alpha'", alpha_prime)?;
        IdentityCase::new(
            "eq41",
            "Theorem 2, eq. (41)",
            format!("alpha={alpha}, alpha'={alpha_prime}, nu={nu}, dim={}", sigma.dim()),
            Recipe::Multi(MultivariateSpec::MvGenLinnik {
                alpha: alpha * alpha_prime,
                sigma: sigma.clone(),
                nu,
            }),
            Recipe::Product(vec![
                gen_ml(alpha_prime, nu).power(1.0 / alpha),
                Recipe::Multi(MultivariateSpec::EcStable { alpha, sigma }),
            ]),
        )
    }

    /// L_{α,Σ,ν} ≐ Z_{ν,1}^{−1/α} ∘ L_{α,Σ} (ν in (0,1]).
    pub fn eq42(alpha: f64, nu: f64, sigma: SpdMatrix) -> Result<IdentityCase> {
        require_mixer_shape("eq42", nu)?;
        IdentityCase::new(
            "eq42",
            "Theorem 3, eq. (42)",
            format!("alpha={alpha}, nu={nu}, dim={}", sigma.dim()),
            Recipe::Multi(MultivariateSpec::MvGenLinnik {
                alpha,
                sigma: sigma.clone(),
                nu,
            }),
            Recipe::Product(vec![
                mixer_z(nu).power(-1.0 / alpha),
                Recipe::Multi(MultivariateSpec::MvLinnik { alpha, sigma }),
            ]),
        )
    }

    /// W_δ ≐ W₁ ∘ S^{−1}(δ,1).
    pub fn eq43(delta: f64) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq43",
            "eq. (43)",
            format!("delta={delta}"),
            uni(UnivariateSpec::Weibull { shape: delta }),
            Recipe::Product(vec![exponential(), one_sided(delta).power(-1.0)]),
        )
    }

    /// L_{α,Σ} ≐ R_{α/2}^{1/2} ∘ Λ_Σ.
    pub fn eq44(alpha: f64, sigma: SpdMatrix) -> Result<IdentityCase> {
        IdentityCase::new(
            "eq44",
            "eq. (44)",
            format!("alpha={alpha}, dim={}", sigma.dim()),
            Recipe::Multi(MultivariateSpec::MvLinnik {
                alpha,
                sigma: sigma.clone(),
            }),
            Recipe::Product(vec![
                uni(UnivariateSpec::StableRatio { delta: alpha / 2.0 }).power(0.5),
                Recipe::Multi(MultivariateSpec::MvLaplace { sigma }),
            ]),
        )
    }

    /// Theorem 1: Y_{αα',Σ,0} ≐ Y_{α',1}^{1/α} ∘ S(α,Σ,0) for a mixer U.
    pub fn thm1(alpha: f64, alpha_prime: f64, mixer: MixerSpec, sigma: SpdMatrix) -> Result<IdentityCase> {
        let mixer_recipe = mixer_recipe("thm1", &mixer)?;
        IdentityCase::new(
            "thm1",
            "Theorem 1",
            format!(
                "alpha={alpha}, alpha'={alpha_prime}, U={}, dim={}",
                mixer.label(),
                sigma.dim()
            ),
            Recipe::Multi(MultivariateSpec::ScaleMixedStable {
                alpha: alpha * alpha_prime,
                sigma: sigma.clone(),
                mixer,
            }),
            Recipe::Product(vec![
                // Y_{α',1} = U^{1/α'} ∘ S(α',1)
                Recipe::Product(vec![
                    mixer_recipe.power(1.0 / alpha_prime),
                    one_sided(alpha_prime),
                ])
                .power(1.0 / alpha),
                Recipe::Multi(MultivariateSpec::EcStable { alpha, sigma }),
            ]),
        )
    }

    /// Corollary 1: Y_{α,Σ,0} ≐ (2 Y_{α/2,1})^{1/2} ∘ X.
    pub fn cor1(alpha: f64, mixer: MixerSpec, sigma: SpdMatrix) -> Result<IdentityCase> {
        let mixer_recipe = mixer_recipe("cor1", &mixer)?;
        IdentityCase::new(
            "cor1",
            "Corollary 1",
            format!("alpha={alpha}, U={}, dim={}", mixer.label(), sigma.dim()),
            Recipe::Multi(MultivariateSpec::ScaleMixedStable {
                alpha,
                sigma: sigma.clone(),
                mixer,
            }),
            Recipe::Product(vec![
                Recipe::Product(vec![
                    mixer_recipe.power(2.0 / alpha),
                    one_sided(alpha / 2.0),
                ])
                .scale(2.0)
                .power(0.5),
                Recipe::Multi(MultivariateSpec::MvNormal { sigma }),
            ]),
        )
    }

    /// Corollary 2: L_{α,Σ,ν} ≐ Z_{ν,1}^{−1/α} ∘ R_{α/2}^{1/2} ∘ Λ_Σ.
    pub fn cor2(alpha: f64, nu: f64, sigma: SpdMatrix) -> Result<IdentityCase> {
        require_mixer_shape("cor2", nu)?;
        IdentityCase::new(
            "cor2",
            "Corollary 2",
            format!("alpha={alpha}, nu={nu}, dim={}", sigma.dim()),
            Recipe::Multi(MultivariateSpec::MvGenLinnik {
                alpha,
                sigma: sigma.clone(),
                nu,
            }),
            Recipe::Product(vec![
                mixer_z(nu).power(-1.0 / alpha),
                uni(UnivariateSpec::StableRatio { delta: alpha / 2.0 }).power(0.5),
                Recipe::Multi(MultivariateSpec::MvLaplace { sigma }),
            ]),
        )
    }

    /// Corollary 3: L_{α,Σ,ν} ≐ Z_{ν,1}^{−1/α} ∘ (2 M_{α/2})^{1/2} ∘ X.
    pub fn cor3(alpha: f64, nu: f64, sigma: SpdMatrix) -> Result<IdentityCase> {
        require_mixer_shape("cor3", nu)?;
        IdentityCase::new(
            "cor3",
            "Corollary 3",
            format!("alpha={alpha}, nu={nu}, dim={}", sigma.dim()),
            Recipe::Multi(MultivariateSpec::MvGenLinnik {
                alpha,
                sigma: sigma.clone(),
                nu,
            }),
            Recipe::Product(vec![
                mixer_z(nu).power(-1.0 / alpha),
                gen_ml(alpha / 2.0, 1.0).scale(2.0).power(0.5),
                Recipe::Multi(MultivariateSpec::MvNormal { sigma }),
            ]),
        )
    }

    /// Express a mixer as a scalar recipe (for the Theorem 1 family where
    /// U appears inside products).
    fn mixer_recipe(id: &str, mixer: &MixerSpec) -> Result<Recipe> {
        Ok(match mixer {
            MixerSpec::Base { spec } => uni(spec.clone()),
            MixerSpec::GammaScaleMixture { v, nu } => {
                Recipe::Product(vec![uni(v.clone()), gamma_r(*nu)])
            }
            MixerSpec::Scaled { factor, base } => mixer_recipe(id, base)?.scale(*factor),
            MixerSpec::Constant { .. } => {
                return Err(Error::InvalidConfig(format!(
                    "{id}: a constant mixer makes the identity trivial"
                )))
            }
        })
    }
}

/// Default covariance matrices used by the shipped registry.
pub fn sigma_2d() -> SpdMatrix {
    make_spd(&[vec![4.0, 2.0], vec![2.0, 3.0]]).expect("static matrix is SPD")
}

pub fn sigma_3d() -> SpdMatrix {
    make_spd(&[
        vec![2.0, 0.5, 0.3],
        vec![0.5, 1.5, 0.2],
        vec![0.3, 0.2, 1.0],
    ])
    .expect("static matrix is SPD")
}

/// The full identity registry at its shipped parameterization.
pub fn registry() -> Vec<IdentityCase> {
    use cases::*;
    vec![
        eq2(2.0, 0.5).unwrap(),
        eq4(0.5, 1.0).unwrap(),
        eq9(0.5, 0.5).unwrap(),
        eq10(1.3).unwrap(),
        eq11(1.6, 0.5, sigma_2d()).unwrap(),
        eq22(0.7, 1.5).unwrap(),
        eq23(0.7, 0.6).unwrap(),
        eq24(0.8, 0.6, 2.0).unwrap(),
        eq27(1.4).unwrap(),
        eq32(1.5, 2.5).unwrap(),
        eq33(1.5, 2.5).unwrap(),
        eq34(2.0, 0.9, 1.7).unwrap(),
        eq35(1.6, 0.5, 2.0).unwrap(),
        eq36(1.3, 0.5).unwrap(),
        eq37(1.2, 0.8).unwrap(),
        eq41(1.6, 0.5, 2.0, sigma_2d()).unwrap(),
        eq42(1.2, 0.6, sigma_2d()).unwrap(),
        eq43(0.6).unwrap(),
        eq44(1.3, sigma_2d()).unwrap(),
        thm1(1.5, 0.6, MixerSpec::exponential(), sigma_2d()).unwrap(),
        cor1(1.4, MixerSpec::gamma(2.0), sigma_2d()).unwrap(),
        cor2(1.4, 0.7, sigma_2d()).unwrap(),
        cor3(1.1, 0.5, sigma_3d()).unwrap(),
    ]
}

pub fn find_case(id: &str) -> Result<IdentityCase> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.into()))
}

/// Filter language: `*` or empty matches all, a trailing `*` matches by
/// prefix, commas separate alternatives, anything else matches exactly.
pub fn matches_filter(id: &str, pattern: &str) -> bool {
    if pattern.is_empty() || pattern == "*" {
        return true;
    }
    pattern.split(',').any(|p| {
        let p = p.trim();
        if let Some(prefix) = p.strip_suffix('*') {
            id.starts_with(prefix)
        } else {
            id == p
        }
    })
}

/// Test method selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Ks,
    Energy,
    Both,
}

/// Sizes and knobs for identity runs.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub n_univariate: usize,
    pub n_multivariate: usize,
    pub level: f64,
    pub permutations: usize,
    pub energy_cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            n_univariate: 100_000,
            n_multivariate: 20_000,
            level: crate::verify::DEFAULT_LEVEL,
            permutations: 500,
            energy_cap: 4000,
        }
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x1_0000_0000_01b3);
    }
    h
}

/// Sample both sides of a case on disjoint substreams and test equality.
pub fn run_identity(
    case: &IdentityCase,
    n: usize,
    seed: u64,
    method: Method,
    opts: &RunOptions,
) -> Result<Vec<TestReport>> {
    let base = RngStream::new(seed, fnv1a(&case.id));
    let lhs = case.lhs.sample(n, &mut base.substream(1))?;
    let rhs = case.rhs.sample(n, &mut base.substream(2))?;
    let mut reports = Vec::new();
    let want_ks = matches!(method, Method::Ks | Method::Both);
    let want_energy = matches!(method, Method::Energy | Method::Both);
    if want_ks {
        if case.dim != 1 {
            return Err(Error::InvalidConfig(format!(
                "identity {} has dimension {}; the KS method needs univariate recipes",
                case.id, case.dim
            )));
        }
        let mut r = ks_two_sample(&lhs, &rhs)?;
        r.level = opts.level;
        r.reject = r.p_value <= r.level;
        reports.push(r);
    }
    if want_energy {
        let energy_opts = EnergyOptions {
            permutations: opts.permutations,
            cap_per_side: opts.energy_cap,
            level: opts.level,
        };
        reports.push(energy_test(&lhs, &rhs, &energy_opts, base.substream(3))?);
    }
    for r in &mut reports {
        r.id = case.id.clone();
        r.citation = case.citation.clone();
        r.params = case.params.clone();
        r.seed = seed;
    }
    Ok(reports)
}

/// Aggregate outcome of a registry sweep with Holm-corrected verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct RegistryReport {
    pub seed: u64,
    pub level: f64,
    pub reports: Vec<TestReport>,
    pub all_pass: bool,
}

impl RegistryReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("registry report serializes")
    }
}

/// Run all registry cases matching `filter`: KS for univariate cases, energy
/// for multivariate ones, Holm correction across the run.
pub fn run_registry(filter: &str, seed: u64, opts: &RunOptions) -> Result<RegistryReport> {
    let selected: Vec<IdentityCase> = registry()
        .into_iter()
        .filter(|c| matches_filter(&c.id, filter))
        .collect();
    if selected.is_empty() {
        return Err(Error::UnknownIdentity(format!(
            "filter '{filter}' matches no registered identity"
        )));
    }
    let mut reports = Vec::with_capacity(selected.len());
    for case in &selected {
        let (n, method) = if case.dim == 1 {
            (opts.n_univariate, Method::Ks)
        } else {
            (opts.n_multivariate, Method::Energy)
        };
        reports.extend(run_identity(case, n, seed, method, opts)?);
    }
    let adjusted = holm_adjust(&reports.iter().map(|r| r.p_value).collect::<Vec<_>>());
    for (r, adj) in reports.iter_mut().zip(adjusted) {
        r.adjusted_p = Some(adj);
        r.reject = adj <= opts.level;
    }
    let all_pass = reports.iter().all(|r| !r.reject);
    Ok(RegistryReport {
        seed,
        level: opts.level,
        reports,
        all_pass,
    })
}
