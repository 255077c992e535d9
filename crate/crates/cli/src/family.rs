//! Build distribution specs from flag values.

use mixstable::{
    DistributionSpec, Error, MixerSpec, MultivariateSpec, Result, Route, SpdMatrix,
    UnivariateSpec,
};

/// Raw family parameters gathered from flags (or the config file).
#[derive(Debug, Clone, Default)]
pub struct FamilyParams {
    pub alpha: Option<f64>,
    pub nu: Option<f64>,
    pub delta: Option<f64>,
    pub shape: Option<f64>,
    pub rate: Option<f64>,
    pub power: Option<f64>,
    pub scale: Option<f64>,
    pub p: Option<f64>,
    pub sigma: Option<SpdMatrix>,
    pub mixer: Option<String>,
    pub route: Option<Route>,
}

fn need(value: Option<f64>, family: &str, flag: &str) -> Result<f64> {
    value.ok_or_else(|| {
        Error::InvalidConfig(format!("family '{family}' requires --{flag}"))
    })
}

impl FamilyParams {
    fn sigma_or_scalar_identity(&self) -> SpdMatrix {
        self.sigma.clone().unwrap_or_else(|| SpdMatrix::identity(1))
    }

    fn mixer_spec(&self, family: &str) -> Result<MixerSpec> {
        let text = self.mixer.as_deref().ok_or_else(|| {
            Error::InvalidConfig(format!("family '{family}' requires --mixer"))
        })?;
        parse_mixer(text)
    }

    /// Resolve a family name into a full spec.
    pub fn build(&self, family: &str) -> Result<DistributionSpec> {
        let spec: DistributionSpec = match family {
            "normal" => UnivariateSpec::Normal.into(),
            "exponential" => UnivariateSpec::Exponential.into(),
            "gamma" => UnivariateSpec::Gamma {
                shape: need(self.shape, family, "shape")?,
                rate: self.rate.unwrap_or(1.0),
            }
            .into(),
            "gen-gamma" => UnivariateSpec::GeneralizedGamma {
                shape: need(self.shape, family, "shape")?,
                power: need(self.power, family, "power")?,
                rate: self.rate.unwrap_or(1.0),
            }
            .into(),
            "weibull" => UnivariateSpec::Weibull {
                shape: need(self.shape, family, "shape")?,
            }
            .into(),
            "one-sided-stable" => UnivariateSpec::OneSidedStable {
                alpha: need(self.alpha, family, "alpha")?,
            }
            .into(),
            "symmetric-stable" => UnivariateSpec::SymmetricStable {
                alpha: need(self.alpha, family, "alpha")?,
            }
            .into(),
            "mittag-leffler" => UnivariateSpec::MittagLeffler {
                delta: need(self.delta, family, "delta")?,
            }
            .into(),
            "gen-mittag-leffler" => UnivariateSpec::GenMittagLeffler {
                delta: need(self.delta, family, "delta")?,
                nu: need(self.nu, family, "nu")?,
            }
            .into(),
            "mixed-exp-mixer" => UnivariateSpec::MixedExpMixer {
                shape: need(self.shape, family, "shape")?,
                scale: self.scale.unwrap_or(1.0),
            }
            .into(),
            "stable-ratio" => UnivariateSpec::StableRatio {
                delta: need(self.delta, family, "delta")?,
            }
            .into(),
            "snedecor-fisher" => UnivariateSpec::SnedecorFisher {
                shape: need(self.shape, family, "shape")?,
            }
            .into(),
            "geometric" => UnivariateSpec::Geometric {
                p: need(self.p, family, "p")?,
            }
            .into(),
            "neg-binomial" => UnivariateSpec::NegativeBinomial {
                nu: need(self.nu, family, "nu")?,
                p: need(self.p, family, "p")?,
            }
            .into(),
            "mv-normal" => MultivariateSpec::MvNormal {
                sigma: self.sigma_or_scalar_identity(),
            }
            .into(),
            "ec-stable" => MultivariateSpec::EcStable {
                alpha: need(self.alpha, family, "alpha")?,
                sigma: self.sigma_or_scalar_identity(),
            }
            .into(),
            "scale-mixed-stable" => MultivariateSpec::ScaleMixedStable {
                alpha: need(self.alpha, family, "alpha")?,
                sigma: self.sigma_or_scalar_identity(),
                mixer: self.mixer_spec(family)?,
            }
            .into(),
            "mv-laplace" => MultivariateSpec::MvLaplace {
                sigma: self.sigma_or_scalar_identity(),
            }
            .into(),
            "mv-linnik" | "linnik" => MultivariateSpec::MvLinnik {
                alpha: need(self.alpha, family, "alpha")?,
                sigma: self.sigma_or_scalar_identity(),
            }
            .into(),
            "gen-linnik" | "mv-gen-linnik" => MultivariateSpec::MvGenLinnik {
                alpha: need(self.alpha, family, "alpha")?,
                sigma: self.sigma_or_scalar_identity(),
                nu: need(self.nu, family, "nu")?,
            }
            .into(),
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown family '{other}' (see README for the family list)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Mixer grammar: `const:<c>`, `exponential`, `gamma:<nu>`,
/// `one-sided-stable:<alpha>`, `ml:<delta>`, `gen-ml:<delta>,<nu>`,
/// `weibull:<gamma>`, `scaled:<factor>:<inner>`, `gamma-mix:<nu>:<inner-v>`.
pub fn parse_mixer(text: &str) -> Result<MixerSpec> {
    let bad = |msg: &str| Error::InvalidConfig(format!("--mixer '{text}': {msg}"));
    let (head, rest) = match text.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (text, None),
    };
    let one = |rest: Option<&str>| -> Result<f64> {
        rest.ok_or_else(|| bad("missing parameter"))?
            .parse::<f64>()
            .map_err(|_| bad("parameter must be a number"))
    };
    let mixer = match head {
        "exponential" | "exp" => MixerSpec::exponential(),
        "const" | "constant" => MixerSpec::constant(one(rest)?),
        "gamma" => MixerSpec::gamma(one(rest)?),
        "one-sided-stable" => MixerSpec::base(UnivariateSpec::OneSidedStable { alpha: one(rest)? }),
        "weibull" => MixerSpec::base(UnivariateSpec::Weibull { shape: one(rest)? }),
        "ml" => MixerSpec::base(UnivariateSpec::MittagLeffler { delta: one(rest)? }),
        "gen-ml" => {
            let body = rest.ok_or_else(|| bad("expected gen-ml:<delta>,<nu>"))?;
            let (d, n) = body
                .split_once(',')
                .ok_or_else(|| bad("expected gen-ml:<delta>,<nu>"))?;
            MixerSpec::base(UnivariateSpec::GenMittagLeffler {
                delta: d.trim().parse().map_err(|_| bad("bad delta"))?,
                nu: n.trim().parse().map_err(|_| bad("bad nu"))?,
            })
        }
        "scaled" => {
            let body = rest.ok_or_else(|| bad("expected scaled:<factor>:<inner>"))?;
            let (f, inner) = body
                .split_once(':')
                .ok_or_else(|| bad("expected scaled:<factor>:<inner>"))?;
            MixerSpec::scaled(
                f.parse().map_err(|_| bad("bad factor"))?,
                parse_mixer(inner)?,
            )
        }
        "gamma-mix" => {
            let body = rest.ok_or_else(|| bad("expected gamma-mix:<nu>:<inner-v>"))?;
            let (nu, inner) = body
                .split_once(':')
                .ok_or_else(|| bad("expected gamma-mix:<nu>:<inner-v>"))?;
            let v = match parse_mixer(inner)? {
                MixerSpec::Base { spec } => spec,
                _ => return Err(bad("the V law of a gamma mixture must be a base family")),
            };
            MixerSpec::GammaScaleMixture {
                v,
                nu: nu.parse().map_err(|_| bad("bad nu"))?,
            }
        }
        _ => return Err(bad("unknown mixer")),
    };
    mixer.validate()?;
    Ok(mixer)
}

/// Read a covariance matrix from a CSV file of rows.
pub fn sigma_from_csv(path: &std::path::Path) -> Result<SpdMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read --sigma {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|c| c.trim().parse::<f64>()).collect();
        rows.push(row.map_err(|e| {
            Error::InvalidConfig(format!("--sigma {}:{}: {e}", path.display(), ln + 1))
        })?);
    }
    mixstable::make_spd(&rows)
}

pub fn sigma_from_diag(text: &str) -> Result<SpdMatrix> {
    let diag: std::result::Result<Vec<f64>, _> =
        text.split(',').map(|c| c.trim().parse::<f64>()).collect();
    let diag = diag.map_err(|e| Error::InvalidConfig(format!("--sigma-diag: {e}")))?;
    SpdMatrix::diagonal(&diag)
}
