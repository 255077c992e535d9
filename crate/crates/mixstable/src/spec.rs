//! Unified tagged parameterization over univariate and multivariate families.

use serde::{Deserialize, Serialize};

use crate::batch::SampleBatch;
use crate::error::Result;
use crate::multivariate::{MultivariateSpec, Route};
use crate::rng::RngStream;
use crate::univariate::UnivariateSpec;

/// Any law this crate can sample: a univariate family or an r-variate family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistributionSpec {
    Univariate(UnivariateSpec),
    Multivariate(MultivariateSpec),
}

impl DistributionSpec {
    pub fn dim(&self) -> usize {
        match self {
            DistributionSpec::Univariate(_) => 1,
            DistributionSpec::Multivariate(m) => m.dim(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            DistributionSpec::Univariate(u) => u.label(),
            DistributionSpec::Multivariate(m) => m.label(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DistributionSpec::Univariate(u) => u.validate(),
            DistributionSpec::Multivariate(m) => m.validate(),
        }
    }

    pub fn sample(&self, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
        match self {
            DistributionSpec::Univariate(u) => u.sample(n, rng),
            DistributionSpec::Multivariate(m) => m.sample(n, rng),
        }
    }

    pub fn sample_routed(
        &self,
        route: Option<Route>,
        n: usize,
        rng: &mut RngStream,
    ) -> Result<SampleBatch> {
        match self {
            DistributionSpec::Univariate(u) => u.sample(n, rng),
            DistributionSpec::Multivariate(m) => m.sample_routed(route, n, rng),
        }
    }
}

impl From<UnivariateSpec> for DistributionSpec {
    fn from(u: UnivariateSpec) -> Self {
        DistributionSpec::Univariate(u)
    }
}

impl From<MultivariateSpec> for DistributionSpec {
    fn from(m: MultivariateSpec) -> Self {
        DistributionSpec::Multivariate(m)
    }
}
