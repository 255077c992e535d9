//! Composable generative expressions over the samplers: products of
//! independent draws, powers, and scalar multiples. Each identity case in the
//! registry asserts that two such expressions produce the same law.

use serde::{Deserialize, Serialize};

use crate::batch::{BatchMeta, SampleBatch};
use crate::error::{Error, Result};
use crate::multivariate::{MultivariateSpec, MvSampler, Route};
use crate::rng::RngStream;
use crate::spec::DistributionSpec;
use crate::univariate::{UniSampler, UnivariateSpec};

/// A generative expression. All factors of a product are drawn independently
/// from one stream, scalars first in listed order, then the vector factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Recipe {
    Uni(UnivariateSpec),
    Multi(MultivariateSpec),
    /// Multivariate family sampled through an explicit route.
    MultiRouted(MultivariateSpec, Route),
    /// Scalar recipe raised to a real power.
    Power(Box<Recipe>, f64),
    /// Constant multiple.
    Scale(f64, Box<Recipe>),
    /// Product of independent draws; at most one factor may be non-scalar.
    Product(Vec<Recipe>),
}

impl Recipe {
    pub fn power(self, p: f64) -> Recipe {
        Recipe::Power(Box::new(self), p)
    }

    pub fn scale(self, c: f64) -> Recipe {
        Recipe::Scale(c, Box::new(self))
    }

    pub fn dim(&self) -> usize {
        match self {
            Recipe::Uni(_) => 1,
            Recipe::Multi(m) | Recipe::MultiRouted(m, _) => m.dim(),
            Recipe::Power(inner, _) | Recipe::Scale(_, inner) => inner.dim(),
            Recipe::Product(factors) => factors.iter().map(|f| f.dim()).max().unwrap_or(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Recipe::Uni(u) => u.validate(),
            Recipe::Multi(m) | Recipe::MultiRouted(m, _) => m.validate(),
            Recipe::Power(inner, p) => {
                if !p.is_finite() || *p == 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "power exponent must be finite and nonzero, got {p}"
                    )));
                }
                if inner.dim() != 1 {
                    return Err(Error::InvalidConfig(
                        "powers apply to scalar recipes only".into(),
                    ));
                }
                inner.validate()
            }
            Recipe::Scale(c, inner) => {
                if !c.is_finite() || *c == 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "scale factor must be finite and nonzero, got {c}"
                    )));
                }
                inner.validate()
            }
            Recipe::Product(factors) => {
                if factors.is_empty() {
                    return Err(Error::InvalidConfig("empty product recipe".into()));
                }
                let vector_factors = factors.iter().filter(|f| f.dim() > 1).count();
                if vector_factors > 1 {
                    return Err(Error::InvalidConfig(
                        "a product recipe admits at most one vector factor".into(),
                    ));
                }
                factors.iter().try_for_each(|f| f.validate())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Recipe::Uni(u) => u.label(),
            Recipe::Multi(m) => m.label(),
            Recipe::MultiRouted(m, r) => format!("{}[{:?}]", m.label(), r),
            Recipe::Power(inner, p) => format!("({})^{p}", inner.label()),
            Recipe::Scale(c, inner) => format!("{c}*({})", inner.label()),
            Recipe::Product(fs) => fs
                .iter()
                .map(|f| f.label())
                .collect::<Vec<_>>()
                .join(" o "),
        }
    }

    pub fn prepare(&self) -> Result<PreparedRecipe> {
        self.validate()?;
        Ok(PreparedRecipe {
            dim: self.dim(),
            node: Node::build(self)?,
            label: self.label(),
        })
    }

    pub fn sample(&self, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
        self.prepare()?.sample(n, rng)
    }
}

impl From<UnivariateSpec> for Recipe {
    fn from(u: UnivariateSpec) -> Self {
        Recipe::Uni(u)
    }
}

impl From<MultivariateSpec> for Recipe {
    fn from(m: MultivariateSpec) -> Self {
        Recipe::Multi(m)
    }
}

impl From<DistributionSpec> for Recipe {
    fn from(s: DistributionSpec) -> Self {
        match s {
            DistributionSpec::Univariate(u) => Recipe::Uni(u),
            DistributionSpec::Multivariate(m) => Recipe::Multi(m),
        }
    }
}

enum Node {
    Uni(UniSampler),
    Mv(MvSampler),
    Power(Box<Node>, f64),
    Scale(f64, Box<Node>),
    Product(Vec<Node>, Option<(usize, usize)>), // (index, dim) of the vector factor
}

impl Node {
    fn build(recipe: &Recipe) -> Result<Node> {
        Ok(match recipe {
            Recipe::Uni(u) => Node::Uni(u.sampler()?),
            Recipe::Multi(m) => Node::Mv(m.sampler(None)?),
            Recipe::MultiRouted(m, r) => Node::Mv(m.sampler(Some(*r))?),
            Recipe::Power(inner, p) => Node::Power(Box::new(Node::build(inner)?), *p),
            Recipe::Scale(c, inner) => Node::Scale(*c, Box::new(Node::build(inner)?)),
            Recipe::Product(factors) => {
                let vector = factors
                    .iter()
                    .enumerate()
                    .find(|(_, f)| f.dim() > 1)
                    .map(|(i, f)| (i, f.dim()));
                Node::Product(factors.iter().map(Node::build).collect::<Result<_>>()?, vector)
            }
        })
    }

    /// (ln |value|, sign) of a scalar node. Sign handling keeps the symmetric
    /// stable factor exact while products of positives run in log space.
    fn draw_ln(&self, rng: &mut RngStream) -> (f64, f64) {
        match self {
            Node::Uni(s) => {
                let v = s.draw(rng);
                (v.abs().ln(), v.signum())
            }
            Node::Mv(s) => {
                // dim-1 multivariate used as a scalar factor
                let mut zb = [0.0];
                let mut rb = [0.0];
                if !s.draw_row(rng, &mut zb, &mut rb) {
                    return (f64::NAN, 1.0);
                }
                (rb[0].abs().ln(), rb[0].signum())
            }
            Node::Power(inner, p) => {
                let (ln, sign) = inner.draw_ln(rng);
                if sign < 0.0 {
                    // negative base under a real exponent only survives
                    // integer powers
                    if p.fract() == 0.0 {
                        let s = if (*p as i64) % 2 == 0 { 1.0 } else { -1.0 };
                        (p * ln, s)
                    } else {
                        (f64::NAN, 1.0)
                    }
                } else {
                    (p * ln, sign)
                }
            }
            Node::Scale(c, inner) => {
                let (ln, sign) = inner.draw_ln(rng);
                (ln + c.abs().ln(), sign * c.signum())
            }
            Node::Product(factors, _) => {
                let mut ln = 0.0;
                let mut sign = 1.0;
                for f in factors {
                    let (l, s) = f.draw_ln(rng);
                    ln += l;
                    sign *= s;
                }
                (ln, sign)
            }
        }
    }

    /// Draw one row of the full recipe into `out`. Returns false to reject.
    fn draw_row(&self, rng: &mut RngStream, dim: usize, z: &mut Vec<f64>, out: &mut [f64]) -> bool {
        match self {
            Node::Mv(s) if dim > 1 => {
                z.resize(dim, 0.0);
                s.draw_row(rng, z, out)
            }
            Node::Scale(c, inner) if dim > 1 => {
                if !inner.draw_row(rng, dim, z, out) {
                    return false;
                }
                for v in out.iter_mut() {
                    *v *= c;
                }
                true
            }
            Node::Product(factors, Some((vec_idx, _))) if dim > 1 => {
                let mut ln = 0.0;
                let mut sign = 1.0;
                for (i, f) in factors.iter().enumerate() {
                    if i == *vec_idx {
                        if !f.draw_row(rng, dim, z, out) {
                            return false;
                        }
                    } else {
                        let (l, s) = f.draw_ln(rng);
                        ln += l;
                        sign *= s;
                    }
                }
                let scale = sign * ln.exp();
                let mut ok = true;
                for v in out.iter_mut() {
                    *v *= scale;
                    ok &= v.is_finite();
                }
                ok
            }
            _ => {
                let (ln, sign) = self.draw_ln(rng);
                out[0] = sign * ln.exp();
                out[0].is_finite()
            }
        }
    }
}

/// A validated recipe ready to sample.
pub struct PreparedRecipe {
    dim: usize,
    node: Node,
    label: String,
}

impl PreparedRecipe {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample(&self, n: usize, rng: &mut RngStream) -> Result<SampleBatch> {
        if n == 0 {
            return Err(Error::EmptyBatch);
        }
        let d = self.dim;
        let mut values = vec![0.0; n * d];
        let mut z = Vec::with_capacity(d);
        let mut rejected = 0u64;
        let mut i = 0;
        while i < n {
            let ok = self
                .node
                .draw_row(rng, d, &mut z, &mut values[i * d..(i + 1) * d]);
            if ok {
                i += 1;
            } else {
                rejected += 1;
                if rejected > 1_000_000 {
                    return Err(Error::Accuracy {
                        context: format!("sampling recipe {}", self.label),
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
