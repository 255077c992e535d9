//! Sample batches: `n x d` matrices of draws with provenance metadata.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Provenance recorded with every batch.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BatchMeta {
    /// Master seed of the stream that produced the batch.
    pub seed: u64,
    /// Stream id of the stream that produced the batch.
    pub stream_id: u64,
    /// Human-readable label of the generating law.
    pub label: String,
    /// Number of rows rejected and redrawn because a product overflowed.
    pub rejected: u64,
}

/// An `n x d` matrix of draws stored row-major (`d = 1` for univariate laws).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    dim: usize,
    values: Vec<f64>,
    pub meta: BatchMeta,
}

impl SampleBatch {
    pub fn new(dim: usize, values: Vec<f64>, meta: BatchMeta) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("dim must be >= 1".into()));
        }
        if values.is_empty() {
            return Err(Error::EmptyBatch);
        }
        if !values.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch(format!(
                "{} values do not tile into rows of dimension {}",
                values.len(),
                dim
            )));
        }
        Ok(SampleBatch { dim, values, meta })
    }

    /// Univariate batch from a plain vector of draws.
    pub fn univariate(values: Vec<f64>, meta: BatchMeta) -> Result<Self> {
        SampleBatch::new(1, values, meta)
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// The draws of a univariate batch.
    pub fn scalars(&self) -> Result<&[f64]> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected a univariate batch, got dimension {}",
                self.dim
            )));
        }
        Ok(&self.values)
    }

    /// Project every row onto the direction `t` (returns `t . x_i`).
    pub fn project(&self, t: &[f64]) -> Result<Vec<f64>> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "projection direction has length {}, batch dimension is {}",
                t.len(),
                self.dim
            )));
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(t).map(|(x, w)| x * w).sum())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_ragged() {
        assert!(matches!(
            SampleBatch::new(2, vec![], BatchMeta::default()),
            Err(Error::EmptyBatch)
        ));
        assert!(SampleBatch::new(2, vec![1.0, 2.0, 3.0], BatchMeta::default()).is_err());
    }

    #[test]
    fn projects_rows() {
        let b = SampleBatch::new(2, vec![1.0, 2.0, 3.0, 4.0], BatchMeta::default()).unwrap();
        assert_eq!(b.project(&[1.0, 1.0]).unwrap(), vec![3.0, 7.0]);
        assert_eq!(b.len(), 2);
    }
}
