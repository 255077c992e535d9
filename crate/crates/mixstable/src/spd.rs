//! Symmetric positive definite matrices with a cached Cholesky factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative symmetry tolerance on input matrices.
const SYM_TOL: f64 = 1e-12;
/// Relative tolerance on the factor reconstruction ‖AAᵀ − Σ‖_max.
const RECONSTRUCT_TOL: f64 = 1e-10;

/// A validated r×r symmetric positive definite matrix Σ together with its
/// lower-triangular Cholesky factor A (AAᵀ = Σ), stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpdMatrixData", into = "SpdMatrixData")]
pub struct SpdMatrix {
    dim: usize,
    entries: Vec<f64>,
    factor: Vec<f64>,
}

/// Serialization image of [`SpdMatrix`]; re-validated on deserialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpdMatrixData {
    pub rows: Vec<Vec<f64>>,
}

impl From<SpdMatrix> for SpdMatrixData {
    fn from(m: SpdMatrix) -> Self {
        SpdMatrixData {
            rows: (0..m.dim)
                .map(|i| m.entries[i * m.dim..(i + 1) * m.dim].to_vec())
                .collect(),
        }
    }
}

impl TryFrom<SpdMatrixData> for SpdMatrix {
    type Error = Error;
    fn try_from(d: SpdMatrixData) -> Result<Self> {
        SpdMatrix::from_rows(&d.rows)
    }
}

impl SpdMatrix {
    /// Validate entries and factorize. Cholesky without pivoting; the first
    /// non-positive pivot reports not-positive-definite.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Shape("matrix must have at least one row".into()));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape(format!(
                "expected a square {dim}x{dim} matrix, got ragged rows"
            )));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            entries.extend_from_slice(r);
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::Shape("matrix entries must be finite".into()));
        }
        let max_abs = entries.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if max_abs == 0.0 {
            return Err(Error::NotPositiveDefinite { index: 0, pivot: 0.0 });
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if (entries[i * dim + j] - entries[j * dim + i]).abs() > SYM_TOL * max_abs {
                    return Err(Error::Shape(format!(
                        "matrix is asymmetric at ({i},{j}): {} vs {}",
                        entries[i * dim + j],
                        entries[j * dim + i]
                    )));
                }
            }
        }
        let factor = cholesky(dim, &entries)?;
        let m = SpdMatrix { dim, entries, factor };
        let err = m.reconstruction_error();
        if err > RECONSTRUCT_TOL * max_abs {
            return Err(Error::Accuracy {
                context: "Cholesky reconstruction".into(),
                estimate: err,
                target: RECONSTRUCT_TOL * max_abs,
            });
        }
        Ok(m)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        SpdMatrix {
            dim,
            entries: entries.clone(),
            factor: entries,
        }
    }

    /// 1×1 matrix `[c]`, c > 0.
    pub fn scalar(c: f64) -> Result<Self> {
        SpdMatrix::from_rows(&[vec![c]])
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|i| {
                let mut r = vec![0.0; dim];
                r[i] = diag[i];
                r
            })
            .collect();
        SpdMatrix::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// The cached lower-triangular factor, row-major.
    pub fn factor(&self) -> &[f64] {
        &self.factor
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    /// tᵀ Σ t.
    pub fn quadratic_form(&self, t: &[f64]) -> Result<f64> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against dimension {}",
                t.len(),
                self.dim
            )));
        }
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += t[i] * self.entry(i, j) * t[j];
            }
        }
        Ok(acc)
    }

    /// out = A z (factor times vector), used to correlate standard normals.
    #[inline]
    pub fn factor_mul(&self, z: &[f64], out: &mut [f64]) {
        let d = self.dim;
        for (i, slot) in out.iter_mut().enumerate() {
            let row = &self.factor[i * d..i * d + i + 1];
            *slot = row.iter().zip(z).map(|(a, b)| a * b).sum();
        }
    }

    /// ‖AAᵀ − Σ‖_max.
    pub fn reconstruction_error(&self) -> f64 {
        let d = self.dim;
        let mut err = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0.0;
                for k in 0..=i.min(j) {
                    acc += self.factor[i * d + k] * self.factor[j * d + k];
                }
                err = err.max((acc - self.entry(i, j)).abs());
            }
        }
        err
    }
}

fn cholesky(dim: usize, a: &[f64]) -> Result<Vec<f64>> {
    let mut l = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let mut acc = a[i * dim + j];
            for k in 0..j {
                acc -= l[i * dim + k] * l[j * dim + k];
            }
            if i == j {
                if acc <= 0.0 {
                    return Err(Error::NotPositiveDefinite { index: i, pivot: acc });
                }
                l[i * dim + i] = acc.sqrt();
            } else {
                l[i * dim + j] = acc / l[j * dim + j];
            }
        }
    }
    Ok(l)
}

/// Validate raw rows into an [`SpdMatrix`].
pub fn make_spd(rows: &[Vec<f64>]) -> Result<SpdMatrix> {
    SpdMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_factors_to_identity() {
        let m = make_spd(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(m.factor(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn hand_cholesky_second_row() {
        // [[4,2],[2,3]] -> L = [[2,0],[1,sqrt(2)]]
        let m = make_spd(&[vec![4.0, 2.0], vec![2.0, 3.0]]).unwrap();
        assert!((m.factor()[0] - 2.0).abs() < 1e-14);
        assert!((m.factor()[2] - 1.0).abs() < 1e-14);
        assert!((m.factor()[3] - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        // eigenvalues 3 and -1
        let err = make_spd(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
    }

    #[test]
    fn asymmetric_matrix_is_rejected() {
        let err = make_spd(&[vec![1.0, 0.5], vec![0.3, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn quadratic_form_matches_hand_value() {
        let m = make_spd(&[vec![4.0, 2.0], vec![2.0, 3.0]]).unwrap();
        // (1,1): 4 + 2 + 2 + 3 = 11
        assert!((m.quadratic_form(&[1.0, 1.0]).unwrap() - 11.0).abs() < 1e-14);
    }

    #[test]
    fn serde_round_trip_revalidates() {
        let m = make_spd(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: SpdMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
