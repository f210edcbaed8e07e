//! Dense square matrices and the elementary norms used throughout the crate.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense `n x n` real matrix stored in row-major order.
///
/// Construction guarantees `n >= 1` and that every entry is finite.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl TryFrom<RawMatrix> for SquareMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        let m = SquareMatrix::from_rows(raw.rows)?;
        if m.n != raw.n {
            return Err(Error::DimensionMismatch {
                expected: raw.n,
                found: m.n,
            });
        }
        Ok(m)
    }
}

impl From<SquareMatrix> for RawMatrix {
    fn from(m: SquareMatrix) -> Self {
        RawMatrix {
            n: m.n,
            rows: m.rows().map(<[f64]>::to_vec).collect(),
        }
    }
}

impl SquareMatrix {
    /// Builds a matrix from `n * n` row-major entries.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a list of rows; every row must have as many
    /// entries as there are rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: impl IntoIterator<Item = R>) -> Result<Self> {
        let mut data = Vec::new();
        let mut n = 0;
        let mut width = None;
        for row in rows {
            let row = row.as_ref();
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::DimensionMismatch {
                        expected: w,
                        found: row.len(),
                    })
                }
                Some(_) => {}
            }
            data.extend_from_slice(row);
            n += 1;
        }
        if let Some(w) = width {
            if w != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w,
                });
            }
        }
        Self::from_row_major(n, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    /// Diagonal matrix with the given diagonal. Panics on an empty slice or
    /// non-finite entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        assert!(n > 0, "diagonal must be non-empty");
        assert!(diag.iter().all(|d| d.is_finite()), "diagonal must be finite");
        let mut data = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Returns a copy with entry `(i, j)` replaced. Panics if `value` is not finite.
    pub fn with_entry(&self, i: usize, j: usize, value: f64) -> Self {
        assert!(value.is_finite(), "matrix entries must be finite");
        let mut m = self.clone();
        m.data[i * self.n + j] = value;
        m
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    /// The comparison matrix: `|a_ii|` on the diagonal, `-|a_ij|` elsewhere.
    pub fn comparison(&self) -> Self {
        let n = self.n;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, v)| if idx / n == idx % n { v.abs() } else { -v.abs() })
            .collect();
        Self { n, data }
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        self.rows()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, x.len())?;
        Ok(self
            .rows()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `A * diag(s)`: column `j` multiplied by `s[j]`.
    pub fn scale_columns(&self, s: &[f64]) -> Result<Self> {
        check_len(self.n, s.len())?;
        let n = self.n;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, v)| v * s[idx % n])
            .collect();
        Ok(Self { n, data })
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Componentwise minimum of two vectors of equal length.
pub fn residual_min(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    check_len(x.len(), y.len())?;
    Ok(x.iter().zip(y).map(|(a, b)| a.min(*b)).collect())
}

/// Maximum absolute entry of a vector (zero for the empty vector).
pub fn vec_inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().copied()).unwrap()
    }

    #[test]
    fn comparison_of_identity_is_identity() {
        assert_eq!(SquareMatrix::identity(3).comparison(), SquareMatrix::identity(3));
    }

    #[test]
    fn comparison_flips_signs() {
        let a = m(&[&[-7.0, 1.0], &[7.0, 88.0]]);
        assert_eq!(a.comparison(), m(&[&[7.0, -1.0], &[-7.0, 88.0]]));
        let a5 = m(&[&[6.0, -3.0, -2.0], &[-1.0, 11.0, -8.0], &[-7.0, -3.0, 10.0]]);
        assert_eq!(a5.comparison(), a5);
    }

    #[test]
    fn norms() {
        assert_eq!(SquareMatrix::identity(3).inf_norm(), 1.0);
        let a = m(&[&[1.0, -2.0], &[3.0, 4.0]]);
        assert_eq!(a.one_norm(), 6.0);
        assert_eq!(a.inf_norm(), 7.0);
        assert_eq!(a.transpose().inf_norm(), a.one_norm());
    }

    #[test]
    fn residual_min_is_componentwise() {
        assert_eq!(
            residual_min(&[1.0, 0.0, 2.0], &[0.0, 5.0, -1.0]).unwrap(),
            vec![0.0, 0.0, -1.0]
        );
        assert_eq!(
            residual_min(&[1.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            SquareMatrix::from_rows([vec![1.0], vec![2.0, 3.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            SquareMatrix::from_rows([vec![1.0, 2.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(SquareMatrix::from_rows(Vec::<Vec<f64>>::new()), Err(Error::Empty));
        assert_eq!(
            SquareMatrix::from_row_major(2, vec![1.0, f64::NAN, 0.0, 1.0]),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
    }

    #[test]
    fn scale_columns_multiplies_each_column() {
        let a = m(&[&[2.0, 1.0], &[0.0, 2.0]]);
        assert_eq!(a.scale_columns(&[0.5, 1.0]).unwrap(), m(&[&[1.0, 1.0], &[0.0, 2.0]]));
        assert_eq!(a.scale_columns(&[1.0, 1.0]).unwrap(), a);
    }
}
