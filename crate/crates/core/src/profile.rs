//! Row recursions `h` and `z`, and the SDD / Nekrasov classification.
//!
//! For a matrix with nonzero diagonal,
//!
//! ```text
//! h_i = sum_{j<i} |a_ij| h_j / |a_jj| + sum_{j>i} |a_ij|
//! z_i = sum_{j<i} |a_ij| z_j / |a_jj| + 1
//! ```
//!
//! The matrix is Nekrasov when `|a_ii| > h_i` in every row. Both recursions
//! run forward, so `h_i` and `z_i` only see rows `0..=i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Per-row recursion values plus the SDD / Nekrasov flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NekrasovProfile {
    pub h: Vec<f64>,
    pub z: Vec<f64>,
    /// `|a_ii| - h_i`.
    pub delta: Vec<f64>,
    /// `|a_ii| - sum_{j != i} |a_ij|`.
    pub varah_margins: Vec<f64>,
    pub is_sdd: bool,
    pub is_nekrasov: bool,
}

impl NekrasovProfile {
    /// First row violating the Nekrasov condition, if any.
    pub fn first_non_nekrasov_row(&self) -> Option<usize> {
        self.delta.iter().position(|d| !(*d > 0.0))
    }

    pub fn first_non_sdd_row(&self) -> Option<usize> {
        self.varah_margins.iter().position(|d| !(*d > 0.0))
    }
}

fn first_zero_diagonal(a: &SquareMatrix) -> Option<usize> {
    (0..a.n()).find(|&i| a.get(i, i) == 0.0)
}

/// The `h` recursion. Fails on a zero diagonal entry.
pub fn h_values(a: &SquareMatrix) -> Result<Vec<f64>> {
    if let Some(i) = first_zero_diagonal(a) {
        return Err(Error::ZeroDiagonal(i));
    }
    let n = a.n();
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let row = a.row(i);
        let lower: f64 = (0..i).map(|j| row[j].abs() * h[j] / a.get(j, j).abs()).sum();
        let upper: f64 = row[i + 1..].iter().map(|v| v.abs()).sum();
        h.push(lower + upper);
    }
    Ok(h)
}

/// The `z` recursion. Fails on a zero diagonal entry.
pub fn z_values(a: &SquareMatrix) -> Result<Vec<f64>> {
    if let Some(i) = first_zero_diagonal(a) {
        return Err(Error::ZeroDiagonal(i));
    }
    let n = a.n();
    let mut z = Vec::with_capacity(n);
    for i in 0..n {
        let row = a.row(i);
        let lower: f64 = (0..i).map(|j| row[j].abs() * z[j] / a.get(j, j).abs()).sum();
        z.push(lower + 1.0);
    }
    Ok(z)
}

/// Row margins `|a_ii| - sum_{j != i} |a_ij|`.
pub fn varah_margins(a: &SquareMatrix) -> Vec<f64> {
    a.rows()
        .enumerate()
        .map(|(i, row)| {
            let off: f64 = row
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.abs())
                .sum();
            row[i].abs() - off
        })
        .collect()
}

/// Strict row diagonal dominance, compared exactly.
pub fn is_sdd(a: &SquareMatrix) -> bool {
    varah_margins(a).iter().all(|m| *m > 0.0)
}

pub fn is_nekrasov(a: &SquareMatrix) -> bool {
    profile(a).map(|p| p.is_nekrasov).unwrap_or(false)
}

pub fn profile(a: &SquareMatrix) -> Result<NekrasovProfile> {
    let h = h_values(a)?;
    let z = z_values(a)?;
    let delta: Vec<f64> = h
        .iter()
        .enumerate()
        .map(|(i, hi)| a.get(i, i).abs() - hi)
        .collect();
    let varah_margins = varah_margins(a);
    Ok(NekrasovProfile {
        is_sdd: varah_margins.iter().all(|m| *m > 0.0),
        is_nekrasov: delta.iter().all(|d| *d > 0.0),
        h,
        z,
        delta,
        varah_margins,
    })
}

/// Profile of a matrix that must be Nekrasov.
pub(crate) fn require_nekrasov(a: &SquareMatrix) -> Result<NekrasovProfile> {
    let p = profile(a)?;
    match p.first_non_nekrasov_row() {
        Some(row) => Err(Error::NotNekrasov { row }),
        None => Ok(p),
    }
}
