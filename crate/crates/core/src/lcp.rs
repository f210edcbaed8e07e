//! Error bounds for linear complementarity problems `LCP(A, q)`: find
//! `x >= 0` with `A x + q >= 0` and `x^T (A x + q) = 0`.
//!
//! For a Nekrasov `A` with positive diagonal, any `x` satisfies
//! `||x - x*||_inf <= c * ||min(x, A x + q)||_inf`, where `c` bounds
//! `max_{d in [0,1]^n} ||(I - D + D A)^-1||_inf`. This module computes
//! `c = max(1 / min_i (eps_i - w_i + p_i), 1 / min_i s_i)` from a pivoted
//! scaling, the comparison-matrix coefficient
//! `||M(A)^-1 max(diag(A), I)||_inf`, and a brute-force solver used as ground
//! truth.

use serde::{Deserialize, Serialize};

use crate::bounds::margin_terms;
use crate::error::{Error, Result};
use crate::matrix::{check_len, residual_min, vec_inf_norm, SquareMatrix};
use crate::oracle::{inverse, Lu};
use crate::profile::require_nekrasov;
use crate::scaling::{apply_scaling, scaling_from_parts, EpsilonPlan};

/// Largest dimension accepted by [`solve_by_enumeration`].
pub const MAX_ENUMERATION_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcpInstance {
    pub a: SquareMatrix,
    pub q: Vec<f64>,
    pub x: Option<Vec<f64>>,
}

impl LcpInstance {
    pub fn new(a: SquareMatrix, q: Vec<f64>, x: Option<Vec<f64>>) -> Result<Self> {
        check_len(a.n(), q.len())?;
        if let Some(x) = &x {
            check_len(a.n(), x.len())?;
        }
        Ok(Self { a, q, x })
    }
}

/// Which term of the coefficient's maximum was attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `1 / min_i (eps_i - w_i + p_i)`.
    Margin,
    /// `1 / min_i s_i`.
    Scaling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcpBoundReport {
    pub coefficient: f64,
    pub branch: Branch,
    /// `a_ii s_i - sum_{j != i} |a_ij| s_j`, from the rows of `A S`.
    pub beta_bar: Vec<f64>,
    /// `eps_i - w_i + p_i`.
    pub margins: Vec<f64>,
    pub scaling: Vec<f64>,
    pub plan: EpsilonPlan,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_radius: Option<f64>,
}

fn require_positive_diagonal(a: &SquareMatrix) -> Result<()> {
    match (0..a.n()).find(|&i| !(a.get(i, i) > 0.0)) {
        Some(i) => Err(Error::NonpositiveDiagonal(i)),
        None => Ok(()),
    }
}

/// Coefficient from a pivoted plan initialized at fraction `t`.
pub fn lcp_coefficient(a: &SquareMatrix, t: f64) -> Result<LcpBoundReport> {
    require_positive_diagonal(a)?;
    let plan = EpsilonPlan::pivoted(a, t)?;
    lcp_coefficient_with_plan(a, &plan)
}

/// Coefficient from an explicit pivoted plan.
pub fn lcp_coefficient_with_plan(a: &SquareMatrix, plan: &EpsilonPlan) -> Result<LcpBoundReport> {
    require_positive_diagonal(a)?;
    let prof = require_nekrasov(a)?;
    plan.require_valid(a)?;
    let terms = margin_terms(a, &prof, &plan.eps);
    let s = scaling_from_parts(a, &prof, &plan.eps);
    let scaled = apply_scaling(a, &s)?;
    let beta_bar: Vec<f64> = scaled
        .rows()
        .enumerate()
        .map(|(i, row)| {
            let off: f64 = row
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.abs())
                .sum();
            row[i] - off
        })
        .collect();
    let min_margin = terms.margins.iter().cloned().fold(f64::INFINITY, f64::min);
    let by_margin = 1.0 / min_margin;
    let by_scaling = 1.0 / s.min();
    let (coefficient, branch) = if by_margin >= by_scaling {
        (by_margin, Branch::Margin)
    } else {
        (by_scaling, Branch::Scaling)
    };
    Ok(LcpBoundReport {
        coefficient,
        branch,
        beta_bar,
        margins: terms.margins,
        scaling: s.s,
        plan: plan.clone(),
        error_radius: None,
    })
}

/// `||M(A)^-1 max(diag(A), I)||_inf`.
pub fn lcp_reference_coefficient(a: &SquareMatrix) -> Result<f64> {
    require_positive_diagonal(a)?;
    require_nekrasov(a)?;
    let inv = inverse(&a.comparison())?;
    let weights: Vec<f64> = a.diagonal().into_iter().map(|d| d.max(1.0)).collect();
    Ok(inv.scale_columns(&weights)?.inf_norm())
}

/// Natural residual `min(x, A x + q)`.
pub fn lcp_residual(inst: &LcpInstance) -> Result<Vec<f64>> {
    let x = inst.x.as_ref().ok_or(Error::MissingCandidate)?;
    let mut ax = inst.a.mul_vec(x)?;
    for (v, q) in ax.iter_mut().zip(&inst.q) {
        *v += q;
    }
    residual_min(x, &ax)
}

/// `coefficient * ||r(x)||_inf`.
pub fn lcp_error_radius(inst: &LcpInstance, t: f64) -> Result<f64> {
    Ok(lcp_report(inst, t)?.error_radius.expect("radius is set"))
}

/// [`lcp_coefficient`] with the error radius filled in.
pub fn lcp_report(inst: &LcpInstance, t: f64) -> Result<LcpBoundReport> {
    let r = lcp_residual(inst)?;
    let mut report = lcp_coefficient(&inst.a, t)?;
    report.error_radius = Some(report.coefficient * vec_inf_norm(&r));
    Ok(report)
}

/// Solves `LCP(A, q)` by trying every complementary basis.
///
/// Basis `mask` marks the rows where `x_i` may be nonzero; it solves
/// `A[mask, mask] x_mask = -q_mask` and accepts when `x >= 0` and
/// `A x + q >= 0` (up to a rounding allowance). The first feasible basis in
/// increasing mask order is returned, so the result is deterministic. For a
/// P-matrix the solution is unique.
pub fn solve_by_enumeration(a: &SquareMatrix, q: &[f64]) -> Result<Vec<f64>> {
    let n = a.n();
    check_len(n, q.len())?;
    if n > MAX_ENUMERATION_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION_DIM,
        });
    }
    let scale = a.max_abs().max(vec_inf_norm(q)).max(1.0);
    let tol = 1e-10 * scale;
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut x = vec![0.0; n];
        if !idx.is_empty() {
            let m = idx.len();
            let sub: Vec<f64> = idx
                .iter()
                .flat_map(|&i| idx.iter().map(move |&j| a.get(i, j)))
                .collect();
            let sub = SquareMatrix::from_row_major(m, sub)?;
            let lu = match Lu::factor(&sub) {
                Ok(lu) => lu,
                Err(Error::Singular { .. }) => continue,
                Err(e) => return Err(e),
            };
            let rhs: Vec<f64> = idx.iter().map(|&i| -q[i]).collect();
            let sol = lu.solve(&rhs)?;
            if sol.iter().any(|v| *v < -tol) {
                continue;
            }
            for (&i, v) in idx.iter().zip(sol) {
                x[i] = v.max(0.0);
            }
        }
        let mut y = a.mul_vec(&x)?;
        for (v, qi) in y.iter_mut().zip(q) {
            *v += qi;
        }
        if y.iter().all(|v| *v >= -tol) {
            return Ok(x);
        }
    }
    Err(Error::NoSolution)
}
