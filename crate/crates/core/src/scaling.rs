//! Positive diagonal scalings `S` such that `A S` is strictly diagonally
//! dominant, for Nekrasov `A`.
//!
//! A scaling is parameterized by slacks `eps_i` with `s_i = (h_i + eps_i) / |a_ii|`.
//! Two ways of choosing them are supported:
//!
//! * [`Strategy::Full`]: every row gets a positive slack, `0 < eps_i <= delta_i`
//!   and `eps_i > w_i = sum_{j<i} |a_ij| eps_j / |a_jj|` for `i >= 1`.
//! * [`Strategy::Pivoted`]: let `k` be the first row with no nonzero entry right
//!   of the diagonal. Rows before `k` get no slack; rows from `k` on satisfy
//!   `0 < eps_i < delta_i` and `eps_i > sum_{j=k}^{i-1} |a_ij| eps_j / |a_jj|`.
//!
//! Rows are zero-based throughout.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{check_len, SquareMatrix};
use crate::profile::{profile, require_nekrasov, NekrasovProfile};

pub const DEFAULT_T: f64 = 0.5;

/// The forward sweep also rescales when the coupling falls short of the slack
/// by less than this relative amount, so an exact tie lost to rounding cannot
/// leave a vanishing margin.
pub const RESCALE_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Slack in every row.
    Full,
    /// Slack only from the pivot row on.
    Pivoted,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Full => "full",
            Strategy::Pivoted => "pivoted",
        })
    }
}

/// The slack vector that parameterizes a scaling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonPlan {
    pub strategy: Strategy,
    /// Pivot row; always 0 for [`Strategy::Full`].
    pub k: usize,
    pub eps: Vec<f64>,
    /// Initialization fraction, absent for hand-specified plans.
    pub t: Option<f64>,
}

/// Positive diagonal `(s_0, ..., s_{n-1})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingMatrix {
    pub s: Vec<f64>,
}

impl ScalingMatrix {
    pub fn identity(n: usize) -> Self {
        Self { s: vec![1.0; n] }
    }

    pub fn max(&self) -> f64 {
        self.s.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.s.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    LengthMismatch,
    WrongPivot,
    /// `eps_i != 0` for a row before the pivot.
    NonzeroBeforePivot,
    NotPositive,
    /// `eps_i >= delta_i` (pivoted) or `eps_i > delta_i` (full).
    ExceedsSlack,
    /// `eps_i <= w_i`.
    BelowCoupling,
    NotFinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanViolation {
    pub row: usize,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for PlanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: {}", self.row, self.message)
    }
}

/// First row `k` with `a_kj = 0` for all `j > k`. The last row always
/// qualifies.
pub fn find_pivot(a: &SquareMatrix) -> usize {
    let n = a.n();
    (0..n)
        .find(|&k| a.row(k)[k + 1..].iter().all(|v| *v == 0.0))
        .unwrap_or(n - 1)
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::TOutOfRange(t))
    }
}

/// `sum_{j=from}^{i-1} |a_ij| eps_j / |a_jj|`.
fn coupling(a: &SquareMatrix, eps: &[f64], i: usize, from: usize) -> f64 {
    let row = a.row(i);
    (from..i).map(|j| row[j].abs() * eps[j] / a.get(j, j).abs()).sum()
}

/// Initialize `eps_i = t * delta_i` from row `k` on, then sweep forward: when
/// the coupling `w_i` reaches `eps_i`, shrink `eps_k..eps_{i-1}` by
/// `eps_i / (2 w_i)` so the new coupling is `eps_i / 2`.
/// See [`RESCALE_GUARD`] for the trigger.
fn sweep(a: &SquareMatrix, prof: &NekrasovProfile, k: usize, t: f64) -> Vec<f64> {
    let n = a.n();
    let mut eps = vec![0.0; n];
    for (e, d) in eps[k..].iter_mut().zip(&prof.delta[k..]) {
        *e = t * d;
    }
    for i in k + 1..n {
        let w = coupling(a, &eps, i, k);
        if w >= eps[i] * (1.0 - RESCALE_GUARD) {
            let factor = eps[i] / (2.0 * w);
            for e in &mut eps[k..i] {
                *e *= factor;
            }
        }
    }
    eps
}

impl EpsilonPlan {
    /// Slack from the pivot row on, initialized at fraction `t` of each slack.
    pub fn pivoted(a: &SquareMatrix, t: f64) -> Result<Self> {
        check_t(t)?;
        let prof = require_nekrasov(a)?;
        let k = find_pivot(a);
        Ok(Self {
            strategy: Strategy::Pivoted,
            k,
            eps: sweep(a, &prof, k, t),
            t: Some(t),
        })
    }

    /// Slack in every row, initialized at fraction `t` of each slack. Because
    /// `t < 1` the first row also satisfies `eps_0 <= delta_0`, which keeps
    /// every `s_i <= 1`.
    pub fn full(a: &SquareMatrix, t: f64) -> Result<Self> {
        check_t(t)?;
        let prof = require_nekrasov(a)?;
        Ok(Self {
            strategy: Strategy::Full,
            k: 0,
            eps: sweep(a, &prof, 0, t),
            t: Some(t),
        })
    }

    pub fn new(a: &SquareMatrix, strategy: Strategy, t: f64) -> Result<Self> {
        match strategy {
            Strategy::Full => Self::full(a, t),
            Strategy::Pivoted => Self::pivoted(a, t),
        }
    }

    /// A hand-specified pivoted plan; the pivot is taken from `a`.
    pub fn pivoted_with_eps(a: &SquareMatrix, eps: Vec<f64>) -> Self {
        Self {
            strategy: Strategy::Pivoted,
            k: find_pivot(a),
            eps,
            t: None,
        }
    }

    pub fn full_with_eps(eps: Vec<f64>) -> Self {
        Self {
            strategy: Strategy::Full,
            k: 0,
            eps,
            t: None,
        }
    }

    /// Lists every violated plan inequality for `a`. Empty means valid.
    ///
    /// A matrix with a zero diagonal or that is not Nekrasov yields a single
    /// violation at the offending row.
    pub fn violations(&self, a: &SquareMatrix) -> Vec<PlanViolation> {
        let mut out = Vec::new();
        let n = a.n();
        let push = |out: &mut Vec<PlanViolation>, row, kind, message: String| {
            out.push(PlanViolation { row, kind, message })
        };
        if self.eps.len() != n {
            push(
                &mut out,
                0,
                ViolationKind::LengthMismatch,
                format!("expected {n} slacks, found {}", self.eps.len()),
            );
            return out;
        }
        let prof = match profile(a) {
            Ok(p) => p,
            Err(Error::ZeroDiagonal(i)) => {
                push(&mut out, i, ViolationKind::NotPositive, "zero diagonal".into());
                return out;
            }
            Err(e) => {
                push(&mut out, 0, ViolationKind::NotFinite, e.to_string());
                return out;
            }
        };
        if let Some(row) = prof.first_non_nekrasov_row() {
            push(
                &mut out,
                row,
                ViolationKind::ExceedsSlack,
                format!("matrix is not Nekrasov: delta{} <= 0", row + 1),
            );
            return out;
        }
        for (i, e) in self.eps.iter().enumerate() {
            if !e.is_finite() {
                push(&mut out, i, ViolationKind::NotFinite, format!("eps{} is not finite", i + 1));
            }
        }
        if !out.is_empty() {
            return out;
        }

        let (k, strict_upper) = match self.strategy {
            Strategy::Full => {
                if self.k != 0 {
                    push(&mut out, self.k, ViolationKind::WrongPivot, "full plan must pivot at row 1".into());
                }
                (0, false)
            }
            Strategy::Pivoted => {
                let expected = find_pivot(a);
                if self.k != expected {
                    push(
                        &mut out,
                        self.k,
                        ViolationKind::WrongPivot,
                        format!("pivot is row {}, plan says row {}", expected + 1, self.k + 1),
                    );
                }
                (expected, true)
            }
        };

        for i in 0..k {
            if self.eps[i] != 0.0 {
                push(
                    &mut out,
                    i,
                    ViolationKind::NonzeroBeforePivot,
                    format!("eps{} must be 0 before the pivot", i + 1),
                );
            }
        }
        for i in k..n {
            let e = self.eps[i];
            let d = prof.delta[i];
            if !(e > 0.0) {
                push(&mut out, i, ViolationKind::NotPositive, format!("eps{} must be > 0", i + 1));
            }
            let exceeds = if strict_upper { !(e < d) } else { !(e <= d) };
            if exceeds {
                let op = if strict_upper { "<" } else { "<=" };
                push(
                    &mut out,
                    i,
                    ViolationKind::ExceedsSlack,
                    format!("eps{} {op} delta{} fails ({e} vs {d})", i + 1, i + 1),
                );
            }
            if i > k {
                let w = coupling(a, &self.eps, i, k);
                if !(e > w) {
                    push(
                        &mut out,
                        i,
                        ViolationKind::BelowCoupling,
                        format!("eps{} > sum_j |a_ij| eps_j / |a_jj| fails ({e} vs {w})", i + 1),
                    );
                }
            }
        }
        out
    }

    pub fn is_valid(&self, a: &SquareMatrix) -> bool {
        self.violations(a).is_empty()
    }

    pub(crate) fn require_valid(&self, a: &SquareMatrix) -> Result<()> {
        match self.violations(a).into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidPlan {
                row: v.row,
                reason: v.message,
            }),
        }
    }
}

/// `(valid, violations)` for a plan against `a`.
pub fn validate_plan(a: &SquareMatrix, plan: &EpsilonPlan) -> (bool, Vec<PlanViolation>) {
    let v = plan.violations(a);
    (v.is_empty(), v)
}

/// `s_i = (h_i + eps_i) / |a_ii|` for a valid plan.
pub fn build_scaling(a: &SquareMatrix, plan: &EpsilonPlan) -> Result<ScalingMatrix> {
    plan.require_valid(a)?;
    let prof = profile(a)?;
    Ok(scaling_from_parts(a, &prof, &plan.eps))
}

pub(crate) fn scaling_from_parts(a: &SquareMatrix, prof: &NekrasovProfile, eps: &[f64]) -> ScalingMatrix {
    ScalingMatrix {
        s: (0..a.n())
            .map(|i| (prof.h[i] + eps[i]) / a.get(i, i).abs())
            .collect(),
    }
}

/// `A S`, entry `(i, j)` equal to `a_ij * s_j`.
pub fn apply_scaling(a: &SquareMatrix, s: &ScalingMatrix) -> Result<SquareMatrix> {
    check_len(a.n(), s.s.len())?;
    a.scale_columns(&s.s)
}
