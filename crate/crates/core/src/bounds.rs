//! Upper bounds on `||A^-1||_inf` (and on `||A^-1||_1`, plus a lower bound on
//! the smallest singular value) for Nekrasov matrices.
//!
//! Every report satisfies `value = numerator / min(row_margins)`, except the
//! singular-value bound, whose value is
//! `sqrt(min(row_margins) * min(transpose.row_margins) / numerator)`.
//!
//! For scaled methods the margins are `eps_i - w_i + p_i` with
//!
//! ```text
//! w_i = sum_{j<i} |a_ij| eps_j / |a_jj|
//! p_i = sum_{j>i} |a_ij| (|a_jj| - h_j - eps_j) / |a_jj|
//! ```
//!
//! which equal the row margins of `A S`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::profile::{h_values, profile, require_nekrasov, NekrasovProfile};
use crate::scaling::{apply_scaling, scaling_from_parts, EpsilonPlan};

pub const DEFAULT_GRID_SIZE: usize = 10_000;

/// Which bound a report was produced by. Serialized with the CLI names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// `1 / min_i (|a_ii| - sum_{j != i} |a_ij|)` for SDD matrices.
    #[serde(rename = "varah")]
    Varah,
    /// `||S||_inf / min_i (eps_i - w_i + p_i)`.
    #[serde(rename = "cotanek")]
    ScaledVarah,
    /// `1 / min_i (eps_i - w_i + p_i)`, using `||S||_inf <= 1`.
    #[serde(rename = "cor34")]
    ScaledVarahUnit,
    /// `max_i z_i / (|a_ii| - h_i)`.
    #[serde(rename = "cotak")]
    Recursive,
    /// `||S||_inf * max_i z_i / (h_i + eps_i - h_i(AS))`.
    #[serde(rename = "cotarev")]
    ScaledRecursive,
    /// Scaled Varah bound on the transpose, bounding `||A^-1||_1`.
    #[serde(rename = "onenorm")]
    OneNorm,
    /// Lower bound on the smallest singular value.
    #[serde(rename = "sigmamin")]
    SigmaMin,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Varah,
        Method::ScaledVarah,
        Method::ScaledVarahUnit,
        Method::Recursive,
        Method::ScaledRecursive,
        Method::OneNorm,
        Method::SigmaMin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Varah => "varah",
            Method::ScaledVarah => "cotanek",
            Method::ScaledVarahUnit => "cor34",
            Method::Recursive => "cotak",
            Method::ScaledRecursive => "cotarev",
            Method::OneNorm => "onenorm",
            Method::SigmaMin => "sigmamin",
        }
    }

    /// Whether the method depends on a slack plan.
    pub fn uses_plan(self) -> bool {
        !matches!(self, Method::Varah | Method::Recursive)
    }

    /// `true` for the singular-value bound, which is a lower bound.
    pub fn is_lower_bound(self) -> bool {
        self == Method::SigmaMin
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: Method,
    pub value: f64,
    pub numerator: f64,
    pub row_margins: Vec<f64>,
    /// First row attaining the smallest margin.
    pub argmin_row: usize,
    /// `w_i`; empty for methods without a plan.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub w: Vec<f64>,
    /// `p_i`; empty for methods without a plan.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<EpsilonPlan>,
    /// Scaling diagonal for plan-based methods.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scaling: Vec<f64>,
    /// The transpose half of the singular-value bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transpose: Option<Box<BoundReport>>,
}

/// `(index, value)` of the first minimum.
fn first_min(v: &[f64]) -> (usize, f64) {
    v.iter()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, &x)| if x < best.1 { (i, x) } else { best })
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// The `w`, `p` and margin vectors for a slack vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginTerms {
    pub w: Vec<f64>,
    pub p: Vec<f64>,
    pub margins: Vec<f64>,
}

pub fn margin_terms(a: &SquareMatrix, prof: &NekrasovProfile, eps: &[f64]) -> MarginTerms {
    let n = a.n();
    let diag: Vec<f64> = a.diagonal().iter().map(|d| d.abs()).collect();
    let mut w = Vec::with_capacity(n);
    let mut p = Vec::with_capacity(n);
    for i in 0..n {
        let row = a.row(i);
        w.push((0..i).map(|j| row[j].abs() * eps[j] / diag[j]).sum::<f64>());
        p.push(
            (i + 1..n)
                .map(|j| row[j].abs() * (diag[j] - prof.h[j] - eps[j]) / diag[j])
                .sum::<f64>(),
        );
    }
    let margins = (0..n).map(|i| eps[i] - w[i] + p[i]).collect();
    MarginTerms { w, p, margins }
}

pub fn varah_bound(a: &SquareMatrix) -> Result<BoundReport> {
    let margins = crate::profile::varah_margins(a);
    if let Some(row) = margins.iter().position(|m| !(*m > 0.0)) {
        return Err(Error::NotSdd { row });
    }
    let (argmin_row, alpha) = first_min(&margins);
    Ok(BoundReport {
        method: Method::Varah,
        value: 1.0 / alpha,
        numerator: 1.0,
        row_margins: margins,
        argmin_row,
        w: Vec::new(),
        p: Vec::new(),
        plan: None,
        scaling: Vec::new(),
        transpose: None,
    })
}

fn scaled_report(a: &SquareMatrix, plan: &EpsilonPlan, method: Method) -> Result<BoundReport> {
    let prof = require_nekrasov(a)?;
    plan.require_valid(a)?;
    let terms = margin_terms(a, &prof, &plan.eps);
    let s = scaling_from_parts(a, &prof, &plan.eps);
    let numerator = match method {
        Method::ScaledVarahUnit => 1.0,
        _ => max_of(&s.s),
    };
    let (argmin_row, min_margin) = first_min(&terms.margins);
    Ok(BoundReport {
        method,
        value: numerator / min_margin,
        numerator,
        row_margins: terms.margins,
        argmin_row,
        w: terms.w,
        p: terms.p,
        plan: Some(plan.clone()),
        scaling: s.s,
        transpose: None,
    })
}

/// `max_i s_i / min_i (eps_i - w_i + p_i)`.
pub fn bound_scaled_varah(a: &SquareMatrix, plan: &EpsilonPlan) -> Result<BoundReport> {
    scaled_report(a, plan, Method::ScaledVarah)
}

/// `1 / min_i (eps_i - w_i + p_i)`.
pub fn bound_scaled_varah_unit(a: &SquareMatrix, plan: &EpsilonPlan) -> Result<BoundReport> {
    scaled_report(a, plan, Method::ScaledVarahUnit)
}

/// `max_i z_i / (|a_ii| - h_i)`. Margins are stored as `delta_i / z_i`.
pub fn bound_recursive(a: &SquareMatrix) -> Result<BoundReport> {
    let prof = require_nekrasov(a)?;
    let margins: Vec<f64> = prof.delta.iter().zip(&prof.z).map(|(d, z)| d / z).collect();
    let (argmin_row, min_margin) = first_min(&margins);
    Ok(BoundReport {
        method: Method::Recursive,
        value: 1.0 / min_margin,
        numerator: 1.0,
        row_margins: margins,
        argmin_row,
        w: Vec::new(),
        p: Vec::new(),
        plan: None,
        scaling: Vec::new(),
        transpose: None,
    })
}

/// The recursive bound applied to `A S`, times `||S||_inf`.
///
/// `h(AS)` is recomputed from the scaled matrix; `z(AS) = z(A)`. Margins are
/// stored as `(h_i + eps_i - h_i(AS)) / z_i`.
pub fn bound_scaled_recursive(a: &SquareMatrix, plan: &EpsilonPlan) -> Result<BoundReport> {
    let prof = require_nekrasov(a)?;
    plan.require_valid(a)?;
    let s = scaling_from_parts(a, &prof, &plan.eps);
    let scaled = apply_scaling(a, &s)?;
    let h_scaled = h_values(&scaled)?;
    let margins: Vec<f64> = (0..a.n())
        .map(|i| (prof.h[i] + plan.eps[i] - h_scaled[i]) / prof.z[i])
        .collect();
    let terms = margin_terms(a, &prof, &plan.eps);
    let numerator = max_of(&s.s);
    let (argmin_row, min_margin) = first_min(&margins);
    Ok(BoundReport {
        method: Method::ScaledRecursive,
        value: numerator / min_margin,
        numerator,
        row_margins: margins,
        argmin_row,
        w: terms.w,
        p: terms.p,
        plan: Some(plan.clone()),
        scaling: s.s,
        transpose: None,
    })
}

fn transpose_plan(at: &SquareMatrix, t: f64) -> Result<EpsilonPlan> {
    EpsilonPlan::pivoted(at, t).map_err(|e| match e {
        Error::NotNekrasov { row } => Error::TransposeNotNekrasov { row },
        e => e,
    })
}

/// Bound on `||A^-1||_1` from the scaled Varah bound on `A^T`, with a
/// pivoted plan on `A^T`.
pub fn one_norm_bound(a: &SquareMatrix, t: f64) -> Result<BoundReport> {
    let at = a.transpose();
    let plan = transpose_plan(&at, t)?;
    let mut report = bound_scaled_varah(&at, &plan)?;
    report.method = Method::OneNorm;
    Ok(report)
}

/// Lower bound on the smallest singular value using pivoted plans on both
/// `A` and `A^T` at the same `t`.
pub fn sigma_min_bound(a: &SquareMatrix, t: f64) -> Result<BoundReport> {
    let plan = EpsilonPlan::pivoted(a, t)?;
    let at = a.transpose();
    let plan_t = transpose_plan(&at, t)?;
    let row = bound_scaled_varah(a, &plan)?;
    let col = bound_scaled_varah(&at, &plan_t)?;
    let numerator = row.numerator * col.numerator;
    let value = (first_min(&row.row_margins).1 * first_min(&col.row_margins).1 / numerator).sqrt();
    Ok(BoundReport {
        method: Method::SigmaMin,
        value,
        numerator,
        transpose: Some(Box::new(col)),
        ..row
    })
}

/// Evaluates `method` with a fresh plan of the pivoted kind at fraction `t`
/// (ignored by methods without a plan).
pub fn evaluate(a: &SquareMatrix, method: Method, t: f64) -> Result<BoundReport> {
    match method {
        Method::Varah => varah_bound(a),
        Method::Recursive => bound_recursive(a),
        Method::ScaledVarah => bound_scaled_varah(a, &EpsilonPlan::pivoted(a, t)?),
        Method::ScaledVarahUnit => bound_scaled_varah_unit(a, &EpsilonPlan::pivoted(a, t)?),
        Method::ScaledRecursive => bound_scaled_recursive(a, &EpsilonPlan::pivoted(a, t)?),
        Method::OneNorm => one_norm_bound(a, t),
        Method::SigmaMin => sigma_min_bound(a, t),
    }
}

/// Evaluates `method` with an explicit plan. Methods that build their own
/// transpose plans reject this.
pub fn evaluate_with_plan(a: &SquareMatrix, method: Method, plan: &EpsilonPlan) -> Result<BoundReport> {
    match method {
        Method::Varah => varah_bound(a),
        Method::Recursive => bound_recursive(a),
        Method::ScaledVarah => bound_scaled_varah(a, plan),
        Method::ScaledVarahUnit => bound_scaled_varah_unit(a, plan),
        Method::ScaledRecursive => bound_scaled_recursive(a, plan),
        Method::OneNorm | Method::SigmaMin => Err(Error::NoFreeParameter(method.name())),
    }
}

/// Sweeps `t = j / (grid_size + 1)`, `j = 1..=grid_size`, and keeps the best
/// bound: the smallest value for upper bounds, the largest for the
/// singular-value bound. Ties keep the first `t`.
pub fn optimize_t(a: &SquareMatrix, method: Method, grid_size: usize) -> Result<(f64, BoundReport)> {
    if grid_size < 2 {
        return Err(Error::GridTooSmall(grid_size));
    }
    if !method.uses_plan() {
        return Err(Error::NoFreeParameter(method.name()));
    }
    // fail fast on preconditions before the sweep
    profile(a)?;
    let denom = (grid_size + 1) as f64;
    let mut best: Option<(f64, BoundReport)> = None;
    for j in 1..=grid_size {
        let t = j as f64 / denom;
        let report = evaluate(a, method, t)?;
        let better = match &best {
            None => true,
            Some((_, b)) if method.is_lower_bound() => report.value > b.value,
            Some((_, b)) => report.value < b.value,
        };
        if better {
            best = Some((t, report));
        }
    }
    Ok(best.expect("grid is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_inverse_inf_norm, exact_inverse_one_norm, sigma_min_oracle};
    use crate::profile::is_sdd;
    use approx::assert_relative_eq;

    fn mat(rows: &[&[f64]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().copied()).unwrap()
    }

    fn a1() -> SquareMatrix {
        mat(&[
            &[-7.0, 1.0, -0.2, 2.0],
            &[7.0, 88.0, 2.0, -3.0],
            &[2.0, 0.5, 13.0, -2.0],
            &[0.5, 3.0, 1.0, 6.0],
        ])
    }

    fn a2() -> SquareMatrix {
        mat(&[
            &[8.0, 1.0, -0.2, 3.3],
            &[7.0, 13.0, 2.0, -3.0],
            &[-1.3, 6.7, 13.0, -2.0],
            &[0.5, 3.0, 1.0, 6.0],
        ])
    }

    fn a3() -> SquareMatrix {
        mat(&[
            &[21.0, -9.1, -4.2, -2.1],
            &[-0.7, 9.1, -4.2, -2.1],
            &[-0.7, -0.7, 4.9, -2.1],
            &[-0.7, -0.7, -0.7, 2.8],
        ])
    }

    fn a4() -> SquareMatrix {
        mat(&[
            &[5.0, 1.0, 0.2, 2.0],
            &[1.0, 21.0, 1.0, -3.0],
            &[2.0, 0.5, 6.4, -2.0],
            &[0.5, -1.0, 1.0, 9.0],
        ])
    }

    fn a5() -> SquareMatrix {
        mat(&[&[6.0, -3.0, -2.0], &[-1.0, 11.0, -8.0], &[-7.0, -3.0, 10.0]])
    }

    fn family(eps: f64) -> SquareMatrix {
        mat(&[&[4.0, 2.0, 1.0], &[4.0 / 3.0 - eps, 2.0, 1.0], &[1.0, 1.0, 2.0]])
    }

    fn half(a: &SquareMatrix) -> EpsilonPlan {
        EpsilonPlan::pivoted(a, 0.5).unwrap()
    }

    #[test]
    fn varah_examples() {
        assert_eq!(varah_bound(&SquareMatrix::identity(4)).unwrap().value, 1.0);
        assert_eq!(varah_bound(&SquareMatrix::from_diagonal(&[2.0, 4.0])).unwrap().value, 0.5);
        let r = varah_bound(&a3()).unwrap();
        // row margins 5.6, 2.1, 1.4, 0.7
        for (m, e) in r.row_margins.iter().zip([5.6, 2.1, 1.4, 0.7]) {
            assert_relative_eq!(*m, e, max_relative = 1e-12);
        }
        assert_eq!(r.argmin_row, 3);
        assert_relative_eq!(r.value, 1.0 / 0.7, max_relative = 1e-12);
        assert_eq!(varah_bound(&a5()), Err(Error::NotSdd { row: 2 }));
    }

    #[test]
    fn scaled_varah_reported_values() {
        assert!((bound_scaled_varah(&a1(), &half(&a1())).unwrap().value - 0.6398).abs() < 5e-4);
        assert!((bound_scaled_varah(&a5(), &half(&a5())).unwrap().value - 1.2974).abs() < 5e-4);
    }

    #[test]
    fn family_closed_forms() {
        for eps in [0.01, 0.05, 0.08, 0.09] {
            let a = family(eps);
            let r = bound_scaled_varah(&a, &half(&a)).unwrap();
            let expected = 16.0 * (1.0 - 3.0 * eps / 8.0) / (1.0 + 3.0 * eps / 2.0);
            assert_relative_eq!(r.value, expected, max_relative = 1e-9);
            let k = bound_recursive(&a).unwrap();
            assert_relative_eq!(k.value, 16.0 / (9.0 * eps) - 1.0 / 3.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn unit_numerator_dominates() {
        for a in [a1(), a5(), SquareMatrix::identity(3)] {
            let p = half(&a);
            let full = bound_scaled_varah(&a, &p).unwrap();
            let unit = bound_scaled_varah_unit(&a, &p).unwrap();
            assert!(unit.value >= full.value);
            assert_relative_eq!(unit.value, full.value / full.numerator, max_relative = 1e-14);
        }
        let p = EpsilonPlan::pivoted(&SquareMatrix::identity(3), 0.5).unwrap();
        assert_eq!(bound_scaled_varah_unit(&SquareMatrix::identity(3), &p).unwrap().value, 2.0);
    }

    #[test]
    fn recursive_reported_value() {
        assert!((bound_recursive(&a5()).unwrap().value - 1.4138).abs() < 5e-4);
    }

    #[test]
    fn scaled_recursive_examples() {
        assert!((bound_scaled_recursive(&a2(), &half(&a2())).unwrap().value - 0.7422).abs() < 5e-4);
        let id = SquareMatrix::identity(3);
        assert_relative_eq!(bound_scaled_recursive(&id, &half(&id)).unwrap().value, 1.0);
    }

    #[test]
    fn margins_equal_scaled_row_margins() {
        for a in [a1(), a2(), a5(), family(0.05)] {
            for plan in [half(&a), EpsilonPlan::full(&a, 0.3).unwrap()] {
                let r = bound_scaled_varah(&a, &plan).unwrap();
                let scaled = a.scale_columns(&r.scaling).unwrap();
                assert!(is_sdd(&scaled));
                let direct = crate::profile::varah_margins(&scaled);
                for (m, d) in r.row_margins.iter().zip(&direct) {
                    assert_relative_eq!(*m, *d, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn one_norm_examples() {
        let r = one_norm_bound(&SquareMatrix::identity(3), 0.5).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.method, Method::OneNorm);
        for a in [a3(), a4()] {
            assert!(one_norm_bound(&a, 0.5).unwrap().value >= exact_inverse_one_norm(&a).unwrap());
        }
        let up = mat(&[&[1.0, 0.0], &[5.0, 1.0]]);
        assert_eq!(one_norm_bound(&up, 0.5), Err(Error::TransposeNotNekrasov { row: 0 }));
    }

    #[test]
    fn sigma_examples() {
        assert!((sigma_min_bound(&a3(), 0.5).unwrap().value - 0.3357).abs() < 5e-4);
        assert!((sigma_min_bound(&a4(), 0.5).unwrap().value - 0.8680).abs() < 5e-4);
        assert_relative_eq!(sigma_min_bound(&SquareMatrix::identity(3), 0.5).unwrap().value, 1.0);
        for a in [a3(), a4()] {
            assert!(sigma_min_bound(&a, 0.5).unwrap().value <= sigma_min_oracle(&a).unwrap());
        }
    }

    #[test]
    fn optimize_recovers_pivot_slack_row() {
        let (t, r) = optimize_t(&a1(), Method::ScaledVarah, DEFAULT_GRID_SIZE).unwrap();
        assert!(t > 0.0 && t < 1.0);
        assert!(r.value <= 0.3474 + 5e-3);
        assert!(r.value >= exact_inverse_inf_norm(&a1()).unwrap());

        let eps = 0.05;
        let (_, r) = optimize_t(&family(eps), Method::ScaledVarah, DEFAULT_GRID_SIZE).unwrap();
        let limit = 12.0 * (1.0 - 3.0 * eps / 8.0) / (1.0 + 3.0 * eps / 2.0);
        assert!((r.value - limit).abs() < 5e-3);
    }

    #[test]
    fn optimize_errors() {
        assert_eq!(optimize_t(&a1(), Method::ScaledVarah, 1), Err(Error::GridTooSmall(1)));
        assert_eq!(
            optimize_t(&a1(), Method::Recursive, 10),
            Err(Error::NoFreeParameter("cotak"))
        );
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn preconditions() {
        let bad = mat(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert_eq!(bound_recursive(&bad), Err(Error::NotNekrasov { row: 0 }));
        let plan = half(&a1());
        assert!(matches!(
            bound_scaled_varah(&a5(), &plan),
            Err(Error::InvalidPlan { .. })
        ));
    }
}
