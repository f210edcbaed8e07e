//! Regenerates the published tables and examples and compares each value
//! with its stored counterpart.

use std::fmt;

use nekrasov_core::bounds::{self, DEFAULT_GRID_SIZE};
use nekrasov_core::lcp::{lcp_coefficient, lcp_coefficient_with_plan, lcp_reference_coefficient};
use nekrasov_core::oracle::{exact_inverse_inf_norm, sigma_min_oracle};
use nekrasov_core::profile::h_values;
use nekrasov_core::scaling::{EpsilonPlan, DEFAULT_T};
use nekrasov_core::{Method, Result};

use crate::fixtures::{self, ReportedTable, RowKind};
use crate::report::{Comparison, Rule};

/// Tolerance on directly regenerated four-decimal values.
pub const TABLE_TOL: f64 = 5e-4;
/// Slack allowed above a published sweep minimum.
pub const SWEEP_SLACK: f64 = 5e-3;
/// Tolerance on closed-form identities.
pub const CLOSED_FORM_REL_TOL: f64 = 1e-9;
/// Tolerance on the published smallest singular values.
pub const SIGMA_TOL: f64 = 1e-3;

pub const EX41_EPS: [f64; 3] = [0.01, 0.05, 0.09];
pub const EX41_TINY_EPS: f64 = 1e-6;
pub const EX51_K: [f64; 4] = [3.0, 10.0, 100.0, 1000.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Table3,
    Table4,
    Ex41,
    Ex42,
    Ex51,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Table3 => "table3",
            Target::Table4 => "table4",
            Target::Ex41 => "ex41",
            Target::Ex42 => "ex42",
            Target::Ex51 => "ex51",
        })
    }
}

pub fn run(target: Target, grid: usize) -> Result<Vec<Comparison>> {
    match target {
        Target::Table3 => table(&fixtures::TABLE3, grid),
        Target::Table4 => table(&fixtures::TABLE4, grid),
        Target::Ex41 => ex41(grid),
        Target::Ex42 => ex42(),
        Target::Ex51 => ex51(),
    }
}

pub fn run_default(target: Target) -> Result<Vec<Comparison>> {
    run(target, DEFAULT_GRID_SIZE)
}

pub fn table(tab: &ReportedTable, grid: usize) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for (col, name) in tab.matrices.iter().enumerate() {
        let a = tab.matrix(col);
        let exact = exact_inverse_inf_norm(&a)?;
        for row in tab.rows {
            let reported = row.values[col];
            let c = match row.kind {
                RowKind::ExactNorm => Comparison::new(
                    *name,
                    row.label,
                    Some(exact),
                    Some(reported),
                    Rule::Absolute { tol: TABLE_TOL },
                ),
                RowKind::Direct(method) => {
                    let rep = bounds::evaluate(&a, method, DEFAULT_T)?;
                    Comparison::new(*name, row.label, Some(rep.value), Some(reported), Rule::Absolute { tol: TABLE_TOL })
                        .with_method(method)
                        .with_plan(rep.plan.as_ref())
                }
                RowKind::Sweep(method) => {
                    let (_, rep) = bounds::optimize_t(&a, method, grid)?;
                    Comparison::new(
                        *name,
                        row.label,
                        Some(rep.value),
                        Some(reported),
                        Rule::UpperTarget {
                            slack: SWEEP_SLACK,
                            floor: exact,
                        },
                    )
                    .with_method(method)
                    .with_plan(rep.plan.as_ref())
                }
                RowKind::ReportedOnly => Comparison::new(*name, row.label, None, Some(reported), Rule::ReportedOnly),
            };
            out.push(c);
        }
    }
    Ok(out)
}

pub fn ex41(grid: usize) -> Result<Vec<Comparison>> {
    let rel = Rule::Relative { tol: CLOSED_FORM_REL_TOL };
    let mut out = Vec::new();
    for eps in EX41_EPS {
        let a = fixtures::ex41(eps);
        let subject = format!("EX41:{eps}");
        let h = h_values(&a)?;
        for (i, (hc, hr)) in h.iter().zip(fixtures::ex41_h(eps)).enumerate() {
            out.push(Comparison::new(&subject, format!("h{}", i + 1), Some(*hc), Some(hr), rel));
        }
        let cotak = bounds::evaluate(&a, Method::Recursive, DEFAULT_T)?;
        out.push(
            Comparison::new(&subject, "cotak", Some(cotak.value), Some(fixtures::ex41_recursive(eps)), rel)
                .with_method(Method::Recursive),
        );
        let half = bounds::evaluate(&a, Method::ScaledVarah, DEFAULT_T)?;
        out.push(
            Comparison::new(&subject, "cotanek@half", Some(half.value), Some(fixtures::ex41_half_slack(eps)), rel)
                .with_method(Method::ScaledVarah)
                .with_plan(half.plan.as_ref()),
        );
        let (_, sweep) = bounds::optimize_t(&a, Method::ScaledVarah, grid)?;
        out.push(
            Comparison::new(
                &subject,
                "cotanek@sweep",
                Some(sweep.value),
                Some(fixtures::ex41_sweep(eps)),
                Rule::Absolute { tol: SWEEP_SLACK },
            )
            .with_method(Method::ScaledVarah)
            .with_plan(sweep.plan.as_ref()),
        );
        out.push(Comparison::new(&subject, "cotanek@full", None, Some(12.0), Rule::ReportedOnly));
        let exact = exact_inverse_inf_norm(&a)?;
        out.push(Comparison::new(
            &subject,
            "exact",
            Some(exact),
            Some(fixtures::EX41_INVERSE_NORM_BOUND),
            Rule::Below {
                limit: fixtures::EX41_INVERSE_NORM_BOUND,
            },
        ));
    }

    // near the end of the admissible range the unscaled bound blows up
    let a = fixtures::ex41(EX41_TINY_EPS);
    let subject = format!("EX41:{EX41_TINY_EPS}");
    let cotak = bounds::evaluate(&a, Method::Recursive, DEFAULT_T)?;
    out.push(
        Comparison::new(&subject, "cotak", Some(cotak.value), None, Rule::Above { limit: 1e6 })
            .with_method(Method::Recursive),
    );
    let half = bounds::evaluate(&a, Method::ScaledVarah, DEFAULT_T)?;
    out.push(
        Comparison::new(&subject, "cotanek@half", Some(half.value), None, Rule::Below { limit: 16.0 })
            .with_method(Method::ScaledVarah)
            .with_plan(half.plan.as_ref()),
    );
    Ok(out)
}

pub fn ex42() -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for ex in &fixtures::EX42 {
        let a = fixtures::named(ex.matrix).expect("fixture exists");
        let n = a.n();
        let plan = EpsilonPlan::pivoted(&a, DEFAULT_T)?;
        let abs = Rule::Absolute { tol: TABLE_TOL };
        out.push(
            Comparison::new(ex.matrix, format!("eps{n}"), Some(plan.eps[n - 1]), Some(ex.half_slack), abs)
                .with_plan(Some(&plan)),
        );
        let rep = bounds::evaluate(&a, Method::SigmaMin, DEFAULT_T)?;
        out.push(
            Comparison::new(ex.matrix, "sigmamin", Some(rep.value), Some(ex.bound), abs)
                .with_method(Method::SigmaMin)
                .with_plan(rep.plan.as_ref()),
        );
        let sigma = sigma_min_oracle(&a)?;
        out.push(Comparison::new(
            ex.matrix,
            "sigma",
            Some(sigma),
            Some(ex.sigma_min),
            Rule::Absolute { tol: SIGMA_TOL },
        ));
        out.push(Comparison::new(
            ex.matrix,
            "sound",
            Some(rep.value),
            Some(sigma),
            Rule::Below { limit: sigma },
        ));
    }
    Ok(out)
}

pub fn ex51() -> Result<Vec<Comparison>> {
    let rel = Rule::Relative { tol: CLOSED_FORM_REL_TOL };
    let mut out = Vec::new();
    let mut previous_ratio: Option<f64> = None;
    for k in EX51_K {
        let a = fixtures::ex51(k);
        let subject = format!("EX51:{k}");
        let h = h_values(&a)?;
        for (i, (hc, hr)) in h.iter().zip(fixtures::ex51_h(k)).enumerate() {
            out.push(Comparison::new(&subject, format!("h{}", i + 1), Some(*hc), Some(hr), rel));
        }
        let plan = EpsilonPlan::pivoted_with_eps(&a, fixtures::ex51_eps(k));
        let rep = lcp_coefficient_with_plan(&a, &plan)?;
        out.push(
            Comparison::new(&subject, "coefficient", Some(rep.coefficient), Some(fixtures::ex51_coefficient(k)), rel)
                .with_plan(Some(&plan)),
        );
        let reference = lcp_reference_coefficient(&a)?;
        out.push(Comparison::new(
            &subject,
            "reference",
            Some(reference),
            Some(fixtures::ex51_reference(k)),
            rel,
        ));
        let generic = lcp_coefficient(&a, DEFAULT_T)?;
        out.push(
            Comparison::new(&subject, "coefficient@half", Some(generic.coefficient), None, Rule::Info)
                .with_plan(Some(&generic.plan)),
        );
        out.push(Comparison::new(
            &subject,
            "external",
            None,
            Some(fixtures::ex51_external(k)),
            Rule::ReportedOnly,
        ));
        let ratio = reference / rep.coefficient;
        let rule = match previous_ratio {
            Some(previous) => Rule::IncreasingAfter { previous },
            None => Rule::Info,
        };
        out.push(Comparison::new(&subject, "ratio", Some(ratio), None, rule));
        previous_ratio = Some(ratio);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn fails(cs: &[Comparison]) -> Vec<String> {
        cs.iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| format!("{} {}", c.subject, c.row))
            .collect()
    }

    #[test]
    fn examples_pass() {
        assert!(fails(&ex41(200).unwrap()).is_empty(), "{:?}", fails(&ex41(200).unwrap()));
        assert!(fails(&ex42().unwrap()).is_empty());
        assert!(fails(&ex51().unwrap()).is_empty(), "{:?}", fails(&ex51().unwrap()));
    }

    #[test]
    fn tables_with_coarse_grid() {
        assert!(fails(&table(&fixtures::TABLE3, 1000).unwrap()).is_empty());
        assert_eq!(fails(&table(&fixtures::TABLE4, 1000).unwrap()), vec!["AH2 exact".to_string()]);
    }
}
