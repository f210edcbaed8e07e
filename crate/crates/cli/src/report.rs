//! Machine-readable report documents and their aligned-text rendering.
//!
//! JSON layout (fields absent when empty):
//!
//! ```text
//! {
//!   "input":       { "source", "format"?, "n"? },
//!   "profile":     { "h", "z", "delta", "varah_margins", "is_sdd", "is_nekrasov" }?,
//!   "bounds":      [ { "kind": "bound" | "lcp", "subject", "report" } ],
//!   "scaling":     { "plan", "s", "scaled_is_sdd", "scaled_margins", "violations" }?,
//!   "oracle":      { "inverse_inf_norm"?, "inverse_one_norm"?, "sigma_min"?, ... }?,
//!   "comparisons": [ { "subject", "row", "method"?, "t"?, "eps"?, "computed"?,
//!                      "reported"?, "delta"?, "rule", "status" } ]?,
//!   "generated_at": <unix seconds>?
//! }
//! ```

use std::fmt::Write as _;

use nekrasov_core::bounds::BoundReport;
use nekrasov_core::lcp::LcpBoundReport;
use nekrasov_core::scaling::{EpsilonPlan, PlanViolation};
use nekrasov_core::{Method, NekrasovProfile};
use serde::Serialize;

use crate::io::Format;

#[derive(Debug, Clone, Serialize)]
pub struct InputDescriptor {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportEntry {
    Bound { subject: String, report: BoundReport },
    Lcp { subject: String, report: LcpBoundReport },
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingSection {
    pub plan: EpsilonPlan,
    pub s: Vec<f64>,
    pub scaled_is_sdd: bool,
    pub scaled_margins: Vec<f64>,
    pub violations: Vec<PlanViolation>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OracleValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inf_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_inf_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_one_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcp_reference_coefficient: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcp_solution: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcp_true_error: Option<f64>,
}

/// How a computed value is judged against its reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    Absolute { tol: f64 },
    Relative { tol: f64 },
    /// `floor <= computed <= reported + slack`.
    UpperTarget { slack: f64, floor: f64 },
    Below { limit: f64 },
    Above { limit: f64 },
    IncreasingAfter { previous: f64 },
    /// Computed for information, nothing to compare.
    Info,
    /// Published without disclosed parameters; not regenerated.
    ReportedOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Info,
    ReportedOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub subject: String,
    pub row: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reported: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(flatten)]
    pub rule: Rule,
    pub status: Status,
}

impl Comparison {
    /// Builds a comparison and judges it.
    pub fn new(
        subject: impl Into<String>,
        row: impl Into<String>,
        computed: Option<f64>,
        reported: Option<f64>,
        rule: Rule,
    ) -> Self {
        let delta = match (computed, reported) {
            (Some(c), Some(r)) => Some((c - r).abs()),
            _ => None,
        };
        let status = judge(computed, reported, rule);
        Self {
            subject: subject.into(),
            row: row.into(),
            method: None,
            t: None,
            eps: None,
            computed,
            reported,
            delta,
            rule,
            status,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = Some(method);
        self
    }

    /// Attaches the plan parameters that produced the value.
    pub fn with_plan(mut self, plan: Option<&EpsilonPlan>) -> Self {
        if let Some(p) = plan {
            self.t = p.t;
            self.eps = Some(p.eps.clone());
        }
        self
    }
}

fn judge(computed: Option<f64>, reported: Option<f64>, rule: Rule) -> Status {
    let Some(c) = computed else {
        return match rule {
            Rule::ReportedOnly => Status::ReportedOnly,
            // a value that should have been computed but was not
            _ => Status::Fail,
        };
    };
    let ok = match rule {
        Rule::ReportedOnly | Rule::Info => return Status::Info,
        Rule::Absolute { tol } => reported.is_some_and(|r| (c - r).abs() <= tol),
        Rule::Relative { tol } => reported.is_some_and(|r| (c - r).abs() <= tol * r.abs()),
        Rule::UpperTarget { slack, floor } => reported.is_some_and(|r| c <= r + slack) && c >= floor,
        Rule::Below { limit } => c <= limit,
        Rule::Above { limit } => c > limit,
        Rule::IncreasingAfter { previous } => c > previous,
    };
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub input: InputDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<NekrasovProfile>,
    pub bounds: Vec<ReportEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleValues>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparisons: Option<Vec<Comparison>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

impl ReportDocument {
    pub fn new(input: InputDescriptor) -> Self {
        Self {
            input,
            profile: None,
            bounds: Vec::new(),
            scaling: None,
            oracle: None,
            comparisons: None,
            generated_at: None,
        }
    }

    pub fn failures(&self) -> usize {
        self.comparisons
            .iter()
            .flatten()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self, precision: usize) -> String {
        let mut out = String::new();
        let f = |v: f64| format!("{v:.precision$}");
        let vec = |v: &[f64]| v.iter().map(|x| f(*x)).collect::<Vec<_>>().join(", ");

        let _ = write!(out, "input: {}", self.input.source);
        if let Some(n) = self.input.n {
            let _ = write!(out, " (n = {n})");
        }
        out.push('\n');
        if let Some(ts) = self.generated_at {
            let _ = writeln!(out, "generated at: {ts}");
        }

        if let Some(p) = &self.profile {
            let _ = writeln!(out, "\nprofile: sdd = {}, nekrasov = {}", p.is_sdd, p.is_nekrasov);
            let _ = writeln!(out, "{:>4}  {:>14}  {:>14}  {:>14}  {:>14}", "row", "h", "z", "delta", "row margin");
            for i in 0..p.h.len() {
                let _ = writeln!(
                    out,
                    "{:>4}  {:>14}  {:>14}  {:>14}  {:>14}",
                    i + 1,
                    f(p.h[i]),
                    f(p.z[i]),
                    f(p.delta[i]),
                    f(p.varah_margins[i])
                );
            }
        }

        if let Some(s) = &self.scaling {
            let _ = writeln!(out, "\nscaling ({}, pivot row {}):", s.plan.strategy, s.plan.k + 1);
            if let Some(t) = s.plan.t {
                let _ = writeln!(out, "  t       = {}", f(t));
            }
            let _ = writeln!(out, "  eps     = [{}]", vec(&s.plan.eps));
            let _ = writeln!(out, "  s       = [{}]", vec(&s.s));
            let _ = writeln!(out, "  margins = [{}]", vec(&s.scaled_margins));
            let _ = writeln!(out, "  AS is SDD: {}", s.scaled_is_sdd);
            for v in &s.violations {
                let _ = writeln!(out, "  violation: row {}: {}", v.row + 1, v.message);
            }
        }

        for entry in &self.bounds {
            match entry {
                ReportEntry::Bound { subject, report } => {
                    let _ = writeln!(out, "\n{subject}: {} = {}", report.method, f(report.value));
                    let _ = writeln!(out, "  numerator   = {}", f(report.numerator));
                    let _ = writeln!(out, "  row margins = [{}] (min at row {})", vec(&report.row_margins), report.argmin_row + 1);
                    if let Some(plan) = &report.plan {
                        if let Some(t) = plan.t {
                            let _ = writeln!(out, "  t           = {}", f(t));
                        }
                        let _ = writeln!(out, "  eps         = [{}] (pivot row {})", vec(&plan.eps), plan.k + 1);
                    }
                    if let Some(tr) = &report.transpose {
                        let _ = writeln!(out, "  transpose margins = [{}]", vec(&tr.row_margins));
                    }
                }
                ReportEntry::Lcp { subject, report } => {
                    let _ = writeln!(out, "\n{subject}: lcp coefficient = {} ({:?} branch)", f(report.coefficient), report.branch);
                    let _ = writeln!(out, "  beta_bar = [{}]", vec(&report.beta_bar));
                    let _ = writeln!(out, "  s        = [{}]", vec(&report.scaling));
                    let _ = writeln!(out, "  eps      = [{}]", vec(&report.plan.eps));
                    if let Some(r) = report.error_radius {
                        let _ = writeln!(out, "  error radius = {}", f(r));
                    }
                }
            }
        }

        if let Some(o) = &self.oracle {
            let _ = writeln!(out, "\noracle:");
            let items = [
                ("||A||_inf", o.inf_norm),
                ("||A||_1", o.one_norm),
                ("||A^-1||_inf", o.inverse_inf_norm),
                ("||A^-1||_1", o.inverse_one_norm),
                ("sigma_min", o.sigma_min),
                ("lcp reference coefficient", o.lcp_reference_coefficient),
                ("lcp true error", o.lcp_true_error),
            ];
            for (name, v) in items {
                if let Some(v) = v {
                    let _ = writeln!(out, "  {name} = {}", f(v));
                }
            }
            if let Some(x) = &o.lcp_solution {
                let _ = writeln!(out, "  lcp solution = [{}]", vec(x));
            }
        }

        if let Some(cs) = &self.comparisons {
            let _ = writeln!(
                out,
                "\n{:<10} {:<16} {:>14} {:>14} {:>12}  status",
                "subject", "row", "computed", "reported", "delta"
            );
            let opt = |v: Option<f64>| v.map(f).unwrap_or_else(|| "-".into());
            for c in cs {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Info => "info",
                    Status::ReportedOnly => "reported-only",
                };
                let _ = writeln!(
                    out,
                    "{:<10} {:<16} {:>14} {:>14} {:>12}  {status}",
                    c.subject,
                    c.row,
                    opt(c.computed),
                    opt(c.reported),
                    opt(c.delta)
                );
            }
            let _ = writeln!(out, "\n{} failure(s)", self.failures());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        let c = |computed, reported, rule| Comparison::new("A", "r", computed, reported, rule).status;
        assert_eq!(c(Some(1.0), Some(1.0004), Rule::Absolute { tol: 5e-4 }), Status::Pass);
        assert_eq!(c(Some(1.0), Some(1.0006), Rule::Absolute { tol: 5e-4 }), Status::Fail);
        assert_eq!(c(Some(2.0), Some(2.0 + 1e-10), Rule::Relative { tol: 1e-9 }), Status::Pass);
        assert_eq!(
            c(Some(0.3), Some(0.3474), Rule::UpperTarget { slack: 5e-3, floor: 0.19 }),
            Status::Pass
        );
        assert_eq!(
            c(Some(0.1), Some(0.3474), Rule::UpperTarget { slack: 5e-3, floor: 0.19 }),
            Status::Fail
        );
        assert_eq!(c(None, Some(0.2), Rule::ReportedOnly), Status::ReportedOnly);
        assert_eq!(c(None, Some(0.2), Rule::Absolute { tol: 1.0 }), Status::Fail);
        assert_eq!(c(Some(3.0), None, Rule::IncreasingAfter { previous: 2.0 }), Status::Pass);
        assert_eq!(c(Some(3.0), None, Rule::Above { limit: 3.0 }), Status::Fail);
    }

    #[test]
    fn json_shape() {
        let mut doc = ReportDocument::new(InputDescriptor {
            source: "x".into(),
            format: Some(Format::Csv),
            n: Some(2),
        });
        doc.comparisons = Some(vec![Comparison::new("A1", "exact", Some(1.0), Some(1.0), Rule::Absolute { tol: 1e-3 })]);
        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["input"]["format"], "csv");
        assert_eq!(v["bounds"].as_array().unwrap().len(), 0);
        assert!(v.get("profile").is_none());
        assert_eq!(v["comparisons"][0]["rule"], "absolute");
        assert_eq!(v["comparisons"][0]["status"], "pass");
    }
}
