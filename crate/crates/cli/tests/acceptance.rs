//! Acceptance checks. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.

use nekrasov_cli::fixtures::{self, ReportedTable, RowKind, TABLE3, TABLE4};
use nekrasov_core::bounds::{self, margin_terms, DEFAULT_GRID_SIZE};
use nekrasov_core::lcp::{
    lcp_coefficient_with_plan, lcp_reference_coefficient, lcp_report, solve_by_enumeration, LcpInstance,
};
use nekrasov_core::oracle::{exact_inverse_inf_norm, exact_inverse_one_norm, sigma_min_oracle};
use nekrasov_core::profile::{is_sdd, profile, z_values};
use nekrasov_core::random::{random_bi_nekrasov, random_nekrasov, random_sdd, RandomSpec};
use nekrasov_core::scaling::{apply_scaling, build_scaling, EpsilonPlan, Strategy, DEFAULT_T};
use nekrasov_core::{Method, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_TOL: f64 = 5e-4;
const SWEEP_SLACK: f64 = 5e-3;
const CLOSED_FORM_REL_TOL: f64 = 1e-9;
const SIGMA_TOL: f64 = 1e-3;
const IDENTITY_REL_TOL: f64 = 1e-10;
// bound >= oracle * (1 - ROUNDING)
const ROUNDING: f64 = 1e-12;

const PROPERTY_CASES: usize = 1000;
const LCP_CASES: usize = 200;
const SEED: u64 = 0x6e65_6b72;

type Criterion = (&'static str, &'static str, fn() -> Outcome);

struct Outcome {
    problems: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn new() -> Self {
        Self {
            problems: Vec::new(),
            checked: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.problems.push(what());
        }
    }
}

fn abs_close(c: f64, r: f64, tol: f64) -> bool {
    (c - r).abs() <= tol
}

fn rel_close(c: f64, r: f64, tol: f64) -> bool {
    (c - r).abs() <= tol * r.abs()
}

fn dominates(bound: f64, oracle: f64) -> bool {
    bound >= oracle * (1.0 - ROUNDING)
}

fn table_row(out: &mut Outcome, tab: &ReportedTable, label: &str, compute: impl Fn(&SquareMatrix) -> f64) {
    let row = tab.row(label).expect("row exists");
    for (col, name) in tab.matrices.iter().enumerate() {
        let c = compute(&tab.matrix(col));
        let r = row.values[col];
        out.check(abs_close(c, r, TABLE_TOL), || {
            format!("{} {name} {label}: computed {c:.6}, reported {r:.4}", tab.name)
        });
    }
}

fn c1() -> Outcome {
    let mut out = Outcome::new();
    for tab in [&TABLE3, &TABLE4] {
        table_row(&mut out, tab, "exact", |a| exact_inverse_inf_norm(a).unwrap());
    }
    out
}

fn direct(out: &mut Outcome, label: &str, method: Method) {
    for tab in [&TABLE3, &TABLE4] {
        assert_eq!(tab.row(label).unwrap().kind, RowKind::Direct(method));
        table_row(out, tab, label, |a| bounds::evaluate(a, method, DEFAULT_T).unwrap().value);
    }
}

fn c2() -> Outcome {
    let mut out = Outcome::new();
    direct(&mut out, "cotak", Method::Recursive);
    out
}

fn c3() -> Outcome {
    let mut out = Outcome::new();
    direct(&mut out, "cotanek@half", Method::ScaledVarah);
    out
}

fn c4() -> Outcome {
    let mut out = Outcome::new();
    direct(&mut out, "cotarev@half", Method::ScaledRecursive);
    out
}

fn c5() -> Outcome {
    let mut out = Outcome::new();
    for tab in [&TABLE3, &TABLE4] {
        for (label, method) in [
            ("cotanek@sweep", Method::ScaledVarah),
            ("cotarev@sweep", Method::ScaledRecursive),
        ] {
            let row = tab.row(label).unwrap();
            for (col, name) in tab.matrices.iter().enumerate() {
                let a = tab.matrix(col);
                let exact = exact_inverse_inf_norm(&a).unwrap();
                let (t, rep) = bounds::optimize_t(&a, method, DEFAULT_GRID_SIZE).unwrap();
                let r = row.values[col];
                out.check(rep.value <= r + SWEEP_SLACK && rep.value >= exact, || {
                    format!(
                        "{} {name} {label}: sweep {:.6} at t = {t:.4}, target {r:.4}, exact {exact:.6}",
                        tab.name, rep.value
                    )
                });
            }
        }
    }
    out
}

fn c6() -> Outcome {
    let mut out = Outcome::new();
    for eps in [0.01, 0.05, 0.09] {
        let a = fixtures::ex41(eps);
        let cotak = bounds::evaluate(&a, Method::Recursive, DEFAULT_T).unwrap().value;
        let expected = 16.0 / (9.0 * eps) - 1.0 / 3.0;
        out.check(rel_close(cotak, expected, CLOSED_FORM_REL_TOL), || {
            format!("eps = {eps}: cotak {cotak}, expected {expected}")
        });
        let half = bounds::evaluate(&a, Method::ScaledVarah, DEFAULT_T).unwrap().value;
        let expected = 16.0 * (1.0 - 3.0 * eps / 8.0) / (1.0 + 3.0 * eps / 2.0);
        out.check(rel_close(half, expected, CLOSED_FORM_REL_TOL), || {
            format!("eps = {eps}: cotanek {half}, expected {expected}")
        });
    }
    let a = fixtures::ex41(1e-6);
    let cotak = bounds::evaluate(&a, Method::Recursive, DEFAULT_T).unwrap().value;
    out.check(cotak > 1e6, || format!("eps = 1e-6: cotak {cotak} not above 1e6"));
    let half = bounds::evaluate(&a, Method::ScaledVarah, DEFAULT_T).unwrap().value;
    out.check(half <= 16.0, || format!("eps = 1e-6: cotanek {half} above 16"));
    out
}

fn c7() -> Outcome {
    let mut out = Outcome::new();
    let published = [("A3", 0.6572, 0.3357, 1.0943), ("A4", 3.9646, 0.8680, 4.2327)];
    for (name, half_slack, bound, sigma) in published {
        let a = fixtures::named(name).unwrap();
        let n = a.n();
        let plan = EpsilonPlan::pivoted(&a, DEFAULT_T).unwrap();
        let e = plan.eps[n - 1];
        out.check(abs_close(e, half_slack, TABLE_TOL), || {
            format!("{name}: eps{n} = {e:.6}, reported {half_slack}")
        });
        let b = bounds::evaluate(&a, Method::SigmaMin, DEFAULT_T).unwrap().value;
        out.check(abs_close(b, bound, TABLE_TOL), || {
            format!("{name}: sigma bound {b:.6}, reported {bound}")
        });
        let s = sigma_min_oracle(&a).unwrap();
        out.check(abs_close(s, sigma, SIGMA_TOL), || format!("{name}: sigma_min {s:.6}, reported {sigma}"));
    }
    out
}

fn c8() -> Outcome {
    let mut out = Outcome::new();
    let mut ratios = Vec::new();
    for k in [3.0, 10.0, 100.0] {
        let a = fixtures::ex51(k);
        let plan = EpsilonPlan::pivoted_with_eps(&a, fixtures::ex51_eps(k));
        let c = lcp_coefficient_with_plan(&a, &plan).unwrap().coefficient;
        let expected = 4.0 * k.powi(3) / (2.0 * k.powi(3) - 2.0 * k * k - 2.0 * k + 1.0);
        out.check(rel_close(c, expected, CLOSED_FORM_REL_TOL), || {
            format!("K = {k}: coefficient {c}, expected {expected}")
        });
        let r = lcp_reference_coefficient(&a).unwrap();
        let expected = (2.0 * k.powi(3) + 2.0 * k) / (k * k - 1.0);
        out.check(rel_close(r, expected, CLOSED_FORM_REL_TOL), || {
            format!("K = {k}: reference {r}, expected {expected}")
        });
        ratios.push(r / c);
    }
    out.check(ratios.windows(2).all(|w| w[1] > w[0]), || {
        format!("ratios not increasing: {ratios:?}")
    });
    out
}

fn plans(a: &SquareMatrix) -> Vec<EpsilonPlan> {
    let mut v = Vec::new();
    for strategy in [Strategy::Full, Strategy::Pivoted] {
        for t in [0.1, 0.5, 0.9] {
            v.push(EpsilonPlan::new(a, strategy, t).expect("plan for a Nekrasov matrix"));
        }
    }
    v
}

fn c9() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let spec = RandomSpec::default();

    for case in 0..PROPERTY_CASES {
        let n = rng.random_range(1..=8);
        let a = random_nekrasov(&mut rng, n, &spec);
        let prof = profile(&a).unwrap();
        out.check(prof.is_nekrasov, || format!("case {case}: generator produced a non-Nekrasov matrix"));
        let exact = exact_inverse_inf_norm(&a).unwrap();
        let z = z_values(&a).unwrap();

        let cotak = bounds::bound_recursive(&a).unwrap().value;
        out.check(dominates(cotak, exact), || format!("case {case}: cotak {cotak} < exact {exact}"));
        if prof.is_sdd {
            let varah = bounds::varah_bound(&a).unwrap().value;
            out.check(dominates(varah, exact), || format!("case {case}: varah {varah} < exact {exact}"));
        }

        for plan in plans(&a) {
            let tag = format!("case {case} ({} t = {:?})", plan.strategy, plan.t);
            for method in [Method::ScaledVarah, Method::ScaledVarahUnit, Method::ScaledRecursive] {
                let b = bounds::evaluate_with_plan(&a, method, &plan).unwrap().value;
                out.check(dominates(b, exact), || format!("{tag}: {method} {b} < exact {exact}"));
            }
            let s = build_scaling(&a, &plan).unwrap();
            let scaled = apply_scaling(&a, &s).unwrap();
            out.check(is_sdd(&scaled), || format!("{tag}: AS is not SDD"));

            let zs = z_values(&scaled).unwrap();
            for i in 0..n {
                out.check(rel_close(zs[i], z[i], IDENTITY_REL_TOL), || {
                    format!("{tag}: z{} changed from {} to {}", i + 1, z[i], zs[i])
                });
            }

            let terms = margin_terms(&a, &prof, &plan.eps);
            for i in 0..n {
                let row = scaled.row(i);
                let off: f64 = (0..n).filter(|&j| j != i).map(|j| row[j].abs()).sum();
                let beta_bar = row[i].abs() - off;
                let m = terms.margins[i];
                out.check(rel_close(beta_bar, m, IDENTITY_REL_TOL), || {
                    format!("{tag}: row {} beta_bar {beta_bar} vs margin {m}", i + 1)
                });
            }
        }
    }

    // the transpose-based bounds need a Nekrasov transpose
    for case in 0..PROPERTY_CASES {
        let n = rng.random_range(1..=8);
        let a = random_bi_nekrasov(&mut rng, n, &spec);
        let one = exact_inverse_one_norm(&a).unwrap();
        let sigma = sigma_min_oracle(&a).unwrap();
        for t in [0.1, 0.5, 0.9] {
            let b = bounds::one_norm_bound(&a, t).unwrap().value;
            out.check(dominates(b, one), || format!("bi case {case} t = {t}: onenorm {b} < {one}"));
            let s = bounds::sigma_min_bound(&a, t).unwrap().value;
            out.check(sigma >= s * (1.0 - ROUNDING), || {
                format!("bi case {case} t = {t}: sigmamin {s} > sigma_min {sigma}")
            });
        }
    }

    for case in 0..PROPERTY_CASES {
        let n = rng.random_range(1..=8);
        let a = random_sdd(&mut rng, n, &spec);
        let cotak = bounds::bound_recursive(&a).unwrap().value;
        let varah = bounds::varah_bound(&a).unwrap().value;
        out.check(cotak <= varah * (1.0 + ROUNDING), || {
            format!("sdd case {case}: cotak {cotak} > varah {varah}")
        });
    }
    out
}

fn c10() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1c9);
    let spec = RandomSpec {
        positive_diagonal: true,
        ..RandomSpec::default()
    };
    for case in 0..LCP_CASES {
        let n = rng.random_range(1..=4);
        let a = random_nekrasov(&mut rng, n, &spec);
        let q: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..=10.0)).collect();
        let solution = solve_by_enumeration(&a, &q).unwrap();
        // candidates: the solution itself, small and large perturbations
        for scale in [0.0, 1e-3, 1.0, 10.0] {
            let x: Vec<f64> = solution
                .iter()
                .map(|v| v + scale * rng.random_range(-1.0..=1.0))
                .collect();
            let truth = x.iter().zip(&solution).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
            let inst = LcpInstance::new(a.clone(), q.clone(), Some(x)).unwrap();
            for t in [0.1, 0.5, 0.9] {
                let radius = lcp_report(&inst, t).unwrap().error_radius.unwrap();
                // an exact candidate may carry rounding-level residue on both sides
                let allowance = ROUNDING * (truth + 1.0 + solution.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
                out.check(radius + allowance >= truth, || {
                    format!("case {case} scale {scale} t = {t}: radius {radius} < true error {truth}")
                });
            }
        }
    }
    out
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("C1", "exact inverse norms, tables 3 and 4", c1),
        ("C2", "recursive bound rows", c2),
        ("C3", "scaled Varah bound rows at half slack", c3),
        ("C4", "scaled recursive bound rows at half slack", c4),
        ("C5", "t-sweep rows (grid 10^4)", c5),
        ("C6", "one-parameter family closed forms and blow-up contrast", c6),
        ("C7", "singular value example", c7),
        ("C8", "LCP family coefficients and ratio growth", c8),
        ("C9", "random property suites", c9),
        ("C10", "LCP error radius soundness", c10),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = std::time::Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        if out.problems.is_empty() {
            println!("[PASS] {id} {title}: {} checks ({secs:.2}s)", out.checked);
        } else {
            failed += 1;
            println!(
                "[FAIL] {id} {title}: {} of {} checks failed ({secs:.2}s)",
                out.problems.len(),
                out.checked
            );
            for p in out.problems.iter().take(10) {
                println!("       {p}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
