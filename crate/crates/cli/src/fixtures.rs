//! Built-in test matrices and the published values they are compared with.
//!
//! The six base matrices `A1..A6` and their one-entry variants `AH1..AH6`
//! are the standard Nekrasov test set. `ex41(eps)` is a 3x3 family whose
//! recursive bound blows up as `eps -> 0`; `ex51(k)` is a 3x3 family used for
//! LCP error bounds. Published numbers are stored as constants and never
//! recomputed.

use nekrasov_core::{Method, SquareMatrix};

fn m(rows: &[&[f64]]) -> SquareMatrix {
    SquareMatrix::from_rows(rows.iter().copied()).expect("fixture is square")
}

pub fn a1() -> SquareMatrix {
    m(&[
        &[-7.0, 1.0, -0.2, 2.0],
        &[7.0, 88.0, 2.0, -3.0],
        &[2.0, 0.5, 13.0, -2.0],
        &[0.5, 3.0, 1.0, 6.0],
    ])
}

pub fn a2() -> SquareMatrix {
    m(&[
        &[8.0, 1.0, -0.2, 3.3],
        &[7.0, 13.0, 2.0, -3.0],
        &[-1.3, 6.7, 13.0, -2.0],
        &[0.5, 3.0, 1.0, 6.0],
    ])
}

pub fn a3() -> SquareMatrix {
    m(&[
        &[21.0, -9.1, -4.2, -2.1],
        &[-0.7, 9.1, -4.2, -2.1],
        &[-0.7, -0.7, 4.9, -2.1],
        &[-0.7, -0.7, -0.7, 2.8],
    ])
}

pub fn a4() -> SquareMatrix {
    m(&[
        &[5.0, 1.0, 0.2, 2.0],
        &[1.0, 21.0, 1.0, -3.0],
        &[2.0, 0.5, 6.4, -2.0],
        &[0.5, -1.0, 1.0, 9.0],
    ])
}

pub fn a5() -> SquareMatrix {
    m(&[&[6.0, -3.0, -2.0], &[-1.0, 11.0, -8.0], &[-7.0, -3.0, 10.0]])
}

pub fn a6() -> SquareMatrix {
    m(&[
        &[8.0, -0.5, -0.5, -0.5],
        &[-9.0, 16.0, -5.0, -5.0],
        &[-6.0, -4.0, 15.0, -3.0],
        &[-4.9, -0.9, -0.9, 6.0],
    ])
}

pub fn ah1() -> SquareMatrix {
    a1().with_entry(0, 2, -3.9)
}

pub fn ah2() -> SquareMatrix {
    a2().with_entry(2, 0, -11.0)
}

pub fn ah3() -> SquareMatrix {
    a3().with_entry(1, 3, -4.2)
}

pub fn ah4() -> SquareMatrix {
    a4().with_entry(3, 2, 15.0)
}

pub fn ah5() -> SquareMatrix {
    a5().with_entry(1, 1, 9.0)
}

pub fn ah6() -> SquareMatrix {
    a6().with_entry(1, 0, -31.9)
}

/// Nekrasov for `0 < eps < 1/10`.
pub fn ex41(eps: f64) -> SquareMatrix {
    m(&[&[4.0, 2.0, 1.0], &[4.0 / 3.0 - eps, 2.0, 1.0], &[1.0, 1.0, 2.0]])
}

/// Nekrasov with positive diagonal for `k > 2`.
pub fn ex51(k: f64) -> SquareMatrix {
    m(&[&[k, -k + 2.0, -1.0], &[-k, k, 0.0], &[-k, -1.0 / k, k]])
}

/// Published slack vector for [`ex51`]: the midpoint of each admissible
/// interval.
pub fn ex51_eps(k: f64) -> Vec<f64> {
    vec![0.0, 0.5, (2.0 * k * k - 2.0 * k + 3.0) / (4.0 * k * k)]
}

pub const BASE_NAMES: [&str; 6] = ["A1", "A2", "A3", "A4", "A5", "A6"];
pub const VARIANT_NAMES: [&str; 6] = ["AH1", "AH2", "AH3", "AH4", "AH5", "AH6"];

/// Looks up a fixture by name: `A1..A6`, `AH1..AH6`, `EX41:<eps>`,
/// `EX51:<k>` (case-insensitive).
pub fn named(name: &str) -> Option<SquareMatrix> {
    let upper = name.to_ascii_uppercase();
    if let Some((family, param)) = upper.split_once(':') {
        let p: f64 = param.parse().ok()?;
        return match family {
            "EX41" if p > 0.0 && p < 0.1 => Some(ex41(p)),
            "EX51" if p > 2.0 => Some(ex51(p)),
            _ => None,
        };
    }
    Some(match upper.as_str() {
        "A1" => a1(),
        "A2" => a2(),
        "A3" => a3(),
        "A4" => a4(),
        "A5" => a5(),
        "A6" => a6(),
        "AH1" => ah1(),
        "AH2" => ah2(),
        "AH3" => ah3(),
        "AH4" => ah4(),
        "AH5" => ah5(),
        "AH6" => ah6(),
        _ => return None,
    })
}

/// How a published row is regenerated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RowKind {
    /// `||A^-1||_inf` by explicit inversion.
    ExactNorm,
    /// Method evaluated with no plan or with the `t = 1/2` pivoted plan.
    Direct(Method),
    /// Best value over a t-sweep; the published value is an upper target.
    Sweep(Method),
    /// Generating parameters are unknown; shown for reference only.
    ReportedOnly,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportedRow {
    pub label: &'static str,
    pub kind: RowKind,
    pub values: [f64; 6],
}

#[derive(Debug, Clone, Copy)]
pub struct ReportedTable {
    pub name: &'static str,
    pub matrices: [&'static str; 6],
    pub rows: &'static [ReportedRow],
}

impl ReportedTable {
    pub fn matrix(&self, col: usize) -> SquareMatrix {
        named(self.matrices[col]).expect("table names a fixture")
    }

    pub fn row(&self, label: &str) -> Option<&ReportedRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

pub const TABLE3: ReportedTable = ReportedTable {
    name: "table3",
    matrices: BASE_NAMES,
    rows: &[
        ReportedRow {
            label: "exact",
            kind: RowKind::ExactNorm,
            values: [0.1921, 0.2390, 0.8759, 0.2707, 1.1519, 0.4474],
        },
        ReportedRow {
            label: "cotak",
            kind: RowKind::Direct(Method::Recursive),
            values: [0.2632, 0.5365, 0.9676, 0.5556, 1.4138, 0.4928],
        },
        ReportedRow {
            label: "external",
            kind: RowKind::ReportedOnly,
            values: [0.2505, 0.5365, 0.9676, 0.5038, 1.4138, 0.4928],
        },
        ReportedRow {
            label: "cotanek@half",
            kind: RowKind::Direct(Method::ScaledVarah),
            values: [0.6398, 1.4406, 1.5527, 0.7264, 1.2974, 1.2893],
        },
        ReportedRow {
            label: "cotarev@half",
            kind: RowKind::Direct(Method::ScaledRecursive),
            values: [0.4992, 0.7422, 1.0632, 0.5596, 1.2809, 1.2893],
        },
        ReportedRow {
            label: "cotanek@sweep",
            kind: RowKind::Sweep(Method::ScaledVarah),
            values: [0.3474, 0.8894, 1.3325, 0.4484, 1.1658, 1.0796],
        },
        ReportedRow {
            label: "cotarev@sweep",
            kind: RowKind::Sweep(Method::ScaledRecursive),
            values: [0.3074, 0.5684, 0.9735, 0.3817, 1.1658, 1.0436],
        },
        ReportedRow {
            label: "cotanek@full",
            kind: RowKind::ReportedOnly,
            values: [0.2354, 0.5260, 0.9273, 0.3168, 1.1588, 0.4527],
        },
    ],
};

pub const TABLE4: ReportedTable = ReportedTable {
    name: "table4",
    matrices: VARIANT_NAMES,
    rows: &[
        ReportedRow {
            label: "exact",
            kind: RowKind::ExactNorm,
            values: [0.2385, 0.9827, 1.0997, 0.2848, 2.4545, 0.9144],
        },
        ReportedRow {
            label: "cotak",
            kind: RowKind::Direct(Method::Recursive),
            values: [10.0000, 16.2005, 5.5357, 8.7889, 7.0000, 266.0000],
        },
        ReportedRow {
            label: "external",
            kind: RowKind::ReportedOnly,
            values: [0.3979, 16.2005, 5.5357, 8.7889, 7.0000, 266.0000],
        },
        ReportedRow {
            label: "cotanek@half",
            kind: RowKind::Direct(Method::ScaledVarah),
            values: [1.2345, 2.2098, 2.3120, 17.0569, 5.5208, 2.6020],
        },
        ReportedRow {
            label: "cotarev@half",
            kind: RowKind::Direct(Method::ScaledRecursive),
            values: [0.6144, 1.2071, 1.6377, 3.1074, 5.5208, 2.6020],
        },
        ReportedRow {
            label: "cotanek@sweep",
            kind: RowKind::Sweep(Method::ScaledVarah),
            values: [0.8230, 1.4732, 2.1018, 10.2316, 4.1085, 2.0316],
        },
        ReportedRow {
            label: "cotarev@sweep",
            kind: RowKind::Sweep(Method::ScaledRecursive),
            values: [0.5344, 0.9923, 1.5203, 3.0603, 3.4717, 1.9119],
        },
        ReportedRow {
            label: "cotanek@full",
            kind: RowKind::ReportedOnly,
            values: [0.3262, 1.2642, 1.1479, 6.6456, 2.6180, 2.0316],
        },
    ],
};

/// Published values for the singular-value example on `A3` and `A4`.
pub struct SigmaExample {
    pub matrix: &'static str,
    pub half_slack: f64,
    pub bound: f64,
    pub sigma_min: f64,
}

pub const EX42: [SigmaExample; 2] = [
    SigmaExample {
        matrix: "A3",
        half_slack: 0.6572,
        bound: 0.3357,
        sigma_min: 1.0943,
    },
    SigmaExample {
        matrix: "A4",
        half_slack: 3.9646,
        bound: 0.8680,
        sigma_min: 4.2327,
    },
];

/// Published upper bound on `||A^-1||_inf` for the whole [`ex41`] family.
pub const EX41_INVERSE_NORM_BOUND: f64 = 1.4167;

pub fn ex41_h(eps: f64) -> [f64; 3] {
    [3.0, 2.0 - 0.75 * eps, 1.75 - 0.375 * eps]
}

pub fn ex41_recursive(eps: f64) -> f64 {
    16.0 / (9.0 * eps) - 1.0 / 3.0
}

pub fn ex41_half_slack(eps: f64) -> f64 {
    16.0 * (1.0 - 3.0 * eps / 8.0) / (1.0 + 3.0 * eps / 2.0)
}

pub fn ex41_sweep(eps: f64) -> f64 {
    12.0 * (1.0 - 3.0 * eps / 8.0) / (1.0 + 3.0 * eps / 2.0)
}

pub fn ex51_h(k: f64) -> [f64; 3] {
    [k - 1.0, k - 1.0, k - 1.0 + (k - 1.0) / (k * k)]
}

pub fn ex51_coefficient(k: f64) -> f64 {
    4.0 * k.powi(3) / (2.0 * k.powi(3) - 2.0 * k * k - 2.0 * k + 1.0)
}

pub fn ex51_reference(k: f64) -> f64 {
    (2.0 * k.powi(3) + 2.0 * k) / (k * k - 1.0)
}

/// Closed form of two further published bounds for [`ex51`]; stored only.
pub fn ex51_external(k: f64) -> f64 {
    (2.0 * k.powi(3) + 2.0 * k * k) / (k * k - k + 1.0)
}
