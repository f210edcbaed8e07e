//! Argument parsing and command dispatch.

use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nekrasov_core::bounds::{self, DEFAULT_GRID_SIZE};
use nekrasov_core::lcp::{self, LcpInstance};
use nekrasov_core::oracle;
use nekrasov_core::profile::{self, varah_margins};
use nekrasov_core::scaling::{apply_scaling, build_scaling, EpsilonPlan, Strategy, DEFAULT_T};
use nekrasov_core::{Method, SquareMatrix};

use crate::fixtures;
use crate::io::{load_matrix, Format, IoError};
use crate::repro::{self, Target};
use crate::report::{InputDescriptor, OracleValues, ReportDocument, ReportEntry, ScalingSection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_REPRO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nekrasov", version, about = "Nekrasov matrix certificates and inverse-norm bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Decimal digits in text output.
    #[arg(long, global = true, default_value_t = 4)]
    pub precision: usize,
    /// Leave out the `generated_at` field.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nekrasov and SDD classification with h, z and row margins.
    Check(InputArgs),
    /// Build a slack plan and the scaling matrix.
    Scale {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Upper bound on the inverse norm (or lower bound on sigma_min).
    Bound {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "cotanek")]
        method: Method,
        #[command(flatten)]
        plan: PlanArgs,
        /// Sweep t over a grid of this many points instead of using --t.
        #[arg(long, value_name = "GRID")]
        sweep: Option<usize>,
        /// Add the exact norm from explicit inversion.
        #[arg(long)]
        oracle: bool,
    },
    /// Error coefficient for LCP(A, q), and the radius for a candidate x.
    Lcp {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated vector.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        q: Vec<f64>,
        /// Comma-separated candidate solution.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        x: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_T)]
        t: f64,
        /// Add the reference coefficient and the enumerated solution.
        #[arg(long)]
        oracle: bool,
    },
    /// Regenerate a published table or example and compare.
    Repro {
        target: Target,
        #[arg(long, value_name = "GRID", default_value_t = DEFAULT_GRID_SIZE)]
        sweep: usize,
    },
    /// Exact norms of A and its inverse, and sigma_min.
    Norms(InputArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Matrix file, or `fixture:NAME` (A1..A6, AH1..AH6, EX41:eps, EX51:k).
    pub input: String,
    /// Input format; inferred from the extension when omitted.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::T22)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = DEFAULT_T)]
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    /// Every row gets slack.
    T21,
    /// Slack only from the pivot row on.
    T22,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::T21 => Strategy::Full,
            StrategyArg::T22 => Strategy::Pivoted,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Precondition(String),
    Repro(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Precondition(_) => EXIT_PRECONDITION,
            Failure::Repro(_) => EXIT_REPRO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Repro(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Matrix(inner) => Failure::Precondition(inner.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<nekrasov_core::Error> for Failure {
    fn from(e: nekrasov_core::Error) -> Self {
        use nekrasov_core::Error as E;
        match e {
            E::Empty | E::DimensionMismatch { .. } | E::NonFinite { .. } => Failure::Input(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match execute(&cli, &mut stdout) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}

/// Runs a parsed command, writing the report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut doc = build(&cli.command)?;
    if !cli.no_timestamp {
        doc.generated_at = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    }
    let text = if cli.json { doc.to_json() } else { doc.to_text(cli.precision) };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))?;
    if doc.failures() > 0 {
        eprintln!("error: {} comparison(s) outside tolerance", doc.failures());
        return Ok(EXIT_REPRO);
    }
    Ok(EXIT_OK)
}

fn load(input: &InputArgs) -> Result<(SquareMatrix, InputDescriptor), Failure> {
    let a = match input.input.strip_prefix("fixture:") {
        Some(name) => fixtures::named(name).ok_or_else(|| Failure::Input(format!("unknown fixture `{name}`")))?,
        None => load_matrix(&PathBuf::from(&input.input), input.format)?,
    };
    let format = if input.input.starts_with("fixture:") {
        None
    } else {
        input.format.or_else(|| Format::from_path(input.input.as_ref()))
    };
    let desc = InputDescriptor {
        source: input.input.clone(),
        format,
        n: Some(a.n()),
    };
    Ok((a, desc))
}

fn build(command: &Command) -> Result<ReportDocument, Failure> {
    match command {
        Command::Check(input) => {
            let (a, desc) = load(input)?;
            let mut doc = ReportDocument::new(desc);
            doc.profile = Some(profile::profile(&a)?);
            Ok(doc)
        }
        Command::Scale { input, plan } => {
            let (a, desc) = load(input)?;
            let mut doc = ReportDocument::new(desc);
            let p = EpsilonPlan::new(&a, plan.strategy.into(), plan.t)?;
            let s = build_scaling(&a, &p)?;
            let scaled = apply_scaling(&a, &s)?;
            doc.profile = Some(profile::profile(&a)?);
            doc.scaling = Some(ScalingSection {
                violations: p.violations(&a),
                plan: p,
                s: s.s,
                scaled_is_sdd: profile::is_sdd(&scaled),
                scaled_margins: varah_margins(&scaled),
            });
            Ok(doc)
        }
        Command::Bound {
            input,
            method,
            plan,
            sweep,
            oracle: with_oracle,
        } => {
            let (a, desc) = load(input)?;
            let mut doc = ReportDocument::new(desc);
            let report = match sweep {
                Some(grid) => bounds::optimize_t(&a, *method, *grid)?.1,
                None if method.uses_plan() && *method != Method::OneNorm && *method != Method::SigmaMin => {
                    let p = EpsilonPlan::new(&a, plan.strategy.into(), plan.t)?;
                    bounds::evaluate_with_plan(&a, *method, &p)?
                }
                None => bounds::evaluate(&a, *method, plan.t)?,
            };
            doc.bounds.push(ReportEntry::Bound {
                subject: input.input.clone(),
                report,
            });
            if *with_oracle {
                let mut o = OracleValues::default();
                match method {
                    Method::OneNorm => o.inverse_one_norm = Some(oracle::exact_inverse_one_norm(&a)?),
                    Method::SigmaMin => o.sigma_min = Some(oracle::sigma_min_oracle(&a)?),
                    _ => o.inverse_inf_norm = Some(oracle::exact_inverse_inf_norm(&a)?),
                }
                doc.oracle = Some(o);
            }
            Ok(doc)
        }
        Command::Lcp {
            input,
            q,
            x,
            t,
            oracle: with_oracle,
        } => {
            let (a, desc) = load(input)?;
            let mut doc = ReportDocument::new(desc);
            let inst = LcpInstance::new(a.clone(), q.clone(), x.clone())?;
            let report = if inst.x.is_some() {
                lcp::lcp_report(&inst, *t)?
            } else {
                lcp::lcp_coefficient(&a, *t)?
            };
            doc.bounds.push(ReportEntry::Lcp {
                subject: input.input.clone(),
                report,
            });
            if *with_oracle {
                let mut o = OracleValues {
                    lcp_reference_coefficient: Some(lcp::lcp_reference_coefficient(&a)?),
                    ..OracleValues::default()
                };
                if a.n() <= lcp::MAX_ENUMERATION_DIM {
                    let sol = lcp::solve_by_enumeration(&a, q)?;
                    if let Some(x) = &inst.x {
                        let err = x.iter().zip(&sol).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
                        o.lcp_true_error = Some(err);
                    }
                    o.lcp_solution = Some(sol);
                }
                doc.oracle = Some(o);
            }
            Ok(doc)
        }
        Command::Repro { target, sweep } => {
            if *sweep == 0 {
                return Err(Failure::Input("--sweep must be positive".into()));
            }
            let mut doc = ReportDocument::new(InputDescriptor {
                source: format!("repro:{target}"),
                format: None,
                n: None,
            });
            doc.comparisons = Some(repro::run(*target, *sweep)?);
            Ok(doc)
        }
        Command::Norms(input) => {
            let (a, desc) = load(input)?;
            let mut doc = ReportDocument::new(desc);
            doc.oracle = Some(OracleValues {
                inf_norm: Some(a.inf_norm()),
                one_norm: Some(a.one_norm()),
                inverse_inf_norm: Some(oracle::exact_inverse_inf_norm(&a)?),
                inverse_one_norm: Some(oracle::exact_inverse_one_norm(&a)?),
                sigma_min: Some(oracle::sigma_min_oracle(&a)?),
                ..OracleValues::default()
            });
            Ok(doc)
        }
    }
}
