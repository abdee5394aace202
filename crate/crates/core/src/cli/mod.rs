//! The `cramer` command-line front end.
//!
//! Exit codes: 0 ok, 2 parse error, 3 dimension error, 4 singular matrix,
//! 5 zero leading minor, 6 identity-check failure. Reports go to standard
//! output; diagnostics only ever go to standard error.

pub mod format;
pub mod input;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cramer_full::solve_full;
use crate::cramer_partial::{
    check_induction_identity, eliminate_stepwise, identity_terms, reorder_for_nonzero_minors,
    solve_partial, IdentityPoint,
};
use crate::determinant::{det_fast, det_leibniz, leading_minors, SingularityThreshold};
use crate::error::Error;
use crate::matrix::{ColumnVector, SystemSpec};
use crate::models::{build_chain_system, chain_closed_form, ChainSpec};
use crate::sample;
use crate::scalar::{Rational, Scalar, ScalarKind, Tolerance};
use format::{affine_expressions, affine_json, trace_json, CliScalar, Labels};
use input::{LoadedModel, LoadedSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Parse = 2,
    Dimension = 3,
    Singular = 4,
    ZeroMinor = 5,
    CheckFailed = 6,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        CliError {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::InvalidModel(_) | Error::MixedScalarKinds => ExitStatus::Parse,
            Error::DimensionMismatch(_)
            | Error::NotSquare { .. }
            | Error::IndexOutOfRange { .. }
            | Error::TooLargeForLeibniz { .. } => ExitStatus::Dimension,
            Error::SingularMatrix => ExitStatus::Singular,
            Error::ZeroLeadingMinor { .. } => ExitStatus::ZeroMinor,
            Error::InconsistentPoint { .. } => ExitStatus::CheckFailed,
        };
        let mut message = e.to_string();
        if let Error::ZeroLeadingMinor { .. } = e {
            message.push_str("; rerun with --reorder to permute equations first");
        }
        CliError { status, message }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(ExitStatus::Parse, format!("i/o error: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "cramer", version, about = "Full and partial Cramer's rule for X' = R X")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print det(R)
    Det {
        input: PathBuf,
        #[command(flatten)]
        kind: KindFlags,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Print the leading principal minors D_1..D_n
    Minors {
        input: PathBuf,
        #[command(flatten)]
        kind: KindFlags,
    },
    /// Solve for all unknowns, or for x_1..x_j with --partial j
    Solve {
        input: PathBuf,
        #[command(flatten)]
        kind: KindFlags,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// Build a system from a model file and solve it
    Model {
        input: PathBuf,
        #[command(flatten)]
        kind: KindFlags,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// Check the elimination induction identity at random consistent points
    Check {
        input: PathBuf,
        #[command(flatten)]
        kind: KindFlags,
        /// Check step p only
        #[arg(long, value_name = "P", conflicts_with = "all", required_unless_present = "all")]
        identity: Option<usize>,
        /// Check every step p = 2..n
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = sample::DEFAULT_SEED)]
        seed: u64,
        /// Random points per step
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct KindFlags {
    /// Exact rational arithmetic (default unless the file says otherwise)
    #[arg(long, conflicts_with = "float")]
    pub exact: bool,
    /// Binary floating point
    #[arg(long)]
    pub float: bool,
}

impl KindFlags {
    fn forced(self) -> Option<ScalarKind> {
        match (self.exact, self.float) {
            (true, _) => Some(ScalarKind::Rational),
            (_, true) => Some(ScalarKind::Float),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Leibniz,
    Fast,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct SolveFlags {
    /// Solve only for x_1..x_j
    #[arg(long, value_name = "J")]
    pub partial: Option<usize>,
    /// Permute equations so every leading minor is nonzero
    #[arg(long)]
    pub reorder: bool,
    /// Print the stepwise elimination chain
    #[arg(long)]
    pub trace: bool,
    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() {
                ExitStatus::Parse.code()
            } else {
                // --help / --version
                ExitStatus::Ok.code()
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.as_bytes());
            ExitStatus::Ok.code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.status.code()
        }
    }
}

/// Runs a command and returns its report.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Det {
            input,
            kind,
            method,
        } => match input::load_system(input, kind.forced())? {
            LoadedSystem::Rational(sys) => cmd_det(&sys, *method),
            LoadedSystem::Float(sys) => cmd_det(&sys, *method),
        },
        Command::Minors { input, kind } => match input::load_system(input, kind.forced())? {
            LoadedSystem::Rational(sys) => cmd_minors(&sys),
            LoadedSystem::Float(sys) => cmd_minors(&sys),
        },
        Command::Solve { input, kind, solve } => {
            match input::load_system(input, kind.forced())? {
                LoadedSystem::Rational(sys) => cmd_solve(&sys, solve, &Labels::default()),
                LoadedSystem::Float(sys) => cmd_solve(&sys, solve, &Labels::default()),
            }
        }
        Command::Model { input, kind, solve } => match input::load_model(input, kind.forced())? {
            LoadedModel::Rational(spec) => cmd_model(&spec, solve),
            LoadedModel::Float(spec) => cmd_model(&spec, solve),
        },
        Command::Check {
            input,
            kind,
            identity,
            all,
            seed,
            points,
        } => {
            let steps = if *all { None } else { *identity };
            match input::load_system(input, kind.forced())? {
                LoadedSystem::Rational(sys) => cmd_check(&sys, steps, *seed, *points),
                LoadedSystem::Float(sys) => cmd_check(&sys, steps, *seed, *points),
            }
        }
    }
}

pub fn cmd_det<T: CliScalar>(sys: &SystemSpec<T>, method: Method) -> Result<String, CliError> {
    let det = match method {
        Method::Leibniz => det_leibniz(sys.r())?,
        Method::Fast => det_fast(sys.r())?,
    };
    Ok(format!("det = {det}\n"))
}

pub fn cmd_minors<T: CliScalar>(sys: &SystemSpec<T>) -> Result<String, CliError> {
    let minors = leading_minors(sys.r())?;
    let mut out = String::new();
    for (j, d) in minors.values().iter().enumerate() {
        writeln!(out, "D_{} = {d}", j + 1).expect("string write");
    }
    Ok(out)
}

pub fn cmd_solve<T: CliScalar>(
    sys: &SystemSpec<T>,
    flags: &SolveFlags,
    base_labels: &Labels,
) -> Result<String, CliError> {
    let n = sys.dim();
    if let Some(j) = flags.partial {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange {
                what: "--partial",
                index: j,
                max: n,
            }
            .into());
        }
    }
    let mut labels = base_labels.clone();
    let mut out = String::new();
    let working = if flags.reorder {
        let re = reorder_for_nonzero_minors(sys)?;
        if !flags.json {
            let order: Vec<String> = re.permutation.one_based().iter().map(usize::to_string).collect();
            writeln!(out, "row order: {}", order.join(" ")).expect("string write");
        }
        labels.primed_order = Some(re.permutation);
        re.system
    } else {
        sys.clone()
    };

    if flags.trace {
        let cut = flags.partial.unwrap_or(n);
        let trace = match eliminate_stepwise(&working) {
            Ok(trace) => trace,
            Err(incomplete) if incomplete.failed_at > cut => incomplete.partial,
            Err(incomplete) => {
                let mut message = CliError::from(Error::ZeroLeadingMinor {
                    j: incomplete.failed_at,
                })
                .message;
                for step in &incomplete.partial.steps {
                    write!(message, "\n{}", trace_step_text(step, &labels)).expect("string write");
                }
                return Err(CliError::new(ExitStatus::ZeroMinor, message));
            }
        };
        let mut trace = trace;
        trace.steps.truncate(cut);
        if flags.json {
            return Ok(format!("{}\n", trace_json(&trace, &labels, n)));
        }
        for step in &trace.steps {
            writeln!(out, "{}", trace_step_text(step, &labels)).expect("string write");
        }
        return Ok(out);
    }

    match flags.partial {
        Some(j) => {
            let sol = solve_partial(&working, j)?;
            if flags.json {
                return Ok(format!("{}\n", affine_json(&sol, &labels)));
            }
            writeln!(out, "D_{j} = {}", sol.d_j()).expect("string write");
            for line in affine_expressions(&sol, &labels) {
                writeln!(out, "{line}").expect("string write");
            }
        }
        None => {
            let sol = solve_full(&working)?;
            if flags.json {
                let order = labels
                    .primed_order
                    .as_ref()
                    .map_or_else(|| (1..=n).collect(), |p| p.one_based());
                return Ok(format!(
                    "{}\n",
                    json!({
                        "kind": "full",
                        "scalar": T::KIND.name(),
                        "n": n,
                        "det": sol.det_r.to_json(),
                        "x": sol.x.entries().iter().map(CliScalar::to_json).collect::<Vec<_>>(),
                        "row_order": order,
                    })
                ));
            }
            writeln!(out, "det(R) = {}", sol.det_r).expect("string write");
            for (i, x) in sol.x.entries().iter().enumerate() {
                writeln!(out, "{} = {x}", labels.unknown(i)).expect("string write");
            }
        }
    }
    Ok(out)
}

fn trace_step_text<T: CliScalar>(
    step: &crate::cramer_partial::TraceStep<T>,
    labels: &Labels,
) -> String {
    let mut text = format!("step {}: D_{} = {}", step.j, step.j, step.minor);
    for line in affine_expressions(&step.solution, labels) {
        write!(text, "\n  {line}").expect("string write");
    }
    text
}

pub fn cmd_model<T: CliScalar>(spec: &ChainSpec<T>, flags: &SolveFlags) -> Result<String, CliError> {
    let sys = build_chain_system(spec);
    let labels = Labels {
        unknown: "T".into(),
        ..Labels::default()
    };
    let report = cmd_solve(&sys, flags, &labels)?;
    let closed = chain_closed_form(spec);
    let solved = solve_full(&sys)?.x;
    let passed = solved.approx_eq(&closed, Tolerance::default());
    let verdict = if passed { "PASS" } else { "FAIL" };
    let report = if flags.json {
        let mut doc: Value = serde_json::from_str(&report).expect("own JSON output");
        doc["closed_form_check"] = Value::String(verdict.into());
        format!("{doc}\n")
    } else {
        format!("{report}closed-form check: {verdict}\n")
    };
    if passed {
        Ok(report)
    } else {
        Err(CliError::new(
            ExitStatus::CheckFailed,
            format!("closed-form check failed: solved {solved}, closed form {closed}"),
        ))
    }
}

/// Evaluates the induction identity at `points` random consistent points for
/// each requested step (`None` = all of `2..=n`).
pub fn cmd_check<T: CliScalar>(
    sys: &SystemSpec<T>,
    step: Option<usize>,
    seed: u64,
    points: usize,
) -> Result<String, CliError> {
    let r = sys.r();
    let n = sys.dim();
    let steps: Vec<usize> = match step {
        Some(p) if p < 2 || p > n => {
            return Err(Error::IndexOutOfRange {
                what: "identity step",
                index: p,
                max: n,
            }
            .into())
        }
        Some(p) => vec![p],
        None => (2..=n).collect(),
    };
    let mut out = String::new();
    if steps.is_empty() {
        writeln!(out, "nothing to check for n = {n}").expect("string write");
        return Ok(out);
    }
    let minors = leading_minors(r)?;
    let mut rng = sample::rng(seed);
    let threshold = SingularityThreshold::default();
    let tol = Tolerance::default();
    for p in steps {
        if let Some(j) = (1..p).find(|&j| {
            threshold.vanishes(minors.get(j), &r.leading_submatrix(j).expect("j < n"))
        }) {
            let e = CliError::from(Error::ZeroLeadingMinor { j });
            return Err(CliError::new(e.status, format!("{out}{}", e.message)));
        }
        let mut failure = None;
        for _ in 0..points {
            let x_prime = random_point::<T, _>(&mut rng, n);
            let seed_x = random_point::<T, _>(&mut rng, n);
            let point = IdentityPoint::consistent(r, p, x_prime, seed_x)?;
            let (lhs, rhs) = check_induction_identity(r, p, &point)?;
            let (collected, closed) = identity_terms(r, p, &point.x_prime, &point.x)?;
            let terms_ok = collected.a.approx_eq(&closed.a, tol)
                && collected.b.approx_eq(&closed.b, tol)
                && collected.c.approx_eq(&closed.c, tol);
            if !lhs.approx_eq(&rhs, tol) || !terms_ok {
                failure = Some((lhs, rhs));
                break;
            }
        }
        match failure {
            None => writeln!(out, "p = {p}: PASS").expect("string write"),
            Some((lhs, rhs)) => {
                return Err(CliError::new(
                    ExitStatus::CheckFailed,
                    format!("{out}p = {p}: FAIL (lhs = {lhs}, rhs = {rhs})"),
                ))
            }
        }
    }
    Ok(out)
}

fn random_point<T: Scalar, R: rand::Rng>(rng: &mut R, n: usize) -> ColumnVector<T> {
    let q: ColumnVector<Rational> = sample::rational_vector(rng, n, 20, 9);
    ColumnVector::new(
        q.entries()
            .iter()
            .map(|v| {
                let num = v.numer().try_into().expect("small numerator");
                let den = v.denom().try_into().expect("small denominator");
                T::from_ratio(num, den)
            })
            .collect(),
    )
}
