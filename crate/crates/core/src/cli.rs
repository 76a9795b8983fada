//! Command-line front end: `norm`, `verify`, `sweep` and `membership`.
//!
//! Exit codes: 0 success or Confirmed, 1 Refuted, 2 Inconclusive or not
//! converged, 3 input error.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::bergman::{
    bergman_norm_at, default_radii, membership_classify, membership_evidence, MembershipVerdict,
};
use crate::expr::{parse, ParamEnv};
use crate::hardy::hardy_norm_at;
use crate::norm::{NormResult, Space};
use crate::quad::QuadConfig;
use crate::verify::{
    eps_window, run_case, CaseId, CaseParams, Detail, Verdict, VerificationReport, VerifyConfig,
    VerifyError, DEFAULT_KAPPA,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Verdict text for sweep rows whose grid point violates the case precondition.
pub const SKIPPED: &str = "SKIPPED";

#[derive(Debug, Parser)]
#[command(
    name = "disknorm",
    version,
    about = "Hardy and Bergman quasi-norms on the unit disk",
    args_override_self = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a Hardy or Bergman quasi-norm.
    Norm(NormArgs),
    /// Run one verification case.
    Verify(VerifyArgs),
    /// Run a verification case over a grid of p values.
    Sweep(SweepArgs),
    /// Classify membership of (1 - z)^(-alpha) in A^p.
    Membership(MembershipArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpaceArg {
    Hardy,
    Bergman,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Hardy => Space::Hardy,
            SpaceArg::Bergman => Space::Bergman,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EpsRule {
    WindowMidpoint,
}

#[derive(Debug, Args)]
struct Common {
    /// Absolute tolerance.
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    /// Relative tolerance.
    #[arg(long, default_value_t = 1e-8)]
    rel_tol: f64,
    /// Evaluation budget per integral.
    #[arg(long, default_value_t = 2_000_000)]
    max_evals: usize,
    /// Verdict margin factor.
    #[arg(long, default_value_t = DEFAULT_KAPPA)]
    kappa: f64,
    /// Bind an expression parameter, e.g. `--param eps=0.3` (repeatable).
    #[arg(long = "param", value_name = "NAME=REAL")]
    params: Vec<String>,
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct NormArgs {
    #[arg(long, value_enum, default_value = "hardy")]
    space: SpaceArg,
    #[arg(long)]
    expr: String,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Boundary singular angles in radians, comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    singular: Option<Vec<f64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    #[arg(long)]
    case: String,
    #[arg(long)]
    expr: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Radii for means-monotone and lemma-ap, comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    radii: Option<Vec<f64>>,
    /// Rotation angle in radians for rotation-invariance.
    #[arg(long)]
    rotation: Option<f64>,
    #[arg(long, value_enum)]
    space: Option<SpaceArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long)]
    case: String,
    #[arg(long)]
    p_min: f64,
    #[arg(long)]
    p_max: f64,
    #[arg(long)]
    steps: usize,
    /// How ap-large-p picks eps when --eps is not given.
    #[arg(long, value_enum, default_value = "window-midpoint")]
    eps_rule: EpsRule,
    /// Fixed eps for every grid point.
    #[arg(long)]
    eps: Option<f64>,
    /// Also write (p, defect) pairs as CSV.
    #[arg(long, value_name = "PATH")]
    emit_plot_data: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct MembershipArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    p: f64,
    /// Truncation radii, comma-separated (default 1 - 2^-k, k = 2..12).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    radii: Option<Vec<f64>>,
    /// Skip the truncated-integral evidence.
    #[arg(long)]
    rule_only: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure {
            code: if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_INCONCLUSIVE
            },
            message: e.to_string(),
        }
    }
}

impl From<crate::norm::NormError> for Failure {
    fn from(e: crate::norm::NormError) -> Self {
        VerifyError::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(format!("i/o error: {e}"))
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    let result = match cli.command {
        Command::Norm(a) => cmd_norm(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Membership(a) => cmd_membership(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

impl Common {
    fn quad(&self) -> Result<QuadConfig, Failure> {
        let cfg = QuadConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_evaluations: self.max_evals,
            ..QuadConfig::default()
        };
        cfg.validate().map_err(|e| Failure::input(e.to_string()))?;
        Ok(cfg)
    }

    fn verify(&self) -> Result<VerifyConfig, Failure> {
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            return Err(Failure::input(format!(
                "kappa must be non-negative, got {}",
                self.kappa
            )));
        }
        Ok(VerifyConfig {
            quad: self.quad()?,
            kappa: self.kappa,
            ..VerifyConfig::default()
        })
    }

    fn env(&self, extra: &[(&str, Option<f64>)]) -> Result<ParamEnv, Failure> {
        let mut env = ParamEnv::new();
        for item in &self.params {
            let (name, value) = item.split_once('=').ok_or_else(|| {
                Failure::input(format!("--param expects NAME=REAL, got '{item}'"))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Failure::input(format!("--param {name}: '{value}' is not a number"))
            })?;
            env.set(name.trim(), value)
                .map_err(|e| Failure::input(e.to_string()))?;
        }
        for (name, value) in extra {
            if let Some(v) = value {
                env.set(name, *v)
                    .map_err(|e| Failure::input(e.to_string()))?;
            }
        }
        Ok(env)
    }

    /// Sends `text` to `--out` when given, otherwise to `stdout`.
    fn emit(&self, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_expr(text: &str) -> Result<crate::expr::Expr, Failure> {
    parse(text).map_err(|e| Failure::input(format!("cannot parse '{text}': {e}")))
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Confirmed => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn cmd_norm(a: NormArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = a.common.quad()?;
    let env = a
        .common
        .env(&[("p", Some(a.p)), ("eps", a.eps), ("alpha", a.alpha)])?;
    let expr = parse_expr(&a.expr)?;
    let singular = a.singular.as_deref();
    let r = match Space::from(a.space) {
        Space::Hardy => hardy_norm_at(&expr, a.p, &env, singular, &cfg)?,
        Space::Bergman => bergman_norm_at(&expr, a.p, &env, singular, &cfg)?,
    };
    let text = if a.common.json {
        to_json(&r)
    } else {
        format_norm(&r)
    };
    a.common.emit(&text, stdout)?;
    Ok(if r.converged {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    })
}

fn format_norm(r: &NormResult) -> String {
    let mut s = String::new();
    s += &format!("space        {}\n", r.space);
    s += &format!("p            {}\n", r.p);
    s += &format!("value_p      {}\n", r.value_p);
    s += &format!("value        {}\n", r.value);
    s += &format!("abs_err_est  {:.3e}\n", r.abs_err_est);
    s += &format!("converged    {}\n", r.converged);
    s += &format!("evaluations  {}\n", r.evaluations);
    if r.is_divergent() {
        s += "hint         divergent\n";
    }
    s
}

fn cmd_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let case: CaseId = a.case.parse()?;
    let cfg = a.common.verify()?;
    let env = a
        .common
        .env(&[("p", a.p), ("eps", a.eps), ("alpha", a.alpha)])?;
    let params = CaseParams {
        expr: a.expr.as_deref().map(parse_expr).transpose()?,
        env,
        p: a.p,
        eps: a.eps,
        alpha: a.alpha,
        a: a.a,
        b: a.b,
        q: a.q,
        radii: a.radii,
        angle: a.rotation,
        space: a.space.map(Space::from),
    };
    let report = run_case(case, &params, &cfg)?;
    let text = if a.common.json {
        to_json(&report)
    } else {
        format_report(&report, 0)
    };
    a.common.emit(&text, stdout)?;
    Ok(verdict_code(report.verdict))
}

fn format_report(r: &VerificationReport, depth: usize) -> String {
    let pad = "  ".repeat(depth);
    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut s = format!("{pad}case     {} ({})\n", r.case_id, inputs.join(", "));
    s += &format!("{pad}verdict  {}\n", r.verdict);
    s += &format!("{pad}lhs      {}\n", r.lhs);
    s += &format!("{pad}rhs      {}\n", r.rhs);
    s += &format!("{pad}defect   {:e}\n", r.defect);
    s += &format!("{pad}margin   {:e}\n", r.margin);
    for n in &r.notes {
        s += &format!("{pad}note     {n}\n");
    }
    for sub in &r.sub_results {
        match &sub.detail {
            Detail::Norm(n) => {
                s += &format!(
                    "{pad}- {}: value_p = {} (err {:.2e}), value = {}\n",
                    sub.name, n.value_p, n.abs_err_est, n.value
                )
            }
            Detail::Quad(q) => {
                s += &format!(
                    "{pad}- {}: {} (err {:.2e})\n",
                    sub.name, q.value, q.abs_err_est
                )
            }
            Detail::Identity(c) => {
                s += &format!(
                    "{pad}- {}: {} at {} points, max relative error {:.2e}\n",
                    sub.name,
                    if c.passed { "holds" } else { "FAILS" },
                    c.points,
                    c.max_rel_err
                )
            }
            Detail::Membership(m) => {
                s += &format!(
                    "{pad}- {}: p*alpha = {}, {:?}\n",
                    sub.name, m.product, m.classification
                )
            }
            Detail::Report(inner) => {
                s += &format!("{pad}- {}:\n", sub.name);
                s += &format_report(inner, depth + 1);
            }
        }
    }
    s
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(serialize_with = "full_precision")]
    pub p: f64,
    #[serde(serialize_with = "full_precision_opt")]
    pub eps: Option<f64>,
    #[serde(serialize_with = "full_precision_opt")]
    pub norm_f_p: Option<f64>,
    #[serde(serialize_with = "full_precision_opt")]
    pub norm_g_p: Option<f64>,
    #[serde(serialize_with = "full_precision_opt")]
    pub norm_sum_p: Option<f64>,
    #[serde(serialize_with = "full_precision_opt")]
    pub defect: Option<f64>,
    #[serde(serialize_with = "full_precision_opt")]
    pub margin: Option<f64>,
    pub verdict: String,
    pub reason: String,
}

fn full_precision<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:.16e}"))
}

fn full_precision_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => full_precision(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub confirmed: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

impl SweepSummary {
    pub fn of(rows: &[SweepRow]) -> Self {
        let mut s = SweepSummary::default();
        for r in rows {
            match r.verdict.as_str() {
                "Confirmed" => s.confirmed += 1,
                "Refuted" => s.refuted += 1,
                SKIPPED => s.skipped += 1,
                _ => s.inconclusive += 1,
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.refuted > 0 {
            EXIT_REFUTED
        } else if self.inconclusive > 0 {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        }
    }
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Confirmed={} Refuted={} Inconclusive={} {}={}",
            self.confirmed, self.refuted, self.inconclusive, SKIPPED, self.skipped
        )
    }
}

/// Evenly spaced grid from `p_min` to `p_max` inclusive.
pub fn sweep_grid(p_min: f64, p_max: f64, steps: usize) -> Vec<f64> {
    let h = (p_max - p_min) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                p_max
            } else {
                p_min + h * i as f64
            }
        })
        .collect()
}

/// Runs a sweepable case at every grid point; rows come back in grid order.
pub fn run_sweep(
    case: CaseId,
    p_min: f64,
    p_max: f64,
    steps: usize,
    eps: Option<f64>,
    cfg: &VerifyConfig,
) -> Result<Vec<SweepRow>, VerifyError> {
    if !case.is_sweepable() {
        return Err(VerifyError::InvalidInput(format!(
            "case {case} cannot be swept; use hp-counterexample, hp-equality, ap-large-p or ap-small-p"
        )));
    }
    if !(p_min > 0.0 && p_min < p_max && p_max.is_finite()) {
        return Err(VerifyError::InvalidInput(format!(
            "need 0 < p_min < p_max, got [{p_min}, {p_max}]"
        )));
    }
    if steps < 2 {
        return Err(VerifyError::InvalidInput("steps must be at least 2".into()));
    }
    let grid = sweep_grid(p_min, p_max, steps);
    Ok(grid
        .par_iter()
        .map(|&p| sweep_row(case, p, eps, cfg))
        .collect())
}

fn sweep_row(case: CaseId, p: f64, eps: Option<f64>, cfg: &VerifyConfig) -> SweepRow {
    let eps = match case {
        CaseId::ApLargeP => eps.or_else(|| eps_window(p).ok().map(|w| w.midpoint())),
        _ => None,
    };
    let params = CaseParams {
        p: Some(p),
        eps,
        ..CaseParams::default()
    };
    let mut row = SweepRow {
        p,
        eps,
        norm_f_p: None,
        norm_g_p: None,
        norm_sum_p: None,
        defect: None,
        margin: None,
        verdict: SKIPPED.to_string(),
        reason: String::new(),
    };
    match run_case(case, &params, cfg) {
        Ok(r) => {
            row.norm_f_p = r.sub_norm("norm_f").map(|n| n.value_p);
            row.norm_g_p = r.sub_norm("norm_g").map(|n| n.value_p);
            row.norm_sum_p = r.sub_norm("norm_sum").map(|n| n.value_p);
            row.defect = Some(r.defect);
            row.margin = Some(r.margin);
            row.verdict = r.verdict.to_string();
            row.reason = r.notes.join("; ");
        }
        Err(e) if e.is_input_error() => row.reason = e.to_string(),
        Err(e) => {
            row.verdict = Verdict::Inconclusive.to_string();
            row.reason = e.to_string();
        }
    }
    row
}

/// CSV text for sweep rows, followed by a `# summary` comment line.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv");
    }
    let mut text = String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8");
    text += &format!("# summary {}\n", SweepSummary::of(rows));
    text
}

/// Reads rows written by [`sweep_csv`].
pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepRow>, csv::Error> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

fn write_plot_data(path: &Path, rows: &[SweepRow]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(File::create(path)?);
    w.write_record(["p", "defect"])
        .map_err(|e| Failure::input(e.to_string()))?;
    for r in rows {
        if let Some(d) = r.defect {
            w.write_record([format!("{:.16e}", r.p), format!("{d:.16e}")])
                .map_err(|e| Failure::input(e.to_string()))?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SweepOutput<'a> {
    case: CaseId,
    rows: &'a [SweepRow],
    summary: SweepSummary,
}

fn cmd_sweep(a: SweepArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let case: CaseId = a.case.parse()?;
    let cfg = a.common.verify()?;
    let EpsRule::WindowMidpoint = a.eps_rule;
    let rows = run_sweep(case, a.p_min, a.p_max, a.steps, a.eps, &cfg)?;
    let summary = SweepSummary::of(&rows);
    let text = if a.common.json {
        to_json(&SweepOutput {
            case,
            rows: &rows,
            summary,
        })
    } else {
        sweep_csv(&rows)
    };
    a.common.emit(&text, stdout)?;
    if let Some(path) = &a.emit_plot_data {
        write_plot_data(path, &rows)?;
    }
    Ok(summary.exit_code())
}

fn cmd_membership(a: MembershipArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = a.common.quad()?;
    let v = if a.rule_only {
        membership_classify(a.alpha, a.p)?
    } else {
        let radii = a.radii.clone().unwrap_or_else(default_radii);
        membership_evidence(a.alpha, a.p, &radii, &cfg)?
    };
    let text = if a.common.json {
        to_json(&v)
    } else {
        format_membership(&v)
    };
    a.common.emit(&text, stdout)?;
    Ok(EXIT_OK)
}

fn format_membership(v: &MembershipVerdict) -> String {
    let mut s = format!("alpha           {}\n", v.alpha);
    s += &format!("p               {}\n", v.p);
    s += &format!("product         {}\n", v.product);
    s += &format!("classification  {:?}\n", v.classification);
    if let Some(d) = v.diagnostic {
        s += &format!("diagnostic      {d:?}\n");
    }
    if let Some(r) = v.increment_ratio {
        s += &format!("increment_ratio {r}\n");
    }
    for e in &v.evidence {
        s += &format!("  R = {:<22} I(R) = {}\n", e.radius, e.integral);
    }
    s
}
