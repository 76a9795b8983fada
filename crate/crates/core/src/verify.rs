//! Machine-checkable claims about Hardy and Bergman quasi-norms.
//!
//! Every check produces a [`VerificationReport`]: two computed sides, their
//! difference (`defect`), an error margin `kappa * (summed error estimates)`, and a
//! verdict that only commits when the defect clears the margin.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bergman::{
    area_integral, bergman_norm, default_radii, membership_classify, membership_evidence,
    Classification, MembershipVerdict,
};
use crate::expr::{
    eval, parse, substitute_negate, substitute_scale, substitute_square, Expr, ParamEnv,
};
use crate::hardy::{hardy_norm, integral_means};
use crate::norm::{NormError, NormResult, Space};
use crate::quad::{QuadConfig, QuadResult};

pub const DEFAULT_KAPPA: f64 = 10.0;
/// Random disk points used to check closed forms.
pub const IDENTITY_POINTS: usize = 64;
pub const IDENTITY_TOL: f64 = 1e-10;
const IDENTITY_RADIUS: f64 = 0.9;

/// `int |1 + z|^4 dA`, the `p`-th power of `||(1 + z)^(4/p)||` in `A^p`.
pub const SMALL_P_NORM_P: f64 = 10.0 / 3.0;

/// Lower bound `2^8 / (15 pi)` for the `p`-th power of the sum's norm.
pub fn small_p_lower_bound() -> f64 {
    256.0 / (15.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseId {
    LemmaCvh,
    LemmaCv,
    LemmaElem,
    LemmaAp,
    HpCounterexample,
    HpEquality,
    ApLargeP,
    ApSmallP,
    MeansMonotone,
    RotationInvariance,
}

impl CaseId {
    pub const ALL: [CaseId; 10] = [
        CaseId::LemmaCvh,
        CaseId::LemmaCv,
        CaseId::LemmaElem,
        CaseId::LemmaAp,
        CaseId::HpCounterexample,
        CaseId::HpEquality,
        CaseId::ApLargeP,
        CaseId::ApSmallP,
        CaseId::MeansMonotone,
        CaseId::RotationInvariance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::LemmaCvh => "lemma-cvh",
            CaseId::LemmaCv => "lemma-cv",
            CaseId::LemmaElem => "lemma-elem",
            CaseId::LemmaAp => "lemma-ap",
            CaseId::HpCounterexample => "hp-counterexample",
            CaseId::HpEquality => "hp-equality",
            CaseId::ApLargeP => "ap-large-p",
            CaseId::ApSmallP => "ap-small-p",
            CaseId::MeansMonotone => "means-monotone",
            CaseId::RotationInvariance => "rotation-invariance",
        }
    }

    /// Cases comparing `||f + g||` with `||f|| + ||g||` over a range of `p`.
    pub fn is_sweepable(self) -> bool {
        matches!(
            self,
            CaseId::HpCounterexample | CaseId::HpEquality | CaseId::ApLargeP | CaseId::ApSmallP
        )
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VerifyError::InvalidInput(format!("unknown case '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Confirmed,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How a defect and margin turn into a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// `lhs > rhs`: confirmed iff `defect > margin`, refuted iff `defect < -margin`.
    Strict,
    /// `lhs >= rhs`: confirmed iff `defect >= -margin`.
    AtLeast,
    /// `lhs = rhs`: confirmed iff `|defect| <= margin`.
    Equality,
}

impl ClaimKind {
    pub fn verdict(self, defect: f64, margin: f64) -> Verdict {
        if defect.is_nan() || margin.is_nan() {
            return Verdict::Inconclusive;
        }
        match self {
            ClaimKind::Strict if defect > margin => Verdict::Confirmed,
            ClaimKind::Strict if defect < -margin => Verdict::Refuted,
            ClaimKind::Strict => Verdict::Inconclusive,
            ClaimKind::AtLeast if defect >= -margin => Verdict::Confirmed,
            ClaimKind::AtLeast => Verdict::Refuted,
            ClaimKind::Equality if defect.abs() <= margin => Verdict::Confirmed,
            ClaimKind::Equality if margin.is_infinite() => Verdict::Inconclusive,
            ClaimKind::Equality => Verdict::Refuted,
        }
    }
}

/// A closed form compared with the original expression at random disk points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub points: usize,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "result", rename_all = "snake_case")]
pub enum Detail {
    Norm(NormResult),
    Quad(QuadResult),
    Identity(IdentityCheck),
    Membership(MembershipVerdict),
    Report(Box<VerificationReport>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubResult {
    pub name: String,
    #[serde(flatten)]
    pub detail: Detail,
}

impl SubResult {
    fn new(name: &str, detail: Detail) -> Self {
        SubResult {
            name: name.to_string(),
            detail,
        }
    }

    /// Whether this sub-result is a failed check.
    fn failed(&self) -> bool {
        match &self.detail {
            Detail::Identity(c) => !c.passed,
            Detail::Report(r) => r.verdict != Verdict::Confirmed,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case_id: CaseId,
    pub inputs: BTreeMap<String, f64>,
    pub claim: ClaimKind,
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub sub_results: Vec<SubResult>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn sub(&self, name: &str) -> Option<&Detail> {
        self.sub_results
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.detail)
    }

    pub fn sub_norm(&self, name: &str) -> Option<&NormResult> {
        match self.sub(name) {
            Some(Detail::Norm(n)) => Some(n),
            _ => None,
        }
    }

    pub fn sub_report(&self, name: &str) -> Option<&VerificationReport> {
        match self.sub(name) {
            Some(Detail::Report(r)) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Norm(#[from] NormError),
}

impl VerifyError {
    /// Errors caused by the request rather than by the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            VerifyError::InvalidInput(_)
                | VerifyError::Precondition(_)
                | VerifyError::Norm(NormError::InvalidInput(_))
                | VerifyError::Norm(NormError::Expr(_))
                | VerifyError::Norm(NormError::Eval(crate::expr::EvalError::UnboundParam(_)))
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub quad: QuadConfig,
    pub kappa: f64,
    /// Seed for the random points of identity checks.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            quad: QuadConfig::default(),
            kappa: DEFAULT_KAPPA,
            seed: 0x5eed,
        }
    }
}

struct Claim {
    case_id: CaseId,
    inputs: BTreeMap<String, f64>,
    kind: ClaimKind,
    sub_results: Vec<SubResult>,
    notes: Vec<String>,
    all_converged: bool,
}

impl Claim {
    fn new(case_id: CaseId, kind: ClaimKind, cfg: &VerifyConfig, inputs: &[(&str, f64)]) -> Self {
        let mut map: BTreeMap<String, f64> =
            inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        map.insert("kappa".into(), cfg.kappa);
        Claim {
            case_id,
            inputs: map,
            kind,
            sub_results: Vec::new(),
            notes: Vec::new(),
            all_converged: true,
        }
    }

    fn norm(&mut self, name: &str, n: NormResult) -> NormResult {
        if !n.converged {
            self.all_converged = false;
            self.notes
                .push(format!("{name}: quadrature did not converge"));
        }
        self.sub_results
            .push(SubResult::new(name, Detail::Norm(n.clone())));
        n
    }

    fn push(&mut self, name: &str, detail: Detail) {
        self.sub_results.push(SubResult::new(name, detail));
    }

    fn finish(mut self, lhs: f64, rhs: f64, margin: f64) -> VerificationReport {
        let defect = lhs - rhs;
        let mut verdict = self.kind.verdict(defect, margin);
        if verdict != Verdict::Inconclusive && !self.all_converged {
            verdict = Verdict::Inconclusive;
        }
        let failed: Vec<String> = self
            .sub_results
            .iter()
            .filter(|s| s.failed())
            .map(|s| s.name.clone())
            .collect();
        if verdict == Verdict::Confirmed && !failed.is_empty() {
            verdict = Verdict::Inconclusive;
            self.notes.push(format!(
                "supporting checks not confirmed: {}",
                failed.join(", ")
            ));
        }
        VerificationReport {
            case_id: self.case_id,
            inputs: self.inputs,
            claim: self.kind,
            lhs,
            rhs,
            defect,
            margin,
            verdict,
            sub_results: self.sub_results,
            notes: self.notes,
        }
    }
}

fn norm_in(
    space: Space,
    e: &Expr,
    p: f64,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<NormResult, NormError> {
    match space {
        Space::Hardy => hardy_norm(e, p, env, cfg),
        Space::Bergman => bergman_norm(e, p, env, cfg),
    }
}

/// `z -> -f(-z)`.
pub fn reflected(f: &Expr) -> Expr {
    Expr::neg(substitute_negate(f))
}

fn check_open_unit(p: f64, what: &str, lo: f64, hi: f64) -> Result<(), VerifyError> {
    if p > lo && p < hi {
        Ok(())
    } else {
        Err(VerifyError::Precondition(format!(
            "{what} requires {lo} < p < {hi}, got p = {p}"
        )))
    }
}

fn literal(text: &str) -> Expr {
    parse(text).expect("built-in expression parses")
}

/// Compares `lhs` and `rhs` at random points `|z| <= 0.9`.
pub fn identity_check(lhs: &Expr, rhs: &Expr, env: &ParamEnv, seed: u64) -> IdentityCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_rel_err: f64 = 0.0;
    for _ in 0..IDENTITY_POINTS {
        let r = IDENTITY_RADIUS * rng.gen::<f64>().sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(r, theta);
        let err = match (eval(lhs, z, env), eval(rhs, z, env)) {
            (Ok(a), Ok(b)) => (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE),
            _ => f64::INFINITY,
        };
        max_rel_err = max_rel_err.max(if err.is_nan() { f64::INFINITY } else { err });
    }
    IdentityCheck {
        points: IDENTITY_POINTS,
        max_rel_err,
        tolerance: IDENTITY_TOL,
        passed: max_rel_err <= IDENTITY_TOL,
    }
}

/// Triangle inequality test `||f + g|| > ||f|| + ||g||` in norm values.
///
/// Sub-results are named `norm_f`, `norm_g` and `norm_sum`.
pub fn verify_triangle(
    space: Space,
    f: &Expr,
    g: &Expr,
    p: f64,
    env: &ParamEnv,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let claim = Claim::new(
        CaseId::HpCounterexample,
        ClaimKind::Strict,
        cfg,
        &[("p", p)],
    );
    triangle(claim, space, f, g, p, env, cfg)
}

fn triangle(
    mut claim: Claim,
    space: Space,
    f: &Expr,
    g: &Expr,
    p: f64,
    env: &ParamEnv,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let sum = Expr::add(f.clone(), g.clone());
    let nf = claim.norm("norm_f", norm_in(space, f, p, env, &cfg.quad)?);
    let ng = claim.norm("norm_g", norm_in(space, g, p, env, &cfg.quad)?);
    let ns = claim.norm("norm_sum", norm_in(space, &sum, p, env, &cfg.quad)?);
    let margin = cfg.kappa * (nf.value_err() + ng.value_err() + ns.value_err());
    Ok(claim.finish(ns.value, nf.value + ng.value, margin))
}

fn equality_of_norms(
    case_id: CaseId,
    cfg: &VerifyConfig,
    inputs: &[(&str, f64)],
    lhs: (&str, NormResult),
    rhs: (&str, NormResult),
    rhs_factor: f64,
) -> VerificationReport {
    let mut claim = Claim::new(case_id, ClaimKind::Equality, cfg, inputs);
    let a = claim.norm(lhs.0, lhs.1);
    let b = claim.norm(rhs.0, rhs.1);
    let margin = cfg.kappa * (a.value_err() + rhs_factor * b.value_err());
    claim.finish(a.value, rhs_factor * b.value, margin)
}

/// `||f(z^2)||_{H^p} = ||f||_{H^p}`, compared on `p`-th powers.
pub fn verify_lemma_cvh(
    f: &Expr,
    p: f64,
    env: &ParamEnv,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let mut claim = Claim::new(CaseId::LemmaCvh, ClaimKind::Equality, cfg, &[("p", p)]);
    let h = substitute_square(f);
    let lhs = claim.norm("norm_composed", hardy_norm(&h, p, env, &cfg.quad)?);
    let rhs = claim.norm("norm_f", hardy_norm(f, p, env, &cfg.quad)?);
    let margin = cfg.kappa * (lhs.abs_err_est + rhs.abs_err_est);
    Ok(claim.finish(lhs.value_p, rhs.value_p, margin))
}

/// `int |h|^p dA = 2 int |h(z^2)|^p |z|^2 dA`.
pub fn verify_lemma_cv(
    h: &Expr,
    p: f64,
    env: &ParamEnv,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let mut claim = Claim::new(CaseId::LemmaCv, ClaimKind::Equality, cfg, &[("p", p)]);
    let lhs = claim.norm("norm_h", bergman_norm(h, p, env, &cfg.quad)?);
    let composed = substitute_square(h);
    let q = area_integral(&composed, p, env, &|r| 2.0 * r * r, &cfg.quad)?;
    if !q.converged {
        claim.all_converged = false;
        claim
            .notes
            .push("weighted integral: quadrature did not converge".into());
    }
    claim.push("weighted_composed", Detail::Quad(q));
    let margin = cfg.kappa * (lhs.abs_err_est + q.abs_err_est);
    Ok(claim.finish(lhs.value_p, q.value, margin))
}

/// `|a^q - b^q| >= |a - b|^q` for `a, b > 0`, `q > 1`; exact arithmetic, zero margin.
pub fn verify_elem_inequality(a: f64, b: f64, q: f64) -> Result<VerificationReport, VerifyError> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(VerifyError::Precondition(format!(
            "need a, b > 0, got a = {a}, b = {b}"
        )));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(VerifyError::Precondition(format!(
            "need q > 1, got q = {q}"
        )));
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    // hi^q - lo^q without cancellation
    let lhs = -hi.powf(q) * (q * (lo / hi).ln()).exp_m1();
    let rhs = (hi - lo).powf(q);
    let cfg = VerifyConfig::default();
    let claim = Claim::new(
        CaseId::LemmaElem,
        ClaimKind::AtLeast,
        &cfg,
        &[("a", a), ("b", b), ("q", q)],
    );
    let mut report = claim.finish(lhs, rhs, 0.0);
    report.inputs.remove("kappa");
    Ok(report)
}

/// Membership of `(1 - z)^(-alpha)` in `A^p`: the growth evidence must agree with
/// the rule `p alpha < 2` (at the boundary, the evidence must show divergence).
pub fn verify_lemma_ap(
    alpha: f64,
    p: f64,
    radii: &[f64],
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let v = membership_evidence(alpha, p, radii, &cfg.quad)?;
    let rule = if v.classification.is_member() {
        1.0
    } else {
        0.0
    };
    let evidence = match v.diagnostic {
        Some(d) if d.is_convergent() => 1.0,
        Some(_) => 0.0,
        None => f64::NAN,
    };
    let mut claim = Claim::new(
        CaseId::LemmaAp,
        ClaimKind::Equality,
        cfg,
        &[("alpha", alpha), ("p", p), ("product", v.product)],
    );
    if v.classification == Classification::Boundary {
        claim
            .notes
            .push("boundary case p * alpha = 2 (not a member)".into());
    }
    claim.push("membership", Detail::Membership(v));
    Ok(claim.finish(evidence, rule, 0.0))
}

/// `||f + g|| > ||f|| + ||g||` in `H^p` for `f = (1+z)/(1-z)`, `g = -f(-z)`.
pub fn verify_hp_counterexample(
    p: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    check_open_unit(p, "hp-counterexample", 0.0, 1.0)?;
    let env = ParamEnv::new().with("p", p);
    let f = literal("(1+z)/(1-z)");
    let g = reflected(&f);
    let claim = Claim::new(
        CaseId::HpCounterexample,
        ClaimKind::Strict,
        cfg,
        &[("p", p)],
    );
    let report = triangle(claim, Space::Hardy, &f, &g, p, &env, cfg)?;

    let sum = Expr::add(f.clone(), g.clone());
    let closed = literal("4*z/(1-z^2)");
    let ident = identity_check(&sum, &closed, &env, cfg.seed);
    let nf = report.sub_norm("norm_f").cloned().expect("norm_f");
    let ng = report.sub_norm("norm_g").cloned().expect("norm_g");
    let ns = report.sub_norm("norm_sum").cloned().expect("norm_sum");
    let base = hardy_norm(&literal("1/(1-z)"), p, &env, &cfg.quad)?;
    let equal_fg = equality_of_norms(
        CaseId::HpCounterexample,
        cfg,
        &[("p", p)],
        ("norm_f", nf),
        ("norm_g", ng),
        1.0,
    );
    let four = equality_of_norms(
        CaseId::HpCounterexample,
        cfg,
        &[("p", p)],
        ("norm_sum", ns),
        ("norm_pole", base),
        4.0,
    );
    let extra = vec![
        SubResult::new("closed_form_sum", Detail::Identity(ident)),
        SubResult::new("equal_norms", Detail::Report(Box::new(equal_fg))),
        SubResult::new("sum_is_four_pole_norms", Detail::Report(Box::new(four))),
    ];
    Ok(reverdict(report, extra))
}

/// Appends supporting checks and re-derives the verdict.
fn reverdict(mut report: VerificationReport, extra: Vec<SubResult>) -> VerificationReport {
    report.sub_results.extend(extra);
    let failed: Vec<String> = report
        .sub_results
        .iter()
        .filter(|s| s.failed())
        .map(|s| s.name.clone())
        .collect();
    if report.verdict == Verdict::Confirmed && !failed.is_empty() {
        report.verdict = Verdict::Inconclusive;
        report.notes.push(format!(
            "supporting checks not confirmed: {}",
            failed.join(", ")
        ));
    }
    report
}

/// `||h + k|| = ||h|| + ||k||` in `H^p` for `h = 1/(1-z)`, `k = -h(-z)`.
pub fn verify_hp_equality_case(
    p: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    check_open_unit(p, "hp-equality", 0.0, 1.0)?;
    let env = ParamEnv::new().with("p", p);
    let h = literal("1/(1-z)");
    let k = reflected(&h);
    let claim = Claim::new(CaseId::HpEquality, ClaimKind::Equality, cfg, &[("p", p)]);
    let report = triangle(claim, Space::Hardy, &h, &k, p, &env, cfg)?;

    let sum = Expr::add(h.clone(), k.clone());
    let ident = identity_check(&sum, &literal("2*z/(1-z^2)"), &env, cfg.seed);
    let ns = report.sub_norm("norm_sum").cloned().expect("norm_sum");
    let nh = report.sub_norm("norm_f").cloned().expect("norm_f");
    let twice = equality_of_norms(
        CaseId::HpEquality,
        cfg,
        &[("p", p)],
        ("norm_sum", ns),
        ("norm_h", nh),
        2.0,
    );
    let extra = vec![
        SubResult::new("closed_form_sum", Detail::Identity(ident)),
        SubResult::new("sum_is_twice_norm", Detail::Report(Box::new(twice))),
    ];
    Ok(reverdict(report, extra))
}

/// Admissible perturbations `eps` for a given `p` in `[1/2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsWindow {
    pub lo: f64,
    pub hi: f64,
    pub hi_closed: bool,
}

impl EpsWindow {
    pub fn contains(&self, eps: f64) -> bool {
        eps >= self.lo && (eps < self.hi || (self.hi_closed && eps == self.hi))
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

impl fmt::Display for EpsWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(
                f,
                "[{}, {}{}",
                self.lo,
                self.hi,
                if self.hi_closed { "]" } else { ")" }
            )
        }
    }
}

/// `[(1-p)/p, 2(1-p)/p)` intersected with `eps <= 1`.
pub fn eps_window(p: f64) -> Result<EpsWindow, VerifyError> {
    if !(0.5..1.0).contains(&p) {
        return Err(VerifyError::Precondition(format!(
            "eps window needs 1/2 <= p < 1, got p = {p}"
        )));
    }
    let lo = (1.0 - p) / p;
    let upper = 2.0 * (1.0 - p) / p;
    Ok(if upper > 1.0 {
        EpsWindow {
            lo,
            hi: 1.0,
            hi_closed: true,
        }
    } else {
        EpsWindow {
            lo,
            hi: upper,
            hi_closed: false,
        }
    })
}

/// The large-`p` Bergman counterexample `f = (1+z)^(2-eps) / (1-z)^(2+eps)`.
pub fn verify_ap_large_p(
    p: f64,
    eps: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let window = eps_window(p)?;
    if !window.contains(eps) {
        return Err(VerifyError::Precondition(format!(
            "eps = {eps} lies outside the window {window} for p = {p}"
        )));
    }
    let member = membership_classify(2.0 + eps, p)?;
    if !member.classification.is_member() {
        return Err(VerifyError::Precondition(format!(
            "p (2 + eps) = {} is not below 2",
            member.product
        )));
    }
    let env = ParamEnv::new().with("p", p).with("eps", eps);
    let f = literal("(1+z)^(2-eps)/(1-z)^(2+eps)");
    let g = reflected(&f);
    let claim = Claim::new(
        CaseId::ApLargeP,
        ClaimKind::Strict,
        cfg,
        &[("p", p), ("eps", eps)],
    );
    let report = triangle(claim, Space::Bergman, &f, &g, p, &env, cfg)?;
    let ident = identity_check(
        &Expr::add(f, g),
        &literal("8*z*(1+z^2)/(1-z^2)^(2+eps)"),
        &env,
        cfg.seed,
    );
    let extra = vec![
        SubResult::new("membership", Detail::Membership(member)),
        SubResult::new("closed_form_sum", Detail::Identity(ident)),
    ];
    Ok(reverdict(report, extra))
}

/// The small-`p` Bergman counterexample `f = (1+z)^(4/p)`, with the four
/// supporting checks `norm_f_p`, `sum_lower_bound`, `sum_exceeds`, `constants`.
pub fn verify_ap_small_p(p: f64, cfg: &VerifyConfig) -> Result<VerificationReport, VerifyError> {
    check_open_unit(p, "ap-small-p", 0.0, 0.5)?;
    let env = ParamEnv::new().with("p", p);
    let f = literal("(1+z)^(4/p)");
    let g = reflected(&f);
    let claim = Claim::new(CaseId::ApSmallP, ClaimKind::Strict, cfg, &[("p", p)]);
    let report = triangle(claim, Space::Bergman, &f, &g, p, &env, cfg)?;
    let nf = report.sub_norm("norm_f").cloned().expect("norm_f");
    let ns = report.sub_norm("norm_sum").cloned().expect("norm_sum");
    let bound = small_p_lower_bound();
    let target = 2f64.powf(p) * SMALL_P_NORM_P;

    let mut a = Claim::new(CaseId::ApSmallP, ClaimKind::Equality, cfg, &[("p", p)]);
    a.norm("norm_f", nf.clone());
    let a = a.finish(nf.value_p, SMALL_P_NORM_P, cfg.kappa * nf.abs_err_est);

    let mut b = Claim::new(CaseId::ApSmallP, ClaimKind::AtLeast, cfg, &[("p", p)]);
    b.norm("norm_sum", ns.clone());
    let b = b.finish(ns.value_p, bound, cfg.kappa * ns.abs_err_est);

    let mut c = Claim::new(CaseId::ApSmallP, ClaimKind::Strict, cfg, &[("p", p)]);
    c.norm("norm_sum", ns.clone());
    let c = c.finish(ns.value_p, target, cfg.kappa * ns.abs_err_est);

    let d = Claim::new(CaseId::ApSmallP, ClaimKind::Strict, cfg, &[("p", p)])
        .finish(bound, target, 0.0);

    let extra = vec![
        SubResult::new("norm_f_p", Detail::Report(Box::new(a))),
        SubResult::new("sum_lower_bound", Detail::Report(Box::new(b))),
        SubResult::new("sum_exceeds", Detail::Report(Box::new(c))),
        SubResult::new("constants", Detail::Report(Box::new(d))),
    ];
    Ok(reverdict(report, extra))
}

/// `M_p(r_k) <= M_p(r_{k+1}) + margin` for consecutive radii.
pub fn verify_means_monotone(
    f: &Expr,
    p: f64,
    grid: &[f64],
    env: &ParamEnv,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    if grid.len() < 2 || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(VerifyError::InvalidInput(
            "grid must hold at least two increasing radii".into(),
        ));
    }
    let mut claim = Claim::new(CaseId::MeansMonotone, ClaimKind::AtLeast, cfg, &[("p", p)]);
    let mut means = Vec::with_capacity(grid.len());
    for &r in grid {
        let m = integral_means(f, p, r, env, &cfg.quad)?;
        means.push(claim.norm(&format!("mean_r={r}"), m));
    }
    let mut worst = f64::INFINITY;
    let mut worst_margin = 0.0;
    let mut worst_pair = (0.0, 0.0);
    for w in means.windows(2) {
        let diff = w[1].value - w[0].value;
        let margin = cfg.kappa * (w[0].value_err() + w[1].value_err());
        if diff + margin < worst + worst_margin {
            worst = diff;
            worst_margin = margin;
            worst_pair = (w[1].value, w[0].value);
        }
    }
    Ok(claim.finish(worst_pair.0, worst_pair.1, worst_margin))
}

/// `||f(lambda z)|| = ||f||` for `lambda = e^{i angle}`.
pub fn verify_rotation_invariance(
    space: Space,
    f: &Expr,
    p: f64,
    angle: f64,
    env: &ParamEnv,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let rotated = substitute_scale(f, Complex64::from_polar(1.0, angle));
    let a = norm_in(space, &rotated, p, env, &cfg.quad)?;
    let b = norm_in(space, f, p, env, &cfg.quad)?;
    Ok(equality_of_norms(
        CaseId::RotationInvariance,
        cfg,
        &[("p", p), ("angle", angle)],
        ("norm_rotated", a),
        ("norm_f", b),
        1.0,
    ))
}

/// Inputs for [`run_case`]; each case reads the fields it needs.
#[derive(Debug, Clone, Default)]
pub struct CaseParams {
    pub expr: Option<Expr>,
    pub env: ParamEnv,
    pub p: Option<f64>,
    pub eps: Option<f64>,
    pub alpha: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub q: Option<f64>,
    pub radii: Option<Vec<f64>>,
    pub angle: Option<f64>,
    pub space: Option<Space>,
}

impl CaseParams {
    fn need(v: Option<f64>, name: &str, case: CaseId) -> Result<f64, VerifyError> {
        v.ok_or_else(|| VerifyError::InvalidInput(format!("case {case} needs --{name}")))
    }

    fn expr(&self, case: CaseId) -> Result<&Expr, VerifyError> {
        self.expr
            .as_ref()
            .ok_or_else(|| VerifyError::InvalidInput(format!("case {case} needs --expr")))
    }
}

/// Means-monotonicity grid used when none is given: `0.1, 0.2, ..., 0.9, 0.95, 0.99`.
pub fn default_means_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    g.extend([0.95, 0.99]);
    g
}

/// Dispatches a case by id.
pub fn run_case(
    case: CaseId,
    params: &CaseParams,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let p = || CaseParams::need(params.p, "p", case);
    match case {
        CaseId::LemmaCvh => verify_lemma_cvh(params.expr(case)?, p()?, &params.env, cfg),
        CaseId::LemmaCv => verify_lemma_cv(params.expr(case)?, p()?, &params.env, cfg),
        CaseId::LemmaElem => verify_elem_inequality(
            CaseParams::need(params.a, "a", case)?,
            CaseParams::need(params.b, "b", case)?,
            CaseParams::need(params.q, "q", case)?,
        ),
        CaseId::LemmaAp => {
            let radii = params.radii.clone().unwrap_or_else(default_radii);
            verify_lemma_ap(
                CaseParams::need(params.alpha, "alpha", case)?,
                p()?,
                &radii,
                cfg,
            )
        }
        CaseId::HpCounterexample => verify_hp_counterexample(p()?, cfg),
        CaseId::HpEquality => verify_hp_equality_case(p()?, cfg),
        CaseId::ApLargeP => {
            let p = p()?;
            let eps = match params.eps {
                Some(e) => e,
                None => eps_window(p)?.midpoint(),
            };
            verify_ap_large_p(p, eps, cfg)
        }
        CaseId::ApSmallP => verify_ap_small_p(p()?, cfg),
        CaseId::MeansMonotone => {
            let grid = params.radii.clone().unwrap_or_else(default_means_grid);
            verify_means_monotone(params.expr(case)?, p()?, &grid, &params.env, cfg)
        }
        CaseId::RotationInvariance => verify_rotation_invariance(
            params.space.unwrap_or(Space::Hardy),
            params.expr(case)?,
            p()?,
            params.angle.unwrap_or(1.0),
            &params.env,
            cfg,
        ),
    }
}
