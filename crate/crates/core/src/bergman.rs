//! Bergman-space quasi-norms and membership of `(1 - z)^(-alpha)`.
//!
//! `||f||^p` is the iterated integral `int_0^1 2r M_p^p(r; f) dr`: an outer radial
//! integral whose every node runs a circle mean. When `f` has boundary
//! singularities the outer rule clusters its nodes at `r = 1`, and each circle
//! is split and anchored at the singular angles.

use std::cell::Cell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::expr::{Expr, ParamEnv, TaylorCoeffs};
use crate::norm::{check_p, CircleIntegrand, NormError, NormResult, Space};
use crate::quad::{integrate, integrate_samples, Abscissa, QuadConfig, QuadResult, Sample};

/// Tightening of the inner (angular) tolerances relative to the outer rule.
pub const INNER_TOL_FACTOR: f64 = 0.1;
/// Distance from `p * alpha = 2` treated as the boundary case.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `||f||_{A^p}` with singular angles found structurally.
pub fn bergman_norm(
    f: &Expr,
    p: f64,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<NormResult, NormError> {
    bergman_norm_at(f, p, env, None, cfg)
}

/// Like [`bergman_norm`], with explicit boundary singular angles when given.
pub fn bergman_norm_at(
    f: &Expr,
    p: f64,
    env: &ParamEnv,
    singular: Option<&[f64]>,
    cfg: &QuadConfig,
) -> Result<NormResult, NormError> {
    let integrand = CircleIntegrand::new(f, p, env, singular)?;
    match radial(&integrand, &|_| 1.0, cfg) {
        Ok(q) => Ok(NormResult::from_quad(Space::Bergman, p, &q)),
        Err(e) if e.is_overflow() => Ok(NormResult::divergent(Space::Bergman, p)),
        Err(e) => Err(e),
    }
}

/// `int_D |f(z)|^p w(|z|) dA(z)` for a radial weight `w`.
pub fn area_integral(
    f: &Expr,
    p: f64,
    env: &ParamEnv,
    weight: &dyn Fn(f64) -> f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, NormError> {
    let integrand = CircleIntegrand::new(f, p, env, None)?;
    radial(&integrand, weight, cfg)
}

fn radial(
    integrand: &CircleIntegrand,
    weight: &dyn Fn(f64) -> f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, NormError> {
    let mut inner = cfg.with_tolerances(
        cfg.abs_tol * INNER_TOL_FACTOR,
        cfg.rel_tol * INNER_TOL_FACTOR,
    );
    inner.max_evaluations = (cfg.max_evaluations / 10).max(1000);
    let outer = cfg.with_singular(false, integrand.has_singularities());
    let inner_evals = Cell::new(0usize);
    let mut q = integrate_samples(
        |n: &Abscissa| -> Result<Sample, NormError> {
            let r = n.x;
            let m = integrand
                .circle_mean(n.from_right, &inner)
                .map_err(|e| NormError::Inner {
                    radius: r,
                    source: Box::new(e),
                })?;
            inner_evals.set(inner_evals.get() + m.evaluations);
            let w = 2.0 * r * weight(r);
            Ok(Sample {
                value: w * m.value,
                err: w.abs() * m.abs_err_est,
            })
        },
        0.0,
        1.0,
        &outer,
    )?;
    q.evaluations += inner_evals.get();
    Ok(q)
}

/// `||f||_{A^2}^2 = sum |a_n|^2 / (n + 1)`, exact up to rounding.
pub fn bergman_norm_coeffs(c: &TaylorCoeffs) -> NormResult {
    let value_p = c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm_sqr() / (n as f64 + 1.0))
        .sum();
    NormResult::exact(Space::Bergman, 2.0, value_p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Member,
    NonMember,
    /// `p * alpha = 2`: not a member, reported separately.
    Boundary,
}

impl Classification {
    pub fn is_member(self) -> bool {
        self == Classification::Member
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthDiagnostic {
    Convergent,
    DivergentLog,
    DivergentPoly,
}

impl GrowthDiagnostic {
    pub fn from_ratio(ratio: f64) -> Self {
        if ratio < 0.9 {
            GrowthDiagnostic::Convergent
        } else if ratio <= 1.1 {
            GrowthDiagnostic::DivergentLog
        } else {
            GrowthDiagnostic::DivergentPoly
        }
    }

    pub fn is_convergent(self) -> bool {
        self == GrowthDiagnostic::Convergent
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvidencePoint {
    pub radius: f64,
    pub integral: f64,
    pub abs_err_est: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub alpha: f64,
    pub p: f64,
    pub product: f64,
    pub classification: Classification,
    pub evidence: Vec<EvidencePoint>,
    /// Ratio of the last two increments of the truncated integrals.
    pub increment_ratio: Option<f64>,
    pub diagnostic: Option<GrowthDiagnostic>,
}

fn check_alpha_p(alpha: f64, p: f64) -> Result<(), NormError> {
    check_p(p)?;
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(NormError::InvalidInput(format!(
            "alpha must be positive and finite, got {alpha}"
        )))
    }
}

/// Rule-based membership of `(1 - z)^(-alpha)` in `A^p`: member iff `p alpha < 2`.
pub fn membership_classify(alpha: f64, p: f64) -> Result<MembershipVerdict, NormError> {
    check_alpha_p(alpha, p)?;
    let product = p * alpha;
    let classification = if (product - 2.0).abs() <= BOUNDARY_TOL {
        Classification::Boundary
    } else if product < 2.0 {
        Classification::Member
    } else {
        Classification::NonMember
    };
    Ok(MembershipVerdict {
        alpha,
        p,
        product,
        classification,
        evidence: Vec::new(),
        increment_ratio: None,
        diagnostic: None,
    })
}

/// Radii `1 - 2^-k` for `k = 2..=12`.
pub fn default_radii() -> Vec<f64> {
    (2..=12).map(|k| 1.0 - 0.5_f64.powi(k)).collect()
}

/// Classification plus truncated integrals `I(R) = int_{|z| <= R} |1 - z|^(-p alpha) dA`
/// and a growth diagnostic from the ratio of the last two increments.
pub fn membership_evidence(
    alpha: f64,
    p: f64,
    radii: &[f64],
    cfg: &QuadConfig,
) -> Result<MembershipVerdict, NormError> {
    let mut verdict = membership_classify(alpha, p)?;
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NormError::InvalidInput(
            "radii must be strictly increasing in (0, 1)".into(),
        ));
    }
    for &radius in radii {
        let q = truncated_integral(verdict.product, radius, cfg).map_err(|e| NormError::Inner {
            radius,
            source: Box::new(e),
        })?;
        verdict.evidence.push(EvidencePoint {
            radius,
            integral: q.value,
            abs_err_est: q.abs_err_est,
        });
    }
    if let [.., a, b, c] = verdict.evidence.as_slice() {
        let ratio = (c.integral - b.integral) / (b.integral - a.integral);
        verdict.increment_ratio = Some(ratio);
        verdict.diagnostic = Some(GrowthDiagnostic::from_ratio(ratio));
    }
    Ok(verdict)
}

/// `int_{|z| <= R} |1 - z|^(-s) dA` in polar coordinates centred at `z = 1`.
///
/// With `z = 1 - rho e^{i theta}`, the disk `|z| <= R` is `rho_- <= rho <= rho_+`
/// for `cos theta >= sqrt(1 - R^2)`, and the radial integral is done in closed form.
pub fn truncated_integral(s: f64, radius: f64, cfg: &QuadConfig) -> Result<QuadResult, NormError> {
    let gap = (1.0 - radius) * (1.0 + radius);
    let theta_max = gap.sqrt().acos();
    let e = 2.0 - s;
    let radial = |theta: f64| {
        let c = theta.cos();
        let d = (c * c - gap).max(0.0).sqrt();
        let hi = c + d;
        let lo = gap / hi;
        if e == 0.0 {
            (hi / lo).ln()
        } else {
            ((e * hi.ln()).exp_m1() - (e * lo.ln()).exp_m1()) / e
        }
    };
    let q = integrate(radial, 0.0, theta_max, &cfg.with_singular(false, true))?;
    let c = 2.0 / PI;
    Ok(QuadResult {
        value: c * q.value,
        abs_err_est: c * q.abs_err_est,
        ..q
    })
}
