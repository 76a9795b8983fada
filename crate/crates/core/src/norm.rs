//! Shared result types and the circle-mean integral behind both norms.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{
    singular_points, CompiledExpr, DiskPoint, EvalError, Expr, ExprError, ParamEnv, UnitPoint,
};
use crate::quad::{integrate_samples, Abscissa, QuadConfig, QuadError, QuadResult, Sample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Hardy,
    Bergman,
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Space::Hardy => "hardy",
            Space::Bergman => "bergman",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormHint {
    /// The integral does not appear to be finite.
    Divergent,
}

/// A quasi-norm evaluation. `abs_err_est` refers to `value_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub space: Space,
    pub p: f64,
    pub value_p: f64,
    pub value: f64,
    pub abs_err_est: f64,
    pub converged: bool,
    pub evaluations: usize,
    pub hint: Option<NormHint>,
}

impl NormResult {
    pub fn from_quad(space: Space, p: f64, q: &QuadResult) -> Self {
        let value_p = q.value.max(0.0);
        let divergent = !q.converged && q.tail_dominated;
        NormResult {
            space,
            p,
            value_p,
            value: value_p.powf(1.0 / p),
            abs_err_est: q.abs_err_est,
            converged: q.converged,
            evaluations: q.evaluations,
            hint: divergent.then_some(NormHint::Divergent),
        }
    }

    pub fn exact(space: Space, p: f64, value_p: f64) -> Self {
        NormResult {
            space,
            p,
            value_p,
            value: value_p.powf(1.0 / p),
            abs_err_est: 0.0,
            converged: true,
            evaluations: 0,
            hint: None,
        }
    }

    pub(crate) fn divergent(space: Space, p: f64) -> Self {
        NormResult {
            space,
            p,
            value_p: f64::INFINITY,
            value: f64::INFINITY,
            abs_err_est: f64::INFINITY,
            converged: false,
            evaluations: 0,
            hint: Some(NormHint::Divergent),
        }
    }

    pub fn is_divergent(&self) -> bool {
        self.hint == Some(NormHint::Divergent)
    }

    /// Error estimate transferred from `value_p` to `value = value_p^(1/p)`.
    pub fn value_err(&self) -> f64 {
        if self.value_p > 0.0 {
            self.value * self.abs_err_est / (self.p * self.value_p)
        } else {
            self.abs_err_est.powf(1.0 / self.p)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("inner integral failed at radius {radius}: {source}")]
    Inner {
        radius: f64,
        #[source]
        source: Box<NormError>,
    },
}

impl NormError {
    /// True when the failure is an overflowing sample, i.e. evidence of divergence.
    pub fn is_overflow(&self) -> bool {
        match self {
            NormError::Quad(QuadError::NonFinite { .. }) => true,
            NormError::Inner { source, .. } => source.is_overflow(),
            _ => false,
        }
    }
}

pub(crate) fn check_p(p: f64) -> Result<(), NormError> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(NormError::InvalidInput(format!(
            "p must be positive and finite, got {p}"
        )))
    }
}

/// `env` with `p` bound to the norm exponent unless the caller bound it already.
pub(crate) fn env_with_p(env: &ParamEnv, p: f64) -> Result<ParamEnv, NormError> {
    let mut env = env.clone();
    if env.get("p").is_none() {
        env.set("p", p)?;
    }
    Ok(env)
}

/// `|f|^p` prepared for circle integration, with its boundary singularities.
pub(crate) struct CircleIntegrand {
    f: CompiledExpr,
    anchors: Vec<UnitPoint>,
    p: f64,
}

impl CircleIntegrand {
    /// `singular` overrides structural singularity detection (angles in radians).
    pub(crate) fn new(
        e: &Expr,
        p: f64,
        env: &ParamEnv,
        singular: Option<&[f64]>,
    ) -> Result<Self, NormError> {
        check_p(p)?;
        let env = env_with_p(env, p)?;
        let anchors = match singular {
            Some(angles) => {
                let mut pts: Vec<UnitPoint> =
                    angles.iter().map(|&a| UnitPoint::from_angle(a)).collect();
                pts.sort_by(|a, b| a.angle.total_cmp(&b.angle));
                pts.dedup_by(|a, b| (a.angle - b.angle).abs() < 1e-12);
                pts
            }
            None => singular_points(e, &env)?,
        };
        Ok(CircleIntegrand {
            f: CompiledExpr::new(e, &env)?,
            anchors,
            p,
        })
    }

    pub(crate) fn has_singularities(&self) -> bool {
        !self.anchors.is_empty()
    }

    /// `(1/2pi) int |f((1 - one_minus_r) e^{i theta})|^p d theta`.
    ///
    /// Each piece between consecutive singular angles is integrated with both ends
    /// flagged, and every node is anchored at its nearer singular point, so the same
    /// code serves the boundary circle and circles just inside it.
    pub(crate) fn circle_mean(
        &self,
        one_minus_r: f64,
        cfg: &QuadConfig,
    ) -> Result<QuadResult, NormError> {
        let p = self.p;
        let r = 1.0 - one_minus_r;
        if self.anchors.is_empty() {
            let q = integrate_samples(
                |n: &Abscissa| -> Result<Sample, NormError> {
                    let pt = DiskPoint::polar(r, n.x);
                    Ok(Sample::exact(self.f.abs_pow(&pt, p)?))
                },
                0.0,
                TAU,
                cfg,
            )?;
            return Ok(scale(q, 1.0 / TAU));
        }

        // keep peak values near 1 so that |f|^p cannot overflow for r < 1
        let log_scale = if one_minus_r > 0.0 {
            self.anchors
                .iter()
                .filter_map(|a| {
                    self.f
                        .ln_abs_pow(&DiskPoint::anchored(a.point, one_minus_r, 0.0), p)
                        .ok()
                })
                .filter(|v| v.is_finite())
                .fold(0.0_f64, f64::max)
        } else {
            0.0
        };
        let factor = (-log_scale).exp();

        let k = self.anchors.len();
        let mut piece_cfg = cfg.with_singular(true, true);
        piece_cfg.abs_tol = (cfg.abs_tol * TAU * factor / k as f64).max(f64::MIN_POSITIVE);
        piece_cfg.max_evaluations = (cfg.max_evaluations / k).max(100);

        let mut total = QuadResult {
            value: 0.0,
            abs_err_est: 0.0,
            evaluations: 0,
            converged: true,
            tail_dominated: false,
        };
        for i in 0..k {
            let left = self.anchors[i];
            let right = self.anchors[(i + 1) % k];
            let mut hi = right.angle;
            if i + 1 == k {
                hi += TAU;
            }
            let q = integrate_samples(
                |n: &Abscissa| -> Result<Sample, NormError> {
                    let pt = if n.from_left <= n.from_right {
                        DiskPoint::anchored(left.point, one_minus_r, n.from_left)
                    } else {
                        DiskPoint::anchored(right.point, one_minus_r, -n.from_right)
                    };
                    let lp = self.f.ln_abs_pow(&pt, p)?;
                    Ok(Sample::exact((lp - log_scale).exp()))
                },
                left.angle,
                hi,
                &piece_cfg,
            )?;
            total.value += q.value;
            total.abs_err_est += q.abs_err_est;
            total.evaluations += q.evaluations;
            total.converged &= q.converged;
            total.tail_dominated |= q.tail_dominated;
        }
        let mut out = scale_log(total, log_scale - TAU.ln());
        out.converged =
            out.converged && out.abs_err_est <= cfg.abs_tol.max(cfg.rel_tol * out.value.abs());
        if !(out.value.is_finite() && out.abs_err_est.is_finite()) {
            return Err(QuadError::NonFinite { x: r }.into());
        }
        Ok(out)
    }
}

/// Multiplies by `exp(log_c)` without forming the possibly overflowing factor.
fn scale_log(mut q: QuadResult, log_c: f64) -> QuadResult {
    let mul = |v: f64| {
        if v > 0.0 {
            (v.ln() + log_c).exp()
        } else {
            v * log_c.exp()
        }
    };
    q.value = mul(q.value);
    q.abs_err_est = mul(q.abs_err_est);
    q
}

fn scale(mut q: QuadResult, c: f64) -> QuadResult {
    q.value *= c;
    q.abs_err_est *= c;
    q
}
