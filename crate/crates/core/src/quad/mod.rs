//! One-dimensional adaptive quadrature.
//!
//! Regular intervals use globally adaptive Gauss-Kronrod (G7/K15) bisection. When
//! an endpoint is flagged singular the whole interval is first mapped through the
//! double-exponential change of variable
//!
//! ```text
//! x(t) = a + (b - a) / (1 + exp(-pi sinh t))
//! ```
//!
//! and the (now rapidly decaying) integrand is integrated adaptively in `t`. The
//! integrand receives each node's distance to both endpoints computed directly
//! from `t`, so it never sees a rounded endpoint.

mod rules;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use rules::{WG, WGK, XGK};

/// Inflation applied to the Gauss/Kronrod difference.
pub const SAFETY_FACTOR: f64 = 4.0;

/// Closest relative approach to a singular endpoint.
const SINGULAR_FLOOR: f64 = 1e-300;
/// Closest relative approach to a regular endpoint inside a transformed interval.
const REGULAR_FLOOR: f64 = 1e-20;
const DE_INITIAL_PANELS: usize = 6;
const REFINABLE_FLOOR: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite integrand value at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid breakpoints: {0}")]
    Breakpoints(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
    pub singular_left: bool,
    pub singular_right: bool,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_evaluations: 2_000_000,
            singular_left: false,
            singular_right: false,
        }
    }
}

impl QuadConfig {
    pub fn with_singular(mut self, left: bool, right: bool) -> Self {
        self.singular_left = left;
        self.singular_right = right;
        self
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(QuadError::InvalidConfig(format!(
                "abs_tol = {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(QuadError::InvalidConfig(format!(
                "rel_tol = {}",
                self.rel_tol
            )));
        }
        if self.max_evaluations < 100 {
            return Err(QuadError::InvalidConfig(format!(
                "max_evaluations = {} (minimum 100)",
                self.max_evaluations
            )));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// The truncated endpoint tail carries more than 10% of the value, the
    /// signature of a non-integrable endpoint singularity.
    pub tail_dominated: bool,
}

impl QuadResult {
    fn combine(results: &[QuadResult], cfg: &QuadConfig) -> QuadResult {
        let value = results.iter().map(|r| r.value).sum::<f64>();
        let abs_err_est = results.iter().map(|r| r.abs_err_est).sum::<f64>();
        QuadResult {
            value,
            abs_err_est,
            evaluations: results.iter().map(|r| r.evaluations).sum(),
            converged: results.iter().all(|r| r.converged) && abs_err_est <= cfg.target(value),
            tail_dominated: results.iter().any(|r| r.tail_dominated),
        }
    }
}

/// A quadrature node with its exact distances to both interval endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_left: f64,
    pub from_right: f64,
}

/// An integrand value together with its own absolute error (for nested integrals).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub value: f64,
    pub err: f64,
}

impl Sample {
    pub fn exact(value: f64) -> Self {
        Sample { value, err: 0.0 }
    }
}

/// An interval endpoint for [`integrate_piecewise`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub x: f64,
    pub singular: bool,
}

impl Breakpoint {
    pub fn regular(x: f64) -> Self {
        Breakpoint { x, singular: false }
    }

    pub fn singular(x: f64) -> Self {
        Breakpoint { x, singular: true }
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    integrate_samples(
        |n: &Abscissa| Ok::<_, QuadError>(Sample::exact(f(n.x))),
        a,
        b,
        cfg,
    )
}

/// Like [`integrate`], but the integrand sees each node's endpoint distances.
pub fn integrate_abscissa(
    mut f: impl FnMut(&Abscissa) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    integrate_samples(
        |n: &Abscissa| Ok::<_, QuadError>(Sample::exact(f(n))),
        a,
        b,
        cfg,
    )
}

/// General form: a fallible integrand returning values with their own error bars.
///
/// Sample errors are accumulated with the quadrature weights into the reported
/// error, but are not targets of refinement.
pub fn integrate_samples<E, F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult, E>
where
    E: From<QuadError>,
    F: FnMut(&Abscissa) -> Result<Sample, E>,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadError::InvalidInterval { a, b }.into());
    }
    let map = if cfg.singular_left || cfg.singular_right {
        Map::double_exponential(a, b, cfg.singular_left, cfg.singular_right)
    } else {
        Map::Linear { a, b }
    };
    adaptive(&mut f, &map, cfg)
}

/// Sum of per-piece integrals over consecutive breakpoints; each piece inherits the
/// singular flags of its two endpoints.
pub fn integrate_piecewise(
    f: impl Fn(f64) -> f64,
    breakpoints: &[Breakpoint],
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    integrate_piecewise_samples(
        |n: &Abscissa| Ok::<_, QuadError>(Sample::exact(f(n.x))),
        breakpoints,
        cfg,
    )
}

pub fn integrate_piecewise_samples<E, F>(
    mut f: F,
    breakpoints: &[Breakpoint],
    cfg: &QuadConfig,
) -> Result<QuadResult, E>
where
    E: From<QuadError>,
    F: FnMut(&Abscissa) -> Result<Sample, E>,
{
    if breakpoints.len() < 2 {
        return Err(QuadError::Breakpoints("need at least two breakpoints".into()).into());
    }
    if breakpoints
        .windows(2)
        .any(|w| w[0].x.partial_cmp(&w[1].x) != Some(std::cmp::Ordering::Less))
    {
        return Err(
            QuadError::Breakpoints("breakpoints must be strictly increasing".into()).into(),
        );
    }
    cfg.validate()?;
    let pieces = breakpoints.len() - 1;
    let mut piece_cfg = *cfg;
    piece_cfg.abs_tol = cfg.abs_tol / pieces as f64;
    piece_cfg.max_evaluations = (cfg.max_evaluations / pieces).max(100);
    let mut results = Vec::with_capacity(pieces);
    for w in breakpoints.windows(2) {
        let c = piece_cfg.with_singular(w[0].singular, w[1].singular);
        results.push(integrate_samples(&mut f, w[0].x, w[1].x, &c)?);
    }
    Ok(QuadResult::combine(&results, cfg))
}

enum Map {
    Linear {
        a: f64,
        b: f64,
    },
    DoubleExp {
        a: f64,
        b: f64,
        t_lo: f64,
        t_hi: f64,
    },
}

impl Map {
    fn double_exponential(a: f64, b: f64, left: bool, right: bool) -> Map {
        let reach = |floor: f64| (-floor.ln() / PI).asinh();
        let t_lo = -reach(if left { SINGULAR_FLOOR } else { REGULAR_FLOOR });
        let t_hi = reach(if right { SINGULAR_FLOOR } else { REGULAR_FLOOR });
        Map::DoubleExp { a, b, t_lo, t_hi }
    }

    fn domain(&self) -> (f64, f64) {
        match *self {
            Map::Linear { a, b } => (a, b),
            Map::DoubleExp { t_lo, t_hi, .. } => (t_lo, t_hi),
        }
    }

    fn initial_panels(&self) -> usize {
        match self {
            Map::Linear { .. } => 1,
            Map::DoubleExp { .. } => DE_INITIAL_PANELS,
        }
    }

    /// Node in the original variable and the Jacobian `dx/dt`.
    fn node(&self, t: f64) -> (Abscissa, f64) {
        match *self {
            Map::Linear { a, b } => (
                Abscissa {
                    x: t,
                    from_left: t - a,
                    from_right: b - t,
                },
                1.0,
            ),
            Map::DoubleExp { a, b, .. } => {
                let len = b - a;
                let u = PI * t.sinh();
                let e = (-u.abs()).exp();
                let small = len * e / (1.0 + e);
                let big = len / (1.0 + e);
                let (from_left, from_right) = if u >= 0.0 { (big, small) } else { (small, big) };
                let x = if from_left <= from_right {
                    a + from_left
                } else {
                    b - from_right
                };
                let jac = len * PI * t.cosh() * e / ((1.0 + e) * (1.0 + e));
                (
                    Abscissa {
                        x,
                        from_left,
                        from_right,
                    },
                    jac,
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    /// Refinable part: inflated Gauss/Kronrod difference with a roundoff floor.
    err: f64,
    /// Weighted sample errors.
    nested: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn sample_at<E, F>(f: &mut F, map: &Map, t: f64) -> Result<(f64, f64), E>
where
    E: From<QuadError>,
    F: FnMut(&Abscissa) -> Result<Sample, E>,
{
    let (node, jac) = map.node(t);
    let s = f(&node)?;
    if !s.value.is_finite() {
        return Err(QuadError::NonFinite { x: node.x }.into());
    }
    let v = s.value * jac;
    if !v.is_finite() {
        return Err(QuadError::NonFinite { x: node.x }.into());
    }
    Ok((v, s.err.abs() * jac))
}

fn gauss_kronrod<E, F>(f: &mut F, map: &Map, lo: f64, hi: f64) -> Result<Panel, E>
where
    E: From<QuadError>,
    F: FnMut(&Abscissa) -> Result<Sample, E>,
{
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let (fc, ec) = sample_at(f, map, c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut nested = WGK[7] * ec;
    for j in 0..7 {
        let (f1, e1) = sample_at(f, map, c - h * XGK[j])?;
        let (f2, e2) = sample_at(f, map, c + h * XGK[j])?;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        nested += WGK[j] * (e1 + e2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * h;
    let diff = SAFETY_FACTOR * ((kronrod - gauss) * h).abs();
    let roundoff = 50.0 * f64::EPSILON * resabs * h.abs();
    Ok(Panel {
        lo,
        hi,
        value,
        err: diff.max(roundoff),
        nested: nested * h,
    })
}

fn adaptive<E, F>(f: &mut F, map: &Map, cfg: &QuadConfig) -> Result<QuadResult, E>
where
    E: From<QuadError>,
    F: FnMut(&Abscissa) -> Result<Sample, E>,
{
    const PANEL_EVALS: usize = 15;
    let (lo, hi) = map.domain();
    let n0 = map.initial_panels();
    let width = (hi - lo) / n0 as f64;
    let min_width = (hi - lo) * 1e-13;
    let mut evaluations = 0;

    let tail = match map {
        Map::Linear { .. } => 0.0,
        Map::DoubleExp { t_lo, t_hi, .. } => {
            let (v_lo, e_lo) = sample_at(f, map, *t_lo)?;
            let (v_hi, e_hi) = sample_at(f, map, *t_hi)?;
            evaluations += 2;
            v_lo.abs() + v_hi.abs() + e_lo + e_hi
        }
    };

    let mut heap = BinaryHeap::new();
    let mut frozen = Vec::new();
    let mut value = 0.0;
    let mut err = 0.0;
    let mut nested = 0.0;
    for k in 0..n0 {
        let a = lo + width * k as f64;
        let b = if k + 1 == n0 {
            hi
        } else {
            lo + width * (k + 1) as f64
        };
        let p = gauss_kronrod(f, map, a, b)?;
        evaluations += PANEL_EVALS;
        value += p.value;
        err += p.err;
        nested += p.nested;
        heap.push(p);
    }

    // sample errors and the tail do not shrink under bisection; stop refining once
    // the refinable part is negligible even if they alone exceed the target
    while err + nested + tail > cfg.target(value)
        && err > REFINABLE_FLOOR * cfg.target(value)
        && evaluations + 2 * PANEL_EVALS <= cfg.max_evaluations
    {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.hi - worst.lo < min_width || mid <= worst.lo || mid >= worst.hi {
            frozen.push(worst);
            continue;
        }
        let left = gauss_kronrod(f, map, worst.lo, mid)?;
        let right = gauss_kronrod(f, map, mid, worst.hi)?;
        evaluations += 2 * PANEL_EVALS;
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        nested += left.nested + right.nested - worst.nested;
        heap.push(left);
        heap.push(right);
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let refinable: f64 = panels.iter().map(|p| p.err).sum();
    let nested: f64 = panels.iter().map(|p| p.nested).sum();

    let abs_err_est = refinable + nested + tail;
    Ok(QuadResult {
        value,
        abs_err_est,
        evaluations,
        converged: abs_err_est <= cfg.target(value),
        tail_dominated: tail > 0.1 * value.abs(),
    })
}
