//! Integral means and Hardy-space quasi-norms.
//!
//! The Hardy norm is taken from boundary values: `|f|^p` is integrated directly on
//! the unit circle, split at the boundary singularities of `f`.

use crate::expr::{Expr, ParamEnv};
use crate::norm::{CircleIntegrand, NormError, NormResult, Space};
use crate::quad::QuadConfig;

/// `M_p(r; f)` together with its `p`-th power and error estimate.
///
/// The result is tagged [`Space::Hardy`]; `value` is the mean itself.
pub fn integral_means(
    f: &Expr,
    p: f64,
    r: f64,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<NormResult, NormError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(NormError::InvalidInput(format!(
            "radius must lie in (0, 1), got {r}"
        )));
    }
    let integrand = CircleIntegrand::new(f, p, env, None)?;
    let q = integrand.circle_mean(1.0 - r, cfg)?;
    Ok(NormResult::from_quad(Space::Hardy, p, &q))
}

/// `||f||_{H^p}` from boundary values, with singular angles found structurally.
pub fn hardy_norm(
    f: &Expr,
    p: f64,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<NormResult, NormError> {
    hardy_norm_at(f, p, env, None, cfg)
}

/// Like [`hardy_norm`], with explicit boundary singular angles (radians) when given.
///
/// An integrand that overflows or whose truncated endpoint tails dominate is
/// reported as a non-converged result with the `Divergent` hint.
pub fn hardy_norm_at(
    f: &Expr,
    p: f64,
    env: &ParamEnv,
    singular: Option<&[f64]>,
    cfg: &QuadConfig,
) -> Result<NormResult, NormError> {
    let integrand = CircleIntegrand::new(f, p, env, singular)?;
    match integrand.circle_mean(0.0, cfg) {
        Ok(q) => Ok(NormResult::from_quad(Space::Hardy, p, &q)),
        Err(e) if e.is_overflow() => Ok(NormResult::divergent(Space::Hardy, p)),
        Err(e) => Err(e),
    }
}
