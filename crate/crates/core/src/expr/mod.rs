//! Analytic-function expressions: parsing, printing, evaluation, and the
//! structural transformations needed by the norm computations.

mod ast;
mod compiled;
mod env;
mod eval;
mod parse;
mod poly;
mod singular;
mod subst;

use num_complex::Complex64;
use thiserror::Error;

pub use ast::{Exponent, Expr};
pub use compiled::{CompiledExpr, DiskPoint, Wide};
pub use env::ParamEnv;
pub use eval::eval;
pub use parse::{parse, ParseError, ParseErrorKind, PARAM_NAMES};
pub use poly::{to_polynomial, Binomial, TaylorCoeffs};
pub use singular::{boundary_singularities, boundary_singularities_in, singular_points, UnitPoint};
pub use subst::{substitute_negate, substitute_scale, substitute_square};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("parameter '{0}' is not bound")]
    UnboundParam(String),
    #[error("invalid value {value} for parameter '{name}'")]
    InvalidParam { name: String, value: f64 },
    #[error("power base {base} lies on the principal-branch cut (-inf, 0]")]
    BranchCut { base: Complex64 },
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Returns `Some(n)` when `s` is an integer up to a relative `1e-12` snap.
pub(crate) fn as_integer(s: f64) -> Option<i32> {
    let r = s.round();
    if (s - r).abs() <= 1e-12 * r.abs().max(1.0) && r.abs() < i32::MAX as f64 {
        Some(r as i32)
    } else {
        None
    }
}
