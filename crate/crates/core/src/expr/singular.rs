use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{to_polynomial, Expr, ExprError, ParamEnv};

const UNIT_TOL: f64 = 1e-12;

/// A point on the unit circle with its angle in `[0, 2pi)`.
///
/// `point` is the exact root value the factorized evaluator uses, so offsets
/// `z - point` can be formed without cancellation near the singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    pub angle: f64,
    pub point: Complex64,
}

impl UnitPoint {
    pub fn from_point(point: Complex64) -> Self {
        let mut angle = point.arg();
        if angle < 0.0 {
            angle += TAU;
        }
        if angle >= TAU {
            angle -= TAU;
        }
        UnitPoint { angle, point }
    }

    pub fn from_angle(angle: f64) -> Self {
        let angle = angle.rem_euclid(TAU);
        let point = if angle == 0.0 {
            Complex64::new(1.0, 0.0)
        } else if angle == std::f64::consts::PI {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, angle)
        };
        UnitPoint { angle, point }
    }
}

/// Angles `theta` in `[0, 2pi)` where a denominator, or the base of a power whose
/// exponent is not a known non-negative constant, vanishes at `e^{i theta}`.
///
/// Parameters are left unbound, so parameter exponents are treated as possibly
/// negative. Use [`boundary_singularities_in`] to resolve them.
pub fn boundary_singularities(e: &Expr) -> Result<Vec<f64>, ExprError> {
    boundary_singularities_in(e, &ParamEnv::new())
}

pub fn boundary_singularities_in(e: &Expr, env: &ParamEnv) -> Result<Vec<f64>, ExprError> {
    Ok(singular_points(e, env)?
        .into_iter()
        .map(|u| u.angle)
        .collect())
}

/// Boundary singularities with their exact root values, sorted by angle.
pub fn singular_points(e: &Expr, env: &ParamEnv) -> Result<Vec<UnitPoint>, ExprError> {
    let mut roots = Vec::new();
    singular(e, env, &mut roots)?;
    let mut points: Vec<UnitPoint> = Vec::new();
    for r in roots {
        if !points.iter().any(|u| (u.point - r).norm() < UNIT_TOL) {
            points.push(UnitPoint::from_point(r));
        }
    }
    points.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    Ok(points)
}

fn singular(e: &Expr, env: &ParamEnv, out: &mut Vec<Complex64>) -> Result<(), ExprError> {
    match e {
        Expr::Const(_) | Expr::Z | Expr::Param(_) => Ok(()),
        Expr::Add(l, r) | Expr::Mul(l, r) => {
            singular(l, env, out)?;
            singular(r, env, out)
        }
        Expr::Neg(x) => singular(x, env, out),
        Expr::Div(n, d) => {
            singular(n, env, out)?;
            singular(d, env, out)?;
            boundary_zeros(d, env, out)
        }
        Expr::Pow(b, s) => {
            singular(b, env, out)?;
            let non_negative = s.resolve(env).map(|v| v >= 0.0).unwrap_or(false);
            if non_negative {
                Ok(())
            } else {
                boundary_zeros(b, env, out)
            }
        }
    }
}

/// Zeros of `e` on the unit circle, determined from binomial factors.
fn boundary_zeros(e: &Expr, env: &ParamEnv, out: &mut Vec<Complex64>) -> Result<(), ExprError> {
    if let Ok(poly) = to_polynomial(e, env) {
        if poly.is_zero() {
            return Err(ExprError::UnsupportedForm(format!(
                "'{e}' vanishes identically"
            )));
        }
        if let Some(b) = poly.binomial() {
            out.extend(
                b.roots()
                    .into_iter()
                    .filter(|r| (r.norm() - 1.0).abs() < UNIT_TOL),
            );
            return Ok(());
        }
    }
    match e {
        Expr::Const(c) if *c == Complex64::new(0.0, 0.0) => {
            Err(ExprError::UnsupportedForm("zero denominator".into()))
        }
        Expr::Const(_) | Expr::Z | Expr::Param(_) => Ok(()),
        Expr::Neg(x) => boundary_zeros(x, env, out),
        Expr::Mul(l, r) => {
            boundary_zeros(l, env, out)?;
            boundary_zeros(r, env, out)
        }
        // poles of the denominator are not zeros
        Expr::Div(n, _) => boundary_zeros(n, env, out),
        Expr::Pow(b, s) => {
            let negative = s.resolve(env).map(|v| v < 0.0).unwrap_or(false);
            if negative {
                Ok(())
            } else {
                boundary_zeros(b, env, out)
            }
        }
        Expr::Add(..) => Err(ExprError::UnsupportedForm(format!(
            "cannot locate the boundary zeros of '{e}'; pass singular angles explicitly"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::PI;

    fn angles(text: &str) -> Vec<f64> {
        boundary_singularities(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn cayley_has_one_singularity() {
        assert_eq!(angles("(1+z)/(1-z)"), vec![0.0]);
    }

    #[test]
    fn sum_closed_form_has_two() {
        assert_eq!(angles("8*z*(1+z^2)/(1-z^2)^(2+eps)"), vec![0.0, PI]);
    }

    #[test]
    fn polynomial_has_none() {
        assert!(angles("(1+z)^8").is_empty());
        assert!(angles("(1+z)^(1/2)").is_empty());
    }

    #[test]
    fn parameter_exponents_are_conservative() {
        assert_eq!(angles("(1+z)^(4/p)"), vec![PI]);
        let env = ParamEnv::new().with("p", 0.25);
        assert!(
            boundary_singularities_in(&parse("(1+z)^(4/p)").unwrap(), &env)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn negative_powers_and_rotations() {
        assert_eq!(angles("(1-z)^(-1/4)"), vec![0.0]);
        let v = angles("1/(1 - i*z)");
        assert_eq!(v.len(), 1);
        assert!((v[0] - 1.5 * PI).abs() < 1e-12);
        let v = angles("1/(2 - z)");
        assert!(v.is_empty());
    }

    #[test]
    fn unsupported_denominator() {
        let err = boundary_singularities(&parse("1/((1-z)^(1/2) + 1)").unwrap()).unwrap_err();
        assert!(matches!(err, ExprError::UnsupportedForm(_)));
    }
}
