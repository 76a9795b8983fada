use num_complex::Complex64;

use super::{as_integer, EvalError, Expr, ParamEnv};

/// Direct recursive evaluation of `e` at `z`.
///
/// Non-integer powers use the principal branch, `w^s = exp(s Log w)`; a base on
/// the closed negative real axis is rejected, except that `0^s = 0` for `s > 0`.
pub fn eval(e: &Expr, z: Complex64, env: &ParamEnv) -> Result<Complex64, EvalError> {
    Ok(match e {
        Expr::Const(c) => *c,
        Expr::Z => z,
        Expr::Param(name) => Complex64::new(env.require(name)?, 0.0),
        Expr::Add(l, r) => eval(l, z, env)? + eval(r, z, env)?,
        Expr::Neg(x) => -eval(x, z, env)?,
        Expr::Mul(l, r) => eval(l, z, env)? * eval(r, z, env)?,
        Expr::Div(l, r) => {
            let den = eval(r, z, env)?;
            if den == Complex64::new(0.0, 0.0) {
                return Err(EvalError::DivisionByZero);
            }
            eval(l, z, env)? / den
        }
        Expr::Pow(b, s) => {
            let s = s.resolve(env)?;
            power(eval(b, z, env)?, s)?
        }
    })
}

pub(crate) fn power(w: Complex64, s: f64) -> Result<Complex64, EvalError> {
    let zero = Complex64::new(0.0, 0.0);
    if let Some(n) = as_integer(s) {
        if w == zero {
            return match n {
                0 => Ok(Complex64::new(1.0, 0.0)),
                n if n > 0 => Ok(zero),
                _ => Err(EvalError::DivisionByZero),
            };
        }
        return Ok(w.powi(n));
    }
    if w == zero {
        return if s > 0.0 {
            Ok(zero)
        } else {
            Err(EvalError::DivisionByZero)
        };
    }
    if w.im == 0.0 && w.re < 0.0 {
        return Err(EvalError::BranchCut { base: w });
    }
    Ok((w.ln() * s).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cayley_transform_values() {
        let e = parse("(1+z)/(1-z)").unwrap();
        let env = ParamEnv::new();
        assert_eq!(eval(&e, c(0.0, 0.0), &env).unwrap(), c(1.0, 0.0));
        let v = eval(&e, c(0.0, 1.0), &env).unwrap();
        assert!((v - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn principal_branch_at_one() {
        let e = parse("(1-z)^(-1/2)").unwrap();
        assert_eq!(
            eval(&e, c(0.0, 0.0), &ParamEnv::new()).unwrap(),
            c(1.0, 0.0)
        );
        // |(1-z)^(-1/2)| = |1-z|^(-1/2)
        let z = c(0.3, -0.4);
        let v = eval(&e, z, &ParamEnv::new()).unwrap();
        assert!((v.norm() - (c(1.0, 0.0) - z).norm().powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn branch_cut_is_an_error() {
        let e = parse("z^(1/2)").unwrap();
        let err = eval(&e, c(-0.5, 0.0), &ParamEnv::new()).unwrap_err();
        assert!(matches!(err, EvalError::BranchCut { .. }));
        // integer powers have no cut
        let e = parse("z^3").unwrap();
        assert!(eval(&e, c(-0.5, 0.0), &ParamEnv::new()).is_ok());
    }

    #[test]
    fn division_by_zero() {
        let e = parse("1/(1-z)").unwrap();
        assert_eq!(
            eval(&e, c(1.0, 0.0), &ParamEnv::new()).unwrap_err(),
            EvalError::DivisionByZero
        );
    }

    #[test]
    fn unbound_parameter() {
        let e = parse("(1+z)^(4/p)").unwrap();
        assert_eq!(
            eval(&e, c(0.1, 0.0), &ParamEnv::new()).unwrap_err(),
            EvalError::UnboundParam("p".into())
        );
        let env = ParamEnv::new().with("p", 0.5);
        let v = eval(&e, c(0.1, 0.0), &env).unwrap();
        assert!((v.re - 1.1f64.powi(8)).abs() < 1e-12);
    }
}
