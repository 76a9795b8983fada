use std::fmt;

use num_complex::Complex64;

use super::env::ParamEnv;
use super::EvalError;

/// Abstract syntax tree of an analytic function of `z`.
///
/// Subtraction has no node of its own: `a - b` is `Add(a, Neg(b))`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Z,
    Param(String),
    Add(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Exponent),
}

/// Real-valued exponent built from numbers and named parameters, e.g. `4/p` or `2+eps`.
#[derive(Debug, Clone, PartialEq)]
pub enum Exponent {
    Num(f64),
    Param(String),
    Add(Box<Exponent>, Box<Exponent>),
    Neg(Box<Exponent>),
    Mul(Box<Exponent>, Box<Exponent>),
    Div(Box<Exponent>, Box<Exponent>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn real(x: f64) -> Self {
        Expr::Const(Complex64::new(x, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Expr::Const(c)
    }

    pub fn param(name: &str) -> Self {
        Expr::Param(name.to_string())
    }

    pub fn add(l: Expr, r: Expr) -> Self {
        Expr::Add(Box::new(l), Box::new(r))
    }

    /// `l - r`, represented as `Add(l, Neg(r))`.
    pub fn sub(l: Expr, r: Expr) -> Self {
        Expr::Add(Box::new(l), Box::new(Expr::Neg(Box::new(r))))
    }

    pub fn neg(e: Expr) -> Self {
        Expr::Neg(Box::new(e))
    }

    pub fn mul(l: Expr, r: Expr) -> Self {
        Expr::Mul(Box::new(l), Box::new(r))
    }

    pub fn div(l: Expr, r: Expr) -> Self {
        Expr::Div(Box::new(l), Box::new(r))
    }

    pub fn pow(base: Expr, exponent: Exponent) -> Self {
        Expr::Pow(Box::new(base), exponent)
    }

    /// Names of all parameters referenced anywhere in the tree, exponents included.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const(_) | Expr::Z => {}
            Expr::Param(name) => out.push(name.clone()),
            Expr::Neg(e) => e.collect_params(out),
            Expr::Add(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.collect_params(out);
                r.collect_params(out);
            }
            Expr::Pow(b, s) => {
                b.collect_params(out);
                s.collect_params(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(c) if !is_plain_const(*c) => 0,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Const(c) => fmt_const(*c, f),
            Expr::Z => write!(f, "z"),
            Expr::Param(name) => write!(f, "{name}"),
            Expr::Add(l, r) => {
                l.fmt_prec(f, 1)?;
                match r.as_ref() {
                    Expr::Neg(inner) => {
                        write!(f, " - ")?;
                        inner.fmt_prec(f, 2)
                    }
                    _ => {
                        write!(f, " + ")?;
                        r.fmt_prec(f, 2)
                    }
                }
            }
            Expr::Mul(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, "*")?;
                r.fmt_prec(f, 3)
            }
            Expr::Div(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, "/")?;
                r.fmt_prec(f, 3)
            }
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 4)
            }
            Expr::Pow(b, s) => {
                b.fmt_prec(f, 5)?;
                write!(f, "^")?;
                match s {
                    Exponent::Num(x) => write!(f, "{x}"),
                    _ => write!(f, "({s})"),
                }
            }
        }
    }
}

/// Constants the parser can produce as a single atom: non-negative reals and `i`.
fn is_plain_const(c: Complex64) -> bool {
    (c.im == 0.0 && c.re >= 0.0 && !c.re.is_sign_negative()) || (c.re == 0.0 && c.im == 1.0)
}

fn fmt_const(c: Complex64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.im == 0.0 {
        write!(f, "{}", c.re)
    } else if c.re == 0.0 && c.im == 1.0 {
        write!(f, "i")
    } else if c.re == 0.0 {
        write!(f, "{}*i", c.im)
    } else {
        write!(f, "{} + {}*i", c.re, c.im)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[allow(clippy::should_implement_trait)]
impl Exponent {
    pub fn num(x: f64) -> Self {
        Exponent::Num(x)
    }

    pub fn param(name: &str) -> Self {
        Exponent::Param(name.to_string())
    }

    pub fn add(l: Exponent, r: Exponent) -> Self {
        Exponent::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: Exponent, r: Exponent) -> Self {
        Exponent::Add(Box::new(l), Box::new(Exponent::Neg(Box::new(r))))
    }

    pub fn neg(e: Exponent) -> Self {
        Exponent::Neg(Box::new(e))
    }

    pub fn mul(l: Exponent, r: Exponent) -> Self {
        Exponent::Mul(Box::new(l), Box::new(r))
    }

    pub fn div(l: Exponent, r: Exponent) -> Self {
        Exponent::Div(Box::new(l), Box::new(r))
    }

    /// The constant value, if the exponent contains no parameters.
    pub fn as_constant(&self) -> Option<f64> {
        self.resolve(&ParamEnv::new()).ok()
    }

    pub fn resolve(&self, env: &ParamEnv) -> Result<f64, EvalError> {
        Ok(match self {
            Exponent::Num(x) => *x,
            Exponent::Param(name) => env.require(name)?,
            Exponent::Add(l, r) => l.resolve(env)? + r.resolve(env)?,
            Exponent::Neg(e) => -e.resolve(env)?,
            Exponent::Mul(l, r) => l.resolve(env)? * r.resolve(env)?,
            Exponent::Div(l, r) => {
                let d = r.resolve(env)?;
                if d == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                l.resolve(env)? / d
            }
        })
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Exponent::Num(_) => {}
            Exponent::Param(name) => out.push(name.clone()),
            Exponent::Neg(e) => e.collect_params(out),
            Exponent::Add(l, r) | Exponent::Mul(l, r) | Exponent::Div(l, r) => {
                l.collect_params(out);
                r.collect_params(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Exponent::Add(..) => 1,
            Exponent::Mul(..) | Exponent::Div(..) => 2,
            Exponent::Neg(_) => 3,
            Exponent::Num(x) if *x < 0.0 || x.is_sign_negative() => 3,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Exponent::Num(x) => write!(f, "{x}"),
            Exponent::Param(name) => write!(f, "{name}"),
            Exponent::Add(l, r) => {
                l.fmt_prec(f, 1)?;
                match r.as_ref() {
                    Exponent::Neg(inner) => {
                        write!(f, " - ")?;
                        inner.fmt_prec(f, 2)
                    }
                    _ => {
                        write!(f, " + ")?;
                        r.fmt_prec(f, 2)
                    }
                }
            }
            Exponent::Mul(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, "*")?;
                r.fmt_prec(f, 3)
            }
            Exponent::Div(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, "/")?;
                r.fmt_prec(f, 3)
            }
            Exponent::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 4)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
