//! Evaluation plan used inside the quadrature loops.
//!
//! Parameters and exponents are resolved once, and every binomial subtree
//! `z^k (c0 + c1 z^m)` is stored in factored form `c1 z^k prod (z - root)`. Each
//! factor `z - root` is formed from the sample's offset to its anchor point, so
//! values next to a boundary singularity keep full relative precision. Values are
//! carried as [`Wide`] numbers, which do not overflow near poles.

use num_complex::Complex64;

use super::{as_integer, to_polynomial, Binomial, EvalError, Expr, ExprError, ParamEnv};

const ROOT_MATCH_TOL: f64 = 1e-9;

/// Complex number with a separate natural-log scale: `m * exp(l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wide {
    m: Complex64,
    l: f64,
}

impl Wide {
    pub const ZERO: Wide = Wide {
        m: Complex64::new(0.0, 0.0),
        l: 0.0,
    };

    pub fn from_complex(c: Complex64) -> Self {
        Wide { m: c, l: 0.0 }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    fn normalized(self) -> Self {
        let big = self.m.re.abs().max(self.m.im.abs());
        if big == 0.0 || (1e-100..=1e100).contains(&big) {
            return self;
        }
        let a = self.m.norm();
        Wide {
            m: self.m / a,
            l: self.l + a.ln(),
        }
    }

    /// `ln |w|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.m.norm().ln() + self.l
        }
    }

    /// `|w|^p` for `p > 0`.
    pub fn abs_pow(&self, p: f64) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            (p * self.ln_abs()).exp()
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.l == 0.0 {
            self.m
        } else {
            self.m * self.l.exp()
        }
    }

    fn mul(self, o: Wide) -> Wide {
        Wide {
            m: self.m * o.m,
            l: self.l + o.l,
        }
        .normalized()
    }

    fn div(self, o: Wide) -> Result<Wide, EvalError> {
        if o.is_zero() {
            return Err(EvalError::DivisionByZero);
        }
        Ok(Wide {
            m: self.m / o.m,
            l: self.l - o.l,
        }
        .normalized())
    }

    fn add(self, o: Wide) -> Wide {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.l >= o.l { (self, o) } else { (o, self) };
        Wide {
            m: hi.m + lo.m * (lo.l - hi.l).exp(),
            l: hi.l,
        }
        .normalized()
    }

    fn neg(self) -> Wide {
        Wide {
            m: -self.m,
            l: self.l,
        }
    }

    fn powi(self, n: i32) -> Result<Wide, EvalError> {
        if self.is_zero() {
            return match n {
                0 => Ok(Wide::from_complex(Complex64::new(1.0, 0.0))),
                n if n > 0 => Ok(Wide::ZERO),
                _ => Err(EvalError::DivisionByZero),
            };
        }
        let a = self.m.norm();
        Ok(Wide {
            m: (self.m / a).powi(n),
            l: n as f64 * (a.ln() + self.l),
        }
        .normalized())
    }

    fn powf(self, s: f64) -> Result<Wide, EvalError> {
        if self.is_zero() {
            return if s > 0.0 {
                Ok(Wide::ZERO)
            } else {
                Err(EvalError::DivisionByZero)
            };
        }
        if self.m.im == 0.0 && self.m.re < 0.0 {
            return Err(EvalError::BranchCut {
                base: self.to_complex(),
            });
        }
        Ok(Wide {
            m: Complex64::from_polar(1.0, s * self.m.arg()),
            l: s * self.ln_abs(),
        }
        .normalized())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Anchor {
    zeta: Complex64,
    r: f64,
    one_minus_r: f64,
    t: f64,
}

/// An evaluation point in the closed disk.
///
/// An anchored point is `zeta * r * e^{i t}` for a unit point `zeta`, with `1 - r`
/// and `t` known exactly; offsets to `zeta` are then computed without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    z: Complex64,
    anchor: Option<Anchor>,
}

impl DiskPoint {
    pub fn cartesian(z: Complex64) -> Self {
        DiskPoint { z, anchor: None }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        DiskPoint {
            z: Complex64::from_polar(r, theta),
            anchor: None,
        }
    }

    /// The point `zeta * r * e^{i t}` where `one_minus_r = 1 - r` is supplied exactly.
    pub fn anchored(zeta: Complex64, one_minus_r: f64, t: f64) -> Self {
        let r = 1.0 - one_minus_r;
        DiskPoint {
            z: zeta * Complex64::from_polar(r, t),
            anchor: Some(Anchor {
                zeta,
                r,
                one_minus_r,
                t,
            }),
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// `z - root`.
    pub fn offset(&self, root: Complex64) -> Complex64 {
        match self.anchor {
            Some(a) if (a.zeta - root).norm() < ROOT_MATCH_TOL => {
                // r e^{it} - 1 = -(1 - r) - 2 r sin^2(t/2) + i r sin t
                let h = (0.5 * a.t).sin();
                let rel = Complex64::new(-(a.one_minus_r + 2.0 * a.r * h * h), a.r * a.t.sin());
                a.zeta * rel + (a.zeta - root)
            }
            _ => self.z - root,
        }
    }
}

#[derive(Debug, Clone)]
enum Node {
    Const(Complex64),
    Factored {
        shift: i32,
        lead: Complex64,
        roots: Vec<Complex64>,
    },
    Add(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    PowInt(Box<Node>, i32),
    PowReal(Box<Node>, f64),
}

/// An expression with parameters resolved and binomial factors pre-split.
#[derive(Debug, Clone)]
pub struct CompiledExpr {
    root: Node,
}

impl CompiledExpr {
    pub fn new(e: &Expr, env: &ParamEnv) -> Result<Self, ExprError> {
        Ok(CompiledExpr {
            root: compile(e, env)?,
        })
    }

    pub fn eval_wide(&self, pt: &DiskPoint) -> Result<Wide, EvalError> {
        eval_node(&self.root, pt)
    }

    pub fn eval_at(&self, pt: &DiskPoint) -> Result<Complex64, EvalError> {
        Ok(self.eval_wide(pt)?.to_complex())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        self.eval_at(&DiskPoint::cartesian(z))
    }

    /// `|f(pt)|^p`, finite whenever the result is representable.
    pub fn abs_pow(&self, pt: &DiskPoint, p: f64) -> Result<f64, EvalError> {
        Ok(self.eval_wide(pt)?.abs_pow(p))
    }

    /// `p ln |f(pt)|`.
    pub fn ln_abs_pow(&self, pt: &DiskPoint, p: f64) -> Result<f64, EvalError> {
        Ok(p * self.eval_wide(pt)?.ln_abs())
    }
}

fn factored(b: &Binomial) -> Node {
    if b.m == 0 || b.c0 == Complex64::new(0.0, 0.0) {
        return Node::Factored {
            shift: (b.shift + b.m) as i32,
            lead: b.c1,
            roots: Vec::new(),
        };
    }
    Node::Factored {
        shift: b.shift as i32,
        lead: b.c1,
        roots: b.roots(),
    }
}

fn compile(e: &Expr, env: &ParamEnv) -> Result<Node, ExprError> {
    if !matches!(e, Expr::Const(_)) {
        if let Ok(poly) = to_polynomial(e, env) {
            if poly.degree() == 0 {
                return Ok(Node::Const(poly.coeffs()[0]));
            }
            if let Some(b) = poly.binomial() {
                return Ok(factored(&b));
            }
        }
    }
    Ok(match e {
        Expr::Const(c) => Node::Const(*c),
        Expr::Z => Node::Factored {
            shift: 1,
            lead: Complex64::new(1.0, 0.0),
            roots: Vec::new(),
        },
        Expr::Param(name) => Node::Const(Complex64::new(env.require(name)?, 0.0)),
        Expr::Add(l, r) => Node::Add(Box::new(compile(l, env)?), Box::new(compile(r, env)?)),
        Expr::Neg(x) => Node::Neg(Box::new(compile(x, env)?)),
        Expr::Mul(l, r) => Node::Mul(Box::new(compile(l, env)?), Box::new(compile(r, env)?)),
        Expr::Div(l, r) => Node::Div(Box::new(compile(l, env)?), Box::new(compile(r, env)?)),
        Expr::Pow(b, s) => {
            let s = s.resolve(env)?;
            let base = Box::new(compile(b, env)?);
            match as_integer(s) {
                Some(n) => Node::PowInt(base, n),
                None => Node::PowReal(base, s),
            }
        }
    })
}

fn eval_node(n: &Node, pt: &DiskPoint) -> Result<Wide, EvalError> {
    Ok(match n {
        Node::Const(c) => Wide::from_complex(*c),
        Node::Factored { shift, lead, roots } => {
            let mut acc = Wide::from_complex(*lead);
            if *shift != 0 {
                acc = acc.mul(Wide::from_complex(pt.z).powi(*shift)?);
            }
            for &root in roots {
                acc = acc.mul(Wide::from_complex(pt.offset(root)));
            }
            acc
        }
        Node::Add(l, r) => eval_node(l, pt)?.add(eval_node(r, pt)?),
        Node::Neg(x) => eval_node(x, pt)?.neg(),
        Node::Mul(l, r) => eval_node(l, pt)?.mul(eval_node(r, pt)?),
        Node::Div(l, r) => eval_node(l, pt)?.div(eval_node(r, pt)?)?,
        Node::PowInt(b, k) => eval_node(b, pt)?.powi(*k)?,
        Node::PowReal(b, s) => eval_node(b, pt)?.powf(*s)?,
    })
}
