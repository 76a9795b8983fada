use num_complex::Complex64;

use super::{as_integer, Exponent, Expr};

fn map_z(e: &Expr, f: &impl Fn() -> Expr) -> Expr {
    match e {
        Expr::Z => f(),
        Expr::Const(_) | Expr::Param(_) => e.clone(),
        Expr::Add(l, r) => Expr::add(map_z(l, f), map_z(r, f)),
        Expr::Neg(x) => Expr::neg(map_z(x, f)),
        Expr::Mul(l, r) => Expr::mul(map_z(l, f), map_z(r, f)),
        Expr::Div(l, r) => Expr::div(map_z(l, f), map_z(r, f)),
        Expr::Pow(b, s) => Expr::pow(map_z(b, f), s.clone()),
    }
}

fn integer_exponent(s: &Exponent) -> Option<i32> {
    s.as_constant().and_then(as_integer)
}

/// `z -> e(-z)`. Double negations of `z` and even integer powers of `z` are folded.
pub fn substitute_negate(e: &Expr) -> Expr {
    match e {
        Expr::Z => Expr::neg(Expr::Z),
        Expr::Neg(x) if **x == Expr::Z => Expr::Z,
        Expr::Pow(b, s) if **b == Expr::Z => match integer_exponent(s) {
            Some(n) if n % 2 == 0 => e.clone(),
            Some(_) => Expr::neg(e.clone()),
            None => Expr::pow(Expr::neg(Expr::Z), s.clone()),
        },
        Expr::Const(_) | Expr::Param(_) => e.clone(),
        Expr::Add(l, r) => Expr::add(substitute_negate(l), substitute_negate(r)),
        Expr::Neg(x) => Expr::neg(substitute_negate(x)),
        Expr::Mul(l, r) => Expr::mul(substitute_negate(l), substitute_negate(r)),
        Expr::Div(l, r) => Expr::div(substitute_negate(l), substitute_negate(r)),
        Expr::Pow(b, s) => Expr::pow(substitute_negate(b), s.clone()),
    }
}

/// `z -> e(z^2)`. Integer powers `z^n` become `z^(2n)`.
pub fn substitute_square(e: &Expr) -> Expr {
    match e {
        Expr::Pow(b, s) if **b == Expr::Z => match integer_exponent(s) {
            Some(n) => Expr::pow(Expr::Z, Exponent::Num(2.0 * n as f64)),
            None => Expr::pow(Expr::pow(Expr::Z, Exponent::Num(2.0)), s.clone()),
        },
        Expr::Z => Expr::pow(Expr::Z, Exponent::Num(2.0)),
        Expr::Const(_) | Expr::Param(_) => e.clone(),
        Expr::Add(l, r) => Expr::add(substitute_square(l), substitute_square(r)),
        Expr::Neg(x) => Expr::neg(substitute_square(x)),
        Expr::Mul(l, r) => Expr::mul(substitute_square(l), substitute_square(r)),
        Expr::Div(l, r) => Expr::div(substitute_square(l), substitute_square(r)),
        Expr::Pow(b, s) => Expr::pow(substitute_square(b), s.clone()),
    }
}

/// `z -> e(lambda z)`; a rotation when `|lambda| = 1`.
pub fn substitute_scale(e: &Expr, lambda: Complex64) -> Expr {
    map_z(e, &|| Expr::mul(Expr::Const(lambda), Expr::Z))
}
