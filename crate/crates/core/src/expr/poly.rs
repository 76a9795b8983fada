use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{as_integer, Expr, ExprError, ParamEnv};

const MAX_DEGREE: usize = 4096;

/// Coefficients `a_0 ... a_N` of a polynomial in `z`.
///
/// The trailing coefficient is nonzero unless the list is the single element 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorCoeffs(Vec<Complex64>);

impl TaylorCoeffs {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        TaylorCoeffs(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0] == Complex64::new(0.0, 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = Complex64::new(0.0, 0.0);
        Self::new(
            (0..n)
                .map(|k| *self.0.get(k).unwrap_or(&zero) + *other.0.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    fn scale(&self, c: Complex64) -> Self {
        Self::new(self.0.iter().map(|&a| a * c).collect())
    }

    fn mul(&self, other: &Self) -> Result<Self, ExprError> {
        if self.degree() + other.degree() > MAX_DEGREE {
            return Err(ExprError::NotPolynomial("degree too large".into()));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self::new(out))
    }

    fn powu(&self, mut n: u32) -> Result<Self, ExprError> {
        let mut result = TaylorCoeffs::new(vec![Complex64::new(1.0, 0.0)]);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Recognizes `z^shift (c0 + c1 z^m)`, including monomials (`c0 = 0`).
    pub fn binomial(&self) -> Option<Binomial> {
        let nonzero: Vec<usize> = (0..self.0.len())
            .filter(|&k| self.0[k] != Complex64::new(0.0, 0.0))
            .collect();
        match nonzero.as_slice() {
            [k] => Some(Binomial {
                shift: *k as u32,
                c0: Complex64::new(0.0, 0.0),
                c1: self.0[*k],
                m: 0,
            }),
            [k0, k1] => Some(Binomial {
                shift: *k0 as u32,
                c0: self.0[*k0],
                c1: self.0[*k1],
                m: (k1 - k0) as u32,
            }),
            _ => None,
        }
    }
}

/// A sparse polynomial `z^shift (c0 + c1 z^m)`; a monomial when `c0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Binomial {
    pub shift: u32,
    pub c0: Complex64,
    pub c1: Complex64,
    pub m: u32,
}

impl Binomial {
    /// Roots of `c0 + c1 z^m` (the factor `z^shift` is excluded).
    ///
    /// Roots of unit modulus at multiples of `pi/2` are snapped to exact values so
    /// that factors such as `1 - z` and `1 - z^2` share the root `1` bit for bit.
    pub fn roots(&self) -> Vec<Complex64> {
        if self.m == 0 || self.c0 == Complex64::new(0.0, 0.0) {
            return Vec::new();
        }
        let w = -self.c0 / self.c1;
        let m = self.m as f64;
        let mut modulus = w.norm().powf(1.0 / m);
        if (modulus - 1.0).abs() < 1e-14 {
            modulus = 1.0;
        }
        let base_angle = w.arg() / m;
        (0..self.m)
            .map(|k| snap_root(modulus, base_angle + TAU * k as f64 / m))
            .collect()
    }
}

fn snap_root(modulus: f64, angle: f64) -> Complex64 {
    let quarter = (angle / FRAC_PI_2).round();
    if (angle - quarter * FRAC_PI_2).abs() < 1e-14 {
        let unit = match (quarter as i64).rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        unit * modulus
    } else {
        Complex64::from_polar(modulus, angle)
    }
}

/// Expands `e` into its coefficient list after substituting `env`.
///
/// Fails with `NotPolynomial` when a resolved exponent is negative or non-integer,
/// or when a division has a non-constant denominator.
pub fn to_polynomial(e: &Expr, env: &ParamEnv) -> Result<TaylorCoeffs, ExprError> {
    Ok(match e {
        Expr::Const(c) => TaylorCoeffs::new(vec![*c]),
        Expr::Z => TaylorCoeffs::from_real(&[0.0, 1.0]),
        Expr::Param(name) => TaylorCoeffs::from_real(&[env.require(name)?]),
        Expr::Add(l, r) => to_polynomial(l, env)?.add(&to_polynomial(r, env)?),
        Expr::Neg(x) => to_polynomial(x, env)?.scale(Complex64::new(-1.0, 0.0)),
        Expr::Mul(l, r) => to_polynomial(l, env)?.mul(&to_polynomial(r, env)?)?,
        Expr::Div(l, r) => {
            let den = to_polynomial(r, env)?;
            if den.degree() > 0 {
                return Err(ExprError::NotPolynomial(format!(
                    "division by non-constant '{r}'"
                )));
            }
            if den.is_zero() {
                return Err(ExprError::NotPolynomial("division by zero constant".into()));
            }
            to_polynomial(l, env)?.scale(den.0[0].inv())
        }
        Expr::Pow(b, s) => {
            let s = s.resolve(env)?;
            match as_integer(s) {
                Some(n) if n >= 0 => to_polynomial(b, env)?.powu(n as u32)?,
                _ => {
                    return Err(ExprError::NotPolynomial(format!(
                        "exponent {s} is not a non-negative integer"
                    )))
                }
            }
        }
    })
}
