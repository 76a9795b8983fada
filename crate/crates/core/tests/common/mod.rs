//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use disknorm::expr::{Exponent, Expr};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

/// `(1/2pi) int |1 - e^{it}|^(-s) dt = Gamma(1 - s) / Gamma(1 - s/2)^2` for `s < 1`.
pub fn circle_pole_mean(s: f64) -> f64 {
    gamma(1.0 - s) / gamma(1.0 - s / 2.0).powi(2)
}

/// `int_D |1 - z|^(-2c) dA = Gamma(2 - 2c) / Gamma(2 - c)^2` for `c < 1`.
pub fn disk_pole_integral(c: f64) -> f64 {
    gamma(2.0 - 2.0 * c) / gamma(2.0 - c).powi(2)
}

/// Composite midpoint rule with `n` panels.
pub fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    (0..n).map(|k| f(a + h * (k as f64 + 0.5))).sum::<f64>() * h
}

/// Midpoint refinement with Richardson extrapolation over the given error
/// exponents (error `~ sum c_j h^{e_j}`). Returns the extrapolated value and the
/// difference between the last two extrapolants.
pub fn midpoint_richardson(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    n0: usize,
    exponents: &[f64],
) -> (f64, f64) {
    let levels = exponents.len() + 1;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels);
    for k in 0..levels {
        let mut row = vec![midpoint(&f, a, b, n0 << k)];
        for (j, &e) in exponents.iter().enumerate().take(k) {
            let factor = 2f64.powf(e);
            let prev = &table[k - 1];
            let v = (factor * row[j] - prev[j]) / (factor - 1.0);
            row.push(v);
        }
        table.push(row);
    }
    let last = table[levels - 1][levels - 1];
    let prev = table[levels - 2][levels - 2];
    (last, (last - prev).abs())
}

/// Polar-grid midpoint sum of `int_{|z| <= radius} g(z) dA` with `n x n` cells.
pub fn polar_riemann(g: impl Fn(Complex64) -> f64, radius: f64, n: usize) -> f64 {
    let dr = radius / n as f64;
    let dt = TAU / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let r = dr * (i as f64 + 0.5);
        let mut ring = 0.0;
        for j in 0..n {
            ring += g(Complex64::from_polar(r, dt * (j as f64 + 0.5)));
        }
        total += ring * r;
    }
    total * dr * dt / PI
}

/// Random complex coefficients with modulus at most 1, degree at most `max_degree`.
pub fn random_coeffs(rng: &mut ChaCha8Rng, max_degree: usize) -> Vec<Complex64> {
    let degree = rng.gen_range(0..=max_degree);
    (0..=degree)
        .map(|_| Complex64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..TAU)))
        .collect()
}

/// Builds `sum a_k z^k` as an expression tree.
pub fn poly_expr(coeffs: &[Complex64]) -> Expr {
    let term = |k: usize, a: Complex64| {
        let c = Expr::Const(a);
        match k {
            0 => c,
            1 => Expr::mul(c, Expr::Z),
            _ => Expr::mul(c, Expr::pow(Expr::Z, Exponent::Num(k as f64))),
        }
    };
    let mut it = coeffs.iter().enumerate();
    let (k0, a0) = it.next().expect("at least one coefficient");
    it.fold(term(k0, *a0), |acc, (k, a)| Expr::add(acc, term(k, *a)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        3 => Just(Expr::Z),
        2 => (0u32..40).prop_map(|k| Expr::real(k as f64 / 4.0)),
        1 => Just(Expr::Const(Complex64::new(0.0, 1.0))),
        1 => prop::sample::select(vec!["p", "eps", "alpha", "q"]).prop_map(Expr::param),
    ]
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        (-6i32..=6).prop_map(|k| Exponent::Num(k as f64 / 2.0)),
        Just(Exponent::div(Exponent::num(4.0), Exponent::param("p"))),
        Just(Exponent::add(Exponent::num(2.0), Exponent::param("eps"))),
        Just(Exponent::sub(Exponent::num(2.0), Exponent::param("eps"))),
        Just(Exponent::neg(Exponent::param("alpha"))),
    ]
}

/// Expression trees in the parser's image (no directly nested negations).
pub fn arb_expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::sub(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::mul(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::div(l, r)),
            inner
                .clone()
                .prop_filter("no double negation", |e| !matches!(e, Expr::Neg(_)))
                .prop_map(Expr::neg),
            (inner, exponent()).prop_map(|(b, s)| Expr::pow(b, s)),
        ]
    })
}

/// Expressions in `z` built from affine factors and integer powers; analytic on
/// the closed disk except at boundary points, and free of parameters.
pub fn arb_rational() -> impl Strategy<Value = Expr> {
    let affine = (-3i32..=3, prop::bool::ANY).prop_map(|(k, plus)| {
        let c = Expr::real(1.0 + k.unsigned_abs() as f64 / 2.0);
        if plus {
            Expr::add(c, Expr::Z)
        } else {
            Expr::sub(c, Expr::Z)
        }
    });
    affine.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::mul(l, r)),
            (inner.clone(), 0u32..4).prop_map(|(b, k)| Expr::pow(b, Exponent::Num(k as f64))),
            inner.prop_map(Expr::neg),
        ]
    })
}

/// A known-value integral: integrand on node distances, interval, singular flags, exact value.
pub struct KnownIntegral {
    pub name: &'static str,
    pub f: Box<dyn Fn(&disknorm::quad::Abscissa) -> f64>,
    pub a: f64,
    pub b: f64,
    pub singular_left: bool,
    pub singular_right: bool,
    pub exact: f64,
}

fn known(
    name: &'static str,
    f: impl Fn(&disknorm::quad::Abscissa) -> f64 + 'static,
    (a, b): (f64, f64),
    (singular_left, singular_right): (bool, bool),
    exact: f64,
) -> KnownIntegral {
    KnownIntegral {
        name,
        f: Box::new(f),
        a,
        b,
        singular_left,
        singular_right,
        exact,
    }
}

/// Polynomials, endpoint power singularities, logarithms and smooth transcendental
/// integrands with closed-form values.
pub fn honesty_corpus() -> Vec<KnownIntegral> {
    let beta = gamma(0.75).powi(2) / gamma(1.5);
    vec![
        known("one", |_| 1.0, (0.0, 1.0), (false, false), 1.0),
        known("cubic", |n| n.x.powi(3), (0.0, 1.0), (false, false), 0.25),
        known(
            "quintic",
            |n| n.x.powi(5) - 2.0 * n.x * n.x + 1.0,
            (-1.0, 2.0),
            (false, false),
            7.5,
        ),
        known(
            "degree ten",
            |n| n.x.powi(10),
            (0.0, 1.0),
            (false, false),
            1.0 / 11.0,
        ),
        known(
            "degree seven",
            |n| n.x.powi(7) + 3.0 * n.x,
            (0.0, 2.0),
            (false, false),
            38.0,
        ),
        known(
            "inverse sqrt",
            |n| n.from_left.powf(-0.5),
            (0.0, 1.0),
            (true, false),
            2.0,
        ),
        known(
            "x^-0.1",
            |n| n.from_left.powf(-0.1),
            (0.0, 1.0),
            (true, false),
            1.0 / 0.9,
        ),
        known(
            "x^-0.9",
            |n| n.from_left.powf(-0.9),
            (0.0, 1.0),
            (true, false),
            10.0,
        ),
        known(
            "x^-0.95",
            |n| n.from_left.powf(-0.95),
            (0.0, 1.0),
            (true, false),
            20.0,
        ),
        known(
            "(1-x)^-1/3",
            |n| n.from_right.powf(-1.0 / 3.0),
            (0.0, 1.0),
            (false, true),
            1.5,
        ),
        known(
            "arcsine density",
            |n| (n.from_left * n.from_right).powf(-0.5),
            (0.0, 1.0),
            (true, true),
            PI,
        ),
        known(
            "beta(3/4, 3/4)",
            |n| (n.from_left * n.from_right).powf(-0.25),
            (0.0, 1.0),
            (true, true),
            beta,
        ),
        known("log", |n| n.from_left.ln(), (0.0, 1.0), (true, false), -1.0),
        known(
            "log squared",
            |n| n.from_left.ln().powi(2),
            (0.0, 1.0),
            (true, false),
            2.0,
        ),
        known(
            "log over sqrt",
            |n| n.from_left.ln() / n.from_left.sqrt(),
            (0.0, 1.0),
            (true, false),
            -4.0,
        ),
        known(
            "log(1-x)",
            |n| n.from_right.ln(),
            (0.0, 1.0),
            (false, true),
            -1.0,
        ),
        known(
            "sqrt, unflagged",
            |n| n.x.sqrt(),
            (0.0, 1.0),
            (false, false),
            2.0 / 3.0,
        ),
        known("sine", |n| n.x.sin(), (0.0, PI), (false, false), 2.0),
        known(
            "exp",
            |n| n.x.exp(),
            (0.0, 1.0),
            (false, false),
            std::f64::consts::E - 1.0,
        ),
        known(
            "arctan'",
            |n| 1.0 / (1.0 + n.x * n.x),
            (0.0, 1.0),
            (false, false),
            PI / 4.0,
        ),
        known(
            "x^-1/2 on [1,4]",
            |n| n.x.powf(-0.5),
            (1.0, 4.0),
            (false, false),
            2.0,
        ),
        known(
            "circle pole",
            |n| (2.0 * (0.5 * n.from_left.min(n.from_right)).sin()).powf(-0.5) / TAU,
            (0.0, TAU),
            (true, true),
            circle_pole_mean(0.5),
        ),
    ]
}
