mod common;

use std::f64::consts::{PI, TAU};

use disknorm::expr::{parse, substitute_scale, Expr, ParamEnv};
use disknorm::hardy::{hardy_norm, hardy_norm_at, integral_means};
use disknorm::norm::NormResult;
use disknorm::quad::QuadConfig;
use num_complex::Complex64;
use proptest::prelude::*;

use common::{arb_rational, circle_pole_mean, midpoint};

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn env() -> ParamEnv {
    ParamEnv::new()
}

fn norm(text: &str, p: f64) -> NormResult {
    hardy_norm(&parse(text).unwrap(), p, &env(), &cfg()).unwrap()
}

fn agree(a: &NormResult, b: &NormResult) -> bool {
    (a.value - b.value).abs() <= 10.0 * (a.value_err() + b.value_err()) + 1e-12 * a.value.abs()
}

#[test]
fn means_match_midpoint_oracle() {
    let (p, r) = (0.5, 0.9);
    // the integrand is smooth and periodic, so the midpoint sum converges geometrically
    let oracle = midpoint(
        |t| {
            (Complex64::new(1.0, 0.0) - Complex64::from_polar(r, t))
                .norm()
                .powf(-p)
        },
        0.0,
        TAU,
        1_000_000,
    ) / TAU;
    let m = integral_means(&parse("1/(1-z)").unwrap(), p, r, &env(), &cfg()).unwrap();
    assert!(
        (m.value_p - oracle).abs() < 1e-9,
        "{} vs {oracle}",
        m.value_p
    );
    assert!(m.converged);
}

#[test]
fn boundary_pole_matches_gamma_oracle() {
    for s in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let n = norm("1/(1-z)", s);
        assert!(n.converged);
        assert!((n.value_p - circle_pole_mean(s)).abs() < 1e-8, "s = {s}");
    }
    let root = norm("(1-z)^(-1/2)", 1.0);
    assert!((root.value_p - circle_pole_mean(0.5)).abs() < 1e-8);
    assert!((root.value_p - 1.18034059901609).abs() < 1e-12);
}

#[test]
fn cayley_closed_form() {
    for p in [0.2, 0.5, 0.8, 0.95] {
        let n = norm("(1+z)/(1-z)", p);
        let exact = 1.0 / (p * PI / 2.0).cos();
        assert!((n.value_p - exact).abs() <= 1e-8 * exact, "p = {p}");
    }
}

#[test]
fn non_integrable_pole_is_divergent() {
    let n = norm("1/(1-z)", 1.0);
    assert!(n.is_divergent());
    assert!(!n.converged);
}

#[test]
fn explicit_angles_match_detection() {
    let f = parse("(1+z)/(1-z)").unwrap();
    let a = hardy_norm(&f, 0.5, &env(), &cfg()).unwrap();
    let b = hardy_norm_at(&f, 0.5, &env(), Some(&[0.0]), &cfg()).unwrap();
    assert!(agree(&a, &b));
}

#[test]
fn means_approach_boundary_norm() {
    let f = parse("(1+z)/(1-z)").unwrap();
    let p = 0.5;
    let boundary = hardy_norm(&f, p, &env(), &cfg()).unwrap();
    let inside = integral_means(&f, p, 1.0 - 1e-4, &env(), &cfg()).unwrap();
    assert!(((inside.value_p - boundary.value_p) / boundary.value_p).abs() < 0.01);
    assert!(inside.value_p <= boundary.value_p + boundary.abs_err_est);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn means_are_monotone(f in arb_rational(), p in 0.2..3.0f64, r1 in 0.05..0.95f64, r2 in 0.05..0.95f64) {
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        let a = integral_means(&f, p, lo, &env(), &cfg()).unwrap();
        let b = integral_means(&f, p, hi, &env(), &cfg()).unwrap();
        prop_assert!(a.value_p <= b.value_p + a.abs_err_est + b.abs_err_est + 1e-12 * b.value_p);
    }

    #[test]
    fn rotation_invariance(angle in 0.0..TAU, p in 0.2..0.9f64) {
        let f = parse("(1+z)/(1-z)").unwrap();
        let rotated = substitute_scale(&f, Complex64::from_polar(1.0, angle));
        let a = hardy_norm(&f, p, &env(), &cfg()).unwrap();
        let b = hardy_norm(&rotated, p, &env(), &cfg()).unwrap();
        prop_assert!(agree(&a, &b), "{} vs {}", a.value, b.value);
    }

    #[test]
    fn homogeneity(f in arb_rational(), p in 0.2..3.0f64, c in 0.1..10.0f64) {
        let scaled = Expr::mul(Expr::real(c), f.clone());
        let a = hardy_norm(&f, p, &env(), &cfg()).unwrap();
        let b = hardy_norm(&scaled, p, &env(), &cfg()).unwrap();
        let expect = c * a.value;
        prop_assert!((b.value - expect).abs() <= 10.0 * (b.value_err() + c * a.value_err()) + 1e-12 * expect);
    }

    #[test]
    fn quasi_triangle(f in arb_rational(), g in arb_rational(), p in 0.2..3.0f64) {
        let sum = Expr::add(f.clone(), g.clone());
        let nf = hardy_norm(&f, p, &env(), &cfg()).unwrap();
        let ng = hardy_norm(&g, p, &env(), &cfg()).unwrap();
        let ns = hardy_norm(&sum, p, &env(), &cfg()).unwrap();
        if p >= 1.0 {
            let slack = 10.0 * (nf.value_err() + ng.value_err() + ns.value_err()) + 1e-12 * ns.value;
            prop_assert!(ns.value <= nf.value + ng.value + slack);
        } else {
            let slack = 10.0 * (nf.abs_err_est + ng.abs_err_est + ns.abs_err_est) + 1e-12 * ns.value_p;
            prop_assert!(ns.value_p <= nf.value_p + ng.value_p + slack);
        }
    }
}
