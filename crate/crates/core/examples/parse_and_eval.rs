// Parse an expression, evaluate it, and inspect its structure.

use disknorm::expr::{
    boundary_singularities, eval, parse, substitute_negate, substitute_square, to_polynomial,
    ParamEnv,
};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse("(1+z)/(1-z)")?;
    let env = ParamEnv::new();
    let z = Complex64::new(0.3, 0.4);
    println!("f(z)      = {f}");
    println!("f({z}) = {}", eval(&f, z, &env)?);
    println!("-f(-z)    = -({})", substitute_negate(&f));
    println!("f(z^2)    = {}", substitute_square(&f));
    println!("singular  = {:?}", boundary_singularities(&f)?);

    let g = parse("(1+z)^(4/p)")?;
    let env = ParamEnv::new().with("p", 0.5);
    let poly = to_polynomial(&g, &env)?;
    let real: Vec<f64> = poly.coeffs().iter().map(|c| c.re).collect();
    println!("{g} at p = 1/2 expands to coefficients {real:?}");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
