// Integral means grow with the radius and approach the Hardy norm.

use disknorm::expr::{parse, ParamEnv};
use disknorm::hardy::{hardy_norm, integral_means};
use disknorm::quad::QuadConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse("(1+z)/(1-z)")?;
    let (p, env, cfg) = (0.5, ParamEnv::new(), QuadConfig::default());
    for r in [0.5, 0.9, 0.99, 0.999] {
        let m = integral_means(&f, p, r, &env, &cfg)?;
        println!("M_p({r:<5}) = {:.10}", m.value);
    }
    let n = hardy_norm(&f, p, &env, &cfg)?;
    println!(
        "||f||_H^p  = {:.10}  (1/cos(p pi/2)^(1/p) = {:.10})",
        n.value,
        (p * std::f64::consts::FRAC_PI_2).cos().powf(-1.0 / p)
    );

    let pole = hardy_norm(&parse("1/(1-z)")?, 1.0, &env, &cfg)?;
    println!("1/(1-z) in H^1: divergent = {}", pole.is_divergent());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
