// Adaptive quadrature on smooth and endpoint-singular integrands.

use disknorm::quad::{integrate, integrate_abscissa, integrate_piecewise, Breakpoint, QuadConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadConfig::default();

    let smooth = integrate(|x| x.sin(), 0.0, std::f64::consts::PI, &cfg)?;
    println!(
        "int sin on [0, pi]   = {:.15} (err {:.1e})",
        smooth.value, smooth.abs_err_est
    );

    // a singular endpoint switches that end to a double-exponential map
    let root = integrate(|x| x.powf(-0.5), 0.0, 1.0, &cfg.with_singular(true, false))?;
    println!(
        "int x^-1/2 on [0, 1] = {:.15} (err {:.1e})",
        root.value, root.abs_err_est
    );

    // distances to the ends avoid cancellation in 1 - x near x = 1
    let log = integrate_abscissa(
        |n| n.from_right.ln(),
        0.0,
        1.0,
        &cfg.with_singular(false, true),
    )?;
    println!("int ln(1-x)          = {:.15}", log.value);

    let kink = integrate_piecewise(
        |x| (x - 0.3).abs(),
        &[
            Breakpoint::regular(0.0),
            Breakpoint::regular(0.3),
            Breakpoint::regular(1.0),
        ],
        &cfg,
    )?;
    println!(
        "int |x - 0.3|        = {:.15} after {} evaluations",
        kink.value, kink.evaluations
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
