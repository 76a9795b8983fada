// For p < 1/2, f = (1+z)^(4/p) and g = -f(-z) violate the triangle inequality in A^p.

use disknorm::bergman::bergman_norm_coeffs;
use disknorm::expr::TaylorCoeffs;
use disknorm::verify::{small_p_lower_bound, verify_ap_small_p, VerifyConfig, SMALL_P_NORM_P};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // |(1+z)^(4/p)|^p = |(1+z)^2|^2, so the p-th power of the norm is that of 1 + 2z + z^2 in A^2
    let exact = bergman_norm_coeffs(&TaylorCoeffs::from_real(&[1.0, 2.0, 1.0]));
    println!("||f||^p = {} (expected {SMALL_P_NORM_P})", exact.value_p);
    println!("lower bound for ||f+g||^p: {:.6}", small_p_lower_bound());

    let cfg = VerifyConfig::default();
    for p in [0.1, 0.25, 0.4, 0.49] {
        let r = verify_ap_small_p(p, &cfg)?;
        let sum = r.sub_norm("norm_sum").expect("sum norm");
        println!(
            "p = {p:<4}  ||f+g||^p = {:.8}  2^p 10/3 = {:.8}  {}",
            sum.value_p,
            2f64.powf(p) * SMALL_P_NORM_P,
            r.verdict
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
