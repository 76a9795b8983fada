// For 1/2 <= p < 1 the perturbed pole pair (1+z)^(2-eps)/(1-z)^(2+eps) breaks the triangle inequality.

use disknorm::verify::{eps_window, verify_ap_large_p, VerifyConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = VerifyConfig::default();
    for (p, eps) in [(0.5, 1.0), (0.6, 0.7), (0.75, 0.4), (0.9, 0.15)] {
        let window = eps_window(p)?;
        let r = verify_ap_large_p(p, eps, &cfg)?;
        println!(
            "p = {p:<4} eps = {eps:<4} window {window:<28} defect {:>9.4} margin {:.1e}  {}",
            r.defect, r.margin, r.verdict
        );
    }
    // eps outside its window is rejected before any integration
    assert!(verify_ap_large_p(0.75, 0.9, &cfg).is_err());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
