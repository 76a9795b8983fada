// Membership of (1-z)^(-alpha) in A^p, with truncated-integral evidence.

use disknorm::bergman::{default_radii, membership_evidence};
use disknorm::quad::QuadConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadConfig::default();
    for (alpha, p) in [(1.0, 1.5), (4.0, 0.5), (2.0, 1.5)] {
        let v = membership_evidence(alpha, p, &default_radii(), &cfg)?;
        let last = v.evidence.last().expect("evidence");
        println!(
            "alpha = {alpha}, p = {p}: {:?}, I({:.6}) = {:.4}, increment ratio {:.4}, {:?}",
            v.classification,
            last.radius,
            last.integral,
            v.increment_ratio.unwrap_or(f64::NAN),
            v.diagnostic
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
