// The triangle inequality fails in H^p for p < 1, and holds with equality for a pole pair.

use disknorm::verify::{verify_hp_counterexample, verify_hp_equality_case, VerifyConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = VerifyConfig::default();
    println!(
        "{:>4}  {:>12}  {:>12}  {:>10}  verdict",
        "p", "||f+g||", "||f||+||g||", "defect"
    );
    for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let r = verify_hp_counterexample(p, &cfg)?;
        println!(
            "{p:>4}  {:>12.6}  {:>12.6}  {:>10.4}  {}",
            r.lhs, r.rhs, r.defect, r.verdict
        );
    }
    let eq = verify_hp_equality_case(0.5, &cfg)?;
    println!(
        "h = 1/(1-z), k = -h(-z): defect {:.1e}, {}",
        eq.defect, eq.verdict
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
