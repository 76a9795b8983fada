// Change-of-variable identities, the elementary inequality, and rotation invariance.

use disknorm::expr::{parse, ParamEnv};
use disknorm::norm::Space;
use disknorm::verify::{
    verify_elem_inequality, verify_lemma_cv, verify_lemma_cvh, verify_rotation_invariance,
    VerifyConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (env, cfg) = (ParamEnv::new(), VerifyConfig::default());
    for text in ["1+z", "(1+z)^2", "1/(1-z)"] {
        let r = verify_lemma_cvh(&parse(text)?, 0.5, &env, &cfg)?;
        println!(
            "H^p  f(z^2) vs f, f = {text:<10} defect {:>9.1e}  {}",
            r.defect, r.verdict
        );
    }
    for text in ["1+z", "(1-z)^(-1/4)"] {
        let r = verify_lemma_cv(&parse(text)?, 1.0, &env, &cfg)?;
        println!(
            "A^p  weighted h(z^2), h = {text:<10} defect {:>9.1e}  {}",
            r.defect, r.verdict
        );
    }
    let r = verify_elem_inequality(3.0, 1.0, 2.5)?;
    println!("|3^q - 1| - 2^q at q = 2.5: {:.6}  {}", r.defect, r.verdict);
    let r =
        verify_rotation_invariance(Space::Bergman, &parse("(1+z)/(1-z)")?, 0.8, 1.2, &env, &cfg)?;
    println!(
        "rotation by 1.2 rad in A^0.8: defect {:.1e}  {}",
        r.defect, r.verdict
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
