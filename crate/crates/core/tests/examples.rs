#[allow(dead_code)]
mod parse_and_eval {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/parse_and_eval.rs"
    ));
}

#[test]
fn parse_and_eval_example_runs() {
    parse_and_eval::run_example().expect("parse_and_eval example should run");
}

#[allow(dead_code)]
mod quadrature {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/quadrature.rs"
    ));
}

#[test]
fn quadrature_example_runs() {
    quadrature::run_example().expect("quadrature example should run");
}

#[allow(dead_code)]
mod integral_means {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/integral_means.rs"
    ));
}

#[test]
fn integral_means_example_runs() {
    integral_means::run_example().expect("integral_means example should run");
}

#[allow(dead_code)]
mod hardy_counterexample {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/hardy_counterexample.rs"
    ));
}

#[test]
fn hardy_counterexample_example_runs() {
    hardy_counterexample::run_example().expect("hardy_counterexample example should run");
}

#[allow(dead_code)]
mod bergman_small_p {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/bergman_small_p.rs"
    ));
}

#[test]
fn bergman_small_p_example_runs() {
    bergman_small_p::run_example().expect("bergman_small_p example should run");
}

#[allow(dead_code)]
mod bergman_large_p {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/bergman_large_p.rs"
    ));
}

#[test]
fn bergman_large_p_example_runs() {
    bergman_large_p::run_example().expect("bergman_large_p example should run");
}

#[allow(dead_code)]
mod membership {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/membership.rs"
    ));
}

#[test]
fn membership_example_runs() {
    membership::run_example().expect("membership example should run");
}

#[allow(dead_code)]
mod lemma_checks {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/lemma_checks.rs"
    ));
}

#[test]
fn lemma_checks_example_runs() {
    lemma_checks::run_example().expect("lemma_checks example should run");
}

#[allow(dead_code)]
mod sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sweep.rs"));
}

#[test]
fn sweep_example_runs() {
    sweep::run_example().expect("sweep example should run");
}

#[allow(dead_code)]
mod cli {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli.rs"));
}

#[test]
fn cli_example_runs() {
    cli::run_example().expect("cli example should run");
}
