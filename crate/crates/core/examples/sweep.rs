// Sweep a case over a grid of p and write the rows as CSV.

use disknorm::cli::{run_sweep, sweep_csv, SweepSummary};
use disknorm::verify::{CaseId, VerifyConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rows = run_sweep(
        CaseId::ApLargeP,
        0.4,
        0.9,
        6,
        None,
        &VerifyConfig::default(),
    )?;
    print!("{}", sweep_csv(&rows));
    let summary = SweepSummary::of(&rows);
    println!("exit code would be {}", summary.exit_code());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
